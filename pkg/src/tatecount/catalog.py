"""Classes of the homogeneous spaces and rank-stratified loci in Z[L].

Orbit classes are computed as ``[G] / [Stab]`` by exact division, so every
successful call doubles as a check that the stabilizer behaves like a
special group at the level of classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from .ffield import legendre
from .lefschetz import (
    ONE,
    InexactDivision,
    L,
    LPoly,
    ScaledClass,
    eval_at,
    exact_div,
    gl_order,
    product,
    proj_space,
    scaled_div,
)


class InvalidParameter(ValueError):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise InvalidParameter(msg)


def _even(two_n: int, what: str, minimum: int = 0):
    _require(isinstance(two_n, int) and two_n % 2 == 0 and two_n >= minimum,
             f"{what} needs an even size >= {minimum}, got {two_n}")


# -- group classes ---------------------------------------------------------

@lru_cache(maxsize=None)
def _gl_poly(n: int) -> LPoly:
    return gl_order(n)


@lru_cache(maxsize=None)
def _sp_poly(two_m: int) -> LPoly:
    m = two_m // 2
    return LPoly.monomial(m * m) * product(LPoly.monomial(2 * i) - 1 for i in range(1, m + 1))


def class_GL(n: int) -> ScaledClass:
    _require(n >= 0, f"GL needs n >= 0, got {n}")
    return ScaledClass.of(_gl_poly(n))


def class_SL(n: int) -> ScaledClass:
    _require(n >= 1, f"SL needs n >= 1, got {n}")
    return ScaledClass.of(exact_div(_gl_poly(n), L - 1))


def class_Sp(two_m: int) -> ScaledClass:
    _even(two_m, "Sp")
    return ScaledClass.of(_sp_poly(two_m))


def class_GSp(two_m: int) -> ScaledClass:
    _even(two_m, "GSp", 2)
    return ScaledClass.of((L - 1) * _sp_poly(two_m))


def class_Gm() -> ScaledClass:
    return ScaledClass.of(L - 1)


def class_affine(n: int) -> ScaledClass:
    _require(n >= 0, f"A needs n >= 0, got {n}")
    return ScaledClass.of(LPoly.monomial(n))


def class_proj(n: int) -> ScaledClass:
    _require(n >= 0, f"P needs n >= 0, got {n}")
    return ScaledClass.of(proj_space(n))


def order_O(n: int, type: str | None = None) -> ScaledClass:
    """Order of the finite orthogonal group as ``2 * poly(q)``.

    ``type`` is ``"+"``/``"plus"`` (split) or ``"-"``/``"minus"`` and must be
    given exactly when ``n`` is even.
    """
    _require(n >= 1, f"O needs n >= 1, got {n}")
    sign = _norm_type(n, type)
    m = n // 2
    if n % 2:
        poly = LPoly.monomial(m * m) * product(LPoly.monomial(2 * i) - 1 for i in range(1, m + 1))
    else:
        eps = -1 if sign == "+" else 1
        poly = (LPoly.monomial(m * (m - 1)) * (LPoly.monomial(m) + eps)
                * product(LPoly.monomial(2 * i) - 1 for i in range(1, m)))
    return ScaledClass.of(poly, 2)


def _norm_type(n: int, type: str | None) -> str | None:
    aliases = {"plus": "+", "minus": "-", "+": "+", "-": "-", None: None}
    _require(type in aliases, f"unknown orthogonal type {type!r}")
    t = aliases[type]
    if n % 2:
        _require(t is None, "orthogonal type is only meaningful for even n")
    else:
        _require(t is not None, "even n needs an orthogonal type '+' or '-'")
    return t


def class_GL_mod_O(n: int, type: str | None = None) -> ScaledClass:
    """Counting function of one GL_n-orbit of nondegenerate symmetric forms."""
    return scaled_div(class_GL(n), order_O(n, type))


def count_GL_mod_O(n: int, type: str | None, q: int) -> int:
    val = eval_at(class_GL(n), q) / eval_at(order_O(n, type), q)
    assert val.denominator == 1 and val > 0, val
    return int(val)


# -- rank strata -----------------------------------------------------------

def class_mat_rank(n: int, r: int) -> ScaledClass:
    """Class of n x n matrices of rank exactly r."""
    _require(n >= 1 and 0 <= r <= n, f"MatRank needs 0 <= r <= n, got n={n}, r={r}")
    top = product(LPoly.monomial(n) - LPoly.monomial(i) for i in range(r))
    return ScaledClass.of(exact_div(top * top, _gl_poly(r)))


def class_det_hypersurface(n: int) -> ScaledClass:
    _require(n >= 2, f"Det needs n >= 2, got {n}")
    cone = sum((class_mat_rank(n, r) for r in range(n)), ScaledClass.of(0))
    return scaled_div(cone - 1, ScaledClass.of(L - 1))


def class_alt_rank(two_n: int, k: int) -> ScaledClass:
    """Class of alternating two_n x two_n matrices of rank 2k.

    Stabilizer of the normal form 0_m + J_2k is GL_m x Sp_2k extended by the
    unipotent Hom(W, R) of dimension m * 2k.
    """
    _even(two_n, "AltRank", 2)
    _require(0 <= 2 * k <= two_n, f"AltRank needs 0 <= 2k <= {two_n}, got k={k}")
    m, r = two_n - 2 * k, 2 * k
    stab = LPoly.monomial(m * r) * _gl_poly(m) * _sp_poly(r)
    return ScaledClass.of(exact_div(_gl_poly(two_n), stab))


def class_pfaffian_hypersurface(two_n: int) -> ScaledClass:
    _even(two_n, "Pf", 4)
    cone = sum((class_alt_rank(two_n, k) for k in range(two_n // 2)), ScaledClass.of(0))
    return scaled_div(cone - 1, ScaledClass.of(L - 1))


def class_sym_rank(n: int, r: int) -> ScaledClass:
    """Number of symmetric n x n matrices of rank r over F_q (q odd), as a class.

    MacWilliams' count: prod_{i<=s} q^{2i}/(q^{2i}-1) * prod_{i<r} (q^{n-i}-1)
    with s = floor(r/2).
    """
    _require(n >= 1 and 0 <= r <= n, f"symmetric rank needs 0 <= r <= n, got n={n}, r={r}")
    s = r // 2
    num = LPoly.monomial(s * (s + 1)) * product(LPoly.monomial(n - i) - 1 for i in range(r))
    den = product(LPoly.monomial(2 * i) - 1 for i in range(1, s + 1))
    return ScaledClass.of(exact_div(num, den))


def class_sym_proj_rank_at_most(n: int, r: int) -> ScaledClass:
    """Projectivized symmetric forms of rank between 1 and r."""
    _require(n >= 1 and 0 <= r <= n, f"Sbar needs 0 <= r <= n, got n={n}, r={r}")
    cone = sum((class_sym_rank(n, j) for j in range(1, r + 1)), ScaledClass.of(0))
    return scaled_div(cone, ScaledClass.of(L - 1))


def class_incidence(n: int) -> ScaledClass:
    """Incidence variety as a P^{N-n-1}-bundle over P^{n-1}, N = n(n+1)/2."""
    _require(n >= 2, f"Inc needs n >= 2, got {n}")
    N = n * (n + 1) // 2
    return ScaledClass.of(proj_space(n - 1) * proj_space(N - n - 1))


# -- representation dimensions ----------------------------------------------

def weyl_dim(n: int, a) -> int:
    """Dimension of the irreducible SL_n-module with highest weight sum a_i w_i."""
    a = list(a)
    _require(n >= 2 and len(a) == n - 1 and all(x >= 0 for x in a),
             f"SL_{n} weight needs {n - 1} nonnegative entries, got {a}")
    c = [sum(a[i:]) + n - 1 - i for i in range(n)]
    num = prod(c[i] - c[j] for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    assert num % den == 0
    return num // den


# -- semi-small incidence resolution ---------------------------------------

@dataclass(frozen=True)
class StratumInfo:
    rank: int
    dim: int
    fiber_dim: int
    defect: int


def incidence_strata(n: int) -> tuple[list[StratumInfo], int]:
    """Rank strata of singular symmetric forms with their fiber dimensions.

    Returns the strata r = 0..n-1 and dim I = n(n+1)/2 - 2.
    """
    _require(n >= 2, f"incidence strata need n >= 2, got {n}")
    dim_I = n * (n + 1) // 2 - 2
    out = []
    for r in range(n):
        d = r * n - r * (r - 1) // 2 - 1
        s = n - r - 1
        delta = (n - r - 1) * (n - r - 2) // 2
        assert delta == dim_I - (d + 2 * s), (n, r)
        out.append(StratumInfo(r, d, s, delta))
    return out, dim_I


# -- space expressions -----------------------------------------------------

BINARY = {"quotient": "/", "product": "*", "difference": "-"}


@dataclass(frozen=True)
class SpaceExpr:
    kind: str
    name: str = ""
    params: tuple = ()
    children: tuple = ()

    def __post_init__(self):
        if self.kind == "atom":
            _require(self.name in ATOMS, f"unknown space {self.name!r}")
            ATOMS[self.name].validate(*self.params)
        elif self.kind in BINARY:
            _require(len(self.children) == 2, f"{self.kind} needs two operands")
        elif self.kind == "projectivize":
            _require(len(self.children) == 1, "Proj takes one operand")
        else:
            raise InvalidParameter(f"unknown node kind {self.kind!r}")

    @classmethod
    def atom(cls, name: str, *params) -> SpaceExpr:
        return cls("atom", name, tuple(params))

    def __truediv__(self, other):
        return SpaceExpr("quotient", children=(self, other))

    def __mul__(self, other):
        return SpaceExpr("product", children=(self, other))

    def __sub__(self, other):
        return SpaceExpr("difference", children=(self, other))

    def leaves(self):
        if self.kind == "atom":
            yield self
        for c in self.children:
            yield from c.leaves()

    def __str__(self):
        if self.kind == "atom":
            return ATOMS[self.name].render(*self.params)
        if self.kind == "projectivize":
            return f"Proj({self.children[0]})"
        left, right = self.children
        rs = str(right)
        if right.kind in BINARY:
            rs = f"({rs})"
        return f"{left}{BINARY[self.kind]}{rs}"


@dataclass(frozen=True)
class _AtomSpec:
    validate: object
    render: object
    klass: object = None
    formula: object = None
    dimension: object = None


def _r(name):
    return lambda *a: f"{name}({','.join(str(x) for x in a)})"


def _v_size(name, lo):
    def check(n):
        _require(isinstance(n, int) and n >= lo, f"{name} needs an integer >= {lo}, got {n}")
    return check


def _v_even(name, lo):
    def check(n):
        _even(n, name, lo)
    return check


def _v_matrank(n, r):
    _require(n >= 1 and 0 <= r <= n, f"MatRank needs 0 <= r <= n, got ({n},{r})")


def _v_altrank(two_n, k):
    _even(two_n, "AltRank", 2)
    _require(0 <= 2 * k <= two_n, f"AltRank needs 0 <= 2k <= {two_n}, got k={k}")


def _v_xsp(p, n):
    _require(n >= 1 and 0 <= p <= n, f"XSp needs 0 <= p <= n with n >= 1, got ({p},{n})")


def _v_slrep(n, weights):
    _require(n >= 2, f"SLrep needs n >= 2, got {n}")
    _require(len(weights) == n - 1 and all(w >= 0 for w in weights),
             f"SLrep({n};...) needs {n - 1} nonnegative weights, got {list(weights)}")


def _v_glmodo(n, *sign):
    _require(n >= 1 and len(sign) <= 1, f"GLmodO needs n >= 1, got {n}")
    _norm_type(n, sign[0] if sign else None)


def _v_sbar(n, r):
    _require(n >= 1 and 0 <= r <= n, f"Sbar needs 0 <= r <= n, got ({n},{r})")


def _v_gm():
    pass


def sphere_class(m: int) -> ScaledClass | None:
    """Class of x_0^2 + ... + x_m^2 = 1 when its count is a polynomial in q.

    With k = floor((m+1)/2) the count depends on q mod 4 unless k is even; in
    that case the sphere is O_{m+1}/O_m with both forms of split type.
    """
    n = m + 1
    k = n // 2
    if k % 2 or m < 1:
        return None
    if n % 2 == 0:
        return scaled_div(order_O(n, "+"), order_O(m))
    return scaled_div(order_O(n), order_O(m, "+"))


def sphere_count(m: int, q: int) -> int:
    """Solutions of x_0^2 + ... + x_m^2 = 1 over F_q via the quadric count."""
    n = m + 1
    k = n // 2
    if n % 2:
        return q ** (2 * k) + q ** k * legendre((-1) ** k, q)
    return q ** (2 * k - 1) - q ** (k - 1) * legendre((-1) ** k, q)


def _slrep_class(n, weights):
    N = weyl_dim(n, weights)
    return scaled_div(class_GL(N), class_SL(n))


def _slrep_dim(n, weights):
    N = weyl_dim(n, weights)
    return N * N - (n * n - 1)


def _glmodo_formula(n, *sign):
    return lambda q: Fraction(count_GL_mod_O(n, sign[0] if sign else None, q))


def _alt_dim(two_n, k):
    return class_alt_rank(two_n, k).degree


def _slrep_formula(n, w):
    # SL_n is connected, so the free quotient has |GL_N(F_q)| / |SL_n(F_q)| points
    big, small = class_GL(weyl_dim(n, w)), class_SL(n)
    return lambda q: eval_at(big, q) / eval_at(small, q)


ATOMS: dict[str, _AtomSpec] = {
    "GL": _AtomSpec(_v_size("GL", 1), _r("GL"), class_GL),
    "SL": _AtomSpec(_v_size("SL", 1), _r("SL"), class_SL),
    "Sp": _AtomSpec(_v_even("Sp", 2), _r("Sp"), class_Sp),
    "GSp": _AtomSpec(_v_even("GSp", 2), _r("GSp"), class_GSp),
    "Gm": _AtomSpec(_v_gm, lambda: "Gm", class_Gm),
    "A": _AtomSpec(_v_size("A", 0), _r("A"), class_affine),
    "P": _AtomSpec(_v_size("P", 0), _r("P"), class_proj),
    "MatRank": _AtomSpec(_v_matrank, _r("MatRank"), class_mat_rank),
    "Det": _AtomSpec(_v_size("Det", 2), _r("Det"), class_det_hypersurface),
    "AltRank": _AtomSpec(_v_altrank, _r("AltRank"), class_alt_rank),
    "Pf": _AtomSpec(_v_even("Pf", 4), _r("Pf"), class_pfaffian_hypersurface),
    "XSp": _AtomSpec(_v_xsp, _r("XSp"),
                     lambda p, n: scaled_div(class_Sp(2 * n), class_Sp(2 * p) * class_Sp(2 * n - 2 * p))),
    "LSp": _AtomSpec(_v_size("LSp", 1), _r("LSp"), lambda n: scaled_div(class_Sp(2 * n), class_GL(n))),
    "B": _AtomSpec(_v_even("B", 2), _r("B"), lambda two_n: scaled_div(class_GL(two_n), class_Sp(two_n))),
    "PAlt": _AtomSpec(_v_even("PAlt", 2), _r("PAlt"),
                      lambda two_n: scaled_div(class_GL(two_n), class_GSp(two_n))),
    "SLrep": _AtomSpec(_v_slrep, lambda n, w: f"SLrep({n};{','.join(map(str, w))})",
                       _slrep_class, formula=_slrep_formula, dimension=_slrep_dim),
    "GLmodO": _AtomSpec(_v_glmodo, _r("GLmodO"), None,
                        formula=_glmodo_formula, dimension=lambda n, *s: n * (n + 1) // 2),
    "Inc": _AtomSpec(_v_size("Inc", 2), _r("Inc"), class_incidence),
    "Y": _AtomSpec(_v_size("Y", 1), _r("Y"), None,
                   formula=lambda n: (lambda q: eval_at(class_sym_proj_rank_at_most(n, n - 1), q)),
                   dimension=lambda n: n * (n + 1) // 2 - 2),
    "Sbar": _AtomSpec(_v_sbar, _r("Sbar"), None,
                      formula=lambda n, r: (lambda q: eval_at(class_sym_proj_rank_at_most(n, r), q)),
                      dimension=lambda n, r: max(r * n - r * (r - 1) // 2 - 1, 0)),
    "Sphere": _AtomSpec(_v_size("Sphere", 0), _r("Sphere"), sphere_class,
                        formula=lambda m: (lambda q: Fraction(sphere_count(m, q))),
                        dimension=lambda m: m),
}


# The catalogued special quotients G/H with their group classes.
def special_pair(expr: SpaceExpr) -> tuple[ScaledClass, ScaledClass]:
    """Return ([G], [H]) for a catalogued homogeneous space G/H."""
    _require(expr.kind == "atom", f"{expr} is not a catalogued quotient")
    a = expr.params
    if expr.name == "XSp":
        p, n = a
        return class_Sp(2 * n), class_Sp(2 * p) * class_Sp(2 * n - 2 * p)
    if expr.name == "LSp":
        return class_Sp(2 * a[0]), class_GL(a[0])
    if expr.name == "B":
        return class_GL(a[0]), class_Sp(a[0])
    if expr.name == "PAlt":
        return class_GL(a[0]), class_GSp(a[0])
    if expr.name == "SLrep":
        n, w = a
        return class_GL(weyl_dim(n, w)), class_SL(n)
    raise InvalidParameter(f"{expr} is not a catalogued special quotient")


def class_special_quotient(expr: SpaceExpr) -> ScaledClass:
    """[G]/[H] for a catalogued quotient; raises InexactDivision as a verdict."""
    g, h = special_pair(expr)
    return scaled_div(g, h)


def space_class(expr: SpaceExpr) -> ScaledClass | None:
    """Class of a space expression, or None when no class is catalogued.

    Raises InexactDivision when a quotient does not divide in Z[L].
    """
    if expr.kind == "atom":
        info = ATOMS[expr.name]
        return info.klass(*expr.params) if info.klass else None
    kids = [space_class(c) for c in expr.children]
    if any(k is None for k in kids):
        return None
    if expr.kind == "projectivize":
        return scaled_div(kids[0] - 1, ScaledClass.of(L - 1))
    a, b = kids
    if expr.kind == "quotient":
        return scaled_div(a, b)
    if expr.kind == "product":
        return a * b
    return a - b


def space_formula(expr: SpaceExpr, q: int) -> Fraction | None:
    """Count from a closed counting formula, if any leaf carries one.

    Leaves without a formula contribute their class value.
    """
    if not any(ATOMS[a.name].formula for a in expr.leaves()):
        return None
    return _combine(expr, q, _leaf_formula_or_class)


def _leaf_formula_or_class(atom: SpaceExpr, q: int):
    info = ATOMS[atom.name]
    if info.formula:
        return info.formula(*atom.params)(q)
    c = info.klass(*atom.params) if info.klass else None
    return None if c is None else eval_at(c, q)


def _combine(expr: SpaceExpr, q: int, leaf) -> Fraction | None:
    if expr.kind == "atom":
        return leaf(expr, q)
    vals = [_combine(c, q, leaf) for c in expr.children]
    if any(v is None for v in vals):
        return None
    if expr.kind == "projectivize":
        return (vals[0] - 1) / (q - 1)
    a, b = vals
    if expr.kind == "quotient":
        return None if b == 0 else Fraction(a) / b
    if expr.kind == "product":
        return a * b
    return a - b


def combine_counts(expr: SpaceExpr, q: int, leaf) -> Fraction | None:
    """Evaluate an expression tree from per-leaf counts supplied by ``leaf``."""
    return _combine(expr, q, leaf)


def space_dimension(expr: SpaceExpr) -> int:
    """A-priori dimension, used as the expected degree of the counting function."""
    if expr.kind == "atom":
        info = ATOMS[expr.name]
        if info.dimension:
            return info.dimension(*expr.params)
        if info.klass:
            c = info.klass(*expr.params)
            if c is not None:
                return max(c.degree, 0)
        raise InvalidParameter(f"no dimension known for {expr}")
    dims = [space_dimension(c) for c in expr.children]
    if expr.kind == "projectivize":
        return max(dims[0] - 1, 0)
    a, b = dims
    if expr.kind == "quotient":
        return max(a - b, 0)
    if expr.kind == "product":
        return a + b
    return max(a, b)
