"""Cross-checks between classes, counting formulas and exhaustive counts."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import (
    InvalidParameter,
    SpaceExpr,
    StratumInfo,
    incidence_strata,
    space_class,
    space_dimension,
    space_formula,
)
from .enumeration import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExceeded,
    CountRecord,
    count_incidence,
    count_sym_proj_rank_at_most,
    enumerate_space,
)
from .ffield import is_prime, odd_primes
from .lefschetz import InexactDivision, ScaledClass, eval_at

INTEGER_POLYNOMIAL = "integer_polynomial"
RATIONAL_POLYNOMIAL = "rational_polynomial"
NO_POLYNOMIAL_FIT = "no_polynomial_fit"

# enumeration budget for the extra primes verify_space adds to reach enough fit points
FIT_EXTENSION_BUDGET = 10**6


class InsufficientPoints(ValueError):
    pass


@dataclass
class PolyVerdict:
    status: str
    fitted: ScaledClass | None
    denominator: int | None
    witnesses: list[int]
    validation_primes: list[int]
    sources: dict[int, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "fitted": None if self.fitted is None else str(self.fitted),
            "denominator": self.denominator,
            "witnesses": list(self.witnesses),
            "validation_primes": list(self.validation_primes),
            "sources": {str(q): s for q, s in self.sources.items()},
        }


def _interpolate(points: Sequence[tuple[int, Fraction]]) -> list[Fraction]:
    """Coefficients (low degree first) of the Lagrange interpolant."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            # basis *= (x - xj)
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = yi / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    return coeffs


def check_points(points: Iterable) -> list[tuple[int, Fraction]]:
    """Validate (q, count) pairs: integer q, exact counts, distinct abscissae."""
    out = []
    for q, y in points:
        if isinstance(q, float) or isinstance(y, float):
            raise TypeError("points must be exact (int or Fraction), not float")
        out.append((int(q), Fraction(y)))
    if len({q for q, _ in out}) != len(out):
        raise ValueError("points need distinct q")
    return out


def fit_polynomial(points, max_degree: int) -> PolyVerdict:
    """Fit a counting polynomial of degree <= max_degree and validate it.

    Interpolates exactly through the first max_degree+1 points; every
    remaining point must lie on the result, and at least one must remain.
    """
    pts = check_points(points)
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if len(pts) < max_degree + 2:
        raise InsufficientPoints(f"need {max_degree + 2} points for degree {max_degree}, got {len(pts)}")
    fit_pts, held = pts[: max_degree + 1], pts[max_degree + 1:]
    cls = ScaledClass.from_coeffs(_interpolate(fit_pts))
    witnesses = [q for q, _ in fit_pts]
    validation = [q for q, _ in held]
    if any(eval_at(cls, q) != y for q, y in held):
        return PolyVerdict(NO_POLYNOMIAL_FIT, None, None, witnesses, validation)
    d = cls.denominator
    return PolyVerdict(INTEGER_POLYNOMIAL if d == 1 else RATIONAL_POLYNOMIAL, cls, d, witnesses, validation)


# -- verification -----------------------------------------------------------

@dataclass
class PrimeRecord:
    q: int
    symbolic: Fraction | None = None
    formula: Fraction | None = None
    enumeration: Fraction | None = None
    search_space: int | None = None
    error: str | None = None
    elapsed: float = 0.0

    def values(self) -> dict[str, Fraction]:
        return {k: v for k, v in (("symbolic", self.symbolic), ("formula", self.formula),
                                  ("enumeration", self.enumeration)) if v is not None}

    def agrees(self) -> bool:
        return len(set(self.values().values())) <= 1

    def to_json(self) -> dict:
        def s(v):
            return None if v is None else str(v)
        return {"q": self.q, "symbolic": s(self.symbolic), "formula": s(self.formula),
                "enumeration": s(self.enumeration), "error": self.error}


@dataclass
class VerifyReport:
    space: str
    klass: ScaledClass | None
    records: list[PrimeRecord]
    poly_verdict: PolyVerdict | None
    class_note: str | None = None
    fit_error: str | None = None

    @property
    def verdict(self) -> str:
        return "agree" if all(r.agrees() for r in self.records) else "disagree"

    @property
    def disagreements(self) -> list[dict]:
        return [{"q": r.q, **{k: str(v) for k, v in r.values().items()}} for r in self.records if not r.agrees()]

    @property
    def cross_checked(self) -> bool:
        """True when every prime carried at least two independent values."""
        return all(len(r.values()) >= 2 for r in self.records)

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "class": None if self.klass is None else str(self.klass),
            "scalar_denominator": None if self.klass is None else self.klass.denominator,
            "records": [r.to_json() for r in self.records],
            "verdict": self.verdict,
            "disagreements": self.disagreements,
            "cross_checked": self.cross_checked,
            "class_note": self.class_note,
            "poly_verdict": None if self.poly_verdict is None else self.poly_verdict.to_json(),
            "fit_error": self.fit_error,
        }


def _class_or_note(expr: SpaceExpr) -> tuple[ScaledClass | None, str | None]:
    try:
        return space_class(expr), None
    except InexactDivision as exc:
        return None, f"quotient class is not a Tate polynomial (remainder {exc.remainder})"


def enumeration_record(expr: SpaceExpr, q: int, budget: Budget = DEFAULT_BUDGET, cache=None) -> CountRecord | None:
    """Exhaustive count of ``expr`` at ``q`` as a record, served from ``cache`` when present."""
    space = str(expr)
    if cache is not None:
        hit = cache.get(space, q, "enumeration")
        if hit is not None:
            return hit
    t0 = time.perf_counter()
    got = enumerate_space(expr, q, budget)
    if got is None:
        return None
    rec = CountRecord(space, q, _plain(got[0]), "enumeration", (time.perf_counter() - t0) * 1000, got[1])
    if cache is not None:
        cache.put(rec)
    return rec


def _plain(v: Fraction):
    return int(v) if v.denominator == 1 else v


def evaluate_prime(expr: SpaceExpr, q: int, klass: ScaledClass | None,
                   budget: Budget = DEFAULT_BUDGET, enumerate_: bool = True, cache=None) -> PrimeRecord:
    rec = PrimeRecord(q)
    if klass is not None:
        rec.symbolic = eval_at(klass, q)
    rec.formula = space_formula(expr, q)
    if enumerate_:
        try:
            got = enumeration_record(expr, q, budget, cache)
        except BudgetExceeded as exc:
            rec.error = f"budget: {exc}"
        else:
            if got is not None:
                rec.enumeration = Fraction(got.count)
                rec.search_space = got.search_space
                rec.elapsed = got.elapsed
    return rec


def _observed(rec: PrimeRecord) -> tuple[Fraction, str] | None:
    for name in ("enumeration", "formula", "symbolic"):
        v = getattr(rec, name)
        if v is not None:
            return v, name
    return None


def _check_primes(primes):
    for q in primes:
        if not is_prime(q) or q == 2 or q > 251:
            raise InvalidParameter(f"primes must be odd primes <= 251, got {q}")


def detect_polynomial(expr: SpaceExpr, records: Sequence[PrimeRecord], klass: ScaledClass | None,
                      max_degree: int | None = None, budget: Budget = DEFAULT_BUDGET, cache=None) -> PolyVerdict:
    """Fit the counting function of ``expr`` from observed counts.

    Each prime contributes its enumeration count when there is one, else the
    formula value, else the class value.  When the given primes are too few
    for ``max_degree`` (default: the space's dimension), further odd primes
    are added, enumerated only within a small budget.
    """
    if max_degree is None:
        max_degree = max(space_dimension(expr), 0)
    points: list[tuple[int, Fraction]] = []
    sources: dict[int, str] = {}
    for rec in records:
        got = _observed(rec)
        if got is not None:
            points.append((rec.q, got[0]))
            sources[rec.q] = got[1]
    need = max_degree + 2
    if len(points) < need:
        small = Budget(min(budget.max_candidates, FIT_EXTENSION_BUDGET))
        used = {q for q, _ in points} | {r.q for r in records}
        q = 3
        while len(points) < need:
            q = odd_primes(q, 1)[0]
            if q not in used:
                if q > 251:
                    break
                got = _observed(evaluate_prime(expr, q, klass, small, cache=cache))
                if got is not None:
                    points.append((q, got[0]))
                    sources[q] = got[1]
            q += 1
    verdict = fit_polynomial(points, max_degree)
    verdict.sources = sources
    return verdict


def verify_space(expr: SpaceExpr, primes: Sequence[int] = (3, 5, 7), budget: Budget = DEFAULT_BUDGET,
                 max_degree: int | None = None, cache=None) -> VerifyReport:
    """Compare class, formula and enumeration values prime by prime, then fit."""
    _check_primes(primes)
    klass, note = _class_or_note(expr)
    records = [evaluate_prime(expr, q, klass, budget, cache=cache) for q in primes]
    report = VerifyReport(str(expr), klass, records, None, class_note=note)
    try:
        report.poly_verdict = detect_polynomial(expr, records, klass, max_degree, budget, cache)
    except InsufficientPoints as exc:
        report.fit_error = str(exc)
    return report


# -- semi-smallness and the decomposition shadow ------------------------------

@dataclass(frozen=True)
class SemismallRow:
    stratum: StratumInfo
    passed: bool
    equality: bool


def check_semismall(n: int) -> tuple[list[SemismallRow], int]:
    """Check d_r + 2 s_r <= dim I for every rank stratum of singular forms."""
    strata, dim_I = incidence_strata(n)
    rows = []
    for s in strata:
        slack = dim_I - (s.dim + 2 * s.fiber_dim)
        assert slack == s.defect
        rows.append(SemismallRow(s, slack >= 0, slack == 0))
    return rows, dim_I


@dataclass(frozen=True)
class DecompositionRow:
    q: int
    incidence: int
    hypersurface: int
    corank2: int
    bundle: int

    @property
    def holds(self) -> bool:
        return self.incidence == self.hypersurface + self.q * self.corank2 == self.bundle


def check_decomposition(n: int, primes: Sequence[int] = (3, 5), budget: Budget = DEFAULT_BUDGET) -> list[DecompositionRow]:
    """#I = #Y + q #Sbar_{n-2} = #P^{n-1} #P^{N-n-1}, all sides from one symmetric scan."""
    if n < 2:
        raise InvalidParameter("decomposition check needs n >= 2")
    _check_primes(primes)
    rows = []
    N = n * (n + 1) // 2
    for q in primes:
        inc = count_incidence(n, q, budget)
        y = count_sym_proj_rank_at_most(n, n - 1, q, budget)
        s = count_sym_proj_rank_at_most(n, n - 2, q, budget)
        bundle = ((q**n - 1) // (q - 1)) * ((q ** (N - n) - 1) // (q - 1))
        rows.append(DecompositionRow(q, inc, y, s, bundle))
    return rows
