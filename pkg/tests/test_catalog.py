from fractions import Fraction
from math import comb

import pytest

from tatecount.catalog import (
    InvalidParameter,
    SpaceExpr,
    class_affine,
    class_alt_rank,
    class_det_hypersurface,
    class_GL,
    class_GL_mod_O,
    class_Gm,
    class_GSp,
    class_incidence,
    class_mat_rank,
    class_pfaffian_hypersurface,
    class_proj,
    class_SL,
    class_Sp,
    class_special_quotient,
    class_sym_rank,
    count_GL_mod_O,
    incidence_strata,
    order_O,
    space_class,
    space_dimension,
    space_formula,
    special_pair,
    sphere_class,
    sphere_count,
    weyl_dim,
)
from tatecount.lefschetz import L, LPoly, ScaledClass, eval_at
from tatecount.linalg import det, rank

from .brute import all_alternating, all_matrices, all_symmetric

A = SpaceExpr.atom


def brute_rank_hist(gen):
    hist = {}
    for M in gen:
        r = rank(M)
        hist[r] = hist.get(r, 0) + 1
    return hist


def ssyt_count(shape, n):
    """Semistandard tableaux of the given shape with entries 1..n, by backtracking."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    filling = {}

    def go(k):
        if k == len(cells):
            return 1
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        total = 0
        for v in range(lo, n + 1):
            filling[(i, j)] = v
            total += go(k + 1)
        filling.pop((i, j), None)
        return total

    return go(0)


def test_class_GL_examples():
    assert class_GL(1) == ScaledClass.of(L - 1)
    assert class_GL(2).poly == LPoly((0, 1, -1, -1, 1))
    assert eval_at(class_GL(2), 2) == 6
    assert eval_at(class_GL(3), 3) == (27 - 1) * (27 - 3) * (27 - 9) == 11232


@pytest.mark.parametrize("n, p", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_class_GL_matches_brute_force(n, p):
    invertible = sum(1 for M in all_matrices(n, p) if det(M))
    assert eval_at(class_GL(n), p) == invertible


def test_group_classes():
    assert class_Sp(2) == class_SL(2) == ScaledClass.of(L**3 - L)
    assert eval_at(class_proj(2), 3) == 13
    assert eval_at(class_Sp(4), 3) == 3**4 * 8 * 80 == 51840
    assert eval_at(class_Sp(4), 3) == eval_at(order_O(5), 3) / 2
    assert class_GSp(4) == class_Gm() * class_Sp(4)
    assert class_affine(3) == ScaledClass.of(L**3)
    assert class_SL(3) == class_GL(3) / class_Gm()
    for bad in (lambda: class_Sp(3), lambda: class_GSp(0), lambda: class_SL(0), lambda: class_proj(-1)):
        with pytest.raises(InvalidParameter):
            bad()


@pytest.mark.parametrize("n, t, q, expected", [(3, None, 3, 48), (2, "+", 3, 4), (4, "minus", 3, 1440)])
def test_order_O_small_values(n, t, q, expected):
    c = order_O(n, t)
    assert c.scalar == 2
    assert eval_at(c, q) == expected


def test_order_O_type_rules():
    with pytest.raises(InvalidParameter):
        order_O(3, "+")
    with pytest.raises(InvalidParameter):
        order_O(4)
    assert eval_at(order_O(1), 7) == 2


@pytest.mark.parametrize("n, t, q, expected", [(3, None, 3, 234), (2, "+", 3, 12), (2, "-", 3, 6)])
def test_count_GL_mod_O(n, t, q, expected):
    assert count_GL_mod_O(n, t, q) == expected


def test_GL_mod_O_scaled_class_has_denominator_two():
    assert class_GL_mod_O(2, "+") == ScaledClass(Fraction(1, 2), L**3 - L)
    for n, t in [(2, "+"), (2, "-"), (3, None), (4, "+"), (4, "-")]:
        assert class_GL_mod_O(n, t).denominator == 2


def test_mat_rank_examples():
    assert class_mat_rank(4, 0) == ScaledClass.of(1)
    for n in range(1, 6):
        assert class_mat_rank(n, n) == class_GL(n)
    assert eval_at(class_mat_rank(2, 1), 2) == 9


@pytest.mark.parametrize("n, p", [(2, 2), (2, 3), (3, 2)])
def test_mat_rank_matches_brute_force(n, p):
    hist = brute_rank_hist(all_matrices(n, p))
    assert {r: eval_at(class_mat_rank(n, r), p) for r in range(n + 1)} == hist


def test_det_hypersurface():
    assert class_det_hypersurface(2) == ScaledClass.of((L + 1) ** 2)
    assert eval_at(class_det_hypersurface(2), 3) == 16
    singular = sum(1 for M in all_matrices(3, 3) if not det(M))
    assert eval_at(class_det_hypersurface(3), 3) == (singular - 1) // 2


def test_alt_rank():
    assert class_alt_rank(6, 0) == ScaledClass.of(1)
    assert class_alt_rank(2, 1) == ScaledClass.of(L - 1)
    hist = brute_rank_hist(all_alternating(4, 3))
    assert {r: eval_at(class_alt_rank(4, r // 2), 3) for r in (0, 2, 4)} == {r: hist.get(r, 0) for r in (0, 2, 4)}


def test_pfaffian_hypersurface():
    assert class_proj(5) == class_pfaffian_hypersurface(4) + class_special_quotient(A("PAlt", 4))
    degenerate = sum(1 for M in all_alternating(4, 3) if rank(M) < 4)
    assert eval_at(class_pfaffian_hypersurface(4), 3) == (degenerate - 1) // 2


def test_partition_of_unity():
    for n in range(1, 7):
        assert sum((class_mat_rank(n, r) for r in range(n + 1)), ScaledClass.of(0)) == ScaledClass.of(L ** (n * n))
    for n in range(1, 5):
        total = sum((class_alt_rank(2 * n, k) for k in range(n + 1)), ScaledClass.of(0))
        assert total == ScaledClass.of(L ** (n * (2 * n - 1)))
    for n in range(1, 6):
        total = sum((class_sym_rank(n, r) for r in range(n + 1)), ScaledClass.of(0))
        assert total == ScaledClass.of(L ** (n * (n + 1) // 2))


@pytest.mark.parametrize("two_n", [4, 6, 8])
def test_boundary_identity(two_n):
    N = comb(two_n, 2)
    assert class_proj(N - 1) == class_special_quotient(A("PAlt", two_n)) + class_pfaffian_hypersurface(two_n)


def test_special_quotient_examples():
    assert class_special_quotient(A("XSp", 0, 3)) == ScaledClass.of(1)
    assert class_special_quotient(A("LSp", 1)) == ScaledClass.of(L**2 + L)
    assert class_special_quotient(A("B", 2)) == ScaledClass.of(L - 1)
    assert class_special_quotient(A("SLrep", 2, (1,))) == ScaledClass.of(L - 1)


def test_special_quotient_reports_inexact():
    from tatecount.lefschetz import InexactDivision

    with pytest.raises(InexactDivision):
        class_special_quotient(A("SLrep", 3, (0, 0)))
    with pytest.raises(InvalidParameter):
        special_pair(A("GL", 2))


@pytest.mark.parametrize("expr", [A("XSp", p, n) for n in (1, 2, 3) for p in range(n + 1)]
                         + [A("LSp", n) for n in (1, 2, 3)] + [A("B", 2 * n) for n in (1, 2, 3)]
                         + [A("PAlt", 4), A("SLrep", 3, (1, 0)), A("SLrep", 2, (2,))])
def test_multiplicativity(expr):
    g, h = special_pair(expr)
    quotient = class_special_quotient(expr)
    assert quotient * h == g
    for q in (3, 5, 7, 11, 13):
        assert eval_at(g, q) == eval_at(quotient, q) * eval_at(h, q)


def test_weyl_examples():
    assert [weyl_dim(2, [m]) for m in range(6)] == [1, 2, 3, 4, 5, 6]
    assert weyl_dim(3, [1, 0]) == 3
    assert weyl_dim(3, [1, 1]) == 8
    for n in range(2, 9):
        for k in range(1, n):
            a = [0] * (n - 1)
            a[k - 1] = 1
            assert weyl_dim(n, a) == comb(n, k)


@pytest.mark.parametrize("n, a", [(3, [1, 1]), (3, [2, 1]), (4, [1, 0, 1]), (4, [0, 2, 0]), (5, [1, 1, 0, 0])])
def test_weyl_matches_tableaux(n, a):
    shape = [sum(a[i:]) for i in range(n - 1)]
    assert weyl_dim(n, a) == ssyt_count([s for s in shape if s], n)


def test_incidence_strata_examples():
    strata, dim_I = incidence_strata(3)
    assert dim_I == 4
    s1 = strata[1]
    assert (s1.dim, s1.fiber_dim, s1.defect) == (2, 1, 0)
    assert strata[-1].defect == 0
    assert incidence_strata(5)[0][1].defect == 3


def test_sym_rank_matches_brute_force():
    for n, p in [(2, 3), (3, 3), (2, 5)]:
        hist = brute_rank_hist(all_symmetric(n, p))
        assert {r: eval_at(class_sym_rank(n, r), p) for r in range(n + 1)} == hist


def test_sphere_class_and_formula():
    assert sphere_class(3) == ScaledClass.of(L**3 - L)
    assert sphere_class(4) == ScaledClass.of(L**4 + L**2)
    assert sphere_class(1) is None and sphere_class(2) is None
    for m in (3, 4, 7, 8):
        for q in (3, 5, 7, 11, 13):
            assert eval_at(sphere_class(m), q) == sphere_count(m, q)
    # x^2 + y^2 = 1 has q - (-1/q) points
    assert [sphere_count(1, q) for q in (3, 5, 7, 13)] == [4, 4, 8, 12]


def test_incidence_class():
    assert eval_at(class_incidence(3), 3) == 169
    assert eval_at(class_incidence(2), 3) == 4


def test_space_expression_evaluation():
    e = A("GL", 3) / A("Sp", 2)
    assert str(e) == "GL(3)/Sp(2)"
    assert space_class(e) == class_GL(3) / class_Sp(2)
    assert space_class(SpaceExpr("projectivize", children=(A("A", 6) - A("B", 4),))) == class_pfaffian_hypersurface(4)
    assert space_class(SpaceExpr("projectivize", children=(A("A", 4),))) == class_proj(3)
    assert space_class(A("GLmodO", 3)) is None
    assert space_formula(A("GLmodO", 3), 5) == count_GL_mod_O(3, None, 5)
    assert space_formula(A("GL", 2), 5) is None
    assert space_formula(A("GLmodO", 2, "+") * A("Gm"), 3) == 12 * 2
    assert space_dimension(A("GL", 3)) == 9
    assert space_dimension(A("GLmodO", 4, "+")) == 10
    assert space_dimension(A("Sbar", 3, 1)) == 2


@pytest.mark.parametrize("name, params", [("Sp", (3,)), ("XSp", (3, 2)), ("GLmodO", (4,)), ("GLmodO", (3, "+")),
                                          ("SLrep", (3, (1,))), ("MatRank", (2, 3)), ("AltRank", (4, 3)),
                                          ("Pf", (2,)), ("Nope", (1,))])
def test_atom_validation(name, params):
    with pytest.raises(InvalidParameter):
        A(name, *params)
