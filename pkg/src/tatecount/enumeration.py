"""Exhaustive point counts over F_p.

Every count here comes from scanning the whole candidate set; nothing is
derived from the symbolic side.  Matrix scans run a compiled odometer loop
over the free entries (all entries, upper triangle, or strict upper
triangle) and are split into partitions by fixing the leading entries, so
partial histograms can be computed independently and summed.
"""
from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .ffield import is_prime
from .linalg import SymType

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure-Python fallback, slow but correct
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

DEFAULT_MAX_CANDIDATES = 10**8

FULL, SYMMETRIC, ALTERNATING = 0, 1, 2

# tag bits for full matrices
_DET_ONE, _SYMPLECTIC, _SIMILITUDE = 1, 2, 4
# tags for symmetric matrices
_DEGENERATE, _SQUARE, _NONSQUARE = 0, 1, 2


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, limit: int, what: str = "enumeration"):
        self.needed = needed
        self.limit = limit
        super().__init__(f"{what} needs {needed} candidates, budget is {limit}")


class NotACone(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    allow_override: bool = False

    def check(self, needed: int, what: str = "enumeration"):
        if needed > self.max_candidates and not self.allow_override:
            raise BudgetExceeded(needed, self.max_candidates, what)


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class CountRecord:
    space: str
    q: int
    count: int | Fraction
    method: str
    elapsed: float = 0.0
    search_space: int | None = None

    def __post_init__(self):
        if self.method not in ("enumeration", "formula", "symbolic"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.count < 0:
            raise ValueError("counts are nonnegative")
        if self.method == "enumeration" and self.search_space is None:
            raise ValueError("enumeration records carry their search-space size")

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "q": self.q,
            "count": str(self.count),
            "method": self.method,
            "elapsed": self.elapsed,
            "search_space": None if self.search_space is None else str(self.search_space),
        }

    @classmethod
    def from_json(cls, d: dict) -> CountRecord:
        return cls(d["space"], d["q"], Fraction(d["count"]) if "/" in d["count"] else int(d["count"]),
                   d["method"], d["elapsed"], None if d["search_space"] is None else int(d["search_space"]))


# -- compiled scan ---------------------------------------------------------

@njit(nogil=True, cache=True)
def _scan(kind, n, p, pos_i, pos_j, start, stop, inv, sq, symp, hist):
    F = pos_i.shape[0]
    digits = np.zeros(F, np.int64)
    x = start
    for t in range(F - 1, -1, -1):
        digits[t] = x % p
        x //= p
    M = np.zeros((n, n), np.int64)
    A = np.zeros((n, n), np.int64)
    G = np.zeros((n, n), np.int64)
    half = n // 2
    for _ in range(start, stop):
        for t in range(F):
            i = pos_i[t]
            j = pos_j[t]
            v = digits[t]
            M[i, j] = v
            if kind == 1:
                M[j, i] = v
            elif kind == 2:
                M[j, i] = (p - v) % p
        for i in range(n):
            for j in range(n):
                A[i, j] = M[i, j]
        r = 0
        d = 1
        for c in range(n):
            piv = -1
            for i in range(r, n):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                d = 0
                continue
            if piv != r:
                for j in range(n):
                    tmp = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = tmp
                d = (p - d) % p
            pv = A[r, c]
            d = d * pv % p
            iv = inv[pv]
            for i in range(r + 1, n):
                f = A[i, c] * iv % p
                if f != 0:
                    for j in range(c, n):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
            r += 1
        if r < n:
            d = 0
        tag = 0
        if kind == 0:
            if d == 1:
                tag |= 1
            if symp and r == n:
                # G = M^T J M with J = [[0, I], [-I, 0]]
                for i in range(n):
                    for j in range(n):
                        s = 0
                        for k in range(half):
                            s += M[k, i] * M[k + half, j] - M[k + half, i] * M[k, j]
                        G[i, j] = s % p
                lam = G[0, half]
                ok = lam != 0
                for i in range(n):
                    for j in range(n):
                        want = 0
                        if j == i + half:
                            want = lam
                        elif i == j + half:
                            want = (p - lam) % p
                        if G[i, j] != want:
                            ok = False
                if ok:
                    tag |= 4
                    if lam == 1:
                        tag |= 2
        elif kind == 1:
            if r == n:
                disc = d
                if n % 2 == 0 and half % 2 == 1:
                    disc = (p - d) % p
                tag = 1 if sq[disc] else 2
        hist[r, tag] += 1
        t = F - 1
        while t >= 0:
            digits[t] += 1
            if digits[t] < p:
                break
            digits[t] = 0
            t -= 1


def _free_positions(kind: int, n: int):
    if kind == FULL:
        pos = [(i, j) for i in range(n) for j in range(n)]
    elif kind == SYMMETRIC:
        pos = [(i, j) for i in range(n) for j in range(i, n)]
    else:
        pos = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pi = np.array([a for a, _ in pos], dtype=np.int64)
    pj = np.array([b for _, b in pos], dtype=np.int64)
    return pi, pj


def search_space(kind: int, n: int, p: int) -> int:
    return p ** len(_free_positions(kind, n)[0])


def _partitions(total: int, p: int, free: int, target: int) -> list[tuple[int, int]]:
    # fix the first k free entries: partitions are contiguous index blocks
    k = 0
    while k < free and p**k < target:
        k += 1
    size = total // p**k
    return [(i * size, (i + 1) * size) for i in range(p**k)]


def scan_histogram(kind: int, n: int, p: int, *, symplectic: bool = False,
                   workers: int | None = None, partitions: int | None = None) -> np.ndarray:
    """Histogram[rank, tag] over every candidate of the given matrix family."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kind == SYMMETRIC and p == 2:
        raise ValueError("symmetric classification needs odd p")
    pi, pj = _free_positions(kind, n)
    total = p ** len(pi)
    inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    sq = np.zeros(p, dtype=np.bool_)
    for x in range(p):
        sq[x * x % p] = True
    workers = workers or 1
    parts = _partitions(total, p, len(pi), partitions or max(4 * workers, 1))

    def run(block):
        h = np.zeros((n + 1, 8), dtype=np.int64)
        _scan(kind, n, p, pi, pj, block[0], block[1], inv, sq, symplectic and n % 2 == 0, h)
        return h

    if workers == 1:
        hists = [run(b) for b in parts]
    else:
        with ThreadPoolExecutor(workers) as ex:
            hists = list(ex.map(run, parts))
    out = np.zeros((n + 1, 8), dtype=np.int64)
    for h in hists:
        out += h
    assert out.sum() == total
    return out


@lru_cache(maxsize=64)
def _cached_hist(kind, n, p, symplectic):
    h = scan_histogram(kind, n, p, symplectic=symplectic, workers=os.cpu_count() or 1)
    h.setflags(write=False)
    return h


def _hist(kind, n, p, budget: Budget, symplectic=False):
    budget.check(search_space(kind, n, p))
    return _cached_hist(kind, n, p, symplectic)


# -- public oracles --------------------------------------------------------

def count_matrices_by_rank(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> dict[int, int]:
    h = _hist(FULL, n, p, budget)
    return {r: int(h[r].sum()) for r in range(n + 1)}


def count_det_one(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> int:
    h = _hist(FULL, n, p, budget)
    return int(sum(h[n, t] for t in range(8) if t & _DET_ONE))


def count_symplectic(two_m: int, p: int, budget: Budget = DEFAULT_BUDGET, similitude: bool = False) -> int:
    """Matrices g with g^T J g = J (or = lambda J with lambda != 0)."""
    h = _hist(FULL, two_m, p, budget, symplectic=True)
    bit = _SIMILITUDE if similitude else _SYMPLECTIC
    return int(sum(h[two_m, t] for t in range(8) if t & bit))


def count_symmetric(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> dict[tuple[int, SymType], int]:
    """Symmetric n x n matrices by (rank, isometry type)."""
    if p == 2:
        raise ValueError("symmetric classification needs odd p")
    h = _hist(SYMMETRIC, n, p, budget)
    out = {(r, SymType.DEGENERATE): int(h[r, _DEGENERATE]) for r in range(n)}
    if n % 2:
        out[(n, SymType.ODD_RANK_SQUARE_DISC)] = int(h[n, _SQUARE])
        out[(n, SymType.ODD_RANK_NONSQUARE_DISC)] = int(h[n, _NONSQUARE])
    else:
        out[(n, SymType.EVEN_PLUS)] = int(h[n, _SQUARE])
        out[(n, SymType.EVEN_MINUS)] = int(h[n, _NONSQUARE])
    return out


def symmetric_rank_counts(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> dict[int, int]:
    out: dict[int, int] = {}
    for (r, _), c in count_symmetric(n, p, budget).items():
        out[r] = out.get(r, 0) + c
    return out


def count_alternating_by_rank(two_n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> dict[int, int]:
    if two_n % 2:
        raise ValueError("alternating scans use even sizes")
    h = _hist(ALTERNATING, two_n, p, budget)
    return {r: int(h[r].sum()) for r in range(two_n + 1)}


def count_quadric_affine(diag_coeffs, rhs: int, p: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Solutions of sum a_i x_i^2 = rhs by scanning all p^len tuples."""
    coeffs = [int(a) % p for a in diag_coeffs]
    if not 1 <= len(coeffs) <= 6:
        raise ValueError("between 1 and 6 variables")
    if p == 2 or not is_prime(p):
        raise ValueError("needs an odd prime")
    budget.check(p ** len(coeffs), "quadric scan")
    squares = (np.arange(p, dtype=np.int64) ** 2) % p
    head, tail = coeffs[0], coeffs[1:]
    # values of the tail form on all p^(len-1) tuples
    vals = np.zeros(1, dtype=np.int64)
    for a in tail:
        vals = ((vals[:, None] + a * squares[None, :]) % p).ravel()
    total = 0
    for x0 in range(p):
        total += int(np.count_nonzero((vals + head * squares[x0]) % p == rhs % p))
    return total


def count_projective_from_affine(cone_count: int, p: int) -> int:
    """Points of the projectivization of a cone with ``cone_count`` affine points."""
    if cone_count < 1 or (cone_count - 1) % (p - 1):
        raise NotACone(f"{cone_count} points cannot be a cone over F_{p}")
    return (cone_count - 1) // (p - 1)


def _punctured(count: int, p: int) -> int:
    # points of a cone without its apex, modulo scalars
    return count_projective_from_affine(count + 1, p)


def count_incidence(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Points of {(Q, [v]) : Qv = 0} in P(Sym^2) x P^{n-1}.

    Summed over rank strata of the scan (each rank-r form has a P^{n-r-1} of
    kernel lines) and cross-checked against the projective-bundle product.
    """
    ranks = symmetric_rank_counts(n, p, budget)
    strata = sum(_punctured(ranks[r], p) * ((p ** (n - r) - 1) // (p - 1)) for r in range(1, n))
    N = n * (n + 1) // 2
    bundle = ((p**n - 1) // (p - 1)) * ((p ** (N - n) - 1) // (p - 1))
    assert strata == bundle, (n, p, strata, bundle)
    return strata


def count_sym_proj_rank_at_most(n: int, r: int, p: int, budget: Budget = DEFAULT_BUDGET) -> int:
    ranks = symmetric_rank_counts(n, p, budget)
    return count_projective_from_affine(sum(ranks[j] for j in range(r + 1)), p)


# -- subspace scans ----------------------------------------------------------

def _batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices (B, r, c) over F_p, vectorized over B."""
    A = mats.astype(np.int64) % p
    B, nr, nc = A.shape
    inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    used = np.zeros((B, nr), dtype=bool)
    rank = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for c in range(nc):
        col = A[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        i = cand.argmax(axis=1)
        pv = np.where(has, col[ar, i], 0)
        prow = A[ar, i] * inv[pv][:, None] % p
        A = (A - col[:, :, None] * prow[:, None, :]) % p
        A[ar[has], i[has]] = prow[has]
        used[ar[has], i[has]] = True
        rank += has
    return rank


def gaussian_binomial(d: int, k: int, q: int) -> int:
    if not 0 <= k <= d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_rref(d: int, k: int, p: int):
    """Yield stacks of k x d reduced row echelon matrices, one per pivot pattern.

    Together the stacks list every k-dimensional subspace of F_p^d once.
    """
    for pivots in itertools.combinations(range(d), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, d) if j not in pivots]
        count = p ** len(free)
        base = np.zeros((count, k, d), dtype=np.int64)
        for i, c in enumerate(pivots):
            base[:, i, c] = 1
        if free:
            idx = np.arange(count, dtype=np.int64)
            for t in range(len(free) - 1, -1, -1):
                i, j = free[t]
                base[:, i, j] = idx % p
                idx //= p
        yield base


def _symplectic_gram(U: np.ndarray, p: int) -> np.ndarray:
    half = U.shape[2] // 2
    X, Y = U[:, :, :half], U[:, :, half:]
    return (np.einsum("bik,bjk->bij", X, Y) - np.einsum("bik,bjk->bij", Y, X)) % p


def count_nondegenerate_subspaces(two_n: int, two_k: int, p: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """2k-dimensional subspaces of (F_p^{2n}, standard symplectic form) on which it stays nondegenerate."""
    budget.check(gaussian_binomial(two_n, two_k, p), "subspace scan")
    if two_k == 0:
        return 1
    total = 0
    for U in iter_rref(two_n, two_k, p):
        total += int(np.count_nonzero(_batch_rank(_symplectic_gram(U, p), p) == two_k))
    return total


def lagrangians(n: int, p: int) -> np.ndarray:
    found = []
    for U in iter_rref(2 * n, n, p):
        keep = ~_symplectic_gram(U, p).reshape(len(U), -1).any(axis=1)
        found.append(U[keep])
    return np.concatenate(found)


def count_lagrangian_splittings(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Ordered pairs of transverse Lagrangian subspaces of F_p^{2n}."""
    n_lag = 1
    for i in range(1, n + 1):
        n_lag *= p**i + 1
    budget.check(gaussian_binomial(2 * n, n, p) + n_lag * n_lag, "Lagrangian pair scan")
    lag = lagrangians(n, p)
    assert len(lag) == n_lag
    total = 0
    for U in lag:
        stacked = np.concatenate([np.broadcast_to(U, lag.shape), lag], axis=1)
        total += int(np.count_nonzero(_batch_rank(stacked, p) == 2 * n))
    return total


# -- space expressions -------------------------------------------------------

def _leaf_count(atom, p: int, budget: Budget) -> tuple[int, int] | None:
    """(count, search-space size) for one catalogued atom, or None if no oracle."""
    a = atom.params
    name = atom.name
    if name in ("GL", "SL", "MatRank", "Det"):
        n = a[0]
        size = search_space(FULL, n, p)
        if name == "GL":
            return count_matrices_by_rank(n, p, budget)[n], size
        if name == "SL":
            return count_det_one(n, p, budget), size
        if name == "MatRank":
            return count_matrices_by_rank(n, p, budget)[a[1]], size
        hist = count_matrices_by_rank(n, p, budget)
        return count_projective_from_affine(sum(hist[r] for r in range(n)), p), size
    if name in ("Sp", "GSp"):
        return count_symplectic(a[0], p, budget, similitude=name == "GSp"), search_space(FULL, a[0], p)
    if name in ("AltRank", "Pf", "B", "PAlt"):
        two_n = a[0]
        size = search_space(ALTERNATING, two_n, p)
        hist = count_alternating_by_rank(two_n, p, budget)
        if name == "AltRank":
            return hist[2 * a[1]], size
        if name == "Pf":
            return count_projective_from_affine(sum(hist[r] for r in range(two_n)), p), size
        if name == "B":
            return hist[two_n], size
        return _punctured(hist[two_n], p), size
    if name == "Gm":
        return sum(1 for x in range(p) if x), p
    if name == "A":
        return p ** a[0], p ** a[0]
    if name == "P":
        return count_projective_from_affine(p ** (a[0] + 1), p), p ** (a[0] + 1)
    if name == "XSp":
        k, n = a
        return count_nondegenerate_subspaces(2 * n, 2 * k, p, budget), gaussian_binomial(2 * n, 2 * k, p)
    if name == "LSp":
        n = a[0]
        return count_lagrangian_splittings(n, p, budget), gaussian_binomial(2 * n, n, p)
    if name == "GLmodO":
        n = a[0]
        hist = count_symmetric(n, p, budget)
        if n % 2:
            tag = SymType.ODD_RANK_SQUARE_DISC
        else:
            tag = SymType.EVEN_PLUS if a[1] == "+" else SymType.EVEN_MINUS
        return hist[(n, tag)], search_space(SYMMETRIC, n, p)
    if name == "Inc":
        return count_incidence(a[0], p, budget), search_space(SYMMETRIC, a[0], p)
    if name == "Y":
        n = a[0]
        return count_sym_proj_rank_at_most(n, n - 1, p, budget), search_space(SYMMETRIC, n, p)
    if name == "Sbar":
        n, r = a
        return count_sym_proj_rank_at_most(n, r, p, budget), search_space(SYMMETRIC, n, p)
    if name == "Sphere":
        m = a[0]
        return count_quadric_affine([1] * (m + 1), 1, p, budget), p ** (m + 1)
    return None


def enumerate_space(expr, p: int, budget: Budget = DEFAULT_BUDGET) -> tuple[Fraction, int] | None:
    """Count an expression from per-atom scans, or None if some atom has no oracle.

    Returns (count, total candidates scanned).  Quotients of counts may be
    fractional.
    """
    from .catalog import combine_counts

    scanned = 0
    leaves = {}
    for leaf in expr.leaves():
        if leaf not in leaves:
            got = _leaf_count(leaf, p, budget)
            if got is None:
                return None
            leaves[leaf] = got
            scanned += got[1]
    value = combine_counts(expr, p, lambda atom, q: Fraction(leaves[atom][0]))
    if value is None:
        return None
    return value, scanned
