"""Dense matrices over F_p: rank, determinant, Pfaffian and form classification."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .ffield import is_prime

MAX_SIZE = 12


class NotSquare(ValueError):
    pass


class NotAlternating(ValueError):
    pass


class OddSize(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class SymType(str, enum.Enum):
    ODD_RANK_SQUARE_DISC = "odd_rank_square_disc"
    ODD_RANK_NONSQUARE_DISC = "odd_rank_nonsquare_disc"
    EVEN_PLUS = "even_plus"
    EVEN_MINUS = "even_minus"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class MatFp:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        width = len(self.rows[0])
        if len(self.rows) > MAX_SIZE or width > MAX_SIZE:
            raise ValueError(f"matrix larger than {MAX_SIZE}x{MAX_SIZE}")
        for row in self.rows:
            if len(row) != width:
                raise ValueError("ragged rows")
            if any(not 0 <= x < self.p for x in row):
                raise ValueError("entries must be reduced residues")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> MatFp:
        return cls(p, tuple(tuple(int(x) % p for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int, p: int) -> MatFp:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int, p: int) -> MatFp:
        return cls.from_rows([[0] * n_cols for _ in range(n_rows)], p)

    @classmethod
    def diag(cls, values: Sequence[int], p: int) -> MatFp:
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], p)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> MatFp:
        return MatFp(self.p, tuple(zip(*self.rows)))

    def __matmul__(self, other: MatFp) -> MatFp:
        if self.p != other.p or self.n_cols != other.n_rows:
            raise ValueError("incompatible matrices")
        cols = list(zip(*other.rows))
        return MatFp.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows], self.p
        )

    def is_symmetric(self) -> bool:
        return self.is_square and self.rows == self.T.rows

    def is_alternating(self) -> bool:
        if not self.is_square:
            return False
        n, p = self.n_rows, self.p
        if any(self.rows[i][i] for i in range(n)):
            return False
        return all((self.rows[i][j] + self.rows[j][i]) % p == 0 for i in range(n) for j in range(i + 1, n))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _eliminate(M: MatFp) -> tuple[int, int]:
    """Row-reduce a scratch copy; return (rank, determinant-if-square)."""
    p = M.p
    a = M.tolist()
    n_rows, n_cols = M.n_rows, M.n_cols
    r = 0
    det = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c]), None)
        if piv is None:
            det = 0
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            det = -det
        pv = a[r][c]
        det = det * pv % p
        inv = pow(pv, -1, p)
        for i in range(r + 1, n_rows):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == n_rows:
            break
    if r < n_cols:
        det = 0
    return r, det % p


def rank(M: MatFp) -> int:
    return _eliminate(M)[0]


def det(M: MatFp) -> int:
    if not M.is_square:
        raise NotSquare(f"{M.n_rows}x{M.n_cols} matrix has no determinant")
    return _eliminate(M)[1]


def pfaffian(A: MatFp) -> int:
    """Pfaffian by expansion along the first row.

    Sign convention: Pf(A) = sum_j (-1)^j a_{1j} Pf(A without rows/cols 1, j)
    (1-based j), so the standard block form [[0, 1], [-1, 0]]^m has Pf = 1.
    """
    if not A.is_square or A.n_rows % 2:
        raise OddSize("Pfaffian needs an even-sized square matrix")
    if not A.is_alternating():
        raise NotAlternating("matrix is not alternating")
    p = A.p
    rows = A.rows

    def pf(idx: tuple[int, ...]) -> int:
        if not idx:
            return 1
        i, rest = idx[0], idx[1:]
        total = 0
        for k, j in enumerate(rest):
            a = rows[i][j]
            if a:
                sub = rest[:k] + rest[k + 1:]
                term = a * pf(sub)
                total += -term if k % 2 else term
        return total % p

    return pf(tuple(range(A.n_rows)))


def classify_symmetric(S: MatFp) -> tuple[int, SymType]:
    """Rank and isometry type of a symmetric bilinear form over F_p, p odd.

    Full-rank forms of even size n are split (``EVEN_PLUS``) exactly when
    (-1)^(n/2) det is a square; odd-size forms are tagged by whether det is a
    square.
    """
    if not S.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    if S.p == 2:
        raise ValueError("form classification needs odd characteristic")
    n = S.n_rows
    r, d = _eliminate(S)
    if r < n:
        return r, SymType.DEGENERATE
    p = S.p
    if n % 2:
        square = pow(d, (p - 1) // 2, p) == 1
        return r, SymType.ODD_RANK_SQUARE_DISC if square else SymType.ODD_RANK_NONSQUARE_DISC
    disc = d if (n // 2) % 2 == 0 else (-d) % p
    square = pow(disc, (p - 1) // 2, p) == 1
    return r, SymType.EVEN_PLUS if square else SymType.EVEN_MINUS
