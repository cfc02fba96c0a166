"""Brute-force generators used as independent oracles."""
import itertools

from tatecount.linalg import MatFp


def all_matrices(n, p):
    for entries in itertools.product(range(p), repeat=n * n):
        yield MatFp.from_rows([entries[i * n:(i + 1) * n] for i in range(n)], p)


def all_symmetric(n, p):
    pos = [(i, j) for i in range(n) for j in range(i, n)]
    for vals in itertools.product(range(p), repeat=len(pos)):
        m = [[0] * n for _ in range(n)]
        for (i, j), v in zip(pos, vals):
            m[i][j] = m[j][i] = v
        yield MatFp.from_rows(m, p)


def all_alternating(n, p):
    pos = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for vals in itertools.product(range(p), repeat=len(pos)):
        m = [[0] * n for _ in range(n)]
        for (i, j), v in zip(pos, vals):
            m[i][j] = v
            m[j][i] = -v
        yield MatFp.from_rows(m, p)
