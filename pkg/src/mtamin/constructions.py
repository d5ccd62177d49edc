"""Difference and product automata."""
from __future__ import annotations

import itertools

from .automata import Mta
from .errors import AlphabetError
from .linalg import ONE, ZERO, Matrix, kron


def _mixed_index(digits, base: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * base + d
    return idx


def _same_alphabet(a1: Mta, a2: Mta) -> None:
    if set(a1.alphabet.symbols) != set(a2.alphabet.symbols):
        raise AlphabetError("automata are over different ranked alphabets")


def difference(a1: Mta, a2: Mta) -> Mta:
    """Automaton recognising ``||a1|| - ||a2||`` on ``n1 + n2`` states.

    Row ``(i_1, ..., i_k)`` of a transition matrix copies the matching row of
    ``a1`` when every ``i_l`` falls in the first block of states, the matching
    row of ``a2`` when every ``i_l`` falls in the second block, and is zero
    otherwise.
    """
    _same_alphabet(a1, a2)
    n1, n2 = a1.dim, a2.dim
    n = n1 + n2
    zero1 = (ZERO,) * n1
    zero2 = (ZERO,) * n2
    mu = {}
    for name, k in a1.alphabet.symbols:
        m1, m2 = a1.mu[name], a2.mu[name]
        rows = []
        for digits in itertools.product(range(n), repeat=k):
            if all(d < n1 for d in digits):
                rows.append(m1.row(_mixed_index(digits, n1)) + zero2)
            elif all(d >= n1 for d in digits):
                rows.append(zero1 + m2.row(_mixed_index([d - n1 for d in digits], n2)))
            else:
                rows.append((ZERO,) * n)
        if k == 0:
            rows = [m1.row(0) + m2.row(0)]
        mu[name] = Matrix(rows, n)
    gamma = Matrix.vstack([a1.gamma, -a2.gamma], 1)
    return Mta(n, a1.alphabet, mu, gamma)


def interleave_permutation(k: int, n1: int, n2: int) -> Matrix:
    """Permutation ``P`` with ``(u1 x v1) x ... x (uk x vk) . P = (u1 x ... x uk) x (v1 x ... x vk)``."""
    size = (n1 * n2) ** k
    rows = [[ZERO] * size for _ in range(size)]
    for pairs in itertools.product(itertools.product(range(n1), range(n2)), repeat=k):
        inter = _mixed_index([i * n2 + j for i, j in pairs], n1 * n2)
        sep = _mixed_index([i for i, _ in pairs], n1) * n2 ** k + _mixed_index([j for _, j in pairs], n2)
        rows[inter][sep] = ONE
    return Matrix(rows, size)


def product(a1: Mta, a2: Mta) -> Mta:
    """Automaton recognising ``||a1|| * ||a2||`` on ``n1 * n2`` states.

    The permutation is applied implicitly: row ``((i1,j1), ..., (ik,jk))`` of the
    product transition matrix is the Kronecker product of row ``(i1..ik)`` of
    ``a1`` with row ``(j1..jk)`` of ``a2``.
    """
    _same_alphabet(a1, a2)
    n1, n2 = a1.dim, a2.dim
    n = n1 * n2
    mu = {}
    for name, k in a1.alphabet.symbols:
        m1, m2 = a1.mu[name], a2.mu[name]
        rows = []
        for pairs in itertools.product(itertools.product(range(n1), range(n2)), repeat=k):
            r1 = m1.row(_mixed_index([i for i, _ in pairs], n1))
            r2 = m2.row(_mixed_index([j for _, j in pairs], n2))
            rows.append(tuple(x * y for x in r1 for y in r2))
        mu[name] = Matrix(rows, n)
    return Mta(n, a1.alphabet, mu, kron(a1.gamma, a2.gamma))
