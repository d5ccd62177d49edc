"""Minimisation of multiplicity tree and word automata.

The pipeline has three steps: a matrix ``F`` whose rows span the forward
space, a matrix ``B`` whose columns span the backward space, and the solve
step, which picks ``rank(F B)`` rows of ``F`` and solves for the transition
matrices of the minimal automaton.  Steps one and two can be done by
saturation (default) or through the branch-free Gram spanning sets of the
product automaton.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Union

from .automata import Mta, Mwa, is_word_mta, mta_as_mwa, word_as_tree_mta
from .constructions import product
from .errors import SizeGuardExceeded
from .linalg import (
    BasisBuilder,
    Matrix,
    kron,
    kron_power,
    kron_vectors,
    rank,
    solve_right,
)
from .trees import Tree

GRAM_SIZE_GUARD = 10_000_000

Automaton = Union[Mta, Mwa]


@dataclass(frozen=True)
class ForwardBasis:
    """Rows ``mu(w)`` for the witness trees ``w``; they form a basis of the forward space."""

    matrix: Matrix
    witnesses: tuple[Tree, ...]
    builder: BasisBuilder = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.matrix.nrows


@dataclass(frozen=True)
class BackwardBasis:
    matrix: Matrix          # columns form a basis of the backward space
    builder: BasisBuilder = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.matrix.ncols


@dataclass(frozen=True)
class SpanningGram:
    f_n: Matrix     # 1 x n^2
    b_n: Matrix     # n^2 x n^2
    F: Matrix
    B: Matrix


def _as_mta(a: Automaton) -> Mta:
    return word_as_tree_mta(a) if isinstance(a, Mwa) else a


# ---------------------------------------------------------------------------
# Step 1: forward
# ---------------------------------------------------------------------------

def _new_tuples(i: int, k: int):
    """Tuples in [i]^k minus [i-1]^k (1-based), lexicographic; [0] is empty and [-1]^k too."""
    if i == 0:
        return [()] if k == 0 else []
    if k == 0:
        return []
    return [t for t in itertools.product(range(1, i + 1), repeat=k) if max(t) == i]


def forward_basis(a: Automaton) -> ForwardBasis:
    """Saturation: close the span of the nullary vectors under every transition."""
    a = _as_mta(a)
    n = a.dim
    builder = BasisBuilder(n)
    rows: list[tuple] = []
    witnesses: list[Tree] = []
    i = 0
    while i <= len(rows):
        for name, k in a.alphabet.symbols:
            m = a.mu[name]
            for tup in _new_tuples(i, k):
                if len(rows) == n:
                    break
                vec = kron_vectors([rows[l - 1] for l in tup])
                v = m.rmul_vector(vec)
                if builder.insert(v):
                    rows.append(v)
                    witnesses.append(Tree(name, tuple(witnesses[l - 1] for l in tup)))
        i += 1
    return ForwardBasis(Matrix(rows, n), tuple(witnesses), builder)


# ---------------------------------------------------------------------------
# Step 2: backward
# ---------------------------------------------------------------------------

def one_step_context_matrices(a: Mta, F: Matrix) -> list[Matrix]:
    """The matrices ``(F_l1 x .. x I_n x .. x F_lk) mu(sigma)`` over all symbols, holes and row tuples."""
    n = a.dim
    out = []
    frows = F.rows
    unit = [tuple(1 if p == q else 0 for q in range(n)) for p in range(n)]
    for name, k in a.alphabet.symbols:
        if k == 0:
            continue
        m = a.mu[name]
        if k == 1:
            out.append(m)
            continue
        for hole in range(k):
            for others in itertools.product(range(len(frows)), repeat=k - 1):
                rows = []
                for p in range(n):
                    parts = [frows[l] for l in others[:hole]] + [unit[p]] + [frows[l] for l in others[hole:]]
                    rows.append(m.rmul_vector(kron_vectors(parts)))
                out.append(Matrix(rows, n))
    return out


def backward_basis(a: Automaton, fb: ForwardBasis) -> BackwardBasis:
    """Closure of ``gamma`` under the one-step context matrices, breadth-first."""
    a = _as_mta(a)
    n = a.dim
    mats = one_step_context_matrices(a, fb.matrix)
    builder = BasisBuilder(n)
    cols: list[tuple] = []
    queue = deque()
    g = a.gamma.col(0) if n else ()
    if builder.insert(g):
        cols.append(g)
        queue.append(g)
    while queue and len(cols) < n:
        v = queue.popleft()
        for mat in mats:
            w = mat.mul_vector(v)
            if builder.insert(w):
                cols.append(w)
                queue.append(w)
                if len(cols) == n:
                    break
    B = Matrix(cols, n).T if cols else Matrix.zeros(n, 0)
    return BackwardBasis(B, builder)


# ---------------------------------------------------------------------------
# Gram spanning sets
# ---------------------------------------------------------------------------

def _check_gram_size(n: int, r: int, guard: int) -> None:
    size = n * n * (n * n) ** r
    if size > guard:
        raise SizeGuardExceeded(
            f"Gram spanning sets need Kronecker powers with {size} entries (guard {guard})"
        )


def _gram_from_sums(n: int, f_n: Matrix, bg: Matrix) -> tuple[Matrix, Matrix]:
    F = Matrix([[f_n[0, i * n + j] for j in range(n)] for i in range(n)], n)
    B = Matrix([[bg[i * n + j, 0] for j in range(n)] for i in range(n)], n)
    return F, B


def spanning_gram(a: Automaton, guard: int = GRAM_SIZE_GUARD) -> SpanningGram:
    """Gram matrices ``F`` and ``B`` built from summed vectors of the product automaton.

    Word automata use the closed form ``b(l) = sum_{k<l} M^k`` with
    ``M = sum_sigma mu'(sigma)`` and ``f(l) = alpha^{x2} b(l)``; tree automata
    run the general recursions for ``f`` and ``b``.
    """
    if isinstance(a, Mta) and is_word_mta(a):
        a = mta_as_mwa(a)
    n = a.dim
    nn = n * n
    if isinstance(a, Mwa):
        _check_gram_size(n, 1, guard)
        if n == 0:
            z = Matrix.zeros(0, 0)
            return SpanningGram(Matrix.zeros(1, 0), z, z, z)
        msum = Matrix.zeros(nn, nn)
        for x in a.letters:
            msum = msum + kron(a.mu[x], a.mu[x])
        b = Matrix.identity(nn)
        power = Matrix.identity(nn)
        for _ in range(1, n):
            power = power @ msum
            b = b + power
        f_n = kron(a.alpha, a.alpha) @ b
        bg = b @ kron(a.gamma, a.gamma)
        F, B = _gram_from_sums(n, f_n, bg)
        return SpanningGram(f_n, b, F, B)

    r = a.alphabet.rank
    _check_gram_size(n, r, guard)
    if n == 0:
        z = Matrix.zeros(0, 0)
        return SpanningGram(Matrix.zeros(1, 0), z, z, z)
    prod = product(a, a)
    sums = {}
    for k in range(r + 1):
        acc = Matrix.zeros(nn ** k, nn)
        for name in a.alphabet.of_arity(k):
            acc = acc + prod.mu[name]
        sums[k] = acc
    f = sums[0]
    for _ in range(1, n):
        nxt = Matrix.zeros(1, nn)
        for k in range(r + 1):
            nxt = nxt + kron_power(f, k) @ sums[k]
        f = nxt
    f_n = f
    # b(l+1) = I + sum_k sum_j (f^{x(j-1)} x b(l) x f^{x(k-j)}) S_k = I + b(l) N
    ident = Matrix.identity(nn)
    N = Matrix.zeros(nn, nn)
    for k in range(1, r + 1):
        for j in range(1, k + 1):
            N = N + kron(kron(kron_power(f_n, j - 1), ident), kron_power(f_n, k - j)) @ sums[k]
    b = ident
    for _ in range(1, n):
        b = ident + b @ N
    bg = b @ kron(a.gamma, a.gamma)
    F, B = _gram_from_sums(n, f_n, bg)
    return SpanningGram(f_n, b, F, B)


# ---------------------------------------------------------------------------
# Step 3: solve
# ---------------------------------------------------------------------------

def spanning_matrices(a: Automaton, method: str = "saturation") -> tuple[Matrix, Matrix]:
    """``(F, B)`` with ``RS(F)`` the forward space and ``CS(B)`` the backward space."""
    if method == "saturation":
        fb = forward_basis(a)
        return fb.matrix, backward_basis(a, fb).matrix
    if method == "gram":
        g = spanning_gram(a)
        return g.F, g.B
    raise ValueError(f"unknown method {method!r}; expected 'saturation' or 'gram'")


def minimal_dimension(a: Automaton, method: str = "saturation") -> int:
    F, B = spanning_matrices(a, method)
    if F.nrows == 0 or B.ncols == 0:
        return 0
    return rank(F @ B)


def select_rows(F: Matrix, B: Matrix) -> Matrix:
    """Keep row ``i`` of ``F`` iff it raises the rank of the prefix ``F[:i] B``."""
    builder = BasisBuilder(B.ncols)
    kept = []
    if B.ncols == 0:
        return Matrix.zeros(0, F.ncols)
    for row in F.rows:
        if builder.insert(B.rmul_vector(row)):
            kept.append(row)
    return Matrix(kept, F.ncols)


def solve_minimal_mta(a: Mta, Ft: Matrix, B: Matrix) -> Mta:
    """Minimal automaton with ``mu~(s) Ft B = Ft^{xk} mu(s) B`` and ``gamma~ = Ft gamma``."""
    m = Ft.nrows
    FtB = Ft @ B
    mu = {}
    for name, k in a.alphabet.symbols:
        rhs = kron_power(Ft, k) @ a.mu[name] @ B
        mu[name] = solve_right(FtB, rhs) if m else Matrix.zeros(m ** k, 0)
    return Mta(m, a.alphabet, mu, Ft @ a.gamma)


def solve_minimal_mwa(a: Mwa, Ft: Matrix, B: Matrix) -> Mwa:
    """Minimal word automaton from ``alpha~ Ft B = alpha B`` and ``mu~(s) Ft B = Ft mu(s) B``."""
    m = Ft.nrows
    if m == 0:
        return Mwa(0, a.letters, {x: Matrix.zeros(0, 0) for x in a.letters},
                   Matrix.zeros(1, 0), Matrix.zeros(0, 1))
    FtB = Ft @ B
    # one elimination for all right-hand sides
    blocks = [a.alpha @ B] + [Ft @ a.mu[x] @ B for x in a.letters]
    sol = solve_right(FtB, Matrix.vstack(blocks))
    alpha = sol.take_rows([0])
    mu = {}
    for idx, x in enumerate(a.letters):
        start = 1 + idx * m
        mu[x] = sol.take_rows(range(start, start + m))
    return Mwa(m, a.letters, mu, alpha, Ft @ a.gamma)


def minimise(a: Automaton, method: str = "saturation") -> Automaton:
    """Equivalent automaton of minimal dimension, of the same kind as the input."""
    if a.dim == 0:
        return a
    if method == "saturation":
        fb = forward_basis(a)
        bb = backward_basis(a, fb)
        if fb.size == a.dim and bb.size == a.dim:
            # both spaces are everything: F B is invertible, so a is minimal already
            return a
        F, B = fb.matrix, bb.matrix
    else:
        F, B = spanning_matrices(a, method)
    Ft = select_rows(F, B)
    if isinstance(a, Mwa):
        return solve_minimal_mwa(a, Ft, B)
    return solve_minimal_mta(a, Ft, B)
