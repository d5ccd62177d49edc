"""Multiplicity word and tree automata over the rationals and their semantics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AlphabetError, DimensionError, EnumerationCapExceeded
from .linalg import BasisBuilder, Matrix, kron_all, rank
from .trees import (
    DEFAULT_CAP,
    HOLE,
    RankedAlphabet,
    Tree,
    check_tree,
    enumerate_contexts,
    enumerate_trees,
)


@dataclass(frozen=True, eq=False)
class Mta:
    """Tree automaton ``(n, alphabet, mu, gamma)``; ``mu[s]`` is ``n**arity(s) x n``."""

    dim: int
    alphabet: RankedAlphabet
    mu: Mapping[str, Matrix]
    gamma: Matrix

    def __post_init__(self):
        n = self.dim
        mu = dict(self.mu)
        if set(mu) != set(self.alphabet.names):
            missing = set(self.alphabet.names) - set(mu)
            extra = set(mu) - set(self.alphabet.names)
            raise AlphabetError(f"transition symbols differ from alphabet (missing {sorted(missing)}, extra {sorted(extra)})")
        for name, k in self.alphabet.symbols:
            if mu[name].shape != (n ** k, n):
                raise DimensionError(
                    f"transition matrix of {name!r} has shape {mu[name].shape}, expected {(n ** k, n)}"
                )
        if self.gamma.shape != (n, 1):
            raise DimensionError(f"final vector has shape {self.gamma.shape}, expected {(n, 1)}")
        object.__setattr__(self, "mu", {name: mu[name] for name in self.alphabet.names})

    @property
    def size(self) -> int:
        return sum(self.dim ** (k + 1) for _, k in self.alphabet.symbols) + self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mta):
            return NotImplemented
        return (self.dim == other.dim and self.alphabet == other.alphabet
                and self.mu == other.mu and self.gamma == other.gamma)

    def __repr__(self) -> str:
        return f"Mta(dim={self.dim}, alphabet={list(self.alphabet.symbols)})"


@dataclass(frozen=True, eq=False)
class Mwa:
    """Word automaton ``(n, letters, mu, alpha, gamma)`` with ``n x n`` letter matrices."""

    dim: int
    letters: tuple[str, ...]
    mu: Mapping[str, Matrix]
    alpha: Matrix
    gamma: Matrix

    def __post_init__(self):
        n = self.dim
        letters = tuple(self.letters)
        if len(set(letters)) != len(letters):
            raise AlphabetError("duplicate letters")
        object.__setattr__(self, "letters", letters)
        mu = dict(self.mu)
        if set(mu) != set(letters):
            raise AlphabetError("transition letters differ from alphabet")
        for name in letters:
            if mu[name].shape != (n, n):
                raise DimensionError(f"transition matrix of {name!r} has shape {mu[name].shape}, expected {(n, n)}")
        if self.alpha.shape != (1, n):
            raise DimensionError(f"initial vector has shape {self.alpha.shape}, expected {(1, n)}")
        if self.gamma.shape != (n, 1):
            raise DimensionError(f"final vector has shape {self.gamma.shape}, expected {(n, 1)}")
        object.__setattr__(self, "mu", {name: mu[name] for name in letters})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mwa):
            return NotImplemented
        return (self.dim == other.dim and self.letters == other.letters and self.mu == other.mu
                and self.alpha == other.alpha and self.gamma == other.gamma)

    def __repr__(self) -> str:
        return f"Mwa(dim={self.dim}, letters={list(self.letters)})"


def zero_mta(alphabet: RankedAlphabet, dim: int = 0) -> Mta:
    return Mta(dim, alphabet, {s: Matrix.zeros(dim ** k, dim) for s, k in alphabet.symbols},
               Matrix.zeros(dim, 1))


def zero_mwa(letters: Sequence[str], dim: int = 0) -> Mwa:
    return Mwa(dim, tuple(letters), {s: Matrix.zeros(dim, dim) for s in letters},
               Matrix.zeros(1, dim), Matrix.zeros(dim, 1))


# ---------------------------------------------------------------------------
# Tree semantics
# ---------------------------------------------------------------------------

def mu_tree(a: Mta, t: Tree, _memo: dict | None = None) -> Matrix:
    """Row vector mu(t), computed by the recursive Kronecker rule."""
    if _memo is None:
        check_tree(a.alphabet, t)
        _memo = {}
    hit = _memo.get(t)
    if hit is not None:
        return hit
    if t.children:
        v = kron_all([mu_tree(a, c, _memo) for c in t.children]) @ a.mu[t.root]
    else:
        v = a.mu[t.root]
    _memo[t] = v
    return v


def eval_tree(a: Mta, t: Tree) -> Fraction:
    return (mu_tree(a, t) @ a.gamma)[0, 0]


def mu_context(a: Mta, c: Tree) -> Matrix:
    """n x n matrix of a context, with the hole acting as the identity."""
    check_tree(a.alphabet, c, allow_hole=True)
    if c.hole_count() != 1:
        raise ValueError(f"{c} is not a context")
    memo: dict = {}

    def go(node: Tree) -> Matrix:
        if node.root == HOLE:
            return Matrix.identity(a.dim)
        parts = [go(ch) if ch.hole_count() else mu_tree(a, ch, memo) for ch in node.children]
        return kron_all(parts) @ a.mu[node.root]

    return go(c)


def mu_trees(a: Mta, trees: Sequence[Tree]) -> list[Matrix]:
    memo: dict = {}
    for t in trees:
        check_tree(a.alphabet, t)
    return [mu_tree(a, t, memo) for t in trees]


# ---------------------------------------------------------------------------
# Word semantics
# ---------------------------------------------------------------------------

def _check_word(a: Mwa, w: Sequence[str]) -> None:
    for x in w:
        if x not in a.mu:
            raise AlphabetError(f"unknown letter {x!r}")


def mu_word(a: Mwa, w: Sequence[str]) -> Matrix:
    _check_word(a, w)
    m = Matrix.identity(a.dim)
    for x in w:
        m = m @ a.mu[x]
    return m


def eval_word(a: Mwa, w: Sequence[str]) -> Fraction:
    _check_word(a, w)
    v = a.alpha
    for x in w:
        v = v @ a.mu[x]
    return (v @ a.gamma)[0, 0]


def fresh_leaf_name(letters: Sequence[str], base: str = "eps") -> str:
    name = base
    while name in letters:
        name += "'"
    return name


def word_as_tree_mta(a: Mwa, leaf_name: str | None = None) -> Mta:
    """View a word automaton as a tree automaton with unary letters over a fresh leaf."""
    if leaf_name is None or leaf_name in a.letters:
        leaf_name = fresh_leaf_name(a.letters, leaf_name or "eps")
    alphabet = RankedAlphabet([(leaf_name, 0)] + [(x, 1) for x in a.letters])
    mu = {leaf_name: a.alpha}
    mu.update(a.mu)
    return Mta(a.dim, alphabet, mu, a.gamma)


def leaf_symbol(mta: Mta) -> str:
    """The nullary symbol of an automaton produced by :func:`word_as_tree_mta`."""
    (leaf_name,) = mta.alphabet.of_arity(0)
    return leaf_name


def word_to_tree(w: Sequence[str], leaf_name: str = "eps") -> Tree:
    t = Tree(leaf_name)
    for x in w:
        t = Tree(x, (t,))
    return t


def tree_to_word(t: Tree) -> tuple[str, ...]:
    out = []
    while t.children:
        out.append(t.root)
        (t,) = t.children
    return tuple(reversed(out))


def is_word_mta(a: Mta) -> bool:
    return len(a.alphabet.of_arity(0)) == 1 and all(k in (0, 1) for _, k in a.alphabet.symbols)


def mta_as_mwa(a: Mta) -> Mwa:
    """Inverse of :func:`word_as_tree_mta` for automata with one leaf and unary letters."""
    if not is_word_mta(a):
        raise AlphabetError("only automata with one nullary symbol and unary letters are word automata")
    leaf_name = leaf_symbol(a)
    letters = tuple(s for s in a.alphabet.names if s != leaf_name)
    return Mwa(a.dim, letters, {x: a.mu[x] for x in letters}, a.mu[leaf_name], a.gamma)


# ---------------------------------------------------------------------------
# Hankel fragments (desk-scale oracle)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HankelFragment:
    row_labels: tuple
    col_labels: tuple
    values: Matrix


def hankel_fragment(
    a: Mta,
    max_tree_height: int,
    max_context_depth: int,
    subtree_pool: Sequence[Tree],
    cap: int = DEFAULT_CAP,
) -> HankelFragment:
    """Brute-force fragment: rows T^{<h}, columns contexts of depth < d over ``subtree_pool``.

    Every entry is obtained by substituting the tree into the context and
    evaluating the resulting tree directly.
    """
    if max_context_depth > 1 and not subtree_pool and a.alphabet.rank > 1:
        raise ValueError("a nonempty subtree pool is needed for contexts of depth >= 1")
    rows = enumerate_trees(a.alphabet, max_tree_height, cap)
    cols = enumerate_contexts(a.alphabet, max_context_depth, subtree_pool, cap)
    if len(rows) * len(cols) > cap:
        raise EnumerationCapExceeded(
            f"fragment would have {len(rows)} x {len(cols)} entries, above the cap of {cap}"
        )
    memo: dict = {}
    values = []
    for t in rows:
        values.append([(mu_tree(a, c.substitute(t), memo) @ a.gamma)[0, 0] for c in cols])
    return HankelFragment(tuple(rows), tuple(cols), Matrix(values, len(cols)))


def word_hankel_fragment(a: Mwa, rows: Sequence[Sequence[str]], cols: Sequence[Sequence[str]]) -> HankelFragment:
    values = [[eval_word(a, tuple(x) + tuple(y)) for y in cols] for x in rows]
    return HankelFragment(tuple(tuple(x) for x in rows), tuple(tuple(y) for y in cols),
                          Matrix(values, len(cols)))


def truncated_hankel_rank(
    a: Mta, max_tree_height: int, max_context_depth: int, subtree_pool: Sequence[Tree],
    cap: int = 2_000_000,
) -> int:
    """Rank of the same fragment as :func:`hankel_fragment`, without materialising it.

    Uses ``H[t, c] = mu(t) . mu(c) . gamma``: the rank of the fragment equals the
    rank of ``R' . C'`` where ``R'`` (``C'``) is any subset of the row vectors
    ``mu(t)`` (column vectors ``mu(c) gamma``) spanning the same space.
    """
    n = a.dim
    rows = enumerate_trees(a.alphabet, max_tree_height, cap)
    cols = enumerate_contexts(a.alphabet, max_context_depth, subtree_pool, cap)
    rb = BasisBuilder(n)
    kept_rows = []
    for v in mu_trees(a, rows):
        if rb.insert(v.row(0)):
            kept_rows.append(v)
    cb = BasisBuilder(n)
    kept_cols = []
    for c in cols:
        w = mu_context(a, c) @ a.gamma
        if cb.insert(w.col(0)):
            kept_cols.append(w)
        if len(kept_cols) == n:
            break
    if not kept_rows or not kept_cols:
        return 0
    return rank(Matrix.vstack(kept_rows) @ Matrix.hstack(kept_cols))
