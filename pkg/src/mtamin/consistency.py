"""Polynomial sentences, their encoding as weighted samples, and a Hankel learner.

A sentence ``exists x. f_1(x) = 0 and ... and f_m(x) = 0`` is turned into a
finite sample of weighted words that a 3-dimensional word automaton can be
consistent with iff the sentence holds over the rationals.  Consistent
automata all look like the one built by :func:`build_figure_automaton`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence, Union

from .automata import Mwa, eval_word
from .errors import AlphabetError, NotUnique, SingularFragment
from .linalg import Matrix, as_fraction, rank, solve_right

Word = tuple[str, ...]


class Monomial(NamedTuple):
    coeff: Fraction
    exps: tuple[int, ...]


Polynomial = tuple[Monomial, ...]


def eval_polynomial(poly: Sequence[Monomial], point: Sequence) -> Fraction:
    total = Fraction(0)
    for coeff, exps in poly:
        term = Fraction(coeff)
        for x, e in zip(point, exps):
            term *= Fraction(x) ** e
        total += term
    return total


@dataclass(frozen=True)
class Sentence:
    """``exists x_1..x_n`` of a conjunction ``f_i = 0``; each ``f_i`` has at least one monomial."""

    num_vars: int
    polynomials: tuple[Polynomial, ...]

    def __post_init__(self):
        polys = []
        for i, poly in enumerate(self.polynomials, 1):
            if not poly:
                raise ValueError(f"polynomial {i} has no monomials")
            mons = []
            for coeff, exps in poly:
                exps = tuple(int(e) for e in exps)
                if len(exps) != self.num_vars:
                    raise ValueError(f"polynomial {i}: monomial has {len(exps)} exponents, expected {self.num_vars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"polynomial {i}: negative exponent")
                mons.append(Monomial(as_fraction(coeff), exps))
            polys.append(tuple(mons))
        object.__setattr__(self, "polynomials", tuple(polys))

    def holds_at(self, point: Sequence) -> bool:
        return all(eval_polynomial(p, point) == 0 for p in self.polynomials)


# ---------------------------------------------------------------------------
# General formulas and the rewrite to conjunctive form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    poly: Polynomial           # the atom poly = 0


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Not:
    part: object


Formula = Union[Atom, And, Or, Not]


@dataclass(frozen=True)
class GeneralFormula:
    num_vars: int
    body: Formula


def _nnf(f: Formula, negate: bool = False) -> Formula:
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return _nnf(f.part, not negate)
    parts = tuple(_nnf(p, negate) for p in f.parts)
    if isinstance(f, And):
        return Or(parts) if negate else And(parts)
    return And(parts) if negate else Or(parts)


def _key(exps, n: int) -> tuple[int, ...]:
    return tuple(exps) + (0,) * (n - len(exps))


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            n = max(len(e1), len(e2))
            k = tuple(a + b for a, b in zip(_key(e1, n), _key(e2, n)))
            out[k] = out.get(k, Fraction(0)) + c1 * c2
    return out


def _poly_add(p: dict, q: dict) -> dict:
    n = max((len(e) for e in list(p) + list(q)), default=0)
    out: dict = {}
    for src in (p, q):
        for e, c in src.items():
            k = _key(e, n)
            out[k] = out.get(k, Fraction(0)) + c
    return out


def _monomial(k: int, e: int, c=1) -> dict:
    return {(0,) * k + (e,): Fraction(c)}


def normalize_sentence(g: GeneralFormula) -> Sentence:
    """Equisatisfiable conjunction of polynomial equations.

    ``A or B`` becomes ``x^2 - x = 0`` with ``x f = 0`` for each equation of
    ``A`` and ``(1 - x) g = 0`` for each equation of ``B``; ``f != 0`` becomes
    ``x f - 1 = 0``.  Fresh variables follow the original ones in order of
    introduction.  Atoms that are not rewritten keep their monomial order.
    """
    nvars = g.num_vars

    def fresh() -> int:
        nonlocal nvars
        nvars += 1
        return nvars - 1

    def as_dict(poly: Polynomial) -> dict:
        out: dict = {}
        for coeff, exps in poly:
            k = tuple(exps)
            out[k] = out.get(k, Fraction(0)) + Fraction(coeff)
        return out

    def conj(f: Formula) -> list:
        # items: (polynomial as dict, original polynomial or None)
        if isinstance(f, Atom):
            return [(as_dict(f.poly), f.poly)]
        if isinstance(f, Not):   # after NNF the argument is an atom
            x = fresh()
            p = _poly_mul(_monomial(x, 1), as_dict(f.part.poly))
            return [(_poly_add(p, {(): Fraction(-1)}), None)]
        if isinstance(f, And):
            return [item for part in f.parts for item in conj(part)]
        acc = conj(f.parts[0])
        for part in f.parts[1:]:
            rhs = conj(part)
            x = fresh()
            sel = _poly_add(_monomial(x, 2), _monomial(x, 1, -1))
            not_x = _poly_add({(): Fraction(1)}, _monomial(x, 1, -1))
            acc = ([(sel, None)]
                   + [(_poly_mul(_monomial(x, 1), p), None) for p, _ in acc]
                   + [(_poly_mul(not_x, q), None) for q, _ in rhs])
        return acc

    polys = []
    for p, orig in conj(_nnf(g.body)):
        if orig is not None:
            polys.append(tuple(Monomial(c, _key(e, nvars)) for c, e in orig))
            continue
        mons = [Monomial(c, _key(e, nvars)) for e, c in p.items() if c != 0]
        polys.append(tuple(mons) or (Monomial(Fraction(0), (0,) * nvars),))
    return Sentence(nvars, tuple(polys))


# ---------------------------------------------------------------------------
# Alphabet, word encoding, and the three-state automaton
# ---------------------------------------------------------------------------

def hash_symbol(i: int) -> str:
    return f"#{i}"


def coeff_symbol(i: int, j: int) -> str:
    return f"c{i}_{j}"


def var_symbol(k: int) -> str:
    return f"x{k}"


def sentence_alphabet(s: Sentence) -> tuple[str, ...]:
    """``s``, ``t``, then ``#i``, then ``ci_j``, then ``xk`` (all indices 1-based)."""
    m = len(s.polynomials)
    out = ["s", "t"]
    out += [hash_symbol(i) for i in range(1, m + 1)]
    out += [coeff_symbol(i, j) for i, poly in enumerate(s.polynomials, 1) for j in range(1, len(poly) + 1)]
    if m:
        out += [var_symbol(k) for k in range(1, s.num_vars + 1)]
    return tuple(out)


def encode_word(s: Sentence, i: int) -> Word:
    """``#i ci_1 x.. #i ... #i ci_l x.. #i`` for polynomial ``i`` (1-based)."""
    if not 1 <= i <= len(s.polynomials):
        raise IndexError(f"polynomial index {i} outside 1..{len(s.polynomials)}")
    h = hash_symbol(i)
    out = [h]
    for j, (_, exps) in enumerate(s.polynomials[i - 1], 1):
        out.append(coeff_symbol(i, j))
        for k, e in enumerate(exps, 1):
            out.extend([var_symbol(k)] * e)
        out.append(h)
    return tuple(out)


def build_figure_automaton(s: Sentence, witness: Sequence) -> Mwa:
    """Three states; a run reads one monomial block in the middle state, weighted by its value at ``witness``."""
    if len(witness) != s.num_vars:
        raise ValueError(f"witness has {len(witness)} values, expected {s.num_vars}")
    a = [as_fraction(x) for x in witness]
    letters = sentence_alphabet(s)

    def mat(entries: Mapping[tuple[int, int], Fraction]) -> Matrix:
        rows = [[Fraction(0)] * 3 for _ in range(3)]
        for (p, q), w in entries.items():
            rows[p][q] = Fraction(w)
        return Matrix(rows, 3)

    mu = {"s": mat({(0, 1): 1}), "t": mat({(1, 2): 1})}
    for i, poly in enumerate(s.polynomials, 1):
        mu[hash_symbol(i)] = mat({(0, 0): 1, (0, 1): 1, (1, 2): 1, (2, 2): 1})
        for j, mon in enumerate(poly, 1):
            mu[coeff_symbol(i, j)] = mat({(0, 0): 1, (1, 1): mon.coeff, (2, 2): 1})
    if s.polynomials:
        for k in range(1, s.num_vars + 1):
            mu[var_symbol(k)] = mat({(0, 0): 1, (1, 1): a[k - 1], (2, 2): 1})
    return Mwa(3, letters, mu, Matrix([[1, 0, 0]]), Matrix([[0], [0], [1]]))


# ---------------------------------------------------------------------------
# Samples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sample:
    alphabet: tuple[str, ...]
    pairs: tuple[tuple[Word, Fraction], ...]

    def __post_init__(self):
        letters = set(self.alphabet)
        seen: dict = {}
        pairs = []
        for w, r in self.pairs:
            w = tuple(w)
            r = as_fraction(r)
            for x in w:
                if x not in letters:
                    raise AlphabetError(f"sample word uses unknown letter {x!r}")
            if w in seen and seen[w] != r:
                raise ValueError(f"word {' '.join(w)!r} carries two weights {seen[w]} and {r}")
            seen[w] = r
            pairs.append((w, r))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "pairs", tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)


PREFIXES: tuple[Word, ...] = ((), ("s",), ("s", "t"))
SUFFIXES: tuple[Word, ...] = (("s", "t"), ("t",), ())


def figure_rows(s: Sentence) -> list[Word]:
    """Row labels ``X`` then the new words of ``X Sigma``, in alphabet order."""
    rows = list(PREFIXES)
    for u in PREFIXES:
        for x in sentence_alphabet(s):
            w = u + (x,)
            if w not in rows:
                rows.append(w)
    return rows


def figure_table(s: Sentence, witness: Sequence | None = None) -> dict[tuple[Word, Word], Fraction | None]:
    """The fragment on rows ``X u X Sigma`` and columns ``Y``, cell by cell.

    Cells ``(s xk, t)`` hold ``witness[k-1]``, or ``None`` without a witness.
    """
    coeffs = {coeff_symbol(i, j): mon.coeff
              for i, poly in enumerate(s.polynomials, 1) for j, mon in enumerate(poly, 1)}
    hashes = {hash_symbol(i) for i in range(1, len(s.polynomials) + 1)}
    xs = {var_symbol(k): k for k in range(1, s.num_vars + 1)} if s.polynomials else {}
    zero, one = Fraction(0), Fraction(1)
    table: dict = {}
    for u in figure_rows(s):
        if u == ():
            vals = (one, zero, zero)
        elif u == ("s",):
            vals = (zero, one, zero)
        elif u == ("s", "t"):
            vals = (zero, zero, one)
        elif u in (("t",), ("s", "t", "t"), ("s", "s"), ("s", "t", "s")):
            vals = (zero, zero, zero)
        else:
            head, x = u[:-1], u[-1]
            if head == ():
                vals = (one, one, zero) if x in hashes else (one, zero, zero)
            elif head == ("s", "t"):
                vals = (zero, zero, one)
            elif x in hashes:
                vals = (zero, zero, one)
            elif x in coeffs:
                vals = (zero, coeffs[x], zero)
            else:
                k = xs[x]
                vals = (zero, None if witness is None else as_fraction(witness[k - 1]), zero)
        for v, val in zip(SUFFIXES, vals):
            table[(u, v)] = val
    return table


def excluded_words(s: Sentence) -> list[Word]:
    if not s.polynomials:
        return []
    return [("s", var_symbol(k), "t") for k in range(1, s.num_vars + 1)]


def encode_sample(s: Sentence) -> tuple[Sample, int]:
    """Sample of all fragment cells except ``s xk t``, plus ``(w_i, 0)``; dimension bound 3."""
    excluded = set(excluded_words(s))
    weights: dict[Word, Fraction] = {}
    for (u, v), val in figure_table(s).items():
        w = u + v
        if w in excluded:
            continue
        if w in weights and weights[w] != val:
            raise AssertionError(f"fragment cells for {' '.join(w)!r} disagree")
        weights.setdefault(w, val)
    for i in range(1, len(s.polynomials) + 1):
        w = encode_word(s, i)
        if w in weights and weights[w] != 0:
            raise AssertionError(f"encoded word {' '.join(w)!r} collides with a fragment cell")
        weights.setdefault(w, Fraction(0))
    return Sample(sentence_alphabet(s), tuple(weights.items())), 3


def verify_sample(a: Mwa, sample: Sample) -> bool:
    return all(eval_word(a, w) == r for w, r in sample.pairs)


# ---------------------------------------------------------------------------
# Learning from a Hankel fragment
# ---------------------------------------------------------------------------

def learn_from_hankel(
    hxy: Matrix,
    hxsy: Mapping[str, Matrix],
    X: Sequence[Sequence[str]],
    Y: Sequence[Sequence[str]],
) -> Mwa:
    """Automaton of dimension ``|X|`` from ``H_{X,Y}`` and the shifted blocks ``H_{X sigma, Y}``.

    Uses ``mu(sigma) H_{X,Y} = H_{X sigma, Y}``, the initial vector selecting
    the row of the empty word and the final vector equal to the column of the
    empty word.
    """
    X = [tuple(x) for x in X]
    Y = [tuple(y) for y in Y]
    if hxy.shape != (len(X), len(Y)):
        raise ValueError(f"fragment has shape {hxy.shape}, labels give {(len(X), len(Y))}")
    if () not in X or () not in Y:
        raise ValueError("both label sets must contain the empty word")
    n = len(X)
    if hxy.nrows != hxy.ncols or rank(hxy) != n:
        raise SingularFragment("the fragment H_{X,Y} is not square and invertible")
    mu = {}
    for x, block in hxsy.items():
        if block.shape != hxy.shape:
            raise ValueError(f"shifted block for {x!r} has shape {block.shape}, expected {hxy.shape}")
        try:
            mu[x] = solve_right(hxy, block)
        except NotUnique as exc:  # pragma: no cover - rank was checked above
            raise SingularFragment(str(exc)) from exc
    alpha = Matrix([[1 if x == () else 0 for x in X]], n)
    gamma = hxy.take_cols([Y.index(())])
    return Mwa(n, tuple(hxsy), mu, alpha, gamma)


def hankel_blocks(f, X: Sequence[Word], Y: Sequence[Word], letters: Sequence[str]) -> tuple[Matrix, dict[str, Matrix]]:
    """``H_{X,Y}`` and ``H_{X sigma,Y}`` for a series given as a function on words."""
    X = [tuple(x) for x in X]
    Y = [tuple(y) for y in Y]
    h = Matrix([[f(x + y) for y in Y] for x in X], len(Y))
    shifted = {s: Matrix([[f(x + (s,) + y) for y in Y] for x in X], len(Y)) for s in letters}
    return h, shifted
