"""Arithmetic circuits, identity testing, and the minimisation-to-ACIT reduction.

Zeroness and equivalence of automata are decided exactly; the reduction
builds a single variable-free circuit that is zero iff the automaton has an
equivalent automaton of dimension at most ``d``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .automata import Mta, Mwa, word_as_tree_mta
from .constructions import difference, product
from .errors import AlphabetError, BadPrime, CircuitDivisionByZero, UnassignedVariable
from .linalg import Matrix, as_fraction, kron
from .minimise import GRAM_SIZE_GUARD, _check_gram_size, forward_basis, minimal_dimension

Automaton = Union[Mta, Mwa]
GateGrid = list  # list of lists of gate ids

OPS = ("add", "sub", "mul", "div")


class Circuit:
    """Straight-line program; gate ``k`` may only read gates ``< k``.

    Gates are tuples ``("const", Fraction)``, ``("var", i)`` or
    ``(op, a, b)`` with ``op`` in add/sub/mul/div.  Equal constants share a gate.
    """

    def __init__(self):
        self.gates: list[tuple] = []
        self.output: int | None = None
        self._consts: dict[Fraction, int] = {}
        self._vars: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.gates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.gates == other.gates and self.output == other.output

    def __repr__(self) -> str:
        return f"Circuit({len(self.gates)} gates, output={self.output})"

    def _push(self, gate: tuple) -> int:
        self.gates.append(gate)
        return len(self.gates) - 1

    def const(self, x) -> int:
        x = as_fraction(x)
        g = self._consts.get(x)
        if g is None:
            g = self._consts[x] = self._push(("const", x))
        return g

    def var(self, i: int) -> int:
        if i < 0:
            raise ValueError("variable indices are nonnegative")
        g = self._vars.get(i)
        if g is None:
            g = self._vars[i] = self._push(("var", i))
        return g

    def _op(self, op: str, a: int, b: int) -> int:
        n = len(self.gates)
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"{op} gate refers to a gate that does not exist yet")
        return self._push((op, a, b))

    def add(self, a: int, b: int) -> int:
        return self._op("add", a, b)

    def sub(self, a: int, b: int) -> int:
        return self._op("sub", a, b)

    def mul(self, a: int, b: int) -> int:
        return self._op("mul", a, b)

    def div(self, a: int, b: int) -> int:
        return self._op("div", a, b)

    def set_output(self, g: int) -> None:
        if not 0 <= g < len(self.gates):
            raise ValueError(f"output gate g{g} does not exist")
        self.output = g

    def sum(self, gs: Sequence[int]) -> int:
        if not gs:
            return self.const(0)
        acc = gs[0]
        for g in gs[1:]:
            acc = self.add(acc, g)
        return acc

    @property
    def variables(self) -> list[int]:
        return sorted(self._vars)

    @property
    def num_vars(self) -> int:
        return max(self._vars) + 1 if self._vars else 0

    def _resolve_output(self, output: int | None) -> int:
        g = self.output if output is None else output
        if g is None:
            raise ValueError("circuit has no output gate")
        return g


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _eval_prefix(c: Circuit, upto: int, assignment: Mapping[int, Fraction]) -> list[Fraction]:
    vals: list = []
    for k, gate in enumerate(c.gates[: upto + 1]):
        kind = gate[0]
        if kind == "const":
            v = gate[1]
        elif kind == "var":
            try:
                v = as_fraction(assignment[gate[1]])
            except KeyError:
                raise UnassignedVariable(gate[1]) from None
        else:
            x, y = vals[gate[1]], vals[gate[2]]
            if kind == "add":
                v = x + y
            elif kind == "sub":
                v = x - y
            elif kind == "mul":
                v = x * y
            else:
                if y == 0:
                    raise CircuitDivisionByZero(k)
                v = x / y
        vals.append(v)
    return vals


def eval_exact(c: Circuit, assignment: Mapping[int, object] | None = None, output: int | None = None) -> Fraction:
    g = c._resolve_output(output)
    return _eval_prefix(c, g, assignment or {})[g]


def eval_gates(c: Circuit, gates: Sequence[int], assignment: Mapping[int, object] | None = None) -> list[Fraction]:
    """Exact values of several gates in one pass."""
    if not gates:
        return []
    vals = _eval_prefix(c, max(gates), assignment or {})
    return [vals[g] for g in gates]


def eval_mod(c: Circuit, assignment: Mapping[int, int], p: int, output: int | None = None) -> int:
    """Value of the circuit in the integers modulo the prime ``p``."""
    g = c._resolve_output(output)
    vals: list[int] = []
    for k, gate in enumerate(c.gates[: g + 1]):
        kind = gate[0]
        if kind == "const":
            q = gate[1].denominator % p
            if q == 0:
                raise BadPrime(f"denominator of constant {gate[1]} vanishes modulo {p}")
            v = gate[1].numerator * pow(q, -1, p) % p
        elif kind == "var":
            try:
                v = int(assignment[gate[1]]) % p
            except KeyError:
                raise UnassignedVariable(gate[1]) from None
        else:
            x, y = vals[gate[1]], vals[gate[2]]
            if kind == "add":
                v = (x + y) % p
            elif kind == "sub":
                v = (x - y) % p
            elif kind == "mul":
                v = x * y % p
            else:
                if y == 0:
                    raise CircuitDivisionByZero(k)
                v = x * pow(y, -1, p) % p
        vals.append(v)
    return vals[g]


# ---------------------------------------------------------------------------
# Randomized identity testing
# ---------------------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int, rng: random.Random, rounds: int = 40) -> bool:
    """Miller-Rabin with ``rounds`` random bases."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, bits: int = 62) -> int:
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand, rng):
            return cand


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity test.

    ``confidence`` is ``"exact"`` or ``"one-sided"``; one-sided Zero verdicts
    come from ``trials`` independent modular evaluations, each of which misses
    a nonzero circuit with small probability.
    """

    outcome: str            # "Zero" or "NonZero"
    confidence: str
    trials: int = 0

    @property
    def is_zero(self) -> bool:
        return self.outcome == "Zero"

    def __str__(self) -> str:
        if self.confidence == "exact":
            return f"{self.outcome} (exact)"
        return f"{self.outcome} (one-sided error, {self.trials} trials)"


def acit_test(c: Circuit, trials: int = 20, seed: int = 0, output: int | None = None,
              max_retries: int = 100) -> Verdict:
    """Randomized test: each trial evaluates modulo a fresh random 62-bit prime.

    The generator for trial ``t`` is seeded from ``(seed, t, attempt)`` so the
    verdict does not depend on how trials are scheduled.  Trials hitting a
    bad prime or a modular division by zero are retried.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    g = c._resolve_output(output)
    if c.gates[g][0] == "const":
        return Verdict("Zero" if c.gates[g][1] == 0 else "NonZero", "exact")
    for t in range(trials):
        for attempt in range(max_retries):
            rng = random.Random(f"acit/{seed}/{t}/{attempt}")
            p = random_prime(rng)
            assignment = {i: rng.randrange(p) for i in c.variables}
            try:
                value = eval_mod(c, assignment, p, g)
            except (BadPrime, CircuitDivisionByZero):
                continue
            break
        else:
            raise BadPrime(f"trial {t}: no usable prime after {max_retries} attempts")
        if value != 0:
            return Verdict("NonZero", "exact", t + 1)
    return Verdict("Zero", "one-sided", trials)


def exact_test(c: Circuit, output: int | None = None) -> Verdict:
    """Exact verdict for a variable-free circuit."""
    if c.variables:
        raise ValueError("exact testing needs a variable-free circuit")
    v = eval_exact(c, {}, output)
    return Verdict("Zero" if v == 0 else "NonZero", "exact")


# ---------------------------------------------------------------------------
# Gate-matrix helpers
# ---------------------------------------------------------------------------

def _const_grid(c: Circuit, m: Matrix) -> GateGrid:
    return [[c.const(x) for x in row] for row in m.rows]


def _grid_mul(c: Circuit, a: GateGrid, b: GateGrid, inner: int) -> GateGrid:
    ncols = len(b[0]) if b else 0
    return [[c.sum([c.mul(row[k], b[k][j]) for k in range(inner)]) for j in range(ncols)] for row in a]


def _grid_add(c: Circuit, a: GateGrid, b: GateGrid) -> GateGrid:
    return [[c.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _identity_grid(c: Circuit, n: int) -> GateGrid:
    one, zero = c.const(1), c.const(0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _kron_row(c: Circuit, rows: Sequence[list[int]]) -> list[int]:
    out = [c.const(1)]
    for r in rows:
        out = [c.mul(x, y) for x in out for y in r]
    return out


# ---------------------------------------------------------------------------
# The reduction
# ---------------------------------------------------------------------------

def circuit_for_fb(a: Automaton, c: Circuit | None = None,
                   guard: int = GRAM_SIZE_GUARD) -> tuple[Circuit, GateGrid]:
    """Variable-free circuit whose ``n x n`` designated gates compute ``F B``.

    ``F`` and ``B`` are the Gram spanning matrices of the product automaton.
    The construction depends only on the shape of ``a``, never on its values.
    """
    c = Circuit() if c is None else c
    n = a.dim
    nn = n * n
    if isinstance(a, Mwa):
        _check_gram_size(n, 1, guard)
        if n == 0:
            return c, []
        msum = Matrix.zeros(nn, nn)
        for x in a.letters:
            msum = msum + kron(a.mu[x], a.mu[x])
        mg = _const_grid(c, msum)
        ident = _identity_grid(c, nn)
        b = ident
        for _ in range(1, n):
            b = _grid_add(c, ident, _grid_mul(c, b, mg, nn))
        f = _grid_mul(c, _const_grid(c, kron(a.alpha, a.alpha)), b, nn)[0]
        gamma2 = _const_grid(c, kron(a.gamma, a.gamma))
    else:
        r = a.alphabet.rank
        _check_gram_size(n, r, guard)
        if n == 0:
            return c, []
        prod = product(a, a)
        sums = []
        for k in range(r + 1):
            acc = Matrix.zeros(nn ** k, nn)
            for name in a.alphabet.of_arity(k):
                acc = acc + prod.mu[name]
            sums.append(_const_grid(c, acc))
        # f(1) = sum over nullary symbols; f(l+1) = sum_k f(l)^{x k} S_k
        f = sums[0][0]
        for _ in range(1, n):
            terms = []
            for k in range(r + 1):
                fk = _kron_row(c, [f] * k)
                terms.append(_grid_mul(c, [fk], sums[k], len(fk))[0])
            f = [c.sum([t[j] for t in terms]) for j in range(nn)]
        # b(l+1) = I + b(l) N with N = sum_k sum_j (f^{x(j-1)} x I x f^{x(k-j)}) S_k
        zero = c.const(0)
        ncols = [[zero] * nn for _ in range(nn)]
        for k in range(1, r + 1):
            for j in range(1, k + 1):
                left = _kron_row(c, [f] * (j - 1))
                right = _kron_row(c, [f] * (k - j))
                for p_ in range(nn):
                    # row p of f^{x(j-1)} x e_p x f^{x(k-j)} is supported on one block
                    for q in range(nn):
                        acc = []
                        for u, lu in enumerate(left):
                            for v, rv in enumerate(right):
                                idx = (u * nn + p_) * len(right) + v
                                acc.append(c.mul(c.mul(lu, rv), sums[k][idx][q]))
                        ncols[p_][q] = c.add(ncols[p_][q], c.sum(acc))
        ident = _identity_grid(c, nn)
        b = ident
        for _ in range(1, n):
            b = _grid_add(c, ident, _grid_mul(c, b, ncols, nn))
        gamma2 = _const_grid(c, kron(a.gamma, a.gamma))
    bg = _grid_mul(c, b, gamma2, nn)
    F = [[f[i * n + j] for j in range(n)] for i in range(n)]
    B = [[bg[i * n + j][0] for j in range(n)] for i in range(n)]
    return c, _grid_mul(c, F, B, n)


def rank_le_to_acit(c: Circuit, m_gates: GateGrid, d: int) -> int:
    """Append gates that vanish iff ``rank(M) <= d``; returns the output gate.

    ``M^T M`` is positive semidefinite, so ``rank(M) <= d`` iff the ``n - d``
    lowest coefficients of its characteristic polynomial vanish.  The
    coefficients come from Faddeev-LeVerrier and the conjunction is the sum
    of their squares.
    """
    n = len(m_gates)
    if d < 0 or d > n:
        raise ValueError(f"threshold d={d} outside 0..{n}")
    if d == n:
        out = c.const(0)
        c.set_output(out)
        return out
    mt = [[m_gates[j][i] for j in range(n)] for i in range(n)]
    a = _grid_mul(c, mt, m_gates, n)
    coeffs: list[int | None] = [None] * (n + 1)
    coeffs[n] = c.const(1)
    zero = c.const(0)
    m = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = _grid_mul(c, a, m, n)
        m = [[c.add(am[i][j], coeffs[n - k + 1]) if i == j else am[i][j] for j in range(n)]
             for i in range(n)]
        am = _grid_mul(c, a, m, n)
        trace = c.sum([am[i][i] for i in range(n)])
        coeffs[n - k] = c.div(trace, c.const(-k))
    out = c.sum([c.mul(coeffs[k], coeffs[k]) for k in range(n - d)])
    c.set_output(out)
    return out


def reduce_minimisation_to_acit(a: Automaton, d: int, guard: int = GRAM_SIZE_GUARD) -> tuple[Circuit, int]:
    """Single circuit that is zero iff some automaton of dimension ``<= d`` is equivalent to ``a``.

    Thresholds ``d >= dim(a)`` hold trivially and give the constant zero.
    """
    if d < 0:
        raise ValueError("threshold must be nonnegative")
    if d >= a.dim:
        c = Circuit()
        out = c.const(0)
        c.set_output(out)
        return c, out
    c, grid = circuit_for_fb(a, guard=guard)
    return c, rank_le_to_acit(c, grid, d)


# ---------------------------------------------------------------------------
# Lowering to {+, -, x} over nonnegative integer constants
# ---------------------------------------------------------------------------

def lower(c: Circuit, output: int | None = None) -> Circuit:
    """Equivalent circuit without division or non-integer constants.

    Every gate becomes a numerator/denominator pair; the result outputs the
    numerator, which is zero iff the original output is (denominators are
    products of nonzero constants and divisors).
    """
    g = c._resolve_output(output)
    out = Circuit()
    pairs: list[tuple[int, int]] = []
    one = out.const(1)
    for gate in c.gates[: g + 1]:
        kind = gate[0]
        if kind == "const":
            x = gate[1]
            num = out.const(abs(x.numerator))
            if x.numerator < 0:
                num = out.sub(out.const(0), num)
            pairs.append((num, out.const(x.denominator)))
        elif kind == "var":
            pairs.append((out.var(gate[1]), one))
        else:
            (an, ad), (bn, bd) = pairs[gate[1]], pairs[gate[2]]
            if kind in ("add", "sub"):
                op = out.add if kind == "add" else out.sub
                num = op(out.mul(an, bd), out.mul(bn, ad))
                pairs.append((num, out.mul(ad, bd)))
            elif kind == "mul":
                pairs.append((out.mul(an, bn), out.mul(ad, bd)))
            else:
                pairs.append((out.mul(an, bd), out.mul(ad, bn)))
    out.set_output(pairs[g][0])
    return out


def is_lowered(c: Circuit) -> bool:
    for gate in c.gates:
        if gate[0] == "div":
            return False
        if gate[0] == "const" and (gate[1].denominator != 1 or gate[1] < 0):
            return False
    return True


# ---------------------------------------------------------------------------
# Zeroness and equivalence
# ---------------------------------------------------------------------------

def zeroness(a: Automaton, method: str = "forward") -> bool:
    """True iff the series of ``a`` is identically zero.

    ``method="forward"`` checks ``F gamma = 0`` for a forward basis ``F``;
    ``method="dimension"`` checks that the minimal dimension is 0.
    """
    if method == "forward":
        fb = forward_basis(a)
        return not any(fb.matrix.mul_vector(a.gamma.col(0))) if a.dim else True
    if method == "dimension":
        return minimal_dimension(a) == 0
    raise ValueError(f"unknown zeroness method {method!r}")


def _common_mta(a1: Automaton, a2: Automaton) -> tuple[Mta, Mta]:
    if isinstance(a1, Mwa) and isinstance(a2, Mwa):
        if set(a1.letters) != set(a2.letters):
            raise AlphabetError("automata are over different alphabets")
        return word_as_tree_mta(a1), word_as_tree_mta(a2)
    if isinstance(a1, Mwa) or isinstance(a2, Mwa):
        raise AlphabetError("cannot compare a word automaton with a tree automaton")
    return a1, a2


def equivalence(a1: Automaton, a2: Automaton) -> bool:
    m1, m2 = _common_mta(a1, a2)
    return zeroness(difference(m1, m2))
