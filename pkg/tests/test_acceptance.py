"""End-to-end acceptance criteria, one test per criterion.

Every check is exact rational equality.  Each test prints a single
``[acceptance N] PASS|FAIL`` line, also repeated in the terminal summary.
"""
import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from corpus import greedy_learn, mta_corpus, rand_mta, rand_mwa, rand_sentence, rand_witness
from mtamin.automata import Mta, eval_word, mu_trees, truncated_hankel_rank
from mtamin.circuits import acit_test, equivalence, eval_exact, reduce_minimisation_to_acit, zeroness
from mtamin.consistency import (
    Monomial,
    Sentence,
    build_figure_automaton,
    encode_word,
    eval_polynomial,
    figure_rows,
    figure_table,
)
from mtamin.constructions import difference
from mtamin.linalg import rank, same_row_space
from mtamin.minimise import forward_basis, minimal_dimension, minimise, spanning_matrices
from mtamin.trees import enumerate_trees
from oracles import transcribed_table


def report(number: int, ok: bool, detail: str) -> None:
    line = f"[acceptance {number}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


CORPUS = mta_corpus(200, seed=2024, max_dim=4, max_size=3, max_rank=2)


def test_1_minimal_dimension_equals_hankel_rank():
    start = time.perf_counter()
    bad = []
    for idx, a in enumerate(CORPUS):
        n = a.dim
        oracle = truncated_hankel_rank(a, n, n, forward_basis(a).witnesses)
        if minimise(a).dim != oracle:
            bad.append(idx)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    report(1, ok, f"{len(CORPUS) - len(bad)}/{len(CORPUS)} instances match the truncated Hankel rank "
                  f"in {elapsed:.1f} s (limit 300 s); mismatches {bad[:5]}")


def test_2_minimisation_preserves_the_series():
    bad, checked = [], 0
    for idx, a in enumerate(CORPUS):
        m = minimise(a)
        trees = enumerate_trees(a.alphabet, 4, cap=10**7)[:2000]
        lhs = [(v @ a.gamma)[0, 0] for v in mu_trees(a, trees)]
        rhs = [(v @ m.gamma)[0, 0] for v in mu_trees(m, trees)]
        checked += len(trees)
        if lhs != rhs:
            bad.append(idx)
    report(2, not bad, f"{len(CORPUS) - len(bad)}/{len(CORPUS)} instances agree on all trees of height <= 3 "
                       f"({checked} evaluations); mismatches {bad[:5]}")


def test_3_saturation_and_gram_routes_agree():
    rng = random.Random(303)
    bad = []
    for idx in range(100):
        a = rand_mta(rng, max_dim=3)
        f1, b1 = spanning_matrices(a, "saturation")
        f2, b2 = spanning_matrices(a, "gram")
        r1 = rank(f1 @ b1) if f1.nrows and b1.ncols else 0
        rows_ok = same_row_space(f1, f2) if f1.nrows else f2.is_zero()
        cols_ok = same_row_space(b1.T, b2.T) if b1.ncols else b2.is_zero()
        if not (r1 == rank(f2 @ b2) and rows_ok and cols_ok):
            bad.append(idx)
    report(3, not bad, f"{100 - len(bad)}/100 instances with equal rank(F B) and equal spaces; mismatches {bad[:5]}")


def test_4_acit_reduction_is_sound():
    rng = random.Random(404)
    bad, cases = [], 0
    for idx in range(100):
        a = rand_mta(rng, max_dim=3)
        dim = minimal_dimension(a)
        for d in range(a.dim + 1):
            cases += 1
            c, out = reduce_minimisation_to_acit(a, d)
            exact_zero = eval_exact(c, output=out) == 0
            randomized_zero = acit_test(c, trials=20, seed=idx * 10 + d, output=out).is_zero
            if not (exact_zero == (dim <= d) == randomized_zero):
                bad.append((idx, d))
    report(4, not bad, f"{cases - len(bad)}/{cases} (instance, d) pairs: exact and 20-trial verdicts "
                       f"match dim <= d; mismatches {bad[:5]}")


def test_5_figure_fragment_and_run_sums():
    fixed = Sentence(2, ((Monomial(1, (2, 0)), Monomial(-2, (0, 0))),
                         (Monomial(3, (1, 1)), Monomial(Fraction(-1, 2), (0, 1)), Monomial(1, (0, 0)))))
    failures = []
    rng = random.Random(505)
    cases = [(fixed, [Fraction(3), Fraction(-1, 2)])]
    cases += [(s, rand_witness(rng, s.num_vars)) for s in (rand_sentence(rng) for _ in range(50))]
    cells = 0
    for k, (s, a) in enumerate(cases):
        aut = build_figure_automaton(s, a)
        expected = transcribed_table(s, a)
        cols = (("s", "t"), ("t",), ())
        labels = {(u, v) for u in figure_rows(s) for v in cols}
        if labels != set(expected) or figure_table(s, a) != expected:
            failures.append((k, "table"))
        for (u, v), val in expected.items():
            cells += 1
            if eval_word(aut, u + v) != val:
                failures.append((k, u + v))
        for i, poly in enumerate(s.polynomials, 1):
            if eval_word(aut, encode_word(s, i)) != eval_polynomial(poly, a):
                failures.append((k, i))
    report(5, not failures, f"figure fragment and run sums exact for {len(cases)} (sentence, witness) pairs, "
                            f"{cells} cells; failures {failures[:5]}")


def test_6_learner_roundtrip():
    rng = random.Random(606)
    instances = []
    while len(instances) < 50:
        a = rand_mwa(rng, rng.randint(1, 3))
        if minimise(a).dim == a.dim:
            instances.append(a)
    bad = [k for k, a in enumerate(instances) if not equivalence(greedy_learn(a), a)]
    report(6, not bad, f"{50 - len(bad)}/50 minimal word automata reconstructed up to equivalence; "
                       f"failures {bad[:5]}")


def test_7_canonical_up_to_change_of_basis():
    rng = random.Random(707)
    bad, changed = [], 0
    for idx in range(50):
        a = rand_mta(rng)
        order = list(a.alphabet.names)
        rng.shuffle(order)
        b = Mta(a.dim, a.alphabet.reordered(order), a.mu, a.gamma)
        m1, m2 = minimise(a), minimise(b)
        changed += m1 != m2
        if m1.dim != m2.dim or not zeroness(difference(m1, m2)):
            bad.append(idx)
    report(7, not bad, f"{50 - len(bad)}/50 reordered pairs minimise to equivalent automata of equal dimension "
                       f"({changed} pairs differ entrywise); failures {bad[:5]}")


def test_8_scaling_smoke():
    rng = random.Random(808)
    dims = (25, 50, 100)
    times = {}
    for n in dims:
        a = rand_mwa(rng, n)
        best = float("inf")
        for _ in range(3):
            start = time.perf_counter()
            minimise(a)
            best = min(best, time.perf_counter() - start)
        times[n] = best
    under = all(times[n] < 60 for n in dims)
    pairs = [(25, 50), (50, 100), (25, 100)]
    cubic = all(times[n2] / times[n1] <= (n2 / n1) ** 3 for n1, n2 in pairs)
    shown = ", ".join(f"n={n}: {times[n]:.3f} s" for n in dims)
    ratios = ", ".join(f"{n2}/{n1}: {times[n2] / times[n1]:.1f} (cap {(n2 / n1) ** 3:.0f})" for n1, n2 in pairs)
    report(8, under and cubic, f"{shown}; ratios {ratios}")
