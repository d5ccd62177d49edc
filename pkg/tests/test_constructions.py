import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import rand_mta
from mtamin.automata import Mta, eval_tree, word_as_tree_mta, word_to_tree
from mtamin.constructions import difference, interleave_permutation, product
from mtamin.errors import AlphabetError
from mtamin.linalg import Matrix, kron, kron_all
from mtamin.trees import RankedAlphabet, enumerate_trees

seeds = st.integers(0, 10**6)


def _pair(rng, alphabet=None):
    a1 = rand_mta(rng, max_dim=3, alphabet=alphabet)
    a2 = rand_mta(rng, max_dim=3, alphabet=a1.alphabet)
    return a1, a2


def test_difference_examples(a_count):
    d = difference(a_count, a_count)
    assert d.dim == 4
    assert d.gamma == Matrix([[0], [1], [0], [-1]])
    assert all(eval_tree(d, t) == 0 for t in enumerate_trees(d.alphabet, 3))


def test_dimensions():
    rng = random.Random(0)
    al = RankedAlphabet([("f", 2), ("a", 0)])
    a2 = rand_mta(rng, alphabet=al, dim=2)
    a3 = rand_mta(rng, alphabet=al, dim=3)
    assert difference(a2, a3).dim == 5
    assert product(a2, a3).dim == 6


def test_product_of_word_counter(w_count):
    m = word_as_tree_mta(w_count)
    p = product(m, m)
    assert eval_tree(p, word_to_tree(("a", "a"))) == 4


def test_interleave_small_cases():
    assert interleave_permutation(1, 2, 3) == Matrix.identity(6)
    assert interleave_permutation(0, 2, 3) == Matrix.identity(1)


def test_alphabet_mismatch(a_count):
    other = Mta(1, RankedAlphabet([("a", 0)]), {"a": Matrix([[1]])}, Matrix([[1]]))
    with pytest.raises(AlphabetError):
        difference(a_count, other)
    with pytest.raises(AlphabetError):
        product(a_count, other)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), seeds)
def test_interleave_identity(k, n1, n2, seed):
    # ((u1 x v1) x ... x (uk x vk)) P = (u1 x ... x uk) x (v1 x ... x vk)
    rng = random.Random(seed)
    us = [Matrix([[rng.randint(-3, 3) for _ in range(n1)]]) for _ in range(k)]
    vs = [Matrix([[rng.randint(-3, 3) for _ in range(n2)]]) for _ in range(k)]
    left = kron_all([kron(u, v) for u, v in zip(us, vs)]) @ interleave_permutation(k, n1, n2)
    assert left == kron(kron_all(us), kron_all(vs))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3), st.integers(1, 3), st.integers(1, 3))
def test_interleave_is_permutation(k, n1, n2):
    p = interleave_permutation(k, n1, n2)
    cols = []
    for row in p.rows:
        assert sorted(row) == [0] * (len(row) - 1) + [1]
        cols.append(row.index(1))
    assert sorted(cols) == list(range(p.ncols))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_difference_and_product_semantics(seed):
    rng = random.Random(seed)
    a1, a2 = _pair(rng)
    d, p = difference(a1, a2), product(a1, a2)
    for t in enumerate_trees(a1.alphabet, 3, cap=10**6)[:80]:
        v1, v2 = eval_tree(a1, t), eval_tree(a2, t)
        assert eval_tree(d, t) == v1 - v2
        assert eval_tree(p, t) == v1 * v2


def _product_with_explicit_permutation(a1: Mta, a2: Mta) -> Mta:
    # mu(s) = P_k^T (mu1(s) x mu2(s)), the permutation written out in full
    mu = {}
    for name, k in a1.alphabet.symbols:
        p = interleave_permutation(k, a1.dim, a2.dim)
        mu[name] = p @ kron(a1.mu[name], a2.mu[name])
    return Mta(a1.dim * a2.dim, a1.alphabet, mu, kron(a1.gamma, a2.gamma))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_product_matches_permutation_definition(seed):
    a1, a2 = _pair(random.Random(seed))
    assert product(a1, a2) == _product_with_explicit_permutation(a1, a2)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_difference_block_structure(seed):
    # copies of a1 and a2 sit on tuples drawn entirely from one block of states
    a1, a2 = _pair(random.Random(seed))
    d = difference(a1, a2)
    n1, n = a1.dim, d.dim
    for name, k in d.alphabet.symbols:
        if k == 0:
            continue
        for digits in itertools.product(range(n), repeat=k):
            idx = 0
            for x in digits:
                idx = idx * n + x
            row = d.mu[name].row(idx)
            if all(x < n1 for x in digits):
                assert not any(row[n1:])
            elif all(x >= n1 for x in digits):
                assert not any(row[:n1])
            else:
                assert not any(row)


def test_permuted_declaration_order_accepted(a_count):
    al = a_count.alphabet.reordered(["b", "a", "sigma"])
    other = Mta(2, al, a_count.mu, a_count.gamma)
    d = difference(a_count, other)
    assert all(eval_tree(d, t) == 0 for t in enumerate_trees(a_count.alphabet, 3))
