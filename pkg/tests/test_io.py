import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import rand_mta, rand_mwa, rand_sentence
from mtamin.automata import Mta, Mwa
from mtamin.circuits import reduce_minimisation_to_acit, lower
from mtamin.consistency import Sample, encode_sample
from mtamin.errors import ParseError
from mtamin.io import (
    parse_automaton,
    parse_circuit,
    parse_sample,
    parse_sentence,
    serialize_automaton,
    serialize_circuit,
    serialize_sample,
    serialize_sentence,
)
from mtamin.linalg import Matrix
from mtamin.trees import RankedAlphabet

seeds = st.integers(0, 10**6)

COUNT_MWA = """\
# counts the letter a
mwa
alphabet: a b
dim: 2
mu a:
2 2
1 1
0 1
mu b:
2 2
1 0
0 1
initial:
1 2
1 0
final:
2 1
0
1
"""


def test_parse_example(w_count):
    assert parse_automaton(COUNT_MWA) == w_count
    assert serialize_automaton(w_count) == COUNT_MWA.split("\n", 1)[1]


def test_mta_roundtrip(a_count):
    text = serialize_automaton(a_count)
    assert text.startswith("mta\nalphabet: sigma:2 a:0 b:0\n")
    assert parse_automaton(text) == a_count


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_roundtrip(seed):
    rng = random.Random(seed)
    a = rand_mta(rng)
    a = Mta(a.dim, a.alphabet, {s: m.scale(Fraction(1, rng.randint(1, 5))) for s, m in a.mu.items()}, a.gamma)
    assert parse_automaton(serialize_automaton(a)) == a
    w = rand_mwa(rng, rng.randint(0, 3))
    assert parse_automaton(serialize_automaton(w)) == w


def test_zero_dimensional_roundtrip():
    al = RankedAlphabet([("f", 2), ("a", 0)])
    z = Mta(0, al, {"f": Matrix.zeros(0, 0), "a": Matrix.zeros(1, 0)}, Matrix.zeros(0, 1))
    assert parse_automaton(serialize_automaton(z)) == z


@pytest.mark.parametrize("text, fragment, line", [
    (COUNT_MWA.replace("2 2\n1 1\n0 1\n", "3 2\n1 1\n0 1\n0 0\n", 1), "'a'", 5),
    (COUNT_MWA.replace("0 1\nmu b", "0 3/0\nmu b"), "zero denominator", 8),
    (COUNT_MWA.replace("mwa", "nfa"), "expected 'mta' or 'mwa'", 2),
    (COUNT_MWA.replace("mu b:", "mu c:"), "unknown symbol 'c'", 9),
    (COUNT_MWA.replace("dim: 2", "dim: two"), "dimension", 4),
    (COUNT_MWA + "extra\n", "trailing", 20),
])
def test_parse_errors(text, fragment, line):
    with pytest.raises(ParseError) as e:
        parse_automaton(text)
    assert fragment in str(e.value)
    assert e.value.line == line


def test_malformed_rational_column():
    with pytest.raises(ParseError) as e:
        parse_automaton(COUNT_MWA.replace("0 1\nmu b", "0 1x\nmu b"))
    assert (e.value.line, e.value.column) == (8, 3)


def test_missing_block():
    text = COUNT_MWA.replace("mu b:\n2 2\n1 0\n0 1\n", "")
    with pytest.raises(ParseError, match="missing"):
        parse_automaton(text)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_circuit_roundtrip(seed):
    a = rand_mta(random.Random(seed), max_dim=2)
    c, out = reduce_minimisation_to_acit(a, 0)
    for circ in (c, lower(c, out)):
        assert parse_circuit(serialize_circuit(circ)) == circ


def test_circuit_errors():
    with pytest.raises(ParseError, match="not defined"):
        parse_circuit("g0 = const 1\ng1 = add g0 g1\noutput g1\n")
    with pytest.raises(ParseError, match="expected gate g1"):
        parse_circuit("g0 = const 1\ng2 = const 2\noutput g0\n")
    with pytest.raises(ParseError, match="missing"):
        parse_circuit("g0 = const 1\n")
    with pytest.raises(ParseError, match="malformed"):
        parse_circuit("g0 = pow g0 g0\noutput g0\n")


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_sentence_and_sample_roundtrip(seed):
    s = rand_sentence(random.Random(seed))
    assert parse_sentence(serialize_sentence(s)) == s
    sample, _ = encode_sample(s)
    back = parse_sample(serialize_sample(sample, ["dimension 3"]))
    assert back == sample


def test_sample_format():
    text = "# comment\na a\t2\n\t-1/2\nb\t0\n"
    s = parse_sample(text)
    assert s == Sample(("a", "b"), ((("a", "a"), 2), ((), Fraction(-1, 2)), (("b",), 0)))
    with pytest.raises(ParseError):
        parse_sample("a 2\n")
    with pytest.raises(ParseError) as e:
        parse_sample("a\t2.5\n")
    assert (e.value.line, e.value.column) == (1, 3)


def test_sentence_errors():
    with pytest.raises(ParseError):
        parse_sentence("vars x\n")
    with pytest.raises(ParseError):
        parse_sentence("vars 2\n1:1\n")
