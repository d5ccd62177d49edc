"""Exact minimisation, equivalence and identity testing for multiplicity word and tree automata over the rationals."""

__version__ = "0.1.0"

from .automata import (
    HankelFragment,
    Mta,
    Mwa,
    eval_tree,
    eval_word,
    hankel_fragment,
    mu_context,
    mu_tree,
    mu_word,
    truncated_hankel_rank,
    word_as_tree_mta,
)
from .circuits import (
    Circuit,
    Verdict,
    acit_test,
    circuit_for_fb,
    equivalence,
    eval_exact,
    eval_mod,
    lower,
    rank_le_to_acit,
    reduce_minimisation_to_acit,
    zeroness,
)
from .consistency import (
    GeneralFormula,
    Sample,
    Sentence,
    build_figure_automaton,
    encode_sample,
    encode_word,
    learn_from_hankel,
    normalize_sentence,
    sentence_alphabet,
    verify_sample,
)
from .constructions import difference, interleave_permutation, product
from .linalg import BasisBuilder, Matrix, char_poly_coeffs, kron, kron_power, rank, solve_right
from .minimise import (
    BackwardBasis,
    ForwardBasis,
    SpanningGram,
    backward_basis,
    forward_basis,
    minimal_dimension,
    minimise,
    select_rows,
    solve_minimal_mta,
    solve_minimal_mwa,
    spanning_gram,
)
from .trees import RankedAlphabet, Tree, parse_context, parse_tree

__all__ = [
    "__version__",
    "HankelFragment",
    "Mta",
    "Mwa",
    "eval_tree",
    "eval_word",
    "hankel_fragment",
    "mu_context",
    "mu_tree",
    "mu_word",
    "truncated_hankel_rank",
    "word_as_tree_mta",
    "Circuit",
    "Verdict",
    "acit_test",
    "circuit_for_fb",
    "equivalence",
    "eval_exact",
    "eval_mod",
    "lower",
    "rank_le_to_acit",
    "reduce_minimisation_to_acit",
    "zeroness",
    "GeneralFormula",
    "Sample",
    "Sentence",
    "build_figure_automaton",
    "encode_sample",
    "encode_word",
    "learn_from_hankel",
    "normalize_sentence",
    "sentence_alphabet",
    "verify_sample",
    "difference",
    "interleave_permutation",
    "product",
    "BasisBuilder",
    "Matrix",
    "char_poly_coeffs",
    "kron",
    "kron_power",
    "rank",
    "solve_right",
    "BackwardBasis",
    "ForwardBasis",
    "SpanningGram",
    "backward_basis",
    "forward_basis",
    "minimal_dimension",
    "minimise",
    "select_rows",
    "solve_minimal_mta",
    "solve_minimal_mwa",
    "spanning_gram",
    "RankedAlphabet",
    "Tree",
    "parse_context",
    "parse_tree",
]
