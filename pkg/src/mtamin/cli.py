"""Command-line interface.

Exit status: 0 on success, 1 on domain errors (first line of stderr starts
with ``error:``), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .automata import (
    Mwa,
    eval_tree,
    eval_word,
    mta_as_mwa,
    truncated_hankel_rank,
    word_as_tree_mta,
)
from .circuits import acit_test, equivalence, exact_test, lower, reduce_minimisation_to_acit, zeroness
from .consistency import (
    build_figure_automaton,
    encode_sample,
    excluded_words,
    hankel_blocks,
    learn_from_hankel,
    verify_sample,
)
from .constructions import difference, product
from .errors import MtaminError
from .io import (
    format_word,
    parse_automaton,
    parse_circuit,
    parse_sample,
    parse_sentence,
    parse_word,
    serialize_automaton,
    serialize_circuit,
    serialize_sample,
)
from .linalg import format_rational, parse_rational
from .minimise import forward_basis, minimise
from .trees import parse_tree


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_automaton(path: str):
    return parse_automaton(_read(path))


def _binary(a1, a2, op):
    """Apply a tree-automaton construction, keeping word automata as word automata."""
    if isinstance(a1, Mwa) != isinstance(a2, Mwa):
        raise MtaminError("cannot combine a word automaton with a tree automaton")
    if isinstance(a1, Mwa):
        if set(a1.letters) != set(a2.letters):
            raise MtaminError("automata are over different alphabets")
        return mta_as_mwa(op(word_as_tree_mta(a1), word_as_tree_mta(a2)))
    return op(a1, a2)


def cmd_eval(args, out) -> None:
    a = _load_automaton(args.automaton)
    if isinstance(a, Mwa):
        value = eval_word(a, parse_word(args.input))
    else:
        value = eval_tree(a, parse_tree(args.input))
    print(format_rational(value), file=out)


def cmd_minimize(args, out) -> None:
    a = _load_automaton(args.automaton)
    m = minimise(a, method=args.method)
    out.write(serialize_automaton(m))
    print(f"# dim {a.dim} -> {m.dim}", file=out)


def cmd_equiv(args, out) -> None:
    a1, a2 = _load_automaton(args.a1), _load_automaton(args.a2)
    print("equivalent" if equivalence(a1, a2) else "not equivalent", file=out)


def cmd_zeroness(args, out) -> None:
    a = _load_automaton(args.automaton)
    print("zero" if zeroness(a) else "nonzero", file=out)


def cmd_product(args, out) -> None:
    out.write(serialize_automaton(_binary(_load_automaton(args.a1), _load_automaton(args.a2), product)))


def cmd_diff(args, out) -> None:
    out.write(serialize_automaton(_binary(_load_automaton(args.a1), _load_automaton(args.a2), difference)))


def cmd_hankel_rank(args, out) -> None:
    a = _load_automaton(args.automaton)
    mta = word_as_tree_mta(a) if isinstance(a, Mwa) else a
    h = a.dim if args.height is None else args.height
    d = a.dim if args.depth is None else args.depth
    pool = forward_basis(mta).witnesses
    print(truncated_hankel_rank(mta, h, d, pool, cap=args.cap), file=out)


def cmd_to_acit(args, out) -> None:
    a = _load_automaton(args.automaton)
    c, _ = reduce_minimisation_to_acit(a, args.d)
    if not args.no_lower:
        c = lower(c)
    out.write(serialize_circuit(c))


def cmd_acit(args, out) -> None:
    c = parse_circuit(_read(args.circuit))
    verdict = exact_test(c) if args.exact else acit_test(c, trials=args.trials, seed=args.seed)
    print(verdict, file=out)


def cmd_encode_sentence(args, out) -> None:
    s = parse_sentence(_read(args.sentence))
    sample, dim = encode_sample(s)
    comments = [f"dimension {dim}"]
    for w in excluded_words(s):
        comments.append(f"unconstrained cell: {format_word(w)}")
    out.write(serialize_sample(sample, comments))


def cmd_figure_automaton(args, out) -> None:
    s = parse_sentence(_read(args.sentence))
    witness = [parse_rational(x) for x in args.witness.split(",")] if args.witness.strip() else []
    out.write(serialize_automaton(build_figure_automaton(s, witness)))


def cmd_verify_sample(args, out) -> None:
    a = _load_automaton(args.automaton)
    if not isinstance(a, Mwa):
        raise MtaminError("verify-sample needs a word automaton")
    sample = parse_sample(_read(args.sample), alphabet=a.letters)
    print("consistent" if verify_sample(a, sample) else "inconsistent", file=out)


def _word_list(text: str):
    return [parse_word(w) for w in text.split(";")]


def cmd_learn_hankel(args, out) -> None:
    sample = parse_sample(_read(args.sample))
    table = dict(sample.pairs)
    letters = tuple(args.alphabet.split(",")) if args.alphabet else sample.alphabet

    def f(w):
        try:
            return table[w]
        except KeyError:
            raise MtaminError(f"the sample has no weight for word {format_word(w)!r}") from None

    X, Y = _word_list(args.prefixes), _word_list(args.suffixes)
    h, shifted = hankel_blocks(f, X, Y, letters)
    out.write(serialize_automaton(learn_from_hankel(h, shifted, X, Y)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mtamin", description="Exact minimisation of multiplicity word and tree automata.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("eval", help="evaluate an automaton on a word or tree")
    s.add_argument("automaton")
    s.add_argument("input", help="space-separated word (mwa) or tree term (mta)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("minimize", help="print an equivalent minimal automaton")
    s.add_argument("automaton")
    s.add_argument("--method", choices=("saturation", "gram"), default="saturation")
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser("equiv", help="decide equivalence of two automata")
    s.add_argument("a1")
    s.add_argument("a2")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("zeroness", help="decide whether an automaton recognises the zero series")
    s.add_argument("automaton")
    s.set_defaults(func=cmd_zeroness)

    for name, func, text in (("product", cmd_product, "product automaton"),
                             ("diff", cmd_diff, "difference automaton")):
        s = sub.add_parser(name, help=text)
        s.add_argument("a1")
        s.add_argument("a2")
        s.set_defaults(func=func)

    s = sub.add_parser("hankel-rank", help="rank of a truncated Hankel fragment")
    s.add_argument("automaton")
    s.add_argument("--height", type=int, default=None, help="rows: trees of height below this (default: dimension)")
    s.add_argument("--depth", type=int, default=None, help="columns: contexts of depth below this (default: dimension)")
    s.add_argument("--cap", type=int, default=2_000_000, help="enumeration cap")
    s.set_defaults(func=cmd_hankel_rank)

    s = sub.add_parser("to-acit", help="circuit that is zero iff the minimal dimension is at most d")
    s.add_argument("automaton")
    s.add_argument("d", type=int)
    s.add_argument("--no-lower", action="store_true", help="keep division gates and rational constants")
    s.set_defaults(func=cmd_to_acit)

    s = sub.add_parser("acit", help="test whether a circuit is identically zero")
    s.add_argument("circuit")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exact", action="store_true", help="evaluate exactly (variable-free circuits only)")
    s.set_defaults(func=cmd_acit)

    s = sub.add_parser("encode-sentence", help="encode a polynomial sentence as a weighted sample")
    s.add_argument("sentence")
    s.set_defaults(func=cmd_encode_sentence)

    s = sub.add_parser("figure-automaton", help="three-state automaton for a sentence and a witness")
    s.add_argument("sentence")
    s.add_argument("--witness", required=True, help="comma-separated rationals a1,...,an")
    s.set_defaults(func=cmd_figure_automaton)

    s = sub.add_parser("verify-sample", help="check an automaton against a weighted sample")
    s.add_argument("automaton")
    s.add_argument("sample")
    s.set_defaults(func=cmd_verify_sample)

    s = sub.add_parser("learn-hankel", help="word automaton from an invertible Hankel fragment")
    s.add_argument("sample", help="sample file supplying the series values")
    s.add_argument("--prefixes", required=True, help="';'-separated row words, empty for the empty word")
    s.add_argument("--suffixes", required=True, help="';'-separated column words")
    s.add_argument("--alphabet", default=None, help="comma-separated letters (default: the sample's)")
    s.set_defaults(func=cmd_learn_hankel)
    return p


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be at least 1")
    try:
        args.func(args, out)
    except (MtaminError, ValueError, ArithmeticError, OSError, KeyError, IndexError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=err)
        return 1
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
