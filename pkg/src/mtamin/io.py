"""Text formats for automata, circuits, sentences and samples.

Automaton file::

    # comment lines start with '#'
    mta                      (or: mwa)
    alphabet: sigma:2 a:0 b:0    (mwa: alphabet: a b)
    dim: 2
    mu sigma:
    4 2
    1 0
    ...
    initial:                 (mwa only)
    1 2
    1 0
    final:
    2 1
    0
    1

Every matrix block is ``rows cols`` followed by the rows.
"""
from __future__ import annotations

from typing import Union

from .automata import Mta, Mwa
from .circuits import Circuit
from .consistency import Monomial, Sample, Sentence
from .errors import DimensionError, ParseError
from .linalg import Matrix, format_matrix, format_rational, parse_matrix_lines, parse_rational
from .trees import SYMBOL_RE, RankedAlphabet

Automaton = Union[Mta, Mwa]


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append((no, line))
    return out


# ---------------------------------------------------------------------------
# Automata
# ---------------------------------------------------------------------------

def serialize_automaton(a: Automaton) -> str:
    lines = []
    if isinstance(a, Mwa):
        lines.append("mwa")
        lines.append("alphabet: " + " ".join(a.letters))
        lines.append(f"dim: {a.dim}")
        for x in a.letters:
            lines.append(f"mu {x}:")
            lines.append(format_matrix(a.mu[x]))
        lines.append("initial:")
        lines.append(format_matrix(a.alpha))
    else:
        lines.append("mta")
        lines.append("alphabet: " + " ".join(f"{s}:{k}" for s, k in a.alphabet.symbols))
        lines.append(f"dim: {a.dim}")
        for s in a.alphabet.names:
            lines.append(f"mu {s}:")
            lines.append(format_matrix(a.mu[s]))
    lines.append("final:")
    lines.append(format_matrix(a.gamma))
    return "\n".join(lines) + "\n"


class _Cursor:
    def __init__(self, lines: list[tuple[int, str]]):
        self.lines = lines
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.lines)

    def peek(self) -> tuple[int, str]:
        if self.done():
            last = self.lines[-1][0] if self.lines else 0
            raise ParseError("unexpected end of input", last + 1)
        return self.lines[self.pos]

    def take(self) -> tuple[int, str]:
        item = self.peek()
        self.pos += 1
        return item

    def keyword(self, key: str) -> tuple[int, str]:
        """Consume ``key: value`` and return (line number, value)."""
        no, line = self.take()
        head, sep, rest = line.strip().partition(":")
        if not sep or head.strip() != key:
            raise ParseError(f"expected '{key}:'", no, 1)
        return no, rest.strip()

    def matrix(self) -> Matrix:
        rest = self.lines[self.pos:]
        m, used = parse_matrix_lines([t for _, t in rest], line_numbers=[n for n, _ in rest])
        self.pos += used
        return m


def parse_automaton(text: str) -> Automaton:
    cur = _Cursor(_content_lines(text))
    no, kind = cur.take()
    kind = kind.strip()
    if kind not in ("mta", "mwa"):
        raise ParseError(f"expected 'mta' or 'mwa', found {kind!r}", no, 1)
    ano, alpha_text = cur.keyword("alphabet")
    if kind == "mta":
        syms = []
        for tok in alpha_text.split():
            name, sep, ar = tok.rpartition(":")
            if not sep or not ar.isdigit() or not SYMBOL_RE.fullmatch(name):
                raise ParseError(f"expected 'name:arity', found {tok!r}", ano)
            syms.append((name, int(ar)))
        try:
            alphabet = RankedAlphabet(syms)
        except ValueError as e:
            raise ParseError(str(e), ano) from None
        names = alphabet.names
    else:
        names = tuple(alpha_text.split())
        for x in names:
            if not SYMBOL_RE.fullmatch(x) or x == "_":
                raise ParseError(f"invalid letter {x!r}", ano)
        if not names or len(set(names)) != len(names):
            raise ParseError("the alphabet must be nonempty with distinct letters", ano)
    dno, dim_text = cur.keyword("dim")
    if not dim_text.isdigit():
        raise ParseError(f"dimension must be a nonnegative integer, found {dim_text!r}", dno)
    n = int(dim_text)
    mu = {}
    while not cur.done():
        no, line = cur.peek()
        stripped = line.strip()
        if not stripped.startswith("mu "):
            break
        cur.take()
        name = stripped[3:].rstrip(":").strip()
        if name not in names:
            raise ParseError(f"unknown symbol {name!r}", no)
        if name in mu:
            raise ParseError(f"duplicate transition block for {name!r}", no)
        m = cur.matrix()
        k = alphabet.arity(name) if kind == "mta" else 1
        if m.shape != (n ** k, n):
            raise ParseError(f"transition matrix of {name!r} has shape {m.shape}, expected {(n ** k, n)}", no)
        mu[name] = m
    missing = [x for x in names if x not in mu]
    if missing:
        raise ParseError(f"missing transition blocks for {missing}", cur.peek()[0] if not cur.done() else None)
    alpha = None
    if kind == "mwa":
        ino, _ = cur.keyword("initial")
        alpha = cur.matrix()
        if alpha.shape != (1, n):
            raise ParseError(f"initial vector has shape {alpha.shape}, expected {(1, n)}", ino)
    fno, _ = cur.keyword("final")
    gamma = cur.matrix()
    if gamma.shape != (n, 1):
        raise ParseError(f"final vector has shape {gamma.shape}, expected {(n, 1)}", fno)
    if not cur.done():
        no, line = cur.peek()
        raise ParseError(f"trailing content {line.strip()!r}", no, 1)
    try:
        if kind == "mwa":
            return Mwa(n, names, mu, alpha, gamma)
        return Mta(n, alphabet, mu, gamma)
    except DimensionError as e:
        raise ParseError(str(e)) from None


# ---------------------------------------------------------------------------
# Circuits
# ---------------------------------------------------------------------------

def serialize_circuit(c: Circuit) -> str:
    lines = []
    for k, gate in enumerate(c.gates):
        kind = gate[0]
        if kind == "const":
            lines.append(f"g{k} = const {format_rational(gate[1])}")
        elif kind == "var":
            lines.append(f"g{k} = var x{gate[1]}")
        else:
            lines.append(f"g{k} = {kind} g{gate[1]} g{gate[2]}")
    if c.output is not None:
        lines.append(f"output g{c.output}")
    return "\n".join(lines) + "\n"


def _gate_ref(tok: str, no: int, limit: int) -> int:
    if not tok.startswith("g") or not tok[1:].isdigit():
        raise ParseError(f"expected a gate name 'g<k>', found {tok!r}", no)
    g = int(tok[1:])
    if g >= limit:
        raise ParseError(f"gate {tok} is not defined before use", no)
    return g


def parse_circuit(text: str) -> Circuit:
    c = Circuit()
    saw_output = False
    for no, line in _content_lines(text):
        toks = line.split()
        if saw_output:
            raise ParseError("content after the output line", no, 1)
        if toks[0] == "output":
            if len(toks) != 2:
                raise ParseError("expected 'output g<k>'", no, 1)
            c.set_output(_gate_ref(toks[1], no, len(c.gates)))
            saw_output = True
            continue
        if len(toks) < 3 or toks[1] != "=":
            raise ParseError("expected 'g<k> = <gate>'", no, 1)
        if toks[0] != f"g{len(c.gates)}":
            raise ParseError(f"expected gate g{len(c.gates)}, found {toks[0]!r}", no, 1)
        op, args = toks[2], toks[3:]
        if op == "const" and len(args) == 1:
            x = parse_rational(args[0])
            c._push(("const", x))
            c._consts.setdefault(x, len(c.gates) - 1)
        elif op == "var" and len(args) == 1:
            if not args[0].startswith("x") or not args[0][1:].isdigit():
                raise ParseError(f"expected a variable 'x<i>', found {args[0]!r}", no)
            i = int(args[0][1:])
            c._push(("var", i))
            c._vars.setdefault(i, len(c.gates) - 1)
        elif op in ("add", "sub", "mul", "div") and len(args) == 2:
            a, b = (_gate_ref(t, no, len(c.gates)) for t in args)
            c._push((op, a, b))
        else:
            raise ParseError(f"malformed gate {' '.join(toks[2:])!r}", no)
    if not saw_output:
        raise ParseError("missing 'output g<k>' line")
    return c


# ---------------------------------------------------------------------------
# Sentences
# ---------------------------------------------------------------------------

def serialize_sentence(s: Sentence) -> str:
    lines = [f"vars {s.num_vars}"]
    for poly in s.polynomials:
        lines.append(" ".join(f"{format_rational(m.coeff)}:{','.join(map(str, m.exps))}" for m in poly))
    return "\n".join(lines) + "\n"


def parse_sentence(text: str) -> Sentence:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("expected 'vars n'", 1)
    no, head = lines[0]
    toks = head.split()
    if len(toks) != 2 or toks[0] != "vars" or not toks[1].isdigit():
        raise ParseError("expected 'vars n'", no, 1)
    n = int(toks[1])
    polys = []
    for no, line in lines[1:]:
        mons = []
        for tok in line.split():
            coeff, sep, exps = tok.partition(":")
            if not sep:
                raise ParseError(f"expected 'coeff:e1,...,en', found {tok!r}", no)
            es = exps.split(",") if exps else []
            if len(es) != n or not all(e.isdigit() for e in es):
                raise ParseError(f"monomial {tok!r} needs {n} nonnegative exponents", no)
            mons.append(Monomial(parse_rational(coeff), tuple(int(e) for e in es)))
        polys.append(tuple(mons))
    return Sentence(n, tuple(polys))


# ---------------------------------------------------------------------------
# Samples
# ---------------------------------------------------------------------------

def format_word(w) -> str:
    return " ".join(w)


def parse_word(text: str) -> tuple[str, ...]:
    return tuple(text.split())


def serialize_sample(sample: Sample, comments: list[str] | None = None) -> str:
    lines = ["alphabet: " + " ".join(sample.alphabet)]
    for c in comments or []:
        lines.append(f"# {c}")
    for w, r in sample.pairs:
        lines.append(f"{format_word(w)}\t{format_rational(r)}")
    return "\n".join(lines) + "\n"


def parse_sample(text: str, alphabet=None) -> Sample:
    """``word<TAB>weight`` lines; comment lines start with '#' and contain no tab."""
    pairs = []
    declared = None
    seen_letters: list[str] = []
    for no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if "\t" not in line:
            stripped = line.strip()
            if stripped.startswith("#"):
                continue
            if stripped.startswith("alphabet:") and declared is None and not pairs:
                declared = tuple(stripped[len("alphabet:"):].split())
                continue
            raise ParseError("expected 'word<TAB>weight'", no, 1)
        word_text, _, weight_text = line.rpartition("\t")
        try:
            r = parse_rational(weight_text)
        except ParseError as e:
            raise ParseError(e.message, no, len(word_text) + 2) from None
        w = parse_word(word_text)
        for x in w:
            if x not in seen_letters:
                seen_letters.append(x)
        pairs.append((w, r))
    letters = tuple(alphabet) if alphabet is not None else declared if declared is not None else tuple(seen_letters)
    return Sample(letters, tuple(pairs))
