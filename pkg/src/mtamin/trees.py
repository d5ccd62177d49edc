"""Ranked alphabets, trees and contexts, with a small term parser."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import AlphabetError, ArityError, EnumerationCapExceeded, ParseError

HOLE = "_"
SYMBOL_RE = re.compile(r"[^\s(),:=]+")


@dataclass(frozen=True)
class RankedAlphabet:
    """Symbols with arities, kept in declaration order."""

    symbols: tuple[tuple[str, int], ...]
    _arity: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, symbols: Iterable[tuple[str, int]]):
        syms = tuple((str(name), int(ar)) for name, ar in symbols)
        if not syms:
            raise AlphabetError("a ranked alphabet must be nonempty")
        arity = {}
        for name, ar in syms:
            if ar < 0:
                raise AlphabetError(f"symbol {name!r} has negative arity")
            if name == HOLE or not SYMBOL_RE.fullmatch(name):
                raise AlphabetError(f"invalid symbol name {name!r}")
            if name in arity:
                raise AlphabetError(f"duplicate symbol {name!r}")
            arity[name] = ar
        object.__setattr__(self, "symbols", syms)
        object.__setattr__(self, "_arity", arity)

    def arity(self, name: str) -> int:
        try:
            return self._arity[name]
        except KeyError:
            raise AlphabetError(f"unknown symbol {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._arity

    def __iter__(self) -> Iterator[str]:
        return (name for name, _ in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    @property
    def rank(self) -> int:
        return max(ar for _, ar in self.symbols)

    def of_arity(self, k: int) -> tuple[str, ...]:
        return tuple(name for name, ar in self.symbols if ar == k)

    def reordered(self, order: Sequence[str]) -> "RankedAlphabet":
        if sorted(order) != sorted(self.names):
            raise AlphabetError("reordering must be a permutation of the symbols")
        return RankedAlphabet((name, self._arity[name]) for name in order)


@dataclass(frozen=True)
class Tree:
    """A term ``root(children...)``.  Contexts are trees containing the hole ``_`` once."""

    root: str
    children: tuple["Tree", ...] = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    def __str__(self) -> str:
        if not self.children:
            return self.root
        return f"{self.root}({','.join(str(c) for c in self.children)})"

    @property
    def height(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.height for c in self.children)

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def hole_count(self) -> int:
        if self.root == HOLE:
            return 1
        return sum(c.hole_count() for c in self.children)

    @property
    def is_context(self) -> bool:
        return self.hole_count() == 1

    @property
    def hole_depth(self) -> int:
        """Distance from the root to the hole."""
        if self.root == HOLE:
            return 0
        for c in self.children:
            if c.hole_count():
                return 1 + c.hole_depth
        raise ValueError(f"{self} is not a context")

    def substitute(self, t: "Tree") -> "Tree":
        """``self[t]``: plug ``t`` into the hole."""
        if self.root == HOLE:
            return t
        return Tree(self.root, tuple(c.substitute(t) if c.hole_count() else c for c in self.children))

    def subtrees(self) -> Iterator["Tree"]:
        """Hole-free subtrees (nodes whose descendants contain no hole)."""
        if not self.hole_count():
            yield self
        for c in self.children:
            yield from c.subtrees()


HOLE_TREE = Tree(HOLE)


def leaf(name: str) -> Tree:
    return Tree(name)


def check_tree(alphabet: RankedAlphabet, t: Tree, allow_hole: bool = False) -> None:
    if t.root == HOLE:
        if not allow_hole or t.children:
            raise AlphabetError("unexpected hole symbol")
        return
    k = alphabet.arity(t.root)
    if len(t.children) != k:
        raise ArityError(f"symbol {t.root!r} has arity {k} but {len(t.children)} children were given")
    for c in t.children:
        check_tree(alphabet, c, allow_hole)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<sym>[^\s(),]+)|(?P<punct>[(),]))")


def parse_tree(text: str) -> Tree:
    """Parse ``name`` or ``name(child,...,child)``; ``_`` denotes the hole."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        kind = "sym" if m.group("sym") is not None else "punct"
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    idx = 0

    def expect_sym():
        nonlocal idx
        if idx >= len(tokens):
            raise ParseError("unexpected end of input", column=len(text) + 1)
        kind, val, col = tokens[idx]
        if kind != "sym":
            raise ParseError(f"expected a symbol, found {val!r}", column=col)
        idx += 1
        return val

    def node():
        nonlocal idx
        name = expect_sym()
        if idx < len(tokens) and tokens[idx][1] == "(":
            idx += 1
            children = [node()]
            while idx < len(tokens) and tokens[idx][1] == ",":
                idx += 1
                children.append(node())
            if idx >= len(tokens) or tokens[idx][1] != ")":
                col = tokens[idx][2] if idx < len(tokens) else len(text) + 1
                raise ParseError("expected ')'", column=col)
            idx += 1
            return Tree(name, tuple(children))
        return Tree(name)

    t = node()
    if idx != len(tokens):
        raise ParseError(f"trailing input {tokens[idx][1]!r}", column=tokens[idx][2])
    return t


def parse_context(text: str) -> Tree:
    c = parse_tree(text)
    if c.hole_count() != 1:
        raise ParseError(f"a context must contain exactly one '{HOLE}'")
    return c


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

DEFAULT_CAP = 200_000


def enumerate_trees(alphabet: RankedAlphabet, max_height: int, cap: int = DEFAULT_CAP) -> list[Tree]:
    """All trees of height < ``max_height``.

    Shallower trees first; within one height, symbols in declaration order and
    child tuples in lexicographic order of their position in this list.
    """
    out: list[Tree] = []
    if max_height <= 0:
        return out
    out.extend(Tree(s) for s in alphabet.of_arity(0))
    level_start = 0
    for h in range(1, max_height):
        prev_end = len(out)
        if prev_end == level_start:
            break  # no tree of height h-1, hence none higher
        pool = out[:prev_end]
        new = []
        for name, k in alphabet.symbols:
            if k == 0:
                continue
            for combo in itertools.product(range(prev_end), repeat=k):
                if max(combo) < level_start:
                    continue  # every child lower than h-1
                new.append(Tree(name, tuple(pool[i] for i in combo)))
                if len(out) + len(new) > cap:
                    raise EnumerationCapExceeded(
                        f"more than {cap} trees of height < {max_height}"
                    )
        level_start = prev_end
        out.extend(new)
    return out


def enumerate_contexts(
    alphabet: RankedAlphabet, max_depth: int, pool: Sequence[Tree], cap: int = DEFAULT_CAP
) -> list[Tree]:
    """All contexts with hole depth < ``max_depth`` whose hole-free children come from ``pool``.

    Order: by depth, then symbol declaration order, hole position, and
    lexicographic choice of the other children (pool order) and inner context.
    """
    out: list[Tree] = []
    if max_depth <= 0:
        return out
    level = [HOLE_TREE]
    out.extend(level)
    for _ in range(1, max_depth):
        new = []
        for name, k in alphabet.symbols:
            for j in range(k):
                choices = [pool] * j + [level] + [pool] * (k - j - 1)
                for combo in itertools.product(*choices):
                    new.append(Tree(name, combo))
                    if len(out) + len(new) > cap:
                        raise EnumerationCapExceeded(
                            f"more than {cap} contexts of depth < {max_depth}"
                        )
        if not new:
            break
        out.extend(new)
        level = new
    return out


def enumerate_words(letters: Sequence[str], max_len: int) -> list[tuple[str, ...]]:
    """Words of length <= ``max_len``, shortest first, lexicographic by letter order."""
    out = []
    for n in range(max_len + 1):
        out.extend(itertools.product(letters, repeat=n))
    return out
