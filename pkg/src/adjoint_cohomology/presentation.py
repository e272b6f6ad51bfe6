"""Group presentations and free-group word algebra.

A word is a tuple of :class:`Letter`; the empty tuple is the identity.
Presentations are parsed from the usual angle-bracket notation::

    < x, y | x^3, y^2, (x y)^2 >
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import DuplicateGenerator, PresentationSyntaxError, UnknownGenerator


class Letter(NamedTuple):
    generator_index: int
    sign: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.generator_index, -self.sign)


Word = tuple  # tuple[Letter, ...]


def free_reduce(word: Sequence[Letter]) -> tuple:
    stack: list[Letter] = []
    for letter in word:
        if stack and stack[-1].generator_index == letter.generator_index and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def invert_word(word: Sequence[Letter]) -> tuple:
    return tuple(Letter(l.generator_index, -l.sign) for l in reversed(word))


def cyclic_reduce(word: Sequence[Letter]) -> tuple:
    """Freely reduce, then strip inverse pairs from the two ends."""
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i].generator_index == w[j - 1].generator_index and w[i].sign == -w[j - 1].sign:
        i += 1
        j -= 1
    return w[i:j]


def format_word(word: Sequence[Letter], names: Sequence[str]) -> str:
    """Render a word with run-length exponents, e.g. ``x^3 y^-1``; empty word is ``e``."""
    if not word:
        return "e"
    parts = []
    k = 0
    while k < len(word):
        m = k
        while m < len(word) and word[m] == word[k]:
            m += 1
        exp = (m - k) * word[k].sign
        name = names[word[k].generator_index]
        parts.append(name if exp == 1 else f"{name}^{exp}")
        k = m
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple
    relators: tuple
    warnings: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.generator_names:
            raise ValueError("a presentation needs at least one generator")
        if len(set(self.generator_names)) != len(self.generator_names):
            raise DuplicateGenerator(f"duplicate generator names in {self.generator_names}")
        n = len(self.generator_names)
        for r in self.relators:
            if not r:
                raise ValueError("stored relators must be nonempty")
            if cyclic_reduce(r) != tuple(r):
                raise ValueError("stored relators must be cyclically reduced")
            if any(not 0 <= l.generator_index < n or l.sign not in (1, -1) for l in r):
                raise ValueError(f"relator {r} references an invalid letter")

    @property
    def num_generators(self) -> int:
        return len(self.generator_names)

    def format_relator(self, i: int) -> str:
        return format_word(self.relators[i], self.generator_names)

    def __str__(self):
        rels = ", ".join(format_word(r, self.generator_names) for r in self.relators)
        return f"< {', '.join(self.generator_names)} | {rels} >"


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<punct>[<>|,()^*]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(pos, "identifier, integer or one of < > | , ( ) ^ *", text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.names: list[str] = []

    def peek(self):
        return self.tokens[self.k]

    def expect(self, value: str, kind: str = "punct"):
        tok = self.peek()
        if tok[0] != kind or (value and tok[1] != value):
            raise PresentationSyntaxError(tok[2], repr(value) if value else kind, self.text)
        self.k += 1
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok[0] == "punct" and tok[1] == value

    def presentation(self):
        self.expect("<")
        self.gen_list()
        self.expect("|")
        rels = []
        if not self.at(">"):
            rels.append(self.word())
            while self.at(","):
                self.k += 1
                rels.append(self.word())
        self.expect(">")
        self.expect("", "end")
        return rels

    def gen_list(self):
        while True:
            _, name, pos = self.expect("", "ident")
            if name in self.names:
                raise DuplicateGenerator(f"generator {name!r} declared twice (position {pos})")
            self.names.append(name)
            if not self.at(","):
                return
            self.k += 1

    def starts_atom(self) -> bool:
        tok = self.peek()
        return tok[0] == "ident" or (tok[0] == "punct" and tok[1] == "(")

    def word(self) -> list:
        if not self.starts_atom():
            tok = self.peek()
            raise PresentationSyntaxError(tok[2], "identifier or '('", self.text)
        letters = self.factor()
        while True:
            if self.at("*"):
                self.k += 1
                if not self.starts_atom():
                    tok = self.peek()
                    raise PresentationSyntaxError(tok[2], "identifier or '('", self.text)
            elif not self.starts_atom():
                return letters
            letters = letters + self.factor()

    def factor(self) -> list:
        tok = self.peek()
        if tok[0] == "ident":
            self.k += 1
            if tok[1] not in self.names:
                raise UnknownGenerator(f"relator uses undeclared generator {tok[1]!r} (position {tok[2]})")
            base = [Letter(self.names.index(tok[1]), 1)]
        else:
            self.expect("(")
            base = self.word()
            self.expect(")")
        if self.at("^"):
            self.k += 1
            _, value, pos = self.expect("", "int")
            n = int(value)
            if n == 0:
                raise PresentationSyntaxError(pos, "nonzero exponent", self.text)
            if n < 0:
                base = list(invert_word(base))
            return base * abs(n)
        return base


def parse_presentation(text: str) -> Presentation:
    """Parse ``< gens | relators >``.

    Relators are cyclically reduced; any change is recorded in the returned
    presentation's ``warnings``, and relators that reduce to the empty word
    are dropped.
    """
    parser = _Parser(text)
    raw = parser.presentation()
    names = tuple(parser.names)
    relators = []
    notes = []
    for i, r in enumerate(raw):
        reduced = cyclic_reduce(r)
        if not reduced:
            notes.append(f"relator {i + 1} ({format_word(r, names)}) reduces to the empty word; dropped")
            continue
        if reduced != tuple(r):
            notes.append(
                f"relator {i + 1} ({format_word(r, names)}) cyclically reduced to {format_word(reduced, names)}"
            )
        relators.append(reduced)
    return Presentation(names, tuple(relators), tuple(notes))
