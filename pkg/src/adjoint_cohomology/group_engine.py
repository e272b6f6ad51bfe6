"""Concrete realizations of a presented group.

Two backends share one duck-typed interface (``identity``, ``multiply``,
``invert``, ``conjugate``, ``evaluate_word``, ``conjugacy_classes``,
``generator_images``, ``label``):

* :class:`FiniteGroupTable` -- full multiplication table obtained by
  Todd-Coxeter coset enumeration over the trivial subgroup. Elements are
  ints, 0 is the identity.
* :class:`FreeAbelianGroup` -- Z^n with integer-vector normal forms.
  Elements are tuples of ints.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence, Union

from .errors import BudgetExceeded, UnsupportedClass
from .presentation import Letter, Presentation, format_word

log = logging.getLogger(__name__)

ElementId = Union[int, tuple]


@dataclass(frozen=True)
class ConjugacyClass:
    representative: ElementId
    members: tuple

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.members


class GroupBackend(Protocol):
    generator_names: tuple

    @property
    def is_finite(self) -> bool: ...
    @property
    def identity(self) -> ElementId: ...
    def generator_images(self) -> list: ...
    def multiply(self, g: ElementId, h: ElementId) -> ElementId: ...
    def invert(self, g: ElementId) -> ElementId: ...
    def conjugate(self, g: ElementId, a: ElementId) -> ElementId: ...
    def evaluate_word(self, word: Sequence[Letter]) -> ElementId: ...
    def label(self, g: ElementId) -> str: ...


def _col(letter: Letter) -> int:
    return 2 * letter.generator_index + (0 if letter.sign > 0 else 1)


def _inv_col(c: int) -> int:
    return c ^ 1


class _CosetEnumerator:
    """HLT coset enumeration over the trivial subgroup, with deduction processing.

    Columns 2i and 2i+1 hold the action of generator i and its inverse.
    """

    def __init__(self, presentation: Presentation, max_cosets: int):
        self.ncols = 2 * presentation.num_generators
        self.max_cosets = max_cosets
        self.relators = [[_col(l) for l in r] for r in presentation.relators]
        # every cyclic conjugate of r and r^-1, bucketed by leading column
        self.rotations: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for r in self.relators:
            for w in (r, [_inv_col(c) for c in reversed(r)]):
                for k in range(len(w)):
                    rot = tuple(w[k:] + w[:k])
                    if rot not in seen:
                        seen.add(rot)
                        self.rotations[rot[0]].append(list(rot))
        self.table: list[list] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.deductions: list[tuple[int, int]] = []

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int):
        if self.live >= self.max_cosets:
            raise BudgetExceeded(self.max_cosets)
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][_inv_col(x)] = c
        self.deductions.append((c, x))

    def _merge(self, k: int, l: int, queue: list):
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        lo, hi = min(k, l), max(k, l)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = self.table[e]
            for x in range(self.ncols):
                f = row[x]
                if f is None:
                    continue
                ix = _inv_col(x)
                if self.table[f][ix] == e:
                    self.table[f][ix] = None
                e1, f1 = self.find(e), self.find(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][ix] is not None:
                    self._merge(e1, self.table[f1][ix], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][ix] = e1
                    self.deductions.append((e1, x))

    def scan(self, alpha: int, word: list, fill: bool):
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][_inv_col(word[j])] is not None:
                b = table[b][_inv_col(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][_inv_col(word[i])] = f
                self.deductions.append((f, word[i]))
                return
            if not fill:
                return
            self.define(f, word[i])

    def process_deductions(self):
        while self.deductions:
            c, x = self.deductions.pop()
            if not self.is_live(c):
                continue
            for w in self.rotations[x]:
                self.scan(c, w, fill=False)
                if not self.is_live(c):
                    break
            d = self.table[c][x] if self.is_live(c) else None
            if d is None or not self.is_live(d):
                continue
            for w in self.rotations[_inv_col(x)]:
                self.scan(d, w, fill=False)
                if not self.is_live(d):
                    break

    def run(self) -> list:
        c = 0
        while c < len(self.table):
            for r in self.relators:
                if not self.is_live(c):
                    break
                self.scan(c, r, fill=True)
                self.process_deductions()
            for x in range(self.ncols):
                if not self.is_live(c):
                    break
                if self.table[c][x] is None:
                    self.define(c, x)
                    self.process_deductions()
            c += 1
        # compaction: keep live cosets, renumber in order
        live = [k for k in range(len(self.table)) if self.is_live(k)]
        index = {k: n for n, k in enumerate(live)}
        return [[index[self.find(self.table[k][x])] for x in range(self.ncols)] for k in live]


class FiniteGroupTable:
    """Finite group stored as a full multiplication table.

    Elements are numbered in shortlex order of their representative words
    (generator order x0, x0^-1, x1, ...), so element 0 is the identity.
    """

    is_finite = True
    identity = 0

    def __init__(self, mult, inv, generator_images, generator_names, words=None):
        self.mult = mult
        self.inv = inv
        self._generator_images = list(generator_images)
        self.generator_names = tuple(generator_names)
        self.words = words
        self._classes = None

    @property
    def order(self) -> int:
        return len(self.mult)

    def elements(self) -> range:
        return range(self.order)

    def generator_images(self) -> list:
        return list(self._generator_images)

    def multiply(self, g: int, h: int) -> int:
        return self.mult[g][h]

    def invert(self, g: int) -> int:
        return self.inv[g]

    def conjugate(self, g: int, a: int) -> int:
        """``g a g^-1``."""
        return self.mult[self.mult[g][a]][self.inv[g]]

    def letter_image(self, letter: Letter) -> int:
        g = self._generator_images[letter.generator_index]
        return g if letter.sign > 0 else self.inv[g]

    def evaluate_word(self, word: Sequence[Letter]) -> int:
        result = 0
        for letter in word:
            result = self.mult[result][self.letter_image(letter)]
        return result

    def conjugacy_classes(self, elements: Iterable[int] | None = None) -> list:
        """Partition of the group into classes, ordered by smallest member.

        ``elements`` is accepted for interface parity; classes meeting it are returned.
        """
        if self._classes is None:
            gens = self._generator_images
            seen = [False] * self.order
            classes = []
            for start in range(self.order):
                if seen[start]:
                    continue
                seen[start] = True
                orbit = [start]
                queue = deque([start])
                while queue:
                    a = queue.popleft()
                    for g in gens:
                        b = self.conjugate(g, a)
                        if not seen[b]:
                            seen[b] = True
                            orbit.append(b)
                            queue.append(b)
                classes.append(ConjugacyClass(start, tuple(sorted(orbit))))
            self._classes = classes
        if elements is None:
            return list(self._classes)
        wanted = set(elements)
        bad = [g for g in wanted if not (isinstance(g, int) and 0 <= g < self.order)]
        if bad:
            raise UnsupportedClass(f"not elements of this group: {bad}")
        return [c for c in self._classes if wanted.intersection(c.members)]

    def class_of(self, g: int) -> ConjugacyClass:
        for c in self.conjugacy_classes():
            if g in c.members:
                return c
        raise UnsupportedClass(f"{g} is not an element")

    def word_for(self, g: int) -> tuple:
        return self.words[g]

    def label(self, g: int) -> str:
        if self.words is None:
            return str(g)
        return format_word(self.words[g], self.generator_names)

    def __repr__(self):
        return f"FiniteGroupTable(order={self.order}, generators={self.generator_names})"


def enumerate_finite(presentation: Presentation, max_cosets: int = 10000) -> FiniteGroupTable:
    """Close a coset table for the trivial subgroup and extract the multiplication table.

    Raises :class:`BudgetExceeded` if more than ``max_cosets`` live cosets
    would be needed.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    table = _CosetEnumerator(presentation, max_cosets).run()
    ncols = len(table[0])

    # renumber cosets in BFS order from the subgroup coset so numbering is canonical
    order_ = [0]
    new_index = {0: 0}
    parent: list[tuple] = [None]
    words: list[tuple] = [()]
    k = 0
    while k < len(order_):
        c = order_[k]
        for x in range(ncols):
            d = table[c][x]
            if d not in new_index:
                new_index[d] = len(order_)
                order_.append(d)
                parent.append((k, x))
                letter = Letter(x // 2, 1 if x % 2 == 0 else -1)
                words.append(words[k] + (letter,))
        k += 1
    n = len(order_)
    right = [[new_index[table[order_[i]][x]] for x in range(ncols)] for i in range(n)]

    # mult[a][b] = a*b ; b = parent(b) * letter  =>  mult[a][b] = right[mult[a][parent(b)]][letter]
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        row = mult[a]
        row[0] = a
        for b in range(1, n):
            p, x = parent[b]
            row[b] = right[row[p]][x]
    inv = [0] * n
    for a in range(n):
        inv[a] = mult[a].index(0)
    gens = [right[0][2 * i] for i in range(presentation.num_generators)]
    log.debug("coset enumeration closed with %d elements", n)
    return FiniteGroupTable(mult, inv, gens, presentation.generator_names, words)


class FreeAbelianGroup:
    """Z^rank with componentwise addition; conjugation is trivial."""

    is_finite = False

    def __init__(self, rank: int, generator_names: Sequence[str] | None = None):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        self.rank = rank
        self.generator_names = tuple(generator_names) if generator_names else tuple(f"x{i}" for i in range(rank))
        if len(self.generator_names) != rank:
            raise ValueError("one generator name per rank is required")

    @property
    def identity(self) -> tuple:
        return (0,) * self.rank

    def _check(self, g) -> tuple:
        g = tuple(g)
        if len(g) != self.rank or not all(isinstance(v, int) for v in g):
            raise UnsupportedClass(f"{g!r} is not an element of Z^{self.rank}")
        return g

    def generator_images(self) -> list:
        return [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]

    def multiply(self, g, h) -> tuple:
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g) -> tuple:
        return tuple(-a for a in g)

    def conjugate(self, g, a) -> tuple:
        return tuple(a)

    def evaluate_word(self, word: Sequence[Letter]) -> tuple:
        v = [0] * self.rank
        for l in word:
            v[l.generator_index] += l.sign
        return tuple(v)

    def conjugacy_classes(self, elements: Iterable | None = None) -> list:
        if elements is None:
            raise UnsupportedClass("Z^n has infinitely many classes; pass an explicit element list")
        out = []
        for g in dict.fromkeys(self._check(e) for e in elements):
            out.append(ConjugacyClass(g, (g,)))
        return out

    def label(self, g) -> str:
        return "(" + ",".join(str(v) for v in g) + ")"

    def __repr__(self):
        return f"FreeAbelianGroup(rank={self.rank})"


def free_abelian_backend(presentation: Presentation, rank: int, trust_abelian: bool = False) -> FreeAbelianGroup:
    """Realize ``presentation`` as Z^rank.

    The relators are not checked; the caller asserts, via ``trust_abelian``,
    that the presentation really defines a free abelian group.
    """
    if not trust_abelian:
        raise ValueError("the free-abelian backend requires an explicit trust_abelian acknowledgment")
    if rank != presentation.num_generators:
        raise ValueError(f"rank {rank} does not match {presentation.num_generators} generators")
    return FreeAbelianGroup(rank, presentation.generator_names)


def multiply(b, g, h):
    return b.multiply(g, h)


def invert(b, g):
    return b.invert(g)


def conjugate(b, g, a):
    return b.conjugate(g, a)


def evaluate_word(b, word):
    return b.evaluate_word(word)


def conjugacy_classes(b, elements=None):
    return b.conjugacy_classes(elements)
