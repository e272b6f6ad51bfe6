"""Cayley 2-complex of one connected component of the adjoint-action groupoid.

For a conjugacy class C the component has

* vertices: the members of C;
* edges: one per (a, i), oriented ``a -> x_i a x_i^-1`` (a generator
  morphism and its inverse are the same edge with opposite orientation);
* 2-cells: one per (relator, base vertex).

A word ``y_1 ... y_l`` evaluated at an object ``a`` names the morphism with
conjugator ``y_1 ... y_l``; as a path it is traversed right to left, the
last letter acting first. Walks are listed in the word's letter order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import WalkNotClosed
from .group_engine import ConjugacyClass, ElementId
from .linalg import RationalSparseMatrix, RationalVector
from .presentation import Letter, Presentation

__all__ = [
    "EdgeId",
    "TwoCell",
    "ComponentComplex",
    "RationalSparseMatrix",
    "build_component",
    "word_path",
    "walk_relator",
    "d0_matrix",
    "d1_matrix",
    "compose_check",
    "edge_target",
]


class EdgeId(NamedTuple):
    source: ElementId
    generator_index: int


class TwoCell(NamedTuple):
    relator_index: int
    base: ElementId


def edge_target(backend, edge: EdgeId) -> ElementId:
    return backend.conjugate(backend.generator_images()[edge.generator_index], edge.source)


def word_path(backend, word: Sequence[Letter], source: ElementId) -> tuple:
    """Oriented edges realizing the morphism ``(source -> w source w^-1 / w)``.

    Returns ``(walk, target)``. Entry j of ``walk`` is the edge carrying letter j of the word, with sign -1 when the
    letter is an inverse generator (the edge is then crossed against its
    canonical orientation).
    """
    gens = backend.generator_images()
    objects = [None] * (len(word) + 1)
    objects[len(word)] = source
    for j in range(len(word) - 1, -1, -1):
        letter = word[j]
        x = gens[letter.generator_index]
        y = x if letter.sign > 0 else backend.invert(x)
        objects[j] = backend.conjugate(y, objects[j + 1])
    walk = []
    for j, letter in enumerate(word):
        if letter.sign > 0:
            # crosses (c -> x c x^-1) forwards, c = objects[j + 1]
            walk.append((EdgeId(objects[j + 1], letter.generator_index), 1))
        else:
            # crosses (c' -> x c' x^-1) backwards, c' = objects[j]
            walk.append((EdgeId(objects[j], letter.generator_index), -1))
    return walk, objects[0]


def walk_relator(backend, presentation: Presentation, i: int, base: ElementId) -> list:
    walk, end = word_path(backend, presentation.relators[i], base)
    if end != base:
        raise WalkNotClosed(
            f"relator {presentation.format_relator(i)} at {backend.label(base)} ends at {backend.label(end)}"
        )
    return walk


@dataclass(frozen=True)
class ComponentComplex:
    conjugacy_class: ConjugacyClass
    vertices: tuple
    edges: tuple
    cells: tuple
    boundary_walks: tuple
    edge_targets: tuple

    @property
    def vertex_index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    @property
    def edge_index(self) -> dict:
        return {e: k for k, e in enumerate(self.edges)}

    def edge_cochain(self, values: dict) -> RationalVector:
        idx = self.edge_index
        return RationalVector(len(self.edges), {idx[e]: v for e, v in values.items()})


def build_component(backend, presentation: Presentation, cls: ConjugacyClass) -> ComponentComplex:
    vertices = tuple(cls.members)
    members = set(vertices)
    edges = []
    targets = []
    for a in vertices:
        for i in range(presentation.num_generators):
            e = EdgeId(a, i)
            t = edge_target(backend, e)
            if t not in members:
                raise ValueError(f"class of {backend.label(cls.representative)} is not closed under conjugation")
            edges.append(e)
            targets.append(t)
    cells = []
    walks = []
    for i in range(len(presentation.relators)):
        for a in vertices:
            cells.append(TwoCell(i, a))
            walks.append(tuple(walk_relator(backend, presentation, i, a)))
    return ComponentComplex(cls, vertices, tuple(edges), tuple(cells), tuple(walks), tuple(targets))


def d0_matrix(c: ComponentComplex) -> RationalSparseMatrix:
    """Edges x vertices; row of ``a -> b`` is ``t(b) - t(a)``, loops give zero rows."""
    vidx = c.vertex_index
    entries = {}
    for r, (e, b) in enumerate(zip(c.edges, c.edge_targets)):
        if e.source != b:
            entries[(r, vidx[e.source])] = -1
            entries[(r, vidx[b])] = 1
    return RationalSparseMatrix(len(c.edges), len(c.vertices), entries)


def d1_matrix(c: ComponentComplex) -> RationalSparseMatrix:
    """Cells x edges; entry is the signed number of times the cell's walk crosses the edge."""
    eidx = c.edge_index
    entries: dict = {}
    for r, walk in enumerate(c.boundary_walks):
        for e, s in walk:
            key = (r, eidx[e])
            entries[key] = entries.get(key, 0) + s
    return RationalSparseMatrix(len(c.cells), len(c.edges), entries)


def compose_check(c: ComponentComplex) -> bool:
    return (d1_matrix(c) @ d0_matrix(c)).is_zero()


def degree_bounds_hold(c: ComponentComplex, presentation: Presentation) -> bool:
    """Each vertex meets at most 2|X| edge ends; each edge lies on at most sum(l_i) cells."""
    ends = {v: 0 for v in c.vertices}
    for e, b in zip(c.edges, c.edge_targets):
        ends[e.source] += 1
        ends[b] += 1
    if any(n > 2 * presentation.num_generators for n in ends.values()):
        return False
    bound = sum(len(r) for r in presentation.relators)
    on_cells: dict = {}
    for cell, walk in zip(c.cells, c.boundary_walks):
        for e in {e for e, _ in walk}:
            on_cells[e] = on_cells.get(e, 0) + 1
    return all(n <= bound for n in on_cells.values())
