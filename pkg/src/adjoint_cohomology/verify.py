"""Compare the Cayley-complex cohomology with the derivation oracle.

Per component the complex side yields ``dim ker d1``, ``rank d0`` and
``h1 = dim ker d1 - rank d0``. Summed over all components of a finite
group these must equal dim Der, dim Int and dim Out of Q[G].
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .complex import ComponentComplex, build_component, d0_matrix, d1_matrix, word_path
from .derivations import DEFAULT_ORDER_CAP, OracleReport, derivation_dims
from .errors import UnsupportedClass
from .group_engine import ConjugacyClass, FiniteGroupTable
from .groupoid import Character, Morphism
from .linalg import RationalSparseMatrix, RationalVector, h1_dimension, nullity, nullspace_basis, rank
from .presentation import Letter, Presentation, free_reduce


@dataclass(frozen=True)
class ComponentReport:
    class_representative: object
    num_vertices: int
    num_edges: int
    num_cells: int
    dim_ker_d1: int
    rank_d0: int
    h1: int


@dataclass
class VerificationReport:
    components: list
    total_ker_d1: int
    total_rank_d0: int
    total_h1: int
    oracle: Optional[OracleReport] = None
    theorem4_kernel_match: Optional[bool] = None
    theorem4_inner_match: Optional[bool] = None
    corollary1_match: Optional[bool] = None
    group_order: Optional[int] = None
    warnings: list = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        flags = [self.theorem4_kernel_match, self.theorem4_inner_match, self.corollary1_match]
        return all(f is not False for f in flags)


def component_report(c: ComponentComplex) -> ComponentReport:
    d0, d1 = d0_matrix(c), d1_matrix(c)
    h1 = h1_dimension(d0, d1)
    ker = nullity(d1)
    return ComponentReport(
        c.conjugacy_class.representative,
        len(c.vertices),
        len(c.edges),
        len(c.cells),
        ker,
        ker - h1,
        h1,
    )


def _classes_for(backend, classes):
    if backend.is_finite:
        return backend.conjugacy_classes() if classes is None else backend.conjugacy_classes(classes)
    if classes is None:
        raise UnsupportedClass("an explicit element list is required for infinite groups")
    return backend.conjugacy_classes(classes)


def verify_group(
    presentation: Presentation,
    backend,
    run_oracle: bool = True,
    classes: Sequence | None = None,
    oracle_cap: int = DEFAULT_ORDER_CAP,
) -> VerificationReport:
    """Build every requested component and, for finite groups, compare with the oracle.

    ``classes`` is a list of elements whose classes are analysed; for finite
    groups the default is every class. The oracle only runs when all classes
    are present, since the comparison is about whole-group totals.
    """
    cls_list = _classes_for(backend, classes)
    reports = [component_report(build_component(backend, presentation, c)) for c in cls_list]
    report = VerificationReport(
        reports,
        sum(r.dim_ker_d1 for r in reports),
        sum(r.rank_d0 for r in reports),
        sum(r.h1 for r in reports),
        group_order=backend.order if backend.is_finite else None,
    )
    report.warnings.extend(presentation.warnings)
    if run_oracle and backend.is_finite:
        if len(cls_list) != len(backend.conjugacy_classes()):
            report.warnings.append("oracle skipped: not every conjugacy class was listed")
        else:
            oracle = derivation_dims(backend, oracle_cap)
            report.oracle = oracle
            report.theorem4_kernel_match = report.total_ker_d1 == oracle.dim_der
            report.theorem4_inner_match = report.total_rank_d0 == oracle.dim_int
            report.corollary1_match = report.total_h1 == oracle.dim_out
    return report


def explicit_outer_cocycles(presentation: Presentation, backend, cls: ConjugacyClass) -> list:
    """Edge cocycles whose classes form a basis of H^1 of the component."""
    c = build_component(backend, presentation, cls)
    d0, d1 = d0_matrix(c), d1_matrix(c)
    span = [RationalVector(d0.rows, col) for col in d0.transpose().row_dicts() if col]
    current = rank(RationalSparseMatrix.from_rows([v.entries for v in span], d0.rows))
    out = []
    for v in nullspace_basis(d1):
        trial = span + [v]
        r = rank(RationalSparseMatrix.from_rows([w.entries for w in trial], d0.rows))
        if r > current:
            span, current = trial, r
            out.append(v)
    return out


def shortest_words(backend: FiniteGroupTable) -> list:
    """A shortest word for each element, by BFS over right multiplication by letters."""
    letters = [Letter(i, s) for i in range(len(backend.generator_names)) for s in (1, -1)]
    words = [None] * backend.order
    words[0] = ()
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for l in letters:
            h = backend.multiply(g, backend.letter_image(l))
            if words[h] is None:
                words[h] = words[g] + (l,)
                queue.append(h)
    return words


def path_value(backend, c: ComponentComplex, tau: RationalVector, word, source) -> Fraction:
    walk, _ = word_path(backend, word, source)
    idx = c.edge_index
    return sum((s * tau[idx[e]] for e, s in walk), Fraction(0))


def extend_cocycle(
    presentation: Presentation,
    backend: FiniteGroupTable,
    c: ComponentComplex,
    tau: RationalVector,
    extra_paths: int = 0,
    rng: random.Random | None = None,
) -> tuple:
    """Extend an edge cocycle of one component to a character on the whole groupoid.

    Each morphism ``(a -> b / g)`` in the component gets the sum of ``tau``
    over the path spelled by a shortest word for g; morphisms in other
    components get 0. With ``extra_paths > 0`` each morphism is also
    evaluated along that many alternative words ``w(g h^-1) w(h)`` for
    random h, and every disagreement is returned as a finding.
    """
    rng = rng or random.Random(0)
    words = shortest_words(backend)
    values = {}
    findings = []
    members = set(c.vertices)
    for a in backend.elements():
        for g in backend.elements():
            if a not in members:
                values[Morphism(a, g)] = Fraction(0)
                continue
            v = path_value(backend, c, tau, words[g], a)
            for _ in range(extra_paths):
                h = rng.randrange(backend.order)
                alt = free_reduce(words[backend.multiply(g, backend.invert(h))] + words[h])
                w = path_value(backend, c, tau, alt, a)
                if w != v:
                    findings.append((Morphism(a, g), v, w))
            values[Morphism(a, g)] = v
    return Character(backend, values), findings
