import pytest

from adjoint_cohomology.complex import (
    EdgeId,
    build_component,
    compose_check,
    d0_matrix,
    d1_matrix,
    degree_bounds_hold,
    walk_relator,
    word_path,
)
from adjoint_cohomology.errors import WalkNotClosed
from adjoint_cohomology.group_engine import ConjugacyClass, FreeAbelianGroup, free_abelian_backend
from adjoint_cohomology.groupoid import Morphism, compose
from adjoint_cohomology.linalg import RationalSparseMatrix, rank
from adjoint_cohomology.presentation import Letter, parse_presentation

from conftest import ALL_FINITE, finite_group


def z_n(rank_):
    from adjoint_cohomology.corpus import FREE_ABELIAN

    p = parse_presentation(FREE_ABELIAN[rank_])
    return p, free_abelian_backend(p, rank_, trust_abelian=True)


def test_z_component():
    p, b = z_n(1)
    [cls] = b.conjugacy_classes([(5,)])
    c = build_component(b, p, cls)
    assert c.vertices == ((5,),)
    assert c.edges == (EdgeId((5,), 0),)
    assert c.cells == ()
    assert d0_matrix(c).is_zero()
    assert d1_matrix(c) == RationalSparseMatrix(0, 1)


def test_z2_component():
    p, b = finite_group("Z2")
    x = b.generator_images()[0]
    c = build_component(b, p, b.class_of(x))
    assert len(c.vertices) == 1 and len(c.edges) == 1 and len(c.cells) == 1
    assert c.boundary_walks[0] == ((EdgeId(x, 0), 1), (EdgeId(x, 0), 1))
    assert d1_matrix(c) == RationalSparseMatrix.from_dense([[2]])
    assert compose_check(c)


def test_z_squared_component():
    p, b = z_n(2)
    [cls] = b.conjugacy_classes([(0, 0)])
    c = build_component(b, p, cls)
    e = (0, 0)
    assert c.boundary_walks[0] == ((EdgeId(e, 0), 1), (EdgeId(e, 1), 1), (EdgeId(e, 0), -1), (EdgeId(e, 1), -1))
    assert d1_matrix(c) == RationalSparseMatrix(1, 2)
    assert compose_check(c)


def test_loop_relator_walk():
    p = parse_presentation("<x | x^2>")
    b = FreeAbelianGroup(1, ("x",))
    assert walk_relator(b, p, 0, (3,)) == [(EdgeId((3,), 0), 1), (EdgeId((3,), 0), 1)]
    walk, end = word_path(b, (), (3,))
    assert walk == [] and end == (3,)


def test_two_vertex_d0_row():
    p, b = finite_group("S3")
    x, y = b.generator_images()
    c = build_component(b, p, b.class_of(x))
    d0 = d0_matrix(c)
    r = c.edge_index[EdgeId(x, 1)]
    vi = c.vertex_index
    assert d0[(r, vi[x])] == -1 and d0[(r, vi[b.invert(x)])] == 1
    assert d0[(c.edge_index[EdgeId(x, 0)], vi[x])] == 0  # x fixes x: loop


def test_single_vertex_d0_zero():
    p, b = finite_group("Q8")
    c = build_component(b, p, b.class_of(0))
    assert d0_matrix(c).is_zero()


def test_walk_not_closed_detected():
    # a backend whose conjugation disagrees with the relators
    p = parse_presentation("<x | x^3>")

    class Broken(FreeAbelianGroup):
        def conjugate(self, g, a):
            return tuple(v + sum(g) for v in a)

    b = Broken(1, ("x",))
    with pytest.raises(WalkNotClosed):
        walk_relator(b, p, 0, (0,))


def test_f20_walks_close():
    """Reading relators left to right with a left action would not close here."""
    p, b = finite_group("F20")
    for cls in b.conjugacy_classes():
        c = build_component(b, p, cls)
        assert compose_check(c)


def _walk_morphism(b, walk):
    """Compose the morphisms of a walk (first letter applied last)."""
    out = None
    for e, s in reversed(walk):
        x = b.generator_images()[e.generator_index]
        m = Morphism(e.source, x)
        if s < 0:
            m = Morphism(m.target(b), b.invert(x))
        out = m if out is None else compose(b, m, out)
    return out


@pytest.mark.parametrize("name", sorted(ALL_FINITE))
def test_component_invariants(name):
    p, b = finite_group(name)
    ngens = p.num_generators
    for cls in b.conjugacy_classes():
        c = build_component(b, p, cls)
        assert set(c.vertices) == set(cls.members)
        assert len(c.edges) == len(c.vertices) * ngens
        assert len(c.cells) == len(p.relators) * len(c.vertices)
        assert all(t in cls.members for t in c.edge_targets)
        for cell, walk in zip(c.cells, c.boundary_walks):
            assert _walk_morphism(b, walk) == Morphism(cell.base, 0)
        assert compose_check(c)
        assert rank(d0_matrix(c)) == len(c.vertices) - 1
        assert degree_bounds_hold(c, p)


def test_word_path_realizes_morphism(s3):
    p, b = s3
    x, y = b.generator_images()
    word = (Letter(0, 1), Letter(1, -1), Letter(0, 1))
    g = b.evaluate_word(word)
    for a in b.elements():
        walk, end = word_path(b, word, a)
        assert end == b.conjugate(g, a)
        assert _walk_morphism(b, walk) == Morphism(a, g)
