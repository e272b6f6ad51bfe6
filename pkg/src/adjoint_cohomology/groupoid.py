"""The groupoid of the adjoint action of a group on itself.

Objects are group elements. A morphism ``(a -> b / g)`` is a conjugator g
with ``b = g a g^-1``; only ``(a, g)`` is stored and the target is always
recomputed. Composition multiplies conjugators: ``(b -> c / g2) * (a -> b / g1)
= (a -> c / g2 g1)``.

Linear operators on the group algebra Q[G] are square matrices with
``entry[h][g]`` the coefficient of h in X(g). They correspond bijectively
to functions on morphisms via ``T(a -> b / g) = entry[g a][g]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence

from .errors import NotComposable
from .group_engine import ElementId, FiniteGroupTable

ZERO = Fraction(0)


@dataclass(frozen=True)
class Morphism:
    source: ElementId
    g: ElementId

    def target(self, backend) -> ElementId:
        return backend.conjugate(self.g, self.source)


def identity_morphism(backend, a) -> Morphism:
    return Morphism(a, backend.identity)


def compose(backend, second: Morphism, first: Morphism) -> Morphism:
    """``second * first``: first is applied first."""
    if first.target(backend) != second.source:
        raise NotComposable(f"target of {first} is not the source of {second}")
    return Morphism(first.source, backend.multiply(second.g, first.g))


def hom_set(backend: FiniteGroupTable, a: int, c: int) -> list:
    return [g for g in backend.elements() if backend.conjugate(g, a) == c]


def morphisms(backend: FiniteGroupTable) -> Iterator[Morphism]:
    for a, g in product(backend.elements(), repeat=2):
        yield Morphism(a, g)


class DerivationMatrix:
    """Square rational matrix of a linear operator on Q[G], ``entries[h][g] = x^h_g``."""

    __slots__ = ("order", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        self.order = len(entries)
        self.entries = [[v if isinstance(v, Fraction) else Fraction(v) for v in row] for row in entries]
        if any(len(row) != self.order for row in self.entries):
            raise ValueError("derivation matrix must be square")

    @classmethod
    def zeros(cls, n: int) -> "DerivationMatrix":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "DerivationMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, n: int, values: Mapping | Sequence) -> "DerivationMatrix":
        """Inverse of :meth:`flatten`; unknown ``(h, g)`` sits at ``h * n + g``."""
        m = cls.zeros(n)
        items = values.items() if isinstance(values, Mapping) else enumerate(values)
        for k, v in items:
            m.entries[k // n][k % n] = Fraction(v)
        return m

    def flatten(self) -> dict:
        n = self.order
        return {h * n + g: v for h, row in enumerate(self.entries) for g, v in enumerate(row) if v}

    def __getitem__(self, hg):
        h, g = hg
        return self.entries[h][g]

    def image(self, g: int) -> list:
        """Coefficient vector of X(g)."""
        return [row[g] for row in self.entries]

    def __matmul__(self, other: "DerivationMatrix") -> "DerivationMatrix":
        n = self.order
        cols = list(zip(*other.entries))
        return DerivationMatrix([[sum((a * b for a, b in zip(row, col)), ZERO) for col in cols] for row in self.entries])

    def __add__(self, other):
        return DerivationMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return DerivationMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scale(self, c) -> "DerivationMatrix":
        return DerivationMatrix([[c * a for a in r] for r in self.entries])

    def commutator(self, other: "DerivationMatrix") -> "DerivationMatrix":
        return self @ other - other @ self

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def __eq__(self, other):
        if not isinstance(other, DerivationMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"DerivationMatrix(order={self.order}, nonzero={len(self.flatten())})"


@dataclass
class Character:
    """A function on morphisms, stored extensionally; missing morphisms read as 0."""

    backend: object
    values: dict

    def __call__(self, xi: Morphism) -> Fraction:
        return self.values.get(xi, ZERO)

    def support(self) -> dict:
        return {k: v for k, v in self.values.items() if v}

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.backend is other.backend and self.support() == other.support()


def character_from_matrix(backend: FiniteGroupTable, X: DerivationMatrix) -> Character:
    if X.order != backend.order:
        raise ValueError(f"matrix order {X.order} does not match group order {backend.order}")
    mult = backend.mult
    values = {Morphism(a, g): X.entries[mult[g][a]][g] for a, g in product(backend.elements(), repeat=2)}
    return Character(backend, values)


def matrix_from_character(backend: FiniteGroupTable, T: Character) -> DerivationMatrix:
    n = backend.order
    mult, inv = backend.mult, backend.inv
    out = DerivationMatrix.zeros(n)
    for h, g in product(range(n), repeat=2):
        # (a -> b / g) with g a = h = b g
        a = mult[inv[g]][h]
        out.entries[h][g] = T(Morphism(a, g))
    return out


def find_additivity_violation(backend: FiniteGroupTable, T: Character):
    """First composable pair ``(eta, xi)`` with ``T(eta*xi) != T(eta) + T(xi)``, or None."""
    mult = backend.mult
    for a, g1 in product(backend.elements(), repeat=2):
        xi = Morphism(a, g1)
        b = xi.target(backend)
        t_xi = T(xi)
        for g2 in backend.elements():
            eta = Morphism(b, g2)
            if T(Morphism(a, mult[g2][g1])) != T(eta) + t_xi:
                return eta, xi
    return None


def check_additivity(backend: FiniteGroupTable, T: Character) -> bool:
    return find_additivity_violation(backend, T) is None
