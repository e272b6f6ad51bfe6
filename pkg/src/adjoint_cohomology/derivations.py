"""Brute-force derivation oracle for finite groups.

Works directly with |G| x |G| operator matrices and the Leibniz identity on
basis elements::

    x^h_{g2 g1} = x^{h g1^-1}_{g2} + x^{g2^-1 h}_{g1}

and shares nothing with the complex side except exact linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import OracleInconsistency, OrderTooLarge
from .group_engine import FiniteGroupTable
from .groupoid import Character, DerivationMatrix, Morphism
from .linalg import RationalSparseMatrix, nullity, nullspace_basis, rank

DEFAULT_ORDER_CAP = 24


@dataclass(frozen=True)
class OracleReport:
    group_order: int
    num_classes: int
    dim_der: int
    dim_int: int
    dim_out: int


def _check_cap(backend: FiniteGroupTable, cap: int):
    if backend.order > cap:
        raise OrderTooLarge(backend.order, cap)


def leibniz_system(backend: FiniteGroupTable, cap: int = DEFAULT_ORDER_CAP) -> RationalSparseMatrix:
    """One row per triple (g1, g2, h); unknown x^h_g sits in column ``h*|G| + g``."""
    _check_cap(backend, cap)
    n = backend.order
    mult, inv = backend.mult, backend.inv
    entries: dict = {}
    row = 0
    for g1, g2, h in product(range(n), repeat=3):
        for col, coeff in (
            (h * n + mult[g2][g1], 1),
            (mult[h][inv[g1]] * n + g2, -1),
            (mult[inv[g2]][h] * n + g1, -1),
        ):
            entries[(row, col)] = entries.get((row, col), 0) + coeff
        row += 1
    return RationalSparseMatrix(n ** 3, n * n, entries)


def ad_matrix(backend: FiniteGroupTable, g: int) -> DerivationMatrix:
    """Matrix of ``u -> g u - u g``: column h holds ``gh - hg``."""
    n = backend.order
    m = DerivationMatrix.zeros(n)
    for h in range(n):
        m.entries[backend.mult[g][h]][h] += 1
        m.entries[backend.mult[h][g]][h] -= 1
    return m


def ad_of_element(backend: FiniteGroupTable, coeffs) -> DerivationMatrix:
    """``ad`` of the algebra element ``sum_h coeffs[h] h``."""
    out = DerivationMatrix.zeros(backend.order)
    for h, c in enumerate(coeffs):
        if c:
            out = out + ad_matrix(backend, h).scale(c)
    return out


def leibniz_check(backend: FiniteGroupTable, X: DerivationMatrix) -> bool:
    n = backend.order
    mult, inv = backend.mult, backend.inv
    x = X.entries
    for g1, g2, h in product(range(n), repeat=3):
        if x[h][mult[g2][g1]] != x[mult[h][inv[g1]]][g2] + x[mult[inv[g2]][h]][g1]:
            return False
    return True


def inner_character(backend: FiniteGroupTable, g: int) -> Character:
    """Character of ``ad_g``: ``(a -> b / h) -> [b == g] - [a == g]``."""
    values = {}
    for a, h in product(backend.elements(), repeat=2):
        b = backend.conjugate(h, a)
        values[Morphism(a, h)] = Fraction(int(b == g) - int(a == g))
    return Character(backend, values)


def derivation_basis(backend: FiniteGroupTable, cap: int = DEFAULT_ORDER_CAP) -> list:
    n = backend.order
    return [DerivationMatrix.from_flat(n, v.entries) for v in nullspace_basis(leibniz_system(backend, cap))]


def inner_span_rank(backend: FiniteGroupTable) -> int:
    n = backend.order
    rows = [ad_matrix(backend, g).flatten() for g in range(n)]
    return rank(RationalSparseMatrix.from_rows(rows, n * n))


def derivation_dims(backend: FiniteGroupTable, cap: int = DEFAULT_ORDER_CAP) -> OracleReport:
    system = leibniz_system(backend, cap)
    dim_der = nullity(system)
    dim_int = inner_span_rank(backend)
    num_classes = len(backend.conjugacy_classes())
    if dim_int != backend.order - num_classes:
        raise OracleInconsistency(
            f"span of ad_g has dimension {dim_int}, expected |G| - #classes = {backend.order - num_classes}"
        )
    if dim_der < dim_int:
        raise OracleInconsistency(f"dim Der = {dim_der} is smaller than dim Int = {dim_int}")
    return OracleReport(backend.order, num_classes, dim_der, dim_int, dim_der - dim_int)
