"""Finite Moebius groups with P^1 quotient, their invariant pencils, and
classification of raw element sets.

The catalog covers the classical finite subgroups of PGL2: cyclic, dihedral,
tetrahedral, octahedral and icosahedral, each with a fixed standard matrix
model over the smallest cyclotomic field that carries it, and with the
degree-|G| pencil (A, B) of semi-invariant forms that realizes the quotient
map P^1 -> P^1/G as [A : B].  Every catalog pencil is re-verified against
the generators the first time it is requested; a failing entry raises
instead of silently shipping a wrong pencil.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import Cyc, zeta, sqrt_minus_three
from .forms import BinaryForm, form_compose, form_gcd, form_mul, hessian
from .linalg import Matrix

__all__ = [
    "GroupKind", "GroupSpec", "MoebiusElement", "InvariantPair",
    "standard_generators", "generate_group", "standard_invariant_pair",
    "verify_invariance", "conjugated_pair", "normalizer_dim", "classify_group",
    "GroupError", "ClassificationError", "CatalogError", "CATALOG_FAMILIES",
]

CATALOG_FAMILIES = ("cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral")

_POLYHEDRAL_ORDERS = {"tetrahedral": 12, "octahedral": 24, "icosahedral": 60}


class GroupError(ValueError):
    pass


class CatalogError(RuntimeError):
    """A catalog entry failed its own certification."""


class ClassificationError(GroupError):
    pass


@dataclass(frozen=True)
class GroupKind:
    """One of the finite Moebius group families, with its parameter."""

    family: str
    m: int | None = None

    def __post_init__(self):
        if self.family not in CATALOG_FAMILIES:
            raise GroupError(f"unknown group family {self.family!r}")
        if self.family == "cyclic":
            if self.m is None or self.m < 1:
                raise GroupError("cyclic groups need m >= 1")
        elif self.family == "dihedral":
            if self.m is None or self.m < 2:
                raise GroupError("dihedral groups need m >= 2; use cyclic(2) instead of dihedral(1)")
        elif self.m is not None:
            raise GroupError(f"{self.family} takes no parameter")

    @staticmethod
    def cyclic(m: int) -> "GroupKind":
        return GroupKind("cyclic", m)

    @staticmethod
    def dihedral(m: int) -> "GroupKind":
        return GroupKind("dihedral", m)

    @staticmethod
    def tetrahedral() -> "GroupKind":
        return GroupKind("tetrahedral")

    @staticmethod
    def octahedral() -> "GroupKind":
        return GroupKind("octahedral")

    @staticmethod
    def icosahedral() -> "GroupKind":
        return GroupKind("icosahedral")

    @property
    def order(self) -> int:
        if self.family == "cyclic":
            return self.m
        if self.family == "dihedral":
            return 2 * self.m
        return _POLYHEDRAL_ORDERS[self.family]

    def label(self) -> str:
        if self.m is not None:
            return f"{self.family}({self.m})"
        return self.family

    def __repr__(self):
        return f"GroupKind.{self.label()}"


class MoebiusElement:
    """An element of PGL2: an invertible 2x2 exact matrix modulo scalars."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix | Sequence):
        if not isinstance(matrix, Matrix):
            matrix = Matrix(matrix)
        if matrix.shape != (2, 2):
            raise GroupError("Moebius element needs a 2x2 matrix")
        if matrix.det().is_zero():
            raise GroupError("Moebius element needs an invertible matrix")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *_):
        raise AttributeError("MoebiusElement is immutable")

    @staticmethod
    def identity() -> "MoebiusElement":
        return MoebiusElement(Matrix.identity(2))

    def canonical(self) -> Matrix:
        """Representative with the first nonzero entry (row-major) equal to 1."""
        entries = [self.matrix[0, 0], self.matrix[0, 1], self.matrix[1, 0], self.matrix[1, 1]]
        lead = next(e for e in entries if not e.is_zero())
        return self.matrix.scale(lead.inverse())

    def key(self):
        c = self.canonical()
        return tuple(c[i, j].key() for i in range(2) for j in range(2))

    def __mul__(self, other: "MoebiusElement") -> "MoebiusElement":
        return MoebiusElement(self.matrix @ other.matrix)

    def inverse(self) -> "MoebiusElement":
        a, b = self.matrix[0, 0], self.matrix[0, 1]
        c, d = self.matrix[1, 0], self.matrix[1, 1]
        return MoebiusElement(Matrix([[d, -b], [-c, a]]))

    def conjugate(self, g: "MoebiusElement") -> "MoebiusElement":
        """theta * g * theta^{-1} where theta is self."""
        return self * g * self.inverse()

    def is_identity(self) -> bool:
        c = self.canonical()
        return (c[0, 1].is_zero() and c[1, 0].is_zero()
                and c[0, 0] == c[1, 1])

    def order(self, cap: int = 200) -> int:
        """Projective order; raises if it exceeds `cap`."""
        power = self
        for k in range(1, cap + 1):
            if power.is_identity():
                return k
            power = power * self
        raise GroupError(f"element order exceeds {cap}")

    def to_complex(self) -> np.ndarray:
        return np.array([[complex(self.matrix[i, j]) for j in range(2)] for i in range(2)])

    def __eq__(self, other):
        return isinstance(other, MoebiusElement) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        c = self.canonical()
        return f"MoebiusElement({[[c[0,0], c[0,1]], [c[1,0], c[1,1]]]})"


@dataclass(frozen=True)
class GroupSpec:
    """A conjugate theta * G_std * theta^{-1} of a standard catalog group."""

    kind: GroupKind
    theta: MoebiusElement

    @property
    def order(self) -> int:
        return self.kind.order


@dataclass(frozen=True)
class InvariantPair:
    """The quotient pencil of a finite Moebius group: two coprime degree-|G|
    forms that transform by one common scalar under every group element."""

    kind: GroupKind
    A: BinaryForm
    B: BinaryForm

    def __post_init__(self):
        if self.A.degree != self.B.degree:
            raise GroupError("pencil forms must have equal degree")
        if self.A.is_zero() or self.B.is_zero():
            raise GroupError("pencil forms must be nonzero")

    @property
    def degree(self) -> int:
        return self.A.degree


# ---------------------------------------------------------------------------
# standard models

def standard_generators(kind: GroupKind) -> list[MoebiusElement]:
    """Generators of the fixed standard model of `kind`.

    Cyclic(m) is generated by diag(zeta_m, 1), dihedral(m) adds the swap
    [[0,1],[1,0]]; the three polyhedral groups use the classical matrices
    over Q(i), Q(i) and Q(zeta_5) respectively (the tetrahedral group is
    the unique index-2 subgroup of the octahedral model).
    """
    if kind.family == "cyclic":
        if kind.m == 1:
            return []
        return [MoebiusElement([[zeta(kind.m), 0], [0, 1]])]
    if kind.family == "dihedral":
        return [
            MoebiusElement([[zeta(kind.m), 0], [0, 1]]),
            MoebiusElement([[0, 1], [1, 0]]),
        ]
    if kind.family == "tetrahedral":
        i = zeta(4)
        return [
            MoebiusElement([[-1, 0], [0, 1]]),
            MoebiusElement([[i, i], [1, -1]]),
        ]
    if kind.family == "octahedral":
        i = zeta(4)
        return [
            MoebiusElement([[i, 0], [0, 1]]),
            MoebiusElement([[1, 1], [1, -1]]),
        ]
    # icosahedral
    e = zeta(5)
    return [
        MoebiusElement([[e, 0], [0, 1]]),
        MoebiusElement([[e ** 4 - e, e ** 2 - e ** 3], [e ** 2 - e ** 3, e - e ** 4]]),
    ]


def generate_group(generators: Iterable[MoebiusElement], limit: int = 200) -> list[MoebiusElement]:
    """Closure of the generators in PGL2; raises GroupError past `limit` elements."""
    identity = MoebiusElement.identity()
    elements = {identity.key(): identity}
    frontier = [identity]
    gens = list(generators)
    while frontier:
        fresh = []
        for el in frontier:
            for g in gens:
                prod = el * g
                k = prod.key()
                if k not in elements:
                    if len(elements) >= limit:
                        raise GroupError(f"group closure exceeds {limit} elements")
                    elements[k] = prod
                    fresh.append(prod)
        frontier = fresh
    return list(elements.values())


@lru_cache(maxsize=None)
def standard_invariant_pair(kind: GroupKind) -> InvariantPair:
    """The catalog quotient pencil for `kind`, certified on first use.

    Cyclic(m): (x^m, y^m).  Dihedral(m): (x^m y^m, x^{2m} + y^{2m}).
    Tetrahedral: cubes of Klein's two tetrahedron forms x^4 +- 2*sqrt(-3) x^2 y^2 + y^4.
    Octahedral: (W^3, chi^2) for the face form W = x^8 + 14 x^4 y^4 + y^8 and the
    edge form chi = x^12 - 33 x^8 y^4 - 33 x^4 y^8 + y^12.
    Icosahedral: (1728 f^5, H^3) with f = xy(x^10 + 11 x^5 y^5 - y^10) and H the
    degree-20 form derived from the Hessian of f.
    """
    if kind.family == "cyclic":
        pair = InvariantPair(kind, BinaryForm.monomial(kind.m, 0), BinaryForm.monomial(kind.m, kind.m))
    elif kind.family == "dihedral":
        m = kind.m
        A = BinaryForm.monomial(2 * m, m)
        B = BinaryForm.monomial(2 * m, 0) + BinaryForm.monomial(2 * m, 2 * m)
        pair = InvariantPair(kind, A, B)
    elif kind.family == "tetrahedral":
        s = sqrt_minus_three()
        phi = BinaryForm(4, [1, 0, 2 * s, 0, 1])
        psi = BinaryForm(4, [1, 0, -2 * s, 0, 1])
        pair = InvariantPair(kind, phi ** 3, psi ** 3)
    elif kind.family == "octahedral":
        W = BinaryForm(8, [1, 0, 0, 0, 14, 0, 0, 0, 1])
        chi = BinaryForm(12, [1, 0, 0, 0, -33, 0, 0, 0, -33, 0, 0, 0, 1])
        pair = InvariantPair(kind, W ** 3, chi ** 2)
    else:
        f = form_mul(form_mul(BinaryForm.x(), BinaryForm.y()),
                     BinaryForm(10, [1, 0, 0, 0, 0, 11, 0, 0, 0, 0, -1]))
        H = hessian(f).scale(Cyc.of(-1) / 121)
        pair = InvariantPair(kind, f ** 5 * 1728, H ** 3)
    _certify(pair)
    return pair


def _certify(pair: InvariantPair) -> None:
    if pair.degree != pair.kind.order:
        raise CatalogError(f"{pair.kind.label()}: pencil degree {pair.degree} != group order")
    gens = standard_generators(pair.kind)
    if not verify_invariance(pair, gens):
        raise CatalogError(f"{pair.kind.label()}: pencil is not semi-invariant under the generators")
    if form_gcd(pair.A, pair.B).degree != 0:
        raise CatalogError(f"{pair.kind.label()}: pencil forms share a factor")
    if pair.A.proportional_to(pair.B):
        raise CatalogError(f"{pair.kind.label()}: pencil forms are proportional")


def verify_invariance(pair: InvariantPair, generators: Iterable[MoebiusElement]) -> bool:
    """True iff both pencil forms transform by one common exact scalar under
    every generator."""
    for g in generators:
        lam = _semi_invariance_scalar(pair.A, g)
        if lam is None:
            return False
        composed_b = form_compose(pair.B, g.matrix)
        if composed_b != pair.B.scale(lam):
            return False
    return True


def _semi_invariance_scalar(form: BinaryForm, g: MoebiusElement) -> Cyc | None:
    composed = form_compose(form, g.matrix)
    pivot = next(i for i, c in enumerate(form.coeffs) if not c.is_zero())
    if composed.coeffs[pivot].is_zero():
        return None
    lam = composed.coeffs[pivot] * form.coeffs[pivot].inverse()
    if composed == form.scale(lam):
        return lam
    return None


def conjugated_pair(spec: GroupSpec) -> InvariantPair:
    """Quotient pencil (A o theta^{-1}, B o theta^{-1}) of theta G theta^{-1}."""
    std = standard_invariant_pair(spec.kind)
    inv = spec.theta.inverse().matrix
    return InvariantPair(spec.kind, form_compose(std.A, inv), form_compose(std.B, inv))


def normalizer_dim(kind: GroupKind) -> int:
    """Dimension of the normalizer of the standard model inside PGL2.

    The trivial group has all of PGL2 (3); a nontrivial cyclic group keeps
    the diagonal torus plus the flip (1); all dihedral and polyhedral
    normalizers are finite (0).
    """
    if kind.family == "cyclic":
        return 3 if kind.m == 1 else 1
    return 0


# ---------------------------------------------------------------------------
# classification of raw element sets (exact or numeric)

def classify_group(elements: Sequence, tol: float = 1e-8) -> GroupKind:
    """Identify the catalog kind of a finite set of Moebius transformations.

    Accepts exact MoebiusElements or numeric 2x2 arrays.  Checks closure
    under products (exactly, or within `tol` projectively), computes the
    multiset of element orders, and matches it against the catalog:
    an order-n element makes the group cyclic(n); order 2m with at most m
    elements of order above 2 is dihedral(m); the three polyhedral order
    statistics cover the rest.
    """
    if len(elements) == 0:
        raise ClassificationError("empty element set")
    exact = all(isinstance(e, MoebiusElement) for e in elements)
    if exact:
        orders = _classify_exact_orders(elements)
    else:
        orders = _classify_numeric_orders(elements, tol)
    n = len(elements)
    if n in orders:
        return GroupKind.cyclic(n)
    if n % 2 == 0 and n >= 4:
        m = n // 2
        if sum(1 for o in orders if o > 2) <= m and m in orders:
            return GroupKind.dihedral(m)
    stats = {o: orders.count(o) for o in set(orders)}
    if n == 12 and stats == {1: 1, 2: 3, 3: 8}:
        return GroupKind.tetrahedral()
    if n == 24 and stats == {1: 1, 2: 9, 3: 8, 4: 6}:
        return GroupKind.octahedral()
    if n == 60 and stats == {1: 1, 2: 15, 3: 20, 5: 24}:
        return GroupKind.icosahedral()
    raise ClassificationError(f"order-{n} group with order statistics {stats} is not in the catalog")


def _classify_exact_orders(elements: Sequence[MoebiusElement]) -> list[int]:
    keys = {e.key() for e in elements}
    if len(keys) != len(elements):
        raise ClassificationError("duplicate elements")
    for a in elements:
        for b in elements:
            if (a * b).key() not in keys:
                raise ClassificationError("set is not closed under composition")
    return [e.order(cap=len(elements) + 1) for e in elements]


def _classify_numeric_orders(elements: Sequence, tol: float) -> list[int]:
    mats = [np.asarray(e, dtype=complex) for e in elements]
    for m in mats:
        if m.shape != (2, 2) or abs(np.linalg.det(m)) < 1e-14:
            raise ClassificationError("elements must be invertible 2x2 matrices")
    for a in mats:
        for b in mats:
            prod = a @ b
            if min(projective_distance(prod, c) for c in mats) > tol:
                raise ClassificationError("set is not closed under composition within tolerance")
    return [_numeric_order(m, len(mats), tol) for m in mats]


def _numeric_order(mat: np.ndarray, cap: int, tol: float) -> int:
    identity = np.eye(2)
    power = mat / np.sqrt(abs(np.linalg.det(mat)))
    base = power.copy()
    for k in range(1, cap + 1):
        if projective_distance(power, identity) < tol:
            return k
        power = power @ base
    raise ClassificationError(f"element order exceeds {cap}")


def projective_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Scale-invariant distance between nonzero matrices: sine of the angle
    between them seen as vectors (0 iff proportional).  Computed as the norm
    of the orthogonal projection residual, which stays accurate near zero."""
    va, vb = a.reshape(-1), b.reshape(-1)
    na, nb = np.linalg.norm(va), np.linalg.norm(vb)
    if na == 0 or nb == 0:
        raise ValueError("zero matrix has no projective class")
    va = va / na
    vb = vb / nb
    return float(np.linalg.norm(va - np.vdot(vb, va) * vb))
