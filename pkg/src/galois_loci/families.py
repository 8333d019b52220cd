"""Families of Galois subspaces over conjugates of the catalog groups.

For a degree-d system, every catalog group of order m <= d contributes one
family: a fiber of projective dimension d-m (the sections) moving over a
base of dimension 3 - dim N(G) (the conjugates of G inside PGL2 modulo the
normalizer).  This module enumerates those records, samples individual
centers from a family, checks the linear-map factorization criterion, and
verifies the intermediate-projection factorization through the complete
degree-m system.
"""

from __future__ import annotations

from dataclasses import dataclass
import random
from fractions import Fraction

from .forms import BinaryForm, form_divexact, form_gcd, monomial_basis
from .groups import (GroupKind, GroupSpec, InvariantPair, MoebiusElement,
                     conjugated_pair, normalizer_dim, standard_invariant_pair)
from .linalg import Matrix, row_space_equal
from .spaces import (GaloisSection, LinearSystem, ProjectionCenter, SpaceError,
                     center_from_section, galois_space)

__all__ = [
    "FamilyRecord", "IntermediateReport", "enumerate_families", "family_sample",
    "check_factorization", "intermediate_factorization", "catalog_kinds_up_to",
    "random_conjugator", "random_section",
]


@dataclass(frozen=True)
class FamilyRecord:
    """Dimension data of one family of Galois subspaces."""

    kind: GroupKind
    m: int
    fiber_dim: int
    base_dim: int
    total_dim: int
    disjoint_from_curve: bool
    fiber_dim_may_vary: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind.family,
            "m": self.m,
            "fiber_dim": self.fiber_dim,
            "base_dim": self.base_dim,
            "total_dim": self.total_dim,
            "disjoint_from_curve": self.disjoint_from_curve,
            "fiber_dim_may_vary": self.fiber_dim_may_vary,
        }


@dataclass(frozen=True)
class IntermediateReport:
    """Outcome of the factorization through the degree-m Veronese."""

    identity_holds: bool
    intermediate_disjoint: bool

    def to_json(self) -> dict:
        return {
            "identity_holds": self.identity_holds,
            "intermediate_disjoint": self.intermediate_disjoint,
        }


def catalog_kinds_up_to(d: int) -> list[GroupKind]:
    """Catalog kinds with group order at most d: cyclic first, then dihedral,
    then the polyhedral kinds, each in ascending order."""
    kinds = [GroupKind.cyclic(m) for m in range(1, d + 1)]
    kinds += [GroupKind.dihedral(m) for m in range(2, d // 2 + 1)]
    for family in ("tetrahedral", "octahedral", "icosahedral"):
        kind = GroupKind(family)
        if kind.order <= d:
            kinds.append(kind)
    return kinds


def enumerate_families(d: int, system: LinearSystem | None = None, *,
                       samples: int = 5, seed: int = 0) -> list[FamilyRecord]:
    """One FamilyRecord per catalog kind of order m <= d.

    With the complete system the fiber dimension is exactly d - m.  With a
    sub-linear system the fiber is sampled over random conjugates and may
    jump, so records carry the MAY-VARY flag and report the largest sampled
    dimension (-1 when every sampled fiber was empty).
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if system is None:
        system = LinearSystem.complete(d)
    if system.degree != d:
        raise ValueError("linear system degree does not match d")
    complete = system.is_complete()
    rng = random.Random(seed)
    records = []
    for kind in catalog_kinds_up_to(d):
        m = kind.order
        base_dim = 3 - normalizer_dim(kind)
        if complete:
            fiber_dim = d - m
            may_vary = False
        else:
            dims = []
            thetas = [MoebiusElement.identity()]
            thetas += [random_conjugator(rng) for _ in range(max(samples - 1, 0))]
            for theta in thetas:
                pair = conjugated_pair(GroupSpec(kind, theta))
                dims.append(len(galois_space(pair, system)) - 1)
            fiber_dim = max(dims)
            may_vary = True
        total_dim = fiber_dim + base_dim if fiber_dim >= 0 else -1
        assert total_dim <= 2 * (system.dim_projective - 1)
        records.append(FamilyRecord(
            kind=kind, m=m, fiber_dim=fiber_dim, base_dim=base_dim,
            total_dim=total_dim, disjoint_from_curve=(m == d),
            fiber_dim_may_vary=may_vary,
        ))
    return records


def family_sample(spec: GroupSpec, section, system: LinearSystem) -> ProjectionCenter:
    """The center of the family member at conjugator spec.theta and the given
    section; the oracle on the result reports spec.kind."""
    pair = conjugated_pair(spec)
    return center_from_section(pair, section, system)


def check_factorization(xi: Matrix, pair: InvariantPair,
                        system: LinearSystem) -> BinaryForm | None:
    """Decide whether the linear map xi factors the quotient map through V.

    xi is (N+1) x 2; its columns, read as coordinates in V.basis, pull back
    to two degree-d forms P0, P1.  With g = gcd(P0, P1), the factorization
    holds iff span{P0/g, P1/g} equals span{A, B} exactly, in which case the
    section witnessing it is g itself (and D(g) is the locus of definition).
    """
    if xi.cols != 2 or xi.rows != len(system.basis):
        raise SpaceError(f"xi must be {len(system.basis)} x 2")
    if xi.rank() != 2:
        raise SpaceError("xi must have rank 2")
    p0 = system.combine(xi.column(0))
    p1 = system.combine(xi.column(1))
    if p0.is_zero() or p1.is_zero():
        return None
    g = form_gcd(p0, p1)
    if system.degree - g.degree != pair.degree:
        return None
    reduced = Matrix([form_divexact(p0, g).coeffs, form_divexact(p1, g).coeffs])
    target = Matrix([pair.A.coeffs, pair.B.coeffs])
    if not row_space_equal(reduced, target):
        return None
    return g


def intermediate_factorization(pair: InvariantPair, section,
                               system: LinearSystem) -> IntermediateReport:
    """Verify the factorization of the projection through the degree-m Veronese.

    Builds the multiplication-by-s matrix M_s from degree-m to degree-d forms
    and the 2 x (m+1) coefficient matrix C of the pencil (A, B); checks the
    exact identity C . M_s^T = R against the constructed center's pencil, and
    that the intermediate center misses the degree-m Veronese image
    (gcd(A, B) = 1).
    """
    if not system.is_complete():
        raise SpaceError("intermediate factorization requires complete system")
    s = section.form if isinstance(section, GaloisSection) else section
    m = pair.degree
    mult_cols = [(s * mono).coeffs for mono in monomial_basis(m)]
    m_s = Matrix([[col[i] for col in mult_cols] for i in range(system.degree + 1)])
    c = Matrix([pair.A.coeffs, pair.B.coeffs])
    r = center_from_section(pair, s, system).pencil
    identity_holds = (c @ m_s.transpose()) == r
    disjoint = form_gcd(pair.A, pair.B).degree == 0
    return IntermediateReport(identity_holds, disjoint)


# ---------------------------------------------------------------------------
# seeded sampling helpers shared by the CLI and the acceptance suite

def random_conjugator(rng: random.Random, span: int = 6) -> MoebiusElement:
    """A random invertible 2x2 matrix with small integer entries."""
    while True:
        entries = [[Fraction(rng.randint(-span, span)) for _ in range(2)] for _ in range(2)]
        mat = Matrix(entries)
        if not mat.det().is_zero():
            return MoebiusElement(mat)


def random_section(rng: random.Random, degree: int, span: int = 9) -> BinaryForm:
    """A random nonzero form of the given degree with small integer coefficients."""
    while True:
        co = [Fraction(rng.randint(-span, span)) for _ in range(degree + 1)]
        form = BinaryForm(degree, co)
        if not form.is_zero():
            return form
