"""Galois spaces, centers, Plucker coordinates, curve incidence."""

import random
from fractions import Fraction

import pytest

from galois_loci.forms import BinaryForm, form_mul, roots_numeric
from galois_loci.groups import GroupKind, GroupSpec, conjugated_pair, standard_invariant_pair
from galois_loci.linalg import Matrix
from galois_loci.spaces import (GaloisSection, LinearSystem, ProjectionCenter, SectionError,
                                SpaceError, center_from_section, galois_space, meets_curve,
                                plucker)

C1 = standard_invariant_pair(GroupKind.cyclic(1))
C2 = standard_invariant_pair(GroupKind.cyclic(2))
C3 = standard_invariant_pair(GroupKind.cyclic(3))


def test_linear_system_validation():
    with pytest.raises(SpaceError):
        LinearSystem(2, [BinaryForm(2, [1, 0, 0])])                    # N >= 1 needs two forms
    with pytest.raises(SpaceError):
        LinearSystem(2, [BinaryForm(2, [1, 0, 0]), BinaryForm(2, [2, 0, 0])])
    with pytest.raises(SpaceError):
        LinearSystem(2, [BinaryForm(2, [1, 0, 0]), BinaryForm(1, [1, 0])])
    sys2 = LinearSystem.complete(2)
    assert sys2.is_complete() and sys2.dim_projective == 2


def test_galois_space_trivial_group():
    for d in (2, 3, 5):
        basis = galois_space(C1, LinearSystem.complete(d))
        assert len(basis) == d


def test_galois_space_examples():
    assert [f.coeffs for f in galois_space(C2, LinearSystem.complete(2))] == \
        [BinaryForm(0, [1]).coeffs]
    sub = LinearSystem(3, [BinaryForm(3, [1, 0, 0, 0]), BinaryForm(3, [0, 1, 0, 0]),
                           BinaryForm(3, [0, 0, 0, 1])])
    sol = galois_space(C2, sub)
    assert len(sol) == 1 and sol[0].proportional_to(BinaryForm.y())
    # m > d gives the empty space, not an error
    assert galois_space(standard_invariant_pair(GroupKind.cyclic(5)),
                        LinearSystem.complete(2)) == []


def test_galois_space_members_really_land_in_system():
    sub = LinearSystem(4, [BinaryForm(4, [1, 0, 0, 0, 0]), BinaryForm(4, [0, 1, 0, 0, 0]),
                           BinaryForm(4, [0, 0, 0, 0, 1])])
    for kind in (GroupKind.cyclic(2), GroupKind.cyclic(3), GroupKind.dihedral(2)):
        pair = standard_invariant_pair(kind)
        for s in galois_space(pair, sub):
            assert sub.contains(form_mul(s, pair.A))
            assert sub.contains(form_mul(s, pair.B))


def test_center_from_section_examples():
    v3 = LinearSystem.complete(3)
    center = center_from_section(C3, BinaryForm.constant(1), v3)
    assert center.pencil == Matrix([[1, 0, 0, 0], [0, 0, 0, 1]])
    center = center_from_section(C2, BinaryForm.x(), v3)
    assert center.pencil == Matrix([[1, 0, 0, 0], [0, 0, 1, 0]])
    # degenerate boundary: d = 1, trivial group, the "projection" is everything
    v1 = LinearSystem.complete(1)
    center = center_from_section(C1, BinaryForm.constant(1), v1)
    assert center.pencil == Matrix.identity(2)


def test_center_section_validation():
    sub = LinearSystem(3, [BinaryForm(3, [1, 0, 0, 0]), BinaryForm(3, [0, 1, 0, 0]),
                           BinaryForm(3, [0, 0, 0, 1])])
    with pytest.raises(SectionError):
        center_from_section(C2, BinaryForm.x(), sub)
    with pytest.raises(SectionError):
        center_from_section(C2, BinaryForm(0, [0]), LinearSystem.complete(2))
    with pytest.raises(SectionError):
        center_from_section(C2, BinaryForm.x(), LinearSystem.complete(2))
    section = GaloisSection.checked(C2, BinaryForm.y(), sub)
    assert center_from_section(C2, section, sub).pencil.rank() == 2


def test_plucker_examples():
    p = plucker(ProjectionCenter(2, Matrix([[1, 0, 0], [0, 0, 1]])))
    assert [c.as_fraction() for c in p.minors] == [0, 1, 0]
    p = plucker(ProjectionCenter(2, Matrix([[1, 0, 0], [0, 1, 0]])))
    assert [c.as_fraction() for c in p.minors] == [1, 0, 0]


def test_plucker_row_operation_invariance():
    rng = random.Random(2)
    base = ProjectionCenter(3, Matrix([[1, 2, 3, 4], [0, 1, 0, 2]]))
    reference = plucker(base)
    for _ in range(10):
        while True:
            e = Matrix([[Fraction(rng.randint(-5, 5)) for _ in range(2)] for _ in range(2)])
            if not e.det().is_zero():
                break
        assert plucker(ProjectionCenter(3, e @ base.pencil)) == reference


def test_center_row_space_equality():
    a = ProjectionCenter(2, Matrix([[1, 0, 0], [0, 0, 1]]))
    b = ProjectionCenter(2, Matrix([[2, 0, 2], [0, 0, 1]]))
    c = ProjectionCenter(2, Matrix([[1, 0, 0], [0, 1, 0]]))
    assert a == b and hash(a) == hash(b)
    assert a != c
    with pytest.raises(SpaceError):
        ProjectionCenter(2, Matrix([[1, 0, 0], [2, 0, 0]]))


def test_meets_curve_examples():
    v3 = LinearSystem.complete(3)
    assert meets_curve(center_from_section(C3, BinaryForm.constant(1), v3), v3) == []
    pts = meets_curve(center_from_section(C2, BinaryForm.x(), v3), v3)
    assert len(pts) == 1 and pts[0].exact and pts[0].a == 0
    v2 = LinearSystem.complete(2)
    pts = meets_curve(ProjectionCenter(2, Matrix([[0, 1, 0], [0, 0, 1]])), v2)
    assert len(pts) == 1 and pts[0].is_infinity()


@pytest.mark.parametrize("kind,d", [(GroupKind.cyclic(2), 4), (GroupKind.cyclic(3), 5),
                                    (GroupKind.dihedral(2), 6)],
                         ids=lambda v: str(v))
def test_meets_curve_equals_section_roots(kind, d):
    pair = standard_invariant_pair(kind)
    system = LinearSystem.complete(d)
    rng = random.Random(7)
    for _ in range(3):
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(d - kind.order + 1)]
        section = BinaryForm(d - kind.order, coeffs)
        if section.is_zero():
            continue
        pts = meets_curve(center_from_section(pair, section, system), system)
        expected = roots_numeric(section)
        assert len(pts) == section.degree
        unmatched = list(expected)
        for p in pts:
            az, bz = (complex(p.a), complex(p.b)) if p.exact else (p.a, p.b)
            dists = [abs(az * q.b - bz * q.a) for q in unmatched]
            j = dists.index(min(dists))
            assert dists[j] < 1e-8
            unmatched.pop(j)


def test_disjointness_iff_constant_section():
    """A constructed center misses the curve exactly when deg s = 0 (m = d)."""
    system = LinearSystem.complete(4)
    rng = random.Random(3)
    for kind in (GroupKind.cyclic(2), GroupKind.cyclic(3), GroupKind.cyclic(4),
                 GroupKind.dihedral(2)):
        pair = standard_invariant_pair(kind)
        deg = 4 - kind.order
        for _ in range(3):
            coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(deg + 1)]
            section = BinaryForm(deg, coeffs)
            if section.is_zero():
                continue
            pts = meets_curve(center_from_section(pair, section, system), system)
            assert (pts == []) == (deg == 0)
