"""Family enumeration, sampling, factorization checks, dimension probes."""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from galois_loci.families import (FamilyRecord, catalog_kinds_up_to, check_factorization,
                                  enumerate_families, family_sample, intermediate_factorization,
                                  random_conjugator, random_section)
from galois_loci.forms import BinaryForm
from galois_loci.groups import (GroupKind, GroupSpec, MoebiusElement, conjugated_pair,
                                normalizer_dim, standard_invariant_pair)
from galois_loci.linalg import Matrix
from galois_loci.oracle import is_galois
from galois_loci.spaces import LinearSystem, SpaceError, center_from_section, galois_space

V2 = LinearSystem.complete(2)
V3 = LinearSystem.complete(3)


def by_label(records):
    return {r.kind.label(): r for r in records}


def test_enumerate_families_d2():
    records = enumerate_families(2)
    assert [(r.kind.label(), r.fiber_dim, r.base_dim, r.total_dim) for r in records] == [
        ("cyclic(1)", 1, 0, 1),
        ("cyclic(2)", 0, 2, 2),
    ]
    assert records[1].disjoint_from_curve and not records[0].disjoint_from_curve


def test_enumerate_families_d3():
    assert [(r.kind.label(), r.fiber_dim, r.base_dim, r.total_dim)
            for r in enumerate_families(3)] == [
        ("cyclic(1)", 2, 0, 2),
        ("cyclic(2)", 1, 2, 3),
        ("cyclic(3)", 0, 2, 2),
    ]


def test_enumerate_families_d4_and_d1():
    recs = by_label(enumerate_families(4))
    assert recs["dihedral(2)"].fiber_dim == 0
    assert recs["dihedral(2)"].base_dim == 3
    assert recs["dihedral(2)"].total_dim == 3
    assert recs["cyclic(4)"].fiber_dim == 0 and recs["cyclic(4)"].base_dim == 2
    single = enumerate_families(1)
    assert len(single) == 1 and single[0].kind == GroupKind.cyclic(1)
    assert single[0].fiber_dim == 0


def test_enumerate_families_d12_includes_tetrahedral():
    recs = by_label(enumerate_families(12))
    assert "tetrahedral" in recs
    assert recs["tetrahedral"].fiber_dim == 0 and recs["tetrahedral"].base_dim == 3


def test_catalog_kinds_up_to():
    assert [k.label() for k in catalog_kinds_up_to(4)] == [
        "cyclic(1)", "cyclic(2)", "cyclic(3)", "cyclic(4)", "dihedral(2)"]
    assert "icosahedral" in [k.label() for k in catalog_kinds_up_to(60)]


def test_sub_linear_system_flags_and_empty_sentinel():
    # forms divisible by x: no conjugate of cyclic(3) has both cube forms inside
    sub = LinearSystem(3, [BinaryForm(3, [1, 0, 0, 0]), BinaryForm(3, [0, 1, 0, 0]),
                           BinaryForm(3, [0, 0, 1, 0])])
    recs = by_label(enumerate_families(3, sub, samples=4, seed=1))
    assert all(r.fiber_dim_may_vary for r in recs.values())
    assert recs["cyclic(3)"].fiber_dim == -1
    assert recs["cyclic(3)"].total_dim == -1


def test_family_sample_examples():
    spec = GroupSpec(GroupKind.cyclic(2), MoebiusElement.identity())
    center = family_sample(spec, BinaryForm.constant(1), V2)
    assert center.pencil == Matrix([[1, 0, 0], [0, 0, 1]])

    sheared = GroupSpec(GroupKind.cyclic(2), MoebiusElement([[1, 1], [0, 1]]))
    center = family_sample(sheared, BinaryForm.constant(1), V2)
    assert center.pencil == Matrix([[1, -2, 1], [0, 0, 1]])
    report = is_galois(center, V2)
    assert report.galois and report.kind == GroupKind.cyclic(2)

    trivial = GroupSpec(GroupKind.cyclic(1), MoebiusElement([[3, 1], [1, 2]]))
    center = family_sample(trivial, BinaryForm.x(), V2)
    report = is_galois(center, V2)
    assert report.galois and report.degree == 1


def test_check_factorization_examples():
    pair3 = standard_invariant_pair(GroupKind.cyclic(3))
    pair2 = standard_invariant_pair(GroupKind.cyclic(2))
    pair1 = standard_invariant_pair(GroupKind.cyclic(1))
    xi = Matrix([[1, 0], [0, 0], [0, 0], [0, 1]])
    assert check_factorization(xi, pair3, V3) == BinaryForm.constant(1)
    xi = Matrix([[1, 0], [0, 0], [0, 1], [0, 0]])
    assert check_factorization(xi, pair2, V3) == BinaryForm.x()
    assert check_factorization(xi, pair3, V3) is None
    xi = Matrix([[1, 0], [1, 1], [0, 0], [0, 0]])
    assert check_factorization(xi, pair1, V3) == BinaryForm(2, [1, 0, 0])
    with pytest.raises(SpaceError):
        check_factorization(Matrix([[1, 2], [2, 4], [0, 0], [0, 0]]), pair3, V3)


def test_check_factorization_round_trip():
    rng = random.Random(31)
    for kind in (GroupKind.cyclic(2), GroupKind.cyclic(3), GroupKind.dihedral(2)):
        for d in range(kind.order, 7):
            system = LinearSystem.complete(d)
            pair = standard_invariant_pair(kind)
            section = random_section(rng, d - kind.order)
            center = center_from_section(pair, section, system)
            xi = center.pencil.transpose()
            recovered = check_factorization(xi, pair, system)
            assert recovered is not None
            assert recovered.proportional_to(section)


def test_intermediate_factorization_examples():
    pair2 = standard_invariant_pair(GroupKind.cyclic(2))
    pair3 = standard_invariant_pair(GroupKind.cyclic(3))
    assert intermediate_factorization(pair2, BinaryForm.constant(1), V2).to_json() == {
        "identity_holds": True, "intermediate_disjoint": True}
    assert intermediate_factorization(pair2, BinaryForm.x(), V3).identity_holds
    assert intermediate_factorization(pair3, BinaryForm.constant(1), V3).identity_holds
    sub = LinearSystem(3, [BinaryForm(3, [1, 0, 0, 0]), BinaryForm(3, [0, 1, 0, 0]),
                           BinaryForm(3, [0, 0, 0, 1])])
    with pytest.raises(SpaceError, match="complete"):
        intermediate_factorization(pair2, BinaryForm.y(), sub)


# ---------------------------------------------------------------------------
# dimension-consistency probe: the rank of a finite-difference Plucker
# Jacobian across (theta, section) perturbations should equal total_dim

SL2_DIRECTIONS = [np.array([[1, 0], [0, -1]], dtype=complex),
                  np.array([[0, 1], [0, 0]], dtype=complex),
                  np.array([[0, 0], [1, 0]], dtype=complex)]


def _numeric_compose(coeffs: np.ndarray, mat: np.ndarray) -> np.ndarray:
    degree = len(coeffs) - 1
    res = np.array([coeffs[0]], dtype=complex)
    ypow = np.array([1.0 + 0j])
    lin_x = np.array([mat[0, 0], mat[0, 1]])
    lin_y = np.array([mat[1, 0], mat[1, 1]])
    for i in range(1, degree + 1):
        ypow = np.convolve(ypow, lin_y)
        res = np.convolve(res, lin_x)
        if coeffs[i] != 0:
            res = res + coeffs[i] * ypow
    return res


def _plucker_chart(kind: GroupKind, d: int, theta0: np.ndarray, s0: np.ndarray):
    pair = standard_invariant_pair(kind)
    a_coeffs = np.array([complex(c) for c in pair.A.coeffs])
    b_coeffs = np.array([complex(c) for c in pair.B.coeffs])
    pairs = list(itertools.combinations(range(d + 1), 2))

    def chart(params: np.ndarray, pivot=None):
        u = params[:3]
        s = s0 + params[3:]
        theta = theta0 @ (np.eye(2) + sum(uk * ek for uk, ek in zip(u, SL2_DIRECTIONS)))
        inv = np.linalg.inv(theta)
        row0 = np.convolve(s, _numeric_compose(a_coeffs, inv))
        row1 = np.convolve(s, _numeric_compose(b_coeffs, inv))
        minors = np.array([row0[i] * row1[j] - row0[j] * row1[i] for i, j in pairs])
        if pivot is None:
            pivot = int(np.argmax(np.abs(minors)))
        reduced = np.delete(minors / minors[pivot], pivot)
        return np.concatenate([reduced.real, reduced.imag]), pivot

    return chart


@pytest.mark.parametrize("kind,d", [
    (GroupKind.cyclic(1), 3), (GroupKind.cyclic(2), 3), (GroupKind.cyclic(2), 4),
    (GroupKind.cyclic(3), 4), (GroupKind.dihedral(2), 5),
], ids=lambda v: str(v))
def test_observed_dimension_matches_records(kind, d):
    rng = random.Random(41)
    m = kind.order
    expected = (d - m) + (3 - normalizer_dim(kind))
    hits = 0
    for _ in range(3):
        theta0 = random_conjugator(rng).to_complex()
        s0 = np.array([complex(rng.randint(-5, 5)) for _ in range(d - m + 1)])
        if not np.any(s0):
            s0[0] = 1.0
        chart = _plucker_chart(kind, d, theta0, s0)
        n_params = 3 + (d - m + 1)
        base, pivot = chart(np.zeros(n_params))
        h = 1e-5
        columns = []
        for k in range(n_params):
            bump = np.zeros(n_params)
            bump[k] = h
            fwd, _ = chart(bump, pivot)
            back, _ = chart(-bump, pivot)
            columns.append((fwd - back) / (2 * h))
        jac = np.stack(columns, axis=1)
        sv = np.linalg.svd(jac, compute_uv=False)
        rank = int(np.sum(sv > 1e-6 * sv[0]))
        if rank == expected:
            hits += 1
    assert hits >= 2


def test_family_record_json_shape():
    record = enumerate_families(2)[0]
    payload = record.to_json()
    assert set(payload) == {"kind", "m", "fiber_dim", "base_dim", "total_dim",
                            "disjoint_from_curve", "fiber_dim_may_vary"}
