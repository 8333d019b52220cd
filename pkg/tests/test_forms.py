"""Binary form algebra: products, gcds, substitutions, numeric roots."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galois_loci.cyclotomic import zeta
from galois_loci.forms import (BinaryForm, form_compose, form_divexact, form_gcd,
                               form_mul, hessian, monomial_basis, roots_numeric)
from galois_loci.linalg import Matrix

X = BinaryForm.x()
Y = BinaryForm.y()

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def rational_forms(max_degree=4, allow_zero=False):
    def build(coeffs):
        return BinaryForm(len(coeffs) - 1, coeffs)
    base = st.integers(min_value=0, max_value=max_degree).flatmap(
        lambda d: st.lists(small_fractions, min_size=d + 1, max_size=d + 1))
    strat = st.builds(build, base)
    if not allow_zero:
        strat = strat.filter(lambda f: not f.is_zero())
    return strat


def invertible_matrices():
    return st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=4).map(
        lambda e: Matrix([[e[0], e[1]], [e[2], e[3]]])
    ).filter(lambda m: not m.det().is_zero())


def test_form_mul_examples():
    assert form_mul(X, Y) == BinaryForm(2, [0, 1, 0])
    assert form_mul(BinaryForm(1, [1, 1]), BinaryForm(1, [1, -1])) == BinaryForm(2, [1, 0, -1])
    # hand convolution: x^2 * (x^2 + y^2) = x^4 + x^2 y^2
    assert form_mul(BinaryForm(2, [1, 0, 0]), BinaryForm(2, [1, 0, 1])) == \
        BinaryForm(4, [1, 0, 1, 0, 0])


def test_form_gcd_examples():
    assert form_gcd(BinaryForm(3, [1, 0, 0, 0]), BinaryForm(3, [0, 0, 1, 0])) == X
    assert form_gcd(BinaryForm(2, [1, 0, 0]), BinaryForm(2, [0, 0, 1])) == BinaryForm(0, [1])
    assert form_gcd(BinaryForm(3, [0, 1, 0, 0]), BinaryForm(3, [0, 0, 1, 0])) == \
        BinaryForm(2, [0, 1, 0])
    with pytest.raises(ValueError):
        form_gcd(BinaryForm(1, [0, 0]), BinaryForm(2, [0, 0, 0]))


@settings(max_examples=50, deadline=None)
@given(f=rational_forms(), g=rational_forms(), h=rational_forms())
def test_gcd_multiplicativity(f, g, h):
    lhs = form_gcd(form_mul(f, h), form_mul(g, h))
    rhs = form_mul(form_gcd(f, g), h)
    assert lhs.proportional_to(rhs)


def test_form_compose_examples():
    x2 = BinaryForm(2, [1, 0, 0])
    assert form_compose(x2, Matrix.identity(2)) == x2
    assert form_compose(x2, Matrix([[0, 1], [1, 0]])) == BinaryForm(2, [0, 0, 1])
    octa = form_mul(form_mul(X, Y), BinaryForm(4, [1, 0, 0, 0, -1]))
    turned = form_compose(octa, Matrix([[zeta(4), 0], [0, 1]]))
    assert turned.proportional_to(octa)
    with pytest.raises(ValueError):
        form_compose(x2, Matrix([[1, 1], [1, 1]]))


@settings(max_examples=50, deadline=None)
@given(f=rational_forms(), m=invertible_matrices(), n=invertible_matrices())
def test_compose_is_right_action(f, m, n):
    assert form_compose(form_compose(f, m), n) == form_compose(f, m @ n)


def test_divexact():
    prod = form_mul(BinaryForm(2, [1, 0, -1]), BinaryForm(1, [2, 3]))
    assert form_divexact(prod, BinaryForm(1, [2, 3])) == BinaryForm(2, [1, 0, -1])
    with pytest.raises(ValueError):
        form_divexact(BinaryForm(2, [1, 0, 1]), X)


def test_roots_examples():
    pts = roots_numeric(BinaryForm(2, [1, 0, -1]))     # x^2 - y^2
    affine = sorted(round(p.affine().real, 8) for p in pts)
    assert affine == [-1.0, 1.0]
    pts = roots_numeric(BinaryForm(2, [1, 0, 1]))      # x^2 + y^2
    ims = sorted(round(p.affine().imag, 8) for p in pts)
    assert ims == [-1.0, 1.0]
    pts = roots_numeric(form_mul(X, Y))
    assert sum(p.is_infinity() for p in pts) == 1
    assert any(abs(p.a) < 1e-12 for p in pts)


@settings(max_examples=40, deadline=None)
@given(f=rational_forms(max_degree=6))
def test_roots_residual_bound(f):
    if f.degree == 0:
        return
    scale = max(abs(complex(c)) for c in f.coeffs)
    for p in roots_numeric(f):
        assert abs(f.evaluate_complex(p.a, p.b)) / scale < 1e-10


@settings(max_examples=30, deadline=None)
@given(f=rational_forms(max_degree=3), g=rational_forms(max_degree=3))
def test_roots_of_product_union(f, g):
    if f.degree + g.degree == 0:
        return
    product_roots = roots_numeric(form_mul(f, g))
    separate = roots_numeric(f) + roots_numeric(g) if f.degree and g.degree else (
        roots_numeric(f) if f.degree else roots_numeric(g))
    assert len(product_roots) == len(separate)
    unmatched = list(separate)
    for p in product_roots:
        j = min(range(len(unmatched)), key=lambda k: p.distance(unmatched[k]))
        assert p.distance(unmatched[j]) < 1e-8
        unmatched.pop(j)


def test_monomial_basis_and_derivatives():
    basis = monomial_basis(3)
    assert [f.coeffs.index(next(c for c in f.coeffs if not c.is_zero())) for f in basis] == \
        [0, 1, 2, 3]
    f = BinaryForm(3, [1, 0, 0, 2])      # x^3 + 2 y^3
    assert f.derivative_x() == BinaryForm(2, [3, 0, 0])
    assert f.derivative_y() == BinaryForm(2, [0, 0, 6])


def test_hessian_of_icosahedral_vertex_form():
    f = form_mul(form_mul(X, Y), BinaryForm(10, [1, 0, 0, 0, 0, 11, 0, 0, 0, 0, -1]))
    h = hessian(f).scale(Fraction(-1, 121))
    assert h.degree == 20
    assert h.coeffs[0] == 1 and h.coeffs[20] == 1
    assert h.coeffs[5] == -228 and h.coeffs[10] == 494 and h.coeffs[15] == 228
