"""Homogeneous binary forms with exact coefficients.

A form of degree d is stored as d+1 coefficients, entry i being the
coefficient of x^(d-i) * y^i.  Coefficients live in the exact cyclotomic
element type, so every algebraic operation here (product, gcd, substitution
by a 2x2 matrix, exact division) is free of rounding.  The only numeric
door is `roots_numeric`, which is the entrance to the verification oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import Cyc
from .linalg import Matrix

ZERO = Cyc.of(0)
ONE = Cyc.of(1)


class BinaryForm:
    """Immutable homogeneous polynomial in two variables."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Iterable):
        co = tuple(Cyc.of(c) for c in coeffs)
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if len(co) != degree + 1:
            raise ValueError(f"degree {degree} needs {degree + 1} coefficients, got {len(co)}")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", co)

    def __setattr__(self, *_):
        raise AttributeError("BinaryForm is immutable")

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def monomial(degree: int, y_power: int, coeff=1) -> "BinaryForm":
        """coeff * x^(degree - y_power) * y^y_power."""
        if not 0 <= y_power <= degree:
            raise ValueError("y_power out of range")
        co = [ZERO] * (degree + 1)
        co[y_power] = Cyc.of(coeff)
        return BinaryForm(degree, co)

    @staticmethod
    def x(degree: int = 1) -> "BinaryForm":
        return BinaryForm.monomial(degree, 0)

    @staticmethod
    def y(degree: int = 1) -> "BinaryForm":
        return BinaryForm.monomial(degree, degree)

    @staticmethod
    def constant(value) -> "BinaryForm":
        return BinaryForm(0, [value])

    # -- basic structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def y_valuation(self) -> int:
        """Multiplicity of the root [1:0], i.e. the power of y dividing the form."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        raise ValueError("zero form has no valuation")

    def x_valuation(self) -> int:
        for i in range(self.degree, -1, -1):
            if not self.coeffs[i].is_zero():
                return self.degree - i
        raise ValueError("zero form has no valuation")

    def evaluate(self, x, y) -> Cyc:
        x, y = Cyc.of(x), Cyc.of(y)
        total = ZERO
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                total = total + c * x ** (self.degree - i) * y ** i
        return total

    def evaluate_complex(self, x: complex, y: complex) -> complex:
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                total += complex(c) * x ** (self.degree - i) * y ** i
        return total

    def complex_coeffs(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, [-c for c in self.coeffs])

    def scale(self, c) -> "BinaryForm":
        c = Cyc.of(c)
        return BinaryForm(self.degree, [c * v for v in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return form_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BinaryForm":
        if k < 0:
            raise ValueError("negative power of a form")
        result = BinaryForm.constant(1)
        for _ in range(k):
            result = form_mul(result, self)
        return result

    def derivative_x(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.constant(0)
        return BinaryForm(self.degree - 1,
                          [self.coeffs[i] * (self.degree - i) for i in range(self.degree)])

    def derivative_y(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.constant(0)
        return BinaryForm(self.degree - 1,
                          [self.coeffs[i + 1] * (i + 1) for i in range(self.degree)])

    # -- normalization / comparison --------------------------------------------------

    def monic(self) -> "BinaryForm":
        """Scale so the first nonzero coefficient is 1."""
        lead = next((c for c in self.coeffs if not c.is_zero()), None)
        if lead is None:
            raise ValueError("cannot normalize the zero form")
        return self.scale(lead.inverse())

    def proportional_to(self, other: "BinaryForm") -> bool:
        if self.degree != other.degree:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic().coeffs == other.monic().coeffs

    def __eq__(self, other):
        return (isinstance(other, BinaryForm)
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, tuple(c.key() for c in self.coeffs)))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            xs = f"x^{self.degree - i}" if self.degree - i else ""
            ys = f"y^{i}" if i else ""
            terms.append(f"({c!r}){xs}{ys}")
        return " + ".join(terms) if terms else "0"


# -------------------------------------------------------------------------------
# ring operations

def form_mul(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Product of two forms: exact coefficient convolution."""
    out = [ZERO] * (f.degree + g.degree + 1)
    for i, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(g.coeffs):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return BinaryForm(f.degree + g.degree, out)


def form_divexact(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Exact quotient f / g; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        d_out = max(f.degree - g.degree, 0)
        return BinaryForm(d_out, [ZERO] * (d_out + 1))
    if f.degree < g.degree:
        raise ValueError("quotient degree would be negative")
    # long division along ascending y-powers; g's first nonzero coeff leads
    k = g.y_valuation()
    if f.y_valuation() < k:
        raise ValueError("form does not divide: y-adic valuation too small")
    d_out = f.degree - g.degree
    rem = list(f.coeffs)
    quo = [ZERO] * (d_out + 1)
    lead = g.coeffs[k].inverse()
    for i in range(d_out + 1):
        c = rem[i + k] * lead
        quo[i] = c
        if not c.is_zero():
            for j in range(k, g.degree + 1):
                rem[i + j] = rem[i + j] - c * g.coeffs[j]
    if any(not c.is_zero() for c in rem):
        raise ValueError("form does not divide evenly")
    return BinaryForm(d_out, quo)


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Greatest common divisor, normalized so its first nonzero coefficient is 1.

    The factor y (root at [1:0]) is split off explicitly via the y-adic
    valuation; the rest reduces to a univariate Euclid run on the
    dehomogenizations f(x, 1), g(x, 1).
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero forms is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    k = min(f.y_valuation(), g.y_valuation())
    a = _dehomogenize(f)
    b = _dehomogenize(g)
    while b:
        a, b = b, _poly_mod(a, b)
    deg = len(a) - 1
    lead = a[-1].inverse()
    core = [c * lead for c in a]
    # homogenize to its own degree, then restore the common power of y
    coeffs = [ZERO] * k + [core[deg - i] for i in range(deg + 1)]
    return BinaryForm(deg + k, coeffs)


def _dehomogenize(f: BinaryForm) -> list[Cyc]:
    """f(x, 1) as ascending univariate coefficients, trailing zeros trimmed."""
    co = [f.coeffs[f.degree - j] for j in range(f.degree + 1)]
    while co and co[-1].is_zero():
        co.pop()
    return co


def _poly_mod(a: list[Cyc], b: list[Cyc]) -> list[Cyc]:
    rem = list(a)
    inv = b[-1].inverse()
    while len(rem) >= len(b):
        c = rem[-1] * inv
        if not c.is_zero():
            off = len(rem) - len(b)
            for j in range(len(b)):
                rem[off + j] = rem[off + j] - c * b[j]
        rem.pop()
        while rem and rem[-1].is_zero():
            rem.pop()
    return rem


def form_compose(f: BinaryForm, mat: Matrix) -> BinaryForm:
    """Substitution f(M (x,y)^T): exact, same degree.

    Composition is a right action: form_compose(form_compose(f, M), N)
    equals form_compose(f, M @ N).
    """
    if mat.shape != (2, 2):
        raise ValueError("composition needs a 2x2 matrix")
    if mat.det().is_zero():
        raise ValueError("composition matrix is singular")
    a, b = mat[0, 0], mat[0, 1]
    c, d = mat[1, 0], mat[1, 1]
    X = BinaryForm(1, [a, b])
    Y = BinaryForm(1, [c, d])
    # Horner along ascending y-powers: result = sum_i coeffs[i] X^(d-i) Y^i
    deg = f.degree
    result = BinaryForm(0, [f.coeffs[0]])
    y_pow = BinaryForm.constant(1)
    for i in range(1, deg + 1):
        y_pow = form_mul(y_pow, Y)
        result = form_mul(result, X)
        if not f.coeffs[i].is_zero():
            result = result + y_pow.scale(f.coeffs[i])
    return result


def hessian(f: BinaryForm) -> BinaryForm:
    """f_xx * f_yy - f_xy^2 (exact)."""
    fxx = f.derivative_x().derivative_x()
    fxy = f.derivative_x().derivative_y()
    fyy = f.derivative_y().derivative_y()
    return form_mul(fxx, fyy) - form_mul(fxy, fxy)


def monomial_basis(degree: int) -> list[BinaryForm]:
    """x^d, x^(d-1) y, ..., y^d — the complete linear system of degree d."""
    return [BinaryForm.monomial(degree, i) for i in range(degree + 1)]


# -------------------------------------------------------------------------------
# numeric roots

class ProjectivePointC:
    """A point of P^1(C) held as a unit coordinate pair; [1:0] stays exact."""

    __slots__ = ("a", "b")

    def __init__(self, a: complex, b: complex):
        norm = (abs(a) ** 2 + abs(b) ** 2) ** 0.5
        if norm == 0:
            raise ValueError("(0, 0) is not a projective point")
        object.__setattr__(self, "a", a / norm)
        object.__setattr__(self, "b", b / norm)

    def __setattr__(self, *_):
        raise AttributeError("immutable")

    def is_infinity(self, tol: float = 1e-12) -> bool:
        return abs(self.b) <= tol

    def affine(self) -> complex:
        if self.is_infinity():
            raise ZeroDivisionError("affine coordinate of [1:0]")
        return self.a / self.b

    def distance(self, other: "ProjectivePointC") -> float:
        return abs(self.a * other.b - self.b * other.a)

    def sort_key(self):
        if self.is_infinity(1e-9):
            return (1, 0.0, 0.0)
        z = self.affine()
        return (0, round(z.real, 9), round(z.imag, 9))

    def __repr__(self):
        return f"[{self.a:.6g} : {self.b:.6g}]"


def _newton_monotone(poly: np.ndarray, dpoly: np.ndarray, z: complex) -> complex:
    """Newton steps accepted only while they shrink |poly|; near multiple roots
    the raw step is noise-over-noise and must not be trusted."""
    value = abs(np.polyval(poly, z))
    for _ in range(3):
        if value == 0.0:
            break
        slope = np.polyval(dpoly, z)
        if abs(slope) < 1e-280:
            break
        candidate = z - np.polyval(poly, z) / slope
        cand_value = abs(np.polyval(poly, candidate))
        if not cand_value < value:
            break
        z, value = candidate, cand_value
    return z


def roots_numeric(f: BinaryForm) -> list[ProjectivePointC]:
    """All deg(f) roots in P^1(C) with multiplicity.

    The root [1:0] is split off exactly from the leading block of vanishing
    coefficients; the rest come from the companion matrix of f(x, 1) via
    numpy's eigenvalue solver, sharpened by a few Newton steps so simple
    roots sit at the floating-point floor.
    """
    if f.is_zero():
        raise ValueError("the zero form has no well-defined root set")
    k = f.y_valuation()
    points = [ProjectivePointC(1.0, 0.0) for _ in range(k)]
    co = [f.coeffs[f.degree - j] for j in range(f.degree + 1)]  # ascending in x
    while co and co[-1].is_zero():
        co.pop()
    if len(co) > 1:
        raw = _simple_roots([complex(c) for c in co[::-1]])
        # a root of multiplicity k lands within ~eps^(1/k) of the truth, so
        # clusters can be wide; anything suspicious goes through the exact
        # squarefree split, where every root is simple again
        if _pairwise_separated(raw, 0.05):
            points.extend(raw)
        else:
            for factor, mult in _squarefree_factors(co):
                if len(factor) > 1:
                    for pt in _simple_roots([complex(c) for c in factor[::-1]]):
                        points.extend([pt] * mult)
    points.sort(key=ProjectivePointC.sort_key)
    return points


def _simple_roots(desc: list[complex]) -> list[ProjectivePointC]:
    poly = np.array(desc, dtype=complex)
    dpoly = np.polyder(poly)
    rpoly = poly[::-1]
    drpoly = np.polyder(rpoly)
    out = []
    for r in np.roots(poly):
        z = complex(r)
        if abs(z) <= 1.0:
            out.append(ProjectivePointC(_newton_monotone(poly, dpoly, z), 1.0))
        else:
            out.append(ProjectivePointC(1.0, _newton_monotone(rpoly, drpoly, 1.0 / z)))
    return out


def _pairwise_separated(points: list[ProjectivePointC], gap: float) -> bool:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i].distance(points[j]) <= gap:
                return False
    return True


def _squarefree_factors(ascending: list[Cyc]) -> list[tuple[list[Cyc], int]]:
    """Yun decomposition of an exact univariate polynomial: pairwise-coprime
    squarefree factors with their multiplicities."""
    p = list(ascending)
    dp = [p[i] * i for i in range(1, len(p))]
    g = _poly_gcd(p, dp)
    w = _poly_divexact(p, g)
    factors = []
    mult = 1
    while len(w) > 1:
        y = _poly_gcd(w, g)
        part = _poly_divexact(w, y)
        if len(part) > 1:
            factors.append((part, mult))
        w = y
        g = _poly_divexact(g, y)
        mult += 1
    return factors


def _poly_gcd(a: list[Cyc], b: list[Cyc]) -> list[Cyc]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_mod(a, b)
    if not a:
        raise ValueError("gcd of zero polynomials")
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _poly_divexact(a: list[Cyc], b: list[Cyc]) -> list[Cyc]:
    rem = list(a)
    quo = [ZERO] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse()
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv
        if not c.is_zero():
            quo[k] = c
            for j in range(len(b)):
                rem[k + j] = rem[k + j] - c * b[j]
    if any(not c.is_zero() for c in rem):
        raise ValueError("polynomial division is not exact")
    return quo
