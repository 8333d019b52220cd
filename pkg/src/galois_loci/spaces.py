"""Galois subspaces with a fixed group: sections, centers, Plucker points.

Given the quotient pencil (A, B) of a finite Moebius group of order m and a
linear system V of degree-d forms, the sections s of degree d-m with both
s*A and s*B inside span(V) parametrize the projection centers whose composed
projection is Galois with exactly that group.  A center is stored by its
defining pencil span{s*A, s*B} as a 2 x (N+1) coordinate matrix; its Plucker
image embeds all of this into the Grassmannian of codimension-2 subspaces.

Everything in this module is exact; `meets_curve` returns exact points where
the intersection is rational and falls back to certified numeric points
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import Cyc
from .forms import BinaryForm, form_gcd, form_mul, monomial_basis, roots_numeric
from .groups import InvariantPair
from .linalg import Matrix, kernel_basis

__all__ = [
    "LinearSystem", "GaloisSection", "ProjectionCenter", "PluckerPoint", "CurvePoint",
    "galois_space", "center_from_section", "plucker", "meets_curve",
    "SpaceError", "SectionError",
]

ZERO = Cyc.of(0)
ONE = Cyc.of(1)


class SpaceError(ValueError):
    pass


class SectionError(SpaceError):
    """A claimed Galois section fails its defining inclusion."""


class LinearSystem:
    """A basis of linearly independent degree-d forms spanning V <= H^0(O(d))."""

    __slots__ = ("degree", "basis", "_coeff_matrix")

    def __init__(self, degree: int, basis: Iterable[BinaryForm]):
        basis = tuple(basis)
        if degree < 1:
            raise SpaceError("linear system degree must be positive")
        if len(basis) < 2:
            raise SpaceError("a linear system needs at least two forms (N >= 1)")
        for f in basis:
            if f.degree != degree:
                raise SpaceError(f"basis form of degree {f.degree} in a degree-{degree} system")
            if f.is_zero():
                raise SpaceError("zero form in a linear system basis")
        mat = Matrix([[f.coeffs[i] for f in basis] for i in range(degree + 1)])
        if mat.rank() != len(basis):
            raise SpaceError("linear system basis is not linearly independent")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_coeff_matrix", mat)

    def __setattr__(self, *_):
        raise AttributeError("LinearSystem is immutable")

    @staticmethod
    def complete(degree: int) -> "LinearSystem":
        return LinearSystem(degree, monomial_basis(degree))

    @property
    def dim_projective(self) -> int:
        """N, the dimension of the target projective space P(V^dual)."""
        return len(self.basis) - 1

    @property
    def coeff_matrix(self) -> Matrix:
        """(d+1) x (N+1) matrix whose column j holds the coefficients of basis[j]."""
        return self._coeff_matrix

    def is_complete(self) -> bool:
        return len(self.basis) == self.degree + 1

    def coords_of(self, form: BinaryForm) -> tuple[Cyc, ...] | None:
        """Exact coordinates of `form` in this basis, or None if outside the span."""
        if form.degree != self.degree:
            return None
        return self._coeff_matrix.solve(form.coeffs)

    def contains(self, form: BinaryForm) -> bool:
        return self.coords_of(form) is not None

    def combine(self, coords: Sequence) -> BinaryForm:
        out = [ZERO] * (self.degree + 1)
        for c, f in zip(coords, self.basis):
            c = Cyc.of(c)
            if not c.is_zero():
                for i, v in enumerate(f.coeffs):
                    if not v.is_zero():
                        out[i] = out[i] + c * v
        return BinaryForm(self.degree, out)


@dataclass(frozen=True)
class GaloisSection:
    """A degree d-m form s with s*A, s*B in span(V), validated at creation."""

    form: BinaryForm

    @staticmethod
    def checked(pair: InvariantPair, form: BinaryForm, system: LinearSystem) -> "GaloisSection":
        _require_section(pair, form, system)
        return GaloisSection(form)


def _require_section(pair: InvariantPair, s: BinaryForm, system: LinearSystem) -> tuple:
    if s.is_zero():
        raise SectionError("the zero form is not a Galois section")
    if s.degree != system.degree - pair.degree:
        raise SectionError(
            f"section degree {s.degree} != d - m = {system.degree - pair.degree}")
    ca = system.coords_of(form_mul(s, pair.A))
    if ca is None:
        raise SectionError("s*A lies outside the span of the linear system")
    cb = system.coords_of(form_mul(s, pair.B))
    if cb is None:
        raise SectionError("s*B lies outside the span of the linear system")
    return ca, cb


class ProjectionCenter:
    """A codimension-2 linear center W, stored by its defining pencil.

    The pencil matrix R is 2 x (N+1) of rank 2; its rows are coordinates (in
    V.basis) of a basis of the 2-dimensional subspace U <= V, and the center
    is the annihilator W = P(ann U) inside P(V^dual) = P^N.  Two matrices
    with the same row space describe the same center.
    """

    __slots__ = ("degree", "pencil")

    def __init__(self, degree: int, pencil: Matrix | Sequence):
        if not isinstance(pencil, Matrix):
            pencil = Matrix(pencil)
        if pencil.rows != 2:
            raise SpaceError("a center pencil has exactly two rows")
        if pencil.rank() != 2:
            raise SpaceError("center pencil matrix must have rank 2")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "pencil", pencil)

    def __setattr__(self, *_):
        raise AttributeError("ProjectionCenter is immutable")

    @property
    def n_coords(self) -> int:
        return self.pencil.cols

    def row_space_key(self):
        red, _ = self.pencil.rref()
        return tuple(red[i, j].key() for i in range(2) for j in range(red.cols))

    def __eq__(self, other):
        return (isinstance(other, ProjectionCenter)
                and self.degree == other.degree
                and self.row_space_key() == other.row_space_key())

    def __hash__(self):
        return hash((self.degree, self.row_space_key()))

    def __repr__(self):
        return f"ProjectionCenter(d={self.degree}, pencil={self.pencil!r})"


@dataclass(frozen=True)
class PluckerPoint:
    """Normalized vector of the 2x2 minors of a center pencil, indexed by
    column pairs (i, j) with i < j in lexicographic order."""

    minors: tuple[Cyc, ...]

    def __post_init__(self):
        if all(c.is_zero() for c in self.minors):
            raise SpaceError("zero minor vector")

    def key(self):
        return tuple(c.key() for c in self.minors)

    def __eq__(self, other):
        return isinstance(other, PluckerPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


# ---------------------------------------------------------------------------
# operations

def galois_space(pair: InvariantPair, system: LinearSystem) -> list[BinaryForm]:
    """Exact basis of {s of degree d-m : s*A in span V and s*B in span V}.

    Empty iff no Galois subspace with this group exists in this system; for
    a complete system the space is all of H^0(O(d-m)), of dimension d-m+1.
    """
    m = pair.degree
    d = system.degree
    if m > d:
        return []
    k = d - m + 1
    n_basis = len(system.basis)
    mult_a = _multiplication_columns(pair.A, k)
    mult_b = _multiplication_columns(pair.B, k)
    bmat = system.coeff_matrix
    rows = []
    for i in range(d + 1):
        rows.append([mult_a[j][i] for j in range(k)]
                    + [-bmat[i, j] for j in range(n_basis)]
                    + [ZERO] * n_basis)
    for i in range(d + 1):
        rows.append([mult_b[j][i] for j in range(k)]
                    + [ZERO] * n_basis
                    + [-bmat[i, j] for j in range(n_basis)])
    kernel = kernel_basis(Matrix(rows))
    if not kernel:
        return []
    section_rows = Matrix([vec[:k] for vec in kernel])
    reduced, pivots = section_rows.rref()
    return [BinaryForm(d - m, reduced.row(r)) for r in range(len(pivots))]


def _multiplication_columns(form: BinaryForm, k: int) -> list[tuple[Cyc, ...]]:
    """Coefficient columns of x^(k-1-i) y^i * form for i = 0..k-1."""
    cols = []
    for i in range(k):
        shifted = form_mul(BinaryForm.monomial(k - 1, i), form)
        cols.append(shifted.coeffs)
    return cols


def center_from_section(pair: InvariantPair, section, system: LinearSystem) -> ProjectionCenter:
    """The center with pencil span{s*A, s*B}, rows written in V.basis coordinates."""
    s = section.form if isinstance(section, GaloisSection) else section
    ca, cb = _require_section(pair, s, system)
    return ProjectionCenter(system.degree, Matrix([ca, cb]))


def plucker(center: ProjectionCenter) -> PluckerPoint:
    """Plucker coordinates of the pencil's row space, first nonzero entry = 1."""
    r = center.pencil
    minors = []
    for i in range(r.cols):
        for j in range(i + 1, r.cols):
            minors.append(r[0, i] * r[1, j] - r[0, j] * r[1, i])
    lead = next((c for c in minors if not c.is_zero()), None)
    if lead is None:
        raise SpaceError("rank < 2: all minors vanish")
    inv = lead.inverse()
    return PluckerPoint(tuple(c * inv for c in minors))


class CurvePoint:
    """A point of P^1 where the curve meets a center; exact when rational."""

    __slots__ = ("a", "b", "exact")

    def __init__(self, a, b, exact: bool):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, *_):
        raise AttributeError("immutable")

    @staticmethod
    def at_infinity() -> "CurvePoint":
        return CurvePoint(Cyc.of(1), Cyc.of(0), True)

    @staticmethod
    def affine_exact(t) -> "CurvePoint":
        return CurvePoint(Cyc.of(t), Cyc.of(1), True)

    def is_infinity(self) -> bool:
        if self.exact:
            return self.b.is_zero()
        return abs(self.b) < 1e-12

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.exact and other.exact:
            return self.a * other.b == self.b * other.a
        return NotImplemented

    def __hash__(self):
        if not self.exact:
            raise TypeError("numeric curve points are not hashable")
        if self.b.is_zero():
            return hash(("inf",))
        return hash((self.a / self.b).key())

    def __repr__(self):
        tag = "" if self.exact else "~"
        return f"[{tag}{self.a} : {tag}{self.b}]"


def meets_curve(center: ProjectionCenter, system: LinearSystem) -> list[CurvePoint]:
    """Points p of P^1 with phi(p) in W, with multiplicity.

    These are the common roots of the pulled-back pencil R * ver_d, i.e. the
    roots of gcd(P0, P1); for a center built from a section s this is exactly
    the root set of s.
    """
    p0 = system.combine(center.pencil.row(0))
    p1 = system.combine(center.pencil.row(1))
    g = form_gcd(p0, p1)
    points: list[CurvePoint] = []
    if g.degree == 0:
        return points
    k = g.y_valuation()
    points.extend(CurvePoint.at_infinity() for _ in range(k))
    finite = [r for r in roots_numeric(g) if not r.is_infinity(1e-9)]
    for root in finite:
        z = root.affine()
        if abs(z.imag) < 1e-9:
            cand = Fraction(z.real).limit_denominator(10 ** 6)
            if abs(cand - z.real) < 1e-9 and g.evaluate(cand, 1).is_zero():
                points.append(CurvePoint.affine_exact(cand))
                continue
        points.append(CurvePoint(z, 1.0, False))
    return points
