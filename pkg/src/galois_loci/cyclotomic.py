"""Exact arithmetic in the rationals and in small cyclotomic fields Q(zeta_n).

An element is a coordinate vector over Q in the power basis
1, zeta, ..., zeta^(phi(n)-1), reduced modulo the n-th cyclotomic
polynomial.  Rationals are the degenerate case n = 1.  Binary operations
between different conductors promote both sides into Q(zeta_lcm), so values
from different catalog fields mix freely and exactly.

The documented catalog of fields is Q plus CYCLOTOMIC(n) for
n in {3, 4, 5, 8, 10, 12}; the arithmetic itself works for any conductor,
which keeps cyclic groups of other orders constructible without a special
case.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import cmath

CATALOG_CONDUCTORS = (1, 3, 4, 5, 8, 10, 12)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n: int) -> int:
    """Euler's totient of a positive integer."""
    if n < 1:
        raise ValueError("conductor must be positive")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            result *= p - 1
            m //= p
            while m % p == 0:
                result *= p
                m //= p
        p += 1
    if m > 1:
        result *= m - 1
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, ascending coefficient lists

def _ptrim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _ptrim(out)


def _pdivmod(p: list[Fraction], q: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [_ZERO] * max(0, len(p) - len(q) + 1)
    inv_lead = 1 / q[-1]
    for k in range(len(rem) - len(q), -1, -1):
        c = rem[k + len(q) - 1] * inv_lead
        if c:
            quo[k] = c
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return _ptrim(quo), _ptrim(rem)


def _pxgcd(p: list[Fraction], q: list[Fraction]) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Extended Euclid: returns (g, u, v) with u*p + v*q = g, g monic."""
    r0, r1 = list(p), list(q)
    u0, u1 = [_ONE], []
    v0, v1 = [], [_ONE]
    while r1:
        quo, rem = _pdivmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, _ptrim([a - b for a, b in _zip_pad(u0, _pmul(quo, u1))])
        v0, v1 = v1, _ptrim([a - b for a, b in _zip_pad(v0, _pmul(quo, v1))])
    if r0:
        lead = r0[-1]
        r0 = [c / lead for c in r0]
        u0 = [c / lead for c in u0]
        v0 = [c / lead for c in v0]
    return r0, u0, v0


def _zip_pad(p: list[Fraction], q: list[Fraction]):
    n = max(len(p), len(q))
    for i in range(n):
        yield (p[i] if i < len(p) else _ZERO, q[i] if i < len(q) else _ZERO)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Monic n-th cyclotomic polynomial as ascending rational coefficients."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [_ZERO] * (n + 1)
    num[0], num[n] = Fraction(-1), _ONE
    num = _ptrim(num)
    for d in divisors(n)[:-1]:
        num, rem = _pdivmod(num, list(cyclotomic_polynomial(d)))
        assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of zeta_n^k in the power basis, for 0 <= k < max(n, 2*phi(n))."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    # x^phi = -(lower part of the cyclotomic polynomial)
    top = [-c for c in poly[:phi]]
    rows: list[tuple[Fraction, ...]] = []
    cur = [_ZERO] * phi
    cur[0] = _ONE
    limit = max(n, 2 * phi)
    for _ in range(limit):
        rows.append(tuple(cur))
        spill = cur[phi - 1]
        cur = [_ZERO] + cur[:-1]
        if spill:
            cur = [a + spill * b for a, b in zip(cur, top)]
    return tuple(rows)


class Cyc:
    """An exact element of Q(zeta_n), immutable.

    Supports the usual field arithmetic with automatic promotion between
    conductors; rational values always collapse to conductor 1 so that a
    Cyc wrapping 3/4 behaves exactly like the fraction 3/4.
    """

    __slots__ = ("n", "co", "_min")

    def __init__(self, n: int, co: tuple[Fraction, ...]):
        if n > 1 and all(c == 0 for c in co[1:]):
            n, co = 1, (co[0] if co else _ZERO,)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "co", co)
        object.__setattr__(self, "_min", None)

    def __setattr__(self, *_):
        raise AttributeError("Cyc is immutable")

    # -- construction -------------------------------------------------------

    @staticmethod
    def of(value) -> "Cyc":
        if isinstance(value, Cyc):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyc(1, (Fraction(value),))
        raise TypeError(f"cannot coerce {type(value).__name__} to Cyc")

    @staticmethod
    def from_coords(n: int, coords) -> "Cyc":
        phi = euler_phi(n)
        co = tuple(Fraction(c) for c in coords)
        if len(co) != phi:
            raise ValueError(f"expected {phi} coordinates for conductor {n}, got {len(co)}")
        return Cyc(n, co)

    # -- promotion -----------------------------------------------------------

    def _coords_at(self, m: int) -> tuple[Fraction, ...]:
        """Coordinate vector in the conductor-m power basis; requires n | m."""
        if m == self.n:
            return self.co
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        phi_m = euler_phi(m)
        table = _power_table(m)
        step = m // self.n
        out = [_ZERO] * phi_m
        for j, c in enumerate(self.co):
            if c:
                row = table[j * step]
                for k in range(phi_m):
                    if row[k]:
                        out[k] += c * row[k]
        return tuple(out)

    def promote(self, m: int) -> "Cyc":
        """Re-express in Q(zeta_m); requires n | m."""
        return Cyc(m, self._coords_at(m)) if m != self.n else self

    @staticmethod
    def _common(a: "Cyc", b: "Cyc") -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], int]:
        if a.n == b.n:
            return a.co, b.co, a.n
        m = a.n * b.n // gcd(a.n, b.n)
        return a._coords_at(m), b._coords_at(m), m

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = Cyc.of(other)
        a, b, n = Cyc._common(self, other)
        return Cyc(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, tuple(-c for c in self.co))

    def __sub__(self, other):
        return self + (-Cyc.of(other))

    def __rsub__(self, other):
        return (-self) + Cyc.of(other)

    def __mul__(self, other):
        other = Cyc.of(other)
        if other.n == 1:
            c = other.co[0]
            return Cyc(self.n, tuple(x * c for x in self.co))
        if self.n == 1:
            c = self.co[0]
            return Cyc(other.n, tuple(c * x for x in other.co))
        a, b, n = Cyc._common(self, other)
        phi = len(a)
        prod = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        table = _power_table(n)
        out = list(prod[:phi]) + [_ZERO] * (phi - len(prod[:phi]))
        for k in range(phi, len(prod)):
            c = prod[k]
            if c:
                row = table[k]
                for t in range(phi):
                    if row[t]:
                        out[t] += c * row[t]
        return Cyc(n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self.n == 1:
            return Cyc(1, (1 / self.co[0],))
        g, u, _ = _pxgcd(_ptrim(list(self.co)), list(cyclotomic_polynomial(self.n)))
        assert g == [_ONE], "cyclotomic polynomial must be coprime to a nonzero element"
        phi = euler_phi(self.n)
        co = tuple((u[k] if k < len(u) else _ZERO) for k in range(phi))
        return Cyc(self.n, co)

    def __truediv__(self, other):
        return self * Cyc.of(other).inverse()

    def __rtruediv__(self, other):
        return Cyc.of(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Cyc.of(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates / conversion ---------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.co)

    def is_rational(self) -> bool:
        return self.n == 1

    def as_fraction(self) -> Fraction:
        if self.n != 1:
            reduced = self.reduced()
            if reduced.n != 1:
                raise ValueError("element is not rational")
            return reduced.co[0]
        return self.co[0]

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        total, power = 0j, 1 + 0j
        for c in self.co:
            if c:
                total += float(c) * power
            power *= z
        return total

    # -- canonical form / equality --------------------------------------------

    def reduced(self) -> "Cyc":
        """The same value re-expressed at its minimal conductor dividing n."""
        cached = self._min
        if cached is not None:
            return cached
        result = self
        if self.n > 1:
            for d in divisors(self.n)[:-1]:
                sub = _subfield_coords(self.n, d, self.co)
                if sub is not None:
                    result = Cyc(d, sub)
                    break
        object.__setattr__(self, "_min", result)
        return result

    def key(self):
        r = self.reduced()
        return (r.n, r.co)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.of(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        if self.n == other.n:
            return self.co == other.co
        a, b, _ = Cyc._common(self, other)
        return a == b

    def __hash__(self):
        # rational values must hash like the plain numbers they equal
        r = self.reduced()
        if r.n == 1:
            return hash(r.co[0])
        return hash((r.n, r.co))

    def __repr__(self):
        if self.n == 1:
            return f"Cyc({self.co[0]})"
        return f"Cyc(z{self.n}: {list(self.co)})"


def _subfield_coords(n: int, d: int, co: tuple[Fraction, ...]):
    """Coordinates of `co` in the power basis of Q(zeta_d) <= Q(zeta_n), or None."""
    phi_d = euler_phi(d)
    phi_n = euler_phi(n)
    # phi_d == phi_n happens for n = 2d with d odd, where the fields coincide
    if phi_d > phi_n:
        return None
    table = _power_table(n)
    cols = [table[j * (n // d)] for j in range(phi_d)]
    # solve sum_j u_j * cols[j] = co by Gaussian elimination on the phi_n x phi_d system
    aug = [[cols[j][i] for j in range(phi_d)] + [co[i]] for i in range(phi_n)]
    pivots = []
    row = 0
    for col in range(phi_d):
        pivot = next((r for r in range(row, phi_n) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(phi_n):
            if r != row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, phi_n):
        if aug[r][phi_d]:
            return None
    solution = [_ZERO] * phi_d
    for r, col in enumerate(pivots):
        solution[col] = aug[r][phi_d]
    return tuple(solution)


def zeta(n: int) -> Cyc:
    """A primitive n-th root of unity as an exact element."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return Cyc.of(1)
    if n == 2:
        return Cyc.of(-1)
    phi = euler_phi(n)
    co = [_ZERO] * phi
    co[1] = _ONE
    return Cyc(n, tuple(co))


def sqrt_minus_three() -> Cyc:
    """sqrt(-3) = 1 + 2*zeta_3, used by the tetrahedral catalog forms."""
    return Cyc.of(1) + zeta(3) * 2
