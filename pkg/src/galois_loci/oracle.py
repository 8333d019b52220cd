"""Independent Galois verification through deck transformations.

This module never consults the group-theoretic construction: it composes a
projection with the degree-d Veronese map (exactly), then decides whether
the resulting degree-e self-map of P^1 is Galois by exhaustively searching
for Moebius maps sigma with f o sigma = f.  The search picks three generic
fibers, enumerates all <= e^3 ways of matching a base point of each fiber
to a fiber point, reconstructs the unique Moebius map realizing each match,
and keeps those with a small normalized coefficient residual.  A map is
Galois iff the deck set reaches the full degree e.

Candidates with entries close to small rationals are re-checked exactly and
carry residual 0 when certified; cyclotomic decks keep numeric residuals.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .forms import BinaryForm, form_compose, form_divexact, form_gcd, form_mul
from .groups import GroupKind, MoebiusElement, classify_group, projective_distance
from .linalg import Matrix
from .spaces import LinearSystem, ProjectionCenter

__all__ = [
    "RationalSelfMap", "DeckSet", "OracleReport", "OracleError",
    "compose_projection", "deck_transformations", "is_galois",
]


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class RationalSelfMap:
    """A degree-e rational self-map of P^1 given by a coprime pair of forms."""

    p: BinaryForm
    q: BinaryForm

    def __post_init__(self):
        if self.p.degree != self.q.degree:
            raise OracleError("map components must have equal degree")
        if self.p.degree < 1:
            raise OracleError("map degree must be at least 1")
        if form_gcd(self.p, self.q).degree != 0:
            raise OracleError("map components must be coprime")

    @property
    def degree(self) -> int:
        return self.p.degree


@dataclass
class DeckSet:
    """Moebius maps found to commute with a rational self-map.

    `elements` are numeric 2x2 matrices (unit Frobenius norm); `exact` holds
    the certified exact element where rational reconstruction succeeded.
    Always contains the identity.  A set smaller than the map degree means
    the map is not Galois; a larger one means the accept tolerance let
    spurious candidates through (a warning is emitted when that happens).
    """

    elements: list[np.ndarray]
    residuals: list[float]
    exact: list[MoebiusElement | None]
    closed: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def residual_max(self) -> float:
        return max(self.residuals, default=0.0)


@dataclass(frozen=True)
class OracleReport:
    galois: bool
    degree: int
    deck_order: int
    kind: GroupKind | None
    residual_max: float
    seed: int

    def to_json(self) -> dict:
        return {
            "galois": self.galois,
            "degree": self.degree,
            "deck_order": self.deck_order,
            "kind": self.kind.label() if self.kind is not None else None,
            "residual_max": self.residual_max,
            "seed": self.seed,
        }


def compose_projection(center: ProjectionCenter, system: LinearSystem) -> RationalSelfMap:
    """pi_W o phi as a coprime pair: pull the pencil back through V and strip
    the common base divisor."""
    if center.pencil.cols != len(system.basis):
        raise OracleError("center pencil width does not match the linear system")
    p0 = system.combine(center.pencil.row(0))
    p1 = system.combine(center.pencil.row(1))
    g = form_gcd(p0, p1)
    p = form_divexact(p0, g)
    q = form_divexact(p1, g)
    if p.degree == 0:
        raise OracleError("projection undefined on curve")
    return RationalSelfMap(p, q)


def deck_transformations(f: RationalSelfMap, tol: float = 1e-8,
                         tol_dedupe: float = 1e-6, seed: int = 0) -> DeckSet:
    """All Moebius maps sigma with f o sigma = f, up to the given tolerances."""
    rng = random.Random(seed)
    e = f.degree
    fibers = _generic_fibers(f, e, rng, tol_dedupe)
    base = np.array([fib[0] for fib in fibers])  # 3 x 2
    to_std_a = _moebius_to_standard(base)
    pc = f.p.complex_coeffs()
    qc = f.q.complex_coeffs()

    sigmas = _candidate_maps(fibers, to_std_a)
    residuals = _coefficient_residuals(sigmas, pc, qc, e)
    # near-misses inherit fiber-root noise amplified by the map's conditioning;
    # a few Gauss-Newton steps on the residual system push true decks to the
    # numeric floor while leaving non-deck candidates out at O(1)
    near = np.nonzero(residuals < 1e-2)[0]
    for idx in near:
        sigmas[idx] = _polish_sigma(sigmas[idx], pc, qc)
    if len(near):
        residuals[near] = _coefficient_residuals(sigmas[near], pc, qc, e)
        for idx in near:
            # badly conditioned candidates can pin the float64 residual above
            # the tolerance even at a true deck; settle those in big-float
            if tol <= residuals[idx] < 1e-2:
                refined, certified = _refine_extended(sigmas[idx], f)
                if certified < residuals[idx]:
                    sigmas[idx] = refined
                    residuals[idx] = certified
    keep = residuals < tol

    elements: list[np.ndarray] = [np.eye(2, dtype=complex) / np.sqrt(2.0)]
    resids: list[float] = [0.0]
    merges = 0
    order_accept = np.argsort(residuals[keep], kind="stable")
    kept_sigmas = sigmas[keep]
    kept_resids = residuals[keep]
    for idx in order_accept:
        sig = kept_sigmas[idx]
        sig = sig / np.linalg.norm(sig)
        dists = [projective_distance(sig, el) for el in elements]
        if min(dists) < tol_dedupe:
            merges += 1
            continue
        elements.append(sig)
        resids.append(float(kept_resids[idx]))
    if merges > 1:
        warnings.warn(
            f"deck dedupe merged {merges - 1} unexpected near-duplicate candidates; "
            "the accept tolerance may be loose", RuntimeWarning)
    if len(elements) > e:
        warnings.warn(
            f"deck set of order {len(elements)} exceeds the map degree {e}; "
            "the accept tolerance admits spurious candidates", RuntimeWarning)

    exact = [_certify_exact(sig, f) for sig in elements]
    for i, cert in enumerate(exact):
        if cert is not None:
            resids[i] = 0.0
    closed = _closed_under_product(elements, max(tol_dedupe, 1e-9))
    if not closed:
        warnings.warn("deck set is not closed under composition within tolerance",
                      RuntimeWarning)
    return DeckSet(elements, resids, exact, closed)


def is_galois(center: ProjectionCenter, system: LinearSystem, *, seed: int = 0,
              tol_accept: float = 1e-8, tol_dedupe: float = 1e-6) -> OracleReport:
    """Compose the projection and decide Galois-ness by deck count.

    In characteristic zero the extension is Galois iff the deck group order
    equals the map degree; degree-1 maps are Galois with the trivial group.
    """
    f = compose_projection(center, system)
    e = f.degree
    deck = deck_transformations(f, tol=tol_accept, tol_dedupe=tol_dedupe, seed=seed)
    galois = deck.order == e
    kind: GroupKind | None = None
    if galois:
        if e == 1:
            kind = GroupKind.cyclic(1)
        else:
            kind = classify_group(deck.elements, tol=tol_dedupe)
    return OracleReport(galois, e, deck.order, kind, deck.residual_max, seed)


# ---------------------------------------------------------------------------
# fiber machinery

def _generic_fibers(f: RationalSelfMap, e: int, rng, sep: float) -> list[np.ndarray]:
    """Three fibers of e pairwise-distinct points each, as (e, 2) unit arrays,
    sorted by the fixed total order (real part, then imaginary part)."""
    from .forms import roots_numeric

    for _ in range(10):
        targets = []
        while len(targets) < 3:
            t = (rng.randint(-40, 40), rng.randint(1, 40))
            if all(t[0] * u[1] != t[1] * u[0] for u in targets):
                targets.append(t)
        fibers = []
        for t0, t1 in targets:
            combo = f.p.scale(t1) - f.q.scale(t0)
            if combo.is_zero():
                break
            pts = roots_numeric(combo)
            if len(pts) != e:
                break
            arr = np.array([[pt.a, pt.b] for pt in pts], dtype=complex)
            if _min_pairwise_distance(arr) <= sep:
                break
            fibers.append(arr)
        if len(fibers) == 3:
            return fibers
    raise OracleError("non-generic targets")


def _min_pairwise_distance(points: np.ndarray) -> float:
    n = len(points)
    if n == 1:
        return np.inf
    best = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            d = abs(points[i, 0] * points[j, 1] - points[i, 1] * points[j, 0])
            best = min(best, d)
    return best


def _moebius_to_standard(pts: np.ndarray) -> np.ndarray:
    """The 2x2 map sending pts[0], pts[1], pts[2] to [0:1], [1:0], [1:1]."""
    p0, p1, p2 = pts
    raw = np.array([[-p0[1], p0[0]], [p1[1], -p1[0]]], dtype=complex)
    d02 = p0[0] * p2[1] - p0[1] * p2[0]
    d21 = p2[0] * p1[1] - p2[1] * p1[0]
    return np.array([raw[0] / d02, raw[1] / d21])


def _candidate_maps(fibers: list[np.ndarray], to_std_a: np.ndarray) -> np.ndarray:
    """All sigma with sigma(a_i) = b_i over triples (b0, b1, b2), shape (K,2,2)."""
    f0, f1, f2 = fibers
    e = len(f0)
    triples = np.array(list(itertools.product(range(e), repeat=3)))
    b0 = f0[triples[:, 0]]
    b1 = f1[triples[:, 1]]
    b2 = f2[triples[:, 2]]
    # rows of M_b for each triple, as in _moebius_to_standard
    row0 = np.stack([-b0[:, 1], b0[:, 0]], axis=1)
    row1 = np.stack([b1[:, 1], -b1[:, 0]], axis=1)
    d02 = b0[:, 0] * b2[:, 1] - b0[:, 1] * b2[:, 0]
    d21 = b2[:, 0] * b1[:, 1] - b2[:, 1] * b1[:, 0]
    with np.errstate(all="ignore"):
        row0 = row0 / d02[:, None]
        row1 = row1 / d21[:, None]
        mb = np.stack([row0, row1], axis=1)  # (K, 2, 2)
        det = mb[:, 0, 0] * mb[:, 1, 1] - mb[:, 0, 1] * mb[:, 1, 0]
        inv = np.empty_like(mb)
        inv[:, 0, 0] = mb[:, 1, 1]
        inv[:, 0, 1] = -mb[:, 0, 1]
        inv[:, 1, 0] = -mb[:, 1, 0]
        inv[:, 1, 1] = mb[:, 0, 0]
        inv = inv / det[:, None, None]
        sigmas = inv @ to_std_a[None, :, :]
        # unit-determinant normalization: any finite-order deck element then
        # rescales the map components by a unimodular factor, so composing
        # with it cannot cancel catastrophically in floating point
        sdet = sigmas[:, 0, 0] * sigmas[:, 1, 1] - sigmas[:, 0, 1] * sigmas[:, 1, 0]
        sigmas = sigmas / np.sqrt(sdet)[:, None, None]
    return sigmas


def _coefficient_residuals(sigmas: np.ndarray, pc: np.ndarray, qc: np.ndarray,
                           e: int) -> np.ndarray:
    """Normalized sup-norm of the coefficients of (p o sigma) q - (q o sigma) p."""
    p_sig = _batched_compose(pc, sigmas)
    q_sig = _batched_compose(qc, sigmas)
    lhs = _batched_conv(p_sig, qc)
    rhs = _batched_conv(q_sig, pc)
    num = np.max(np.abs(lhs - rhs), axis=1)
    scale = np.maximum(
        np.max(np.abs(p_sig), axis=1) * np.max(np.abs(qc)),
        np.max(np.abs(q_sig), axis=1) * np.max(np.abs(pc)),
    )
    with np.errstate(all="ignore"):
        res = num / scale
    res[~np.isfinite(res)] = np.inf
    return res


def _batched_compose(coeffs: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    """coeffs of f o sigma for every sigma: Horner over the two linear forms."""
    k = sigmas.shape[0]
    d = len(coeffs) - 1
    x0, x1 = sigmas[:, 0, 0], sigmas[:, 0, 1]
    y0, y1 = sigmas[:, 1, 0], sigmas[:, 1, 1]
    res = np.full((k, 1), coeffs[0], dtype=complex)
    ypow = np.ones((k, 1), dtype=complex)
    for i in range(1, d + 1):
        ypow = _mul_linear(ypow, y0, y1)
        res = _mul_linear(res, x0, x1)
        if coeffs[i] != 0:
            res = res + coeffs[i] * ypow
    return res


def _mul_linear(arr: np.ndarray, c0: np.ndarray, c1: np.ndarray) -> np.ndarray:
    k, length = arr.shape
    out = np.zeros((k, length + 1), dtype=complex)
    out[:, :length] += arr * c0[:, None]
    out[:, 1:] += arr * c1[:, None]
    return out


def _batched_conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    k, la = a.shape
    lb = len(b)
    out = np.zeros((k, la + lb - 1), dtype=complex)
    for j in range(lb):
        if b[j] != 0:
            out[:, j:j + la] += a * b[j]
    return out


def _polish_sigma(sigma: np.ndarray, pc: np.ndarray, qc: np.ndarray,
                  iterations: int = 5) -> np.ndarray:
    """Gauss-Newton refinement of a candidate on the coefficient residual.

    The residual r(sigma) = coeffs((p o sigma) q - (q o sigma) p) is
    holomorphic in the matrix entries; its Jacobian is assembled analytically
    from the composed derivative forms, which keeps the step accurate all the
    way to the numeric floor.  The residual is also homogeneous in sigma, so
    the gauge is fixed by freezing the largest entry each step."""
    e = len(pc) - 1
    arange = np.arange(e, dtype=float)
    pdx = pc[:-1] * (e - arange)
    pdy = pc[1:] * (arange + 1)
    qdx = qc[:-1] * (e - arange)
    qdy = qc[1:] * (arange + 1)
    zero = np.zeros(1, dtype=complex)

    def resid(mat: np.ndarray) -> tuple[np.ndarray, float]:
        ps = _batched_compose(pc, mat[None, :, :])[0]
        qs = _batched_compose(qc, mat[None, :, :])[0]
        scale = max(np.max(np.abs(ps)) * np.max(np.abs(qc)),
                    np.max(np.abs(qs)) * np.max(np.abs(pc)))
        return np.convolve(ps, qc) - np.convolve(qs, pc), scale

    s = _unit_det(sigma)
    if s is None:
        return sigma
    for _ in range(iterations):
        r0, scale = resid(s)
        if not np.isfinite(scale) or scale == 0 or np.max(np.abs(r0)) < 1e-15 * scale:
            break
        u_p = _batched_compose(pdx, s[None, :, :])[0]
        w_p = _batched_compose(pdy, s[None, :, :])[0]
        u_q = _batched_compose(qdx, s[None, :, :])[0]
        w_q = _batched_compose(qdy, s[None, :, :])[0]
        # multiplication by x appends a zero coefficient, by y prepends one
        partials = [
            (np.concatenate([u_p, zero]), np.concatenate([u_q, zero])),
            (np.concatenate([zero, u_p]), np.concatenate([zero, u_q])),
            (np.concatenate([w_p, zero]), np.concatenate([w_q, zero])),
            (np.concatenate([zero, w_p]), np.concatenate([zero, w_q])),
        ]
        jac_full = np.stack(
            [np.convolve(dp, qc) - np.convolve(dq, pc) for dp, dq in partials], axis=1)
        flat = s.reshape(-1).copy()
        pivot = int(np.argmax(np.abs(flat)))
        cols = [k for k in range(4) if k != pivot]
        delta, *_ = np.linalg.lstsq(jac_full[:, cols], -r0, rcond=None)
        if not np.all(np.isfinite(delta)):
            return sigma
        for col, k in enumerate(cols):
            flat[k] += delta[col]
        renormalized = _unit_det(flat.reshape(2, 2))
        if renormalized is None:
            return sigma
        s = renormalized
    return s


def _unit_det(mat: np.ndarray) -> np.ndarray | None:
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    root = np.sqrt(det)
    if not np.isfinite(root) or root == 0:
        return None
    out = mat / root
    return out if np.all(np.isfinite(out)) else None


def _refine_extended(sigma: np.ndarray, f: RationalSelfMap,
                     dps: int = 50, iterations: int = 4) -> tuple[np.ndarray, float]:
    """Big-float Gauss-Newton for gray-zone candidates.

    When the conjugating geometry is skewed enough, the float64 residual of a
    genuine deck element bottoms out above the accept tolerance.  Re-running
    the same Newton iteration with 50-digit arithmetic (coefficients rebuilt
    from the exact forms, not from their float64 images) settles the verdict:
    a true deck drops to ~1e-40, a spurious candidate stays put."""
    import mpmath as mp

    with mp.workdps(dps):
        pc = [_cyc_to_mpc(c, mp) for c in f.p.coeffs]
        qc = [_cyc_to_mpc(c, mp) for c in f.q.coeffs]
        e = f.degree
        flat = [mp.mpc(complex(z)) for z in sigma.reshape(-1)]
        flat = _mp_unit_det(flat, mp)
        if flat is None:
            return sigma, np.inf
        pdx = [pc[i] * (e - i) for i in range(e)]
        pdy = [pc[i + 1] * (i + 1) for i in range(e)]
        qdx = [qc[i] * (e - i) for i in range(e)]
        qdy = [qc[i + 1] * (i + 1) for i in range(e)]
        residual = mp.inf
        for _ in range(iterations):
            ps = _mp_compose(pc, flat, mp)
            qs = _mp_compose(qc, flat, mp)
            rvec = [a - b for a, b in zip(_mp_conv(ps, qc, mp), _mp_conv(qs, pc, mp))]
            scale = max(max(abs(v) for v in ps) * max(abs(v) for v in qc),
                        max(abs(v) for v in qs) * max(abs(v) for v in pc))
            if scale == 0:
                return sigma, np.inf
            residual = max(abs(v) for v in rvec) / scale
            if residual < mp.mpf(10) ** (5 - dps):
                break
            cols_parts = []
            for dco_p, dco_q, mul_y in ((pdx, qdx, False), (pdx, qdx, True),
                                        (pdy, qdy, False), (pdy, qdy, True)):
                dp = _mp_compose(dco_p, flat, mp)
                dq = _mp_compose(dco_q, flat, mp)
                if mul_y:
                    dp = [mp.mpc(0)] + dp
                    dq = [mp.mpc(0)] + dq
                else:
                    dp = dp + [mp.mpc(0)]
                    dq = dq + [mp.mpc(0)]
                cols_parts.append([a - b for a, b in zip(_mp_conv(dp, qc, mp),
                                                         _mp_conv(dq, pc, mp))])
            # column order built above is (d/ds00, d/ds01, d/ds10, d/ds11)
            pivot = max(range(4), key=lambda k: abs(flat[k]))
            cols = [k for k in range(4) if k != pivot]
            rows = len(rvec)
            jac = mp.matrix(rows, 3)
            rhs = mp.matrix(rows, 1)
            for r in range(rows):
                rhs[r] = -rvec[r]
                for ci, k in enumerate(cols):
                    jac[r, ci] = cols_parts[k][r]
            try:
                delta = mp.lu_solve(jac.H * jac, jac.H * rhs)
            except ZeroDivisionError:
                break
            for ci, k in enumerate(cols):
                flat[k] = flat[k] + delta[ci]
            flat = _mp_unit_det(flat, mp)
            if flat is None:
                return sigma, np.inf
        out = np.array([[complex(flat[0]), complex(flat[1])],
                        [complex(flat[2]), complex(flat[3])]])
        return out, float(residual)


def _mp_unit_det(flat: list, mp) -> list | None:
    det = flat[0] * flat[3] - flat[1] * flat[2]
    if det == 0:
        return None
    root = mp.sqrt(det)
    return [v / root for v in flat]


def _mp_compose(co: list, flat: list, mp) -> list:
    s00, s01, s10, s11 = flat
    res = [co[0]]
    ypow = [mp.mpc(1)]
    for i in range(1, len(co)):
        ypow = _mp_mul_linear(ypow, s10, s11, mp)
        res = _mp_mul_linear(res, s00, s01, mp)
        if co[i] != 0:
            res = [r + co[i] * y for r, y in zip(res, ypow)]
    return res


def _mp_mul_linear(arr: list, c0, c1, mp) -> list:
    out = [mp.mpc(0)] * (len(arr) + 1)
    for j, a in enumerate(arr):
        out[j] += a * c0
        out[j + 1] += a * c1
    return out


def _mp_conv(a: list, b: list, mp) -> list:
    out = [mp.mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != 0:
            for j, y in enumerate(b):
                if y != 0:
                    out[i + j] += x * y
    return out


def _cyc_to_mpc(value, mp):
    if value.n == 1:
        frac = value.co[0]
        return mp.mpc(mp.mpf(frac.numerator) / frac.denominator)
    root = mp.expjpi(mp.mpf(2) / value.n)
    total = mp.mpc(0)
    power = mp.mpc(1)
    for coord in value.co:
        if coord:
            total += (mp.mpf(coord.numerator) / coord.denominator) * power
        power *= root
    return total


# ---------------------------------------------------------------------------
# exact certification

def _certify_exact(sigma: np.ndarray, f: RationalSelfMap) -> MoebiusElement | None:
    """Try to recognize sigma as a rational matrix (denominators <= 1000) and
    re-check f o sigma proportional to f exactly; None if either step fails."""
    pivot = np.argmax(np.abs(sigma))
    normalized = sigma.reshape(-1) / sigma.reshape(-1)[pivot]
    entries = []
    for z in normalized:
        if abs(z.imag) > 1e-9:
            return None
        cand = Fraction(z.real).limit_denominator(1000)
        if abs(cand - z.real) > 1e-9:
            return None
        entries.append(cand)
    mat = Matrix([entries[:2], entries[2:]])
    if mat.det().is_zero():
        return None
    element = MoebiusElement(mat)
    lhs = form_mul(form_compose(f.p, mat), f.q)
    rhs = form_mul(form_compose(f.q, mat), f.p)
    if lhs != rhs:
        return None
    return element


def _closed_under_product(elements: list[np.ndarray], tol: float) -> bool:
    k = len(elements)
    if k == 1:
        return True
    mats = np.stack(elements)
    flat = mats.reshape(k, 4)
    flat = flat / np.linalg.norm(flat, axis=1)[:, None]
    prods = np.einsum("aij,bjk->abik", mats, mats).reshape(k * k, 4)
    prods = prods / np.linalg.norm(prods, axis=1)[:, None]
    # worst sine distance of any product to the nearest member
    cos_best = np.abs(prods @ flat.conj().T).max(axis=1)
    worst = np.sqrt(max(0.0, 1.0 - float(np.min(cos_best)) ** 2))
    return worst <= tol
