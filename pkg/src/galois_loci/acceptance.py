"""The acceptance suite: eight structural criteria run end to end.

Each criterion is a self-contained check combining the exact construction
route with the independent numeric oracle; `run_all` executes them with one
seeded configuration and reports one pass/fail line worth of data apiece.
The CLI selftest command and the pytest acceptance module both drive this.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .config import RunConfig
from .families import (catalog_kinds_up_to, check_factorization, enumerate_families,
                       family_sample, intermediate_factorization, random_conjugator,
                       random_section)
from .forms import BinaryForm, form_gcd
from .groups import (GroupKind, GroupSpec, conjugated_pair, generate_group,
                     standard_generators, standard_invariant_pair, verify_invariance)
from .linalg import Matrix, kernel_basis, row_space_equal
from .oracle import compose_projection, is_galois
from .spaces import LinearSystem, center_from_section, galois_space, plucker

__all__ = ["CriterionResult", "run_all", "run_criterion", "CRITERIA"]


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.index}: {self.name} ({self.seconds:.2f}s) {self.detail}"


def _criterion_1(config: RunConfig) -> tuple[bool, str]:
    """Example-1 partition of P^2 at d = 2: on-conic points project with degree 1,
    everything else is Galois of degree 2 with a deck group of order exactly 2."""
    system = LinearSystem.complete(2)
    grid = [Fraction(-5, 2) + Fraction(k, 4) for k in range(21)]
    points = [(a, b, Fraction(1)) for a in grid for b in grid]
    points += [(Fraction(1), Fraction(k), Fraction(0)) for k in range(20)]
    points.append((Fraction(0), Fraction(1), Fraction(0)))
    failures = 0
    for z in points:
        rows = kernel_basis(Matrix([z]))
        center = _center_from_rows(2, rows)
        report = is_galois(center, system, seed=config.seed,
                           tol_accept=config.tol_accept, tol_dedupe=config.tol_dedupe)
        on_conic = z[0] * z[2] == z[1] * z[1]
        if on_conic:
            ok = report.degree == 1 and report.galois
        else:
            ok = report.degree == 2 and report.galois and report.deck_order == 2
        if not ok:
            failures += 1
    return failures == 0, f"{len(points)} centers, {failures} exceptions"


def _center_from_rows(degree, rows):
    from .spaces import ProjectionCenter
    return ProjectionCenter(degree, Matrix(rows))


def _criterion_2(config: RunConfig) -> tuple[bool, str]:
    """Round-trip bijection for every catalog kind with m <= d, d in 2..8:
    composed pencil = conjugated pencil span, extracted gcd = the section,
    oracle confirms the constructing kind."""
    rng = random.Random(config.seed)
    checked = 0
    failures = []
    for d in range(2, 9):
        system = LinearSystem.complete(d)
        for kind in catalog_kinds_up_to(d):
            m = kind.order
            # over the complete system the section space does not depend on
            # the conjugator, so solve it once per (kind, d)
            basis = galois_space(standard_invariant_pair(kind), system)
            if len(basis) != d - m + 1:
                failures.append(f"{kind.label()} d={d}: space dim {len(basis)}")
                continue
            for _ in range(10):
                theta = random_conjugator(rng)
                spec = GroupSpec(kind, theta)
                pair = conjugated_pair(spec)
                for _ in range(5):
                    section = _random_combination(rng, basis)
                    center = center_from_section(pair, section, system)
                    p0 = system.combine(center.pencil.row(0))
                    p1 = system.combine(center.pencil.row(1))
                    g = form_gcd(p0, p1)
                    self_map = compose_projection(center, system)
                    pencil_ok = row_space_equal(
                        Matrix([self_map.p.coeffs, self_map.q.coeffs]),
                        Matrix([pair.A.coeffs, pair.B.coeffs]))
                    gcd_ok = g.proportional_to(section)
                    report = is_galois(center, system, seed=config.seed,
                                       tol_accept=config.tol_accept,
                                       tol_dedupe=config.tol_dedupe)
                    oracle_ok = (report.galois and report.degree == m
                                 and report.kind == kind)
                    checked += 1
                    if not (pencil_ok and gcd_ok and oracle_ok):
                        failures.append(
                            f"{kind.label()} d={d}: pencil={pencil_ok} gcd={gcd_ok} "
                            f"oracle={report.to_json()}")
    ok = not failures
    detail = f"{checked} round trips"
    if failures:
        detail += f"; first failure: {failures[0]}"
    return ok, detail


def _random_combination(rng: random.Random, basis: list[BinaryForm]) -> BinaryForm:
    while True:
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in basis]
        if any(coeffs):
            break
    out = basis[0].scale(coeffs[0])
    for c, b in zip(coeffs[1:], basis[1:]):
        out = out + b.scale(c)
    if out.is_zero():
        return _random_combination(rng, basis)
    return out


def _criterion_3(config: RunConfig) -> tuple[bool, str]:
    """Dimension law dim galois_space = d - m + 1 on complete systems for all
    catalog kinds with m <= d <= 12 (tetrahedral enters at d = 12)."""
    checked = 0
    for d in range(1, 13):
        system = LinearSystem.complete(d)
        for kind in catalog_kinds_up_to(d):
            pair = standard_invariant_pair(kind)
            dim = len(galois_space(pair, system))
            if dim != d - kind.order + 1:
                return False, f"{kind.label()} at d={d}: dim {dim} != {d - kind.order + 1}"
            checked += 1
    return True, f"{checked} (kind, d) pairs, all exact"


def _criterion_4(config: RunConfig) -> tuple[bool, str]:
    """Embedding injectivity at d = 5: non-proportional sections give distinct
    normalized Plucker points, 50 pairs per family with a moving fiber."""
    rng = random.Random(config.seed)
    d = 5
    system = LinearSystem.complete(d)
    checked = 0
    for kind in catalog_kinds_up_to(d):
        pair = standard_invariant_pair(kind)
        basis = galois_space(pair, system)
        if len(basis) < 2:
            continue  # a point fiber has no non-proportional pairs
        valid = 0
        while valid < config.sample_count:
            s1 = _random_combination(rng, basis)
            s2 = _random_combination(rng, basis)
            if s1.proportional_to(s2):
                continue
            p1 = plucker(center_from_section(pair, s1, system))
            p2 = plucker(center_from_section(pair, s2, system))
            valid += 1
            checked += 1
            if p1 == p2:
                return False, f"{kind.label()}: sections {s1!r} vs {s2!r} collide"
    return True, f"{checked} non-proportional pairs, all distinct"


def _criterion_5(config: RunConfig) -> tuple[bool, str]:
    """Families of non-conjugate groups stay disjoint at d = 6: sampled centers
    from different (kind, m) never share a Plucker point."""
    rng = random.Random(config.seed)
    d = 6
    system = LinearSystem.complete(d)
    seen: dict = {}
    samples = 0
    for kind in catalog_kinds_up_to(d):
        for _ in range(config.sample_count):
            theta = random_conjugator(rng)
            spec = GroupSpec(kind, theta)
            pair = conjugated_pair(spec)
            section = _random_combination(rng, galois_space(pair, system))
            point = plucker(family_sample(spec, section, system))
            key = point.key()
            samples += 1
            if key in seen and seen[key] != kind:
                return False, f"{seen[key].label()} and {kind.label()} share {key[:3]}..."
            seen[key] = kind
    return True, f"{samples} sampled centers across {len(catalog_kinds_up_to(d))} families"


def _criterion_6(config: RunConfig) -> tuple[bool, str]:
    """Intermediate factorization: C . M_s^T = R exactly and gcd(A, B) = 1 for
    all catalog kinds with m <= d <= 8, five random sections each."""
    rng = random.Random(config.seed)
    checked = 0
    for d in range(2, 9):
        system = LinearSystem.complete(d)
        for kind in catalog_kinds_up_to(d):
            pair = standard_invariant_pair(kind)
            for _ in range(5):
                section = random_section(rng, d - kind.order)
                report = intermediate_factorization(pair, section, system)
                checked += 1
                if not (report.identity_holds and report.intermediate_disjoint):
                    return False, f"{kind.label()} at d={d}: {report.to_json()}"
    return True, f"{checked} factorizations, all exact"


def _criterion_7(config: RunConfig) -> tuple[bool, str]:
    """Negative control at d = 4: at least 95 of 100 uniformly random rational
    centers are non-Galois, each certified by a deck set below the degree."""
    rng = random.Random(config.seed)
    d = 4
    system = LinearSystem.complete(d)
    non_galois = 0
    for trial in range(100):
        while True:
            rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(d + 1)]
                    for _ in range(2)]
            mat = Matrix(rows)
            if mat.rank() == 2:
                break
        center = _center_from_rows(d, rows)
        report = is_galois(center, system, seed=config.seed + trial,
                           tol_accept=config.tol_accept, tol_dedupe=config.tol_dedupe)
        if not report.galois:
            if report.deck_order >= report.degree:
                return False, f"trial {trial}: non-Galois but deck {report.deck_order} >= degree"
            non_galois += 1
    return non_galois >= 95, f"{non_galois}/100 non-Galois"


def _criterion_8(config: RunConfig) -> tuple[bool, str]:
    """Catalog self-certification: the standard pencils pass verify_invariance
    and the standard models close up at exactly the catalog orders."""
    kinds = ([GroupKind.cyclic(m) for m in (1, 2, 3, 4, 5, 6, 7, 8, 10, 12)]
             + [GroupKind.dihedral(m) for m in (2, 3, 4, 5, 6)]
             + [GroupKind.tetrahedral(), GroupKind.octahedral(), GroupKind.icosahedral()])
    for kind in kinds:
        gens = standard_generators(kind)
        group = generate_group(gens, limit=2 * kind.order + 2)
        if len(group) != kind.order:
            return False, f"{kind.label()}: closure has {len(group)} elements"
        pair = standard_invariant_pair(kind)
        if not verify_invariance(pair, gens):
            return False, f"{kind.label()}: invariance check failed"
    return True, f"{len(kinds)} kinds certified (orders 1..60)"


CRITERIA: list[tuple[int, str, Callable[[RunConfig], tuple[bool, str]], float]] = [
    (1, "example-1 partition of P^2 at d=2", _criterion_1, 10.0),
    (2, "round-trip bijection (construction vs oracle)", _criterion_2, 60.0),
    (3, "dimension law for Galois spaces", _criterion_3, None),
    (4, "Plucker embedding injectivity at d=5", _criterion_4, None),
    (5, "cross-family disjointness at d=6", _criterion_5, None),
    (6, "intermediate factorization through degree-m Veronese", _criterion_6, None),
    (7, "negative control: random d=4 centers", _criterion_7, 120.0),
    (8, "catalog self-certification", _criterion_8, None),
]


def run_criterion(index: int, config: RunConfig) -> CriterionResult:
    for idx, name, fn, limit in CRITERIA:
        if idx == index:
            start = time.perf_counter()
            passed, detail = fn(config)
            elapsed = time.perf_counter() - start
            if limit is not None and elapsed >= limit:
                passed = False
                detail += f"; exceeded {limit:.0f}s budget"
            return CriterionResult(idx, name, passed, detail, elapsed)
    raise ValueError(f"no criterion {index}")


def run_all(config: RunConfig | None = None) -> list[CriterionResult]:
    config = config or RunConfig()
    return [run_criterion(idx, config) for idx, *_ in CRITERIA]
