"""Exact enumeration and independent verification of Galois subspaces of
linear projections of rational normal curves."""

from .cyclotomic import CATALOG_CONDUCTORS, Cyc, zeta
from .forms import BinaryForm, form_compose, form_divexact, form_gcd, form_mul, monomial_basis, roots_numeric
from .groups import (GroupKind, GroupSpec, InvariantPair, MoebiusElement, classify_group,
                     conjugated_pair, generate_group, normalizer_dim, standard_generators,
                     standard_invariant_pair, verify_invariance)
from .linalg import Matrix, kernel_basis
from .spaces import (GaloisSection, LinearSystem, PluckerPoint, ProjectionCenter,
                     center_from_section, galois_space, meets_curve, plucker)
from .oracle import (DeckSet, OracleReport, RationalSelfMap, compose_projection,
                     deck_transformations, is_galois)
from .families import (FamilyRecord, check_factorization, enumerate_families, family_sample,
                       intermediate_factorization)
from .config import RunConfig

__version__ = "0.1.0"
