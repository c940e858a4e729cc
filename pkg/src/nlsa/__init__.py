"""Exact-arithmetic toolkit for finite-dimensional n-Lie superalgebras."""

from __future__ import annotations

from .algebra import (
    NLieSuperalgebra,
    ValidationReport,
    bracket_eval,
    canonicalize_tuple,
    check_derivation,
    derivation_space,
    left_mult_operator,
    validate_algebra,
)
from .catalog import abelian, act3, brute_force_enumerate, build_catalog, direct_sum, paper_bc, vector_product
from .conformance import theorem_conformance
from .engel import condition_star, condition_star_star, engel_scan, fitting_zero_component, full_closure_nilpotent_subalgebra
from .lattice import (
    classify_subspace,
    enumerate_graded_subspaces,
    frattini_phi,
    generated_subalgebra,
    invariance_number,
    is_s_star,
    is_subinvariant,
    jacobson,
    maximal_subalgebras,
    normal_closure,
    normalizer,
)
from .linalg import GradedSubspace, LinearOperator, envelope_nilpotency, fitting_decomposition, operator_nilpotency
from .representations import (
    Representation,
    kernel_and_faithful,
    regular_representation,
    representation_from_module,
    s_star_rho_check,
    semidirect_sum,
    validate_representation,
)
from .scalars import GF, QQ, Field, Scalar, parse_field
from .series import (
    class_bound_check,
    derived_k_series,
    ideal_power_series,
    lemma_containment_check,
    mixed_power,
    nilpotency_class,
    product_space,
    quotient_algebra,
)

__version__ = "0.1.0"
