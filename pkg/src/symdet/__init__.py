"""Exact-arithmetic polar-curve multiplicities for symmetric determinantal
singularities: sparse rational polynomials, Groebner/Mora standard bases,
local colengths, and the mixed/total polar degree formulas."""

from .errors import (
    AllTrialsNotFiniteError,
    FieldMismatchError,
    InputError,
    NotFiniteError,
    OddSumError,
    PolyParseError,
    ResourceExhaustedError,
    SingularMatrixError,
    SymdetError,
)
from .matrices import (
    IdealSpec,
    SymPolyMatrix,
    a_l_ideal,
    column_condition_matrix,
    congruence,
    expected_codim,
    kernel_locus_ideal,
    minors,
    poly_matrix_det,
    row_condition_matrix,
    sym_matrix_build,
    sym_matrix_from_json,
)
from .polar import (
    CodimReport,
    GenericityOptions,
    MixedPolarReport,
    PolarCase,
    PolarDegreeReport,
    check_codim,
    genericity_stabilize,
    mixed_polar_degree,
    polar_degree_hypersurface,
    polar_is_empty,
    total_polar_degree_corank2,
)
from .poly_core import (
    DEFAULT_PRIME,
    Monomial,
    MonomialOrder,
    Polynomial,
    PrimeField,
    QQ,
    Rationals,
    monomial_cmp,
    poly_parse,
    substitute_linear,
)
from .standard_basis import (
    ColengthResult,
    StandardBasis,
    buchberger,
    colength_local,
    colength_prime_consistent,
    colength_truncated_oracle,
    ideal_membership,
    is_zero_dimensional_local,
    mora_normal_form,
    normal_form,
    spolys_reduce_to_zero,
    standard_basis_local,
)

__version__ = "0.1.0"

__all__ = [
    "AllTrialsNotFiniteError",
    "CodimReport",
    "ColengthResult",
    "DEFAULT_PRIME",
    "FieldMismatchError",
    "GenericityOptions",
    "IdealSpec",
    "InputError",
    "Monomial",
    "MonomialOrder",
    "MixedPolarReport",
    "NotFiniteError",
    "OddSumError",
    "PolarCase",
    "PolarDegreeReport",
    "PolyParseError",
    "Polynomial",
    "PrimeField",
    "QQ",
    "Rationals",
    "ResourceExhaustedError",
    "SingularMatrixError",
    "StandardBasis",
    "SymPolyMatrix",
    "SymdetError",
    "a_l_ideal",
    "buchberger",
    "check_codim",
    "colength_local",
    "colength_prime_consistent",
    "colength_truncated_oracle",
    "column_condition_matrix",
    "congruence",
    "expected_codim",
    "genericity_stabilize",
    "ideal_membership",
    "is_zero_dimensional_local",
    "kernel_locus_ideal",
    "minors",
    "mixed_polar_degree",
    "monomial_cmp",
    "mora_normal_form",
    "normal_form",
    "polar_degree_hypersurface",
    "polar_is_empty",
    "poly_matrix_det",
    "poly_parse",
    "row_condition_matrix",
    "spolys_reduce_to_zero",
    "standard_basis_local",
    "substitute_linear",
    "sym_matrix_build",
    "sym_matrix_from_json",
    "total_polar_degree_corank2",
]
