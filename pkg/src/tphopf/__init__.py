"""Exact rational engine for Hopf algebras, transposed Poisson algebras and
transposed Poisson (A,H)-Hopf modules."""

from .errors import (
    AxiomError,
    BijectivityError,
    DerivationError,
    HypothesisError,
    InputError,
    ShapeError,
    TheoremViolation,
    TPHopfError,
    WellDefinednessError,
)
from .exactlin import Matrix, Subspace, TensorIndex, kron, solve_linear_system
from .fundamental import adjunction_psi, alpha, beta_and_certify, check_conditions, tensor_over_B
from .hopfcore import (
    AlgebraData,
    CoalgebraData,
    HopfAlgebraData,
    cyclic_group_algebra,
    sweedler_h4,
    truncated_polynomial,
    verify_algebra,
    verify_coalgebra,
    verify_hopf,
)
from .invariants import (
    coinvariants,
    colinear_map,
    compute_B,
    ideal_closure,
    is_field,
    lambda_map,
    lie_invariants,
    projection_p,
)
from .repcat import (
    ComoduleData,
    ComoduleTPAlgebra,
    ModuleData,
    gamma_iso,
    hom_space,
    induce_tensor_H,
    verify_comodule,
    verify_comodule_tp_algebra,
    verify_tp_hopf_module,
    verify_tp_module,
)
from .report import Report, Witness
from .tpalg import TPAlgebraData, derivation_bracket, tp_center, verify_tp_algebra

__version__ = "0.1.0"
