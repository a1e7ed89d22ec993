"""Quasi-polynomial functions on finite chains: representation, axioms, recognition, verification."""

from .axioms import Axiom, AxiomResult, check, check_all, holds_batch, replay
from .chain import ChainError, ChainTuple, FiniteChain, Permutation, is_comonotonic, med3
from .classify import (
    ClassReport,
    ConstructionFailed,
    Factorization,
    NotQuasiPolynomial,
    Recognition,
    Refused,
    as_quasi_sugeno,
    as_quasi_term,
    as_quasi_weighted_max,
    as_quasi_weighted_min,
    classify,
    factorizations,
    is_quasi_polynomial,
    maxitive_decomposition,
    minitive_decomposition,
    weighted_max,
    weighted_min,
)
from .formats import FormatError, load, parse, save, serialize
from .poly import (
    NotIsotone,
    NotPolynomial,
    SetFunction,
    canonical_alpha,
    canonical_beta,
    cnf_eval,
    dnf_eval,
    extend_from_vertices,
    is_polynomial,
    median_eval,
    simplex_eval,
    sugeno_normalize,
)
from .table import (
    DiscreteFunction,
    UnaryMap,
    VertexFunction,
    clamp,
    compose_unary,
    diagonal,
    dualize,
    is_nondecreasing,
    vertex_restriction,
)
from .verify import (
    BudgetExceeded,
    Theorem,
    Universe,
    VerificationReport,
    count_classes,
    enumerate_functions,
    random_function,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
