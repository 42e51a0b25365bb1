"""Symmetric polynomials in the monomial basis and generators of truncated symmetric ideals."""

from .field import Field, QQ, GF, is_prime, lucas_binomial
from .ideal import (
    GeneratorEntry,
    GeneratorSpec,
    VerificationReport,
    conjecture_generators,
    graded_target_basis,
    ideal_graded_span,
    is_truncation_member,
    theorem_generators,
    verify_conjecture,
    verify_theorem,
)
from .linalg import EchelonBasis, GradedMatrix, in_span, row_reduce
from .msym import (
    MSymPoly,
    expand_to_monomials,
    from_monomial_expansion,
    msym_add,
    msym_mul,
    msym_pow,
    parse_poly,
    verify_newton_identity,
)
from .partition import (
    Partition,
    distinct_permutations,
    enumerate_partitions,
    parse_partition,
    partition_stats,
    scale_partition,
)

__version__ = "0.1.0"
