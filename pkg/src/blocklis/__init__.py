"""Exact and estimated LCS through the Block-LIS reduction."""
from .counts import (CountVector, Rational, count_vector, holder_bound, inner_product,
                     match_lower_bound_d, min_count_lower_bound)
from .errors import (BlockLisError, EstimatorError, InvalidFamilyError, InvalidInputError,
                     InvariantViolation, SizeGuardError)
from .estimator import (EstimatorParams, LcsEstimate, approximate_lcs, estimate_lcs,
                        subsample_pair)
from .oracle import dp_lcs, dp_lcs_certificate
from .reduction import (BlockSequence, OccurrenceIndex, build_block_sequence,
                        build_occurrence_index, match_count)
from .solver import (Certificate, SolverSpec, exact_block_lis, exact_solver_spec,
                     verify_certificate)
from .workbench import BenchRecord, InstanceFamily, generate, run_suite

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "BlockLisError",
    "BlockSequence",
    "Certificate",
    "CountVector",
    "EstimatorError",
    "EstimatorParams",
    "InstanceFamily",
    "InvalidFamilyError",
    "InvalidInputError",
    "InvariantViolation",
    "LcsEstimate",
    "OccurrenceIndex",
    "Rational",
    "SizeGuardError",
    "SolverSpec",
    "approximate_lcs",
    "build_block_sequence",
    "build_occurrence_index",
    "count_vector",
    "dp_lcs",
    "dp_lcs_certificate",
    "estimate_lcs",
    "exact_block_lis",
    "exact_solver_spec",
    "generate",
    "holder_bound",
    "inner_product",
    "match_count",
    "match_lower_bound_d",
    "min_count_lower_bound",
    "run_suite",
    "subsample_pair",
    "verify_certificate",
]
