"""Finite based rings: validation, Frobenius-Perron invariants, structure and classification."""
from .errors import *  # noqa: F401,F403
from .ring import (FusionRing, Violation, ViolationKind, load_ring, parse_ring, ring_from_tensor,
                   serialize_ring, tensor_decompose, multiplicity, validate_ring)
from .fpdim import (DimVector, certify_integer_dim, fp_dim_vector, fpdim_ring, is_integral,
                    is_weakly_integral)
from .structure import (GradingPartition, NilpotencyChain, Subring, TypeVector, adjoint_subring,
                        find_subrings_of_type, invertibles, nichols_richmond, nilpotency_chain,
                        stabilizer, subring_generated, type_of, universal_grading, xxstar_check)
from .typeenum import (PRESETS, ConstraintSet, DiophantineProblem, enumerate_types,
                       filter_types, solve_diophantine)
from .modular import SMatrixData, check_all, check_column_orthogonality, check_norm_identity, \
    divisibility_test, parse_smatrix
from .rules import Outcome, Verdict, classify_dimension, classify_ring, factorize
from .report import Report

__version__ = "0.1.0"
