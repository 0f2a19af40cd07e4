"""Orthonormal eigenvector bases of the unitary DFT matrix.

Two constructions are offered per eigenspace: a Gram-determinant formula
and Modified Gram-Schmidt. Both start from the columns of the spectral
projections ``p_k = (1/4) sum_j (-i)**(j*k) Phi**j``.
"""
from .core import (Convention, DftSpec, ProjectionSet, Tolerances, build_dft,
                   build_projection, build_projection_set, dft_power, get_v,
                   matveev_multiplicities, multiplicities, projection_entry,
                   select_columns)
from .determinant import cofactor_det, lu_det, mixed_determinant
from .orthogonalize import (DegenerateGram, EigenBasis, GramReport, Method,
                            full_basis, leading_gram_minor, matveev_orthogonalize,
                            mgs_orthogonalize)
from .verify import VerificationReport, check_basis, compare_spans, verify_all

__version__ = "0.1.0"
