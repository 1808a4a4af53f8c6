"""Exact-arithmetic stratification of configuration spaces of subspaces.

Configurations of h distinct k-dimensional subspaces of F^n are graded
by the dimension of their sum. The library classifies configurations,
evaluates the stratum dimension theory and its determinantal local
model, witnesses both with exhaustive finite-field censuses, realizes
the annihilator duality with intersection-strata, and computes with the
pure braid group of the sphere for the one stratum family whose
fundamental group is not trivial.
"""

from .errors import (BudgetExceeded, EmptyStratum, GstrataError,
                     InsufficientPoints, MaxAttemptsExceeded, MixedAmbient,
                     MixedField, NoCommonComplement, NonPolynomialFit,
                     NotEnoughSubspaces, NotInChart, RankDeficient,
                     RankTooLarge, ShapeMismatch)
from .linalg import (QQ, FieldSpec, Matrix, column_span_intersection,
                     column_span_sum, hstack, is_prime, kernel, rank, rref,
                     smith_normal_form, vstack)
from .grassmann import (Chart, Configuration, Subspace, canonicalize,
                        chart_coordinates, chart_from_complement,
                        configuration_from_dict, configuration_to_dict,
                        find_common_complement, from_chart)
from .strata import (LocalModel, Pi1Result, StratumDescriptor,
                     adjacency_closure, chart_local_model, codimension_step,
                     determinantal_dimension, dimension, dimension_formula,
                     dual_stratum_of, fundamental_group, is_nonempty,
                     rank_reduction, stratum_of)
from .census import (CensusRow, CountPolynomial, DEFAULT_BUDGET,
                     PartitionReport, enumerate_grassmannian,
                     fit_count_polynomial, grassmannian_count, next_prime,
                     partition_check, rank_locus_count, stratum_count)
from .sampler import SampleSpec, sample_in_stratum, sample_uniform
from .duality import (DualityCountReport, annihilator, dualize_configuration,
                      verify_duality_counts)
from .braid import (Generator, Presentation, ToddCoxeterResult, Word,
                    abelianization, d_element, free_reduce,
                    sphere_pure_braid_presentation, todd_coxeter,
                    yb3_relators, yb4_relators)

__version__ = "0.1.0"
