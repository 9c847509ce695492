"""Exact grid arithmetic for finite metric amalgamation.

Finite metric spaces with rational grid distances, Katetov one-point
extensions and approximants closed under them, the ordered involutive
semigroup of bi-Katetov matrices under the bounded min-plus product, Graev
seminorms on free-group words, partial-isometry relation words, and the
enumerated Gromov-Hausdorff distance. Every construction is paired with an
independent brute-force route so the structural identities are checked by
exact equality.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import GuardError, InvariantError, UrygridError, ValidationError
from .spaces import (FiniteMetricSpace, PartialSpec, QuotientResult,
                     ValidationReport, amalgam, common_grid,
                     quotient_pseudometric, random_grid_space,
                     shortest_path_completion, validate_space)
from .katetov import (ApproximantResult, InjectivityReport, KatetovFunction,
                      OnePointExtension, build_approximant, homogeneity_check,
                      injectivity_check, is_katetov, iso_group,
                      katetov_extension, katetov_witness, point_function,
                      realize_one_point, sup_distance)
from .bikatetov import (BiKatetovMatrix, act_left, act_right,
                        characterization_check, classify_idempotents,
                        constant_zero, embed_isometry, greatest_idempotent,
                        inner_aut, invertible_isometry, is_bikatetov_matrix,
                        metric_unit, product, product_via_amalgam,
                        random_bikatetov, routing_idempotent, star)
from .graev import (WeightedAlphabet, enumerate_pairings, graev_distance,
                    graev_norm, graev_norm_bruteforce, graev_sum, parse_word,
                    reduce_word)
from .homog import (OrbitDistance, PartialIsometryRelation,
                    composition_weight_bound, hausdorff_distance,
                    nu_truncated, random_partial_isometry, relation_alphabet,
                    validate_relation, weight, word_image, word_relates)
from .gh import (EnumeratedPair, distortion, feasible_at, gh_distance,
                 gh_distance_oracle, realize_in_space)
from .relations import (GridFunctionSpace, action_graph, enumerate_carrier,
                        is_equivalence, isometry_graphs, matrix_of_relation,
                        relation_of_matrix, restriction_equivalence)
from .grid import add_capped, frac_str, half_grid_value

__version__ = "0.1.0"
