"""Exact wall-crossing combinatorics and fixed-point localization for framed quiver moduli."""

from . import builders
from .engine import (BETA_BAR, DecompositionDatum, GammaSeries, WallData, all_dec_sets,
                     binomial_question_experiment, dec_ell, dec_sets, dec_sets_recursive,
                     gamma_consistency, grouped_by_k, iterate_recursion, proper_subset_vanishing,
                     recursion_step, s_partition_sum, s_partition_vanishing, s_statistic,
                     wall_cross_terms)
from .localization import (ab_integrate, adjoint_experiment, flag_model, grassmannian_model,
                           lambda_class, point_model)
from .quiver import (DimVector, FramedQuiver, StabilityParam, Wall, WallCrossingContext,
                     beta_bar_infinity, classify_parameter, enhanced_quiver, enumerate_walls,
                     sharp_quiver, validate, zeta_infinity)
from .stability import (EnhancedDim, SlopeParams, cond_a, cond_b, cond_c, find_parameters,
                        theta_vector, two_stability)
from .symbolic import (EPS, HBAR, THETA, KClass, Polynomial, RationalFunction, Variable,
                       WeightForm, euler_plain, euler_theta, parse, pochhammer,
                       residue_at_infinity, to_text)

__version__ = "0.1.0"
