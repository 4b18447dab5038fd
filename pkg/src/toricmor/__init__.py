"""Exact intersection numbers on compactified spaces of morphisms from a
genus-g curve to a smooth projective toric variety, by torus localization."""

from .errors import (DegreeError, FanError, JacobianError, LocalizationError,
                     NonCancellationError, ThetaError, ToricMorError)
from .fan import (Fan, build_fan, dual_basis, fan_f1, fan_p1, fan_p1xp1, parse_fan,
                  primitive_collections, projective_space, relation_matrix, restriction_coeffs)
from .jacobian import ExteriorElement, PsiMap, integrate_Jl, integrate_V, psi_pullback
from .localization import (Direction, TLaurentClass, choose_direction, explicit_pushforward,
                           expand_weighted_factor, fixed_point_term, make_direction,
                           pushforward_class, relation_class, vanishing_predicate)
from .numerics import DegreeData, derive_degree_data, euler_char_Y
from .theta import LMonomial, ThetaPoly, segre_pushforward, theta_mul

__version__ = "0.1.0"
