"""Exact arithmetic for truncated big Witt vectors, universal lambda-rings,
and filtered lambda-ring structures."""

from .errors import (BoundExceededError, ExactDivisionError, IntegralityError,
                     LubinHypothesisError, MembershipError, PrimeWindowError,
                     RelationViolationError, RingMismatchError, SymmetryError,
                     UnsupportedIdealError, UnsupportedRingError,
                     WilkersonError, WittlamError)
from .ground import (EpsIdeal, ExactRational, GroundRing, PrimeIdeal,
                     PrimeSet, RingElement, XAdicIdeal, binomial,
                     is_p_divisible, parse_ring, ring_arith)
from .lambda_witt import (LambdaElem, WittVec, coalgebra_check, exp_iso,
                          exp_iso_inv, filtration_member, ghost, lambda_add,
                          lambda_mul, lambda_neg, lambda_one, lambda_op,
                          lambda_zero, witt_add, witt_mul,
                          witt_universal_polys, witt_zero)
from .lubin import (CommutingProblem, conjugate_structure, hasse_check,
                    lubin_solve, random_unit_series)
from .series import (SeriesRing, TruncSeries, compose, congruent_mod, revert,
                     series_arith, xadic_valuation)
from .structures import (Carrier, LambdaStructure, adams_apply, axiom_check,
                         dual_iso_test, make_binomial_structure,
                         make_dual_structure, make_family_structure,
                         make_series_structure, newton_lambda,
                         standard_structure, validate)
from .sympoly import (MPoly, UniversalPolyCache, elementary_symmetric,
                      express_in_elementary, universal_P, universal_Pcomp)
from .universal import (GeneratorIndex, HomAssignment, hom_from_structure,
                        relation_V, relation_w, roundtrip_check,
                        structure_from_hom, u_element, universal_adams)

__version__ = "0.1.0"
