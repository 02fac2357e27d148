"""Probability over fuzzy attributes via draw-then-select experiments.

The package models a two-step experiment: draw an element of a finite (or
mixed discrete/continuous) space, then Bernoulli-select it as a carrier of a
fuzzy attribute with a model-determined probability, falling back to a
designated base element.  On top of that sit t-norm-coupled conditionals, the
ratio-form law checks, a mixed-distribution engine, and treatment-effect
estimation with fuzzy treatment levels.
"""

from .conditionals import (ConditionalPmf, JointSpec, block_names, cond_suite,
                           draw_given_xi_point, other_draw_given_xi,
                           own_draw_given_xi, xi_given_other_draw, xi_given_xi,
                           xi_given_xi_point, xi_point_given_draw,
                           xi_point_given_xi, xi_point_given_xi_point)
from .dist import DiscreteDist, JointPmf
from .errors import (ConditionImpossible, DomainError, EmptyGroup,
                     EmptySupport, EngineError, ImproperAttribute,
                     InconsistentJoint, InvalidBase, ParseError, PflError,
                     ProportionOverflow, QuadratureFailure, UnresolvedJoint,
                     ValidationError, ValueNotInSpace, ZeroProbabilityEvent)
from .fate import (Assignment, ExperimentSpec, FateReport,
                   PotentialOutcomeModel, TreatmentSpace, assign_treatments,
                   classic_ate, default_level_bindings, estimate_fate,
                   expected_Y_of_attr, fate, run_fate_experiment,
                   sample_outcomes)
from .membership import (FuzzyAttribute, MembershipFunction, left_shoulder,
                         membership_eval, right_shoulder, tnorm_and_membership,
                         trapezoidal, triangular)
from .mixed import (Interval, MixedDist, Point, SelectionField, cdf_mixed,
                    discretize, expect_mixed, expect_xi_mixed, exponential,
                    normal, piecewise_polynomial, prob_event_mixed, pure_atoms,
                    uniform, xi_mixed, xi_mixed_conditional)
from .models import (AttributeBinding, Classic, ClassicProbBased, Exponents,
                     GeneralizedMembership, GeneralizedStandard,
                     MembershipScaled, RandomGeneralizedStandard,
                     RelativeFuzzy, SelectionModel, SimpleFuzzy, XiJointTable,
                     check_proper, classic_complement_identity_holds,
                     joint_xi_table, nonstd_cond_prob_draw_weighted,
                     nonstd_cond_prob_scaled_draw, select_prob, std_cond_prob,
                     std_cond_prob_multi, std_cond_prob_negated,
                     validate_binding)
from .properties import (DiamondReport, GoldenFeasibility, GoldenReport,
                         check_diamond, check_golden, golden_feasible)
from .rng import keyed_uniform, keyed_uniforms, stream
from .tnorms import (DRASTIC, FIXED_KINDS, FRECHET_SAFE, HAMACHER,
                     LUKASIEWICZ, MIN, NILPOTENT_MIN, PRODUCT, AczelAlsina,
                     Drastic, HamacherProduct, Lukasiewicz, Minimum,
                     NilpotentMinimum, Product, SugenoWeber, TNorm,
                     check_axioms, fold, make_tnorm, parse_tnorm)
from .workspace import (AttributeDecl, Workspace, dump_workspace,
                        load_workspace, parse_workspace)
from .xi import (XiDist, XiPointDist, expect_xi, prob_omega_is,
                 shifted_conditional_expectation, xi_dist, xi_point,
                 zadeh_mean, zadeh_prob)

__version__ = "0.1.0"
