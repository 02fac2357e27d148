import pytest

from pflogic.dist import DiscreteDist, JointPmf
from pflogic.errors import (
    ConditionImpossible,
    EmptySupport,
    ImproperAttribute,
    InconsistentJoint,
    ValidationError,
    ValueNotInSpace,
)
from pflogic.membership import FuzzyAttribute, MembershipFunction
from pflogic.models import (
    AttributeBinding,
    Classic,
    ClassicProbBased,
    Exponents,
    GeneralizedMembership,
    GeneralizedStandard,
    MembershipScaled,
    RandomGeneralizedStandard,
    RelativeFuzzy,
    SimpleFuzzy,
    check_proper,
    classic_complement_identity_holds,
    joint_xi_table,
    nonstd_cond_prob_draw_weighted,
    nonstd_cond_prob_scaled_draw,
    std_cond_prob,
    std_cond_prob_multi,
    std_cond_prob_negated,
    validate_binding,
)
from pflogic.tnorms import DRASTIC, MIN, PRODUCT


def attr(name, pairs):
    return FuzzyAttribute(name, MembershipFunction(tuple(pairs)))


SPACE = DiscreteDist((0.0, 1.0, 2.0, 3.0), (0.1, 0.2, 0.3, 0.4))
TALL = attr("tall", [(0.0, 0.0), (1.0, 0.25), (2.0, 0.5), (3.0, 1.0)])
SHORT = attr("short", [(0.0, 1.0), (1.0, 0.75), (2.0, 0.5), (3.0, 0.0)])
BIND_TALL = AttributeBinding(TALL, 0.0, SPACE)
BIND_SHORT = AttributeBinding(SHORT, 3.0, SPACE)


# ---------------------------------------------------------------- bindings

def test_binding_base_must_live_in_the_space():
    with pytest.raises(ValueNotInSpace):
        AttributeBinding(TALL, 7.0, SPACE)


def test_validate_binding_rejects_a_base_with_positive_degree():
    bad = AttributeBinding(TALL, 1.0, SPACE)  # degree 0.25 at the base
    with pytest.raises(ImproperAttribute):
        validate_binding(SimpleFuzzy(), bad)
    # the proper binding passes silently
    validate_binding(SimpleFuzzy(), BIND_TALL)


def test_check_proper_reports_zero_probability_witnesses():
    bad = AttributeBinding(TALL, 2.0, SPACE)
    report = check_proper(SimpleFuzzy(), bad)
    assert not report["proper"]
    # the witnesses are the elements that could legitimately serve as base
    assert 0.0 in report["witnesses"]
    assert 2.0 not in report["witnesses"]
    good = check_proper(SimpleFuzzy(), BIND_TALL)
    assert good["proper"] and 0.0 in good["witnesses"]


# ---------------------------------------------------------------- selection rules

def test_simple_fuzzy_selects_by_degree():
    m = SimpleFuzzy()
    assert m.select_prob(BIND_TALL, 2.0) == 0.5
    assert m.select_prob(BIND_TALL, 0.0) == 0.0
    with pytest.raises(ValueNotInSpace):
        m.select_prob(BIND_TALL, 9.0)


def test_classic_normalizes_over_total_membership():
    m = Classic()
    total = 0.25 + 0.5 + 1.0
    assert m.select_prob(BIND_TALL, 3.0) == pytest.approx(1.0 / total, abs=1e-15)
    # selection probabilities over the whole space sum to one
    s = sum(m.select_prob(BIND_TALL, v) for v in SPACE.values)
    assert s == pytest.approx(1.0, abs=1e-12)


def test_classic_with_no_membership_mass_anywhere():
    zero = attr("never", [(0.0, 0.0), (3.0, 0.0)])
    binding = AttributeBinding(zero, 0.0, SPACE)
    with pytest.raises(EmptySupport):
        Classic().select_prob(binding, 1.0)


def test_classic_prob_based_weights_by_draw_probability():
    m = ClassicProbBased()
    assert m.select_prob(BIND_TALL, 2.0) == pytest.approx(0.5 * 0.3, abs=1e-15)


def test_relative_fuzzy_normalizes_within_a_frame():
    m = RelativeFuzzy(frame=(TALL, SHORT))
    # frame degrees at 1.0 are 0.25 and 0.75, so tall gets 0.25
    assert m.select_prob(BIND_TALL, 1.0) == pytest.approx(0.25, abs=1e-15)
    # zero own degree short-circuits to zero even if the frame total is zero
    assert m.select_prob(BIND_TALL, 0.0) == 0.0


def test_relative_fuzzy_requires_the_attribute_in_its_frame():
    m = RelativeFuzzy(frame=(SHORT,))
    with pytest.raises(ValidationError):
        m.select_prob(BIND_TALL, 1.0)


def test_relative_fuzzy_equals_simple_when_the_frame_partitions():
    # tall and short sum to one at every point of the space
    rel = RelativeFuzzy(frame=(TALL, SHORT))
    simple = SimpleFuzzy()
    for v in SPACE.values:
        assert rel.select_prob(BIND_TALL, v) == pytest.approx(
            simple.select_prob(BIND_TALL, v), abs=1e-12)
    # and the standard conditionals agree as well
    got = std_cond_prob(rel, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    want = std_cond_prob(simple, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    assert got == pytest.approx(want, abs=1e-12)


def test_membership_scaled_reads_mass_at_the_scaled_point():
    space = DiscreteDist((0.0, 1.0, 2.0, 4.0), (0.4, 0.2, 0.3, 0.1))
    grows = attr("grows", [(0.0, 0.0), (4.0, 0.5)])
    binding = AttributeBinding(grows, 0.0, space)
    m = MembershipScaled()
    # degree at 4 is 0.5, so the carrier point is 2.0 with mass 0.3
    assert m.select_prob(binding, 4.0) == pytest.approx(0.3, abs=1e-15)
    # degree 0.125 at 1.0 scales to 0.125, which is not an atom
    assert m.select_prob(binding, 1.0) == 0.0


def test_membership_scaled_tolerance_matches_nearby_atoms():
    space = DiscreteDist((0.0, 2.0, 4.0), (0.25, 0.5, 0.25))
    almost = attr("almost", [(0.0, 0.0), (4.0, 0.5 + 1e-12)])
    binding = AttributeBinding(almost, 0.0, space)
    # the scaled point lands within tolerance of the atom at 2.0
    assert MembershipScaled(atol=1e-9).select_prob(binding, 4.0) == 0.5


# ---------------------------------------------------------------- standard conditionals

def test_std_cond_prob_product_reduces_to_the_numerator():
    m = SimpleFuzzy(tnorm=PRODUCT)
    # P(y is B) = 0.25 at y=1 for short? short(1)=0.75; use explicit values:
    # product t-norm: T(pb, pa)/pa = pb
    got = std_cond_prob(m, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    assert got == pytest.approx(0.75, abs=1e-12)


def test_std_cond_prob_min_hand_value():
    m = SimpleFuzzy(tnorm=MIN)
    # min(0.75, 0.5)/0.5 = 1.0
    assert std_cond_prob(m, BIND_SHORT, 1.0, BIND_TALL, 2.0) == pytest.approx(1.0)
    # min(0.5, 1.0)/1.0 = 0.5
    assert std_cond_prob(m, BIND_SHORT, 2.0, BIND_TALL, 3.0) == pytest.approx(0.5)


def test_std_cond_prob_impossible_condition():
    m = SimpleFuzzy()
    with pytest.raises(ConditionImpossible):
        std_cond_prob(m, BIND_SHORT, 1.0, BIND_TALL, 0.0)  # P(0 is tall) = 0


def test_std_cond_prob_negated_hand_value():
    # degrees: pb = 0.7, pa = 0.6 under min gives (0.7 - 0.6) / 0.4 = 0.25
    space = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    a = attr("a", [(0.0, 0.0), (1.0, 0.6)])
    b = attr("b", [(0.0, 0.0), (1.0, 0.7)])
    m = SimpleFuzzy(tnorm=MIN)
    got = std_cond_prob_negated(m, AttributeBinding(b, 0.0, space), 1.0,
                                AttributeBinding(a, 0.0, space), 1.0)
    assert got == pytest.approx(0.25, abs=1e-12)


def test_std_cond_prob_negated_degenerate_conditions():
    m = SimpleFuzzy()
    # conditioning on the negation of an impossible event is vacuous
    got = std_cond_prob_negated(m, BIND_SHORT, 1.0, BIND_TALL, 0.0)
    assert got == 0.75
    # conditioning on the negation of a sure event is impossible
    sure = attr("sure", [(0.0, 0.0), (3.0, 1.0)])
    bind_sure = AttributeBinding(sure, 0.0, SPACE)
    with pytest.raises(ConditionImpossible):
        std_cond_prob_negated(m, BIND_SHORT, 1.0, bind_sure, 3.0)


def test_std_cond_prob_negated_rejects_an_incoherent_pair():
    # drastic product gives T(0.7, 0.6) = 0, so the negated value would be 1.75
    space = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    a = attr("a", [(0.0, 0.0), (1.0, 0.6)])
    b = attr("b", [(0.0, 0.0), (1.0, 0.7)])
    m = SimpleFuzzy(tnorm=DRASTIC)
    with pytest.raises(InconsistentJoint):
        std_cond_prob_negated(m, AttributeBinding(b, 0.0, space), 1.0,
                              AttributeBinding(a, 0.0, space), 1.0)


def test_std_cond_prob_multi():
    m = SimpleFuzzy(tnorm=MIN)
    nums = [(BIND_SHORT, 1.0), (BIND_TALL, 2.0)]
    dens = [(BIND_TALL, 2.0)]
    # min(0.75, 0.5, 0.5) / min(0.5) = 1.0
    assert std_cond_prob_multi(m, nums, dens) == pytest.approx(1.0)
    # an empty numerator list conditions a vacuous event
    assert std_cond_prob_multi(m, [], dens) == 1.0
    with pytest.raises(ConditionImpossible):
        std_cond_prob_multi(m, nums, [(BIND_TALL, 0.0)])


def test_std_cond_prob_multi_agrees_with_the_single_pair_form():
    m = SimpleFuzzy(tnorm=PRODUCT)
    got = std_cond_prob_multi(m, [(BIND_SHORT, 1.0)], [(BIND_TALL, 2.0)])
    want = std_cond_prob(m, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    assert got == pytest.approx(want, abs=1e-15)


# ---------------------------------------------------------------- joint tables

def test_joint_xi_table_hand_case():
    space = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    a = attr("a", [(0.0, 0.0), (1.0, 0.6)])
    b = attr("b", [(0.0, 0.0), (1.0, 0.7)])
    m = SimpleFuzzy(tnorm=MIN)
    t = joint_xi_table(m, AttributeBinding(a, 0.0, space), 1.0,
                       AttributeBinding(b, 0.0, space), 1.0)
    assert t.sel_sel == pytest.approx(0.6, abs=1e-15)
    assert t.sel_base == pytest.approx(0.0, abs=1e-15)
    assert t.base_sel == pytest.approx(0.1, abs=1e-15)
    assert t.base_base == pytest.approx(0.3, abs=1e-15)


def test_joint_xi_table_marginals_and_lookup():
    m = SimpleFuzzy(tnorm=PRODUCT)
    t = joint_xi_table(m, BIND_TALL, 2.0, BIND_SHORT, 1.0)
    assert t.marginal_a() == pytest.approx(0.5, abs=1e-12)
    assert t.marginal_b() == pytest.approx(0.75, abs=1e-12)
    assert t.prob(2.0, 1.0) == pytest.approx(0.375, abs=1e-12)
    assert t.prob(0.0, 3.0) == pytest.approx(0.125, abs=1e-12)
    total = sum(p for _, _, p in t.as_rows())
    assert total == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueNotInSpace):
        t.prob(9.0, 1.0)


def test_joint_xi_table_bayes_consistency():
    m = SimpleFuzzy(tnorm=MIN)
    t = joint_xi_table(m, BIND_TALL, 2.0, BIND_SHORT, 1.0)
    cond = std_cond_prob(m, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    assert t.sel_sel == pytest.approx(cond * t.marginal_a(), abs=1e-12)


def test_joint_xi_table_rejects_an_incoherent_cell():
    space = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    a = attr("a", [(0.0, 0.0), (1.0, 0.6)])
    b = attr("b", [(0.0, 0.0), (1.0, 0.7)])
    m = SimpleFuzzy(tnorm=DRASTIC)
    with pytest.raises(InconsistentJoint):
        joint_xi_table(m, AttributeBinding(a, 0.0, space), 1.0,
                       AttributeBinding(b, 0.0, space), 1.0)


# ---------------------------------------------------------------- generalized rules

def test_generalized_membership_squares_degrees():
    m = GeneralizedMembership(exponents=Exponents(default=2.0))
    assert m.select_prob(BIND_TALL, 2.0) == pytest.approx(0.25, abs=1e-15)
    assert m.select_prob(BIND_TALL, 3.0) == 1.0


def test_generalized_membership_per_element_overrides():
    exps = Exponents(default=1.0, entries={("tall", 2.0): 3.0})
    m = GeneralizedMembership(exponents=exps)
    assert m.select_prob(BIND_TALL, 2.0) == pytest.approx(0.125, abs=1e-15)
    assert m.select_prob(BIND_TALL, 1.0) == 0.25


def test_generalized_membership_over_a_classic_base():
    m = GeneralizedMembership(exponents=Exponents(default=2.0), base=Classic())
    total = 0.25**2 + 0.5**2 + 1.0**2
    assert m.select_prob(BIND_TALL, 3.0) == pytest.approx(1.0 / total, abs=1e-12)


def test_generalized_models_cannot_nest():
    with pytest.raises(ValidationError):
        GeneralizedMembership(exponents=Exponents(),
                              base=GeneralizedStandard())


def test_generalized_standard_scales_the_conditioning_numerator():
    plain = SimpleFuzzy(tnorm=PRODUCT)
    scaled = GeneralizedStandard(scale=0.5, base=SimpleFuzzy(), tnorm=PRODUCT)
    # marginal selection is untouched
    assert scaled.select_prob(BIND_SHORT, 1.0) == plain.select_prob(BIND_SHORT, 1.0)
    got = std_cond_prob(scaled, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    want = std_cond_prob(plain, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    assert got == pytest.approx(0.5 * want, abs=1e-12)


def test_generalized_standard_clamps_at_one():
    scaled = GeneralizedStandard(scale=10.0, base=SimpleFuzzy(), tnorm=MIN)
    got = std_cond_prob(scaled, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    # numerator saturates at 1, min(1, 0.5)/0.5 = 1
    assert got == 1.0


def test_random_generalized_standard_is_deterministic_per_seed():
    dist = DiscreteDist((0.25, 0.75), (0.5, 0.5))
    m = RandomGeneralizedStandard(scale_dist=dist, seed=11, base=SimpleFuzzy())
    a = std_cond_prob(m, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    b = std_cond_prob(m, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    assert a == b
    # a single-valued scale distribution reproduces the fixed-scale rule
    one = DiscreteDist((0.5,), (1.0,))
    fixed = GeneralizedStandard(scale=0.5, base=SimpleFuzzy())
    rand = RandomGeneralizedStandard(scale_dist=one, seed=3, base=SimpleFuzzy())
    got = std_cond_prob(rand, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    want = std_cond_prob(fixed, BIND_SHORT, 1.0, BIND_TALL, 2.0)
    assert got == want


def test_random_generalized_standard_seed_changes_the_draw():
    dist = DiscreteDist(tuple(float(v) / 16 for v in range(1, 9)),
                        (0.125,) * 8)
    draws = {
        RandomGeneralizedStandard(scale_dist=dist, seed=s,
                                  base=SimpleFuzzy()).drawn_scale(SHORT.name, 1.0)
        for s in range(12)
    }
    assert len(draws) > 1


# ---------------------------------------------------------------- non-standard conditionals

def test_draw_weighted_conditional_needs_the_draw_weighted_rule():
    m = ClassicProbBased(tnorm=PRODUCT)
    got = nonstd_cond_prob_draw_weighted(m, BIND_SHORT, 1.0, BIND_TALL, 2.0,
                                         y_given_x=0.4)
    # the numerator swaps the y draw weight for the conditional weight
    pa = m.select_prob(BIND_TALL, 2.0)
    pb_cond = SHORT.degree(1.0) * 0.4
    assert got == pytest.approx(PRODUCT(pb_cond, pa) / pa, abs=1e-12)
    with pytest.raises(ValidationError):
        nonstd_cond_prob_draw_weighted(SimpleFuzzy(), BIND_SHORT, 1.0,
                                       BIND_TALL, 2.0, y_given_x=0.4)


def test_scaled_draw_conditional_reads_the_joint():
    space = DiscreteDist((0.0, 1.0, 2.0, 4.0), (0.4, 0.2, 0.3, 0.1))
    grows = attr("grows", [(0.0, 0.0), (4.0, 0.5)])
    halves = attr("halves", [(0.0, 0.0), (4.0, 1.0)])
    ba = AttributeBinding(halves, 0.0, space)
    bb = AttributeBinding(grows, 0.0, space)
    joint = JointPmf.product(space, space)
    m = MembershipScaled(tnorm=PRODUCT)
    got = nonstd_cond_prob_scaled_draw(m, bb, 4.0, ba, 4.0, joint=joint)
    assert 0.0 <= got <= 1.0
    with pytest.raises(ValidationError):
        nonstd_cond_prob_scaled_draw(SimpleFuzzy(), bb, 4.0, ba, 4.0,
                                     joint=joint)


# ---------------------------------------------------------------- complement identity

def test_complement_identity_holds_for_a_crisp_singleton():
    space = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    crisp = attr("is_one", [(0.0, 0.0), (1.0, 1.0)])
    assert classic_complement_identity_holds(crisp, space)


def test_complement_identity_fails_for_a_fuzzy_attribute_on_three_points():
    space = DiscreteDist((0.0, 1.0, 2.0), (0.3, 0.3, 0.4))
    fuzzy = attr("somewhat", [(0.0, 0.5), (1.0, 0.5), (2.0, 0.0)])
    assert not classic_complement_identity_holds(fuzzy, space)
