import pytest

from pflogic.dist import DiscreteDist
from pflogic.membership import FuzzyAttribute, MembershipFunction
from pflogic.models import AttributeBinding, SimpleFuzzy, std_cond_prob
from pflogic.properties import check_diamond, check_golden, golden_feasible
from pflogic.tnorms import FIXED_KINDS, MIN, PRODUCT
from pflogic.xi import xi_point

BERN_X = DiscreteDist.bernoulli(0.6)
BERN_Y = DiscreteDist.bernoulli(0.7)


# ---------------------------------------------------------------- diamond

def test_diamond_fails_for_the_bernoulli_pair_under_min():
    report = check_diamond(BERN_X, BERN_Y, MIN)
    assert not report.holds
    # conditioning on y=0 the candidate column sums to 2, on y=1 to 1/0.7
    assert report.conditional_sums[0.0] == pytest.approx(2.0, abs=1e-12)
    assert report.conditional_sums[1.0] == pytest.approx(1 / 0.7, abs=1e-12)
    # reconstructed marginal of X at each point
    assert report.total_law[0.0] == pytest.approx(0.7, abs=1e-12)
    assert report.total_law[1.0] == pytest.approx(0.9, abs=1e-12)
    # even after normalizing each column the total law still misses
    assert report.normalized_total_law[1.0] == pytest.approx(0.57, abs=1e-12)
    assert report.normalized_total_law[0.0] == pytest.approx(0.43, abs=1e-12)
    assert report.violations


def test_diamond_holds_when_x_is_degenerate():
    point = DiscreteDist((5.0,), (1.0,))
    for t in FIXED_KINDS:
        report = check_diamond(point, BERN_Y, t)
        assert report.holds, t.name
        for s in report.conditional_sums.values():
            assert s == pytest.approx(1.0, abs=1e-12)


def test_diamond_product_tnorm_on_independent_pair():
    # the product t-norm makes the candidate columns genuine conditionals
    report = check_diamond(BERN_X, BERN_Y, PRODUCT)
    assert report.holds
    assert not report.violations


# ---------------------------------------------------------------- golden, family form

def _std_family():
    """The two-point conditional family generated by the ratio rule."""
    space = DiscreteDist((0.0, 1.0, 2.0), (0.25, 0.45, 0.3))
    a = FuzzyAttribute("a", MembershipFunction(((0.0, 0.0), (1.0, 0.3), (2.0, 0.8))))
    b = FuzzyAttribute("b", MembershipFunction(((0.0, 0.0), (1.0, 0.5), (2.0, 0.9))))
    bind_a = AttributeBinding(a, 0.0, space)
    bind_b = AttributeBinding(b, 0.0, space)
    model = SimpleFuzzy(tnorm=MIN)
    x, y = 1.0, 2.0
    cond = std_cond_prob(model, bind_b, y, bind_a, x)
    conds = {x: {y: cond, 0.0: 1.0 - cond}}
    dist_w = xi_point(model, bind_a, x).pmf()
    dist_z = xi_point(model, bind_b, y).pmf()
    return conds, dist_z, dist_w, model


def test_golden_holds_for_the_ratio_family_with_the_base_exempt():
    conds, dist_z, dist_w, model = _std_family()
    report = check_golden(conds, dist_z, dist_w, model.tnorm, exempt=0.0)
    assert report.holds
    assert report.max_deviation <= 1e-12
    assert not report.violations


def test_golden_fails_when_the_wrong_cell_is_exempt():
    conds, dist_z, dist_w, model = _std_family()
    # exempting the selected value forces the base cell to match the ratio
    report = check_golden(conds, dist_z, dist_w, model.tnorm, exempt=2.0)
    assert not report.holds
    assert report.violations


def test_golden_wrong_exempt_hand_numbers():
    # min t-norm with P(w)=0.3, P(z)=0.5: complement cell 0.4 vs required 1.0
    conds = {1.0: {1.0: 0.5 / 0.3 * 0.3 / 0.5}}  # placeholder, rebuilt below
    dist_w = DiscreteDist((0.0, 1.0), (0.7, 0.3))
    dist_z = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    cond = MIN(0.5, 0.3) / 0.3  # = 1.0
    conds = {1.0: {1.0: cond, 0.0: 1.0 - cond}}
    report = check_golden(conds, dist_z, dist_w, MIN, exempt=1.0)
    assert not report.holds
    # claimed 0.0 at z=0.0, required min(0.5, 0.3)/0.3 = 1.0
    assert report.max_deviation == pytest.approx(1.0, abs=1e-12)


def test_golden_skips_conditioning_values_with_zero_probability():
    dist_w = DiscreteDist((0.0, 1.0), (1.0, 0.0))
    dist_z = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    conds = {1.0: {1.0: 0.123, 0.0: 0.877}}
    report = check_golden(conds, dist_z, dist_w, MIN, exempt=0.0)
    assert not report.holds
    assert any("probability 0" in v for v in report.violations)


def test_golden_treats_missing_cells_as_zero():
    dist_w = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    dist_z = DiscreteDist((0.0, 1.0), (0.5, 0.5))
    # product rule: required P(z=1|w=1) = 0.5; omit it entirely
    conds = {1.0: {0.0: 1.0}}
    report = check_golden(conds, dist_z, dist_w, PRODUCT, exempt=0.0)
    assert not report.holds
    assert report.max_deviation == pytest.approx(0.5, abs=1e-12)


# ---------------------------------------------------------------- golden, feasibility form

def test_bernoulli_pair_admits_no_golden_exempt_value():
    for exempt in (0.0, 1.0):
        verdict = golden_feasible(BERN_X, BERN_Y, MIN, exempt=exempt)
        assert not verdict.feasible, exempt
        assert verdict.violations


def test_bernoulli_pair_total_law_residuals_match_hand_numbers():
    verdict = golden_feasible(BERN_X, BERN_Y, MIN, exempt=0.0)
    # at x=1: min(0.6, 0.3) + min(0.6, 0.7) = 0.9 against a marginal of 0.6
    assert verdict.total_law_residuals[1.0] == pytest.approx(0.3, abs=1e-12)


def test_product_tnorm_independent_pair_is_golden_feasible():
    # with the product rule the ratio family is the genuine independent joint,
    # so any exempt value works
    verdict = golden_feasible(BERN_X, BERN_Y, PRODUCT, exempt=0.0)
    assert verdict.feasible, verdict.violations
    for cell in verdict.exempt_cells.values():
        assert 0.0 <= cell <= 1.0


def test_golden_feasible_requires_the_exempt_value_in_the_space():
    from pflogic.errors import ValueNotInSpace
    with pytest.raises(ValueNotInSpace):
        golden_feasible(BERN_X, BERN_Y, MIN, exempt=3.0)
