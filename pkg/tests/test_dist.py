import pytest
from hypothesis import given, strategies as st

from pflogic.dist import DiscreteDist, JointPmf
from pflogic.errors import ConditionImpossible, ValidationError, ValueNotInSpace


# ---------------------------------------------------------------- DiscreteDist

def test_basic_accessors():
    d = DiscreteDist((1.0, 2.0, 4.0), (0.2, 0.3, 0.5))
    assert len(d) == 3
    assert 2.0 in d
    assert 3.0 not in d
    assert d.prob(2.0) == 0.3
    assert d.prob(3.0) == 0.0
    assert d.index_of(4.0) == 2
    assert list(d.items()) == [(1.0, 0.2), (2.0, 0.3), (4.0, 0.5)]
    assert d.mean() == pytest.approx(0.2 + 0.6 + 2.0, abs=1e-12)


def test_index_of_unknown_value_raises():
    d = DiscreteDist((1.0, 2.0), (0.5, 0.5))
    with pytest.raises(ValueNotInSpace):
        d.index_of(1.5)


def test_probabilities_must_sum_to_one():
    with pytest.raises(ValidationError):
        DiscreteDist((0.0, 1.0), (0.5, 0.6))
    with pytest.raises(ValidationError):
        DiscreteDist((0.0, 1.0), (0.5, 0.5 - 1e-6))


def test_values_must_strictly_increase():
    with pytest.raises(ValidationError):
        DiscreteDist((1.0, 1.0), (0.5, 0.5))
    with pytest.raises(ValidationError):
        DiscreteDist((2.0, 1.0), (0.5, 0.5))


def test_negative_probabilities():
    with pytest.raises(ValidationError):
        DiscreteDist((0.0, 1.0), (-0.1, 1.1))
    # a tiny negative from upstream float noise is snapped to zero
    d = DiscreteDist((0.0, 1.0), (-1e-15, 1.0 + 1e-15))
    assert d.prob(0.0) == 0.0


def test_nearest_value():
    d = DiscreteDist((0.0, 0.5, 1.0), (0.3, 0.3, 0.4))
    assert d.nearest_value(0.5 + 1e-12, atol=1e-9) == 0.5
    assert d.nearest_value(0.7, atol=1e-9) is None


def test_from_pairs_and_from_weights():
    d = DiscreteDist.from_pairs([(2.0, 0.25), (1.0, 0.75)])
    assert d.values == (1.0, 2.0)
    assert d.probs == (0.75, 0.25)

    w = DiscreteDist.from_weights([(0.0, 2.0), (1.0, 6.0)])
    assert w.prob(0.0) == pytest.approx(0.25)
    assert w.prob(1.0) == pytest.approx(0.75)
    with pytest.raises(ValidationError):
        DiscreteDist.from_weights([(0.0, 0.0), (1.0, 0.0)])


def test_uniform_over_and_bernoulli():
    u = DiscreteDist.uniform_over([3.0, 1.0, 2.0])
    assert u.values == (1.0, 2.0, 3.0)
    assert all(p == pytest.approx(1 / 3) for p in u.probs)

    b = DiscreteDist.bernoulli(0.3)
    assert b.values == (0.0, 1.0)
    assert b.prob(1.0) == 0.3
    with pytest.raises(ValidationError):
        DiscreteDist.bernoulli(1.5)


def test_from_interval_rows_spreads_mass_over_integers():
    # one row centred at 5 with width 10 covers the integers 0..9
    d = DiscreteDist.from_interval_rows([(5.0, 10.0, 1.0)])
    assert d.values == tuple(float(k) for k in range(10))
    assert all(p == pytest.approx(0.1, abs=1e-15) for p in d.probs)


def test_from_interval_rows_multiple_rows():
    d = DiscreteDist.from_interval_rows([(5.0, 10.0, 0.4), (15.0, 10.0, 0.6)])
    assert d.prob(3.0) == pytest.approx(0.04)
    assert d.prob(12.0) == pytest.approx(0.06)
    assert sum(d.probs) == pytest.approx(1.0, abs=1e-12)


def test_from_interval_rows_rejects_bad_rows():
    with pytest.raises(ValidationError):
        DiscreteDist.from_interval_rows([(0.5, 0.25, 1.0)])  # holds no integer
    with pytest.raises(ValidationError):
        DiscreteDist.from_interval_rows([(5.0, -1.0, 1.0)])
    with pytest.raises(ValidationError):
        # overlapping rows collide on shared integers
        DiscreteDist.from_interval_rows([(1.0, 2.0, 0.5), (1.0, 2.0, 0.5)])


@given(st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=8))
def test_from_weights_normalizes_any_positive_weights(ws):
    pairs = [(float(i), float(w)) for i, w in enumerate(ws)]
    d = DiscreteDist.from_weights(pairs)
    assert sum(d.probs) == pytest.approx(1.0, abs=1e-12)
    total = sum(ws)
    for i, w in enumerate(ws):
        assert d.prob(float(i)) == pytest.approx(w / total, abs=1e-12)


# ---------------------------------------------------------------- JointPmf

def test_product_joint_has_the_given_marginals():
    x = DiscreteDist((0.0, 1.0), (0.4, 0.6))
    y = DiscreteDist((5.0, 6.0, 7.0), (0.2, 0.3, 0.5))
    j = JointPmf.product(x, y)
    assert j.prob(0.0, 6.0) == pytest.approx(0.12, abs=1e-15)
    mx, my = j.marginal_x(), j.marginal_y()
    for v in x.values:
        assert mx.prob(v) == pytest.approx(x.prob(v), abs=1e-12)
    for v in y.values:
        assert my.prob(v) == pytest.approx(y.prob(v), abs=1e-12)


def test_from_entries_builds_a_dense_grid():
    j = JointPmf.from_entries([
        (0.0, 0.0, 0.1), (0.0, 1.0, 0.2),
        (1.0, 0.0, 0.3), (1.0, 1.0, 0.4),
    ])
    assert j.xs == (0.0, 1.0)
    assert j.ys == (0.0, 1.0)
    assert j.prob(1.0, 0.0) == 0.3
    assert j.prob(2.0, 0.0) == 0.0  # off the grid


def test_joint_total_mass_is_validated():
    with pytest.raises(ValidationError):
        JointPmf.from_entries([(0.0, 0.0, 0.4), (1.0, 1.0, 0.4)])


def test_conditional_slice():
    j = JointPmf.from_entries([
        (0.0, 0.0, 0.1), (0.0, 1.0, 0.2),
        (1.0, 0.0, 0.3), (1.0, 1.0, 0.4),
    ])
    given_y0 = j.x_given_y(0.0)
    assert given_y0.prob(0.0) == pytest.approx(0.25)
    assert given_y0.prob(1.0) == pytest.approx(0.75)
    with pytest.raises(ValueNotInSpace):
        j.x_given_y(2.0)


def test_conditional_on_a_zero_column_is_impossible():
    j = JointPmf.from_entries([
        (0.0, 0.0, 0.5), (0.0, 1.0, 0.0),
        (1.0, 0.0, 0.5), (1.0, 1.0, 0.0),
    ])
    with pytest.raises(ConditionImpossible):
        j.x_given_y(1.0)
