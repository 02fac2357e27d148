import math

import pytest
from hypothesis import given, strategies as st

from pflogic.errors import DomainError, ValidationError
from pflogic.tnorms import (
    DRASTIC,
    FIXED_KINDS,
    FRECHET_SAFE,
    HAMACHER,
    LUKASIEWICZ,
    MIN,
    NILPOTENT_MIN,
    PRODUCT,
    AczelAlsina,
    SugenoWeber,
    check_axioms,
    fold,
    make_tnorm,
    parse_tnorm,
)

ALL_NORMS = FIXED_KINDS + (AczelAlsina(0.5), AczelAlsina(2.0), SugenoWeber(-0.5), SugenoWeber(1.5))

units = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


# ---------------------------------------------------------------- point values

def test_min_product_lukasiewicz_hand_values():
    assert MIN(0.3, 0.9) == 0.3
    assert PRODUCT(0.5, 0.5) == 0.25
    assert LUKASIEWICZ(0.3, 0.9) == pytest.approx(0.2, abs=1e-12)
    assert LUKASIEWICZ(0.2, 0.3) == 0.0


def test_drastic_is_zero_off_the_boundary():
    assert DRASTIC(0.5, 0.7) == 0.0
    assert DRASTIC(0.999, 0.999) == 0.0
    assert DRASTIC(1.0, 0.7) == 0.7
    assert DRASTIC(0.7, 1.0) == 0.7


def test_nilpotent_min_threshold():
    assert NILPOTENT_MIN(0.6, 0.7) == 0.6
    assert NILPOTENT_MIN(0.4, 0.6) == 0.0  # sum not above one
    assert NILPOTENT_MIN(0.5, 0.5) == 0.0
    assert NILPOTENT_MIN(0.45, 0.7) == 0.45


def test_hamacher_hand_value():
    # 0.25 / (0.5 + 0.5 - 0.25)
    assert HAMACHER(0.5, 0.5) == pytest.approx(1 / 3, abs=1e-15)
    assert HAMACHER(0.0, 0.0) == 0.0


def test_aczel_alsina_parameter_family():
    aa1 = AczelAlsina(1.0)
    for a, b in [(0.3, 0.8), (0.05, 0.95), (0.5, 0.5)]:
        assert aa1(a, b) == pytest.approx(a * b, abs=1e-12)
    # p = 0 collapses to the drastic interior, p = inf to minimum
    assert AczelAlsina(0.0)(0.4, 0.9) == 0.0
    assert AczelAlsina(math.inf)(0.4, 0.9) == 0.4
    assert AczelAlsina(1e9)(0.4, 0.9) == pytest.approx(0.4, abs=1e-9)


def test_aczel_alsina_is_increasing_in_p():
    pts = [(0.2, 0.7), (0.5, 0.5), (0.9, 0.35)]
    for a, b in pts:
        vals = [AczelAlsina(p)(a, b) for p in (0.5, 1.0, 2.0, 4.0)]
        assert vals == sorted(vals)
        assert vals[-1] <= MIN(a, b)


def test_sugeno_weber_parameter_family():
    sw0 = SugenoWeber(0.0)
    for a, b in [(0.3, 0.9), (0.7, 0.8)]:
        assert sw0(a, b) == pytest.approx(LUKASIEWICZ(a, b), abs=1e-12)
    assert SugenoWeber(-1.0)(0.6, 0.9) == 0.0
    assert SugenoWeber(math.inf)(0.6, 0.9) == pytest.approx(0.54, abs=1e-15)
    assert SugenoWeber(1e12)(0.6, 0.9) == pytest.approx(0.54, abs=1e-9)


def test_parametric_constructors_reject_bad_parameters():
    with pytest.raises(ValidationError):
        AczelAlsina(-0.1)
    with pytest.raises(ValidationError):
        SugenoWeber(-1.5)
    with pytest.raises(ValidationError):
        AczelAlsina(math.nan)


# ---------------------------------------------------------------- axioms

def test_identity_is_exact_everywhere():
    for t in ALL_NORMS:
        for v in (0.0, 1e-9, 0.001, 1 / 3, 0.5, 0.9999999, 1.0):
            assert t(v, 1.0) == v
            assert t(1.0, v) == v


def test_zero_annihilates():
    for t in ALL_NORMS:
        for v in (0.0, 0.25, 1.0):
            assert t(v, 0.0) == 0.0
            assert t(0.0, v) == 0.0


@given(units, units)
def test_commutative_for_core_norms(a, b):
    for t in (MIN, PRODUCT, LUKASIEWICZ, HAMACHER):
        assert t(a, b) == t(b, a)


@given(units, units, units)
def test_monotone_for_core_norms(a, b, c):
    lo, hi = sorted((b, c))
    for t in (MIN, PRODUCT, LUKASIEWICZ, NILPOTENT_MIN):
        assert t(a, lo) <= t(a, hi) + 1e-15


def test_check_axioms_reports_pass_for_every_catalogue_norm():
    for t in ALL_NORMS:
        report = check_axioms(t, comm_n=21, assoc_n=9, ident_n=101, mono_n=9)
        assert report["all"], (t.name, report)
        assert report["associativity_deviation"] <= 1e-12


def test_check_axioms_flags_a_broken_operation():
    class Skewed:
        name = "skewed"

        def __call__(self, a, b):
            # not commutative, wrong identity on one side
            return a * b * 0.5 if a < b else a * b

    report = check_axioms(Skewed(), comm_n=11, assoc_n=5, ident_n=11, mono_n=5)
    assert not report["commutative"]
    assert not report["all"]


# ---------------------------------------------------------------- domain handling

def test_inputs_outside_unit_interval_are_rejected():
    for bad in (-0.2, 1.2, math.nan):
        with pytest.raises(DomainError):
            MIN(bad, 0.5)
        with pytest.raises(DomainError):
            PRODUCT(0.5, bad)


def test_near_boundary_inputs_snap():
    assert MIN(1.0 + 1e-13, 0.25) == 0.25
    assert PRODUCT(-1e-13, 0.7) == 0.0
    assert LUKASIEWICZ(0.3, 1.0 + 5e-13) == 0.3


# ---------------------------------------------------------------- frechet bound

def test_frechet_safe_norms_sit_between_lukasiewicz_and_min():
    grid = [i / 20 for i in range(21)]
    for t in FRECHET_SAFE + (AczelAlsina(2.0), SugenoWeber(1.5)):
        for a in grid:
            for b in grid:
                v = t(a, b)
                assert LUKASIEWICZ(a, b) - 1e-12 <= v <= MIN(a, b) + 1e-12


# ---------------------------------------------------------------- factory / parsing

def test_make_tnorm_fixed_kinds():
    assert make_tnorm("min") is MIN
    assert make_tnorm("hamacher") is HAMACHER
    with pytest.raises(ValidationError):
        make_tnorm("min", 2.0)  # fixed kinds take no parameter
    with pytest.raises(ValidationError):
        make_tnorm("aczel_alsina")  # parameter required
    with pytest.raises(ValidationError):
        make_tnorm("galois")


def test_parse_tnorm_round_trips():
    t = parse_tnorm("aczel_alsina:2.5")
    assert isinstance(t, AczelAlsina) and t.p == 2.5
    assert parse_tnorm("product") is PRODUCT
    assert parse_tnorm(" min ") is MIN
    with pytest.raises(ValidationError):
        parse_tnorm("min:2")
    with pytest.raises(ValidationError):
        parse_tnorm("sugeno_weber:abc")
    with pytest.raises(ValidationError):
        parse_tnorm("")


# ---------------------------------------------------------------- fold

def test_fold_empty_is_identity():
    assert fold(MIN, []) == 1.0


def test_fold_single_and_pair():
    assert fold(PRODUCT, [0.5]) == 0.5
    assert fold(PRODUCT, [0.5, 0.5]) == 0.25
    assert fold(MIN, (0.9, 0.2, 0.7)) == 0.2


def test_fold_matches_nested_application():
    vals = [0.9, 0.8, 0.7, 0.35]
    want = LUKASIEWICZ(LUKASIEWICZ(LUKASIEWICZ(0.9, 0.8), 0.7), 0.35)
    assert fold(LUKASIEWICZ, vals) == pytest.approx(want, abs=1e-15)
