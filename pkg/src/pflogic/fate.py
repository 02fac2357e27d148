"""Treatment effects when treatment levels are fuzzy attributes.

A treatment variable T takes finitely many dose values; "low", "medium" and
"high" are fuzzy attributes over those doses.  The outcome attributable to an
attribute A averages the potential outcomes over the selection outcome
distribution of T for A, restricted to actual selections:

    E(Y(A)) = sum over t != base of Y(t) P(selected t) / P(any t selected)

and the effect of moving from low to high is E(Y(high)) - E(Y(low)).  The
experimental counterpart assigns units to dose levels stage by stage
(high first, then medium, then the rest to low) with level counts
proportional to the selection outcome pmf, then compares stage-group means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dist import DiscreteDist
from .errors import (EmptyGroup, ProportionOverflow, ValidationError,
                     ZeroProbabilityEvent)
from .models import AttributeBinding, SelectionModel, validate_binding
from .rng import keyed_uniforms, stream
from .xi import prob_omega_is

STAGES = ("high", "medium", "low")


@dataclass(frozen=True)
class PotentialOutcomeModel:
    """Bernoulli potential outcomes: P(Y(t) = 1) per dose value."""

    probs: Mapping[float, float]

    def __post_init__(self) -> None:
        clean = {float(t): float(p) for t, p in self.probs.items()}
        for t, p in clean.items():
            if not (0.0 <= p <= 1.0):
                raise ValidationError(f"outcome probability {p!r} at t={t!r} outside [0, 1]")
        object.__setattr__(self, "probs", clean)

    def p(self, t: float) -> float:
        try:
            return self.probs[float(t)]
        except KeyError:
            raise ValidationError(f"no outcome probability for dose {t!r}") from None


@dataclass(frozen=True)
class TreatmentSpace:
    """The dose pmf with its three level attributes bound and validated.

    All three bindings must share the same space; each must be proper under
    the model.  With ``require_partition`` the selection probabilities of
    the three levels must sum to 1 at every dose that is not one of the base
    elements, which is what makes sequential assignment exhaust the sample.
    """

    low: AttributeBinding
    medium: AttributeBinding
    high: AttributeBinding
    model: SelectionModel
    require_partition: bool = True

    def __post_init__(self) -> None:
        d = self.dist
        for b in (self.medium, self.high):
            if b.space.values != d.values or b.space.probs != d.probs:
                raise ValidationError("level bindings must share one dose space")
        for b in (self.low, self.medium, self.high):
            validate_binding(self.model, b)
        if self.require_partition:
            bases = {self.low.base, self.medium.base, self.high.base}
            for t in d.values:
                if t in bases:
                    continue
                s = sum(self.model.select_prob(b, t)
                        for b in (self.low, self.medium, self.high))
                if abs(s - 1.0) > 1e-9:
                    raise ValidationError(
                        f"level selection probabilities sum to {s!r} at dose {t!r}; "
                        "set require_partition=False to allow this")

    @property
    def dist(self) -> DiscreteDist:
        return self.low.space

    def binding(self, which: str) -> AttributeBinding:
        try:
            return {"low": self.low, "medium": self.medium, "high": self.high}[which]
        except KeyError:
            raise ValidationError(f"unknown level {which!r}") from None

    def xi_pmf(self, which: str) -> dict[float, float]:
        """P(selection outcome = t) over non-base doses for the level."""
        b = self.binding(which)
        return {t: self.model.select_prob(b, t) * p
                for t, p in b.space.items() if t != b.base}


def default_level_bindings(dist: DiscreteDist, low, medium, high
                           ) -> tuple[AttributeBinding, AttributeBinding,
                                      AttributeBinding]:
    """Bind the three level attributes with endpoint base elements.

    The high base is the smallest dose, the low base the largest (each must
    carry zero membership for its level); the medium base is an endpoint with
    zero medium membership, preferring the one that is not the high base.
    """
    lo_t, hi_t = dist.values[0], dist.values[-1]
    if high.degree(lo_t) != 0.0:
        raise ValidationError(
            f"default high base {lo_t!r} has nonzero high membership")
    if low.degree(hi_t) != 0.0:
        raise ValidationError(
            f"default low base {hi_t!r} has nonzero low membership")
    if medium.degree(hi_t) == 0.0:
        med_base = hi_t
    elif medium.degree(lo_t) == 0.0:
        med_base = lo_t
    else:
        raise ValidationError("no endpoint has zero medium membership; "
                              "give the medium base explicitly")
    return (AttributeBinding(low, hi_t, dist),
            AttributeBinding(medium, med_base, dist),
            AttributeBinding(high, lo_t, dist))


@dataclass(frozen=True)
class ExperimentSpec:
    """A declared experiment: level attribute names plus run parameters.

    Names are resolved against a workspace when the experiment runs; the
    spec itself stays a plain value object so it can live in config files.
    """

    low: str
    medium: str
    high: str
    outcome: PotentialOutcomeModel
    n_units: int
    seed: int = 0
    require_partition: bool = True

    def __post_init__(self) -> None:
        if self.n_units <= 0:
            raise ValidationError(
                f"experiments need a positive unit count, got {self.n_units}")


@dataclass(frozen=True)
class FateReport:
    """Estimands (and optionally estimates) of the three pairwise effects."""

    fate_lh: float
    fate_lm: float
    fate_mh: float
    est_lh: float | None = None
    est_lm: float | None = None
    est_mh: float | None = None
    n_units: int | None = None
    seed: int | None = None


def expected_Y_of_attr(space: TreatmentSpace, po: PotentialOutcomeModel,
                       which: str) -> float:
    """E(Y(A)): selection-outcome-weighted mean outcome for the level."""
    b = space.binding(which)
    p_attr = prob_omega_is(space.model, b)
    if p_attr == 0.0:
        raise ZeroProbabilityEvent(f"level {which!r} has selection probability 0")
    return sum(po.p(t) * m for t, m in space.xi_pmf(which).items()) / p_attr


def fate(space: TreatmentSpace, po: PotentialOutcomeModel) -> FateReport:
    """The three pairwise effects between the level estimands."""
    e_low = expected_Y_of_attr(space, po, "low")
    e_med = expected_Y_of_attr(space, po, "medium")
    e_high = expected_Y_of_attr(space, po, "high")
    return FateReport(fate_lh=e_high - e_low, fate_lm=e_med - e_low,
                      fate_mh=e_high - e_med)


# ---------------------------------------------------------------------------
# experimental counterpart
# ---------------------------------------------------------------------------

def _largest_remainder(weights: Sequence[float], total: int) -> list[int]:
    """Integer apportionment of ``total`` following ``weights``.

    Floors first, then hands the leftover to the largest fractional parts;
    ties resolve by position.  Requires sum(weights) to be within rounding
    distance of total.
    """
    floors = [int(math.floor(w)) for w in weights]
    leftover = total - sum(floors)
    if leftover < 0:
        raise ProportionOverflow(
            f"apportionment target {total} below the floor sum {sum(floors)}")
    order = sorted(range(len(weights)),
                   key=lambda i: (-(weights[i] - floors[i]), i))
    counts = list(floors)
    for i in order[:leftover]:
        counts[i] += 1
    if leftover > len(weights):
        raise ProportionOverflow(
            f"apportionment leftover {leftover} exceeds the number of levels")
    return counts


@dataclass(frozen=True)
class Assignment:
    """Per-unit stage labels and dose levels for one experiment run."""

    stages: np.ndarray   # int codes into STAGES
    levels: np.ndarray   # dose values
    seed: int

    def units_in_stage(self, which: str) -> np.ndarray:
        return np.flatnonzero(self.stages == STAGES.index(which))


def assign_treatments(space: TreatmentSpace, n: int, seed: int) -> Assignment:
    """Sequential stage assignment: high, then medium, then low gets the rest.

    The high and medium stages draw level counts by largest-remainder
    apportionment of n times the level's selection outcome pmf (whole-sample
    proportions); each stage takes a keyed permutation of the units still
    untreated.  The final stage spreads everyone left over the low levels,
    apportioned by the renormalized low outcome pmf.  ProportionOverflow
    fires when a stage wants more units than remain.
    """
    if n <= 0:
        raise ValidationError(f"need a positive number of units, got {n}")
    stages = np.full(n, -1, dtype=np.int64)
    levels = np.zeros(n, dtype=np.float64)
    pool = np.arange(n)

    for code, which in enumerate(("high", "medium")):
        xi = space.xi_pmf(which)
        doses = sorted(xi)
        weights = [n * xi[t] for t in doses]
        total = int(math.floor(sum(weights) + 0.5))
        if total > pool.size:
            raise ProportionOverflow(
                f"stage {which!r} needs {total} units, only {pool.size} remain")
        counts = _largest_remainder(weights, total)
        perm = stream(seed, "assign", which).permutation(pool)
        taken = 0
        for t, c in zip(doses, counts):
            chosen = perm[taken:taken + c]
            stages[chosen] = code
            levels[chosen] = t
            taken += c
        pool = perm[taken:]

    if pool.size:
        p_low = prob_omega_is(space.model, space.low)
        if p_low == 0.0:
            raise ProportionOverflow(
                f"{pool.size} units remain but the low level has probability 0")
        xi = space.xi_pmf("low")
        doses = sorted(xi)
        weights = [pool.size * xi[t] / p_low for t in doses]
        counts = _largest_remainder(weights, int(pool.size))
        perm = stream(seed, "assign", "low").permutation(pool)
        taken = 0
        for t, c in zip(doses, counts):
            chosen = perm[taken:taken + c]
            stages[chosen] = STAGES.index("low")
            levels[chosen] = t
            taken += c
    return Assignment(stages=stages, levels=levels, seed=seed)


def sample_outcomes(assignment: Assignment, po: PotentialOutcomeModel,
                    seed: int) -> np.ndarray:
    """Bernoulli outcomes, one keyed uniform per unit."""
    n = assignment.levels.size
    u = keyed_uniforms(n, seed, "outcome")
    p = np.array([po.p(t) for t in assignment.levels])
    return (u < p).astype(np.float64)


def estimate_fate(assignment: Assignment, outcomes: np.ndarray) -> tuple[float, float, float]:
    """Stage-group mean differences (low-to-high, low-to-medium, medium-to-high)."""
    means = {}
    for which in STAGES:
        idx = assignment.units_in_stage(which)
        if idx.size == 0:
            raise EmptyGroup(f"no units were assigned in the {which!r} stage")
        means[which] = float(outcomes[idx].mean())
    return (means["high"] - means["low"], means["medium"] - means["low"],
            means["high"] - means["medium"])


def run_fate_experiment(space: TreatmentSpace, po: PotentialOutcomeModel,
                        n: int, seed: int) -> FateReport:
    """Estimands plus their experimental estimates for one seeded run."""
    report = fate(space, po)
    assignment = assign_treatments(space, n, seed)
    outcomes = sample_outcomes(assignment, po, seed)
    est_lh, est_lm, est_mh = estimate_fate(assignment, outcomes)
    return FateReport(fate_lh=report.fate_lh, fate_lm=report.fate_lm,
                      fate_mh=report.fate_mh, est_lh=est_lh, est_lm=est_lm,
                      est_mh=est_mh, n_units=n, seed=seed)


def classic_ate(treated: np.ndarray, outcomes: np.ndarray) -> float:
    """Crisp two-group mean difference: treated minus control."""
    treated = np.asarray(treated, dtype=bool)
    outcomes = np.asarray(outcomes, dtype=np.float64)
    if treated.shape != outcomes.shape:
        raise ValidationError("treatment mask and outcomes must align")
    if not treated.any() or treated.all():
        raise EmptyGroup("both a treated and a control group are required")
    return float(outcomes[treated].mean() - outcomes[~treated].mean())
