"""Selection-outcome distributions for the draw-then-select experiment.

For a fixed element x, the outcome variable takes the value x when x is
selected as attribute A and the base element x_A otherwise.  For a random
draw X it takes the drawn value when that draw is selected and x_A when
nothing is.  Expectations follow the shifted form

    E = x_A + sum over x of (x - x_A) * P(x is A) * P(X = x),

which is also how conditional expectations of any two-or-more-point pmf are
computed throughout: anchor at the base value, add base-relative deviations
weighted by their conditional masses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .dist import DiscreteDist
from .errors import ValueNotInSpace, ZeroProbabilityEvent
from .models import AttributeBinding, SelectionModel, validate_binding


@dataclass(frozen=True)
class XiPointDist:
    """Two-point outcome distribution for a fixed element.

    Mass ``p`` at ``x`` (the element, if selected) and ``1 - p`` at ``base``.
    When x is the base element itself, p is 0 and this degenerates to the
    point mass at the base.
    """

    x: float
    base: float
    p: float

    @property
    def expectation(self) -> float:
        return self.base + (self.x - self.base) * self.p

    def prob(self, alpha: float) -> float:
        alpha = float(alpha)
        if alpha == self.x == self.base:
            return 1.0
        if alpha == self.x:
            return self.p
        if alpha == self.base:
            return 1.0 - self.p
        return 0.0

    def pmf(self) -> DiscreteDist:
        if self.x == self.base or self.p == 1.0:
            return DiscreteDist((self.base,), (1.0,)) if self.x == self.base \
                else DiscreteDist((self.x,), (1.0,))
        return DiscreteDist.from_pairs([(self.x, self.p), (self.base, 1.0 - self.p)])


@dataclass(frozen=True)
class XiDist:
    """Outcome distribution of the full draw-then-select experiment."""

    binding: AttributeBinding
    pmf: DiscreteDist
    omega_is: float  # P(some drawn element is selected)

    @property
    def base(self) -> float:
        return self.binding.base

    def prob(self, alpha: float) -> float:
        return self.pmf.prob(alpha)

    @property
    def expectation(self) -> float:
        base = self.binding.base
        return base + sum((v - base) * p for v, p in self.pmf.items() if v != base)


def prob_omega_is(model: SelectionModel, binding: AttributeBinding) -> float:
    """P(the drawn element is selected as A) = sum of P(x is A) P(X = x)."""
    validate_binding(model, binding)
    return sum(model.select_prob(binding, v) * p for v, p in binding.space.items())


def xi_point(model: SelectionModel, binding: AttributeBinding, x: float) -> XiPointDist:
    """The two-point outcome distribution for the fixed element ``x``."""
    x = float(x)
    if x not in binding.space:
        raise ValueNotInSpace(
            f"{x!r} is not in the space of attribute {binding.attr.name!r}")
    validate_binding(model, binding)
    return XiPointDist(x=x, base=binding.base, p=model.select_prob(binding, x))


def xi_dist(model: SelectionModel, binding: AttributeBinding) -> XiDist:
    """Outcome distribution when the element is drawn from the space's pmf.

    Mass at x != base is P(x is A) P(X = x); the base collects the rest.
    """
    validate_binding(model, binding)
    base = binding.base
    masses: dict[float, float] = {}
    omega = 0.0
    for v, p in binding.space.items():
        if v == base:
            continue
        m = model.select_prob(binding, v) * p
        masses[v] = m
        omega += m
    masses[base] = 1.0 - omega
    return XiDist(binding=binding, pmf=DiscreteDist.from_pairs(masses.items()),
                  omega_is=omega)


def expect_xi(model: SelectionModel, binding: AttributeBinding) -> float:
    """E of the draw-then-select outcome, in shifted (base-anchored) form."""
    validate_binding(model, binding)
    base = binding.base
    return base + sum((v - base) * model.select_prob(binding, v) * p
                      for v, p in binding.space.items() if v != base)


def shifted_conditional_expectation(pmf: Mapping[float, float] | DiscreteDist,
                                    anchor: float) -> float:
    """anchor + sum of (value - anchor) * mass over the pmf.

    Algebraically the plain mean whenever the pmf sums to 1, but exact for
    the anchor-heavy two-point pmfs this package produces, and well defined
    for conditional pmfs supplied as plain dicts.
    """
    return anchor + sum((v - anchor) * m for v, m in pmf.items())


# ---------------------------------------------------------------------------
# event-probability bridge: membership-weighted probability and centroid
# ---------------------------------------------------------------------------

def zadeh_prob(binding: AttributeBinding) -> float:
    """Membership-weighted probability of the fuzzy event: sum mu(x) P(X=x)."""
    return sum(binding.attr.degree(v) * p for v, p in binding.space.items())


def zadeh_mean(binding: AttributeBinding) -> float:
    """Probability-weighted centroid of the fuzzy event.

    sum of x mu(x) P(X=x) divided by the event probability; undefined (and
    raised) when the event probability is zero.
    """
    prob = zadeh_prob(binding)
    if prob == 0.0:
        raise ZeroProbabilityEvent(
            f"fuzzy event {binding.attr.name!r} has probability 0")
    num = sum(v * binding.attr.degree(v) * p for v, p in binding.space.items())
    return num / prob
