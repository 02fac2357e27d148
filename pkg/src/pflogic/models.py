"""Selection models: how membership degrees become selection probabilities.

The central experiment is draw-then-select.  A random draw X picks an element
x of a finite space; a Bernoulli selection then accepts x as a carrier of the
fuzzy attribute A with probability P(x is A), or yields the designated base
element x_A (the "nothing was selected" outcome, which by construction can
never itself be selected as A).

A :class:`SelectionModel` fixes the rule P(x is A) and the t-norm used to
conjoin selection events.  The model kinds:

* ``Classic``:           mu_A(x) / sum of mu_A over the space
* ``ClassicProbBased``:  mu_A(x) * P(X = x)
* ``SimpleFuzzy``:       mu_A(x)
* ``RelativeFuzzy``:     mu_A(x) / sum of sibling memberships at x
* ``MembershipScaled``:  P(X = mu_A(x) * x)
* ``GeneralizedMembership``: a base rule with mu_D(x) replaced by
  mu_D(x) ** r(D, x) everywhere
* ``GeneralizedStandard``: base rule for marginals; conditionals scale the
  numerator probability by a fixed factor r before the t-norm
* ``RandomGeneralizedStandard``: same, with r drawn per (attribute, element)
  from a finite scale distribution via a keyed deterministic stream

Standard conditionals follow the ratio form: P(y is B | x is A) is
T(P(y is B), P(x is A)) / P(x is A), with the numerator probability possibly
transformed by the generalized kinds.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .dist import DiscreteDist, JointPmf
from .errors import (ConditionImpossible, EmptySupport, ImproperAttribute,
                     InconsistentJoint, ValidationError, ValueNotInSpace)
from .membership import FuzzyAttribute
from .rng import keyed_uniform
from .tnorms import MIN, TNorm, fold

_JOINT_TOL = 1e-12


@dataclass(frozen=True)
class AttributeBinding:
    """An attribute attached to a space, with its base element.

    ``base`` is the element standing for "nothing selected"; it must be a
    value of the space.  Whether the binding is proper (zero selection
    probability at the base) depends on the model, so that check lives in
    :func:`validate_binding` / :func:`check_proper` rather than here.
    """

    attr: FuzzyAttribute
    base: float
    space: DiscreteDist

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", float(self.base))
        if self.base not in self.space:
            raise ValueNotInSpace(
                f"base element {self.base!r} of {self.attr.name!r} is not in the space")


@dataclass(frozen=True, kw_only=True)
class SelectionModel:
    """Base class; concrete kinds override :meth:`_rule`."""

    tnorm: TNorm = MIN

    # -- the selection rule ------------------------------------------------

    def select_prob(self, binding: AttributeBinding, x: float) -> float:
        """P(x is A) for an element of the binding's space."""
        x = float(x)
        if x not in binding.space:
            raise ValueNotInSpace(
                f"{x!r} is not in the space of attribute {binding.attr.name!r}")
        p = self._rule(binding, x)
        if not (0.0 <= p <= 1.0):
            # all rules are ratios/products of unit-interval quantities, so
            # anything beyond rounding noise is a bug worth surfacing
            if -1e-12 <= p < 0.0:
                return 0.0
            if 1.0 < p <= 1.0 + 1e-12:
                return 1.0
            raise ValidationError(
                f"selection rule produced {p!r} for {binding.attr.name!r} at {x!r}")
        return p

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        raise NotImplementedError

    # -- conditional hooks ---------------------------------------------------

    def cond_numerator(self, binding: AttributeBinding, y: float) -> float:
        """The value fed to the t-norm for the selected side of a conditional.

        Plain kinds use the selection probability itself; generalized kinds
        rescale it here.
        """
        return self.select_prob(binding, y)


@dataclass(frozen=True, kw_only=True)
class Classic(SelectionModel):
    """Membership normalized by its total over the space."""

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        total = sum(binding.attr.degree(v) for v in binding.space.values)
        if total <= 0.0:
            raise EmptySupport(
                f"attribute {binding.attr.name!r} has zero total membership")
        return binding.attr.degree(x) / total


@dataclass(frozen=True, kw_only=True)
class ClassicProbBased(SelectionModel):
    """Membership times draw probability."""

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        return binding.attr.degree(x) * binding.space.prob(x)


@dataclass(frozen=True, kw_only=True)
class SimpleFuzzy(SelectionModel):
    """The membership degree itself."""

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        return binding.attr.degree(x)


@dataclass(frozen=True, kw_only=True)
class RelativeFuzzy(SelectionModel):
    """Membership normalized by the frame of sibling attributes at x.

    The frame must contain the bound attribute itself.  Where the whole
    frame vanishes the rule returns 0 (the numerator vanishes there too).
    """

    frame: tuple[FuzzyAttribute, ...]

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        names = [d.name for d in self.frame]
        if binding.attr.name not in names:
            raise ValidationError(
                f"attribute {binding.attr.name!r} missing from its frame {names}")
        own = binding.attr.degree(x)
        if own == 0.0:
            return 0.0
        return own / sum(d.degree(x) for d in self.frame)


@dataclass(frozen=True, kw_only=True)
class MembershipScaled(SelectionModel):
    """P(x is A) = P(X = mu_A(x) * x), matching atoms within 1e-9."""

    atol: float = 1e-9

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        scaled = binding.attr.degree(x) * x
        hit = binding.space.nearest_value(scaled, self.atol)
        return 0.0 if hit is None else binding.space.prob(hit)


@dataclass(frozen=True)
class Exponents:
    """Per-(attribute, element) membership exponents with a constant default."""

    default: float = 1.0
    entries: Mapping[tuple[str, float], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.default < 0.0 or any(r < 0.0 for r in self.entries.values()):
            raise ValidationError("membership exponents must be nonnegative")

    def lookup(self, name: str, x: float) -> float:
        return self.entries.get((name, float(x)), self.default)


class _PoweredAttribute:
    """Attribute view with degree mu(x) ** r(name, x); duck-types FuzzyAttribute."""

    __slots__ = ("_inner", "_exps", "name")

    def __init__(self, inner, exps: Exponents) -> None:
        self._inner = inner
        self._exps = exps
        self.name = inner.name

    def degree(self, x: float) -> float:
        return self._inner.degree(x) ** self._exps.lookup(self.name, x)


def _plain_base(model: SelectionModel | None) -> SelectionModel:
    if model is None:
        return SimpleFuzzy()
    if isinstance(model, (GeneralizedMembership, GeneralizedStandard,
                          RandomGeneralizedStandard)):
        raise ValidationError("generalized models cannot nest another generalized base")
    return model


@dataclass(frozen=True, kw_only=True)
class GeneralizedMembership(SelectionModel):
    """A membership-based rule with every degree raised to a tabulated power."""

    exponents: Exponents = field(default_factory=Exponents)
    base: SelectionModel | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", _plain_base(self.base))

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        base = self.base
        assert base is not None
        powered = replace(binding, attr=_PoweredAttribute(binding.attr, self.exponents))
        if isinstance(base, RelativeFuzzy):
            base = replace(base, frame=tuple(
                _PoweredAttribute(d, self.exponents) for d in base.frame))
        return base._rule(powered, float(x))


@dataclass(frozen=True, kw_only=True)
class GeneralizedStandard(SelectionModel):
    """Base rule for marginals; conditional numerators scaled by a constant.

    The conditional P(y is B | x is A) becomes
    T(clamp(scale * P(y is B)), P(x is A)) / P(x is A).
    """

    scale: float = 1.0
    base: SelectionModel | None = None

    def __post_init__(self) -> None:
        if self.scale < 0.0:
            raise ValidationError(f"scale must be nonnegative, got {self.scale!r}")
        object.__setattr__(self, "base", _plain_base(self.base))

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        return self.base._rule(binding, float(x))  # type: ignore[union-attr]

    def cond_numerator(self, binding: AttributeBinding, y: float) -> float:
        return min(1.0, max(0.0, self.scale * self.select_prob(binding, y)))


@dataclass(frozen=True, kw_only=True)
class RandomGeneralizedStandard(SelectionModel):
    """Like GeneralizedStandard with the scale drawn per (attribute, element).

    The draw comes from a keyed counter-based stream, so repeating a query
    always reproduces the same scale; distinct elements or attributes get
    independent draws.
    """

    scale_dist: DiscreteDist
    seed: int = 0
    base: SelectionModel | None = None

    def __post_init__(self) -> None:
        if any(v < 0.0 for v in self.scale_dist.values):
            raise ValidationError("scale distribution must be over nonnegative values")
        object.__setattr__(self, "base", _plain_base(self.base))

    def _rule(self, binding: AttributeBinding, x: float) -> float:
        return self.base._rule(binding, float(x))  # type: ignore[union-attr]

    def drawn_scale(self, attr_name: str, y: float) -> float:
        u = keyed_uniform(self.seed, "scale", attr_name, float(y))
        acc = 0.0
        for v, p in self.scale_dist.items():
            acc += p
            if u < acc:
                return v
        return self.scale_dist.values[-1]

    def cond_numerator(self, binding: AttributeBinding, y: float) -> float:
        r = self.drawn_scale(binding.attr.name, float(y))
        return min(1.0, max(0.0, r * self.select_prob(binding, y)))


# ---------------------------------------------------------------------------
# free-function API over (model, binding)
# ---------------------------------------------------------------------------

def select_prob(model: SelectionModel, binding: AttributeBinding, x: float) -> float:
    return model.select_prob(binding, x)


def validate_binding(model: SelectionModel, binding: AttributeBinding) -> None:
    """Raise ImproperAttribute unless the base element has zero selection."""
    p = model.select_prob(binding, binding.base)
    if p != 0.0:
        raise ImproperAttribute(
            f"base element {binding.base!r} of {binding.attr.name!r} has selection "
            f"probability {p!r}, expected 0")


def check_proper(model: SelectionModel, binding: AttributeBinding) -> dict:
    """Report properness: base selection must be exactly zero.

    ``witnesses`` lists every element with zero selection probability (the
    existence of at least one is part of properness, and the base must be
    among them).
    """
    witnesses = tuple(v for v in binding.space.values
                      if model.select_prob(binding, v) == 0.0)
    base_ok = binding.base in witnesses
    return {"proper": base_ok, "witnesses": witnesses}


def std_cond_prob(model: SelectionModel, bind_b: AttributeBinding, y: float,
                  bind_a: AttributeBinding, x: float) -> float:
    """P(y is B | x is A) in ratio form: T(P_B, P_A) / P_A.

    Requires P(x is A) > 0; the generalized kinds transform P_B first.
    """
    pa = model.select_prob(bind_a, x)
    if pa == 0.0:
        raise ConditionImpossible(
            f"P({x!r} is {bind_a.attr.name!r}) = 0; cannot condition on it")
    pb = model.cond_numerator(bind_b, y)
    return model.tnorm(pb, pa) / pa


def std_cond_prob_negated(model: SelectionModel, bind_b: AttributeBinding, y: float,
                          bind_a: AttributeBinding, x: float) -> float:
    """P(y is B | x is NOT selected as A), by the total law.

    (P_B - P(y is B | x is A) * P_A) / (1 - P_A).  Requires P_A < 1.  The
    result is a probability whenever the t-norm dominates Lukasiewicz; a
    value outside [0, 1] means the implied 2x2 joint is incoherent and
    raises InconsistentJoint rather than being clipped.
    """
    pa = model.select_prob(bind_a, x)
    if pa >= 1.0:
        raise ConditionImpossible(
            f"P({x!r} is {bind_a.attr.name!r}) = 1; its negation is impossible")
    if pa == 0.0:
        return model.select_prob(bind_b, y)
    cond = std_cond_prob(model, bind_b, y, bind_a, x)
    value = (model.select_prob(bind_b, y) - cond * pa) / (1.0 - pa)
    if value < -_JOINT_TOL or value > 1.0 + _JOINT_TOL:
        raise InconsistentJoint(
            f"negated conditional {value!r} outside [0, 1]; the t-norm "
            f"{model.tnorm.name!r} undershoots the Frechet bound at these marginals")
    return min(1.0, max(0.0, value))


def std_cond_prob_multi(model: SelectionModel,
                        numerators: Sequence[tuple[AttributeBinding, float]],
                        denominators: Sequence[tuple[AttributeBinding, float]]) -> float:
    """Conditional of a conjunction of selections given another conjunction.

    T-folds the numerator selections together with the condition selections,
    then divides by the T-fold of the conditions alone.  An empty numerator
    conjunction yields 1.  Generalized kinds transform numerator-side
    probabilities only.
    """
    den_probs = [model.select_prob(b, v) for b, v in denominators]
    denom = fold(model.tnorm, den_probs)
    if denom == 0.0:
        raise ConditionImpossible("conditioning conjunction has probability 0")
    num_probs = [model.cond_numerator(b, v) for b, v in numerators]
    joint = fold(model.tnorm, num_probs + den_probs)
    return joint / denom


@dataclass(frozen=True)
class XiJointTable:
    """2x2 joint of a pair of single-element selection outcomes.

    Rows: the A-side outcome (x selected / base).  Columns: the B-side
    outcome (y selected / base).
    """

    x: float
    base_a: float
    y: float
    base_b: float
    sel_sel: float
    sel_base: float
    base_sel: float
    base_base: float

    def prob(self, alpha: float, beta: float) -> float:
        try:
            i = (self.x, self.base_a).index(float(alpha))
            j = (self.y, self.base_b).index(float(beta))
        except ValueError:
            raise ValueNotInSpace(
                f"({alpha!r}, {beta!r}) is not an outcome pair of this table") from None
        return ((self.sel_sel, self.sel_base), (self.base_sel, self.base_base))[i][j]

    def marginal_a(self) -> float:
        return self.sel_sel + self.sel_base

    def marginal_b(self) -> float:
        return self.sel_sel + self.base_sel

    def as_rows(self) -> list[tuple[float, float, float]]:
        return [
            (self.x, self.y, self.sel_sel),
            (self.x, self.base_b, self.sel_base),
            (self.base_a, self.y, self.base_sel),
            (self.base_a, self.base_b, self.base_base),
        ]


def joint_xi_table(model: SelectionModel, bind_a: AttributeBinding, x: float,
                   bind_b: AttributeBinding, y: float) -> XiJointTable:
    """The 2x2 joint of the two selection outcomes for fixed elements x, y.

    The selected-selected cell is T(P_A, P_B); the rest follow from the
    marginals.  A negative cell (t-norm below the Frechet lower bound)
    raises InconsistentJoint.
    """
    pa = model.select_prob(bind_a, x)
    pb = model.select_prob(bind_b, y)
    c_ss = model.tnorm(pa, pb)
    c_sb = pa - c_ss
    c_bs = pb - c_ss
    c_bb = (1.0 - pb) - c_sb
    cells = (c_ss, c_sb, c_bs, c_bb)
    if any(c < -_JOINT_TOL for c in cells):
        raise InconsistentJoint(
            f"2x2 selection joint has a negative cell for t-norm {model.tnorm.name!r} "
            f"at marginals ({pa!r}, {pb!r})")
    c_ss, c_sb, c_bs, c_bb = (max(c, 0.0) for c in cells)
    total = c_ss + c_sb + c_bs + c_bb
    if abs(total - 1.0) > _JOINT_TOL:
        raise InconsistentJoint(f"2x2 selection joint sums to {total!r}")
    return XiJointTable(float(x), bind_a.base, float(y), bind_b.base,
                        c_ss, c_sb, c_bs, c_bb)


# ---------------------------------------------------------------------------
# optional non-standard conditional hooks
# ---------------------------------------------------------------------------

def nonstd_cond_prob_draw_weighted(model: ClassicProbBased,
                                   bind_b: AttributeBinding, y: float,
                                   bind_a: AttributeBinding, x: float,
                                   y_given_x: float) -> float:
    """Membership-ratio conditional weighted by the draw conditional.

    T(mu_B(y), mu_A(x)) / mu_A(x) * P(Y=y | X=x), the draw conditional being
    supplied by the caller.  Only meaningful for the draw-weighted model.
    """
    if not isinstance(model, ClassicProbBased):
        raise ValidationError(
            "draw-weighted conditional needs a ClassicProbBased model, "
            f"got {type(model).__name__}")
    mu_a = bind_a.attr.degree(x)
    if mu_a == 0.0:
        raise ConditionImpossible(
            f"membership of {x!r} in {bind_a.attr.name!r} is 0")
    if not (0.0 <= y_given_x <= 1.0):
        raise ValidationError(f"draw conditional {y_given_x!r} outside [0, 1]")
    return model.tnorm(bind_b.attr.degree(y), mu_a) / mu_a * y_given_x


def nonstd_cond_prob_scaled_draw(model: MembershipScaled,
                                 bind_b: AttributeBinding, y: float,
                                 bind_a: AttributeBinding, x: float,
                                 joint: JointPmf) -> float:
    """P(Y = mu_B(y)*y | X = mu_A(x)*x) under a supplied draw joint."""
    if not isinstance(model, MembershipScaled):
        raise ValidationError(
            "scaled-draw conditional needs a MembershipScaled model, "
            f"got {type(model).__name__}")
    xs = joint.marginal_x()
    x_scaled = xs.nearest_value(bind_a.attr.degree(x) * x, model.atol)
    if x_scaled is None or xs.prob(x_scaled) == 0.0:
        raise ConditionImpossible(
            f"scaled condition value for {x!r} has zero draw probability")
    ys = joint.marginal_y()
    y_scaled = ys.nearest_value(bind_b.attr.degree(y) * y, model.atol)
    if y_scaled is None:
        return 0.0
    return joint.prob(x_scaled, y_scaled) / xs.prob(x_scaled)


def classic_complement_identity_holds(attr: FuzzyAttribute, space: DiscreteDist,
                                      tol: float = 1e-12) -> bool:
    """Whether P(x is A) + P(x is "not A") = 1 for every x under Classic.

    "not A" carries membership 1 - mu_A.  The identity characterizes crisp
    singleton memberships on two-element spaces; everywhere else it fails,
    which is easy to check directly.
    """
    n = len(space)
    total = sum(attr.degree(v) for v in space.values)
    comp_total = n - total
    if total <= 0.0 or comp_total <= 0.0:
        return False
    return all(
        abs(attr.degree(v) / total + (1.0 - attr.degree(v)) / comp_total - 1.0) <= tol
        for v in space.values)
