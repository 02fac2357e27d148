"""Conditional distributions between draws and selection outcomes.

Nine conditioning patterns arise from crossing what is asked about (a pinned
single-element selection outcome, a full draw-then-select outcome, or a raw
draw) with what is conditioned on.  Each block below implements one pattern's
exact case-split formula; together they are dispatched by :func:`cond_suite`.

All blocks take the A side as the conditioning/own side (draw X on A's
space) and the B side as the other side (draw Y on B's space).  Dependence
beyond the default independence assumptions is declared through a
:class:`JointSpec`; a needed conditional that is neither covered by a default
nor by a supplied table raises :class:`UnresolvedJoint`.

Selection coins for two fixed elements are coupled through the model's
t-norm (the 2x2 joint of :func:`pflogic.models.joint_xi_table`); coins are
independent of the draws unless a draw-dependent table says otherwise, and
the four blocks that consume the 2x2 coin joint reject draw-dependent
selection tables outright, because their case formulas are derived under
coin/draw independence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .dist import DiscreteDist, JointPmf
from .errors import (ConditionImpossible, ImproperAttribute, InconsistentJoint,
                     UnresolvedJoint, ValidationError, ValueNotInSpace)
from .models import (AttributeBinding, SelectionModel, std_cond_prob,
                     std_cond_prob_negated)

_TOL = 1e-9
_EXACT = 1e-12


@dataclass(frozen=True)
class ConditionalPmf:
    """A conditional pmf with an anchor value for shifted expectations.

    ``entries`` hold (value, probability) pairs; the anchor is the base
    element for selection-outcome targets and 0 for draw targets, where the
    shifted expectation is simply the mean.
    """

    anchor: float
    entries: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        total = sum(p for _, p in self.entries)
        if abs(total - 1.0) > _TOL:
            raise ValidationError(f"conditional pmf sums to {total!r}, not 1")
        if any(p < -_EXACT for _, p in self.entries):
            raise ValidationError("conditional pmf has a negative mass")
        object.__setattr__(self, "entries", tuple(
            (float(v), max(0.0, float(p))) for v, p in self.entries))

    def prob(self, value: float) -> float:
        value = float(value)
        return sum(p for v, p in self.entries if v == value)

    @property
    def expectation(self) -> float:
        return self.anchor + sum((v - self.anchor) * p for v, p in self.entries)

    def as_dict(self) -> dict[float, float]:
        out: dict[float, float] = {}
        for v, p in self.entries:
            out[v] = out.get(v, 0.0) + p
        return out


@dataclass(frozen=True)
class JointSpec:
    """Dependence declarations for the conditional suite.

    Every field defaults to None, which means "independent" for that link:

    * ``xy``: joint pmf of the two draws; None means the product of the
      spaces' pmfs.  When supplied its axes must carry exactly the spaces'
      values (zero-probability atoms included).
    * ``b_sel_given_x``: (y, x) -> P(y is B | X=x), the B-side selection
      bias as a function of the A-side draw; None means the model marginal.
    * ``a_sel_given_xy``: (x, y) -> P(x is A | X=x, Y=y), the own-side
      selection bias as a function of both draws; None means the marginal.
    * ``y_given_a_sel``: (beta, x) -> P(Y=beta | (x is A) & X=x); None means
      derive from the other fields (or independence).  Mutually exclusive
      with ``a_sel_given_xy``.
    """

    xy: JointPmf | None = None
    b_sel_given_x: Mapping[tuple[float, float], float] | None = None
    a_sel_given_xy: Mapping[tuple[float, float], float] | None = None
    y_given_a_sel: Mapping[tuple[float, float], float] | None = None

    def __post_init__(self) -> None:
        for name in ("b_sel_given_x", "a_sel_given_xy", "y_given_a_sel"):
            table = getattr(self, name)
            if table is None:
                continue
            for key, p in table.items():
                if not (0.0 <= float(p) <= 1.0):
                    raise ValidationError(f"{name}[{key!r}] = {p!r} outside [0, 1]")
        if self.y_given_a_sel is not None and self.a_sel_given_xy is not None:
            raise ValidationError(
                "y_given_a_sel and a_sel_given_xy cannot both be supplied")

    @property
    def draw_dependent_selection(self) -> bool:
        return self.b_sel_given_x is not None or self.a_sel_given_xy is not None


DEFAULT_JOINT = JointSpec()


# ---------------------------------------------------------------------------
# resolution helpers
# ---------------------------------------------------------------------------

def _joint_for(joint: JointSpec | None) -> JointSpec:
    return DEFAULT_JOINT if joint is None else joint


def _check_axes(joint: JointSpec, bind_a: AttributeBinding,
                bind_b: AttributeBinding) -> None:
    if joint.xy is not None:
        if joint.xy.xs != bind_a.space.values or joint.xy.ys != bind_b.space.values:
            raise ValidationError(
                "joint draw pmf axes must equal the binding spaces' values")


def _draw_weight(joint: JointSpec, bind_a: AttributeBinding,
                 bind_b: AttributeBinding, x: float, y: float) -> float:
    """P(X=x, Y=y)."""
    if joint.xy is not None:
        return joint.xy.prob(x, y)
    return bind_a.space.prob(x) * bind_b.space.prob(y)


def _b_sel_given_x(joint: JointSpec, model: SelectionModel,
                   bind_b: AttributeBinding, y: float,
                   bind_a: AttributeBinding, x: float) -> float:
    """P(y is B | X=x)."""
    if joint.b_sel_given_x is not None:
        try:
            return float(joint.b_sel_given_x[(float(y), float(x))])
        except KeyError:
            raise UnresolvedJoint(
                f"b_sel_given_x table lacks an entry for (y={y!r}, x={x!r})") from None
    return model.select_prob(bind_b, y)


def _a_sel_given_xy(joint: JointSpec, model: SelectionModel,
                    bind_a: AttributeBinding, x: float, y: float) -> float:
    """P(x is A | X=x, Y=y)."""
    if joint.a_sel_given_xy is not None:
        try:
            s = float(joint.a_sel_given_xy[(float(x), float(y))])
        except KeyError:
            raise UnresolvedJoint(
                f"a_sel_given_xy table lacks an entry for (x={x!r}, y={y!r})") from None
    else:
        s = model.select_prob(bind_a, x)
    if float(x) == bind_a.base and s != 0.0:
        raise ImproperAttribute(
            f"selection table gives base element {x!r} probability {s!r}, expected 0")
    return s


def _reject_draw_dependence(joint: JointSpec, block: str) -> None:
    if joint.draw_dependent_selection:
        raise UnresolvedJoint(
            f"{block} assumes selection is independent of the draws; "
            "draw-dependent selection tables are not supported here")


def _require_outcome(alpha: float, x: float, base: float) -> float:
    alpha = float(alpha)
    if alpha not in (float(x), base):
        raise ValueNotInSpace(
            f"{alpha!r} is not an outcome of the pinned selection variable "
            f"(expected {x!r} or {base!r})")
    return alpha


def _two_point(base: float, value: float, p: float) -> ConditionalPmf:
    if float(value) == base:
        return ConditionalPmf(anchor=base, entries=((base, 1.0),))
    return ConditionalPmf(anchor=base, entries=((value, p), (base, 1.0 - p)))


# ---------------------------------------------------------------------------
# the nine blocks
# ---------------------------------------------------------------------------

def xi_point_given_draw(model: SelectionModel, bind_b: AttributeBinding, y: float,
                        bind_a: AttributeBinding, alpha: float,
                        joint: JointSpec | None = None) -> ConditionalPmf:
    """Pinned B-selection outcome for element y, given the draw X=alpha."""
    joint = _joint_for(joint)
    _check_axes(joint, bind_a, bind_b)
    y = float(y)
    if y not in bind_b.space:
        raise ValueNotInSpace(f"{y!r} is not in the B-side space")
    px = (joint.xy.marginal_x() if joint.xy is not None else bind_a.space).prob(alpha)
    if alpha not in bind_a.space:
        raise ValueNotInSpace(f"{alpha!r} is not in the A-side space")
    if px == 0.0:
        raise ConditionImpossible(f"P(X={alpha!r}) = 0")
    q = _b_sel_given_x(joint, model, bind_b, y, bind_a, alpha)
    if y == bind_b.base and q != 0.0:
        raise ImproperAttribute(
            f"selection table gives base element {y!r} probability {q!r}, expected 0")
    return _two_point(bind_b.base, y, q)


def draw_given_xi_point(model: SelectionModel, bind_b: AttributeBinding, y: float,
                        bind_a: AttributeBinding, beta: float,
                        joint: JointSpec | None = None) -> ConditionalPmf:
    """Pmf of the draw X, given the pinned B-selection outcome beta.

    Bayes over the B-selection bias: each draw value's posterior weight is
    its prior times the bias (or one minus it, for the base outcome).
    """
    joint = _joint_for(joint)
    _check_axes(joint, bind_a, bind_b)
    y = float(y)
    beta = _require_outcome(beta, y, bind_b.base)
    dist_x = joint.xy.marginal_x() if joint.xy is not None else bind_a.space
    qs = {x: _b_sel_given_x(joint, model, bind_b, y, bind_a, x)
          for x in dist_x.values}
    if joint.b_sel_given_x is None:
        marginal = model.select_prob(bind_b, y)
    else:
        marginal = sum(qs[x] * p for x, p in dist_x.items())
    if y == bind_b.base:
        # the pinned variable is constant at the base: conditioning is vacuous
        if beta != bind_b.base:
            raise ConditionImpossible("the base element is never selected")
        return ConditionalPmf(anchor=0.0, entries=tuple(dist_x.items()))
    if beta == y:
        if marginal == 0.0:
            raise ConditionImpossible(f"P({y!r} is {bind_b.attr.name!r}) = 0")
        entries = tuple((x, qs[x] * p / marginal) for x, p in dist_x.items())
    else:
        if marginal == 1.0:
            raise ConditionImpossible(
                f"P({y!r} is {bind_b.attr.name!r}) = 1; its negation is impossible")
        entries = tuple((x, (1.0 - qs[x]) * p / (1.0 - marginal))
                        for x, p in dist_x.items())
    return ConditionalPmf(anchor=0.0, entries=entries)


def xi_given_other_draw(model: SelectionModel, bind_a: AttributeBinding,
                        bind_b: AttributeBinding, beta: float,
                        joint: JointSpec | None = None) -> ConditionalPmf:
    """Full A-side outcome distribution, given the other draw Y=beta."""
    joint = _joint_for(joint)
    _check_axes(joint, bind_a, bind_b)
    beta = float(beta)
    if beta not in bind_b.space:
        raise ValueNotInSpace(f"{beta!r} is not in the B-side space")
    if joint.xy is not None:
        x_given_beta = joint.xy.x_given_y(beta)
    else:
        if bind_b.space.prob(beta) == 0.0:
            raise ConditionImpossible(f"P(Y={beta!r}) = 0")
        x_given_beta = bind_a.space
    if joint.a_sel_given_xy is not None:
        for (x, _), s in joint.a_sel_given_xy.items():
            if float(x) == bind_a.base and s != 0.0:
                raise ImproperAttribute(
                    f"selection table gives base element {x!r} "
                    f"probability {s!r}, expected 0")
    entries = []
    selected = 0.0
    for x, w in x_given_beta.items():
        if x == bind_a.base:
            continue
        s = _a_sel_given_xy(joint, model, bind_a, x, beta)
        entries.append((x, s * w))
        selected += s * w
    entries.append((bind_a.base, 1.0 - selected))
    return ConditionalPmf(anchor=bind_a.base, entries=tuple(entries))


def xi_point_given_xi_point(model: SelectionModel, bind_b: AttributeBinding, y: float,
                            bind_a: AttributeBinding, x: float, alpha: float,
                            joint: JointSpec | None = None) -> ConditionalPmf:
    """Pinned B outcome for y, given the pinned A outcome for x equals alpha.

    No draws are involved: this is the conditional of one selection coin
    given the other, through the t-norm-coupled 2x2 joint.
    """
    joint = _joint_for(joint)
    _reject_draw_dependence(joint, "xi_point_given_xi_point")
    y = float(y)
    x = float(x)
    alpha = _require_outcome(alpha, x, bind_a.base)
    if alpha == x and x != bind_a.base:
        q = std_cond_prob(model, bind_b, y, bind_a, x)
    else:
        q = std_cond_prob_negated(model, bind_b, y, bind_a, x)
    if y == bind_b.base:
        return _two_point(bind_b.base, y, 0.0)
    return _two_point(bind_b.base, y, q)


def other_draw_given_xi(model: SelectionModel, bind_a: AttributeBinding,
                        bind_b: AttributeBinding, alpha: float,
                        joint: JointSpec | None = None) -> ConditionalPmf:
    """Pmf of the other draw Y, given the full A-side outcome alpha."""
    joint = _joint_for(joint)
    _check_axes(joint, bind_a, bind_b)
    alpha = float(alpha)
    ys = bind_b.space.values if joint.xy is None else joint.xy.ys
    if joint.y_given_a_sel is not None:
        return _other_draw_given_xi_tabulated(model, bind_a, bind_b, alpha, joint)

    def sel(x: float, beta: float) -> float:
        return _a_sel_given_xy(joint, model, bind_a, x, beta)

    if alpha != bind_a.base:
        if alpha not in bind_a.space:
            raise ValueNotInSpace(f"{alpha!r} is not in the A-side space")
        weights = [(beta, sel(alpha, beta) * _draw_weight(joint, bind_a, bind_b, alpha, beta))
                   for beta in ys]
    else:
        weights = []
        for beta in ys:
            mass = sum((1.0 - sel(x, beta)) * _draw_weight(joint, bind_a, bind_b, x, beta)
                       for x in bind_a.space.values)
            weights.append((beta, mass))
    total = sum(w for _, w in weights)
    if total <= 0.0:
        raise ConditionImpossible(
            f"the A-side outcome {alpha!r} has probability 0")
    return ConditionalPmf(anchor=0.0, entries=tuple((b, w / total) for b, w in weights))


def _other_draw_given_xi_tabulated(model: SelectionModel, bind_a: AttributeBinding,
                                   bind_b: AttributeBinding, alpha: float,
                                   joint: JointSpec) -> ConditionalPmf:
    """Block variant when P(Y=beta | (x is A) & X=x) is tabulated directly."""
    table = joint.y_given_a_sel
    assert table is not None
    ys = bind_b.space.values

    def row(x: float) -> list[float]:
        try:
            r = [float(table[(beta, float(x))]) for beta in ys]
        except KeyError as exc:
            raise UnresolvedJoint(
                f"y_given_a_sel table lacks an entry for x={x!r}: {exc}") from None
        if abs(sum(r) - 1.0) > _EXACT:
            raise ValidationError(
                f"y_given_a_sel row at x={x!r} sums to {sum(r)!r}, not 1")
        return r

    if alpha != bind_a.base:
        if model.select_prob(bind_a, alpha) * bind_a.space.prob(alpha) == 0.0:
            raise ConditionImpossible(
                f"the A-side outcome {alpha!r} has probability 0")
        return ConditionalPmf(anchor=0.0, entries=tuple(zip(ys, row(alpha))))

    # no-selection branch: subtract the selected-branch flow from the draw
    # joint, then normalize what remains
    weights = []
    for j, beta in enumerate(ys):
        mass = 0.0
        for x in bind_a.space.values:
            s = model.select_prob(bind_a, x)
            w_xy = _draw_weight(joint, bind_a, bind_b, x, beta)
            flow = row(x)[j] * s * bind_a.space.prob(x)
            residual = w_xy - flow
            if residual < -_TOL:
                raise InconsistentJoint(
                    f"y_given_a_sel table is inconsistent with the draw joint "
                    f"at (x={x!r}, y={beta!r}): residual {residual!r}")
            mass += max(residual, 0.0)
        weights.append((beta, mass))
    total = sum(w for _, w in weights)
    if total <= 0.0:
        raise ConditionImpossible("the no-selection outcome has probability 0")
    return ConditionalPmf(anchor=0.0, entries=tuple((b, w / total) for b, w in weights))


def own_draw_given_xi(model: SelectionModel, bind_a: AttributeBinding,
                      alpha: float) -> ConditionalPmf:
    """Pmf of the own draw X, given the full A-side outcome alpha.

    A non-base outcome pins the draw; the base outcome reweights every draw
    value by its no-selection probability.
    """
    alpha = float(alpha)
    if alpha != bind_a.base:
        if alpha not in bind_a.space:
            raise ValueNotInSpace(f"{alpha!r} is not in the A-side space")
        if model.select_prob(bind_a, alpha) * bind_a.space.prob(alpha) == 0.0:
            raise ConditionImpossible(f"the A-side outcome {alpha!r} has probability 0")
        return ConditionalPmf(anchor=0.0, entries=((alpha, 1.0),))
    weights = [(x, (1.0 - model.select_prob(bind_a, x)) * p)
               for x, p in bind_a.space.items()]
    total = sum(w for _, w in weights)
    if total <= 0.0:
        raise ConditionImpossible("the no-selection outcome has probability 0")
    return ConditionalPmf(anchor=0.0, entries=tuple((x, w / total) for x, w in weights))


def xi_given_xi_point(model: SelectionModel, bind_b: AttributeBinding,
                      bind_a: AttributeBinding, x: float, alpha: float,
                      joint: JointSpec | None = None) -> ConditionalPmf:
    """Full B-side outcome distribution, given the pinned A outcome for x.

    Every drawn element's selection coin is conditioned on the A coin
    through the 2x2 joint; the draw itself is independent of that coin.
    """
    joint = _joint_for(joint)
    _reject_draw_dependence(joint, "xi_given_xi_point")
    x = float(x)
    alpha = _require_outcome(alpha, x, bind_a.base)
    selected_branch = alpha == x and x != bind_a.base
    entries = []
    mass = 0.0
    for beta, p in bind_b.space.items():
        if beta == bind_b.base or p == 0.0:
            continue
        if selected_branch:
            cond = std_cond_prob(model, bind_b, beta, bind_a, x)
        else:
            cond = std_cond_prob_negated(model, bind_b, beta, bind_a, x)
        entries.append((beta, cond * p))
        mass += cond * p
    entries.append((bind_b.base, 1.0 - mass))
    entries.sort()
    return ConditionalPmf(anchor=bind_b.base, entries=tuple(entries))


def xi_point_given_xi(model: SelectionModel, bind_b: AttributeBinding, y: float,
                      bind_a: AttributeBinding, alpha: float,
                      joint: JointSpec | None = None) -> ConditionalPmf:
    """Pinned B outcome for y, given the full A-side outcome alpha.

    The non-base branch conditions y's coin on the selected draw's coin; the
    base branch averages the negated conditional over the no-selection
    weights of every draw value.
    """
    joint = _joint_for(joint)
    _reject_draw_dependence(joint, "xi_point_given_xi")
    y = float(y)
    if y == bind_b.base:
        return _two_point(bind_b.base, y, 0.0)
    if alpha != bind_a.base:
        alpha = float(alpha)
        if alpha not in bind_a.space:
            raise ValueNotInSpace(f"{alpha!r} is not in the A-side space")
        if model.select_prob(bind_a, alpha) * bind_a.space.prob(alpha) == 0.0:
            raise ConditionImpossible(f"the A-side outcome {alpha!r} has probability 0")
        q = std_cond_prob(model, bind_b, y, bind_a, alpha)
        return _two_point(bind_b.base, y, q)
    num = 0.0
    den = 0.0
    for x, p in bind_a.space.items():
        s = model.select_prob(bind_a, x)
        w = (1.0 - s) * p
        if w == 0.0:
            continue
        num += std_cond_prob_negated(model, bind_b, y, bind_a, x) * w
        den += w
    if den <= 0.0:
        raise ConditionImpossible("the no-selection outcome has probability 0")
    return _two_point(bind_b.base, y, num / den)


def xi_given_xi(model: SelectionModel, bind_b: AttributeBinding,
                bind_a: AttributeBinding, alpha: float,
                joint: JointSpec | None = None,
                alt_weighting: bool = False) -> ConditionalPmf:
    """Full B-side outcome distribution, given the full A-side outcome alpha.

    Mixes the per-draw-value conditionals over the B-side draw.  The default
    mixture weight for the selected branch is the prior P(Y=beta), and the
    no-selection branch divides by the no-selection probability conditioned
    on Y=beta.  With ``alt_weighting`` the selected branch weighs by the
    posterior P(Y=beta | X=alpha) and the no-selection branch by joint
    no-selection masses, which is the exact total-law decomposition when the
    draws are dependent.  Under draw independence the two modes coincide.
    """
    joint = _joint_for(joint)
    _reject_draw_dependence(joint, "xi_given_xi")
    _check_axes(joint, bind_a, bind_b)
    alpha = float(alpha)
    dist_x = joint.xy.marginal_x() if joint.xy is not None else bind_a.space
    dist_y = joint.xy.marginal_y() if joint.xy is not None else bind_b.space

    def y_given_x(beta: float, x: float) -> float:
        if joint.xy is None:
            return bind_b.space.prob(beta)
        px = dist_x.prob(x)
        return 0.0 if px == 0.0 else joint.xy.prob(x, beta) / px

    entries = []
    mass = 0.0
    if alpha != bind_a.base:
        if alpha not in bind_a.space:
            raise ValueNotInSpace(f"{alpha!r} is not in the A-side space")
        p_alpha = dist_x.prob(alpha)
        if model.select_prob(bind_a, alpha) * p_alpha == 0.0:
            raise ConditionImpossible(f"the A-side outcome {alpha!r} has probability 0")
        for beta in bind_b.space.values:
            if beta == bind_b.base:
                continue
            w = y_given_x(beta, alpha) if alt_weighting else dist_y.prob(beta)
            if w == 0.0:
                continue
            cond = std_cond_prob(model, bind_b, beta, bind_a, alpha)
            entries.append((beta, cond * w))
            mass += cond * w
    else:
        for beta in bind_b.space.values:
            if beta == bind_b.base:
                continue
            cell = _xi_given_xi_base_cell(model, bind_b, beta, bind_a,
                                          y_given_x, dist_x, alt_weighting)
            if cell == 0.0:
                continue
            entries.append((beta, cell))
            mass += cell
    entries.append((bind_b.base, 1.0 - mass))
    entries.sort()
    return ConditionalPmf(anchor=bind_b.base, entries=tuple(entries))


def _xi_given_xi_base_cell(model, bind_b, beta, bind_a, y_given_x, dist_x,
                           alt_weighting: bool) -> float:
    """One no-selection-branch cell of :func:`xi_given_xi`.

    Both modes share the numerator, a no-selection-weighted average of the
    negated conditionals.  The default mode divides by the no-selection
    probability given Y=beta; the alternative divides by the unconditional
    no-selection probability, which is the exact Bayes denominator.
    """
    num = 0.0
    omega_mass_beta = 0.0   # P(some draw selected, Y=beta)
    p_beta = 0.0            # P(Y=beta)
    no_sel = 0.0            # P(no draw selected)
    for x, px in dist_x.items():
        s = model.select_prob(bind_a, x)
        no_sel += (1.0 - s) * px
        y_w = y_given_x(beta, x)
        p_beta += y_w * px
        omega_mass_beta += s * y_w * px
        w = (1.0 - s) * y_w * px
        if w == 0.0:
            continue
        num += std_cond_prob_negated(model, bind_b, beta, bind_a, x) * w
    if alt_weighting:
        if no_sel <= 0.0:
            raise ConditionImpossible("the no-selection outcome has probability 0")
        return num / no_sel
    if p_beta == 0.0:
        return 0.0
    denom = 1.0 - omega_mass_beta / p_beta
    if denom <= 0.0:
        raise ConditionImpossible(
            f"the no-selection outcome has probability 0 given Y={beta!r}")
    return num / denom


_BLOCKS = {
    "xi_point_given_draw": xi_point_given_draw,
    "draw_given_xi_point": draw_given_xi_point,
    "xi_given_other_draw": xi_given_other_draw,
    "xi_point_given_xi_point": xi_point_given_xi_point,
    "other_draw_given_xi": other_draw_given_xi,
    "own_draw_given_xi": own_draw_given_xi,
    "xi_given_xi_point": xi_given_xi_point,
    "xi_point_given_xi": xi_point_given_xi,
    "xi_given_xi": xi_given_xi,
}


def block_names() -> tuple[str, ...]:
    return tuple(_BLOCKS)


def cond_suite(block: str, model: SelectionModel, bind_a: AttributeBinding,
               bind_b: AttributeBinding, joint: JointSpec | None = None,
               **params) -> ConditionalPmf:
    """Dispatch a conditioning pattern by name.

    Parameters beyond the common ones are block-specific (pinned elements,
    outcomes, draw values) and passed through as keywords.
    """
    try:
        fn = _BLOCKS[block]
    except KeyError:
        raise ValidationError(
            f"unknown conditional block {block!r}; known: {sorted(_BLOCKS)}") from None
    if block == "own_draw_given_xi":
        return fn(model, bind_a, **params)
    if block in ("xi_point_given_draw", "draw_given_xi_point",
                 "xi_point_given_xi_point", "xi_point_given_xi"):
        if "y" not in params:
            raise ValidationError(f"block {block!r} needs a y parameter")
        return fn(model, bind_b, params.pop("y"), bind_a, joint=joint, **params)
    if block in ("xi_given_xi_point", "xi_given_xi"):
        return fn(model, bind_b, bind_a, joint=joint, **params)
    return fn(model, bind_a, bind_b, joint=joint, **params)
