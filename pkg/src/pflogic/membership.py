"""Piecewise-linear membership functions and named fuzzy attributes."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .errors import ValidationError
from .tnorms import TNorm


@dataclass(frozen=True)
class MembershipFunction:
    """Piecewise-linear map from a real interval into [0, 1].

    ``points`` are (x, degree) breakpoints with strictly increasing x and
    degrees in [0, 1].  Between breakpoints the degree is linearly
    interpolated; outside [x_first, x_last] it is 0.  Evaluation at a
    breakpoint returns the stored degree exactly, never an interpolated
    reconstruction of it.
    """

    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.points) < 1:
            raise ValidationError("membership function needs at least one breakpoint")
        pts = tuple((float(x), float(d)) for x, d in self.points)
        object.__setattr__(self, "points", pts)
        xs = [x for x, _ in pts]
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise ValidationError(f"breakpoint abscissas must be strictly increasing: {xs}")
        for x, d in pts:
            if not (0.0 <= d <= 1.0):
                raise ValidationError(f"degree {d!r} at x={x!r} outside [0, 1]")
        object.__setattr__(self, "_xs", tuple(xs))

    @property
    def domain(self) -> tuple[float, float]:
        """The closed interval on which the function may be nonzero."""
        return self.points[0][0], self.points[-1][0]

    def __call__(self, x: float) -> float:
        x = float(x)
        xs: tuple[float, ...] = self._xs  # type: ignore[attr-defined]
        lo, hi = xs[0], xs[-1]
        if x < lo or x > hi:
            return 0.0
        # bisect_right-1 gives the segment whose left knot is <= x; exact
        # knot hits return the stored degree.
        i = bisect_right(xs, x) - 1
        x0, d0 = self.points[i]
        if x == x0:
            return d0
        x1, d1 = self.points[i + 1]
        return d0 + (x - x0) * (d1 - d0) / (x1 - x0)


def triangular(a: float, peak: float, b: float) -> MembershipFunction:
    """Triangle rising from 0 at ``a`` to 1 at ``peak`` and back to 0 at ``b``."""
    return MembershipFunction(((a, 0.0), (peak, 1.0), (b, 0.0)))


def trapezoidal(a: float, b: float, c: float, d: float) -> MembershipFunction:
    """Trapezoid: 0 at ``a``, 1 on [b, c], 0 at ``d``.

    Degenerate equal abscissas are not supported; use explicit breakpoints
    for shoulder shapes that start or end at full degree.
    """
    return MembershipFunction(((a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)))


def left_shoulder(full_until: float, zero_at: float) -> MembershipFunction:
    """Degree 1 up to ``full_until``, falling linearly to 0 at ``zero_at``.

    The function is 0 outside its breakpoint span, so extend ``full_until``
    down to the support's lower edge when full degree should start there.
    """
    return MembershipFunction(((full_until, 1.0), (zero_at, 0.0)))


def right_shoulder(zero_at: float, full_from: float) -> MembershipFunction:
    """Degree 0 at ``zero_at``, rising linearly to 1 at ``full_from``."""
    return MembershipFunction(((zero_at, 0.0), (full_from, 1.0)))


@dataclass(frozen=True)
class FuzzyAttribute:
    """A named membership function, e.g. "early" over delivery days."""

    name: str
    membership: MembershipFunction

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("attribute name must be nonempty")

    def degree(self, x: float) -> float:
        return self.membership(x)


def membership_eval(attr: FuzzyAttribute | MembershipFunction, x: float) -> float:
    """Degree of ``x`` under the attribute's membership function."""
    if isinstance(attr, FuzzyAttribute):
        return attr.degree(x)
    return attr(x)


def tnorm_and_membership(t: TNorm, first: FuzzyAttribute, second: FuzzyAttribute,
                         x: float) -> float:
    """Combined degree of ``x`` carrying both attributes, via the t-norm."""
    return t(membership_eval(first, x), membership_eval(second, x))
