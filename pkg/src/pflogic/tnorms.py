"""Triangular norms on the unit interval.

A t-norm is a binary operation T on [0, 1] that is commutative, associative,
nondecreasing in each argument, and has 1 as identity.  They play the role of
AND when combining selection probabilities of fuzzy attributes.

Every concrete norm here routes through the same evaluation wrapper, which

* validates both arguments against [0, 1] (values up to 1e-12 outside are
  snapped to the boundary, anything further raises :class:`DomainError`),
* short-circuits the boundary cases ``T(1, b) = b``, ``T(a, 1) = a`` and
  ``T(0, b) = T(a, 0) = 0`` before any arithmetic runs.

The short-circuit is not an optimization.  Formulas such as Lukasiewicz's
``max(0, a + b - 1)`` do not return ``a`` exactly for ``b = 1`` in floating
point (``(0.001 + 1) - 1 != 0.001``), and the identity axiom is an exact
contract here.  It also keeps the log-space Aczel-Alsina form away from
``log(0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError

_SNAP = 1e-12


def _unit(v: float, side: str) -> float:
    v = float(v)
    if 0.0 <= v <= 1.0:
        return v
    if -_SNAP <= v < 0.0:
        return 0.0
    if 1.0 < v <= 1.0 + _SNAP:
        return 1.0
    raise DomainError(f"t-norm argument {side}={v!r} outside [0, 1]")


class TNorm:
    """Base class; subclasses provide the open-interval formula."""

    name = "?"

    def __call__(self, a: float, b: float) -> float:
        a = _unit(a, "a")
        b = _unit(b, "b")
        if a == 1.0:
            return b
        if b == 1.0:
            return a
        if a == 0.0 or b == 0.0:
            return 0.0
        return self._interior(a, b)

    def _interior(self, a: float, b: float) -> float:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<tnorm {self.name}>"


class Minimum(TNorm):
    """T(a, b) = min(a, b), the pointwise largest t-norm."""

    name = "min"

    def _interior(self, a: float, b: float) -> float:
        return a if a <= b else b


class Product(TNorm):
    """T(a, b) = a * b."""

    name = "product"

    def _interior(self, a: float, b: float) -> float:
        return a * b


class Lukasiewicz(TNorm):
    """T(a, b) = max(0, a + b - 1)."""

    name = "lukasiewicz"

    def _interior(self, a: float, b: float) -> float:
        s = a + b - 1.0
        return s if s > 0.0 else 0.0


class Drastic(TNorm):
    """The pointwise smallest t-norm: b when a = 1, a when b = 1, else 0.

    The boundary cases are handled by the shared wrapper, so the interior
    is constant zero.
    """

    name = "drastic"

    def _interior(self, a: float, b: float) -> float:
        return 0.0


class NilpotentMinimum(TNorm):
    """min(a, b) when a + b > 1, else 0."""

    name = "nilpotent_min"

    def _interior(self, a: float, b: float) -> float:
        if a + b > 1.0:
            return a if a <= b else b
        return 0.0


class HamacherProduct(TNorm):
    """a*b / (a + b - a*b), with T(0, 0) = 0.

    The denominator is 1 - (1-a)(1-b), strictly positive on the open square,
    and the 0/0 corner is caught by the wrapper's zero short-circuit.
    """

    name = "hamacher"

    def _interior(self, a: float, b: float) -> float:
        return (a * b) / (a + b - a * b)


@dataclass(frozen=True, repr=False)
class AczelAlsina(TNorm):
    """Aczel-Alsina family with parameter p in [0, inf].

    p = 0 degenerates to the drastic norm, p = inf to min; in between

        T_p(a, b) = exp(-((-log a)^p + (-log b)^p)^(1/p)).

    The interior is evaluated in log space with a max/min factorization:
    with u = -log a, v = -log b, m = max(u, v) and r = min(u, v)/m the
    exponent is m * (1 + r^p)^(1/p).  For huge p the r^p term underflows to
    zero and the value collapses onto min(a, b) without overflow, so the
    whole parameter ray is numerically safe.
    """

    p: float

    def __post_init__(self) -> None:
        if not (self.p >= 0.0):
            raise ValidationError(f"aczel_alsina parameter must be >= 0, got {self.p!r}")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"aczel_alsina(p={self.p:g})"

    def _interior(self, a: float, b: float) -> float:
        if self.p == 0.0:
            return 0.0
        if math.isinf(self.p):
            return a if a <= b else b
        u = -math.log(a)
        v = -math.log(b)
        m, r = (u, v / u) if u >= v else (v, u / v)
        exponent = m * (1.0 + r ** self.p) ** (1.0 / self.p)
        return math.exp(-exponent)


@dataclass(frozen=True, repr=False)
class SugenoWeber(TNorm):
    """Sugeno-Weber family with parameter p in [-1, inf].

    p = -1 gives the drastic norm, p = inf the product; in between

        T_p(a, b) = max(0, (a + b - 1 + p*a*b) / (1 + p)),

    computed in the equivalent form a*b + (a + b - 1 - a*b)/(1 + p) so that
    large finite p neither overflows nor loses the product limit.
    """

    p: float

    def __post_init__(self) -> None:
        if not (self.p >= -1.0):
            raise ValidationError(f"sugeno_weber parameter must be >= -1, got {self.p!r}")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"sugeno_weber(p={self.p:g})"

    def _interior(self, a: float, b: float) -> float:
        if self.p == -1.0:
            return 0.0
        if math.isinf(self.p):
            return a * b
        value = a * b + (a + b - 1.0 - a * b) / (1.0 + self.p)
        return value if value > 0.0 else 0.0


MIN = Minimum()
PRODUCT = Product()
LUKASIEWICZ = Lukasiewicz()
DRASTIC = Drastic()
NILPOTENT_MIN = NilpotentMinimum()
HAMACHER = HamacherProduct()

#: The six parameter-free kinds, in catalogue order.
FIXED_KINDS: tuple[TNorm, ...] = (
    MIN, PRODUCT, LUKASIEWICZ, DRASTIC, NILPOTENT_MIN, HAMACHER,
)

#: Kinds guaranteed to dominate Lukasiewicz pointwise, hence to induce
#: 2x2 selection joints with nonnegative cells for any marginals.
FRECHET_SAFE: tuple[TNorm, ...] = (
    MIN, PRODUCT, LUKASIEWICZ, NILPOTENT_MIN, HAMACHER,
)

_FACTORIES = {
    "min": lambda p: MIN,
    "product": lambda p: PRODUCT,
    "lukasiewicz": lambda p: LUKASIEWICZ,
    "drastic": lambda p: DRASTIC,
    "nilpotent_min": lambda p: NILPOTENT_MIN,
    "hamacher": lambda p: HAMACHER,
    "aczel_alsina": lambda p: AczelAlsina(_require_p("aczel_alsina", p)),
    "sugeno_weber": lambda p: SugenoWeber(_require_p("sugeno_weber", p)),
}


def _require_p(kind: str, p: float | None) -> float:
    if p is None:
        raise ValidationError(f"t-norm kind {kind!r} requires a parameter")
    return float(p)


def make_tnorm(kind: str, p: float | None = None) -> TNorm:
    """Build a t-norm from its kind name, e.g. ``make_tnorm("sugeno_weber", 2.0)``.

    Parameter-free kinds reject a parameter; parametric kinds require one
    (``inf`` is accepted for the limit members).
    """
    try:
        factory = _FACTORIES[kind]
    except KeyError:
        raise ValidationError(
            f"unknown t-norm kind {kind!r}; known: {sorted(_FACTORIES)}") from None
    if p is not None and kind not in ("aczel_alsina", "sugeno_weber"):
        raise ValidationError(f"t-norm kind {kind!r} takes no parameter")
    return factory(p)


def parse_tnorm(token: str) -> TNorm:
    """Parse a CLI/config token like ``"min"`` or ``"aczel_alsina:2.5"``."""
    kind, sep, param = token.strip().partition(":")
    if not sep:
        return make_tnorm(kind)
    try:
        p = float(param)
    except ValueError:
        raise ValidationError(f"bad t-norm parameter {param!r} in {token!r}") from None
    return make_tnorm(kind, p)


def fold(t: TNorm, values) -> float:
    """Combine a sequence of unit-interval values with ``t``, left to right.

    An empty sequence returns 1.0, the t-norm identity.
    """
    acc = 1.0
    for v in values:
        acc = t(acc, v)
    return acc


def check_axioms(t: TNorm, *, comm_n: int = 101, assoc_n: int = 21,
                 ident_n: int = 1001, mono_n: int = 21,
                 assoc_tol: float = 1e-12) -> dict:
    """Grid-check the four t-norm axioms for ``t``.

    Commutativity and identity are exact comparisons; associativity allows
    ``assoc_tol``; monotonicity is quantified over every comparable pair of
    the mono grid's square (mono_n**4 combinations, vectorized).  Returns a
    dict with one boolean per axiom plus worst-case deviations.
    """
    import numpy as np

    comm_grid = [i / (comm_n - 1) for i in range(comm_n)]
    comm_ok = all(t(a, b) == t(b, a) for a in comm_grid for b in comm_grid)

    ident_ok = all(t(i / (ident_n - 1), 1.0) == i / (ident_n - 1)
                   for i in range(ident_n))

    assoc_grid = [i / (assoc_n - 1) for i in range(assoc_n)]
    assoc_dev = 0.0
    for a in assoc_grid:
        for b in assoc_grid:
            tab = t(a, b)
            for c in assoc_grid:
                dev = abs(t(tab, c) - t(a, t(b, c)))
                if dev > assoc_dev:
                    assoc_dev = dev

    mono_grid = [i / (mono_n - 1) for i in range(mono_n)]
    table = np.array([[t(a, b) for b in mono_grid] for a in mono_grid])
    idx = np.arange(mono_n)
    le_rows = idx[:, None] <= idx[None, :]          # i <= k
    lower = table[:, :, None, None]                 # T(a_i, b_j)
    upper = table[None, None, :, :]                 # T(a_k, b_l)
    comparable = le_rows[:, None, :, None] & le_rows[None, :, None, :]
    mono_ok = bool(np.all(~comparable | (lower <= upper)))

    return {
        "commutative": comm_ok,
        "identity": ident_ok,
        "associative": assoc_dev <= assoc_tol,
        "associativity_deviation": assoc_dev,
        "monotone": mono_ok,
        "all": comm_ok and ident_ok and assoc_dev <= assoc_tol and mono_ok,
    }
