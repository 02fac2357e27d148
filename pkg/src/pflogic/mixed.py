"""Distributions with a density part and finitely many atoms.

The draw-then-select experiment over a continuous draw produces exactly this
shape: the selected part keeps the draw's density reweighted by a pointwise
selection probability, and the not-selected mass collapses into one atom at
the base point.  Densities are integrated by adaptive Gauss-Kronrod
quadrature (scipy's QUADPACK) at absolute tolerance 1e-9 / relative 1e-6,
with known kink locations passed through so piecewise integrands stay cheap
and exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from scipy import integrate as _scipy_integrate
from scipy import special as _scipy_special

from .dist import DiscreteDist
from .errors import (DomainError, InvalidBase, QuadratureFailure,
                     ValidationError)
from .membership import FuzzyAttribute
from .tnorms import TNorm

_ABS_TOL = 1e-9
_REL_TOL = 1e-6
_MASS_TOL = 1e-9
#: Default per-side tail mass cut when truncating unbounded named densities.
TAIL_MASS = 1e-12


def _integrate(f: Callable[[float], float], lo: float, hi: float,
               breakpoints: Sequence[float] = ()) -> float:
    """Definite integral of ``f`` over [lo, hi] at the package tolerances."""
    if hi <= lo:
        return 0.0
    pts = sorted({p for p in breakpoints if lo < p < hi})
    result = _scipy_integrate.quad(f, lo, hi, points=pts or None,
                                   epsabs=_ABS_TOL, epsrel=_REL_TOL,
                                   limit=200, full_output=1)
    if len(result) > 3:
        value, abserr = result[0], result[1]
        raise QuadratureFailure(
            f"integration over [{lo!r}, {hi!r}] did not converge: {result[3]}",
            achieved=abserr)
    return result[0]


@dataclass(frozen=True)
class MixedDist:
    """A density on a bounded support plus finitely many atoms.

    ``density`` may be None for purely atomic distributions.  Construction
    verifies that the total mass (density integral plus atom masses) is 1
    within 1e-9; atom locations must be distinct and masses nonnegative.
    """

    density: Callable[[float], float] | None
    support: tuple[float, float]
    atoms: tuple[tuple[float, float], ...] = ()
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        lo, hi = (float(self.support[0]), float(self.support[1]))
        if self.density is not None and hi < lo:
            raise ValidationError(f"support {self.support!r} is inverted")
        atoms = tuple((float(v), float(m)) for v, m in self.atoms)
        locs = [v for v, _ in atoms]
        if len(set(locs)) != len(locs):
            raise ValidationError(f"atom locations must be distinct: {locs}")
        if any(m < -1e-12 for _, m in atoms):
            raise ValidationError("atom masses must be nonnegative")
        atoms = tuple((v, max(m, 0.0)) for v, m in atoms)
        object.__setattr__(self, "support", (lo, hi))
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))
        object.__setattr__(self, "breakpoints",
                           tuple(sorted(float(b) for b in self.breakpoints)))
        total = self.density_mass() + sum(m for _, m in atoms)
        if abs(total - 1.0) > _MASS_TOL:
            raise ValidationError(f"total mass is {total!r}, not 1 within {_MASS_TOL}")

    # -- mass accounting ---------------------------------------------------

    def density_mass(self, lo: float | None = None, hi: float | None = None) -> float:
        if self.density is None:
            return 0.0
        a, b = self.support
        a = a if lo is None else max(a, lo)
        b = b if hi is None else min(b, hi)
        return _integrate(self.density, a, b, self.breakpoints)

    def atom_mass(self, lo: float, hi: float, *, closed_left: bool = True,
                  closed_right: bool = True) -> float:
        total = 0.0
        for v, m in self.atoms:
            if (lo < v < hi) or (closed_left and v == lo) or (closed_right and v == hi):
                total += m
        return total

    def mean(self) -> float:
        acc = sum(v * m for v, m in self.atoms)
        if self.density is not None:
            dens = self.density
            acc += _integrate(lambda t: t * dens(t), *self.support, self.breakpoints)
        return acc


# -- named density constructors ----------------------------------------------

def uniform(a: float, b: float) -> MixedDist:
    if b <= a:
        raise ValidationError(f"uniform needs a < b, got [{a!r}, {b!r}]")
    h = 1.0 / (b - a)
    return MixedDist(density=lambda t: h if a <= t <= b else 0.0,
                     support=(a, b), breakpoints=(a, b))


def exponential(rate: float, tail_mass: float = TAIL_MASS) -> MixedDist:
    """Exponential density truncated where the right tail falls below tail_mass.

    The cut mass is far inside the normalization tolerance, so the density
    formula is kept exact rather than renormalized.
    """
    if rate <= 0.0:
        raise ValidationError(f"exponential rate must be positive, got {rate!r}")
    hi = -math.log(tail_mass) / rate
    return MixedDist(density=lambda t: rate * math.exp(-rate * t) if t >= 0.0 else 0.0,
                     support=(0.0, hi))


def normal(mu: float, sigma: float, tail_mass: float = TAIL_MASS) -> MixedDist:
    """Normal density truncated symmetrically to total tail mass tail_mass."""
    if sigma <= 0.0:
        raise ValidationError(f"normal sigma must be positive, got {sigma!r}")
    z = float(_scipy_special.ndtri(1.0 - tail_mass / 2.0))
    c = 1.0 / (sigma * math.sqrt(2.0 * math.pi))

    def dens(t: float) -> float:
        u = (t - mu) / sigma
        return c * math.exp(-0.5 * u * u)

    return MixedDist(density=dens, support=(mu - z * sigma, mu + z * sigma),
                     breakpoints=(mu,))


def piecewise_polynomial(pieces: Iterable[tuple[float, float, Sequence[float]]]
                         ) -> MixedDist:
    """Density given as polynomial pieces (a, b, coefficients low-to-high).

    Pieces must not overlap; gaps between them carry zero density.
    """
    ps = sorted((float(a), float(b), tuple(float(c) for c in coeffs))
                for a, b, coeffs in pieces)
    if not ps:
        raise ValidationError("piecewise density needs at least one piece")
    for (a1, b1, _), (a2, _, _) in zip(ps, ps[1:]):
        if b1 > a2:
            raise ValidationError(f"pieces overlap near {a2!r}")
    for a, b, _ in ps:
        if b <= a:
            raise ValidationError(f"piece [{a!r}, {b!r}] is empty")

    def dens(t: float) -> float:
        for a, b, coeffs in ps:
            if a <= t <= b:
                acc = 0.0
                for c in reversed(coeffs):
                    acc = acc * t + c
                return acc
        return 0.0

    edges = sorted({e for a, b, _ in ps for e in (a, b)})
    return MixedDist(density=dens, support=(ps[0][0], ps[-1][1]),
                     breakpoints=tuple(edges))


def pure_atoms(atoms: Iterable[tuple[float, float]]) -> MixedDist:
    atoms = tuple(atoms)
    locs = [v for v, _ in atoms]
    return MixedDist(density=None, support=(min(locs), max(locs)), atoms=atoms)


# -- selection fields ----------------------------------------------------------

@dataclass(frozen=True)
class SelectionField:
    """Pointwise selection probability over the reals.

    Evaluation snaps values within 1e-12 of [0, 1] onto the boundary and
    rejects anything further out; a field that leaves the unit interval is a
    modelling bug, not something to integrate over quietly.
    """

    fn: Callable[[float], float]
    breakpoints: tuple[float, ...] = ()

    def __call__(self, x: float) -> float:
        v = float(self.fn(x))
        if 0.0 <= v <= 1.0:
            return v
        if -1e-12 <= v < 0.0:
            return 0.0
        if 1.0 < v <= 1.0 + 1e-12:
            return 1.0
        raise DomainError(f"selection field value {v!r} at {x!r} outside [0, 1]")

    @staticmethod
    def from_attribute(attr: FuzzyAttribute) -> "SelectionField":
        pts = tuple(x for x, _ in attr.membership.points)
        return SelectionField(fn=attr.membership, breakpoints=pts)

    @staticmethod
    def constant(c: float) -> "SelectionField":
        if not (0.0 <= c <= 1.0):
            raise DomainError(f"constant selection level {c!r} outside [0, 1]")
        return SelectionField(fn=lambda _t: c)

    @staticmethod
    def linear_ramp() -> "SelectionField":
        """Identity on [0, 1], clamped outside; the canonical test field."""
        return SelectionField(fn=lambda t: min(1.0, max(0.0, t)),
                              breakpoints=(0.0, 1.0))

    @staticmethod
    def excluding(attr_a: FuzzyAttribute, attr_b: FuzzyAttribute,
                  t: TNorm) -> "SelectionField":
        """Selection for A conditioned on the same point NOT being selected as B.

        (mu_A - T(mu_A, mu_B)) / (1 - mu_B), extended by continuity to 0
        where mu_B = 1 (no selection survives conditioning there).
        """
        def fn(x: float) -> float:
            mb = attr_b.degree(x)
            if mb >= 1.0:
                return 0.0
            ma = attr_a.degree(x)
            return (ma - t(ma, mb)) / (1.0 - mb)

        pts = tuple(x for x, _ in attr_a.membership.points) + \
            tuple(x for x, _ in attr_b.membership.points)
        return SelectionField(fn=fn, breakpoints=tuple(sorted(set(pts))))


# -- the draw-then-select construction ----------------------------------------

def _require_plain_density(f: MixedDist) -> None:
    if f.density is None:
        raise ValidationError("the draw distribution needs a density part")
    if f.atoms:
        raise ValidationError("the draw distribution must not carry atoms")


def xi_mixed(f: MixedDist, sel: SelectionField, base: float) -> MixedDist:
    """Outcome distribution: density sel*f plus the no-selection atom at base."""
    _require_plain_density(f)
    base = float(base)
    if sel(base) != 0.0:
        raise InvalidBase(
            f"selection probability at the base point {base!r} is {sel(base)!r}, "
            "expected 0")
    dens = f.density
    assert dens is not None
    bps = tuple(sorted(set(f.breakpoints) | set(sel.breakpoints)))
    selected = _integrate(lambda t: sel(t) * dens(t), *f.support, bps)
    alpha = 1.0 - selected
    if alpha < -_MASS_TOL or alpha > 1.0 + _MASS_TOL:
        raise ValidationError(f"no-selection mass {alpha!r} outside [0, 1]")
    alpha = min(1.0, max(0.0, alpha))
    return MixedDist(density=lambda t: sel(t) * dens(t), support=f.support,
                     atoms=((base, alpha),), breakpoints=bps)


def xi_mixed_conditional(f_cond: MixedDist, sel_cond: SelectionField,
                         base: float) -> MixedDist:
    """Same construction from conditioned inputs.

    Feed the draw density given the conditioning event and the selection
    field given that event (unchanged under independence; derived, e.g. via
    :meth:`SelectionField.excluding`, otherwise).
    """
    return xi_mixed(f_cond, sel_cond, base)


def expect_mixed(d: MixedDist) -> float:
    return d.mean()


def expect_xi_mixed(f: MixedDist, sel: SelectionField, base: float) -> float:
    """Base-anchored expectation: base + integral of (t - base) sel(t) f(t)."""
    _require_plain_density(f)
    dens = f.density
    assert dens is not None
    bps = tuple(sorted(set(f.breakpoints) | set(sel.breakpoints)))
    shift = _integrate(lambda t: (t - base) * sel(t) * dens(t), *f.support, bps)
    return base + shift


# -- events, cdf, discretization -----------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    closed_left: bool = True
    closed_right: bool = True

    def __post_init__(self) -> None:
        if self.hi < self.lo:
            raise ValidationError(f"interval [{self.lo!r}, {self.hi!r}] is inverted")


@dataclass(frozen=True)
class Point:
    value: float


def prob_event_mixed(d: MixedDist, pieces: Sequence[Interval | Point]) -> float:
    """Probability of a finite union of intervals and points.

    Pieces are assumed pairwise disjoint; overlapping pieces double-count.
    """
    total = 0.0
    for piece in pieces:
        if isinstance(piece, Point):
            total += d.atom_mass(piece.value, piece.value)
        else:
            total += d.density_mass(piece.lo, piece.hi)
            total += d.atom_mass(piece.lo, piece.hi,
                                 closed_left=piece.closed_left,
                                 closed_right=piece.closed_right)
    return total


def cdf_mixed(d: MixedDist, t: float) -> float:
    """P(outcome <= t); right-continuous by the atom inclusion rule."""
    t = float(t)
    lo, _ = d.support
    acc = sum(m for v, m in d.atoms if v <= t)
    if d.density is not None and t > lo:
        acc += d.density_mass(lo, t)
    return acc


def discretize(d: MixedDist, h: float) -> DiscreteDist:
    """Collapse onto a step-h grid of half-open cells anchored at the support.

    Cell mass is the density integral plus the atoms inside; the
    representative point is the cell midpoint, except for cells whose mass
    is purely atomic, which keep the (mass-weighted) atom location so
    atom-only distributions survive unchanged.  The result is renormalized
    by its total, erasing quadrature-level drift.
    """
    if h <= 0.0:
        raise ValidationError(f"grid step must be positive, got {h!r}")
    lo, hi = d.support
    if d.density is None:
        lo = min(v for v, _ in d.atoms)
        hi = max(v for v, _ in d.atoms)
    span = hi - lo
    n = max(1, math.ceil(span / h - 1e-12))
    dens_mass = [0.0] * n
    atom_mass = [0.0] * n
    atom_loc = [0.0] * n
    if d.density is not None:
        for k in range(n):
            a = lo + k * h
            b = min(lo + (k + 1) * h, hi)
            if b > a:
                dens_mass[k] = d.density_mass(a, b)
    for v, m in d.atoms:
        k = min(n - 1, max(0, int((v - lo) / h)))
        atom_mass[k] += m
        atom_loc[k] += m * v
    pairs = []
    for k in range(n):
        mass = dens_mass[k] + atom_mass[k]
        if mass <= 0.0:
            continue
        if dens_mass[k] <= 0.0 and atom_mass[k] > 0.0:
            rep = atom_loc[k] / atom_mass[k]
        else:
            rep = lo + (k + 0.5) * h
        pairs.append((rep, mass))
    if not pairs:
        raise ValidationError("discretization produced no mass")
    total = sum(m for _, m in pairs)
    return DiscreteDist.from_pairs((v, m / total) for v, m in pairs)
