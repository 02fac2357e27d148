"""Structural checks for ratio-form conditional laws.

The question behind both checks: can the conditional pmf of X given Y be the
t-norm ratio T(P(X=x), P(Y=y)) / P(Y=y) for every value pair?  For that to
be coherent each candidate column must sum to 1 and the total law must
reconstruct the X marginal.  Generic marginals fail both, which is exactly
what :func:`check_diamond` reports.  Exempting a single X value (whose cell
is then forced by complementation) is the weaker law checked by
:func:`check_golden` / :func:`golden_feasible`; two-point selection-outcome
pairs under the standard conditional satisfy it with the base element
exempt, and generic draw pairs still do not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .dist import DiscreteDist
from .errors import ValueNotInSpace
from .tnorms import TNorm

_TOL = 1e-12


@dataclass(frozen=True)
class DiamondReport:
    """Outcome of :func:`check_diamond`.

    ``conditional_sums`` maps each conditioning value y to the sum of the
    candidate column; ``total_law`` maps each x to the reconstruction
    sum_y T(P_X(x), P_Y(y)); ``normalized_total_law`` reconstructs after
    per-column normalization.  ``holds`` requires unit columns and an exact
    raw reconstruction.
    """

    holds: bool
    conditional_sums: dict[float, float]
    total_law: dict[float, float]
    normalized_total_law: dict[float, float]
    violations: tuple[str, ...]


def check_diamond(dist_x: DiscreteDist, dist_y: DiscreteDist, t: TNorm,
                  tol: float = _TOL) -> DiamondReport:
    """Check the full ratio-form law for a pair of draw marginals."""
    sums: dict[float, float] = {}
    violations: list[str] = []
    for y, py in dist_y.items():
        if py == 0.0:
            continue
        s = sum(t(px, py) / py for _, px in dist_x.items())
        sums[y] = s
        if abs(s - 1.0) > tol:
            violations.append(
                f"candidate conditional at y={y!r} sums to {s!r}, not 1")
    total_law: dict[float, float] = {}
    normalized: dict[float, float] = {}
    for x, px in dist_x.items():
        recon = sum(t(px, py) for _, py in dist_y.items() if py > 0.0)
        total_law[x] = recon
        if abs(recon - px) > tol:
            violations.append(
                f"total law reconstructs P(X={x!r}) as {recon!r}, marginal is {px!r}")
        normalized[x] = sum((t(px, py) / py) / sums[y] * py
                            for y, py in dist_y.items() if py > 0.0)
    return DiamondReport(holds=not violations, conditional_sums=sums,
                         total_law=total_law, normalized_total_law=normalized,
                         violations=tuple(violations))


@dataclass(frozen=True)
class GoldenReport:
    holds: bool
    max_deviation: float
    violations: tuple[str, ...]


def check_golden(conds: Mapping[float, Mapping[float, float]],
                 dist_z: DiscreteDist, dist_w: DiscreteDist, t: TNorm,
                 exempt: float, tol: float = _TOL) -> GoldenReport:
    """Check a supplied conditional family against the ratio form off-exempt.

    ``conds[w][z]`` is the claimed P(Z=z | W=w); entries may omit zeros.
    Every z except ``exempt`` must match T(P_Z(z), P_W(w)) / P_W(w) for each
    conditioning value w with positive probability that the family covers.
    """
    exempt = float(exempt)
    worst = 0.0
    violations: list[str] = []
    for w, column in conds.items():
        pw = dist_w.prob(w)
        if pw == 0.0:
            violations.append(f"conditioning value w={w!r} has probability 0")
            continue
        for z, pz in dist_z.items():
            if z == exempt:
                continue
            claimed = float(column.get(z, 0.0))
            required = t(pz, pw) / pw
            dev = abs(claimed - required)
            worst = max(worst, dev)
            if dev > tol:
                violations.append(
                    f"P(Z={z!r}|W={w!r}) = {claimed!r} but the ratio form gives "
                    f"{required!r}")
    return GoldenReport(holds=not violations, max_deviation=worst,
                        violations=tuple(violations))


@dataclass(frozen=True)
class GoldenFeasibility:
    feasible: bool
    exempt: float
    exempt_cells: dict[float, float]
    total_law_residuals: dict[float, float]
    violations: tuple[str, ...]


def golden_feasible(dist_x: DiscreteDist, dist_y: DiscreteDist, t: TNorm,
                    exempt: float, tol: float = _TOL) -> GoldenFeasibility:
    """Can ANY conditional family satisfy the ratio form off this exempt value?

    Off-exempt cells are forced to the ratio; each exempt cell is forced by
    complementation and must be a probability; the total law must hold at
    every non-exempt x (it then holds at the exempt one automatically).
    """
    exempt = float(exempt)
    if exempt not in dist_x:
        raise ValueNotInSpace(
            f"exempt value {exempt!r} is not in the X support")
    violations: list[str] = []
    exempt_cells: dict[float, float] = {}
    for y, py in dist_y.items():
        if py == 0.0:
            continue
        forced = sum(t(px, py) / py for x, px in dist_x.items() if x != exempt)
        cell = 1.0 - forced
        exempt_cells[y] = cell
        if cell < -tol or cell > 1.0 + tol:
            violations.append(
                f"exempt cell at y={y!r} would be {cell!r}, outside [0, 1]")
    residuals: dict[float, float] = {}
    for x, px in dist_x.items():
        if x == exempt:
            continue
        recon = sum(t(px, py) for _, py in dist_y.items() if py > 0.0)
        residuals[x] = recon - px
        if abs(recon - px) > tol:
            violations.append(
                f"total law at x={x!r} gives {recon!r}, marginal is {px!r}")
    return GoldenFeasibility(feasible=not violations, exempt=exempt,
                             exempt_cells=exempt_cells,
                             total_law_residuals=residuals,
                             violations=tuple(violations))
