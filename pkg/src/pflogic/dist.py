"""Finite probability mass functions and two-dimensional joint tables."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError, ValueNotInSpace

#: Absolute tolerance for "sums to one" checks on exact pmfs.
PMF_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteDist:
    """A pmf on finitely many real values.

    ``values`` must be strictly increasing; ``probs`` are nonnegative and sum
    to 1 within 1e-12.  Zero-probability atoms are legal and kept: spaces
    routinely carry elements that a particular distribution never draws
    (base elements, for one).
    """

    values: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        ps = []
        for v, p in zip(vals, self.probs, strict=True):
            p = float(p)
            if p < 0.0:
                if p < -PMF_TOL:
                    raise ValidationError(f"negative probability {p!r} at value {v!r}")
                p = 0.0
            ps.append(p)
        if not vals:
            raise ValidationError("a pmf needs at least one value")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValidationError(f"values must be strictly increasing: {vals}")
        total = sum(ps)
        if abs(total - 1.0) > PMF_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "probs", tuple(ps))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vals)})

    # -- lookups ---------------------------------------------------------

    def __contains__(self, v: float) -> bool:
        return float(v) in self._index  # type: ignore[attr-defined]

    def index_of(self, v: float) -> int:
        try:
            return self._index[float(v)]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueNotInSpace(f"{v!r} is not a value of this space") from None

    def prob(self, v: float) -> float:
        """Mass at ``v`` exactly; 0.0 for values outside the support."""
        i = self._index.get(float(v))  # type: ignore[attr-defined]
        return 0.0 if i is None else self.probs[i]

    def nearest_value(self, v: float, atol: float) -> float | None:
        """The stored value within ``atol`` of ``v`` (nearest wins), else None."""
        v = float(v)
        i = bisect_left(self.values, v)
        best = None
        best_gap = atol
        for j in (i - 1, i):
            if 0 <= j < len(self.values):
                gap = abs(self.values[j] - v)
                if gap <= best_gap:
                    best, best_gap = self.values[j], gap
        return best

    def items(self) -> Iterator[tuple[float, float]]:
        return zip(self.values, self.probs)

    def mean(self) -> float:
        return sum(v * p for v, p in self.items())

    def __len__(self) -> int:
        return len(self.values)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[float, float]]) -> "DiscreteDist":
        items = sorted((float(v), float(p)) for v, p in pairs)
        return DiscreteDist(tuple(v for v, _ in items), tuple(p for _, p in items))

    @staticmethod
    def from_weights(pairs: Iterable[tuple[float, float]]) -> "DiscreteDist":
        """Like :meth:`from_pairs` but normalizes by the total weight."""
        items = sorted((float(v), float(w)) for v, w in pairs)
        total = sum(w for _, w in items)
        if total <= 0.0:
            raise ValidationError("weights must have a positive total")
        return DiscreteDist(tuple(v for v, _ in items),
                            tuple(w / total for _, w in items))

    @staticmethod
    def uniform_over(values: Sequence[float]) -> "DiscreteDist":
        n = len(values)
        return DiscreteDist.from_pairs((v, 1.0 / n) for v in values)

    @staticmethod
    def bernoulli(p: float) -> "DiscreteDist":
        if not (0.0 <= p <= 1.0):
            raise ValidationError(f"bernoulli parameter {p!r} outside [0, 1]")
        return DiscreteDist((0.0, 1.0), (1.0 - p, p))

    @staticmethod
    def from_interval_rows(rows: Iterable[tuple[float, float, float]]) -> "DiscreteDist":
        """Expand (center, width, prob) interval rows into integer atoms.

        Each row stands for the integers in [center - width/2,
        center + width/2), sharing the row's probability uniformly.  A row
        whose span contains no integer is rejected.
        """
        pairs: list[tuple[float, float]] = []
        for center, width, prob in rows:
            if width <= 0:
                raise ValidationError(f"interval width must be positive, got {width!r}")
            lo = center - width / 2.0
            hi = center + width / 2.0
            import math
            first = math.ceil(lo)
            atoms = [float(k) for k in range(first, math.ceil(hi))]
            if not atoms:
                raise ValidationError(
                    f"interval (center={center!r}, width={width!r}) contains no integer")
            share = float(prob) / len(atoms)
            pairs.extend((a, share) for a in atoms)
        return DiscreteDist.from_pairs(pairs)


@dataclass(frozen=True)
class JointPmf:
    """A joint pmf over the product of two finite value sets.

    Stored densely: ``table[i][j]`` is P(X = xs[i], Y = ys[j]).  Entries are
    nonnegative and the grand total is 1 within 1e-12.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    table: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        xs = tuple(float(v) for v in self.xs)
        ys = tuple(float(v) for v in self.ys)
        if any(a >= b for a, b in zip(xs, xs[1:])) or any(a >= b for a, b in zip(ys, ys[1:])):
            raise ValidationError("joint pmf axes must be strictly increasing")
        rows = []
        total = 0.0
        for row in self.table:
            row = tuple(float(p) for p in row)
            if len(row) != len(ys):
                raise ValidationError("joint pmf row length does not match the y axis")
            if any(p < -PMF_TOL for p in row):
                raise ValidationError("joint pmf entries must be nonnegative")
            row = tuple(max(p, 0.0) for p in row)
            total += sum(row)
            rows.append(row)
        if len(rows) != len(xs):
            raise ValidationError("joint pmf row count does not match the x axis")
        if abs(total - 1.0) > PMF_TOL:
            raise ValidationError(f"joint pmf sums to {total!r}, not 1")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "table", tuple(rows))

    @staticmethod
    def product(dx: DiscreteDist, dy: DiscreteDist) -> "JointPmf":
        return JointPmf(dx.values, dy.values,
                        tuple(tuple(px * py for py in dy.probs) for px in dx.probs))

    @staticmethod
    def from_entries(entries: Iterable[tuple[float, float, float]]) -> "JointPmf":
        cells = {(float(x), float(y)): float(p) for x, y, p in entries}
        xs = tuple(sorted({x for x, _ in cells}))
        ys = tuple(sorted({y for _, y in cells}))
        table = tuple(tuple(cells.get((x, y), 0.0) for y in ys) for x in xs)
        return JointPmf(xs, ys, table)

    def prob(self, x: float, y: float) -> float:
        try:
            i = self.xs.index(float(x))
            j = self.ys.index(float(y))
        except ValueError:
            return 0.0
        return self.table[i][j]

    def marginal_x(self) -> DiscreteDist:
        return DiscreteDist(self.xs, tuple(sum(row) for row in self.table))

    def marginal_y(self) -> DiscreteDist:
        sums = tuple(sum(row[j] for row in self.table) for j in range(len(self.ys)))
        return DiscreteDist(self.ys, sums)

    def x_given_y(self, y: float) -> DiscreteDist:
        """Conditional pmf of X at Y = y; the column must have positive mass."""
        from .errors import ConditionImpossible
        j = self.ys.index(float(y)) if float(y) in self.ys else None
        if j is None:
            raise ValueNotInSpace(f"{y!r} is not on the joint pmf's y axis")
        col = [row[j] for row in self.table]
        mass = sum(col)
        if mass <= 0.0:
            raise ConditionImpossible(f"P(Y={y!r}) = 0 in the joint pmf")
        return DiscreteDist(self.xs, tuple(c / mass for c in col))
