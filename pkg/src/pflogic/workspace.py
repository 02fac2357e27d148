"""Workspace files: declarative TOML for spaces, attributes, model, experiments.

A workspace bundles everything a command-line query needs:

* ``[spaces.NAME]``: a discrete pmf (inline atoms, a CSV file, or
  center/width/prob interval rows spread uniformly over integer grids) or a
  mixed density-plus-atoms distribution built from a named density form.
* ``[attributes.NAME]``: a piecewise-linear membership over one space with a
  designated base element.
* ``[model]``: the selection model kind, its t-norm, and kind-specific
  parameters.
* ``[joint]``: optional dependence tables for the conditional suite.
* ``[experiments.NAME]``: treatment-effect experiment declarations.

Attributes on discrete spaces are validated for properness at load time, so
a workspace that loads is ready to query.
"""

from __future__ import annotations

import csv
import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - Python 3.10
    import tomli as tomllib  # type: ignore[no-redef]

from . import mixed as mx
from .dist import DiscreteDist, JointPmf
from .conditionals import JointSpec
from .errors import ImproperAttribute, ParseError
from .fate import ExperimentSpec, PotentialOutcomeModel, TreatmentSpace
from .membership import FuzzyAttribute, MembershipFunction
from .models import (AttributeBinding, Classic, ClassicProbBased, Exponents,
                     GeneralizedMembership, GeneralizedStandard,
                     MembershipScaled, RandomGeneralizedStandard,
                     RelativeFuzzy, SelectionModel, SimpleFuzzy,
                     validate_binding)
from .tnorms import MIN, TNorm, parse_tnorm

_PLAIN_KINDS = ("classic", "classic_prob", "simple", "relative",
                "membership_scaled")
_MODEL_KINDS = _PLAIN_KINDS + ("generalized_membership", "generalized_standard",
                               "random_generalized_standard")


@dataclass(frozen=True)
class AttributeDecl:
    """A parsed attribute: the fuzzy set, its space name, its base element."""

    attr: FuzzyAttribute
    space: str
    base: float


@dataclass(frozen=True)
class Workspace:
    source: str
    digest: str
    spaces: Mapping[str, DiscreteDist | mx.MixedDist]
    attributes: Mapping[str, AttributeDecl]
    model: SelectionModel
    joint: JointSpec | None = None
    experiments: Mapping[str, ExperimentSpec] = field(default_factory=dict)
    raw: Mapping = field(default_factory=dict)

    def space(self, name: str) -> DiscreteDist | mx.MixedDist:
        try:
            return self.spaces[name]
        except KeyError:
            raise ParseError(f"unknown space {name!r}", source=self.source) from None

    def decl(self, name: str) -> AttributeDecl:
        try:
            return self.attributes[name]
        except KeyError:
            raise ParseError(f"unknown attribute {name!r}",
                             source=self.source) from None

    def binding(self, name: str) -> AttributeBinding:
        d = self.decl(name)
        space = self.space(d.space)
        if not isinstance(space, DiscreteDist):
            raise ParseError(
                f"attribute {name!r} lives on the mixed space {d.space!r}; "
                "discrete-space operations do not apply",
                source=self.source, field=f"attributes.{name}")
        return AttributeBinding(d.attr, d.base, space)

    def mixed_parts(self, name: str) -> tuple[mx.MixedDist, mx.SelectionField, float]:
        """Draw distribution, selection field, and base point for a mixed attribute."""
        d = self.decl(name)
        space = self.space(d.space)
        if not isinstance(space, mx.MixedDist):
            raise ParseError(
                f"attribute {name!r} lives on the discrete space {d.space!r}; "
                "mixed-space operations do not apply",
                source=self.source, field=f"attributes.{name}")
        return space, mx.SelectionField.from_attribute(d.attr), d.base

    def experiment(self, name: str) -> ExperimentSpec:
        try:
            return self.experiments[name]
        except KeyError:
            raise ParseError(f"unknown experiment {name!r}",
                             source=self.source) from None

    def treatment_space(self, spec: ExperimentSpec) -> TreatmentSpace:
        return TreatmentSpace(low=self.binding(spec.low),
                              medium=self.binding(spec.medium),
                              high=self.binding(spec.high),
                              model=self.model,
                              require_partition=spec.require_partition)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _req(table: Mapping, key: str, source: str, where: str):
    if key not in table:
        raise ParseError(f"missing required key {key!r}", source=source,
                         field=f"{where}.{key}")
    return table[key]


def _pairs(rows, source: str, where: str, width: int) -> list[tuple[float, ...]]:
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)) or len(row) != width:
            raise ParseError(f"row {i} must hold {width} numbers, got {row!r}",
                             source=source, field=where)
        try:
            out.append(tuple(float(v) for v in row))
        except (TypeError, ValueError):
            raise ParseError(f"row {i} holds a non-numeric entry: {row!r}",
                             source=source, field=where) from None
    return out


def _csv_rows(path: Path, source: str, where: str, width: int
              ) -> list[tuple[float, ...]]:
    try:
        with open(path, newline="") as f:
            raw = [row for row in csv.reader(f) if row]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}", source=source,
                         field=where) from None
    if raw and not _is_numeric_row(raw[0]):
        raw = raw[1:]   # tolerate a header line
    return _pairs(raw, source, f"{where} ({path.name})", width)


def _is_numeric_row(row: list[str]) -> bool:
    try:
        [float(v) for v in row]
    except ValueError:
        return False
    return True


def _parse_discrete(name: str, table: Mapping, source: str,
                    base_dir: Path) -> DiscreteDist:
    where = f"spaces.{name}"
    given = [k for k in ("atoms", "csv", "intervals", "intervals_csv")
             if k in table]
    if len(given) != 1:
        raise ParseError(
            "a discrete space needs exactly one of atoms, csv, intervals, "
            f"intervals_csv; got {given!r}", source=source, field=where)
    key = given[0]
    if key == "atoms":
        rows = _pairs(table["atoms"], source, f"{where}.atoms", 2)
        return DiscreteDist.from_pairs(rows)
    if key == "csv":
        rows = _csv_rows(base_dir / str(table["csv"]), source, f"{where}.csv", 2)
        return DiscreteDist.from_pairs(rows)
    if key == "intervals":
        rows = _pairs(table["intervals"], source, f"{where}.intervals", 3)
        return DiscreteDist.from_interval_rows(rows)
    rows = _csv_rows(base_dir / str(table["intervals_csv"]), source,
                     f"{where}.intervals_csv", 3)
    return DiscreteDist.from_interval_rows(rows)


def _parse_mixed(name: str, table: Mapping, source: str) -> mx.MixedDist:
    where = f"spaces.{name}"
    atoms = tuple((v, m) for v, m in
                  _pairs(table.get("atoms", []), source, f"{where}.atoms", 2))
    density = table.get("density")
    if density is None:
        if not atoms:
            raise ParseError("a mixed space needs a density, atoms, or both",
                             source=source, field=where)
        return mx.pure_atoms(atoms)
    form = str(_req(density, "form", source, f"{where}.density"))
    if form == "uniform":
        d = mx.uniform(float(_req(density, "lo", source, f"{where}.density")),
                       float(_req(density, "hi", source, f"{where}.density")))
    elif form == "exponential":
        d = mx.exponential(float(_req(density, "rate", source, f"{where}.density")),
                           float(density.get("tail_mass", mx.TAIL_MASS)))
    elif form == "normal":
        d = mx.normal(float(_req(density, "mean", source, f"{where}.density")),
                      float(_req(density, "sd", source, f"{where}.density")),
                      float(density.get("tail_mass", mx.TAIL_MASS)))
    elif form == "piecewise_poly":
        pieces = []
        for i, row in enumerate(_req(density, "pieces", source, f"{where}.density")):
            if not isinstance(row, (list, tuple)) or len(row) != 3:
                raise ParseError(f"piece {i} must be [lo, hi, coeffs]",
                                 source=source, field=f"{where}.density.pieces")
            lo, hi, coeffs = row
            pieces.append((float(lo), float(hi), [float(c) for c in coeffs]))
        d = mx.piecewise_polynomial(pieces)
    else:
        raise ParseError(f"unknown density form {form!r}", source=source,
                         field=f"{where}.density.form")
    if not atoms:
        return d
    w = 1.0 - sum(m for _, m in atoms)
    if w < 0.0:
        raise ParseError(f"atom masses exceed 1 by {-w!r}", source=source,
                         field=f"{where}.atoms")
    dens = d.density
    assert dens is not None
    return mx.MixedDist(density=lambda t: w * dens(t), support=d.support,
                        atoms=atoms, breakpoints=d.breakpoints)


def _parse_attribute(name: str, table: Mapping, source: str) -> AttributeDecl:
    where = f"attributes.{name}"
    space = str(_req(table, "space", source, where))
    base = float(_req(table, "base", source, where))
    points = _pairs(_req(table, "points", source, where), source,
                    f"{where}.points", 2)
    try:
        membership = MembershipFunction(tuple(points))
    except Exception as exc:
        raise ParseError(f"bad membership points: {exc}", source=source,
                         field=f"{where}.points") from None
    return AttributeDecl(attr=FuzzyAttribute(name, membership), space=space,
                         base=base)


def _plain_model(kind: str, tnorm: TNorm, table: Mapping,
                 attrs: Mapping[str, AttributeDecl], source: str,
                 where: str) -> SelectionModel:
    if kind == "classic":
        return Classic(tnorm=tnorm)
    if kind == "classic_prob":
        return ClassicProbBased(tnorm=tnorm)
    if kind == "simple":
        return SimpleFuzzy(tnorm=tnorm)
    if kind == "relative":
        names = _req(table, "frame", source, where)
        frame = []
        for n in names:
            if str(n) not in attrs:
                raise ParseError(f"frame attribute {n!r} is not declared",
                                 source=source, field=f"{where}.frame")
            frame.append(attrs[str(n)].attr)
        return RelativeFuzzy(frame=tuple(frame), tnorm=tnorm)
    if kind == "membership_scaled":
        return MembershipScaled(atol=float(table.get("atol", 1e-9)), tnorm=tnorm)
    raise ParseError(f"model kind {kind!r} cannot serve as a base here; "
                     f"plain kinds: {_PLAIN_KINDS}", source=source, field=where)


def _parse_model(table: Mapping, attrs: Mapping[str, AttributeDecl],
                 spaces: Mapping[str, DiscreteDist | mx.MixedDist],
                 source: str) -> SelectionModel:
    where = "model"
    kind = str(table.get("kind", "simple"))
    if kind not in _MODEL_KINDS:
        raise ParseError(f"unknown model kind {kind!r}; known: {_MODEL_KINDS}",
                         source=source, field=f"{where}.kind")
    try:
        tnorm = parse_tnorm(str(table.get("tnorm", "min")))
    except Exception as exc:
        raise ParseError(f"bad tnorm: {exc}", source=source,
                         field=f"{where}.tnorm") from None
    if kind in _PLAIN_KINDS:
        return _plain_model(kind, tnorm, table, attrs, source, where)

    base = None
    if "base_kind" in table:
        base = _plain_model(str(table["base_kind"]), tnorm, table, attrs,
                            source, where)
    if kind == "generalized_membership":
        entries = {}
        for row in table.get("exponents", []):
            if not isinstance(row, (list, tuple)) or len(row) != 3:
                raise ParseError("exponents rows are [attribute, element, power]",
                                 source=source, field=f"{where}.exponents")
            entries[(str(row[0]), float(row[1]))] = float(row[2])
        exps = Exponents(default=float(table.get("exponent", 1.0)),
                         entries=entries)
        return GeneralizedMembership(exponents=exps, base=base, tnorm=tnorm)
    if kind == "generalized_standard":
        return GeneralizedStandard(scale=float(table.get("scale", 1.0)),
                                   base=base, tnorm=tnorm)
    sd_name = str(_req(table, "scale_space", source, where))
    sd = spaces.get(sd_name)
    if not isinstance(sd, DiscreteDist):
        raise ParseError(f"scale_space {sd_name!r} must name a discrete space",
                         source=source, field=f"{where}.scale_space")
    return RandomGeneralizedStandard(scale_dist=sd,
                                     seed=int(table.get("scale_seed", 0)),
                                     base=base, tnorm=tnorm)


def _parse_joint(table: Mapping, source: str) -> JointSpec:
    where = "joint"
    xy = None
    if "xy" in table:
        rows = _pairs(table["xy"], source, f"{where}.xy", 3)
        xy = JointPmf.from_entries(rows)

    def keyed(key: str) -> dict[tuple[float, float], float] | None:
        if key not in table:
            return None
        rows = _pairs(table[key], source, f"{where}.{key}", 3)
        return {(a, b): p for a, b, p in rows}

    return JointSpec(xy=xy, b_sel_given_x=keyed("b_sel_given_x"),
                     a_sel_given_xy=keyed("a_sel_given_xy"),
                     y_given_a_sel=keyed("y_given_a_sel"))


def _parse_experiment(name: str, table: Mapping, source: str) -> ExperimentSpec:
    where = f"experiments.{name}"
    outcome = _pairs(_req(table, "outcome", source, where), source,
                     f"{where}.outcome", 2)
    return ExperimentSpec(
        low=str(_req(table, "low", source, where)),
        medium=str(_req(table, "medium", source, where)),
        high=str(_req(table, "high", source, where)),
        outcome=PotentialOutcomeModel(dict(outcome)),
        n_units=int(_req(table, "n_units", source, where)),
        seed=int(table.get("seed", 0)),
        require_partition=bool(table.get("require_partition", True)))


def parse_workspace(text: str, *, source: str = "<string>",
                    base_dir: str | Path = ".") -> Workspace:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"invalid TOML: {exc}", source=source) from None
    return _build(doc, source, Path(base_dir))


def load_workspace(path: str | Path) -> Workspace:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read workspace: {exc}", source=str(path)) from None
    try:
        doc = tomllib.loads(raw.decode())
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ParseError(f"invalid TOML: {exc}", source=str(path)) from None
    return _build(doc, str(path), path.parent)


def _digest(doc: Mapping) -> str:
    """Content digest: invariant under reformatting of the config text."""
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def _build(doc: Mapping, source: str, base_dir: Path) -> Workspace:
    spaces: dict[str, DiscreteDist | mx.MixedDist] = {}
    for name, table in doc.get("spaces", {}).items():
        kind = str(table.get("kind", "discrete"))
        if kind == "discrete":
            spaces[name] = _parse_discrete(name, table, source, base_dir)
        elif kind == "mixed":
            spaces[name] = _parse_mixed(name, table, source)
        else:
            raise ParseError(f"unknown space kind {kind!r}", source=source,
                             field=f"spaces.{name}.kind")

    attrs = {name: _parse_attribute(name, table, source)
             for name, table in doc.get("attributes", {}).items()}
    for name, d in attrs.items():
        if d.space not in spaces:
            raise ParseError(f"attribute {name!r} names unknown space {d.space!r}",
                             source=source, field=f"attributes.{name}.space")

    model = _parse_model(doc.get("model", {}), attrs, spaces, source)
    joint = _parse_joint(doc["joint"], source) if "joint" in doc else None
    experiments = {name: _parse_experiment(name, table, source)
                   for name, table in doc.get("experiments", {}).items()}

    ws = Workspace(source=source, digest=_digest(doc), spaces=spaces,
                   attributes=attrs, model=model, joint=joint,
                   experiments=experiments, raw=doc)

    # a workspace that loads is ready to query: properness is checked here
    for name, d in attrs.items():
        space = spaces[d.space]
        if isinstance(space, DiscreteDist):
            validate_binding(model, ws.binding(name))
        else:
            sel = mx.SelectionField.from_attribute(d.attr)
            if sel(d.base) != 0.0:
                raise ImproperAttribute(
                    f"base point {d.base!r} of {name!r} has selection "
                    f"probability {sel(d.base)!r}, expected 0")
    for name, spec in experiments.items():
        for level in (spec.low, spec.medium, spec.high):
            if level not in attrs:
                raise ParseError(
                    f"experiment {name!r} names unknown attribute {level!r}",
                    source=source, field=f"experiments.{name}")
    return ws


# ---------------------------------------------------------------------------
# serialization (round trip: load -> dump -> load keeps the digest)
# ---------------------------------------------------------------------------

_BARE_KEY = re.compile(r"^[A-Za-z0-9_-]+$")


def _toml_key(k: str) -> str:
    return k if _BARE_KEY.match(k) else json.dumps(k)


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)   # shortest exact round trip; inf/nan are valid TOML
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    if isinstance(v, dict):
        inner = ", ".join(f"{_toml_key(k)} = {_toml_value(x)}" for k, x in
                          sorted(v.items()))
        return "{" + inner + "}"
    raise ParseError(f"cannot serialize value of type {type(v).__name__}")


def dump_workspace(ws: Workspace) -> str:
    """Render the workspace back to config text.

    Emission is canonical (sorted sections and keys, exact float reprs), so
    parsing the output reproduces the same content digest.
    """
    lines: list[str] = []

    def emit_table(header: str, table: Mapping) -> None:
        lines.append(f"[{header}]")
        for k, v in sorted(table.items()):
            lines.append(f"{_toml_key(k)} = {_toml_value(v)}")
        lines.append("")

    scalars = sorted(k for k, v in ws.raw.items() if not isinstance(v, dict))
    for k in scalars:
        lines.append(f"{_toml_key(k)} = {_toml_value(ws.raw[k])}")
    if scalars:
        lines.append("")
    for section in sorted(ws.raw):
        if section in scalars:
            continue
        content = ws.raw[section]
        if section in ("spaces", "attributes", "experiments"):
            for name in sorted(content):
                emit_table(f"{section}.{_toml_key(name)}", content[name])
        else:
            emit_table(section, content)
    return "\n".join(lines)
