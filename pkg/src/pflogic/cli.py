"""Command line front end: ``pflc <command> --workspace <file> ...``.

Commands
--------
* ``eval OP ARGS``: one named quantity (selection probabilities, outcome
  expectations, standard conditionals, Zadeh quantities, mixed-space ops).
* ``table BLOCK --a ATTR [--b ATTR] [--p name=value ...]``: a full
  conditional-suite block as (value, prob) rows.
* ``fate EXPERIMENT``: treatment-effect estimand and (optionally) its
  Monte Carlo estimate.
* ``check-properties CHECK ARGS``: ratio-form law checks and t-norm axioms.
* ``plot-data SERIES NAME``: (x, y) rows for external plotting.

Reports serialize deterministically: sorted keys, floats at 12 significant
digits, byte-identical across runs for the same workspace and seed.  Exit
codes: 0 success, 2 validation error, 3 engine error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from typing import Sequence

from . import mixed as mx
from .conditionals import block_names, cond_suite
from .dist import DiscreteDist
from .errors import EngineError, ParseError, ValidationError
from .fate import (assign_treatments, estimate_fate, expected_Y_of_attr, fate,
                   sample_outcomes)
from .models import check_proper, joint_xi_table, std_cond_prob, std_cond_prob_negated
from .properties import check_diamond, golden_feasible
from .tnorms import check_axioms, parse_tnorm
from .workspace import Workspace, load_workspace
from .xi import expect_xi, prob_omega_is, xi_dist, xi_point, zadeh_mean, zadeh_prob

_BERN = re.compile(r"^bern\(([^)]+)\)$")


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt_float(v: float) -> str:
    v = float(v)
    if v == 0.0:
        v = 0.0   # normalize -0.0
    if not math.isfinite(v):
        return json.dumps(str(v))
    return format(v, ".12g")


def render_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f'{pad}  {json.dumps(str(k))}: {render_json(value[k], indent + 1)}'
                 for k in sorted(value, key=str)]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(render_json(v, indent) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_float(value)
    if value is None:
        return "null"
    return json.dumps(str(value))


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def render_csv(report: dict) -> str:
    """Flatten a report to CSV: tabular results as rows, scalars as key,value."""
    results = report.get("results", {})
    lines: list[str] = []
    if "rows" in results:
        cols = results.get("columns")
        if cols:
            lines.append(",".join(str(c) for c in cols))
        for row in results["rows"]:
            lines.append(",".join(_csv_cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def walk(prefix: str, value) -> None:
        if isinstance(value, dict):
            for k in sorted(value, key=str):
                walk(f"{prefix}.{k}" if prefix else str(k), value[k])
        elif isinstance(value, (list, tuple)):
            lines.append(f"{prefix}," + ";".join(_csv_cell(v) for v in value))
        else:
            lines.append(f"{prefix},{_csv_cell(value)}")

    walk("", results)
    return "\n".join(lines) + "\n"


def _emit(report: dict, ns: argparse.Namespace, default_format: str) -> None:
    fmt = ns.format or default_format
    text = render_csv(report) if fmt == "csv" else render_json(report) + "\n"
    if ns.out:
        with open(ns.out, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# token parsing
# ---------------------------------------------------------------------------

def _float_tok(tok: str, what: str) -> float:
    s = tok[1:] if tok.startswith("@") else tok
    try:
        return float(s)
    except ValueError:
        raise ParseError(f"expected a numeric {what}, got {tok!r}") from None


def _name_pair(tok: str) -> tuple[str, str]:
    parts = tok.split("|")
    if len(parts) != 2 or not all(parts):
        raise ParseError(f"expected NAME|NAME, got {tok!r}")
    return parts[0], parts[1]


def _need(args: Sequence[str], n_min: int, n_max: int, usage: str) -> None:
    if not (n_min <= len(args) <= n_max):
        raise ParseError(f"usage: {usage}")


def _load(ns: argparse.Namespace) -> Workspace:
    if not ns.workspace:
        raise ParseError("this command needs --workspace FILE")
    return load_workspace(ns.workspace)


def _dist_token(tok: str, ws: Workspace | None) -> DiscreteDist:
    m = _BERN.match(tok)
    if m:
        return DiscreteDist.bernoulli(float(m.group(1)))
    if ws is None:
        raise ParseError(
            f"{tok!r} is not a bern(p) literal and no --workspace was given")
    space = ws.space(tok)
    if not isinstance(space, DiscreteDist):
        raise ParseError(f"space {tok!r} is not discrete")
    return space


def _pmf_rows(entries) -> list[list[float]]:
    return [[float(v), float(p)] for v, p in sorted(entries)]


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _is_mixed(ws: Workspace, name: str) -> bool:
    return isinstance(ws.space(ws.decl(name).space), mx.MixedDist)


def _mixed_xi(ws: Workspace, name: str) -> tuple[mx.MixedDist, float]:
    f, sel, base = ws.mixed_parts(name)
    return mx.xi_mixed(f, sel, base), base


def _eval_op(ws: Workspace, op: str, args: list[str]) -> dict:
    model = ws.model
    if op == "prob_omega_is":
        _need(args, 1, 1, "eval prob_omega_is ATTR")
        if _is_mixed(ws, args[0]):
            d, base = _mixed_xi(ws, args[0])
            return {"value": 1.0 - d.atom_mass(base, base)}
        return {"value": prob_omega_is(model, ws.binding(args[0]))}
    if op == "expect_xi":
        _need(args, 1, 1, "eval expect_xi ATTR")
        if _is_mixed(ws, args[0]):
            f, sel, base = ws.mixed_parts(args[0])
            return {"value": mx.expect_xi_mixed(f, sel, base)}
        return {"value": expect_xi(model, ws.binding(args[0]))}
    if op == "xi_dist":
        _need(args, 1, 1, "eval xi_dist ATTR")
        d = xi_dist(model, ws.binding(args[0]))
        return {"columns": ["value", "prob"],
                "rows": _pmf_rows(d.pmf.items()),
                "expectation": d.expectation}
    if op == "xi_point":
        _need(args, 2, 2, "eval xi_point ATTR @x")
        pt = xi_point(model, ws.binding(args[0]), _float_tok(args[1], "element"))
        return {"columns": ["value", "prob"],
                "rows": _pmf_rows(pt.pmf().items()),
                "expectation": pt.expectation}
    if op == "select_prob":
        _need(args, 2, 2, "eval select_prob ATTR @x")
        x = _float_tok(args[1], "element")
        if _is_mixed(ws, args[0]):
            _, sel, _ = ws.mixed_parts(args[0])
            return {"value": sel(x)}
        return {"value": model.select_prob(ws.binding(args[0]), x)}
    if op in ("std_cond_prob", "std_cond_prob_negated"):
        usage = f"eval {op} B|A @y [@x]"
        _need(args, 2, 3, usage)
        b_name, a_name = _name_pair(args[0])
        y = _float_tok(args[1], "element")
        x = _float_tok(args[2], "element") if len(args) == 3 else y
        fn = std_cond_prob if op == "std_cond_prob" else std_cond_prob_negated
        return {"value": fn(model, ws.binding(b_name), y, ws.binding(a_name), x)}
    if op == "joint_xi_table":
        _need(args, 2, 3, "eval joint_xi_table A|B @x [@y]")
        a_name, b_name = _name_pair(args[0])
        x = _float_tok(args[1], "element")
        y = _float_tok(args[2], "element") if len(args) == 3 else x
        tab = joint_xi_table(model, ws.binding(a_name), x, ws.binding(b_name), y)
        return {"columns": ["alpha", "beta", "prob"],
                "rows": [[a, b, p] for a, b, p in tab.as_rows()],
                "marginal_a": tab.marginal_a(), "marginal_b": tab.marginal_b()}
    if op == "zadeh_prob":
        _need(args, 1, 1, "eval zadeh_prob ATTR")
        return {"value": zadeh_prob(ws.binding(args[0]))}
    if op == "zadeh_mean":
        _need(args, 1, 1, "eval zadeh_mean ATTR")
        return {"value": zadeh_mean(ws.binding(args[0]))}
    if op == "check_proper":
        _need(args, 1, 1, "eval check_proper ATTR")
        rep = check_proper(model, ws.binding(args[0]))
        return {"proper": rep["proper"], "witnesses": list(rep["witnesses"])}
    if op == "mixed_atom":
        _need(args, 1, 1, "eval mixed_atom ATTR")
        d, base = _mixed_xi(ws, args[0])
        return {"value": d.atom_mass(base, base)}
    if op == "mixed_cdf":
        _need(args, 2, 2, "eval mixed_cdf ATTR @t")
        d, _ = _mixed_xi(ws, args[0])
        return {"value": mx.cdf_mixed(d, _float_tok(args[1], "threshold"))}
    if op == "mixed_event":
        _need(args, 2, len(args) or 2, "eval mixed_event ATTR PIECE...")
        d, _ = _mixed_xi(ws, args[0])
        pieces: list[mx.Interval | mx.Point] = []
        for tok in args[1:]:
            if ":" in tok:
                lo, hi = tok.split(":", 1)
                pieces.append(mx.Interval(_float_tok(lo, "bound"),
                                          _float_tok(hi, "bound")))
            else:
                pieces.append(mx.Point(_float_tok(tok, "point")))
        return {"value": mx.prob_event_mixed(d, pieces)}
    if op == "mixed_discretize":
        _need(args, 2, 2, "eval mixed_discretize ATTR H")
        d, _ = _mixed_xi(ws, args[0])
        grid = mx.discretize(d, _float_tok(args[1], "grid step"))
        return {"columns": ["value", "prob"], "rows": _pmf_rows(grid.items()),
                "mean": grid.mean()}
    raise ParseError(f"unknown eval operation {op!r}")


# ---------------------------------------------------------------------------
# the other commands
# ---------------------------------------------------------------------------

def _run_table(ws: Workspace, ns: argparse.Namespace) -> dict:
    if ns.block not in block_names():
        raise ParseError(f"unknown block {ns.block!r}; known: {sorted(block_names())}")
    bind_a = ws.binding(ns.a)
    bind_b = ws.binding(ns.b) if ns.b else bind_a
    params: dict[str, float] = {}
    for item in ns.p:
        if "=" not in item:
            raise ParseError(f"--p expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = _float_tok(v.strip(), f"parameter {k.strip()!r}")
    try:
        pmf = cond_suite(ns.block, ws.model, bind_a, bind_b, joint=ws.joint,
                         **params)
    except TypeError:
        raise ParseError(
            f"block {ns.block!r} does not accept parameters {sorted(params)}") from None
    return {"anchor": pmf.anchor, "columns": ["value", "prob"],
            "rows": _pmf_rows(pmf.entries), "expectation": pmf.expectation}


def _run_fate(ws: Workspace, ns: argparse.Namespace) -> dict:
    spec = ws.experiment(ns.experiment)
    space = ws.treatment_space(spec)
    seed = ns.seed if ns.seed is not None else spec.seed
    report = fate(space, spec.outcome)
    results: dict = {
        "estimand": {
            "e_low": expected_Y_of_attr(space, spec.outcome, "low"),
            "e_medium": expected_Y_of_attr(space, spec.outcome, "medium"),
            "e_high": expected_Y_of_attr(space, spec.outcome, "high"),
            "fate_lh": report.fate_lh,
            "fate_lm": report.fate_lm,
            "fate_mh": report.fate_mh,
        },
        "n_units": spec.n_units,
        "seed": seed,
    }
    if not ns.estimand_only:
        assignment = assign_treatments(space, spec.n_units, seed)
        outcomes = sample_outcomes(assignment, spec.outcome, seed)
        est_lh, est_lm, est_mh = estimate_fate(assignment, outcomes)
        results["estimate"] = {"fate_lh": est_lh, "fate_lm": est_lm,
                               "fate_mh": est_mh}
    return results


def _run_check(ws_lazy, ns: argparse.Namespace) -> dict:
    args = ns.args
    if ns.check == "tnorm-axioms":
        _need(args, 1, 1, "check-properties tnorm-axioms TNORM")
        rep = check_axioms(parse_tnorm(args[0]))
        return dict(rep)
    ws = ws_lazy() if ns.workspace else None
    if ns.check == "diamond":
        _need(args, 3, 3, "check-properties diamond DIST DIST TNORM")
        dx, dy = _dist_token(args[0], ws), _dist_token(args[1], ws)
        rep = check_diamond(dx, dy, parse_tnorm(args[2]))
        return {
            "holds": rep.holds,
            "conditional_sums": _pmf_rows(rep.conditional_sums.items()),
            "total_law": _pmf_rows(rep.total_law.items()),
            "normalized_total_law": _pmf_rows(rep.normalized_total_law.items()),
            "violations": list(rep.violations),
        }
    if ns.check == "golden":
        _need(args, 4, 4, "check-properties golden DIST DIST TNORM EXEMPT")
        dx, dy = _dist_token(args[0], ws), _dist_token(args[1], ws)
        rep = golden_feasible(dx, dy, parse_tnorm(args[2]),
                              _float_tok(args[3], "exempt value"))
        return {
            "feasible": rep.feasible,
            "exempt": rep.exempt,
            "exempt_cells": _pmf_rows(rep.exempt_cells.items()),
            "total_law_residuals": _pmf_rows(rep.total_law_residuals.items()),
            "violations": list(rep.violations),
        }
    raise ParseError(f"unknown check {ns.check!r}; "
                     "known: diamond, golden, tnorm-axioms")


def _grid(lo: float, hi: float, knots: Sequence[float], samples: int) -> list[float]:
    pts = {float(k) for k in knots if lo <= k <= hi} | {lo, hi}
    if samples > 0 and hi > lo:
        step = (hi - lo) / samples
        pts |= {lo + i * step for i in range(samples + 1)}
    return sorted(pts)


def _run_plot(ws: Workspace, ns: argparse.Namespace) -> dict:
    if ns.series == "membership":
        decl = ws.decl(ns.name)
        knots = [x for x, _ in decl.attr.membership.points]
        lo, hi = decl.attr.membership.domain
        xs = _grid(lo, hi, knots, ns.samples)
        return {"columns": ["x", "y"],
                "rows": [[x, decl.attr.degree(x)] for x in xs]}
    if ns.series == "pmf":
        space = ws.space(ns.name)
        if not isinstance(space, DiscreteDist):
            raise ParseError(f"space {ns.name!r} is not discrete")
        return {"columns": ["x", "y"], "rows": _pmf_rows(space.items())}
    if ns.series == "density":
        space = ws.space(ns.name)
        if not isinstance(space, mx.MixedDist) or space.density is None:
            raise ParseError(f"space {ns.name!r} has no density part")
        lo, hi = space.support
        xs = _grid(lo, hi, space.breakpoints, ns.samples or 200)
        return {"columns": ["x", "y"],
                "rows": [[x, space.density(x)] for x in xs]}
    if ns.series == "xi":
        d = xi_dist(ws.model, ws.binding(ns.name))
        return {"columns": ["x", "y"], "rows": _pmf_rows(d.pmf.items())}
    raise ParseError(f"unknown series {ns.series!r}; "
                     "known: membership, pmf, density, xi")


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", "-w", help="workspace config file")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--seed", type=int, help="override the experiment seed")

    p = argparse.ArgumentParser(
        prog="pflc",
        description="Query engine for probability over fuzzy attributes.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="compute one named quantity")
    e.add_argument("op")
    e.add_argument("args", nargs="*")

    t = sub.add_parser("table", parents=[common],
                       help="dump one conditional-suite block")
    t.add_argument("block")
    t.add_argument("--a", required=True, help="own/conditioning-side attribute")
    t.add_argument("--b", help="other-side attribute (defaults to --a)")
    t.add_argument("--p", action="append", default=[], metavar="NAME=VALUE",
                   help="block parameter, repeatable")

    f = sub.add_parser("fate", parents=[common], help="run a declared experiment")
    f.add_argument("experiment")
    f.add_argument("--estimand-only", action="store_true",
                   help="skip the Monte Carlo estimate")

    c = sub.add_parser("check-properties", parents=[common],
                       help="ratio-form law checks and t-norm axioms")
    c.add_argument("check")
    c.add_argument("args", nargs="*")

    pl = sub.add_parser("plot-data", parents=[common],
                        help="emit (x, y) rows for external plotting")
    pl.add_argument("series")
    pl.add_argument("name")
    pl.add_argument("--samples", type=int, default=0,
                    help="extra evenly spaced sample points")
    return p


def _dispatch(ns: argparse.Namespace) -> tuple[dict, str]:
    """Run the command; return (report, default output format)."""
    if ns.command == "check-properties":
        ws_holder: dict = {}

        def ws_lazy() -> Workspace:
            if "ws" not in ws_holder:
                ws_holder["ws"] = _load(ns)
            return ws_holder["ws"]

        results = _run_check(ws_lazy, ns)
        digest = ws_holder["ws"].digest if "ws" in ws_holder else None
        echo = {"check": ns.check, "args": list(ns.args)}
        return _report("check-properties", echo, digest, results, ns), "json"

    ws = _load(ns)
    if ns.command == "eval":
        results = _eval_op(ws, ns.op, list(ns.args))
        echo = {"op": ns.op, "args": list(ns.args)}
        return _report("eval", echo, ws.digest, results, ns), "json"
    if ns.command == "table":
        results = _run_table(ws, ns)
        echo = {"block": ns.block, "a": ns.a, "b": ns.b or ns.a, "p": list(ns.p)}
        return _report("table", echo, ws.digest, results, ns), "json"
    if ns.command == "fate":
        results = _run_fate(ws, ns)
        echo = {"experiment": ns.experiment,
                "estimand_only": bool(ns.estimand_only)}
        return _report("fate", echo, ws.digest, results, ns), "json"
    if ns.command == "plot-data":
        results = _run_plot(ws, ns)
        echo = {"series": ns.series, "name": ns.name, "samples": ns.samples}
        return _report("plot-data", echo, ws.digest, results, ns), "csv"
    raise ParseError(f"unknown command {ns.command!r}")


def _report(command: str, echo: dict, digest: str | None, results: dict,
            ns: argparse.Namespace) -> dict:
    return {
        "command": command,
        "inputs": echo,
        "digest": digest,
        "seed": ns.seed,
        "results": results,
        "warnings": [],
    }


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        report, default_format = _dispatch(ns)
        _emit(report, ns, default_format)
    except ValidationError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
