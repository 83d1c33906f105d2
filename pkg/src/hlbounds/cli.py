"""Command-line interface: ``hlb {norm,bound,optimize,sweep,hyper,reproduce,explore}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import __version__
from .bounds import (
    explore_degree,
    family_bound,
    hyper_estimate,
    optimize_parameters,
    parameter_sweep,
)
from .errors import HLBoundsError
from .fixtures import TABLES
from .norm import OptConfig, parse_p, sup_norm
from .poly import build_family, get_family, parse_params
from .reproduce import all_ok, reproduce_table

SIG_DIGITS = 15
_ALIASES = {"grid": "coarse_grid", "tol": "local_tol", "seed": "rng_seed"}


def round_sig(x):
    if isinstance(x, bool) or not isinstance(x, float):
        return x
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.{SIG_DIGITS}g}")


def fmt_number(x) -> str:
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS}g}"
    return str(x)


def fmt_params(values) -> str:
    return ",".join(fmt_number(float(v)) for v in values)


def load_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[_ALIASES.get(key, key)] = value
    return values


def build_config(args) -> OptConfig:
    values = load_config_file(args.config) if args.config else {}
    if args.seed is not None:
        values["rng_seed"] = args.seed
    if args.grid is not None:
        values["coarse_grid"] = args.grid
    if args.tol is not None:
        values["local_tol"] = args.tol
    if getattr(args, "mode", None):
        values["search_mode"] = args.mode
    return OptConfig.from_mapping(values)


# -- rendering -------------------------------------------------------------


def make_document(command: str, cfg: OptConfig, rows: list, config_file=None) -> dict:
    meta = {
        "version": __version__,
        "command": command,
        "config": {k: round_sig(v) for k, v in cfg.as_dict().items()},
        "config_file": config_file,
    }
    return {"meta": meta, "rows": [{k: round_sig(v) for k, v in row.items()} for row in rows]}


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    meta = doc["meta"]
    cfg_line = " ".join(f"{k}={fmt_number(v)}" for k, v in meta["config"].items())
    header = [f"hlbounds {meta['version']} {meta['command']}", f"config: {cfg_line}"]
    if meta.get("config_file"):
        header.append(f"config_file: {meta['config_file']}")
    rows = doc["rows"]
    columns = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        for line in header:
            buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt_number(row[c]) for c in columns])
        return buf.getvalue()
    lines = [f"<!-- {line} -->" for line in header]
    if columns:
        lines.append("| " + " | ".join(columns) + " |")
        lines.append("|" + "---|" * len(columns))
        for row in rows:
            lines.append("| " + " | ".join(fmt_number(row[c]) for c in columns) + " |")
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------


def cmd_norm(args, cfg):
    P = build_family(args.family, parse_params(args.params))
    r = sup_norm(P, args.p, cfg)
    return [{
        "family": get_family(args.family).id,
        "params": fmt_params(parse_params(args.params)),
        "p": r.p,
        "value": r.value,
        "argmax_x": r.argmax[0],
        "argmax_y": r.argmax[1],
        "est_error": r.est_error,
        "grid_size": r.grid_size,
        "refinement_iters": r.refinement_iters,
    }], 0


def _bound_row(rep):
    return {
        "family": rep.family,
        "params": fmt_params(rep.params),
        "m": rep.m,
        "p": rep.p,
        "q": rep.q,
        "coeff_norm": rep.coeff_norm,
        "sup_norm": rep.sup_norm,
        "lower_bound": rep.lower_bound,
        "per_degree_root": rep.per_degree_root,
    }


def cmd_bound(args, cfg):
    rep = family_bound(args.family, parse_params(args.params), args.p, cfg)
    return [_bound_row(rep)], 0


def cmd_optimize(args, cfg):
    fit = optimize_parameters(args.family, args.p, cfg)
    rep = fit.report
    return [{
        "family": rep.family,
        "mode": fit.mode,
        "params": fmt_params(fit.params),
        "normalized": fmt_params(fit.normalized),
        "p": rep.p,
        "coeff_norm": rep.coeff_norm,
        "sup_norm": rep.sup_norm,
        "lower_bound": rep.lower_bound,
        "per_degree_root": rep.per_degree_root,
        "evaluations": fit.evaluations,
    }], 0


def parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected lo:hi:step, got {text!r}")
    return tuple(float(s) for s in parts)


def cmd_sweep(args, cfg):
    series = parameter_sweep(args.family, args.p, parse_range(args.lam), cfg, a=float(args.a))
    return [{"lambda": lam, "quotient": q} for lam, q in series], 0


def cmd_hyper(args, cfg):
    rep = hyper_estimate(args.family, parse_params(args.params), args.power, cfg)
    return [{
        "family": rep.base_family,
        "params": fmt_params(rep.base_params),
        "k": rep.k,
        "M": rep.M,
        "p": rep.p,
        "coeff_norm": rep.coeff_norm,
        "base_sup_norm": rep.base_sup_norm,
        "lower_bound": rep.lower_bound,
        "h_estimate": rep.h_estimate,
        "label": rep.label,
    }], 0


def cmd_reproduce(args, cfg):
    comps = reproduce_table(args.table, cfg)
    rows = [{
        "table": c.table,
        "family": c.family,
        "column": c.column,
        "params": c.params,
        "computed": c.computed,
        "expected": c.expected,
        "delta": c.delta,
        "tolerance": c.tolerance,
        "status": c.status,
        "note": c.note,
    } for c in comps]
    if all_ok(comps):
        return rows, 0
    for c in comps:
        if not c.ok:
            print(
                f"FAIL {c.table} {c.family} {c.column}: computed {fmt_number(c.computed)} "
                f"expected {fmt_number(c.expected)} delta {fmt_number(c.delta)} > {fmt_number(c.tolerance)}",
                file=sys.stderr,
            )
    return rows, 1


def cmd_explore(args, cfg):
    fit = explore_degree(args.degree, args.p, cfg)
    rep = fit.report
    return [{
        "degree": rep.m,
        "p": rep.p,
        "coeffs": fmt_params(fit.params),
        "coeff_norm": rep.coeff_norm,
        "sup_norm": rep.sup_norm,
        "lower_bound": rep.lower_bound,
        "evaluations": fit.evaluations,
    }], 0


def _add_common(sp):
    sp.add_argument("--format", choices=("md", "csv", "json"), default="md")
    sp.add_argument("--config", help="flat key = value file with OptConfig fields")
    sp.add_argument("--seed", type=int, help="rng seed (u64)")
    sp.add_argument("--grid", type=int, help="coarse grid size on the sphere (odd)")
    sp.add_argument("--tol", type=float, help="abscissa tolerance of the refinement")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hlb", description="Lower bounds for real polynomial Hardy-Littlewood constants on l_p^2."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("norm", help="sup-norm of a family member over the l_p unit ball")
    sp.add_argument("--family", required=True)
    sp.add_argument("--params", required=True, help="comma-separated, decimals or fractions")
    sp.add_argument("--p", required=True, type=parse_p)
    _add_common(sp)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("bound", help="coefficient-norm / sup-norm lower bound")
    sp.add_argument("--family", required=True)
    sp.add_argument("--params", required=True)
    sp.add_argument("--p", type=parse_p, help="defaults to 2m")
    _add_common(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("optimize", help="search the family's parameters for the best bound")
    sp.add_argument("--family", required=True)
    sp.add_argument("--p", type=parse_p, help="defaults to 2m")
    sp.add_argument("--mode", choices=("simplex", "sweep"))
    _add_common(sp)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("sweep", help="quotient as a function of lambda = b/a (figure data)")
    sp.add_argument("--family", required=True)
    sp.add_argument("--p", required=True, type=parse_p)
    sp.add_argument("--lambda", dest="lam", required=True, help="lo:hi:step")
    sp.add_argument("--a", default="1", help="value held for a (matters for P10 only)")
    _add_common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("hyper", help="finite-degree H estimate from a power of a family member")
    sp.add_argument("--family", required=True)
    sp.add_argument("--params", required=True)
    sp.add_argument("--power", required=True, type=int)
    _add_common(sp)
    sp.set_defaults(func=cmd_hyper)

    sp = sub.add_parser("reproduce", help="recompute a published table and compare")
    sp.add_argument("--table", required=True, choices=sorted(TABLES))
    _add_common(sp)
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("explore", help="search over all coefficient vectors of a small degree")
    sp.add_argument("--degree", required=True, type=int)
    sp.add_argument("--p", type=parse_p, help="defaults to 2m")
    _add_common(sp)
    sp.set_defaults(func=cmd_explore)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        rows, code = args.func(args, cfg)
    except (HLBoundsError, ValueError, OSError, OverflowError) as exc:
        print(f"hlb {args.command}: error: {exc}", file=sys.stderr)
        return 2
    doc = make_document(args.command, cfg, rows, args.config)
    sys.stdout.write(render(doc, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
