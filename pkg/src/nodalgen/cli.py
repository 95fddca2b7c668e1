"""Command-line front end.

Subcommands: form, severi, fit, universal, surface, nodepoly, qmu, verify,
cache.  Exit status 0 on success (for `verify`: all checks passed), 1 on a
computation failure or failing checks, 2 on a usage error.  The environment
variable NODALGEN_CACHE supplies a default Severi cache path.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from .errors import NodalgenError
from .modforms import FORM_NAMES, form_series
from .qseries import format_rational
from .serialize import render
from .severi import MemoCache, severi_degree, severi_table
from .surfaces import (
    abelian_genus_series,
    enriques_genus_series,
    geometry_preset,
    k3_genus_series,
    node_polynomial,
    qmu_extract,
    ruled_predictions,
)
from .universal import fit3_verify_C1, fit_BC
from .verify import run_verify

_GENUS_SERIES = {
    "k3": k3_genus_series,
    "abelian": abelian_genus_series,
    "enriques": enriques_genus_series,
}


@dataclass
class JobConfig:
    """Everything a run depends on; equal configs must print identical bytes."""

    command: str
    fmt: str = "text"
    out: str = None
    cache_path: str = None
    verbosity: int = 0
    options: dict = field(default_factory=dict)


def _smallest_fit_degrees(n_max):
    """Two smallest plane degrees whose validity windows cover delta <= n_max."""
    d0 = (n_max + 2 + 1) // 2
    return (max(d0, 2), max(d0, 2) + 1)


def _load_cache(config) -> MemoCache:
    path = config.cache_path
    if path and os.path.exists(path):
        return MemoCache.load(path)
    return MemoCache()


def _maybe_save_cache(config, cache):
    if config.cache_path:
        cache.save(config.cache_path)


def _fitted_b(config, n_max, degrees=None):
    cache = _load_cache(config)
    degrees = degrees or _smallest_fit_degrees(n_max)
    table = severi_table(max(degrees), n_max, cache)
    fit = fit_BC(table, n_max, degrees)
    _maybe_save_cache(config, cache)
    return fit


def _series_doc(series, **extra):
    doc = {"type": "series", "series": series.to_doc()}
    doc.update(extra)
    return doc


# --- command implementations -------------------------------------------------

def _cmd_form(config):
    opt = config.options
    return _series_doc(form_series(opt["name"], opt["order"]),
                       form=opt["name"], order=opt["order"])


def _cmd_severi(config):
    opt = config.options
    cache = _load_cache(config)
    if opt.get("d_max") is not None:
        table = severi_table(opt["d_max"], opt["delta_max"], cache)
        _maybe_save_cache(config, cache)
        entries = [{"d": d, "delta": k, "value": str(table[(d, k)])}
                   for d in range(1, opt["d_max"] + 1)
                   for k in range(opt["delta_max"] + 1)]
        return {"type": "severi_table", "d_max": opt["d_max"],
                "delta_max": opt["delta_max"], "entries": entries}
    value = severi_degree(opt["d"], opt["delta"], cache)
    _maybe_save_cache(config, cache)
    return {"type": "severi", "d": opt["d"], "delta": opt["delta"],
            "value": str(value)}


def _cmd_fit(config):
    opt = config.options
    n_max = opt["max_delta"]
    degrees = opt["degrees"]
    for k in range(1, n_max + 1):
        if sum(1 for d in degrees if k <= 2 * d - 2) < 2:
            raise UsageError(
                "degrees %s cannot determine x^%d: need two with delta <= 2d-2"
                % (",".join(map(str, degrees)), k))
    cache = _load_cache(config)
    table = severi_table(max(degrees), n_max, cache)
    fit = fit_BC(table, n_max, degrees)
    doc = {
        "type": "fit_result",
        "max_delta": n_max,
        "degrees": list(fit.degrees),
        "C1": [format_rational(c) for c in fit.c1],
        "C2": [format_rational(c) for c in fit.c2],
        "C3": [format_rational(c) for c in fit.c3],
        "B1": fit.b1.to_doc(),
        "B2": fit.b2.to_doc(),
        "residual_pairs": len(fit.residuals),
        "consistent": fit.consistent,
    }
    if opt.get("three_degree_check"):
        if len(degrees) < 3:
            raise UsageError("--three-degree-check needs at least 3 degrees")
        rows = fit3_verify_C1(table, n_max, degrees[:3])
        doc["c1_check"] = all(r.residual == 0 for r in rows)
    _maybe_save_cache(config, cache)
    return doc


def _cmd_universal(config):
    from .universal import tdelta_universal

    opt = config.options
    n_max = opt["max_delta"]
    fit = _fitted_b(config, n_max, opt.get("degrees"))
    entries = []
    for k, poly in enumerate(tdelta_universal(fit.b, n_max)):
        pdoc = poly.to_doc()
        entries.append({"delta": k, "text": poly.to_text(),
                        "terms": pdoc["terms"]})
    return {"type": "universal_polynomials", "max_delta": n_max,
            "entries": entries}


def _cmd_surface(config):
    opt = config.options
    kind = opt["kind"]
    if kind in _GENUS_SERIES:
        series = _GENUS_SERIES[kind](opt["r"], opt["order"]).series
        if opt.get("coeff") is not None:
            return {"type": "value", "kind": kind, "r": opt["r"],
                    "coeff": opt["coeff"],
                    "value": format_rational(series.coeff(opt["coeff"]))}
        return _series_doc(series, kind=kind, r=opt["r"])
    if kind == "ruled":
        n_max = opt["max_delta"]
        fit = _fitted_b(config, n_max, opt.get("degrees"))
        preds = ruled_predictions(opt["e"], opt["n"], opt["m"], n_max, fit.b)
        return {"type": "ruled_predictions",
                "e": opt["e"], "n": opt["n"], "m": opt["m"],
                "entries": [{"delta": p.delta,
                             "value": format_rational(p.value),
                             "valid": p.valid} for p in preds]}
    raise UsageError("surface kind must be one of k3, abelian, enriques, ruled")


def _cmd_nodepoly(config):
    opt = config.options
    dlt = opt["delta"]
    fit = _fitted_b(config, max(dlt, 1), opt.get("degrees"))
    poly = node_polynomial(dlt, fit.b)
    return {"type": "node_polynomial", "delta": dlt,
            "polynomial": poly.poly.to_doc(variable="d")}


def _cmd_qmu(config):
    opt = config.options
    mu = opt["mu"]
    need = (mu + 1) // 2 + mu // 2 + 2
    fit = _fitted_b(config, need, opt.get("degrees"))
    q = qmu_extract(mu, fit.b)
    return {"type": "q_polynomial", "mu": mu,
            "polynomial": q.to_doc(variable="delta")}


def _cmd_verify(config):
    opt = config.options
    cache = _load_cache(config) if config.cache_path else None
    report = run_verify(opt["level"], cache=cache, only=opt.get("only"))
    doc = report.to_doc()
    doc["type"] = "verify_report"
    return doc


def _cmd_cache(config):
    opt = config.options
    action = opt["action"]
    if action == "info":
        cache = MemoCache.load(opt["path"])
        return {"type": "cache_info", "path": opt["path"],
                "entries": cache.entry_count()}
    if action == "build":
        cache = MemoCache()
        if os.path.exists(opt["path"]):
            cache = MemoCache.load(opt["path"])
        severi_table(opt["d_max"], opt["delta_max"], cache)
        cache.save(opt["path"])
        return {"type": "cache_info", "path": opt["path"],
                "entries": cache.entry_count()}
    raise UsageError("cache action must be info or build")


class UsageError(Exception):
    pass


_COMMANDS = {
    "form": _cmd_form,
    "severi": _cmd_severi,
    "fit": _cmd_fit,
    "universal": _cmd_universal,
    "surface": _cmd_surface,
    "nodepoly": _cmd_nodepoly,
    "qmu": _cmd_qmu,
    "verify": _cmd_verify,
    "cache": _cmd_cache,
}


def _int_list(text):
    return tuple(int(x) for x in text.split(",") if x)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nodalgen",
        description="Exact counts of nodal curves on algebraic surfaces.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="text")
        p.add_argument("--out", metavar="FILE")
        p.add_argument("--cache", metavar="PATH",
                       default=os.environ.get("NODALGEN_CACHE"))

    p = sub.add_parser("form", help="q-expansion of a catalog form")
    p.add_argument("name", choices=FORM_NAMES)
    p.add_argument("--order", type=int, required=True)
    common(p)

    p = sub.add_parser("severi", help="Severi degree N^{d,delta}")
    p.add_argument("--d", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--d-max", type=int)
    p.add_argument("--delta-max", type=int)
    common(p)

    p = sub.add_parser("fit", help="fit B1, B2 from Severi degrees")
    p.add_argument("--max-delta", type=int, required=True)
    p.add_argument("--degrees", type=_int_list, required=True)
    p.add_argument("--three-degree-check", action="store_true")
    common(p)

    p = sub.add_parser("universal", help="universal polynomials T_delta")
    p.add_argument("--max-delta", type=int, required=True)
    p.add_argument("--degrees", type=_int_list)
    common(p)

    p = sub.add_parser("surface", help="genus count series / ruled predictions")
    p.add_argument("--kind", required=True,
                   choices=("k3", "abelian", "enriques", "ruled"))
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--coeff", type=int)
    p.add_argument("-e", type=int, default=0)
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--max-delta", type=int, default=10)
    p.add_argument("--degrees", type=_int_list)
    common(p)

    p = sub.add_parser("nodepoly", help="node polynomial P_delta(d)")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--degrees", type=_int_list)
    common(p)

    p = sub.add_parser("qmu", help="leading-coefficient polynomial Q_mu(delta)")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--degrees", type=_int_list)
    common(p)

    p = sub.add_parser("verify", help="run the reproduction suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--only", metavar="CHECK")
    common(p)

    p = sub.add_parser("cache", help="inspect or build a Severi cache file")
    p.add_argument("action", choices=("info", "build"))
    p.add_argument("path")
    p.add_argument("--d-max", type=int, default=10)
    p.add_argument("--delta-max", type=int, default=12)
    common(p)

    return parser


def _config_from_args(args) -> JobConfig:
    options = {k: v for k, v in vars(args).items()
               if k not in ("command", "format", "out", "cache", "verbose")}
    if args.command == "severi":
        if options.get("d_max") is not None or options.get("delta_max") is not None:
            if options.get("d_max") is None or options.get("delta_max") is None:
                raise UsageError("table mode needs both --d-max and --delta-max")
        elif options.get("d") is None or options.get("delta") is None:
            raise UsageError("need --d and --delta (or --d-max and --delta-max)")
        else:
            if options["d"] < 1 or options["delta"] < 0:
                raise UsageError("need d >= 1 and delta >= 0")
    if args.command == "surface" and options["kind"] == "ruled":
        if options.get("n") is None or options.get("m") is None:
            raise UsageError("ruled predictions need -n and -m")
    return JobConfig(command=args.command, fmt=args.format,
                     out=getattr(args, "out", None),
                     cache_path=getattr(args, "cache", None),
                     verbosity=args.verbose, options=options)


def run(argv) -> int:
    """Dispatch a parsed command line; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        config = _config_from_args(args)
        if config.verbosity:
            import logging

            logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                                format="%(name)s: %(message)s")
        doc = _COMMANDS[config.command](config)
        output = render(doc, config.fmt)
        if config.out:
            with open(config.out, "w", encoding="utf-8") as fh:
                fh.write(output)
        else:
            sys.stdout.write(output)
        if config.command == "verify" and not doc["all_passed"]:
            return 1
        return 0
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except NodalgenError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
