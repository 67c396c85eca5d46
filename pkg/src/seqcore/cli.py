"""Batch command-line front end.

Subcommands: transform, invert, paranorm, basis-residual, dual-check,
class-check, core, core-include, verify.  Inputs come from JSON documents or
generator shorthand ("alternating", "constant:r=2,s=1"); reports are rendered
canonically (sorted keys, 17 significant digits), so identical configurations
produce byte-identical output.

Exit codes: 0 all verdicts hold / inclusion true / computation done, 1 some
verdict fails / inclusion false, 2 inconclusive or nothing verified, 3
unreadable input or schema violation, 4 internal evaluation errors.

SEQCORE_THREADS, when set, caps worker parallelism; evaluation currently runs
on a single thread (deterministic by construction), so any positive cap is
honored trivially.
"""

from __future__ import annotations

import argparse
import os
import sys as _sys
from pathlib import Path

import numpy as np

from . import acceptance, band_ops, cores, duals, matclass
from .io import (
    SchemaError,
    canonical_dumps,
    load_json,
    matrix_from_spec,
    region_to_csv,
    seq_from_spec,
    seq_to_json,
    system_from_spec,
)
from .types import ExponentSeq, FiniteSeq

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INCONCLUSIVE = 2
EXIT_SCHEMA = 3
EXIT_INTERNAL = 4

_VERDICT_EXIT = {"holds": EXIT_HOLDS, "fails": EXIT_FAILS, "inconclusive": EXIT_INCONCLUSIVE}


def _resolve_spec(text: str):
    """A CLI value is either a JSON document path or generator shorthand."""
    if text is None:
        return None
    if Path(text).exists():
        return load_json(text)
    return text


def _parse_exponents(text: str, n: int) -> ExponentSeq:
    parts = [p for p in text.split(",") if p]
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise SchemaError(f"exponents must be numeric: {text!r}") from exc
    if len(vals) == 1:
        return ExponentSeq.constant(vals[0], n)
    if len(vals) < n:
        raise SchemaError(f"{len(vals)} exponents cannot serve truncation {n}")
    return ExponentSeq(np.asarray(vals[:n]))


def _parse_window(text: str | None, n: int, min_start: int = 0) -> tuple[int, int]:
    if text is None:
        return max(min_start, n // 4), n
    parts = text.split(",")
    if len(parts) != 2:
        raise SchemaError("window must be 'start,stop'")
    return int(parts[0]), int(parts[1])


def _emit(doc: dict, out: str | None) -> None:
    rendered = canonical_dumps(doc)
    if out:
        Path(out).write_text(rendered, encoding="utf-8")
    else:
        _sys.stdout.write(rendered)


def _check_config(config: dict, command: str, allowed: set, required: set) -> None:
    if not isinstance(config, dict):
        raise SchemaError(f"{command}: config must be a JSON object")
    unknown = sorted(set(config) - allowed)
    if unknown:
        raise SchemaError(f"{command}: unknown config keys {unknown}")
    missing = sorted(required - set(config))
    if missing:
        raise SchemaError(f"{command}: missing config keys {missing}")


def _thread_cap() -> None:
    raw = os.environ.get("SEQCORE_THREADS")
    if raw is not None:
        try:
            cap = int(raw)
        except ValueError as exc:
            raise SchemaError(f"SEQCORE_THREADS must be an integer, got {raw!r}") from exc
        if cap < 1:
            raise SchemaError("SEQCORE_THREADS must be >= 1")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_transform(args) -> int:
    n = args.n
    x = seq_from_spec(_resolve_spec(args.x), n)
    sys = system_from_spec(_resolve_spec(args.system), x.n)
    y = band_ops.forward_transform(x, sys)
    _emit({"command": "transform", "n": x.n} | seq_to_json(y), args.out)
    return EXIT_HOLDS


def _cmd_invert(args) -> int:
    n = args.n
    y = seq_from_spec(_resolve_spec(args.y), n)
    sys = system_from_spec(_resolve_spec(args.system), y.n)
    x = band_ops.inverse_transform(y, sys)
    _emit({"command": "invert", "n": y.n} | seq_to_json(x), args.out)
    return EXIT_HOLDS


def _cmd_paranorm(args) -> int:
    n = args.n
    x = seq_from_spec(_resolve_spec(args.x), n)
    p = _parse_exponents(args.p, x.n)
    doc = {"command": "paranorm", "kind": args.kind, "n": x.n}
    if args.raw:
        doc["value"] = band_ops.maddox_paranorm(x, p, args.kind)
    else:
        sys = system_from_spec(_resolve_spec(args.system), x.n)
        doc["value"] = band_ops.space_paranorm(x, sys, p, args.kind)
    _emit(doc, args.out)
    return EXIT_HOLDS


def _cmd_basis_residual(args) -> int:
    n = args.n
    x = seq_from_spec(_resolve_spec(args.x), n)
    sys = system_from_spec(_resolve_spec(args.system), x.n)
    p = _parse_exponents(args.p, x.n)
    cutoffs = [int(c) for c in args.cutoffs.split(",") if c]
    y = band_ops.forward_transform(x, sys)
    rows = [
        {
            "cutoff": c,
            "residual": band_ops.expansion_residual(x, sys, p, c),
            "tail": band_ops.tail_paranorm(y, p, c),
        }
        for c in cutoffs
    ]
    _emit({"command": "basis-residual", "n": x.n, "rows": rows}, args.out)
    return EXIT_HOLDS


_DUAL_KEYS = {"command", "a", "system", "p", "space", "dual", "ladder", "b_ladder", "out"}


def _cmd_dual_check(args) -> int:
    config = load_json(args.config)
    if args.ladder:
        config = dict(config, ladder=[int(v) for v in args.ladder.split(",")])
    _check_config(config, "dual-check", _DUAL_KEYS, {"a", "system", "p", "space", "dual", "ladder"})
    ladder = [int(v) for v in config["ladder"]]
    n = max(ladder)
    a = seq_from_spec(config["a"], n)
    sys = system_from_spec(config["system"], n)
    p_spec = config["p"]
    p = ExponentSeq.constant(float(p_spec), n) if np.isscalar(p_spec) else ExponentSeq(np.asarray(p_spec))
    b_ladder = tuple(int(b) for b in config.get("b_ladder", duals.DEFAULT_B_LADDER))
    report = duals.dual_report(a, sys, p, config["space"], config["dual"], ladder, b_ladder)
    _emit(report.to_json(), args.out or config.get("out"))
    return _VERDICT_EXIT[report.aggregate]


_CLASS_KEYS = {"command", "matrix", "system", "class", "p", "q", "ladder", "out"}


def _cmd_class_check(args) -> int:
    config = load_json(args.config)
    if args.ladder:
        config = dict(config, ladder=[int(v) for v in args.ladder.split(",")])
    _check_config(config, "class-check", _CLASS_KEYS, {"matrix", "system", "class", "ladder"})
    ladder = [int(v) for v in config["ladder"]]
    n = max(ladder)
    matrix = matrix_from_spec(config["matrix"], n)
    sys = system_from_spec(config["system"], n)
    p = None
    if "p" in config:
        p_spec = config["p"]
        p = ExponentSeq.constant(float(p_spec), n) if np.isscalar(p_spec) else ExponentSeq(np.asarray(p_spec))
    q = None
    if "q" in config:
        q_spec = config["q"]
        q = np.full(n, float(q_spec)) if np.isscalar(q_spec) else np.asarray(q_spec, dtype=np.float64)
    try:
        report = matclass.class_report(matrix, config["class"], sys, p=p, q=q, ladder=ladder)
    except KeyError as exc:
        raise SchemaError(str(exc)) from exc
    _emit(report.to_json(), args.out or config.get("out"))
    return _VERDICT_EXIT[report.aggregate]


def _build_region(kind, x, sys, window, directions, density_tol, grid_n, method="hull"):
    if kind == "alpha":
        return cores.alpha_core(x, sys, window, directions)
    if kind == "k":
        if method == "hull":
            return cores.cluster_hull(x, window, directions)
        if method == "disc":
            return cores.disc_core(x, window, n_directions=directions, grid_n=grid_n)
        raise SchemaError(f"unknown core method {method!r} (expected hull or disc)")
    if kind == "st":
        return cores.st_core(x, window, density_tol, n_directions=directions, grid_n=grid_n)
    raise SchemaError(f"unknown core kind {kind!r} (expected alpha, k, or st)")


def _cmd_core(args) -> int:
    n = args.n
    x = seq_from_spec(_resolve_spec(args.x), n)
    sys = None
    if args.kind == "alpha":
        if args.system is None:
            raise SchemaError("alpha cores need --system")
        sys = system_from_spec(_resolve_spec(args.system), x.n)
    window = _parse_window(args.window, x.n, 1 if args.kind == "alpha" else 0)
    region = _build_region(args.kind, x, sys, window, args.directions, args.density_tol, args.grid_n, args.method)
    if args.out_csv:
        Path(args.out_csv).write_text(region_to_csv(region), encoding="utf-8")
    _emit({"command": "core", "kind": args.kind} | region.to_json(), args.out)
    return EXIT_HOLDS


_CORE_SPEC_KEYS = {"kind", "method", "x", "system", "n", "window", "directions", "density_tol", "grid_n"}
_INCLUDE_KEYS = {"command", "inner", "outer", "tol", "out"}


def _region_from_config(spec: dict) -> cores.RegionEstimate:
    _check_config(spec, "core spec", _CORE_SPEC_KEYS, {"kind", "x", "n"})
    n = int(spec["n"])
    x = seq_from_spec(spec["x"], n)
    kind = spec["kind"]
    sys = system_from_spec(spec["system"], n) if "system" in spec else None
    if kind == "alpha" and sys is None:
        raise SchemaError("alpha cores need a system")
    window = tuple(int(v) for v in spec.get("window", (max(1 if kind == "alpha" else 0, n // 4), n)))
    return _build_region(
        kind,
        x,
        sys,
        window,
        int(spec.get("directions", 64)),
        float(spec.get("density_tol", 0.02)),
        int(spec.get("grid_n", 21)),
        spec.get("method", "hull"),
    )


def _cmd_core_include(args) -> int:
    config = load_json(args.config)
    _check_config(config, "core-include", _INCLUDE_KEYS, {"inner", "outer"})
    inner = _region_from_config(config["inner"])
    outer = _region_from_config(config["outer"])
    tol = float(config.get("tol", args.tol))
    included, violation = cores.region_included(inner, outer, tol)
    _emit(
        {
            "command": "core-include",
            "included": included,
            "max_violation": violation,
            "tol": tol,
            "inner": inner.to_json(),
            "outer": outer.to_json(),
        },
        args.out or config.get("out"),
    )
    return EXIT_HOLDS if included else EXIT_FAILS


def _cmd_verify(args) -> int:
    if args.select is None:
        ids = list(acceptance.CHECK_IDS)
    else:
        ids = [c for c in args.select.split(",") if c]
    if not ids:
        _sys.stderr.write("nothing verified: empty selection\n")
        return EXIT_INCONCLUSIVE
    try:
        results = acceptance.run_selected(ids)
    except KeyError as exc:
        raise SchemaError(str(exc)) from exc
    width = max(len(r.name) for r in results)
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        _sys.stdout.write(f"[{flag}] {r.check_id:>4}  {r.name:<{width}}  {r.detail}\n")
    if args.out:
        doc = {"checks": [r.to_json() for r in results], "all_passed": all(r.passed for r in results)}
        Path(args.out).write_text(canonical_dumps(doc), encoding="utf-8")
    return EXIT_HOLDS if all(r.passed for r in results) else EXIT_FAILS


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqcore", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, system=True):
        sp.add_argument("--n", type=int, default=256, help="truncation length")
        if system:
            sp.add_argument("--system", help="band system document or shorthand")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    sp = sub.add_parser("transform", help="apply the band transform to a sequence")
    sp.add_argument("--x", required=True)
    add_common(sp)
    sp.set_defaults(fn=_cmd_transform)

    sp = sub.add_parser("invert", help="invert the band transform")
    sp.add_argument("--y", required=True)
    add_common(sp)
    sp.set_defaults(fn=_cmd_invert)

    sp = sub.add_parser("paranorm", help="variable-exponent paranorm of a (transformed) sequence")
    sp.add_argument("--x", required=True)
    sp.add_argument("--p", required=True, help="constant or comma-separated exponents")
    sp.add_argument("--kind", choices=("sup", "sum"), default="sup")
    sp.add_argument("--raw", action="store_true", help="skip the band transform")
    add_common(sp)
    sp.set_defaults(fn=_cmd_paranorm)

    sp = sub.add_parser("basis-residual", help="basis expansion residual ladder")
    sp.add_argument("--x", required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--cutoffs", required=True, help="comma-separated expansion cutoffs")
    add_common(sp)
    sp.set_defaults(fn=_cmd_basis_residual)

    sp = sub.add_parser("dual-check", help="dual-set condition report from a config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--ladder", help="comma-separated truncations overriding the config")
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_dual_check)

    sp = sub.add_parser("class-check", help="mapping-class condition report from a config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--ladder", help="comma-separated truncations overriding the config")
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_class_check)

    sp = sub.add_parser("core", help="core region of a sequence")
    sp.add_argument("--kind", choices=("k", "st", "alpha"), required=True)
    sp.add_argument("--method", choices=("hull", "disc"), default="hull", help="estimator for plain cores")
    sp.add_argument("--x", required=True)
    sp.add_argument("--window", help="start,stop (default: last three quarters)")
    sp.add_argument("--directions", type=int, default=64)
    sp.add_argument("--density-tol", dest="density_tol", type=float, default=0.02)
    sp.add_argument("--grid-n", dest="grid_n", type=int, default=21)
    sp.add_argument("--out-csv", dest="out_csv", help="write region vertices as CSV")
    add_common(sp)
    sp.set_defaults(fn=_cmd_core)

    sp = sub.add_parser("core-include", help="support-function inclusion test of two regions")
    sp.add_argument("--config", required=True)
    sp.add_argument("--tol", type=float, default=0.05)
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_core_include)

    sp = sub.add_parser("verify", help="run the acceptance battery")
    sp.add_argument("--select", help="comma-separated check ids (default: all)")
    sp.add_argument("--out", help="write the JSON verification report here")
    sp.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_cap()
        return args.fn(args)
    except SchemaError as exc:
        _sys.stderr.write(f"seqcore: {exc}\n")
        return EXIT_SCHEMA
    except (ValueError, KeyError, IndexError, OverflowError, OSError) as exc:
        _sys.stderr.write(f"seqcore: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
