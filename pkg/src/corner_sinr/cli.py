"""``corner-sinr`` command line: validate a scenario and run the reliability experiments.

Exit codes: 0 ok, 1 domain error, 2 usage or configuration error.
Every command that writes files also writes ``<command>_manifest.json`` and
the fully resolved ``<command>_scenario.ini`` next to them; the manifest's
``replay_argv`` reruns the command bit-identically.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import math
import sys
import time
from dataclasses import asdict, replace
from pathlib import Path

from . import __version__
from .analytic import success_probability
from .config import ConfigError, dump_config, load_config
from .design import design_sweep, designed, optimal_tx_prob
from .montecarlo import default_threads, fine_grained_sweep, meta_distribution
from .scene import (
    Link,
    Position,
    RadioParams,
    RoadNetwork,
    Scenario,
    Suburban,
    Urban,
    region,
    worst_case_link,
    tx_grid_all,
    validate_scenario,
)

DEFAULT_R_GRID = "15,20,30,50,75,100,150,200,300,500,750,1000,2000,5000,10000"


class DomainError(Exception):
    pass


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _float_or_inf(text: str) -> float:
    return math.inf if text.strip().lower() in ("inf", "infinity") else float(text)


def _float_list(text: str) -> list[float]:
    try:
        return [_float_or_inf(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}")


# -- scenario resolution -------------------------------------------------------

def resolve(args) -> tuple[Scenario, Link]:
    """Config file, then flag overrides, on top of the built-in defaults."""
    if args.config:
        s, link = load_config(args.config)
    else:
        s, link = Scenario(RadioParams(), Suburban(), RoadNetwork()), worst_case_link()
    channel = getattr(args, "channel", None)
    if channel and channel != s.channel.kind:
        s = replace(s, channel=Urban() if channel == "urban" else Suburban())
    if getattr(args, "half_len", None) is not None:
        s = s.with_half_len(args.half_len)
    if getattr(args, "tx_prob", None) is not None:
        s = s.with_tx_prob(args.tx_prob)
    return s, link


def _check(s: Scenario, allow_infinite: bool = False) -> None:
    diag = validate_scenario(s)
    if not diag.ok:
        raise DomainError("; ".join(diag.violations))
    if not allow_infinite and not (
        math.isfinite(s.roads.half_len_x) and math.isfinite(s.roads.half_len_y)
    ):
        raise DomainError("Monte Carlo needs finite road segments")


def _design_link(link: Link, d_target: float) -> Link:
    return worst_case_link(rx_dist=link.rx.norm, d_target=d_target)


def _apply_design(s: Scenario, link: Link, args) -> Scenario:
    try:
        return designed(s, args.target, _design_link(link, args.d_target))
    except ValueError as exc:
        raise DomainError(str(exc)) from None


# -- output --------------------------------------------------------------------

class Outputs:
    def __init__(self, out_dir: Path, fmt_: str):
        self.dir = out_dir
        self.format = fmt_
        self.paths: list[str] = []
        self.dir.mkdir(parents=True, exist_ok=True)

    def table(self, stem: str, header: list[str], rows) -> Path:
        rows = [[fmt(v) for v in row] for row in rows]
        if self.format == "json":
            path = self.dir / f"{stem}.json"
            path.write_text(json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n")
        else:
            path = self.dir / f"{stem}.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                w.writerows(rows)
        self.paths.append(path.name)
        return path

    def json(self, stem: str, obj) -> Path:
        path = self.dir / f"{stem}.json"
        path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n")
        self.paths.append(path.name)
        return path


def _jsonable(v):
    if hasattr(v, "item"):
        return v.item()
    raise TypeError(type(v))


def _clean(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _write_manifest(out: Outputs, args, argv, base: Scenario, s: Scenario, link: Link,
                    scale: dict, started: float) -> None:
    """``base`` is the resolved input scenario, ``s`` the one actually evaluated."""
    ini = out.dir / f"{args.command}_scenario.ini"
    ini.write_text(dump_config(base, link))
    replay = _replay_argv(argv, str(ini.resolve()))
    scen = json.loads(json.dumps(
        {"radio": asdict(s.radio), "channel": {"kind": s.channel.kind, **asdict(s.channel)},
         "roads": asdict(s.roads), "link": {"tx": asdict(link.tx), "rx": asdict(link.rx)}},
        default=str,
    ))
    manifest = {
        "command": args.command,
        "argv": list(argv),
        "replay_argv": replay,
        "scenario": {k: {kk: _clean(vv) for kk, vv in v.items()} if isinstance(v, dict) else v
                     for k, v in scen.items()},
        "master_seed": args.seed,
        "scale": scale,
        "outputs": out.paths,
        "started_at": _dt.datetime.fromtimestamp(started, _dt.timezone.utc).isoformat(),
        "wall_clock_s": time.time() - started,
        "threads": default_threads(),
        "version": __version__,
    }
    (out.dir / f"{args.command}_manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n"
    )


def _replay_argv(argv: list[str], ini_path: str) -> list[str]:
    # the resolved ini already carries every override, but flags are kept verbatim
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--config":
            skip = True
            continue
        if a.startswith("--config="):
            continue
        out.append(a)
    return ["--config", ini_path] + out


# -- commands --------------------------------------------------------------------

def cmd_validate(args, argv) -> int:
    if not args.config:
        raise ConfigError("validate needs --config")
    s, _ = resolve(args)
    diag = validate_scenario(s)
    for v in diag.violations:
        print(f"violation: {v}")
    for w in diag.warnings:
        print(f"warning: {w}")
    if diag.ok:
        print("ok")
        return 0
    return 1


def _separations(args) -> list[tuple[float, Position]]:
    s_list = args.sweep_separations
    rx_dist = args._rx_dist
    if s_list:
        out = []
        for sep in s_list:
            if not sep > 0:
                raise DomainError(f"separation must be positive, got {sep}")
            coord = sep - rx_dist
            pos = Position.horizontal(coord) if sep <= rx_dist else Position.vertical(coord)
            out.append((sep, pos))
        return out
    return [(k * args.d_max / args.m_e, p)
            for k, p in enumerate(tx_grid_all(args.m_e, args.d_max, rx_dist), start=1)]


def cmd_analytic(args, argv) -> int:
    started = time.time()
    base, link = resolve(args)
    _check(base, allow_infinite=True)
    s = base
    if args.design:
        s = _apply_design(s, link, args)
    args._rx_dist = link.rx.norm
    rows = []
    for sep, pos in _separations(args):
        b = success_probability(s, Link(pos, link.rx))
        rows.append([sep, region(s.channel, sep, link.rx.norm),
                     b.p_noint, b.p_x, b.p_y, b.p_c, b.outage])
    out = Outputs(Path(args.out), args.format)
    out.table("analytic", ["separation_m", "region", "p_noint", "p_x", "p_y", "p_c", "outage"],
              rows)
    _write_manifest(out, args, argv, base, s, link, {"m_e": args.m_e, "d_max": args.d_max}, started)
    return 0


def cmd_design(args, argv) -> int:
    started = time.time()
    s, link = resolve(args)
    _check(s, allow_infinite=True)
    dl = _design_link(link, args.d_target)
    try:
        first = optimal_tx_prob(s, args.target, dl)
        if first.p_star < 0:
            raise DomainError(
                f"infeasible target {args.target}: above the noise-only success probability"
            )
        points = design_sweep(s, args.target, dl, args.r_grid)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    rows = [[p.half_len, p.p_star, p.p_star_clamped, p.p_inf, p.feasible] for p in points]
    out = Outputs(Path(args.out), args.format)
    out.table("design", ["R_m", "p_star_raw", "p_star_clamped", "p_inf", "feasible"], rows)
    _write_manifest(out, args, argv, s, s, link, {"r_grid": args.r_grid}, started)
    return 0


def cmd_meta(args, argv) -> int:
    started = time.time()
    base, link = resolve(args)
    _check(base)
    s = base
    if args.design:
        s = _apply_design(s, link, args)
    est = meta_distribution(s, link, args.n_ppp, args.mode, args.n_f, args.bins, args.seed)
    out = Outputs(Path(args.out), args.format)
    counts, edges = est.histogram
    out.table("meta_histogram", ["bin_lo", "bin_hi", "count"],
              [[float(lo), float(hi), int(c)] for lo, hi, c in zip(edges[:-1], edges[1:], counts)])
    out.table("meta_samples", ["realization_id", "p_c"],
              [[i, float(v)] for i, v in enumerate(est.samples)])
    ab = est.beta_params
    summary = {
        "tx_prob": s.roads.tx_prob,
        "n_ppp": est.n_ppp,
        "moment1": est.moment1,
        "moment2": est.moment2,
        "std_error": est.std_error,
        "mean_outage": 1.0 - est.moment1,
        "analytic_p_c": success_probability(s, link).p_c,
        "target": args.target,
        "cdf_at_target": float(est.cdf_at(args.target)),
        "cdf_at_mean": float(est.cdf_at(est.moment1)),
        "beta_params": list(ab) if ab else None,
        "beta_ks_distance": est.beta_ks_distance(),
    }
    out.json("meta_summary", summary)
    _write_manifest(out, args, argv, base, s, link,
                    {"n_ppp": args.n_ppp, "n_f": args.n_f, "n_b": args.bins, "mode": args.mode},
                    started)
    return 0


def cmd_finegrained(args, argv) -> int:
    started = time.time()
    base, link = resolve(args)
    _check(base)
    s = base
    if args.design:
        s = _apply_design(s, link, args)
    res = fine_grained_sweep(s, link.rx, args.d_max, args.m_e, args.n_ppp, args.mode,
                             args.seed, args.target, args.n_f, args.bins)
    out = Outputs(Path(args.out), args.format)
    lines = min(args.lines, args.n_ppp)
    out.table("finegrained_matrix", ["separation_m", "realization_id", "p_out"],
              [[float(sep), i, float(res.outage[i, j])]
               for j, sep in enumerate(res.separations) for i in range(lines)])
    out.table("finegrained_aggregate",
              ["separation_m", "mean_out", "cdf_at_target", "cond_mean_good", "cond_mean_bad"],
              [[float(a), float(b), float(c), float(d), float(e)] for a, b, c, d, e in zip(
                  res.separations, res.mean_outage, res.cdf_at_target,
                  res.cond_mean_good, res.cond_mean_bad)])
    _write_manifest(out, args, argv, base, s, link,
                    {"n_ppp": args.n_ppp, "n_f": args.n_f, "m_e": args.m_e, "n_b": args.bins,
                     "d_max": args.d_max, "mode": args.mode, "lines": lines}, started)
    return 0


# -- parser --------------------------------------------------------------------

def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--config", metavar="PATH", default=d(None), help="scenario INI file")
    p.add_argument("--seed", type=int, default=d(0), metavar="U64", help="master seed")
    p.add_argument("--out", default=d("."), metavar="DIR", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default=d("csv"))


def _scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--channel", choices=("suburban", "urban"),
                   help="replace the configured channel with its default parameters")
    p.add_argument("--half-len", type=_float_or_inf, metavar="R",
                   help="half length of both road segments in meters ('inf' allowed "
                        "for analytic and design)")
    p.add_argument("--tx-prob", type=float, help="Aloha transmit probability")


def _design_flags(p: argparse.ArgumentParser, default: bool) -> None:
    p.add_argument("--target", type=float, default=0.9, help="target success probability")
    p.add_argument("--d-target", type=float, default=100.0,
                   help="Manhattan separation of the worst-case design link")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--design", dest="design", action="store_true",
                   help="replace tx_prob by the optimal design value")
    g.add_argument("--no-design", dest="design", action="store_false")
    p.set_defaults(design=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corner-sinr", description=__doc__.splitlines()[0])
    _globals(parser, suppress=False)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file")
    _globals(p, suppress=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analytic", help="average reliability versus TX/RX separation")
    _globals(p, suppress=True)
    _scenario_flags(p)
    _design_flags(p, default=True)
    p.add_argument("--d-max", type=float, default=140.0)
    p.add_argument("--m-e", type=int, default=140)
    p.add_argument("--sweep-separations", type=_float_list, metavar="S1,S2,...",
                   help="explicit separations instead of the equidistant grid")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("design", help="optimal transmit probability versus road length")
    _globals(p, suppress=True)
    _scenario_flags(p)
    p.add_argument("--target", type=float, default=0.9)
    p.add_argument("--d-target", type=float, default=100.0)
    p.add_argument("--r-grid", type=_float_list, default=_float_list(DEFAULT_R_GRID),
                   metavar="R1,R2,...")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("meta", help="meta distribution at the configured link")
    _globals(p, suppress=True)
    _scenario_flags(p)
    _design_flags(p, default=False)
    p.add_argument("--n-ppp", type=int, default=2000)
    p.add_argument("--mode", choices=("exact", "fading"), default="exact")
    p.add_argument("--n-f", type=int, default=1000)
    p.add_argument("--bins", type=int, default=150)
    p.set_defaults(func=cmd_meta)

    p = sub.add_parser("finegrained", help="per-realization outage versus separation")
    _globals(p, suppress=True)
    _scenario_flags(p)
    _design_flags(p, default=True)
    p.add_argument("--n-ppp", type=int, default=2000)
    p.add_argument("--m-e", type=int, default=140)
    p.add_argument("--d-max", type=float, default=140.0)
    p.add_argument("--lines", type=int, default=100,
                   help="number of per-realization curves exported")
    p.add_argument("--mode", choices=("exact", "fading"), default="exact")
    p.add_argument("--n-f", type=int, default=1000)
    p.add_argument("--bins", type=int, default=150)
    p.set_defaults(func=cmd_finegrained)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
