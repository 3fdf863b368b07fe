"""Command-line front end: reproducible analyses with JSON reports.

Every run writes one JSON RunReport to stdout (sorted keys; exact rationals
as "p/q" strings; the only floating content is the explicitly approximate
C_log10) and a short human summary to stderr.  Exit codes: 0 success,
1 analysis refusal (untrusted data / uncertified strategy), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from . import checks
from .bigons import (ball_stats, band_at, enumerate_bigons, iter_blocks,
                     max_small_jumper_gap, width_profile)
from .cayley import (CapExceeded, TrustError, build_ball, gromov_delta,
                     ingest_graph)
from .constants import ParameterError, pipeline
from .presentation import (PresentationError, parse_presentation, preset,
                           symmetrize)
from .vkarea import AreaError, area, ratio_stats
from .wordproblem import StrategyError, auto_strategy


class UsageError(Exception):
    pass


class RefusalError(Exception):
    pass


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _parse_rational(s: str) -> Fraction:
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from e


def _add_group_flags(sp, graph_ok=True):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", choices=["f2", "z2", "surface2"])
    g.add_argument("--presentation", metavar="FILE")
    if graph_ok:
        g.add_argument("--graph", metavar="FILE")
        sp.add_argument("--base", type=int, default=None,
                        help="base vertex id (required with --graph)")


def _add_ball_flags(sp):
    sp.add_argument("--radius", type=int, default=None)
    sp.add_argument("--core-radius", type=int, default=None)


def _load_presentation(args):
    if getattr(args, "preset", None):
        p = preset(args.preset)
    else:
        with open(args.presentation, encoding="utf-8") as fh:
            p = parse_presentation(fh.read())
    return symmetrize(p)


def _load_ball(args):
    if getattr(args, "graph", None):
        if args.base is None:
            raise UsageError("--graph requires --base")
        with open(args.graph, encoding="utf-8") as fh:
            return None, ingest_graph(fh.read(), args.base)
    if args.radius is None:
        raise UsageError("--radius is required with a presentation")
    p = _load_presentation(args)
    s = auto_strategy(p)
    ball = build_ball(p, s, args.radius, core_radius=args.core_radius)
    return p, ball


def _params(args, names) -> dict:
    out = {}
    for name in names:
        v = getattr(args, name.replace("-", "_"))
        out[name] = _rat(v) if isinstance(v, Fraction) else v
    return out


def _stats_payload(ball, st, blocks, Y, Z):
    def witness(idx):
        if idx is None:
            return None
        band = band_at(ball, blocks, idx)
        prof = width_profile(ball, band)
        return {
            "stream_index": idx,
            "side0": ball.path_word(band.side0),
            "side1": ball.path_word(band.side1),
            "start": ball.labels[band.side0.vertices[0]],
            "profile": list(prof.values),
        }

    curve = [
        {"x": x, "sup": _rat(r), "witness": witness(wit)}
        for x, (r, wit) in sorted(st.sup.items())
    ]
    payload = {
        "count": st.count,
        "truncated": st.truncated,
        "by_length": {str(k): v for k, v in sorted(st.by_length.items())},
        "tas_curve": curve,
        "Y": Y,
        "condition_a": st.condition_a(Y),
        "theta_hat": _rat(st.sup.get(Y, (Fraction(0), None))[0]),
        "max_width": st.max_width,
        "max_width_witness": witness(st.max_width_witness),
        "max_gap": st.max_gap,
        "max_gap_witness": witness(st.max_gap_witness),
        "finite_sample": True,
        "oracle_pairs": st.oracle_pairs,
    }
    if Z is not None:
        payload["Z"] = Z
        payload["condition_b"] = st.condition_b(Z, Y)
    return payload


def _csv_table(payload):
    """(header, rows) for tabular payloads, else None."""
    if "tas_curve" in payload:
        return (["x", "sup_ratio_num", "sup_ratio_den", "witness"],
                [[c["x"], c["sup"].partition("/")[0],
                  c["sup"].partition("/")[2] or "1",
                  "" if c["witness"] is None
                  else c["witness"]["stream_index"]]
                 for c in payload["tas_curve"]])
    if "rows" in payload and "max_per_length" in payload:
        return (["length", "area", "ratio"],
                [[l, a, r] for l, a, r in payload["rows"]])
    return None


# -- subcommand implementations -------------------------------------------


def _cmd_ball(args):
    _, ball = _load_ball(args)
    spheres = {}
    for d in ball.depth:
        spheres[int(d)] = spheres.get(int(d), 0) + 1
    return {
        "vertex_count": ball.n,
        "edge_count": int(ball.csr.nnz // 2),
        "radius": ball.radius,
        "core_radius": ball.core_radius,
        "core_size": len(ball.core_vertices()),
        "sphere_sizes": [spheres.get(d, 0)
                         for d in range(ball.radius + 1)],
        "kind": ball.kind,
        "strategy": (ball.strategy.kind if ball.strategy else None),
    }, ball.certified, False


def _cmd_bigons(args):
    _, ball = _load_ball(args)
    bigons, truncated = enumerate_bigons(ball, args.length_cap,
                                         args.count_cap)
    by_length = {}
    for band in bigons:
        by_length[band.length] = by_length.get(band.length, 0) + 1
    return {
        "count": len(bigons),
        "truncated": truncated,
        "by_length": {str(k): v for k, v in sorted(by_length.items())},
    }, ball.certified and not truncated, truncated


def _cmd_stats(args):
    _, ball = _load_ball(args)
    st, blocks = ball_stats(ball, args.length_cap, args.count_cap,
                            Y=args.Y, jobs=args.jobs)
    payload = _stats_payload(ball, st, blocks, args.Y, args.Z)
    return payload, ball.certified and not st.truncated, st.truncated


def _cmd_gaps(args):
    _, ball = _load_ball(args)
    bundle = pipeline(args.Y, args.theta, args.Z, getattr(args, "lambda"),
                      args.nu)
    st, blocks = ball_stats(ball, args.length_cap, args.count_cap,
                            Y=args.Y, jobs=args.jobs)
    rep = checks.gap_vs_C_check(st, bundle)
    payload = {
        "count": st.count,
        "truncated": st.truncated,
        "max_gap": st.max_gap,
        "condition_a": rep.detail["condition_a"],
        "condition_b": rep.detail["condition_b"],
        "applicable": rep.detail["applicable"],
        "gap_leq_C": (rep.violations == 0 if rep.checked else None),
        "C": bundle.to_json_dict()["C"],
        "C_log10": bundle.C_log10,
        "R": str(bundle.R),
    }
    return payload, ball.certified and not st.truncated, st.truncated


def _cmd_constants(args):
    try:
        bundle = pipeline(args.Y, args.theta, args.Z,
                          getattr(args, "lambda"), args.nu)
    except ParameterError as e:
        raise UsageError(str(e)) from e
    return bundle.to_json_dict(), True, False


def _cmd_area(args):
    p = _load_presentation(args)
    res = area(p, args.word, args.length_cap_area, args.area_cap)
    return res.to_json_dict(), res.status == "exact", \
        res.status != "exact"


def _cmd_ratio(args):
    if getattr(args, "graph", None):
        raise UsageError("ratio requires a presentation group")
    p, ball = _load_ball(args)
    bigons, truncated = enumerate_bigons(ball, args.length_cap,
                                         args.count_cap)
    rooted = [bg for bg in bigons
              if bg.side0.vertices[0] == ball.base]
    tab = ratio_stats(p, rooted, ball, args.length_cap_area,
                      args.area_cap, jobs=args.jobs)
    payload = tab.to_json_dict()
    payload["bigon_count"] = len(rooted)
    payload["truncated"] = truncated
    return payload, (ball.certified and not truncated
                     and tab.excluded == 0), truncated


def _cmd_delta(args):
    _, ball = _load_ball(args)
    return {"delta": _rat(gromov_delta(ball))}, ball.certified, False


def _cmd_lemma_check(args):
    if getattr(args, "graph", None):
        raise UsageError("lemma-check requires a presentation group")
    p, ball = _load_ball(args)
    bundle = pipeline(args.Y, args.theta, args.Z, getattr(args, "lambda"),
                      args.nu)
    reports = []

    # subadditivity on a dedicated small ball (exhaustive triples)
    sub_ball = build_ball(p, ball.strategy, 6)
    reports.append(checks.subadditivity_check(sub_ball))

    st, _blocks = ball_stats(ball, args.length_cap, args.count_cap,
                             Y=args.Y, jobs=args.jobs)
    theta_hat = st.sup.get(args.Y, (Fraction(0), None))[0]
    bigons, truncated = enumerate_bigons(ball, args.length_cap,
                                         args.count_cap)
    reports.extend(checks.rank_checks(ball, bigons, args.Y, theta_hat))

    # dense-value candidates: longer bigons plus a straight band family
    dense_cap = min(2 * ball.core_radius, max(args.length_cap,
                                              bundle.R + 1))
    dense_bigons, _ = enumerate_bigons(ball, dense_cap, args.count_cap)
    family = []
    for band in checks.lattice_band_family(
            ball, range(bundle.R, bundle.R + 3), (1,)):
        try:
            ends_ok = all(
                ball.exact_distance(s.vertices[0], s.vertices[-1])
                == band.length for s in (band.side0, band.side1))
        except (KeyError, TrustError):
            continue
        if ends_ok:
            family.append(band)
    reports.append(checks.dense_value_check(ball, family + dense_bigons,
                                            bundle))
    reports.append(checks.gap_vs_C_check(st, bundle))
    reports.append(checks.segment_lemma_suite(args.trials, args.seed))

    payload = {
        "theta_hat": _rat(theta_hat),
        "reports": [r.to_json_dict() for r in reports],
        "all_passed": all(r.passed for r in reports),
    }
    return payload, ball.certified and not truncated, truncated


# -- driver ----------------------------------------------------------------

_PARAM_NAMES = {
    "ball": ["preset", "presentation", "graph", "base", "radius",
             "core-radius"],
    "bigons": ["preset", "presentation", "graph", "base", "radius",
               "core-radius", "length-cap", "count-cap"],
    "stats": ["preset", "presentation", "graph", "base", "radius",
              "core-radius", "length-cap", "count-cap", "Y", "Z", "jobs"],
    "gaps": ["preset", "presentation", "graph", "base", "radius",
             "core-radius", "length-cap", "count-cap", "Y", "theta", "Z",
             "lambda", "nu", "jobs"],
    "constants": ["Y", "theta", "Z", "lambda", "nu"],
    "area": ["preset", "presentation", "word", "length-cap-area",
             "area-cap"],
    "ratio": ["preset", "presentation", "graph", "base", "radius",
              "core-radius", "length-cap", "count-cap", "length-cap-area",
              "area-cap", "jobs"],
    "delta": ["preset", "presentation", "graph", "base", "radius",
              "core-radius"],
    "lemma-check": ["preset", "presentation", "radius", "core-radius",
                    "length-cap", "count-cap", "Y", "theta", "Z", "lambda",
                    "nu", "trials", "seed", "jobs"],
}

_COMMANDS = {
    "ball": _cmd_ball,
    "bigons": _cmd_bigons,
    "stats": _cmd_stats,
    "gaps": _cmd_gaps,
    "constants": _cmd_constants,
    "area": _cmd_area,
    "ratio": _cmd_ratio,
    "delta": _cmd_delta,
    "lemma-check": _cmd_lemma_check,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bigonlab",
        description="Geodesic bigon statistics and hyperbolicity "
                    "criteria at desk scale.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def bundle_flags(sp, required=True):
        sp.add_argument("--Y", type=int, required=required,
                        default=None if required else 1)
        sp.add_argument("--theta", type=_parse_rational, required=required,
                        default=None if required else Fraction(1, 2))
        sp.add_argument("--Z", type=int, required=required,
                        default=None if required else 1)
        sp.add_argument("--lambda", type=_parse_rational, required=required,
                        default=None if required else Fraction(1, 2))
        sp.add_argument("--nu", type=_parse_rational, default=None)

    def jobs_out(sp):
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out", metavar="FILE", default=None,
                        help="also write the tabular section as CSV")

    sp = sub.add_parser("ball")
    _add_group_flags(sp)
    _add_ball_flags(sp)
    jobs_out(sp)

    sp = sub.add_parser("bigons")
    _add_group_flags(sp)
    _add_ball_flags(sp)
    sp.add_argument("--length-cap", type=int, required=True)
    sp.add_argument("--count-cap", type=int, default=None)
    jobs_out(sp)

    sp = sub.add_parser("stats")
    _add_group_flags(sp)
    _add_ball_flags(sp)
    sp.add_argument("--length-cap", type=int, required=True)
    sp.add_argument("--count-cap", type=int, default=None)
    sp.add_argument("--Y", type=int, default=1)
    sp.add_argument("--Z", type=int, default=None)
    jobs_out(sp)

    sp = sub.add_parser("gaps")
    _add_group_flags(sp)
    _add_ball_flags(sp)
    sp.add_argument("--length-cap", type=int, required=True)
    sp.add_argument("--count-cap", type=int, default=None)
    bundle_flags(sp)
    jobs_out(sp)

    sp = sub.add_parser("constants")
    bundle_flags(sp)
    jobs_out(sp)

    sp = sub.add_parser("area")
    _add_group_flags(sp, graph_ok=False)
    sp.add_argument("--word", required=True)
    sp.add_argument("--length-cap-area", type=int, required=True)
    sp.add_argument("--area-cap", type=int, required=True)
    jobs_out(sp)

    sp = sub.add_parser("ratio")
    _add_group_flags(sp)
    _add_ball_flags(sp)
    sp.add_argument("--length-cap", type=int, required=True)
    sp.add_argument("--count-cap", type=int, default=None)
    sp.add_argument("--length-cap-area", type=int, required=True)
    sp.add_argument("--area-cap", type=int, required=True)
    jobs_out(sp)

    sp = sub.add_parser("delta")
    _add_group_flags(sp)
    _add_ball_flags(sp)
    jobs_out(sp)

    sp = sub.add_parser("lemma-check")
    _add_group_flags(sp, graph_ok=False)
    _add_ball_flags(sp)
    sp.add_argument("--length-cap", type=int, default=6)
    sp.add_argument("--count-cap", type=int, default=None)
    bundle_flags(sp, required=False)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    jobs_out(sp)

    return ap


def emit_csv(payload: dict, path: str) -> None:
    table = _csv_table(payload)
    if table is None:
        raise RefusalError("payload has no tabular section for --out")
    header, rows = table
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    t0 = time.monotonic()
    try:
        payload, certified, truncated = _COMMANDS[args.command](args)
        if args.out:
            emit_csv(payload, args.out)
    except (UsageError, PresentationError, ParameterError,
            FileNotFoundError, argparse.ArgumentTypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (TrustError, StrategyError, RefusalError, CapExceeded,
            AreaError) as e:
        print(f"refused: {e}", file=sys.stderr)
        return 1
    report = {
        "command": args.command,
        "parameters": _params(args, _PARAM_NAMES[args.command]),
        "certified": bool(certified),
        "truncated": bool(truncated),
        "results": payload,
        "timing": round(time.monotonic() - t0, 3),
    }
    json.dump(report, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    summary = {k: v for k, v in payload.items()
               if isinstance(v, (int, str, bool)) and k != "witness"}
    print(f"{args.command}: certified={certified} truncated={truncated} "
          + " ".join(f"{k}={v}" for k, v in list(summary.items())[:8]),
          file=sys.stderr)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
