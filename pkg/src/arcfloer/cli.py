"""Command line front end.

    arcfloer <command> [--m N | --m-range A..B] [--format text|json|dot]
                       [--out PATH] INPUT

Commands: ``resolve`` (dual graph, optionally m-separating), ``contact``
(contact locus census), ``floer`` (fixed families and HF dimensions),
``verify`` (arc-Floer comparison; exits 1 on mismatch), ``report``
(CSV summary over the m range plus figures).

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .census import census_to_json
from .correspondence import PipelineResult, run_pipeline
from .curves import CurveError, parse_curve_file
from .floer import families_to_json
from .report import write_report
from .resolution import build_minimal_graph, m_separating_refinement, to_dot

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

RANGE_GUARD = 10**6


class UsageError(Exception):
    pass


def _parse_m_args(args) -> list[int]:
    if args.m is not None and args.m_range is not None:
        raise UsageError("--m and --m-range are mutually exclusive")
    if args.m is not None:
        if args.m < 1:
            raise UsageError("--m must be a positive integer")
        return [args.m]
    if args.m_range is not None:
        try:
            lo_text, hi_text = args.m_range.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        except ValueError as exc:
            raise UsageError(f"bad --m-range {args.m_range!r}: use A..B") from exc
        if lo < 1 or hi < lo:
            raise UsageError("--m-range bounds must satisfy 1 <= A <= B")
        if hi - lo + 1 > RANGE_GUARD:
            raise UsageError("--m-range spans more than 10^6 values")
        return list(range(lo, hi + 1))
    return []


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_range(curve, ms: list[int]) -> list[PipelineResult]:
    if len(ms) == 1:
        return [run_pipeline(curve, ms[0])]
    with ThreadPoolExecutor(max_workers=min(8, len(ms))) as pool:
        return list(pool.map(lambda m: run_pipeline(curve, m), ms))


def _json_doc(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _cmd_resolve(curve, ms, fmt, out):
    graphs = []
    if not ms:
        graphs.append(build_minimal_graph(curve))
    else:
        minimal = build_minimal_graph(curve)
        graphs = [m_separating_refinement(minimal, m) for m in ms]
    if fmt == "dot":
        _emit("".join(to_dot(g, g.m) for g in graphs), out)
    elif fmt == "json":
        payload = [g.to_json_dict() for g in graphs]
        _emit(_json_doc(payload[0] if len(payload) == 1 else payload), out)
    else:
        lines = []
        for g in graphs:
            lines.append(f"curve {curve.name}: {g.separation} resolution")
            for i in sorted(g.nodes):
                n = g.nodes[i]
                if n.kind == "strict":
                    lines.append(f"  node {i}: strict transform of branch {n.branch + 1}")
                else:
                    pair = n.pairs[-1]
                    lines.append(
                        f"  node {i}: N={n.N} nu={n.nu} pair=({pair[0]},{pair[1]})"
                    )
            lines.append(
                "  edges: " + " ".join(f"{i}-{j}" for i, j in g.sorted_edges())
            )
        _emit("\n".join(lines) + "\n", out)
    return EXIT_OK


def _cmd_contact(curve, ms, fmt, out):
    results = _run_range(curve, ms)
    if fmt == "json":
        payload = [
            {
                "curve": curve.name,
                "m": res.m,
                "census": census_to_json(res.census),
                "hc": res.hc.to_json_dict(),
                "chi_c": res.report.chi_c,
            }
            for res in results
        ]
        _emit(_json_doc(payload[0] if len(payload) == 1 else payload), out)
    else:
        lines = []
        for res in results:
            if not res.census:
                lines.append(f"X_{res.m} is empty")
                continue
            lines.append(f"X_{res.m}: {len(res.census)} component kinds")
            for cell in res.census:
                lines.append(f"  {cell}")
            lines.append(f"  H_c dims: {dict(res.hc.items())}")
        _emit("\n".join(lines) + "\n", out)
    return EXIT_OK


def _cmd_floer(curve, ms, fmt, out):
    results = _run_range(curve, ms)
    if fmt == "json":
        payload = [
            {
                "curve": curve.name,
                "m": res.m,
                "families": families_to_json(res.families),
                "hf": res.hf.to_json_dict(),
                "lefschetz": res.report.lefschetz,
            }
            for res in results
        ]
        _emit(_json_doc(payload[0] if len(payload) == 1 else payload), out)
    else:
        lines = []
        for res in results:
            lines.append(
                f"HF(phi^{res.m}): dims {dict(res.hf.items())}, "
                f"Lefschetz {res.report.lefschetz}"
            )
            for fam in res.families:
                lines.append(f"  {fam}")
        _emit("\n".join(lines) + "\n", out)
    return EXIT_OK


def _cmd_verify(curve, ms, fmt, out):
    results = _run_range(curve, ms)
    ok = all(r.report.match and r.report.euler_match for r in results)
    if fmt == "json":
        payload = [res.report.to_json_dict() for res in results]
        _emit(_json_doc(payload[0] if len(payload) == 1 else payload), out)
    else:
        lines = []
        for res in results:
            rep = res.report
            lines.append(
                f"{rep.curve} m={rep.m}: match={rep.match} "
                f"shift={rep.shift} hc={dict(rep.hc.items())} "
                f"hf={dict(rep.hf.items())} chi_c={rep.chi_c} "
                f"lefschetz={rep.lefschetz}"
            )
        _emit("\n".join(lines) + "\n", out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_report(curve, ms, fmt, out):
    results = _run_range(curve, ms)
    out_csv = out or f"{curve.name}_report.csv"
    written = write_report(results, out_csv)
    sys.stderr.write("wrote " + " ".join(written) + "\n")
    ok = all(r.report.match and r.report.euler_match for r in results)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcfloer",
        description="contact loci and monodromy Floer census of plane curve "
        "singularities",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("resolve", "dual graph of the (m-separating) resolution"),
        ("contact", "contact locus census and H_c dimensions"),
        ("floer", "fixed families and HF dimensions"),
        ("verify", "compare both sides under the shift 2m+1"),
        ("report", "CSV summary over an m range, with figures"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--m-range", default=None, metavar="A..B")
        p.add_argument(
            "--format", choices=["text", "json", "dot"], default="text"
        )
        p.add_argument("--out", default=None)
        p.add_argument("input")
    return parser


_COMMANDS = {
    "resolve": _cmd_resolve,
    "contact": _cmd_contact,
    "floer": _cmd_floer,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ms = _parse_m_args(args)
        if args.format == "dot" and args.command != "resolve":
            raise UsageError("--format dot is only valid for resolve")
        if args.command in ("contact", "floer", "verify", "report") and not ms:
            raise UsageError(f"{args.command} requires --m or --m-range")
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"error: {exc}\n")
    try:
        curve = parse_curve_file(args.input)
    except OSError as exc:
        sys.stderr.write(f"error: cannot read {args.input}: {exc}\n")
        return EXIT_INPUT
    except CurveError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return _COMMANDS[args.command](curve, ms, args.format, args.out)


if __name__ == "__main__":
    sys.exit(main())
