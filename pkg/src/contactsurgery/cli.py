"""Command line interface.

Exit codes: 0 success, 1 domain or validation error (a structured diagnostic
naming the error variant is printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .cfk import format_cfk, genus, hfk_ranks, is_fibered_like, parse_cfk, staircase, vertical_ranks
from .contact import delta_star, slope_verdict
from .errors import ContactSurgeryError, NonCoprime, ParseError
from .farey import Slope, slam_dunk, surgery_path
from .heegaard import alexander_difference, cable_arithmetic, parse_domain, point_measure, winding_distinct
from .surgery import (
    canonical_m,
    core_hfk_table,
    gate,
    hf_hat_surgery,
    lspace_certificate,
    spinc_range,
    spinc_window,
)

REPORT_VERSION = "1"


def canonical(obj: Any) -> Any:
    """Convert results into JSON-ready values with string keys and rationals as ``"p/q"``."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Slope):
        return str(obj)
    return obj


def dumps(report: dict) -> str:
    return json.dumps(canonical(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _render_text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _flat_list(v: Any) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return " ".join(str(x) for x in v) if v else "(none)"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    return str(v)


def render_text(report: dict) -> str:
    report = canonical(report)
    head = [f"{report['command']}"]
    body = _render_text(report.get("results") or {}, 1)
    if "error" in report:
        err = report["error"]
        body = [f"  error: {err['error']}", f"  message: {err['message']}"] + _render_text(err["details"], 2)
    warn = [f"  warning: {w}" for w in report.get("warnings", [])]
    return "\n".join(head + body + warn) + "\n"


# --- argument types -----------------------------------------------------------


def _slope_arg(text: str) -> tuple[int, int]:
    parts = text.split("/")
    try:
        if len(parts) == 1:
            return int(parts[0]), 1
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected P/Q, got {text!r}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(0, f"cannot read {path}: {exc.__class__.__name__}") from None


def _slope(pq: tuple[int, int]) -> Slope:
    p, q = pq
    if math.gcd(p, q) != 1:
        raise NonCoprime(f"{p}/{q} is not reduced", p=p, q=q)
    return Slope.reduced(p, q)


def _load_cfk(path: str):
    return parse_cfk(_read(path))


def _window_warning(n: int) -> list[str]:
    if len(spinc_range(n)) != n:
        return [
            f"displayed Spin^c range {spinc_range(n)[0]}..{spinc_range(n)[-1]} has {n - 1} labels for n={n}; "
            f"using the length-n window {spinc_window(n)[0]}..{spinc_window(n)[-1]}"
        ]
    return []


def _gate_line(g: int, n: int) -> str:
    return f"n >= 2g check: g={g}, n={n}, ok"


# --- commands -----------------------------------------------------------------


def cmd_cfk_validate(args) -> tuple[dict, list[str]]:
    c = _load_cfk(args.file)
    return {
        "valid": True,
        "generators": len(c.generators),
        "arrows": len(c.arrows),
        "maslov": c.has_maslov,
    }, []


def cmd_cfk_hfk(args):
    c = _load_cfk(args.file)
    ranks = hfk_ranks(c)
    return {
        "hfk": [{"alexander": s, "rank": r} for s, r in ranks.items()],
        "total": sum(ranks.values()),
        "vertical_homology": [{"alexander": s, "rank": r} for s, r in vertical_ranks(c).items()],
    }, []


def cmd_cfk_genus(args):
    c = _load_cfk(args.file)
    return {"genus": genus(c), "fibered_like": is_fibered_like(c)}, []


def cmd_cfk_staircase(args):
    c = staircase(args.k, args.hand)
    text = format_cfk(c)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return {"written": args.out, "genus": args.k}, []
    return {"cfk": text, "genus": args.k}, []


def cmd_surgery_hf(args):
    c = _load_cfk(args.file)
    g = gate(c, args.n)
    ranks = hf_hat_surgery(c, args.n, args.m, oracle=args.oracle)
    results = {
        "gate": _gate_line(g, args.n),
        "m": canonical_m(args.m, args.n),
        "ranks_by_level": [{"level": lvl, "rank": r} for lvl, r in ranks.items()],
        "total": sum(ranks.values()),
    }
    if args.oracle:
        results["oracle"] = "truncation route agrees"
    return results, _window_warning(args.n)


def cmd_surgery_core_table(args):
    c = _load_cfk(args.file)
    table = core_hfk_table(c, args.n, oracle=args.oracle, workers=args.threads)
    results = {
        "gate": _gate_line(table.genus, args.n),
        "baseline": "rel_a_s(m=0) = 0",
        "rows": [
            {"m": r.m, "rank_s": r.rank_s, "rank_q": r.rank_q, "rel_a_s": r.rel_a_s, "rel_a_q": r.rel_a_q}
            for r in table.rows
        ],
        "total": table.total,
    }
    if args.oracle:
        results["oracle"] = "truncation route agrees"
    return results, _window_warning(args.n)


def cmd_surgery_lspace(args):
    c = _load_cfk(args.file)
    cert = lspace_certificate(c, args.n, oracle=args.oracle, workers=args.threads)
    results = {
        "gate": _gate_line(genus(c), args.n),
        "certificate": cert.holds,
        "rank_equality": cert.rank_equality,
        "lspace": cert.lspace,
        "hfk_total": cert.hfk_total,
        "hf_total": cert.hf_total,
        "hf_ranks": [{"m": m, "rank": r} for m, r in cert.hf_ranks.items()],
    }
    return results, _window_warning(args.n)


def cmd_contact_delta(args):
    c = _load_cfk(args.file)
    ds = delta_star(c)
    return {
        "genus": ds.genus,
        "domain_rank": ds.map.domain.rank,
        "map_rank": ds.map.rank,
        "kernel_rank": ds.kernel_rank,
        "contact_invariant_nonzero": ds.kernel_rank > 0,
        "witness": ds.witness(),
    }, []


def cmd_contact_verdict(args):
    c = _load_cfk(args.file)
    p, q = args.slope
    v = slope_verdict(c, p, q)
    return {"status": v.status, "certificate": v.certificate}, []


def cmd_farey_path(args):
    path = surgery_path(getattr(args, "from"), _slope(args.to))
    return {
        "back_slopes": list(path.back_slopes),
        "surgeries": list(path.surgeries),
        "bracket_updates": path.bracket_updates,
    }, ["path minimality is not verified"]


def cmd_farey_slamdunk(args):
    r = slam_dunk(_slope(args.slope), args.n)
    return {"meridian_slope": r, "negative": r.p < 0}, []


def cmd_heegaard_grading(args):
    d = parse_domain(_read(args.domain_file))
    diff = alexander_difference(d, args.x, args.y)
    warnings = [] if diff.denominator == 1 else ["Alexander difference is not an integer"]
    return {
        "alexander_difference": diff,
        "integral": diff.denominator == 1,
        "point_measure_x": point_measure(d, args.x),
        "point_measure_y": point_measure(d, args.y),
    }, warnings


def cmd_heegaard_winding(args):
    chk = winding_distinct(args.a, args.q)
    return {"distinct": chk.distinct, "witness": list(chk.witness) if chk.witness else None}, []


def cmd_heegaard_cable(args):
    order, copies = cable_arithmetic(args.p, args.P)
    return {"order": order, "copies": copies}, []


# --- parser -------------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # leaf copies must not overwrite values given before the subcommand
    off, one = (argparse.SUPPRESS, argparse.SUPPRESS) if suppress else (False, 1)
    parser.add_argument("--json", action="store_true", default=off, help="canonical JSON output (sorted keys)")
    parser.add_argument("--oracle", action="store_true", default=off, help="enable cross-check recomputations")
    parser.add_argument("--threads", type=_positive, default=one, help="worker threads for per-Spin^c work")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contactsurgery", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    cfk = groups.add_parser("cfk", help="knot Floer complexes").add_subparsers(dest="cmd", required=True)
    leaf(cfk, "validate", cmd_cfk_validate, "parse and validate a cfk v1 file").add_argument("file")
    leaf(cfk, "hfk", cmd_cfk_hfk, "knot Floer homology ranks").add_argument("file")
    leaf(cfk, "genus", cmd_cfk_genus, "genus and fiberedness test").add_argument("file")
    p = leaf(cfk, "staircase", cmd_cfk_staircase, "emit a torus-knot staircase")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--hand", choices=["right", "left"], required=True)
    p.add_argument("--out")

    surg = groups.add_parser("surgery", help="large surgeries").add_subparsers(dest="cmd", required=True)
    p = leaf(surg, "hf", cmd_surgery_hf, "HF-hat of n-surgery in Spin^c slot m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("file")
    for name, func, help in (
        ("core-table", cmd_surgery_core_table, "knot Floer homology of the surgery core"),
        ("lspace", cmd_surgery_lspace, "rank-equality L-space certificate"),
    ):
        p = leaf(surg, name, func, help)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("file")

    con = groups.add_parser("contact", help="contact invariants").add_subparsers(dest="cmd", required=True)
    leaf(con, "delta", cmd_contact_delta, "connecting map from the top knot Floer group").add_argument("file")
    p = leaf(con, "verdict", cmd_contact_verdict, "verdict for p/q surgery")
    p.add_argument("--slope", type=_slope_arg, required=True)
    p.add_argument("file")

    far = groups.add_parser("farey", help="slope arithmetic").add_subparsers(dest="cmd", required=True)
    p = leaf(far, "path", cmd_farey_path, "Legendrian surgery plan from n to p/q")
    p.add_argument("--from", type=int, required=True)
    p.add_argument("--to", type=_slope_arg, required=True)
    p = leaf(far, "slamdunk", cmd_farey_slamdunk, "meridian coefficient q/(qn-p)")
    p.add_argument("--slope", type=_slope_arg, required=True)
    p.add_argument("--n", type=int, required=True)

    hee = groups.add_parser("heegaard", help="periodic-domain arithmetic").add_subparsers(dest="cmd", required=True)
    p = leaf(hee, "grading", cmd_heegaard_grading, "Alexander grading difference from a domain model")
    p.add_argument("domain_file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = leaf(hee, "winding", cmd_heegaard_winding, "winding-region distinctness")
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p = leaf(hee, "cable", cmd_heegaard_cable, "cable order and copy count")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--P", type=_positive, required=True)
    return parser


def _inputs(args: argparse.Namespace) -> dict:
    skip = {"func", "group", "cmd", "json", "oracle", "threads"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k] = f"{v[0]}/{v[1]}" if isinstance(v, tuple) else v
    out["oracle"] = args.oracle
    return out


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    command = f"{args.group} {args.cmd}"
    report: dict[str, Any] = {
        "command": command,
        "inputs": _inputs(args),
        "version": REPORT_VERSION,
    }
    try:
        results, warnings = args.func(args)
        code = 0
    except ContactSurgeryError as exc:
        results, warnings = None, []
        report["error"] = exc.to_dict()
        code = 1
    report["results"] = results
    report["warnings"] = warnings
    if args.json:
        stdout.write(dumps(report))
    elif code == 0 and args.cmd == "staircase" and not args.out:
        stdout.write(results["cfk"])
    else:
        stdout.write(render_text(report))
    if code:
        print(f"error: {report['error']['error']}: {report['error']['message']}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
