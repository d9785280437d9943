"""Command-line front end: reproducible, scriptable reports.

Exit codes: 0 success, 1 verification mismatch, 2 spec parse error,
3 size cap exceeded, 4 internal invariant violation.
Identical queries produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional

from . import __version__
from .asymptotics import divergence, parse_family
from .bounds import best_bounds
from .caps import DEFAULT_CAPS, Caps
from .configspace import alpha_all, burnside_orbit_count, enumerate_orbits
from .errors import (CapExceeded, IcarankError, InternalInvariantError,
                     RankSearchTimeout, SpecParseError)
from .isomorphism import describe_group
from .lattice import conjugacy_classes, subgroups
from .parsing import parse_group_spec
from .rankoracle import ActionTable, rank_info
from .structure import BigCount, ca_order, ica_order, ica_structure
from .verification import run_suite

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _tsv(rows: list[list], header: list[str]) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    out = []
    for ri, row in enumerate(cells):
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if ri == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def _render(fmt: str, rows: list[list], header: list[str], payload: dict) -> str:
    if fmt == "json":
        return _json_dump(payload)
    if fmt == "tsv":
        return _tsv(rows, header)
    return _table(rows, header)


def _bigcount_json(b: BigCount) -> dict:
    return {
        "exact": str(b.exact) if b.exact is not None else None,
        "log2": b.log2,
        "log2_error_bound": b.log2_error_bound,
        "factored": {
            "powers": [[base, exp] for base, exp in b.powers],
            "factorials": list(b.factorials),
        },
    }


def _safe_name(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_")


def _caps_from_args(args) -> Caps:
    threads = args.threads
    if threads is None:
        env = os.environ.get("ICARANK_THREADS")
        threads = int(env) if env else None
    return DEFAULT_CAPS.with_overrides(
        max_states=args.max_states,
        max_group_order=args.max_group_order,
        max_lattice_order=args.max_lattice_order,
        oracle_order_cap=args.oracle_cap,
        oracle_timeout=args.rank_timeout,
        threads=threads,
    )


# -- commands -----------------------------------------------------------------


def _cmd_subgroups(args, caps: Caps) -> int:
    G = parse_group_spec(args.group, caps)
    subs = subgroups(G, caps)
    rows = [[s.order, G.order // s.order,
             ",".join(str(m) for m in s.members),
             ",".join(G.label(m) for m in s.members)] for s in subs]
    payload = {
        "group": G.name,
        "count": len(subs),
        "subgroups": [
            {"order": s.order, "index": G.order // s.order,
             "members": list(s.members),
             "labels": [G.label(m) for m in s.members]}
            for s in subs
        ],
    }
    sys.stdout.write(_render(args.format, rows,
                             ["order", "index", "members", "labels"], payload))
    return EXIT_OK


def _cmd_classes(args, caps: Caps) -> int:
    G = parse_group_spec(args.group, caps)
    table = conjugacy_classes(G, caps)
    rows = []
    recs = []
    for ci, c in enumerate(table.classes):
        qname = describe_group(c.quotient) if c.quotient is not None else None
        rows.append([ci, c.representative.order, c.index, len(c.members),
                     "yes" if c.is_normal else "no", c.normalizer.order,
                     qname or "-"])
        recs.append({
            "class": ci,
            "subgroup_order": c.representative.order,
            "index": c.index,
            "class_size": len(c.members),
            "is_normal": c.is_normal,
            "normalizer_order": c.normalizer.order,
            "quotient_name": qname,
            "representative": [G.label(m) for m in c.representative.members],
        })
    payload = {
        "group": G.name,
        "r": table.r,
        "r_by_index": {str(k): v for k, v in sorted(table.r_by_index.items())},
        "classes": recs,
    }
    sys.stdout.write(_render(
        args.format, rows,
        ["class", "order", "index", "size", "normal", "normalizer", "quotient"],
        payload))
    return EXIT_OK


def _cmd_alpha(args, caps: Caps) -> int:
    G = parse_group_spec(args.group, caps)
    table = conjugacy_classes(G, caps)
    alphas = alpha_all(G, args.q, caps)
    checked = False
    if args.enumerate or args.orbits_out:
        od = enumerate_orbits(G, args.q, caps)
        if od.alpha != alphas:
            raise InternalInvariantError(
                f"enumerated alphas {od.alpha} disagree with {alphas}")
        checked = True
        if args.orbits_out:
            with open(args.orbits_out, "w", encoding="utf-8") as fh:
                for rec in od.jsonl_records():
                    fh.write(_json_dump(rec))
    rows = [[ci, table.classes[ci].representative.order,
             table.classes[ci].index, alphas[ci]] for ci in range(table.r)]
    payload = {
        "group": G.name,
        "q": args.q,
        "orbit_total": burnside_orbit_count(G, args.q),
        "enumeration_checked": checked,
        "classes": [
            {"class": ci,
             "subgroup_order": table.classes[ci].representative.order,
             "index": table.classes[ci].index,
             "is_normal": table.classes[ci].is_normal,
             "alpha": alphas[ci]}
            for ci in range(table.r)
        ],
    }
    sys.stdout.write(_render(args.format, rows,
                             ["class", "order", "index", "alpha"], payload))
    if args.figures:
        from .plots import save_alpha_figure
        labels = [f"[{table.classes[ci].representative.order}:{ci}]"
                  for ci in range(table.r)]
        path = os.path.join(
            args.figures, f"alpha_{_safe_name(G.name)}_q{args.q}.png")
        save_alpha_figure(G.name, args.q, labels,
                          [alphas[ci] for ci in range(table.r)], path)
    return EXIT_OK


def _cmd_structure(args, caps: Caps) -> int:
    G = parse_group_spec(args.group, caps)
    st = ica_structure(G, args.q, caps)
    rows = [[f.class_id, f.quotient_name, f.quotient_order, f.alpha]
            for f in st.factors]
    rows.append(["order", "", "", str(st.order)])
    payload = {
        "group": G.name,
        "q": args.q,
        "factors": [
            {"class": f.class_id, "quotient_name": f.quotient_name,
             "quotient_order": f.quotient_order, "alpha": f.alpha}
            for f in st.factors
        ],
        "order": _bigcount_json(st.order),
    }
    sys.stdout.write(_render(args.format, rows,
                             ["class", "quotient", "quotient_order", "alpha"],
                             payload))
    return EXIT_OK


def _cmd_order(args, caps: Caps) -> int:
    G = parse_group_spec(args.group, caps)
    unit = ica_order(G, args.q, caps)
    rows = [["units", str(unit), f"{unit.log2:.6f}"]]
    payload = {"group": G.name, "q": args.q, "units": _bigcount_json(unit)}
    if args.ca:
        monoid = ca_order(G, args.q, caps)
        rows.append(["monoid", str(monoid), f"{monoid.log2:.6f}"])
        payload["monoid"] = _bigcount_json(monoid)
    sys.stdout.write(_render(args.format, rows, ["kind", "order", "log2"], payload))
    return EXIT_OK


def _cmd_bounds(args, caps: Caps) -> int:
    G = parse_group_spec(args.group, caps)
    bb = best_bounds(G, args.q, caps, compute_exact=args.exact)
    rows = [[b.side, b.value, b.method] for b in bb.all_bounds]
    rows.append(["best-lower", bb.lower, bb.lower_method])
    rows.append(["best-upper", bb.upper, bb.upper_method])
    if bb.exact is not None:
        rows.append(["exact", bb.exact, "oracle"])
    payload = {
        "group": bb.group,
        "q": bb.q,
        "lower": {"value": bb.lower, "method": bb.lower_method},
        "upper": {"value": bb.upper, "method": bb.upper_method},
        "exact": bb.exact,
        "all_bounds": [
            {"side": b.side, "value": b.value, "method": b.method}
            for b in bb.all_bounds
        ],
    }
    sys.stdout.write(_render(args.format, rows, ["side", "value", "method"], payload))
    if args.figures:
        from .plots import save_bounds_figure
        path = os.path.join(args.figures,
                            f"bounds_{_safe_name(G.name)}_q{args.q}.png")
        save_bounds_figure(bb, path)
    return EXIT_OK


def _cmd_rank(args, caps: Caps) -> int:
    G = parse_group_spec(args.group, caps)
    try:
        info = rank_info(ActionTable.from_group(G), caps)
    except RankSearchTimeout as exc:
        sys.stdout.write(
            f"timeout: rank in [{exc.lower}, {exc.upper}]\n")
        return EXIT_OK
    rows = [[G.name, info.exact]]
    payload = {"group": G.name, "rank": info.exact}
    header = ["group", "rank"]
    if args.witness:
        witness = [G.label(g) for g in info.witness]
        rows[0].append(",".join(witness))
        payload["witness"] = witness
        header.append("witness")
    sys.stdout.write(_render(args.format, rows, header, payload))
    return EXIT_OK


def _cmd_diverge(args, caps: Caps) -> int:
    family = parse_family(args.family)
    rep = divergence(family, args.q, args.k_max, caps)
    rows = [[st.k, st.quotient_spec, st.r, st.r_2, st.lower_bound, st.justification]
            for st in rep.stages]
    payload = {
        "family": family.spec_string(),
        "q": args.q,
        "stages": [
            {"k": st.k, "quotient": st.quotient_spec, "r": st.r, "r_2": st.r_2,
             "lower_bound": st.lower_bound, "justification": st.justification,
             "quotient_chain": list(st.quotient_chain)}
            for st in rep.stages
        ],
    }
    sys.stdout.write(_render(
        args.format, rows,
        ["k", "quotient", "r", "r_2", "lower_bound", "justification"], payload))
    if args.figures:
        from .plots import save_divergence_figure
        path = os.path.join(
            args.figures,
            f"divergence_{_safe_name(family.spec_string())}_q{args.q}.png")
        save_divergence_figure(rep, path)
    return EXIT_OK


def _cmd_verify(args, caps: Caps) -> int:
    results = run_suite(args.suite, caps)
    passed = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "suite": args.suite,
            "passed": passed,
            "results": [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        }
        sys.stdout.write(_json_dump(payload))
    else:
        for r in results:
            sys.stdout.write(r.line() + "\n")
        n_fail = sum(1 for r in results if not r.passed)
        sys.stdout.write(
            f"{'OK' if passed else 'MISMATCH'}: {len(results) - n_fail}/{len(results)} "
            f"checks passed\n")
    return EXIT_OK if passed else EXIT_MISMATCH


def _add_common_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # attached to the root with real defaults and to every subcommand with
    # SUPPRESS, so flags are accepted on either side of the command word
    d = argparse.SUPPRESS if suppress else None

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", choices=("table", "json", "tsv"),
                        default=default("table"),
                        help="output format (default: table)")
    parser.add_argument("--figures", metavar="DIR", default=default(None),
                        help="also render matplotlib figures into DIR")
    parser.add_argument("--max-states", type=int, default=d,
                        help="state-space cap for orbit enumeration (default 2^24)")
    parser.add_argument("--max-group-order", type=int, default=d,
                        help="construction cap on group order (default 4096)")
    parser.add_argument("--max-lattice-order", type=int, default=d,
                        help="subgroup-lattice cap on group order (default 256)")
    parser.add_argument("--oracle-cap", type=int, default=d,
                        help="largest order fed to the exact rank search (default 5000)")
    parser.add_argument("--rank-timeout", type=float, default=d,
                        help="seconds per exact rank query (default 60)")
    parser.add_argument("--threads", type=int, default=d,
                        help="worker threads for enumeration "
                             "(default: ICARANK_THREADS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icarank",
        description=("Structure, exact orders and rank bounds for groups of "
                     "invertible cellular automata over finite groups. "
                     "Dihedral groups are named by order: D8 has 8 elements."),
    )
    parser.add_argument("--version", action="version", version=f"icarank {__version__}")
    _add_common_options(parser, suppress=False)

    common = argparse.ArgumentParser(add_help=False)
    _add_common_options(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subgroups", parents=[common], help="list all subgroups")
    p.add_argument("group")
    p.set_defaults(func=_cmd_subgroups)

    p = sub.add_parser("classes", parents=[common], help="conjugacy classes of subgroups")
    p.add_argument("group")
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("alpha", parents=[common], help="orbit counts per stabilizer class")
    p.add_argument("group")
    p.add_argument("--q", type=int, required=True, help="alphabet size >= 2")
    p.add_argument("--enumerate", action="store_true",
                   help="cross-check against full orbit enumeration")
    p.add_argument("--orbits-out", metavar="FILE",
                   help="dump the orbit decomposition as JSON lines")
    p.set_defaults(func=_cmd_alpha)

    p = sub.add_parser("structure", parents=[common], help="wreath factor list of the unit group")
    p.add_argument("group")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("order", parents=[common], help="exact order of the unit group")
    p.add_argument("group")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ca", action="store_true",
                   help="also report the order of the full CA monoid")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("bounds", parents=[common], help="best rank bounds for the unit group")
    p.add_argument("group")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--exact", action="store_true",
                   help="pin the exact rank by brute force when feasible")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("rank", parents=[common], help="exact rank of the group itself")
    p.add_argument("group")
    p.add_argument("--witness", action="store_true",
                   help="include a minimal generating set")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("diverge", parents=[common], help="lower-bound sequence for an infinite family")
    p.add_argument("family", help="Z | Z^s[xC<t>...] | Dinf | F<rank>")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k-max", type=int, default=6)
    p.set_defaults(func=_cmd_diverge)

    p = sub.add_parser("verify", parents=[common], help="run the oracle-equivalence matrix")
    p.add_argument("suite", choices=("fast", "heavy"))
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    caps = _caps_from_args(args)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
    try:
        return args.func(args, caps)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except IcarankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
