"""Command-line front end: read .vpd files, dispatch, print text or JSON.

Exit codes: 0 success, 2 parse/usage error, 3 invariant-suite failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .colorings import filtered_ranks
from .homology import (
    bigraded_homology,
    build_vertex_complex,
    chain_condition_holds,
    graded_euler,
)
from .oracles import (
    TAIT_EDGE_CAP,
    AbstractGraph,
    bridges,
    classify_matching,
    count_tait_colorings,
    perfect_matchings,
)
from .poly import ncolor_vertex_polynomial, vertex_polynomial
from .states import DEFAULT_STATE_CAP, StateSpaceError
from .vpd import VPDError, genus_and_orientability, parse_vpd, trace_boundary

# feasibility gates for the `check` suite
CHECK_HOMOLOGY_MAX_V = 8
CHECK_FILTERED_MAX_V = 12


def _parse_n_list(text: str) -> list[int]:
    try:
        ns = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --n value {text!r}")
    if not ns or any(n < 2 for n in ns):
        raise argparse.ArgumentTypeError("--n takes integers >= 2 (comma-separated)")
    return ns


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="vhx",
        description="Invariants of trivalent ribbon graphs in VPD notation.",
    )
    ap.add_argument("--version", action="version", version=f"vhx {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_, needs_n=False, **extra):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="path to a .vpd file")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_STATE_CAP,
            help="maximum hypercube dimension (default %(default)s)",
        )
        if needs_n:
            p.add_argument(
                "--n",
                type=_parse_n_list,
                default=[2],
                help="number of colors; accepts a comma list (default 2)",
            )
        return p

    add("faces", "boundary circles, Euler characteristic, genus")
    add("ncolor-poly", "n-color vertex polynomial in q", needs_n=True)
    add("vertex-poly", "vertex polynomial, symbolic in n")
    add("homology", "bigraded homology rank table", needs_n=True)
    add("filtered", "filtered homology ranks, Euler characteristic, TM", needs_n=True)
    tm = add("tm-poly", "total matching polynomial", needs_n=True)
    tm.add_argument(
        "--two-var",
        action="store_true",
        help="print the rank table over all requested n (rows n, columns t-degree)",
    )
    add("matchings", "perfect matchings with even/odd classification")
    add("tait", "number of proper 3-edge-colorings")
    chk = add("check", "run the invariant suite", needs_n=True)
    chk.add_argument(
        "--verify-paths",
        action="store_true",
        help="also verify independence of the six elementary-map orders",
    )
    chk.add_argument(
        "--no-memo",
        action="store_true",
        help="disable the coloring-count memo (verification mode)",
    )
    return ap


def _load(path: str):
    with open(path) as fh:
        return parse_vpd(fh.read())


def _threads() -> int:
    # accepted for interface stability; computation is deterministic either way
    try:
        return max(1, int(os.environ.get("VHX_THREADS", "1")))
    except ValueError:
        return 1


def cmd_faces(rs, args) -> int:
    dec = trace_boundary(rs)
    orientable, g = genus_and_orientability(rs)
    euler = rs.vertex_count - rs.edge_count + dec.circle_count
    if args.json:
        print(
            json.dumps(
                {
                    "vertices": rs.vertex_count,
                    "edges": rs.edge_count,
                    "circles": dec.circle_count,
                    "euler": euler,
                    "orientable": orientable,
                    ("genus" if orientable else "crosscaps"): g,
                }
            )
        )
    else:
        kind = f"genus {g}" if orientable else f"nonorientable, {g} crosscaps"
        print(
            f"vertices {rs.vertex_count}  edges {rs.edge_count}  "
            f"boundary circles {dec.circle_count}  euler {euler}  {kind}"
        )
    return 0


def cmd_ncolor_poly(rs, args) -> int:
    for n in args.n:
        poly = ncolor_vertex_polynomial(rs, n, cap=args.cap)
        if args.json:
            print(json.dumps({"n": n} | json.loads(poly.to_json())))
        else:
            prefix = f"n={n}: " if len(args.n) > 1 else ""
            print(prefix + poly.to_text())
    return 0


def cmd_vertex_poly(rs, args) -> int:
    poly = vertex_polynomial(rs, cap=args.cap)
    print(poly.to_json() if args.json else poly.to_text())
    return 0


def cmd_homology(rs, args) -> int:
    for n in args.n:
        table = bigraded_homology(build_vertex_complex(rs, n, cap=args.cap))
        if args.json:
            print(table.to_json())
        else:
            if len(args.n) > 1:
                print(f"n={n}:")
            print(table.to_text())
    return 0


def cmd_filtered(rs, args) -> int:
    for n in args.n:
        fr = filtered_ranks(rs, n, cap=args.cap)
        if args.json:
            print(fr.to_json())
        else:
            ranks = " ".join(str(r) for r in fr.ranks)
            print(f"n={n}  ranks {ranks}  euler {fr.euler}  tm {fr.total}")
    return 0


def cmd_tm_poly(rs, args) -> int:
    results = [(n, filtered_ranks(rs, n, cap=args.cap)) for n in args.n]
    if args.two_var:
        if args.json:
            print(
                json.dumps(
                    {"rows": [{"n": n, "ranks": fr.ranks} for n, fr in results]}
                )
            )
        else:
            width = max(
                (len(str(r)) for _, fr in results for r in fr.ranks), default=1
            )
            degs = len(results[0][1].ranks)
            print("n\\t |" + "".join(f"{i:>{width + 1}}" for i in range(degs)))
            for n, fr in results:
                print(f"{n:>3} |" + "".join(f"{r:>{width + 1}}" for r in fr.ranks))
    else:
        for n, fr in results:
            poly = fr.tm_poly()
            if args.json:
                print(json.dumps({"n": n} | json.loads(poly.to_json())))
            else:
                prefix = f"n={n}: " if len(args.n) > 1 else ""
                print(prefix + poly.to_text())
    return 0


def cmd_matchings(rs, args) -> int:
    g = AbstractGraph.from_rotation_system(rs)
    pms = perfect_matchings(g)
    if args.json:
        rows = []
        for m in pms:
            even, cycles = classify_matching(g, m)
            rows.append(
                {
                    "edges": sorted(e + 1 for e in m),
                    "even": even,
                    "cycles": cycles,
                }
            )
        print(json.dumps({"count": len(pms), "matchings": rows}))
    else:
        print(f"{len(pms)} perfect matching(s)")
        for m in pms:
            even, cycles = classify_matching(g, m)
            names = " ".join(f"e{e + 1}" for e in sorted(m))
            kind = "even" if even else "odd"
            print(f"  {names}  ({kind}, cycle lengths {cycles})")
    return 0


def cmd_tait(rs, args) -> int:
    g = AbstractGraph.from_rotation_system(rs)
    count = count_tait_colorings(g)
    print(json.dumps({"tait": count}) if args.json else str(count))
    return 0


def cmd_check(rs, args) -> int:
    results: list[tuple[str, str]] = []  # (name, "ok" | "FAIL" | "skipped")

    def record(name, ok):
        results.append((name, "ok" if ok else "FAIL"))

    def skip(name, why):
        results.append((name, f"skipped ({why})"))

    g = AbstractGraph.from_rotation_system(rs)
    orientable, genus = genus_and_orientability(rs)
    plane = orientable and genus == 0
    nv = rs.vertex_count
    vp = vertex_polynomial(rs, cap=args.cap)

    for n in args.n:
        fr = None
        if nv <= CHECK_FILTERED_MAX_V:
            fr = filtered_ranks(rs, n, cap=args.cap, use_memo=not args.no_memo)
            record(f"euler(filtered, n={n}) == V(Gamma, {n})", fr.euler == vp(n))
        else:
            skip(f"euler(filtered, n={n}) == V(Gamma, {n})", f"|V| = {nv}")

        if nv <= CHECK_HOMOLOGY_MAX_V:
            cx = build_vertex_complex(
                rs, n, cap=args.cap, verify_paths=args.verify_paths
            )
            record(f"delta o delta = 0 (n={n})", chain_condition_holds(cx))
            if args.verify_paths:
                record(f"path independence (n={n})", True)  # raises on failure
            euler = graded_euler(bigraded_homology(cx))
            record(
                f"graded Euler == n-color polynomial (n={n})",
                euler == ncolor_vertex_polynomial(rs, n, cap=args.cap),
            )
        else:
            skip(f"homology identities (n={n})", f"|V| = {nv}")

        if plane and n == 2 and fr is not None:
            pms = perfect_matchings(g)
            br = bridges(g)
            record("plane: rank0 == 2 * #PM (n=2)", fr.ranks[0] == 2 * len(pms))
            record(
                "plane: rank1 == 4 * #PM * #bridges (n=2)",
                fr.ranks[1] == 4 * len(pms) * len(br),
            )
            if len(g.edges) <= TAIT_EDGE_CAP:
                tait = count_tait_colorings(g)
                record(
                    "plane: euler(filtered, n=2) == 2^(|V|/2) * #Tait",
                    fr.euler == 2 ** (nv // 2) * tait,
                )
        if plane and n == 2 and fr is None and len(g.edges) <= TAIT_EDGE_CAP:
            # the Euler characteristic equals V(Gamma, 2), computable at scale
            tait = count_tait_colorings(g)
            record(
                "plane: V(Gamma, 2) == 2^(|V|/2) * #Tait",
                vp(2) == 2 ** (nv // 2) * tait,
            )

    width = max(len(name) for name, _ in results)
    failed = any(status == "FAIL" for _, status in results)
    if args.json:
        print(json.dumps({"results": [[n, s] for n, s in results], "ok": not failed}))
    else:
        for name, status in results:
            print(f"{name:<{width}}  {status}")
    return 3 if failed else 0


_DISPATCH = {
    "faces": cmd_faces,
    "ncolor-poly": cmd_ncolor_poly,
    "vertex-poly": cmd_vertex_poly,
    "homology": cmd_homology,
    "filtered": cmd_filtered,
    "tm-poly": cmd_tm_poly,
    "matchings": cmd_matchings,
    "tait": cmd_tait,
    "check": cmd_check,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    _threads()
    try:
        rs = _load(args.input)
    except (VPDError, OSError) as exc:
        print(f"vhx: {exc}", file=sys.stderr)
        return 2
    try:
        return _DISPATCH[args.command](rs, args)
    except (StateSpaceError, ValueError) as exc:
        print(f"vhx: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
