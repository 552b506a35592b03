"""Command-line interface: ``hgx <subcommand> ...``.

Exit codes: 0 on success, 1 on domain errors (bad parameters, unreadable or
malformed files, a forbidden copy found by ``check-free``, a failed
verification), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from hgx import __version__
from hgx import constructions as C
from hgx import formulas as Fm
from hgx import invariants as I
from hgx.errors import BadParams, HgxError
from hgx.hypercore import Hypergraph, format_hg, is_subhypergraph, read_hg, write_hg
from hgx.solver import THEOREMS, SearchOptions, check_certificate, default_threads, max_edges, verify_theorem


def _jsonable(x):
    if isinstance(x, Fraction):
        return Fm.format_exact(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, Hypergraph):
        return {"r": x.r, "n": x.n, "edges": [list(e) for e in x.edges]}
    return x


def _dump(obj, path) -> None:
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise BadParams(f"cannot write {path}: {exc.strerror}") from None


def _write(H: Hypergraph, path, comment: str) -> None:
    try:
        write_hg(H, path, comment)
    except OSError as exc:
        raise BadParams(f"cannot write {path}: {exc.strerror}") from None


def _kv(text: str | None) -> dict:
    """``"k=4,x=1"`` -> ``{"k": 4, "x": 1}``."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise BadParams(f"--params entry {item!r} is not key=value")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise BadParams(f"--params value for {key!r} must be an integer, got {val!r}") from None
    return out


def _int_range(text: str) -> list[int]:
    """``"8:10"`` (inclusive), ``"8,9,10"`` or ``"8"``."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, N:M or N,M,..., got {text!r}") from None


# -- invariant ----------------------------------------------------------------


def _inv_matching(H):
    M = I.maximum_matching(H)
    return len(M), [list(e) for e in M]


def _inv_chi(H):
    c = I.chromatic_coloring(H)
    return c.k, list(c.colors)


def _inv_p(H):
    red = I.minimum_red_set(H)
    return len(red), list(red)


def _inv_q(H):
    prof = I.q_profile(H)
    return prof.q, list(prof.crosscut)


def _inv_links(H):
    prof = I.crosscut_link_chromatics(H)
    return list(prof.link_chromatics), list(prof.crosscut)


def _inv_m(H):
    val, W = I.m_value(H)
    return val, list(W)


def _inv_mprime(H):
    val, (U, Z) = I.m_prime_value(H)
    return val, {"U": list(U), "Z": [list(e) for e in Z]}


def _inv_universal(H):
    v = I.universal_vertex(H)
    return v, None


def _inv_family(H):
    members, dropped = I.derived_family_report(H)
    return len(members), {"members": members, "dropped_edgeless": dropped}


INVARIANTS = {
    "matching": _inv_matching,
    "chi": _inv_chi,
    "p": _inv_p,
    "q": _inv_q,
    "links": _inv_links,
    "m": _inv_m,
    "mprime": _inv_mprime,
    "universal": _inv_universal,
    "family": _inv_family,
}


def cmd_invariant(args) -> int:
    H = read_hg(args.input)
    value, witness = INVARIANTS[args.name](H)
    shown = "inf" if value == math.inf else value
    print(f"{args.name} = {shown}")
    if args.json:
        _dump({"name": args.name, "value": value, "witness": witness}, args.json)
    return 0


# -- expand / construct / check-free -------------------------------------------


def cmd_expand(args) -> int:
    G = read_hg(args.input)
    H = I.expansion(G, args.r)
    _write(H, args.output, f"expansion of {args.input} to r={args.r}")
    print(f"wrote {args.output}: r={H.r} n={H.n} m={H.m}")
    return 0


def cmd_construct(args) -> int:
    params = _kv(args.params)
    for key in ("n", "r", "s", "a", "m", "k", "ell", "i"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    core = read_hg(args.core) if args.core else None
    parts = tuple(_int_range(args.parts)) if args.parts else ()
    spec = C.ConstructionSpec(args.name, params, core, parts)
    if args.count_only:
        print(spec.edge_count())
        return 0
    H = spec.build()
    if args.output:
        shown = ", ".join(f"{k}={v}" for k, v in sorted(params.items()))
        _write(H, args.output, f"{spec.name} {shown}")
        print(f"wrote {args.output}: r={H.r} n={H.n} m={H.m}")
    else:
        sys.stdout.write(format_hg(H))
    return 0


def cmd_check_free(args) -> int:
    H = read_hg(args.input)
    for path in args.forbid:
        F = read_hg(path)
        emb = is_subhypergraph(F, H)
        if emb is not None:
            print(f"contains {path}: map {list(emb.map)}")
            return 1
    print("free")
    return 0


# -- solve ----------------------------------------------------------------------


def _search_options(args, s=None) -> SearchOptions:
    return SearchOptions(
        forbid_matching=s,
        node_budget=args.nodes,
        time_budget=args.time,
        symmetry=not args.no_symmetry,
        parallel=args.threads or default_threads(),
    )


def cmd_solve(args) -> int:
    family = [read_hg(p) for p in args.forbid]
    opts = _search_options(args, args.forbid_matching)
    res = max_edges(args.n, args.r, family, opts)
    res.labels = list(args.forbid)
    ok, reasons = check_certificate(res)
    if not ok:  # pragma: no cover - would mean a solver bug
        raise BadParams(f"witness failed re-checking: {', '.join(reasons)}")
    status = "" if res.optimal else f" (lower bound; upper bound {res.upper_bound})"
    print(f"optimum = {res.optimum}{status}")
    print(f"proof_status = {res.proof_status}, nodes = {res.nodes}")
    if args.output:
        _write(res.witness, args.output, f"witness: n={args.n} r={args.r} optimum={res.optimum}")
    if args.json:
        _dump(res.to_json(), args.json)
    return 0


# -- formula ----------------------------------------------------------------------


def cmd_formula(args) -> int:
    fv = Fm.evaluate(args.theorem_id, _kv(args.params))
    print(f"{fv.theorem_id} = {fv.text()}  [{fv.lower_or_exact}]")
    if args.json:
        _dump({"theorem_id": fv.theorem_id, "params": fv.params, "value": fv.value, "lower_or_exact": fv.lower_or_exact}, args.json)
    return 0


# -- verify ------------------------------------------------------------------------


def cmd_verify(args, argv) -> int:
    sweep: dict = {"n": args.n, "s": args.s}
    if args.r is not None:
        sweep["r"] = args.r
    if args.F:
        sweep["F"] = read_hg(args.F)
    if args.G:
        sweep["G"] = read_hg(args.G)
    report = verify_theorem(args.theorem_id, sweep, _search_options(args))
    print(f"{'params':<28} {'formula':>8} {'lower':>6} {'upper':>6} {'constr':>7} {'solver':>7}  verdict")
    for p in report.points:
        shown = " ".join(f"{k}={v}" for k, v in p.params.items())
        cells = ["-" if v is None else str(v) for v in (p.formula, p.lower, p.upper)]
        flag = "" if p.holds or not p.asserted else "  FAILED"
        status = "" if p.proof_status == "optimal" else f" ({p.proof_status})"
        print(f"{shown:<28} {cells[0]:>8} {cells[1]:>6} {cells[2]:>6} {p.construction:>7} {p.solver:>7}  {p.verdict}{status}{flag}")
    counts: dict[str, int] = {}
    for v in report.verdicts():
        counts[v] = counts.get(v, 0) + 1
    print("totals: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    if args.json:
        records = []
        for p in report.points:
            rec = p.to_json()
            # wall-clock time would make reports differ between identical runs
            rec.pop("elapsed_ms")
            records.append(rec)
        _dump(
            {
                "tool": "hgx",
                "version": __version__,
                "command": ["hgx", *argv],
                "theorem_id": report.theorem_id,
                "sweep": report.sweep,
                "derived": report.derived,
                "records": records,
                "totals": {"points": len(records), "verdicts": counts, "ok": report.ok},
            },
            args.json,
        )
    return 0 if report.ok else 1


# -- parser ----------------------------------------------------------------------------


def _budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nodes", type=int, help="node budget")
    p.add_argument("--time", type=float, help="time budget in seconds")
    p.add_argument("--threads", type=int, help="worker processes (default: $HGX_THREADS or 1)")
    p.add_argument("--no-symmetry", action="store_true", help="disable symmetry pruning")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hgx", description="Hypergraph Turan toolkit")
    ap.add_argument("--version", action="version", version=f"hgx {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", help="compute an invariant of a .hg file")
    p.add_argument("name", choices=sorted(INVARIANTS))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--json")

    p = sub.add_parser("expand", help="r-expansion of a graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("construct", help="build a named construction")
    p.add_argument("name")
    for key in ("n", "r", "s", "a", "m", "k", "ell", "i"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--params", help="extra integer parameters, e.g. k=4,x=1")
    p.add_argument("--core", help=".hg core for core_cover")
    p.add_argument("--parts", help="part sizes for the multipartite construction, e.g. 2,2,2")
    p.add_argument("-o", "--output")
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("check-free", help="exit 0 if the host avoids every pattern, 1 otherwise")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--forbid", action="append", required=True)

    p = sub.add_parser("solve", help="exact Turan number by branch and bound")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--forbid", action="append", default=[])
    p.add_argument("--forbid-matching", type=int)
    _budget_flags(p)
    p.add_argument("-o", "--output", help="write the witness as .hg")
    p.add_argument("--json")

    p = sub.add_parser("formula", help="evaluate a closed-form bound")
    p.add_argument("theorem_id", choices=sorted(Fm.FORMULAS))
    p.add_argument("--params", required=True)
    p.add_argument("--json")

    p = sub.add_parser("verify", help="sweep a theorem against the solver")
    p.add_argument("theorem_id", choices=THEOREMS)
    p.add_argument("--n", type=_int_range, required=True)
    p.add_argument("--s", type=_int_range, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--F", help=".hg forbidden pattern (chi3, two_chromatic_bounds)")
    p.add_argument("--G", help=".hg graph (expansion theorems)")
    _budget_flags(p)
    p.add_argument("--json")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "invariant":
            return cmd_invariant(args)
        if args.command == "expand":
            return cmd_expand(args)
        if args.command == "construct":
            return cmd_construct(args)
        if args.command == "check-free":
            return cmd_check_free(args)
        if args.command == "solve":
            if not args.forbid and args.forbid_matching is None:
                ap.error("solve needs --forbid or --forbid-matching")
            return cmd_solve(args)
        if args.command == "formula":
            return cmd_formula(args)
        return cmd_verify(args, argv)
    except HgxError as exc:
        print(f"hgx: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
