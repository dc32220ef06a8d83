"""Command line front end.

    koenigtype ideal FILE --action koenig|gb|dim|hilbert D [--order lex|degrevlex] [--priority 2,1,...]
    koenigtype graph FILE --action edge-report|canonical|binomial-report|canonical-binomial
    koenigtype poset FILE --action lattice|koenig|canonical
    koenigtype poset --action segre N M

Reports are JSON with sorted keys. Exit codes: 0 success, 2 parse error,
3 budget exceeded, 4 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import binomial_edge as be
from . import graphs, hibi
from .algebra import MonomialOrder, ParseError, parse_ideal
from .groebner import BudgetExceeded, budget_scale, buchberger, hilbert_function, initial_ideal, is_zero_dimensional, quotient_dimension
from .koenig import PreconditionError, search_koenig

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_PRECONDITION = 0, 2, 3, 4


def _read(path: str | None) -> str:
    if path is None:
        raise ParseError("an input file is required for this action")
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _order(args, n: int) -> MonomialOrder | None:
    if args.order is None:
        if args.priority:
            raise ParseError("--priority needs --order")
        return None
    priority = None
    if args.priority:
        try:
            priority = [int(p) - 1 for p in args.priority.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad priority {args.priority!r}") from exc
        if sorted(priority) != list(range(n)):
            raise ParseError(f"priority must be a permutation of 1..{n}")
    return MonomialOrder.lex(n, priority) if args.order == "lex" else MonomialOrder.degrevlex(n, priority)


def _action(args, expected_extra: dict[str, int]) -> tuple[str, list[str]]:
    name, *extra = args.action
    if name not in expected_extra:
        raise ParseError(f"unknown action {name!r}; choose from {', '.join(expected_extra)}")
    if len(extra) != expected_extra[name]:
        raise ParseError(f"action {name!r} takes {expected_extra[name]} argument(s)")
    return name, extra


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise ParseError(f"expected an integer, got {text!r}") from exc


# -- ideal ---------------------------------------------------------------------------


def cmd_ideal(args) -> tuple[dict, dict]:
    action, extra = _action(args, {"koenig": 0, "gb": 0, "dim": 0, "hilbert": 1})
    ideal = parse_ideal(_read(args.file))
    names = ideal.var_names
    order = _order(args, ideal.n)
    echo = {"ideal": ideal.to_text(), "order": order.to_dict() if order else None}
    if action == "koenig":
        found = search_koenig(ideal, order)
        cert = found.certificate
        out: dict = {"koenig": cert is not None, "height": found.height}
        if cert is not None:
            out["certificate"] = cert.to_dict(names)
            gens = list(ideal.generators) + [c.as_binomial(ideal.n) for c in cert.C]
            out["attached_quotient_zero_dimensional"] = is_zero_dimensional(ideal.with_generators(gens), cert.order)
        if found.rejected:
            out["unrealizable"] = [r.conflict_inequalities() for r in found.rejected]
        return echo, out
    order = order or MonomialOrder.degrevlex(ideal.n)
    if action == "gb":
        gb = buchberger(ideal, order)
        return echo, {
            "groebner_basis": [g.to_string(names) for g in gb.elements],
            "initial_ideal": [m.to_string(names) for m in initial_ideal(gb).monomials()],
        }
    if action == "dim":
        return echo, {"dimension": quotient_dimension(ideal, order)}
    D = _int(extra[0])
    return echo, {"hilbert_function": hilbert_function(ideal, order, D)}


# -- graph ---------------------------------------------------------------------------


def _edge_report(G: graphs.SimpleGraph) -> dict:
    m = graphs.matching_number(G)
    t = graphs.tau(G)
    out: dict = {"matching_number": m, "tau": t, "koenig": m == t}
    if m == t:
        rep = graphs.koenig_cm_report(G)
        out.update({k: v for k, v in rep.to_dict().items()})
    return out


def _binomial_report(G: graphs.SimpleGraph) -> dict:
    d = be.dim_quotient(G)
    sp = be.max_semipath(G)
    cert = be.koenig_JG(G, d)
    out: dict = {
        "dim": d,
        "unmixed": be.is_unmixed_JG(G),
        "max_semipath": sp.length,
        "semipath": sp.to_dict(),
        "koenig": cert is not None,
        "traceable": be.is_traceable(G) is not None,
    }
    if cert is not None:
        out["certificate"] = cert.to_dict(be.variable_names(G.n))
        out["sop"] = be.special_sop_JG(G).to_dict(G.n)
        out["cm"] = be.cm_verdict_JG(G).to_dict(be.variable_names(2 * G.n))
    return out


def cmd_graph(args) -> tuple[dict, dict]:
    action, _ = _action(args, {"edge-report": 0, "canonical": 0, "binomial-report": 0, "canonical-binomial": 0})
    G = graphs.parse_graph(_read(args.file))
    echo = {"graph": G.to_dict()}
    if action == "edge-report":
        return echo, _edge_report(G)
    if action == "canonical":
        return echo, graphs.canonical_module_edge(G).to_dict()
    if action == "binomial-report":
        return echo, _binomial_report(G)
    return echo, be.canonical_components_JG(G).to_dict()


# -- poset ---------------------------------------------------------------------------


def _lattice_report(L: hibi.DistributiveLattice) -> dict:
    H = hibi.hibi_ideal(L)
    return {
        "size": L.size,
        "rank": L.rank,
        "labeling": L.labeling(),
        "join_irreducibles": L.join_irreducibles(),
        "thin": hibi.is_thin(L.as_poset()).thin,
        "hibi_generators": [g.to_string(H.ideal.var_names) for g in H.ideal.generators],
        "height": hibi.hibi_height(L),
    }


def _koenig_report(L: hibi.DistributiveLattice) -> dict:
    rep = hibi.koenig_hibi(L)
    bound = hibi.koenig_bound(L)
    out = {
        "revlex": rep.koenig_revlex,
        "thin": rep.thin,
        "bipartite_incom": rep.bipartite_incom,
        "height": rep.height,
        "revlex_certificate": rep.certificate.to_dict() if rep.certificate else None,
        "bound_holds": bound.holds,
        "join_irreducibles": list(bound.join_irreducibles),
        "labeling": L.labeling(),
    }
    if L.base.m == 3 and not L.base.covers:
        cert = hibi.koenig_b3_lex(L)
        out["lex_certificate"] = cert.to_dict() if cert else None
    return out


def cmd_poset(args) -> tuple[dict, dict]:
    action, extra = _action(args, {"lattice": 0, "koenig": 0, "canonical": 0, "segre": 2})
    if action == "segre":
        n, m = (_int(e) for e in extra)
        L = hibi.segre_lattice(n, m)
        rep = hibi.koenig_hibi(L)
        return {"segre": [n, m]}, {"size": L.size, "thin": rep.thin, "koenig": rep.koenig_revlex}
    P = hibi.parse_poset(_read(args.file))
    L = hibi.poset_ideals(P)
    echo = {"poset": P.to_dict()}
    if action == "lattice":
        return echo, _lattice_report(L)
    if action == "koenig":
        return echo, _koenig_report(L)
    out = hibi.canonical_module_hibi(L).to_dict()
    out["labeling"] = L.labeling()
    return echo, out


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="koenigtype", description="König-type analyses of binomial ideals, graphs and posets.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timings", action="store_true", help="include elapsed time (output is then not byte-stable)")
    sub = p.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("ideal", help="ideal given as comma separated binomials")
    pi.add_argument("file", help="input file, or - for stdin")
    pi.add_argument("--order", choices=("lex", "degrevlex"))
    pi.add_argument("--priority", help="comma separated 1-based variable ranking, largest first")
    pi.add_argument("--action", nargs="+", required=True, metavar="ACTION", help="koenig | gb | dim | hilbert D")
    pi.set_defaults(func=cmd_ideal)

    pg = sub.add_parser("graph", help="graph as JSON or 'n' followed by edge lines")
    pg.add_argument("file", help="input file, or - for stdin")
    pg.add_argument("--action", nargs="+", required=True, metavar="ACTION")
    pg.set_defaults(func=cmd_graph)

    pp = sub.add_parser("poset", help='poset as JSON {"elements": m, "covers": [[b, a], ...]}')
    pp.add_argument("file", nargs="?", help="input file, or - for stdin (omit for segre)")
    pp.add_argument("--action", nargs="+", required=True, metavar="ACTION", help="lattice | koenig | canonical | segre N M")
    pp.set_defaults(func=cmd_poset)
    return p


def render_text(report: dict) -> str:
    lines: list[str] = []

    def walk(prefix: str, value) -> None:
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}.{k}" if prefix else k, value[k])
        else:
            lines.append(f"{prefix}: {json.dumps(value, sort_keys=True)}")

    walk("", report)
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        echo, results = args.func(args)
    except (ParseError, graphs.GraphFormatError, hibi.PosetFormatError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    report: dict = {"command": args.command, "action": args.action[0], "input": echo, "results": results}
    report["budget"] = {"scale": budget_scale()}
    if args.timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args.format == "text":
        print(render_text(report))
    else:
        print(json.dumps(report, sort_keys=True, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
