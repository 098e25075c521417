"""Command-line front end: classify, construct, verify, oracle, sperner.

Exit codes: 0 success, 1 principled refusal (orientation number 5, open
case, enumeration budget), 2 malformed input or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import build, digraph, oracle, sperner, tree
from .classify import classify as classify_spec
from .errors import ConstructionError, Refusal, UsageError

EXIT_OK = 0
EXIT_REFUSAL = 1
EXIT_BAD_INPUT = 2


def _print_json(doc):
    print(json.dumps(doc, indent=2, sort_keys=True))


# ============================================================================
# classify
# ============================================================================

def _classification_doc(cls):
    doc = {
        "verdict": cls.verdict,
        "orientation_number": cls.orientation_number,
        "rule": cls.rule,
        "threshold": cls.threshold_note,
    }
    if cls.k_witness is not None:
        doc["k_witness"] = cls.k_witness
    if cls.gap_detail is not None:
        doc["gap_detail"] = {
            "necessary_bound_holds": cls.gap_detail.necessary_bound_holds,
            "sufficient_bound_holds": cls.gap_detail.sufficient_bound_holds,
            "k_witness": cls.gap_detail.k_witness,
        }
    return doc


def cmd_classify(args):
    spec = tree.load_spec(args.spec)
    tree.require_valid(spec)
    cls = classify_spec(spec)
    if args.json:
        _print_json(_classification_doc(cls))
    else:
        number = ("open case" if cls.orientation_number is None
                  else f"orientation number {cls.orientation_number}")
        print(f"{cls.verdict} ({number}), rule {cls.rule}")
        print(f"threshold: {cls.threshold_note}")
    return EXIT_OK


# ============================================================================
# construct
# ============================================================================

def cmd_construct(args):
    spec = tree.load_spec(args.spec)
    tree.require_valid(spec)
    result = build.construct_optimal(spec)
    d = result.orientation
    report = {
        "verdict": result.classification.verdict,
        "rule": result.classification.rule,
        "case": result.case,
        "diameter": digraph.diameter(d),
        "strong": digraph.is_strong(d),
    }
    if args.json:
        doc = dict(report)
        doc["arcs"] = [f"{t} -> {h}" for t, h in d.arcs()]
        if args.explain:
            doc["explain"] = _explain_doc(result)
        _print_json(doc)
        return EXIT_OK
    if args.format == "dot":
        sys.stdout.write(digraph.to_dot(d))
    else:
        sys.stdout.write(digraph.to_edge_list(d))
    if args.verify:
        print(f"# verified: diameter {report['diameter']}, "
              f"strong={report['strong']}")
    if args.explain:
        _print_explain(result)
    return EXIT_OK


def _fmt_set(f):
    return "{" + ",".join(str(x) for x in sorted(f)) + "}"


def _explain_doc(result):
    sched = result.schedule
    return {
        "case": result.case,
        "slot_to_user_branch": list(result.slot_to_user),
        "core_multiplicities": {
            "center": result.reduced.h_spec.center_multiplicity,
            "branches": [b.multiplicity
                         for b in result.reduced.h_spec.branches],
        },
        "block_sizes": {
            "two_copy": result.reduced.n_a2,
            "inlet_three_copy": result.reduced.n_bi,
            "outlet_three_copy": result.reduced.n_bo,
            "four_copy": result.reduced.n_a4,
            "leafless": result.reduced.n_e,
        },
        "k": result.reduced.k,
        "half_sets": [_fmt_set(f) for f in sched.lam],
        "up_sets": [_fmt_set(f) for f in sched.psi],
        "mu_sets": [_fmt_set(f) for f in sched.mu],
        "gamma_sets": [_fmt_set(f) for f in sched.gamma],
    }


def _print_explain(result):
    doc = _explain_doc(result)
    print(f"# case: {doc['case']}")
    print(f"# slot -> user branch: {doc['slot_to_user_branch']}")
    print(f"# core multiplicities: center "
          f"{doc['core_multiplicities']['center']}, branches "
          f"{doc['core_multiplicities']['branches']}")
    print(f"# blocks: {doc['block_sizes']}")
    if doc["k"] is not None:
        print(f"# split k: {doc['k']}")
    for key in ("half_sets", "up_sets", "mu_sets", "gamma_sets"):
        if doc[key]:
            print(f"# {key}: {' '.join(doc[key])}")


# ============================================================================
# verify
# ============================================================================

def cmd_verify(args):
    spec = tree.load_spec(args.spec)
    tree.require_valid(spec)
    with open(args.edges, "r", encoding="utf-8") as fh:
        text = fh.read()
    d = digraph.from_edge_list(spec, text)  # raises if edges do not match
    dia = digraph.diameter(d)
    strong = digraph.is_strong(d)
    doc = {"diameter": None if dia == digraph.UNREACHABLE else int(dia),
           "strong": strong, "edges_match": True}
    if args.json:
        _print_json(doc)
    else:
        dia_text = "unreachable pair" if doc["diameter"] is None \
            else f"diameter {doc['diameter']}"
        print(f"{dia_text}, {'strong' if strong else 'not strong'}, "
              f"edges match")
    return EXIT_OK


# ============================================================================
# oracle
# ============================================================================

def cmd_oracle(args):
    t0 = time.perf_counter()
    if args.bipartite:
        p, q = args.bipartite
        res = oracle.bipartite_orientation_number(
            p, q, max_edges=args.max_edges, symmetry=args.symmetry)
    else:
        if args.spec is None:
            raise UsageError("need a spec file or --bipartite P Q")
        spec = tree.load_spec(args.spec)
        tree.require_valid(spec)
        res = oracle.orientation_number(
            spec, max_edges=args.max_edges, symmetry=args.symmetry)
    elapsed = time.perf_counter() - t0
    if args.json:
        _print_json({
            "orientation_number": res.orientation_number,
            "orientations_examined": res.orientations_examined,
            "strong_count": res.strong_count,
            "witness_arcs": [f"{t} -> {h}" for t, h in res.witness_arcs],
            "seconds": round(elapsed, 3),
        })
    else:
        print(f"orientation number: {res.orientation_number}")
        print(f"examined {res.orientations_examined} assignments, "
              f"{res.strong_count} strong, {elapsed:.2f}s")
        print("witness:")
        for t, h in res.witness_arcs:
            print(f"  {t} -> {h}")
    return EXIT_OK


# ============================================================================
# sperner
# ============================================================================

def cmd_sperner(args):
    if args.tool == "kappa":
        value = sperner.kappa(args.n, args.r, args.m)
        if args.json:
            _print_json({"kappa": value,
                         "kappa_star": sperner.kappa_star(args.n, args.r,
                                                          args.m)})
        else:
            print(value)
    elif args.tool == "shadow":
        fam = sperner.first_m(args.n, args.k, args.m)
        sh = sperner.shadow(fam)
        cascade = sperner.shadow_size_kkt(args.n, args.k, args.m)
        if args.json:
            _print_json({"shadow_size": len(sh), "cascade_size": cascade,
                         "shadow": [sorted(s.members) for s in sh]})
        else:
            print(f"|shadow| = {len(sh)} (cascade formula: {cascade})")
            print(" ".join("".join(map(str, s.sorted_members())) for s in sh))
    elif args.tool == "squashed":
        level = sperner.squashed_level(args.n, args.k)
        if args.json:
            _print_json({"level": [sorted(s) for s in level]})
        else:
            print(" ".join("".join(str(x) for x in sorted(s))
                           for s in level))
    return EXIT_OK


# ============================================================================
# argument parsing
# ============================================================================

def _parser():
    ap = argparse.ArgumentParser(
        prog="orient4",
        description="Orientation numbers of diameter-4 tree "
                    "vertex-multiplications")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide orientation number 4 vs 5")
    p.add_argument("spec", help="tree spec JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="emit a diameter-4 orientation")
    p.add_argument("spec")
    p.add_argument("--format", choices=("edgelist", "dot"),
                   default="edgelist")
    p.add_argument("--verify", action="store_true",
                   help="re-check diameter and strongness, print a summary")
    p.add_argument("--explain", action="store_true",
                   help="print case id, schedules and the slot permutation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check an edge-list file against a spec")
    p.add_argument("spec")
    p.add_argument("edges", help="edge-list file, one 'tail -> head' per line")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive orientation search")
    p.add_argument("spec", nargs="?")
    p.add_argument("--max-edges", type=int, default=oracle.DEFAULT_MAX_EDGES)
    p.add_argument("--symmetry", action="store_true",
                   help="halve the search space via arc reversal")
    p.add_argument("--bipartite", nargs=2, type=int, metavar=("P", "Q"),
                   help="run on the complete bipartite graph K(P,Q) instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sperner", help="squashed-order toolkit")
    tools = p.add_subparsers(dest="tool", required=True)
    t = tools.add_parser("kappa", help="shadow deficiency of an initial segment")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--r", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--json", action="store_true")
    t = tools.add_parser("shadow", help="shadow of the first m k-subsets")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--json", action="store_true")
    t = tools.add_parser("squashed", help="print a level in squashed order")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sperner)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except (UsageError, ConstructionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
