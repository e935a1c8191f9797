"""Command-line interface: induce, orbits, chartab, e1, reproduce, data."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np


def _parse_parabolic(tab, spec: str) -> list[int]:
    s = spec.strip().lower()
    if s in ("none", "empty"):
        return []
    long_nodes, short_nodes = tab.rootsystem.long_short_nodes()
    if s in ("long-a1", "a1-long"):
        return [long_nodes[0] + 1]
    if s in ("short-a1", "a1-short", "a1~"):
        if not short_nodes:
            raise SystemExit("type has no short roots")
        return [short_nodes[0] + 1]
    named = {"e6": [1, 2, 3, 4, 5, 6], "e7": [1, 2, 3, 4, 5, 6, 7],
             "d5xa1": [1, 2, 3, 4, 5, 7]}
    if s in named:
        return named[s]
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise SystemExit(f"cannot parse parabolic spec {spec!r}")


def _type_name(type_name: str, rank: int) -> str:
    t = type_name.upper()
    if len(t) == 1 and t in "ABCD":
        if rank < 1:
            raise SystemExit("single-letter types need --rank")
        return f"{t}{rank}"
    return t


def _get_table(type_name: str, rank: int):
    from .weyl import weyl_table, load_shipped_table
    t = _type_name(type_name, rank)
    if t in ("E7", "E8"):
        return load_shipped_table(t.lower())
    return weyl_table(t)


def cmd_induce(args) -> int:
    from .weyl import parabolic_induction_multiplicities
    tab = _get_table(args.type, args.rank)
    nodes = _parse_parabolic(tab, args.parabolic)
    mults = parabolic_induction_multiplicities(tab, nodes, args.character)
    bv = tab.b_invariants()
    rows = [{"label": str(tab.labels[i]), "degree": tab.table.degrees[i],
             "b": bv[i], "multiplicity": mults[i]}
            for i in range(len(mults)) if mults[i]]
    payload = {"schema_version": 1, "type": tab.datum.name,
               "parabolic_nodes": nodes, "character": args.character,
               "source": tab.source, "decomposition": rows}
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"# Ind from nodes {nodes} of W({tab.datum.name}), "
              f"{args.character} character")
        print("| label | degree | b | mult |")
        print("|---|---|---|---|")
        for r in rows:
            print(f"| {r['label']} | {r['degree']} | {r['b']} | "
                  f"{r['multiplicity']} |")
    return 0


def cmd_orbits(args) -> int:
    from .mod2 import weyl_orbits_mod2
    from .cartan import cartan_datum
    rep = weyl_orbits_mod2(cartan_datum(_type_name(args.type, args.rank)),
                           args.iota)
    payload = rep.to_jsonable()
    payload["schema_version"] = 1
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"# mod-2 orbits for {rep.type_name} "
              f"(automorphism: {args.iota or 'none'})")
        print("| size | representative | stable element |")
        print("|---|---|---|")
        for o in rep.orbits:
            print(f"| {o.size} | {list(o.representative)} | "
                  f"{o.has_stable_element} |")
    return 0


def cmd_chartab(args) -> int:
    from .presets import group_from_spec
    from .chartab import character_table
    G = group_from_spec(args.group_spec, size_cap=args.size_cap)
    tab = character_table(G)
    sys.stdout.write(tab.to_text())
    return 0


def cmd_e1(args) -> int:
    from .presets import group_from_spec, automorphism_from_spec
    from .chartab import character_table, real_odd_irreducibles
    from .e1 import build_instance, verify_e1
    with open(args.instance_file, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    G = group_from_spec(spec["group"], size_cap=args.size_cap)
    tab = character_table(G)
    sel = spec.get("character", {})
    degree = sel.get("degree")
    nth = sel.get("index", 0)
    candidates = [i for i in real_odd_irreducibles(tab)
                  if degree is None or tab.degrees[i] == degree]
    candidates = [i for i in candidates
                  if not all(v == v.one() for v in tab.rows[i])]
    if not candidates or nth >= len(candidates):
        raise SystemExit(f"no real odd nontrivial character matches {sel}")
    chi_index = candidates[nth]
    nu = automorphism_from_spec(G, spec.get("automorphism", "identity"))
    inst = build_instance(G, chi_index, nu)
    report = verify_e1(inst, search_budget=spec.get("budget", 10_000))
    payload = report.to_jsonable()
    payload["schema_version"] = 1
    payload["group"] = spec["group"]
    payload["character_degree"] = tab.degrees[chi_index]
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if report.verdict == "VerifiedE1" else 3


def cmd_reproduce(args) -> int:
    from .report import build_bundle
    bundle = build_bundle(args.tier, live_e7=args.live_e7)
    if args.format == "json":
        print(bundle.to_json())
    else:
        print(bundle.to_markdown())
    return 0 if bundle.ok else 1


def cmd_data(args) -> int:
    from .weyl import load_weyl_table_text
    if args.action != "validate":
        raise SystemExit("only 'data validate <file>' is supported")
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    tab = load_weyl_table_text(text, args.type)
    fps, depth = tab.fingerprint_map()
    print(json.dumps({
        "schema_version": 1,
        "type": tab.datum.name,
        "order": tab.table.order,
        "classes": tab.table.n_classes,
        "degree_sum_sq": sum(d * d for d in tab.table.degrees),
        "column_orthogonality": "ok",
        "labels": "ok",
        "b_invariants": "ok",
        "fingerprint_depth": depth,
    }, indent=2, sort_keys=True))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="eigenone",
        description="exact character-table and eigenvalue-one toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("induce", help="decompose a parabolic induction")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", type=int, default=0)
    p.add_argument("--parabolic", required=True,
                   help="comma node list, 'none', 'long-A1', 'short-A1', "
                        "'E6', 'E7', 'D5xA1'")
    p.add_argument("--character", choices=("trivial", "sign"), default="trivial")
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.set_defaults(fn=cmd_induce)

    p = sub.add_parser("orbits", help="mod-2 character lattice orbits")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", type=int, default=0)
    p.add_argument("--iota", default=None,
                   help="'graph', 'triality' or omit for none")
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.set_defaults(fn=cmd_orbits)

    p = sub.add_parser("chartab", help="print the exact character table")
    p.add_argument("group_spec")
    p.add_argument("--size-cap", type=int, default=10_000_000)
    p.set_defaults(fn=cmd_chartab)

    p = sub.add_parser("e1", help="run the eigenvalue-one verifier")
    p.add_argument("instance_file")
    p.add_argument("--size-cap", type=int, default=10_000_000)
    p.set_defaults(fn=cmd_e1)

    p = sub.add_parser("reproduce", help="recompute and diff the pinned values")
    p.add_argument("--tier", choices=("fast", "full", "data"), default="fast")
    p.add_argument("--format", choices=("json", "md"), default="md")
    p.add_argument("--live-e7", action="store_true",
                   help="recompute the E7 table instead of loading the data file")
    p.set_defaults(fn=cmd_reproduce)

    p = sub.add_parser("data", help="validate shipped table data")
    p.add_argument("action", choices=("validate",))
    p.add_argument("file")
    p.add_argument("--type", required=True, help="expected type, e.g. E7")
    p.set_defaults(fn=cmd_data)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
