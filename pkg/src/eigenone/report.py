"""Reproduction report: every pinned number recomputed and diffed.

Each section recomputes one family of values with exact arithmetic and
compares against the expected constants embedded here.  Every expected
value carries a provenance tag:

    published - pinned from published tables for these groups
    trivial   - forced by elementary counting
    derived   - frozen output of an independent oracle in this package

Sections are deterministic; a bundle is green iff every section matches
exactly.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np


@dataclass
class Section:
    name: str
    tag: str                      # provenance of the expected values
    expected: object
    computed: object = None
    match: bool = False
    runtime: float = 0.0

    def to_jsonable(self) -> dict:
        return {"name": self.name, "provenance": self.tag,
                "expected": self.expected, "computed": self.computed,
                "match": self.match, "runtime_s": round(self.runtime, 3)}


@dataclass
class ReportBundle:
    tier: str
    sections: list[Section] = field(default_factory=list)
    schema_version: int = 1

    @property
    def ok(self) -> bool:
        return all(s.match for s in self.sections)

    def to_jsonable(self) -> dict:
        return {"schema_version": self.schema_version, "tier": self.tier,
                "ok": self.ok,
                "sections": [s.to_jsonable() for s in self.sections]}

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        lines = [f"# reproduction report (tier: {self.tier})", ""]
        lines.append("| section | provenance | match | runtime |")
        lines.append("|---|---|---|---|")
        for s in self.sections:
            lines.append(f"| {s.name} | {s.tag} | "
                         f"{'ok' if s.match else 'FAIL'} | {s.runtime:.2f}s |")
        lines.append("")
        for s in self.sections:
            if not s.match:
                lines.append(f"## MISMATCH {s.name}")
                lines.append(f"expected: `{s.expected}`")
                lines.append(f"computed: `{s.computed}`")
        lines.append(f"\noverall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _run(section: Section, fn: Callable[[], object]) -> Section:
    t0 = time.time()
    try:
        section.computed = fn()
        section.match = section.computed == section.expected
    except Exception as exc:  # pragma: no cover - defensive
        section.computed = f"error: {exc!r}"
        section.match = False
    section.runtime = time.time() - t0
    return section


# ---------------------------------------------------------------------------
# individual sections


def section_g2() -> Section:
    from .weyl import weyl_table, parabolic_induction_multiplicities

    def compute():
        tab = weyl_table("G2")
        i = tab.label_index("phi''{1,3}")
        long_nodes, short_nodes = tab.rootsystem.long_short_nodes()
        return {
            "long_A1": parabolic_induction_multiplicities(tab, [long_nodes[0] + 1])[i],
            "short_A1": parabolic_induction_multiplicities(tab, [short_nodes[0] + 1])[i],
        }

    return _run(Section("G2 phi''{1,3} from A1 parabolics", "published",
                        {"long_A1": 1, "short_A1": 0}), compute)


def section_f4() -> Section:
    from .weyl import weyl_table, parabolic_induction_multiplicities

    def compute():
        tab = weyl_table("F4")
        i = tab.label_index("phi{9,2}")
        return {"B3": parabolic_induction_multiplicities(tab, [1, 2, 3])[i],
                "A1": parabolic_induction_multiplicities(tab, [1])[i]}

    return _run(Section("F4 phi{9,2} from B3 and A1", "published",
                        {"B3": 1, "A1": 6}), compute)


def section_e6() -> Section:
    from .weyl import weyl_table, parabolic_induction_multiplicities

    def compute():
        tab = weyl_table("E6")
        i = tab.label_index("phi{15,4}")
        return {"A5": parabolic_induction_multiplicities(tab, [1, 3, 4, 5, 6])[i],
                "A1": parabolic_induction_multiplicities(tab, [1])[i]}

    return _run(Section("E6 phi{15,4} from A5 and A1", "published",
                        {"A5": 1, "A1": 10}), compute)


def section_e7(live: bool = False) -> Section:
    from .weyl import (load_shipped_table, parabolic_induction_multiplicities,
                       weyl_table)

    def compute():
        tab = weyl_table("E7", verify=False) if live else load_shipped_table("e7")
        idx = [tab.label_index(l) for l in ("phi{7,1}", "phi{21,3}", "phi{27,2}")]
        out = {}
        for name, nodes in (("E6", [1, 2, 3, 4, 5, 6]),
                            ("D5xA1", [1, 2, 3, 4, 5, 7]),
                            ("A1", [1])):
            mults = parabolic_induction_multiplicities(tab, nodes)
            out[name] = [mults[i] for i in idx]
        return out

    label = "E7 (phi{7,1}, phi{21,3}, phi{27,2})" + (" [live]" if live else " [shipped]")
    return _run(Section(label, "published",
                        {"E6": [1, 1, 1], "D5xA1": [1, 1, 2], "A1": [6, 16, 21]}),
                compute)


def section_e8() -> Section:
    from .weyl import load_shipped_table, parabolic_induction_multiplicities

    def compute():
        tab = load_shipped_table("e8")
        i = tab.label_index("phi{35,2}")
        return {"E7": parabolic_induction_multiplicities(tab, list(range(1, 8)))[i],
                "A1": parabolic_induction_multiplicities(tab, [1])[i]}

    return _run(Section("E8 phi{35,2} from E7 and A1 [shipped]", "published",
                        {"E7": 1, "A1": 28}), compute)


def section_type_b() -> Section:
    from .symchar import (bipartition_degree, mult_trivial_from_transposition_B)

    def compute():
        out = {}
        for d in range(2, 9):
            l1, l2 = ((d - 1, 1), ()), ((d - 1,), (1,))
            out[d] = [bipartition_degree(l1), mult_trivial_from_transposition_B(l1),
                      bipartition_degree(l2), mult_trivial_from_transposition_B(l2)]
        return out

    return _run(Section("B_d: ((d-1,1),-) and ((d-1),(1)) rows, 2<=d<=8",
                        "published",
                        {d: [d - 1, d - 2, d, d - 1] for d in range(2, 9)}),
                compute)


def section_sign_induction() -> Section:
    from .symchar import mult_signsign_from_s2s2

    def compute():
        return {d: [mult_signsign_from_s2s2((d - 2, 2)),
                    mult_signsign_from_s2s2((d - 2, 1, 1))]
                for d in range(4, 11)}

    return _run(Section("S_d sign x sign induction, 4<=d<=10", "published",
                        {d: [1, 1] for d in range(4, 11)}), compute)


def section_d_series() -> Section:
    from .weyl import weyl_table, induction_decomposition

    def compute():
        out = {}
        for d in (5, 6):
            tab = weyl_table(f"D{d}")
            dec = induction_decomposition(tab, list(range(1, d)))
            out[f"D{d}"] = sorted((str(l), m) for l, m in dec)
        tab4 = weyl_table("D4")
        dec4 = induction_decomposition(tab4, [1, 2, 3])
        out["D4"] = sorted((str(l), m) for l, m in dec4)
        from .weyl import diagram_automorphism, diagram_character_permutation
        tri = diagram_automorphism(tab4.datum, "triality")
        act = diagram_character_permutation(tab4, tri)
        target = {tab4.label_index("{(1^2),(1^2)}+"),
                  tab4.label_index("{(1^2),(1^2)}-"),
                  tab4.label_index("{-,(2,1^2)}")}
        i0 = min(target)
        orbit = {i0, act[i0], act[act[i0]]}
        out["D4-triality-orbit"] = (orbit == target and act[i0] != i0)
        return out

    return _run(Section("D-series branchings and triality", "published", {
        "D5": sorted([("{-,(5)}", 1), ("{-,(4,1)}", 1), ("{(1),(4)}", 1)]),
        "D6": sorted([("{-,(6)}", 1), ("{-,(5,1)}", 1), ("{(1),(5)}", 1)]),
        "D4": sorted([("{-,(4)}", 1), ("{-,(3,1)}", 1), ("{(1),(3)}", 1)]),
        "D4-triality-orbit": True,
    }), compute)


def section_mod2() -> Section:
    from .mod2 import weyl_orbits_mod2

    def compute():
        e6 = weyl_orbits_mod2("E6", "graph")
        d4 = weyl_orbits_mod2("D4", "triality")
        big = [o for o in d4.orbits if o.size == 12][0]
        a1 = weyl_orbits_mod2("A1")
        return {
            "E6": [len(e6.orbits), all(o.has_stable_element for o in e6.orbits)],
            "D4": [d4.orbit_sizes(),
                   big.contains_highest_root_image, big.has_stable_element],
            "A1": len(a1.orbits),
        }

    return _run(Section("mod-2 lattice orbits (E6 graph, D4 triality)",
                        "published",
                        {"E6": [3, True], "D4": [[1, 1, 1, 1, 12], True, True],
                         "A1": 2}), compute)


def section_type_a_orbits() -> Section:
    from .mod2 import typeA_order2_char_orbits, typeA_stability_criterion

    def compute():
        ok_sufficient = True
        pinned = {}
        for d in range(2, 13):
            rep = typeA_order2_char_orbits(d)
            for o in rep.orbits:
                if typeA_stability_criterion(d, o.k) and not o.has_stable_representative:
                    ok_sufficient = False
                if d % 2 == 0 and o.k % 2 == 1 and o.k != d // 2 \
                        and o.has_stable_representative:
                    ok_sufficient = False
        rep4 = typeA_order2_char_orbits(4)
        pinned["d4_k1"] = rep4.orbits[1].has_stable_representative
        pinned["d4_k2"] = rep4.orbits[2].has_stable_representative
        pinned["d5_all"] = all(o.has_stable_representative
                               for o in typeA_order2_char_orbits(5).orbits)
        pinned["criterion_implies_stable"] = ok_sufficient
        return pinned

    return _run(Section("type A order-2 torus character orbit stability",
                        "published",
                        {"d4_k1": False, "d4_k2": True, "d5_all": True,
                         "criterion_implies_stable": True}), compute)


def section_psl3_steinberg(q: int = 3) -> Section:
    from .e1 import psl3_steinberg_restriction

    def compute():
        return psl3_steinberg_restriction(q)

    want = 3 if (q - 1) % 3 else 5
    return _run(Section(f"PSL3({q}) Steinberg restriction to the Levi",
                        "published", want), compute)


def section_e1_corpus() -> Section:
    from .e1 import build_instance, verify_e1, recheck_report
    from .chartab import character_table, real_odd_irreducibles
    from .presets import (group_from_spec, automorphism_from_spec,
                          psl2_frobenius)
    from .groups import GroupAutomorphism
    import itertools

    def compute():
        out = {}
        # alternating A5 with the transposition automorphism
        a5 = group_from_spec("a5")
        t = np.array([1, 0, 2, 3, 4], dtype=np.uint8)
        imgs = [a5.kind.mul(a5.kind.mul(t, g), t) for g in a5.generators]
        nu = GroupAutomorphism(a5, imgs, name="transposition")
        tab = character_table(a5)
        verdicts = []
        for idx in real_odd_irreducibles(tab):
            if tab.degrees[idx] == 1:
                continue
            inst = build_instance(a5, idx, nu)
            rep = verify_e1(inst)
            verdicts.append(rep.verdict == "VerifiedE1" and recheck_report(inst, rep))
        out["a5"] = all(verdicts) and len(verdicts) == 3
        # PSL2(7) with the order-2 diagonal outer automorphism
        g7 = group_from_spec("psl2:7")
        nu7 = automorphism_from_spec(g7, "diag:6,1")
        tab7 = character_table(g7)
        deg7 = [i for i in real_odd_irreducibles(tab7) if tab7.degrees[i] == 7]
        inst7 = build_instance(g7, deg7[0], nu7)
        rep7 = verify_e1(inst7)
        out["psl2_7"] = rep7.verdict == "VerifiedE1" and recheck_report(inst7, rep7)
        # PSL2(8) with the Frobenius (odd-order Case 2)
        g8, fr = psl2_frobenius(8)
        tab8 = character_table(g8)
        got = []
        for idx in real_odd_irreducibles(tab8):
            if tab8.degrees[idx] != 7:
                continue
            inst8 = build_instance(g8, idx, fr)
            rep8 = verify_e1(inst8)
            got.append(rep8.verdict == "VerifiedE1")
            if not inst8.reductions:
                # the invariant character: the classical order-6 witness
                got.append(rep8.case.case == "Case2" and any(
                    w.single_alpha_order == 6 for w in rep8.witnesses))
        out["psl2_8"] = all(got)
        # elementary abelian 2-groups, every character and automorphism
        ok = True
        for k in (1, 2, 3):
            g = group_from_spec(f"elemab:2:{k}")
            tb = character_table(g)
            autos = _all_gl_f2_automorphisms(g, k)
            for idx in range(tb.n_classes):
                if all(v == v.one() for v in tb.rows[idx]):
                    continue
                for a in autos:
                    inst = build_instance(g, idx, a)
                    rep = verify_e1(inst)
                    ok = ok and rep.verdict == "VerifiedE1"
        out["elemab"] = ok
        return out

    return _run(Section("eigenvalue-one corpus", "published",
                        {"a5": True, "psl2_7": True, "psl2_8": True,
                         "elemab": True}), compute)


def _all_gl_f2_automorphisms(g, k: int):
    """All automorphisms of (C2)^k as GL_k(F2) on the generator blocks."""
    from .groups import GroupAutomorphism, NotAnAutomorphism
    import itertools
    out = []
    rows = list(itertools.product((0, 1), repeat=k))
    for mat in itertools.product(rows, repeat=k):
        # column j of the matrix says where generator j goes
        imgs = []
        for j in range(k):
            img = g.kind.identity_row()
            for i in range(k):
                if mat[j][i]:
                    img = g.kind.mul(img, np.asarray(g.generators[i]))
            imgs.append(img)
        try:
            out.append(GroupAutomorphism(g, imgs))
        except NotAnAutomorphism:
            continue
    return out


def section_large_degree() -> Section:
    from .e1 import large_degree_examples

    def compute():
        return [(e["deg_sq"], e["bound_sq"], e["holds"])
                for e in large_degree_examples()]

    return _run(Section("large-degree arithmetic instances", "published",
                        [(729, 700, True), (387420489, 491400, True),
                         (9, 16, False)]), compute)


# ---------------------------------------------------------------------------
# tiers


def build_bundle(tier: str, live_e7: bool = False) -> ReportBundle:
    if tier not in ("fast", "full", "data"):
        raise ValueError("tier must be fast, full or data")
    bundle = ReportBundle(tier=tier)
    fast = [section_g2, section_f4, section_e6, section_type_b,
            section_sign_induction, section_d_series, section_mod2,
            section_type_a_orbits, section_psl3_steinberg,
            section_e1_corpus, section_large_degree]
    for fn in fast:
        bundle.sections.append(fn())
    if tier == "full":
        bundle.sections.append(section_e7(live=live_e7))
        bundle.sections.append(section_psl3_steinberg(7))
    if tier == "data":
        bundle.sections.append(section_e7(live=False))
        bundle.sections.append(section_e8())
    return bundle
