"""Acceptance suite: every pinned value at exact equality, one line each.

Runs the full set by default; the two long-running recomputations (the
live E7 table and PSL3(7)) are gated behind EIGENONE_SLOW=1 since the
same values are covered by the shipped, validated data files.
"""

import os
import time

import numpy as np
import pytest

from eigenone.chartab import (character_table, class_fusion, decompose,
                              frobenius_schur, induce, inner_product,
                              real_odd_irreducibles, restrict)
from eigenone.cyclotomic import Cyclotomic
from eigenone.groups import GroupAutomorphism, build_semidirect
from eigenone import symchar
from eigenone.mod2 import (typeA_order2_char_orbits, typeA_stability_criterion,
                           weyl_orbits_mod2)
from eigenone.presets import (automorphism_from_spec, group_from_spec,
                              psl2_frobenius)
from eigenone.weyl import (induction_decomposition, load_shipped_table,
                           parabolic_induction_multiplicities, weyl_table,
                           diagram_automorphism, diagram_character_permutation)

SLOW = os.environ.get("EIGENONE_SLOW") == "1"
DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "eigenone",
                        "data")


def report(criterion, ok, t0, budget):
    dt = time.time() - t0
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} "
          f"({dt:.1f}s, budget {budget}s)")
    assert ok
    assert dt < budget, f"criterion {criterion} exceeded its runtime budget"


def test_criterion_01_g2():
    t0 = time.time()
    tab = weyl_table("G2")
    i = tab.label_index("phi''{1,3}")
    long_nodes, short_nodes = tab.rootsystem.long_short_nodes()
    m_long = parabolic_induction_multiplicities(tab, [long_nodes[0] + 1])[i]
    m_short = parabolic_induction_multiplicities(tab, [short_nodes[0] + 1])[i]
    report(1, m_long == 1 and m_short == 0, t0, 1)


def test_criterion_02_f4():
    t0 = time.time()
    tab = weyl_table("F4")
    i = tab.label_index("phi{9,2}")
    m_b3 = parabolic_induction_multiplicities(tab, [1, 2, 3])[i]
    m_a1 = parabolic_induction_multiplicities(tab, [1])[i]
    m_a1s = parabolic_induction_multiplicities(tab, [4])[i]
    report(2, m_b3 == 1 and m_a1 == 6 and m_a1s == 6, t0, 30)


def test_criterion_03_e6():
    t0 = time.time()
    tab = weyl_table("E6")
    i = tab.label_index("phi{15,4}")
    m_a5 = parabolic_induction_multiplicities(tab, [1, 3, 4, 5, 6])[i]
    m_a1 = parabolic_induction_multiplicities(tab, [1])[i]
    report(3, m_a5 == 1 and m_a1 == 10, t0, 600)


def _e7_values(tab):
    idx = [tab.label_index(l) for l in ("phi{7,1}", "phi{21,3}", "phi{27,2}")]
    out = {}
    for name, nodes in (("E6", [1, 2, 3, 4, 5, 6]),
                        ("D5xA1", [1, 2, 3, 4, 5, 7]), ("A1", [1])):
        m = parabolic_induction_multiplicities(tab, nodes)
        out[name] = tuple(m[i] for i in idx)
    return out


def test_criterion_04_e7_shipped():
    t0 = time.time()
    if not os.path.exists(os.path.join(DATA_DIR, "weyl_e7.ct")):
        pytest.skip("weyl_e7.ct not generated")
    tab = load_shipped_table("e7")
    vals = _e7_values(tab)
    ok = (vals["E6"] == (1, 1, 1) and vals["D5xA1"] == (1, 1, 2)
          and vals["A1"] == (6, 16, 21))
    report("4 (shipped E7)", ok, t0, 7200)


@pytest.mark.skipif(not SLOW, reason="set EIGENONE_SLOW=1 for the live E7 "
                                     "recomputation (about 10 minutes)")
def test_criterion_04_e7_live():
    t0 = time.time()
    tab = weyl_table("E7", verify=True)
    vals = _e7_values(tab)
    ok = (vals["E6"] == (1, 1, 1) and vals["D5xA1"] == (1, 1, 2)
          and vals["A1"] == (6, 16, 21))
    if os.path.exists(os.path.join(DATA_DIR, "weyl_e7.ct")):
        shipped = open(os.path.join(DATA_DIR, "weyl_e7.ct")).read()
        ok = ok and tab.to_text() == shipped
    report("4 (live E7)", ok, t0, 7200)


def test_criterion_05_e8_shipped():
    t0 = time.time()
    if not os.path.exists(os.path.join(DATA_DIR, "weyl_e8.ct")):
        pytest.skip("weyl_e8.ct not generated")
    tab = load_shipped_table("e8")
    i = tab.label_index("phi{35,2}")
    m_e7 = parabolic_induction_multiplicities(tab, list(range(1, 8)))[i]
    m_a1 = parabolic_induction_multiplicities(tab, [1])[i]
    report("5 (shipped E8)", m_e7 == 1 and m_a1 == 28, t0, 3600)


def test_criterion_06_type_b_rows():
    t0 = time.time()
    ok = True
    for d in range(2, 9):
        l1, l2 = ((d - 1, 1), ()), ((d - 1,), (1,))
        ok &= symchar.bipartition_degree(l1) == d - 1
        ok &= symchar.mult_trivial_from_transposition_B(l1) == d - 2
        ok &= symchar.bipartition_degree(l2) == d
        ok &= symchar.mult_trivial_from_transposition_B(l2) == d - 1
    report(6, ok, t0, 60)


def test_criterion_07_sign_induction():
    t0 = time.time()
    ok = all(symchar.mult_signsign_from_s2s2((d - 2, 2)) == 1
             and symchar.mult_signsign_from_s2s2((d - 2, 1, 1)) == 1
             for d in range(4, 11))
    report(7, ok, t0, 60)


def test_criterion_08_d_series():
    t0 = time.time()
    ok = True
    for d in (5, 6):
        tab = weyl_table(f"D{d}")
        dec = induction_decomposition(tab, list(range(1, d)))
        labels = sorted(str(l) for l, _ in dec)
        ok &= labels == sorted(["{-,(%d)}" % d, "{-,(%d,1)}" % (d - 1),
                                "{(1),(%d)}" % (d - 1)])
    tab4 = weyl_table("D4")
    dec4 = induction_decomposition(tab4, [1, 2, 3])
    labels4 = {str(l) for l, _ in dec4}
    triple = {"{(1^2),(1^2)}+", "{(1^2),(1^2)}-", "{-,(2,1^2)}"}
    ok &= labels4 == {"{-,(4)}", "{-,(3,1)}", "{(1),(3)}"}
    ok &= not (labels4 & triple)
    tri = diagram_automorphism(tab4.datum, "triality")
    act = diagram_character_permutation(tab4, tri)
    ids = {tab4.label_index(l) for l in triple}
    i0 = min(ids)
    ok &= {i0, act[i0], act[act[i0]]} == ids and act[i0] != i0
    report(8, ok, t0, 60)


def test_criterion_09_mod2_orbits():
    t0 = time.time()
    e6 = weyl_orbits_mod2("E6", "graph")
    d4 = weyl_orbits_mod2("D4", "triality")
    big = next(o for o in d4.orbits if o.size == 12)
    ok = (len(e6.orbits) == 3 and all(o.has_stable_element for o in e6.orbits)
          and d4.orbit_sizes() == [1, 1, 1, 1, 12]
          and big.contains_highest_root_image and big.has_stable_element)
    report(9, ok, t0, 1)


def test_criterion_10_type_a_stability():
    t0 = time.time()
    ok = True
    for d in range(2, 13):
        rep = typeA_order2_char_orbits(d)
        for o in rep.orbits:
            if typeA_stability_criterion(d, o.k):
                ok &= o.has_stable_representative
            if d % 2 == 0 and o.k % 2 == 1 and o.k != d // 2:
                ok &= not o.has_stable_representative
    rep4 = typeA_order2_char_orbits(4)
    ok &= not rep4.orbits[1].has_stable_representative
    ok &= rep4.orbits[2].has_stable_representative
    report(10, ok, t0, 1)


def test_criterion_11_psl3_steinberg():
    t0 = time.time()
    from eigenone.e1 import psl3_steinberg_restriction
    report(11, psl3_steinberg_restriction(3) == 3, t0, 600)


@pytest.mark.skipif(not SLOW, reason="set EIGENONE_SLOW=1 for PSL3(7) "
                                     "(about an hour)")
def test_criterion_11_psl3_steinberg_q7():
    t0 = time.time()
    from eigenone.e1 import psl3_steinberg_restriction
    report("11 (q=7)", psl3_steinberg_restriction(7) == 5, t0, 7200)


def test_criterion_12_e1_end_to_end():
    t0 = time.time()
    from eigenone.e1 import build_instance, verify_e1, recheck_report
    ok = True
    # A5 with the transposition automorphism, every real odd nontrivial chi
    a5 = group_from_spec("a5")
    t = np.array([1, 0, 2, 3, 4], dtype=np.uint8)
    nu = GroupAutomorphism(a5, [a5.kind.mul(a5.kind.mul(t, g), t)
                                for g in a5.generators])
    tab = character_table(a5)
    count = 0
    for idx in real_odd_irreducibles(tab):
        if tab.degrees[idx] == 1:
            continue
        inst = build_instance(a5, idx, nu)
        rep = verify_e1(inst)
        ok &= rep.verdict == "VerifiedE1" and recheck_report(inst, rep)
        count += 1
    ok &= count == 3
    # PSL2(7) with the order-2 diagonal outer automorphism
    g7 = group_from_spec("psl2:7")
    t7 = character_table(g7)
    i7 = next(i for i in real_odd_irreducibles(t7) if t7.degrees[i] == 7)
    inst7 = build_instance(g7, i7, automorphism_from_spec(g7, "diag:6,1"))
    rep7 = verify_e1(inst7)
    ok &= rep7.verdict == "VerifiedE1"
    # PSL2(8) with the Frobenius: the invariant degree-7 character gives the
    # classical order-6 witness
    g8, fr = psl2_frobenius(8)
    t8 = character_table(g8)
    invariant_seen = False
    for idx in real_odd_irreducibles(t8):
        if t8.degrees[idx] != 7:
            continue
        inst8 = build_instance(g8, idx, fr)
        rep8 = verify_e1(inst8)
        ok &= rep8.verdict == "VerifiedE1"
        if not inst8.reductions:
            invariant_seen = True
            ok &= rep8.case.case == "Case2"
            ok &= any(w.single_alpha_order == 6 for w in rep8.witnesses)
    ok &= invariant_seen
    # elementary abelian 2-groups: every nontrivial character, every
    # automorphism
    from eigenone.report import _all_gl_f2_automorphisms
    for k in (1, 2, 3):
        g = group_from_spec(f"elemab:2:{k}")
        tb = character_table(g)
        for idx in range(tb.n_classes):
            if all(v == Cyclotomic.one() for v in tb.rows[idx]):
                continue
            for auto in _all_gl_f2_automorphisms(g, k):
                inst = build_instance(g, idx, auto)
                ok &= verify_e1(inst).verdict == "VerifiedE1"
    report(12, ok, t0, 600)


def _corpus_extensions():
    """(G, extension) pairs with cyclic abelian quotient."""
    out = []
    a5 = group_from_spec("a5")
    t = np.array([1, 0, 2, 3, 4], dtype=np.uint8)
    nu = GroupAutomorphism(a5, [a5.kind.mul(a5.kind.mul(t, g), t)
                                for g in a5.generators])
    out.append((a5, build_semidirect(a5, nu)))
    g7 = group_from_spec("psl2:7")
    out.append((g7, build_semidirect(g7, automorphism_from_spec(g7, "diag:6,1"))))
    g8, fr = psl2_frobenius(8)
    out.append((g8, build_semidirect(g8, fr)))
    c3 = group_from_spec("c:3")
    inv = GroupAutomorphism(c3, [np.array([2, 0, 1], dtype=np.uint8)])
    out.append((c3, build_semidirect(c3, inv)))
    return out


def test_criterion_13_property_suites():
    t0 = time.time()
    ok = True
    # MN versus the exact engine: S_n for n <= 7 and W(B_n) for n <= 4.
    # Type A/B labeling already asserts entrywise equality of the rule
    # values with the engine's rows; build the tables to run that check.
    for n in range(3, 8):
        tab = weyl_table(f"A{n - 1}")
        ok &= len(tab.labels) == len(symchar.partitions(n))
    for n in (2, 3, 4):
        tab = weyl_table(f"B{n}")
        ok &= len(tab.labels) == len(symchar.bipartitions(n))
    # orthogonality on every computed table of the corpus
    for spec in ("s3", "s5", "a5", "q8", "psl2:7", "psl2:8", "elemab:2:3"):
        tabg = character_table(group_from_spec(spec))
        tabg.check_row_orthogonality()
        tabg.check_column_orthogonality()
        tabg.check_degree_sum()
    # Frobenius reciprocity on 20 seeded random (H, psi, chi) triples
    rng = np.random.default_rng(20260810)
    cases = 0
    for spec in ("s5", "a5", "psl2:7"):
        G = group_from_spec(spec)
        tg = character_table(G)
        while True:
            picks = rng.integers(0, G.order, size=2)
            H = G.subgroup([G.element_rows[int(i)] for i in picks])
            if H.order < G.order:
                break
        th = character_table(H)
        for _ in range(7):
            if cases >= 20:
                break
            chi = tg.irreducible(int(rng.integers(0, tg.n_classes)))
            psi = th.irreducible(int(rng.integers(0, th.n_classes)))
            lhs = inner_product(induce(tg, th, psi), chi)
            rhs = inner_product(psi, restrict(chi, th))
            ok &= lhs == rhs
            cases += 1
    ok &= cases >= 20
    # indicator +1 for every real odd-degree irreducible in the corpus
    for spec in ("s3", "s5", "a5", "q8", "psl2:7", "psl2:8", "psl3:3",
                 "psu3:3", "elemab:2:2"):
        tabg = character_table(group_from_spec(spec))
        for i in real_odd_irreducibles(tabg):
            ok &= frobenius_schur(tabg.irreducible(i)) == 1
    # restriction estimate: |chi'(x)|^2 <= |C_G(x)| over the corpus pairs
    for G, ext in _corpus_extensions():
        S = ext.group
        ts = character_table(S)
        fusion_idx = np.asarray(ext.embed_index)
        emb_rows = S.element_rows[fusion_idx]
        gclasses = [int(S.class_of()[i]) for i in
                    (S.index_of(np.asarray(c.rep)) for c in G.conjugacy_classes())]
        emb_class_fusion = []
        for c in G.conjugacy_classes():
            gi = G.index_of(np.asarray(c.rep))
            emb_class_fusion.append(int(S.class_of()[int(ext.embed_index[gi])]))
        for i in range(ts.n_classes):
            chi_p = ts.irreducible(i)
            resvals = [chi_p.values[c] for c in emb_class_fusion]
            nrm = sum((v * v.conjugate()) * c.size
                      for v, c in zip(resvals, G.conjugacy_classes()))
            if (nrm / G.order) != Cyclotomic.one():
                continue
            for ci, cls in enumerate(S.conjugacy_classes()):
                x = np.asarray(cls.rep)
                lhs_c = S.kind.batch_mul(emb_rows, x)
                rhs_c = S.kind.batch_lmul(x, emb_rows)
                cent = int((lhs_c == rhs_c).all(axis=1).sum())
                ok &= chi_p.values[ci].abs_squared().rational() <= cent
    # containment of every cyclic character under the degree bound
    for G, ext in _corpus_extensions():
        S = ext.group
        ts = character_table(S)
        emb_rows = S.element_rows[np.asarray(ext.embed_index)]
        emb_class_fusion = []
        for c in G.conjugacy_classes():
            gi = G.index_of(np.asarray(c.rep))
            emb_class_fusion.append(int(S.class_of()[int(ext.embed_index[gi])]))
        for i in range(ts.n_classes):
            chi_p = ts.irreducible(i)
            resvals = [chi_p.values[c] for c in emb_class_fusion]
            nrm = sum((v * v.conjugate()) * c.size
                      for v, c in zip(resvals, G.conjugacy_classes()))
            if (nrm / G.order) != Cyclotomic.one():
                continue
            deg = chi_p.degree_int()
            for cls in S.conjugacy_classes():
                o = cls.element_order
                if o == 1:
                    continue
                x = np.asarray(cls.rep)
                powers = []
                y = S.kind.identity_row()
                for _ in range(o):
                    powers.append(y)
                    y = S.kind.mul(y, x)
                m_cent = 0
                for y_row in powers[1:]:
                    lhs_c = S.kind.batch_mul(emb_rows, y_row)
                    rhs_c = S.kind.batch_lmul(y_row, emb_rows)
                    m_cent = max(m_cent, int((lhs_c == rhs_c).all(axis=1).sum()))
                if deg * deg > (o - 1) ** 2 * m_cent:
                    vals = [chi_p.values[int(S.class_of()[S.index_of(p)])]
                            for p in powers]
                    for k in range(o):
                        zbar = Cyclotomic.root_of_unity(o, (-k) % o)
                        tot = Cyclotomic.zero()
                        zk = Cyclotomic.one()
                        for j in range(o):
                            tot = tot + vals[j] * zk
                            zk = zk * zbar
                        mult = (tot / o).rational()
                        ok &= mult.denominator == 1 and mult > 0
    report(13, ok, t0, 900)


def test_criterion_14_large_degree_arithmetic():
    t0 = time.time()
    from eigenone.e1 import large_degree_examples
    ex = large_degree_examples()
    ok = (ex[0]["holds"] and ex[0]["deg_sq"] == 729 and ex[0]["bound_sq"] == 700
          and ex[1]["holds"] and ex[1]["deg_sq"] == 19683 ** 2
          and ex[1]["bound_sq"] == 25 * 19656
          and not ex[2]["holds"])
    report(14, ok, t0, 1)
