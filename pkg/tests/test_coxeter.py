import numpy as np
import pytest

from eigenone.cartan import RootSystem, cartan_datum, subdatum
from eigenone.chartab import character_table
from eigenone.groups import FiniteGroup, PermKind
from eigenone import symchar
from eigenone.weyl import (WeylGroup, diagram_automorphism,
                           diagram_character_permutation,
                           induction_decomposition, load_weyl_table_text,
                           parabolic_induction_multiplicities, parse_label,
                           weyl_table, WeylCharacterLabel)


def test_root_counts_and_orders():
    for spec, n_roots, order in [("A3", 12, 24), ("B3", 18, 48), ("C3", 18, 48),
                                 ("D4", 24, 192), ("G2", 12, 12),
                                 ("F4", 48, 1152), ("E6", 72, 51840),
                                 ("E7", 126, 2903040)]:
        d = cartan_datum(spec)
        rs = RootSystem(d)
        assert rs.n_roots == n_roots
        assert d.weyl_order() == order


def test_enumerated_weyl_orders():
    for spec in ("A3", "B3", "D4", "G2", "F4"):
        W = WeylGroup(cartan_datum(spec))
        assert W.order == cartan_datum(spec).weyl_order()


def test_braid_relation_and_matrix_perm():
    rs = RootSystem(cartan_datum("A2"))
    assert np.array_equal(rs.word_matrix([1, 2, 1]), rs.word_matrix([2, 1, 2]))
    p = rs.matrix_root_perm(rs.word_matrix([1]))
    assert np.array_equal(p, rs.simple_perms[0])
    for j, perm in enumerate(rs.simple_perms):
        assert np.array_equal(perm[perm], np.arange(rs.n_roots))


def test_subdatum_classification():
    e7 = cartan_datum("E7")
    assert subdatum(e7, [0, 1, 2, 3, 4, 6]).name == "D5xA1"
    assert subdatum(e7, [0, 1, 2, 3, 4, 5]).name == "E6"
    f4 = cartan_datum("F4")
    assert subdatum(f4, [0, 1, 2]).name == "B3"
    assert subdatum(f4, [1, 2, 3]).name == "C3"
    e6 = cartan_datum("E6")
    assert subdatum(e6, [0, 2, 3, 4, 5]).name == "A5"
    d4 = cartan_datum("D4")
    assert subdatum(d4, [0, 1, 2]).name == "A3"


# -- Murnaghan-Nakayama and the hyperoctahedral rule ------------------------


def test_mn_small_cases():
    assert all(symchar.symmetric_character((5,), mu) == 1
               for mu in symchar.partitions(5))
    for mu in symchar.partitions(4):
        sign = symchar.symmetric_character((1, 1, 1, 1), mu)
        assert sign == (-1) ** (4 - len(mu))
    assert symchar.symmetric_character((2, 1), (3,)) == -1


def test_mn_equals_dixon_sn():
    for d in range(2, 8):
        W = WeylGroup(cartan_datum(f"A{d - 1}")) if d > 2 else None
        G = (W.group if W else
             FiniteGroup(PermKind(2), [[1, 0]]))
        tab = weyl_table(f"A{d - 1}")
        # every labeled row must equal the MN values along the class types
        types = []
        for g in tab.geometry:
            cand = [mu for mu in symchar.partitions(d)
                    if _a_charpoly_ref(mu) == g.charpoly]
            assert len(cand) == 1
            types.append(cand[0])
        for i, lab in enumerate(tab.labels):
            assert lab.kind == "partition"
            for ci, mu in enumerate(types):
                assert (tab.table.rows[i][ci].integer()
                        == symchar.symmetric_character(lab.data, mu))


def _a_charpoly_ref(mu):
    poly = [1]
    for part in mu:
        factor = [-1] + [0] * (part - 1) + [1]
        out = [0] * (len(poly) + len(factor) - 1)
        for i, x in enumerate(poly):
            for j, y in enumerate(factor):
                out[i + j] += x * y
        poly = out
    # divide by (x - 1)
    q = [0] * (len(poly) - 1)
    r = list(poly)
    for k in range(len(q) - 1, -1, -1):
        q[k] = r[k + 1]
        r[k] += q[k]
    return tuple(q)


def test_wreath_mn_equals_dixon_bn():
    for d in (2, 3, 4):
        tab = weyl_table(f"B{d}")
        assert sum(x * x for x in tab.table.degrees) == tab.table.order
        for i, lab in enumerate(tab.labels):
            assert lab.kind == "bipartition"
        # spot degrees from the combinatorial rule
        for lab, deg in zip(tab.labels, tab.table.degrees):
            assert symchar.bipartition_degree(lab.data) == deg


def test_hyperoctahedral_degrees_2_to_8():
    for d in range(2, 9):
        assert symchar.bipartition_degree(((d - 1, 1), ())) == d - 1
        assert symchar.bipartition_degree(((d - 1,), (1,))) == d
        assert symchar.hyperoctahedral_character(((d,), ()), ((d,), ())) == 1


def test_branching_multiplicities_type_b():
    for d in range(2, 9):
        assert symchar.mult_trivial_from_transposition_B(((d - 1, 1), ())) == d - 2
        assert symchar.mult_trivial_from_transposition_B(((d - 1,), (1,))) == d - 1


def test_b3_induction_from_s2_matches_dixon():
    tab = weyl_table("B3")
    # the S2 generated by the far-from-double-bond end node is node 1
    mults = parabolic_induction_multiplicities(tab, [1])
    for i, lab in enumerate(tab.labels):
        assert mults[i] == symchar.mult_trivial_from_transposition_B(lab.data)


def test_sign_induction_s4_matches_dixon():
    tab = weyl_table("A3")
    mults = parabolic_induction_multiplicities(tab, [1, 3], "sign")
    for i, lab in enumerate(tab.labels):
        assert mults[i] == symchar.mult_signsign_from_s2s2(lab.data)


def test_sign_sign_mult_paper_range():
    for d in range(4, 11):
        assert symchar.mult_signsign_from_s2s2((d - 2, 2)) == 1
        assert symchar.mult_signsign_from_s2s2((d - 2, 1, 1)) == 1


# -- type D -----------------------------------------------------------------


def test_d4_split_labels_and_degrees():
    tab = weyl_table("D4")
    assert sum(d * d for d in tab.table.degrees) == 192
    deg3 = sorted(str(tab.labels[i]) for i, d in enumerate(tab.table.degrees)
                  if d == 3)
    assert "{(1^2),(1^2)}+" in deg3 and "{(1^2),(1^2)}-" in deg3
    assert "{-,(2,1^2)}" in deg3


def test_res_b4_to_d4_irreducible():
    """Res of the bipartition ((3),(1)) character stays irreducible on D4."""
    b4 = weyl_table("B4")
    d4 = weyl_table("D4")
    types = [_signed_type(d4, g.matrix) for g in d4.geometry]
    vec = tuple(symchar.hyperoctahedral_character(((3,), (1,)), t) for t in types)
    rows = [tuple(v.integer() for v in row) for row in d4.table.rows]
    assert vec in rows


def _signed_type(tab, M):
    from eigenone.weyl import _signed_type_of_matrix
    return _signed_type_of_matrix(tab.datum, M)


def test_d_series_branching():
    for d in (5, 6):
        tab = weyl_table(f"D{d}")
        dec = induction_decomposition(tab, list(range(1, d)))
        labels = sorted(str(l) for l, m in dec)
        assert labels == sorted([
            "{-,(%d)}" % d,
            "{-,(%d,1)}" % (d - 1),
            "{(1),(%d)}" % (d - 1)])
        assert all(m == 1 for _, m in dec)
        index = tab.table.order // (2 ** (d - 2) * _fact(d - 1))
        assert sum(m * _deg(l) for l, m in dec) == index


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _deg(label):
    return symchar.bipartition_degree((label.data[0], label.data[1]))


def test_d4_a3_parabolic_avoids_triality_triple():
    tab = weyl_table("D4")
    dec = induction_decomposition(tab, [1, 2, 3])
    labels = {str(l) for l, m in dec}
    assert labels == {"{-,(4)}", "{-,(3,1)}", "{(1),(3)}"}
    triple = {"{(1^2),(1^2)}+", "{(1^2),(1^2)}-", "{-,(2,1^2)}"}
    assert not (labels & triple)


def test_triality_permutes_triple_transitively():
    tab = weyl_table("D4")
    tri = diagram_automorphism(tab.datum, "triality")
    act = diagram_character_permutation(tab, tri)
    triple = {tab.label_index("{(1^2),(1^2)}+"),
              tab.label_index("{(1^2),(1^2)}-"),
              tab.label_index("{-,(2,1^2)}")}
    i = min(triple)
    assert {i, act[i], act[act[i]]} == triple
    assert act[i] != i
    # degrees and b-invariants are preserved
    bv = tab.b_invariants()
    for j in range(len(act)):
        assert tab.table.degrees[act[j]] == tab.table.degrees[j]
        assert bv[act[j]] == bv[j]


def test_a3_flip_fixes_everything():
    tab = weyl_table("A3")
    act = diagram_character_permutation(
        tab, diagram_automorphism(tab.datum, "graph"))
    assert act == list(range(tab.table.n_classes))


def test_identity_automorphism_fixes():
    tab = weyl_table("G2")
    act = diagram_character_permutation(
        tab, diagram_automorphism(tab.datum, "id"))
    assert act == list(range(6))


# -- b-invariants ------------------------------------------------------------


def test_b_invariants():
    for t in ("A3", "B3", "G2", "F4", "D4"):
        tab = weyl_table(t)
        bv = tab.b_invariants()
        triv = tab.table.trivial_index()
        assert bv[triv] == 0
        sgn = next(i for i in range(tab.table.n_classes)
                   if tab.table.degrees[i] == 1 and i != triv
                   and bv[i] == max(b for d, b in zip(tab.table.degrees, bv)
                                    if d == 1))
        assert bv[sgn] == tab.rootsystem.n_pos
    g2 = weyl_table("G2")
    refl = next(i for i in range(6)
                if g2.table.degrees[i] == 2 and g2.b_invariants()[i] == 1)
    assert g2.b_invariants()[refl] == 1


# -- parabolic induction invariants ------------------------------------------


def test_trivial_occurs_once_in_every_parabolic_induction():
    for t, nodes_list in [("G2", [[1], [2], [1, 2], []]),
                          ("F4", [[1], [1, 2, 3], [2, 3, 4]]),
                          ("D4", [[1, 2, 3], [3], []])]:
        tab = weyl_table(t)
        triv = tab.table.trivial_index()
        for nodes in nodes_list:
            mults = parabolic_induction_multiplicities(tab, nodes)
            assert mults[triv] == 1


def test_empty_parabolic_gives_regular_character():
    tab = weyl_table("A3")
    mults = parabolic_induction_multiplicities(tab, [])
    assert mults == list(tab.table.degrees)


def test_whole_group_sign_induction():
    tab = weyl_table("B3")
    mults = parabolic_induction_multiplicities(tab, [1, 2, 3], "sign")
    sgn = next(i for i in range(tab.table.n_classes)
               if tab.table.degrees[i] == 1
               and tab.b_invariants()[i] == tab.rootsystem.n_pos)
    assert mults[sgn] == 1 and sum(mults) == 1


# -- serialization and file-backed fusion -------------------------------------


def test_weyl_table_file_roundtrip_and_fusion_agreement():
    tab = weyl_table("F4")
    text = tab.to_text()
    filed = load_weyl_table_text(text, "F4")
    assert filed.to_text() == text
    i92 = tab.label_index("phi{9,2}")
    for nodes in ([1], [4], [1, 2, 3], [2, 3, 4], [1, 2], []):
        live = parabolic_induction_multiplicities(tab, nodes)
        from_file = parabolic_induction_multiplicities(filed, nodes)
        assert live == from_file


def test_parse_label_roundtrip():
    for s in ("phi{9,2}", "phi'{8,3}", "phi''{1,3}", "zeta^(3,1)",
              "zeta^((2,1),(1))", "zeta^((3),-)", "{-,(3,1)}",
              "{(1^2),(1^2)}+", "{(1),(4)}"):
        lab = parse_label(s)
        assert parse_label(str(lab)) == lab
