import numpy as np
import pytest

from eigenone.chartab import (character_table, fixed_multiplicity,
                              inner_product, real_odd_irreducibles, restrict)
from eigenone.cyclotomic import Cyclotomic
from eigenone.groups import GroupAutomorphism
from eigenone.e1 import (CriterionReport, E1Instance, InvalidInstance,
                         MissingPrime, OrderNotEven, build_instance,
                         case_split, large_degree_criterion,
                         large_degree_examples, main_criterion_check,
                         psl2_steinberg_large_degree, psl3_levi_and_borel,
                         psl3_steinberg_restriction, recheck_report,
                         ree_steinberg_large_degree, steinberg_character,
                         verify_e1)
from eigenone.presets import (automorphism_from_spec, group_from_spec,
                              psl2_frobenius)


def a5_with_transposition():
    a5 = group_from_spec("a5")
    t = np.array([1, 0, 2, 3, 4], dtype=np.uint8)
    imgs = [a5.kind.mul(a5.kind.mul(t, g), t) for g in a5.generators]
    return a5, GroupAutomorphism(a5, imgs, name="transposition")


def test_invalid_instances():
    a5 = group_from_spec("a5")
    tab = character_table(a5)
    triv = tab.trivial_index()
    with pytest.raises(InvalidInstance):
        build_instance(a5, triv)                       # trivial character
    i4 = next(i for i, d in enumerate(tab.degrees) if d == 4)
    with pytest.raises(InvalidInstance):
        build_instance(a5, i4)                         # even degree


def test_case_split_examples():
    a5, nu = a5_with_transposition()
    tab = character_table(a5)
    i5 = next(i for i, d in enumerate(tab.degrees) if d == 5)
    # inner (here: trivial) automorphism -> Case 1
    inst_inner = build_instance(a5, i5)
    rep = case_split(inst_inner)
    assert rep.case == "Case1" and rep.nu_is_identity
    # transposition conjugation -> Case 1 with |S/G| = 2
    inst = build_instance(a5, i5, nu)
    rep = case_split(inst)
    assert rep.case == "Case1" and inst.extension.m == 2
    # odd-order Frobenius -> Case 2 with an odd-order coset representative
    g8, fr = psl2_frobenius(8)
    tab8 = character_table(g8)
    invariant_deg7 = None
    for i in real_odd_irreducibles(tab8):
        if tab8.degrees[i] != 7:
            continue
        inst8 = build_instance(g8, i, fr)
        if not inst8.reductions:
            invariant_deg7 = inst8
            break
    assert invariant_deg7 is not None
    rep8 = case_split(invariant_deg7)
    assert rep8.case == "Case2"
    assert rep8.odd_order_coset_rep_exists
    assert rep8.scheduled_signs == (1, -1)


def test_main_criterion_involution_witness():
    a5, nu = a5_with_transposition()
    tab = character_table(a5)
    i5 = next(i for i, d in enumerate(tab.degrees) if d == 5)
    inst = build_instance(a5, i5, nu)
    S = inst.extension.group
    coset = inst.extension.coset_class_indices(1)
    invol = next(ci for ci in coset
                 if S.conjugacy_classes()[ci].element_order == 2)
    for row in inst.real_extension_rows():
        ok, ev = main_criterion_check(inst, S.conjugacy_classes()[invol].rep, row)
        assert ok and ev["mult_plus"] > 0 and ev["mult_minus"] > 0


def test_main_criterion_rejects_odd_order():
    a5, nu = a5_with_transposition()
    tab = character_table(a5)
    i5 = next(i for i, d in enumerate(tab.degrees) if d == 5)
    inst = build_instance(a5, i5, nu)
    ident = inst.extension.group.kind.identity_row()
    with pytest.raises(OrderNotEven):
        main_criterion_check(inst, ident, inst.real_extension_rows()[0])


def test_verify_e1_a5_all_nontrivial_real_odd():
    a5, nu = a5_with_transposition()
    tab = character_table(a5)
    for idx in real_odd_irreducibles(tab):
        if tab.degrees[idx] == 1:
            continue
        inst = build_instance(a5, idx, nu)
        rep = verify_e1(inst)
        assert rep.verdict == "VerifiedE1"
        assert recheck_report(inst, rep)
        if tab.degrees[idx] == 3:
            assert any("stabilizer" in note for note in rep.reductions)


def test_verify_e1_inner_always_fast_path():
    for spec in ("a5", "psl2:7"):
        G = group_from_spec(spec)
        tab = character_table(G)
        for idx in real_odd_irreducibles(tab):
            if tab.degrees[idx] == 1:
                continue
            inst = build_instance(G, idx)
            rep = verify_e1(inst)
            assert rep.verdict == "VerifiedE1"
            assert rep.criterion == "involution"


def test_verify_e1_psl28_frobenius_order6_witness():
    g8, fr = psl2_frobenius(8)
    tab8 = character_table(g8)
    seen_invariant = False
    for idx in real_odd_irreducibles(tab8):
        if tab8.degrees[idx] != 7:
            continue
        inst = build_instance(g8, idx, fr)
        rep = verify_e1(inst)
        assert rep.verdict == "VerifiedE1"
        if not inst.reductions:
            seen_invariant = True
            assert rep.case.case == "Case2"
            assert any(w.single_alpha_order == 6 for w in rep.witnesses)
    assert seen_invariant


def test_verify_e1_psl27_diagonal():
    G = group_from_spec("psl2:7")
    nu = automorphism_from_spec(G, "diag:6,1")
    assert nu.order == 2 and not nu.is_inner()
    tab = character_table(G)
    i7 = next(i for i in real_odd_irreducibles(tab) if tab.degrees[i] == 7)
    inst = build_instance(G, i7, nu)
    assert inst.extension.group.order == 336
    rep = verify_e1(inst)
    assert rep.verdict == "VerifiedE1"
    assert recheck_report(inst, rep)


def test_verify_e1_elementary_abelian_all():
    from eigenone.report import _all_gl_f2_automorphisms
    for k in (1, 2, 3):
        g = group_from_spec(f"elemab:2:{k}")
        tb = character_table(g)
        autos = _all_gl_f2_automorphisms(g, k)
        assert len(autos) == {1: 1, 2: 6, 3: 168}[k]
        for idx in range(tb.n_classes):
            if all(v == Cyclotomic.one() for v in tb.rows[idx]):
                continue
            for a in autos:
                inst = build_instance(g, idx, a)
                rep = verify_e1(inst)
                assert rep.verdict == "VerifiedE1"


def test_witness_invariants():
    a5, nu = a5_with_transposition()
    tab = character_table(a5)
    i5 = next(i for i, d in enumerate(tab.degrees) if d == 5)
    inst = build_instance(a5, i5, nu)
    rep = verify_e1(inst)
    S = inst.extension.group
    for w in rep.witnesses:
        chi_p = inst.ext_table.irreducible(w.chi_prime)
        alpha = S.conjugacy_classes()[w.minus_class].rep
        mp = fixed_multiplicity(chi_p, alpha, 1)
        mm = fixed_multiplicity(chi_p, alpha, -1)
        assert mp + mm <= w.chi_prime_degree


def test_large_degree_criterion():
    assert large_degree_criterion(27, 6, {2: 28, 3: 27})
    assert not large_degree_criterion(3, 2, {2: 16})
    with pytest.raises(OrderNotEven):
        large_degree_criterion(27, 3, {3: 27})
    with pytest.raises(MissingPrime):
        large_degree_criterion(27, 6, {2: 28})


def test_large_degree_pinned_instances():
    ex = large_degree_examples()
    assert ex[0]["deg_sq"] == 729 and ex[0]["bound_sq"] == 700 and ex[0]["holds"]
    assert ex[1]["deg_sq"] == 387420489 and ex[1]["bound_sq"] == 491400
    assert ex[1]["holds"]
    assert not ex[2]["holds"]
    assert psl2_steinberg_large_degree(27, 3, 3)["holds"]
    assert ree_steinberg_large_degree(27, 1)["holds"]


def test_large_degree_implies_main_criterion_on_concrete_instance():
    """Whenever the degree bound holds with true centralizer data, the
    restriction criterion must also hold for that element."""
    a5, nu = a5_with_transposition()
    tab = character_table(a5)
    i5 = next(i for i, d in enumerate(tab.degrees) if d == 5)
    inst = build_instance(a5, i5, nu)
    S = inst.extension.group
    from eigenone.e1 import _coset_centralizer_orders
    deg = tab.degrees[i5]
    for ci in inst.extension.coset_class_indices(1):
        cls = S.conjugacy_classes()[ci]
        if cls.element_order % 2:
            continue
        cents = _coset_centralizer_orders(inst, ci)
        if large_degree_criterion(deg, cls.element_order, cents):
            for row in inst.real_extension_rows():
                ok, _ = main_criterion_check(inst, cls.rep, row)
                assert ok


def test_steinberg_characters_psl2():
    for q, border in ((5, 10), (7, 21)):
        G = group_from_spec(f"psl2:{q}")
        tab = character_table(G)
        # Borel: upper triangular projective matrices
        g = 2 if q == 5 else 3
        borel = G.subgroup([
            np.array([1, 1, 0, 1], dtype=np.uint8),
            np.array([g, 0, 0, pow(g, q - 2, q)], dtype=np.uint8)])
        assert borel.order == border
        st, note = steinberg_character(tab, borel, q)
        assert st.degree_int() == q


def test_steinberg_psl33():
    G, levi, borel = psl3_levi_and_borel(3)
    assert G.order == 5616 and levi.order == 48 and borel.order == 108
    tab = character_table(G)
    st, note = steinberg_character(tab, borel, 3)
    assert st.degree_int() == 27
    assert "constituent" in note or "irreducible" in note


def test_psl3_steinberg_restriction_q3():
    assert psl3_steinberg_restriction(3) == 3


def test_res_st_contains_trivial():
    G, levi, borel = psl3_levi_and_borel(3)
    tab = character_table(G)
    st, _ = steinberg_character(tab, borel, 3)
    tl = character_table(levi)
    res = restrict(st, tl)
    triv = tl.irreducible(tl.trivial_index())
    val = inner_product(res, triv).rational()
    assert val >= 1


def test_report_json_roundtrip():
    import json
    a5, nu = a5_with_transposition()
    tab = character_table(a5)
    i5 = next(i for i, d in enumerate(tab.degrees) if d == 5)
    inst = build_instance(a5, i5, nu)
    rep = verify_e1(inst)
    payload = json.loads(rep.to_json())
    assert payload["verdict"] == "VerifiedE1"
    assert payload["witnesses"][0]["plus_mult"] > 0
