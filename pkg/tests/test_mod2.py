import pytest

from eigenone.cartan import cartan_datum
from eigenone.mod2 import (typeA_order2_char_orbits, typeA_stability_criterion,
                           weyl_orbits_mod2)


def test_a1_two_orbits():
    rep = weyl_orbits_mod2("A1")
    assert rep.orbit_sizes() == [1, 1]


def test_orbit_sizes_sum_and_divide():
    for t in ("A3", "B3", "D4", "F4", "E6", "G2"):
        datum = cartan_datum(t)
        rep = weyl_orbits_mod2(datum)
        assert sum(rep.orbit_sizes()) == 2 ** datum.rank
        for o in rep.orbits:
            assert datum.weyl_order() % o.size == 0
        zero = [o for o in rep.orbits if o.size == 1 and
                set(o.representative) == {0}]
        assert len(zero) == 1


def test_e6_three_orbits_all_stable():
    rep = weyl_orbits_mod2("E6", "graph")
    assert len(rep.orbits) == 3
    assert all(o.has_stable_element for o in rep.orbits)


def test_d4_triality_orbits():
    rep = weyl_orbits_mod2("D4", "triality")
    assert rep.orbit_sizes() == [1, 1, 1, 1, 12]
    big = next(o for o in rep.orbits if o.size == 12)
    assert big.contains_highest_root_image
    assert big.has_stable_element


def test_zero_vector_is_stable_fixed_orbit():
    rep = weyl_orbits_mod2("D4", "triality")
    zero = next(o for o in rep.orbits if set(o.representative) == {0})
    assert zero.size == 1 and zero.has_stable_element


def test_type_a_lattice_orbit_count_matches_subset_count():
    for d in range(2, 8):
        rep = weyl_orbits_mod2(f"A{d - 1}")
        assert len(rep.orbits) == d // 2 + 1
        sub = typeA_order2_char_orbits(d)
        assert len(sub.orbits) == d // 2 + 1


def test_type_a_stability_criterion():
    for d in range(2, 13):
        rep = typeA_order2_char_orbits(d)
        for o in rep.orbits:
            if typeA_stability_criterion(d, o.k):
                assert o.has_stable_representative, (d, o.k)
            if d % 2 == 0 and o.k % 2 == 1 and o.k != d // 2:
                assert not o.has_stable_representative, (d, o.k)


def test_type_a_pinned_examples():
    rep4 = typeA_order2_char_orbits(4)
    assert rep4.orbits[1].k == 1 and not rep4.orbits[1].has_stable_representative
    assert rep4.orbits[2].k == 2 and rep4.orbits[2].has_stable_representative
    rep5 = typeA_order2_char_orbits(5)
    assert all(o.has_stable_representative for o in rep5.orbits)


def test_reflections_are_involutions_mod2():
    for t in ("B4", "C4", "G2", "F4"):
        datum = cartan_datum(t)
        r = datum.rank
        cart = datum.cartan

        def reflect(v, j):
            pairing = sum(((v >> i) & 1) * cart[i][j] for i in range(r)) % 2
            return v ^ (pairing << j)

        for j in range(r):
            for v in range(1 << r):
                assert reflect(reflect(v, j), j) == v


def test_jsonable_report():
    rep = weyl_orbits_mod2("D4", "triality")
    d = rep.to_jsonable()
    assert d["type"] == "D4" and len(d["orbits"]) == 5
