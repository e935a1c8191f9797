from fractions import Fraction

import numpy as np
import pytest

from eigenone.chartab import (CharacterTable, ClassFunction, character_table,
                              class_fusion, decompose, fixed_multiplicity,
                              frobenius_schur, induce, inner_product,
                              permutation_character, real_odd_irreducibles,
                              regular_character, restrict)
from eigenone.cyclotomic import Cyclotomic
from eigenone.groups import GroupAutomorphism, build_semidirect
from eigenone.presets import group_from_spec


def burnside_degree_oracle(G):
    """Independent oracle: numeric eigenvectors of a class-matrix pencil."""
    classes = G.conjugacy_classes()
    r = len(classes)
    rng = np.random.default_rng(7)
    A = sum(float(rng.uniform(0.5, 2)) * G.class_matrix(i).astype(float)
            for i in range(r))
    vals, vecs = np.linalg.eig(A)
    degs = []
    id_class = next(i for i, c in enumerate(classes) if c.element_order == 1)
    inv = [G.inverse_class(j) for j in range(r)]
    for k in range(r):
        w = vecs[:, k]
        w = w / w[id_class]
        s = sum(w[j] * w[inv[j]] / classes[j].size for j in range(r))
        degs.append(round(np.sqrt(abs(G.order / s.real))))
    return sorted(degs)


def test_trivial_table():
    triv = group_from_spec("c:1") if False else None
    from eigenone.groups import FiniteGroup, PermKind
    t = character_table(FiniteGroup(PermKind(1), []))
    assert t.degrees == (1,)
    assert t.rows[0][0] == Cyclotomic.one()


def test_s3_degrees():
    t = character_table(group_from_spec("s3"))
    assert sorted(t.degrees) == [1, 1, 2]


def test_a5_degrees_against_burnside_oracle():
    a5 = group_from_spec("a5")
    t = character_table(a5)
    assert sorted(t.degrees) == [1, 3, 3, 4, 5]
    assert burnside_degree_oracle(a5) == [1, 3, 3, 4, 5]


def test_row_and_column_orthogonality_corpus():
    for spec in ("s3", "a5", "q8", "psl2:7", "s5"):
        t = character_table(group_from_spec(spec))
        t.check_row_orthogonality()
        t.check_column_orthogonality()
        t.check_degree_sum()


def test_inner_products():
    t = character_table(group_from_spec("a5"))
    for i in range(t.n_classes):
        chi = t.irreducible(i)
        assert inner_product(chi, chi) == Cyclotomic.one()
    reg = regular_character(t)
    triv = t.irreducible(t.trivial_index())
    assert inner_product(triv, reg) == Cyclotomic.one()


def test_permutation_character_a5_on_5_points():
    a5 = group_from_spec("a5")
    t = character_table(a5)
    # point stabilizer of 0 is generated by (1 2 3) and (1 2)(3 4)
    stab = a5.subgroup([np.array([0, 2, 3, 1, 4], dtype=np.uint8),
                        np.array([0, 2, 1, 4, 3], dtype=np.uint8)])
    assert stab.order == 12
    pi = permutation_character(t, stab)
    assert pi.degree_int() == 5
    triv = t.irreducible(t.trivial_index())
    assert inner_product(pi, triv) == Cyclotomic.one()


def test_induce_restrict_reciprocity_c2_in_s3():
    s3 = group_from_spec("s3")
    t3 = character_table(s3)
    c2 = s3.subgroup([np.array([1, 0, 2], dtype=np.uint8)])
    tc2 = character_table(c2)
    ind = induce(t3, tc2, tc2.irreducible(tc2.trivial_index()))
    assert ind.degree_int() == 3
    assert sorted(t3.degrees[i] for i, m in decompose(ind)) == [1, 2]
    for i in range(t3.n_classes):
        chi = t3.irreducible(i)
        for j in range(tc2.n_classes):
            psi = tc2.irreducible(j)
            lhs = inner_product(induce(t3, tc2, psi), chi)
            rhs = inner_product(psi, restrict(chi, tc2))
            assert lhs == rhs


def test_induce_from_whole_group_is_identity():
    a5 = group_from_spec("a5")
    t = character_table(a5)
    sub = a5.subgroup(list(a5.generators))
    tsub = character_table(sub)
    chi = t.irreducible(2)
    fus = class_fusion(a5, sub)
    psi = ClassFunction(tsub, tuple(chi.values[c] for c in fus))
    back = induce(t, tsub, psi)
    assert back.values == chi.values


def test_induced_degree_is_index_times_degree():
    s5 = group_from_spec("s5")
    t5 = character_table(s5)
    a5 = s5.subgroup([np.array([1, 2, 3, 4, 0], dtype=np.uint8),
                      np.array([1, 2, 0, 3, 4], dtype=np.uint8)])
    ta5 = character_table(a5)
    psi = ta5.irreducible(1)
    ind = induce(t5, ta5, psi)
    assert ind.degree_int() == 2 * psi.degree_int()


def test_restriction_to_trivial_subgroup():
    a5 = group_from_spec("a5")
    t = character_table(a5)
    triv = a5.subgroup([a5.kind.identity_row()])
    tt = character_table(triv)
    chi = t.irreducible(4)
    res = restrict(chi, tt)
    assert res.values[0].integer() == t.degrees[4]


def test_res_s5_to_a5_degree5_irreducible():
    s5 = group_from_spec("s5")
    t5 = character_table(s5)
    a5 = s5.subgroup([np.array([1, 2, 3, 4, 0], dtype=np.uint8),
                      np.array([1, 2, 0, 3, 4], dtype=np.uint8)])
    ta5 = character_table(a5)
    i5 = next(i for i, d in enumerate(t5.degrees) if d == 5)
    res = restrict(t5.irreducible(i5), ta5)
    assert inner_product(res, res) == Cyclotomic.one()


def test_frobenius_schur():
    t = character_table(group_from_spec("a5"))
    assert frobenius_schur(t.irreducible(t.trivial_index())) == 1
    i5 = next(i for i, d in enumerate(t.degrees) if d == 5)
    assert frobenius_schur(t.irreducible(i5)) == 1
    tq = character_table(group_from_spec("q8"))
    i2 = next(i for i, d in enumerate(tq.degrees) if d == 2)
    assert frobenius_schur(tq.irreducible(i2)) == -1
    # independent oracle: direct sum over all elements
    q8 = group_from_spec("q8")
    sq_count = {}
    for i in range(q8.order):
        x = q8.element_rows[i]
        sq = q8.kind.mul(x, x)
        ci = q8.class_index_of_row(sq)
        sq_count[ci] = sq_count.get(ci, 0) + 1
    chi = tq.irreducible(i2)
    total = sum(chi.values[c] * m for c, m in sq_count.items())
    assert (total / q8.order) == Cyclotomic.from_rational(-1)


def test_fs_indicator_oracle_vs_frobenius_schur_corpus():
    for spec in ("s3", "a5", "psl2:7"):
        G = group_from_spec(spec)
        t = character_table(G)
        powtabs = G.power_class_tables()
        for i in range(t.n_classes):
            chi = t.irreducible(i)
            total = Cyclotomic.zero()
            for j, c in enumerate(G.conjugacy_classes()):
                total = total + chi.values[powtabs[j][2 % c.element_order]] * c.size
            assert (total / G.order).rational() == frobenius_schur(chi)


def test_fixed_multiplicity():
    s5 = group_from_spec("s5")
    t5 = character_table(s5)
    i5 = next(i for i, d in enumerate(t5.degrees) if d == 5)
    chi = t5.irreducible(i5)
    ident = s5.kind.identity_row()
    assert fixed_multiplicity(chi, ident, 1) == 5
    transp = np.array([1, 0, 2, 3, 4], dtype=np.uint8)
    mplus = fixed_multiplicity(chi, transp, 1)
    mminus = fixed_multiplicity(chi, transp, -1)
    assert mplus + mminus == 5
    # oracle: explicit eigenvalues in the 6-point exotic action of S5
    assert (mplus, mminus) == explicit_s5_eigen_oracle()
    # central involution acting as -1: the faithful character of C4
    c4 = group_from_spec("c:4")
    t4 = character_table(c4)
    central = np.array([2, 3, 0, 1], dtype=np.uint8)
    idx = next(i for i in range(4)
               if t4.irreducible(i).values[t4.group.class_index_of_row(central)]
               == Cyclotomic.from_rational(-1) and t4.degrees[i] == 1)
    assert fixed_multiplicity(t4.irreducible(idx), central, 1) == 0


def explicit_s5_eigen_oracle():
    """Eigenvalue multiplicities of a transposition on the 5-dim module,
    via the action of S5 on its six 5-cycle subgroups."""
    import itertools
    perms = list(itertools.permutations(range(5)))
    idx = {p: i for i, p in enumerate(perms)}

    def mul(p, q):
        return tuple(p[q[i]] for i in range(5))

    base = (1, 2, 3, 4, 0)
    sylows = set()
    for p in perms:
        pinv = tuple(sorted(range(5), key=lambda i: p[i]))
        c = mul(mul(p, base), pinv)
        group = frozenset(_pow(c, k) for k in range(5))
        sylows.add(group)
    sylows = sorted(sylows, key=lambda s: sorted(s))
    t = (1, 0, 2, 3, 4)
    mat = np.zeros((6, 6))
    for a, s in enumerate(sylows):
        tinv = t
        moved = frozenset(mul(mul(t, x), tinv) for x in s)
        b = sylows.index(moved)
        mat[b, a] = 1.0
    vals = np.linalg.eigvals(mat)
    plus = round(sum(1 for v in vals if abs(v - 1) < 1e-9)) - 1  # drop trivial
    minus = round(sum(1 for v in vals if abs(v + 1) < 1e-9))
    return plus, minus


def _pow(p, k):
    out = tuple(range(5))
    for _ in range(k):
        out = tuple(p[out[i]] for i in range(5))
    return out


def test_fixed_multiplicity_rejects_odd_order_minus():
    a5 = group_from_spec("a5")
    t = character_table(a5)
    three = next(c for c in a5.conjugacy_classes() if c.element_order == 3)
    with pytest.raises(ValueError):
        fixed_multiplicity(t.irreducible(1), three.rep, -1)


def test_real_odd_irreducibles():
    t5 = character_table(group_from_spec("a5"))
    assert sorted(t5.degrees[i] for i in real_odd_irreducibles(t5)) == [1, 3, 3, 5]
    tq = character_table(group_from_spec("q8"))
    # all four linear characters are real of odd degree (the 2-dim one is not odd)
    assert sorted(tq.degrees[i] for i in real_odd_irreducibles(tq)) == [1, 1, 1, 1]
    te = character_table(group_from_spec("elemab:2:2"))
    assert sorted(te.degrees[i] for i in real_odd_irreducibles(te)) == [1, 1, 1, 1]


def test_table_text_roundtrip_bitexact():
    for spec in ("s3", "a5", "q8"):
        t = character_table(group_from_spec(spec))
        txt = t.to_text()
        t2 = CharacterTable.from_text(txt)
        assert t2.to_text() == txt
        t2.check_column_orthogonality()


def test_character_estimate_inequality_a5_s5():
    """|chi'(x)|^2 <= |C_G(x)| for irreducible restrictions through G <| G'."""
    s5 = group_from_spec("s5")
    t5 = character_table(s5)
    a5 = s5.subgroup([np.array([1, 2, 3, 4, 0], dtype=np.uint8),
                      np.array([1, 2, 0, 3, 4], dtype=np.uint8)])
    ta5 = character_table(a5)
    fus = class_fusion(s5, a5)
    for i in range(t5.n_classes):
        chi = t5.irreducible(i)
        res = restrict(chi, ta5)
        if inner_product(res, res) != Cyclotomic.one():
            continue
        for ci, cls in enumerate(s5.conjugacy_classes()):
            # centralizer order inside A5 of an element of S5: count directly
            emb = s5.element_rows
            x = np.asarray(cls.rep)
            a5set = set(int(i) for i in s5.lookup_rows(a5.element_rows))
            cent = 0
            for j in a5set:
                y = emb[j]
                if np.array_equal(s5.kind.mul(y, x), s5.kind.mul(x, y)):
                    cent += 1
            sq = chi.values[ci].abs_squared().rational()
            assert sq <= cent
