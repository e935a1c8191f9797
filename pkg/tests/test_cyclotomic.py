from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eigenone.cyclotomic import Cyclotomic, cyclotomic_polynomial, euler_phi


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_polynomial(360)) == euler_phi(360) + 1


def test_roots_of_unity_basics():
    z = Cyclotomic.root_of_unity(5)
    assert z.n == 5
    prod = z
    for _ in range(4):
        prod = prod * z
    assert prod == Cyclotomic.one()
    s = sum((Cyclotomic.root_of_unity(5, k) for k in range(1, 5)),
            Cyclotomic.zero())
    assert s == Cyclotomic.from_rational(-1)


def test_conductor_reduction():
    assert Cyclotomic.root_of_unity(2) == Cyclotomic.from_rational(-1)
    assert Cyclotomic.root_of_unity(12, 2).n == 3          # zeta_12^2 = zeta_6
    sqrt2 = Cyclotomic.root_of_unity(8) + Cyclotomic.root_of_unity(8, 7)
    assert sqrt2 * sqrt2 == Cyclotomic.from_rational(2)
    # sum over primitive ninth roots is mu(9) = 0
    s = sum((Cyclotomic.root_of_unity(9, k) for k in (1, 2, 4, 5, 7, 8)),
            Cyclotomic.zero())
    assert s.is_zero() and s.n == 1


def test_conjugation_involution_and_realness():
    z = Cyclotomic.root_of_unity(7, 3)
    assert z.conjugate().conjugate() == z
    r = z + z.conjugate()
    assert r.is_real() and not r.is_rational()
    assert (z * z.conjugate()) == Cyclotomic.one()


def test_tokens_roundtrip():
    vals = [Cyclotomic.from_rational(Fraction(-3, 7)),
            Cyclotomic.from_rational(5),
            Cyclotomic.root_of_unity(5) + Cyclotomic.root_of_unity(5, 4),
            Cyclotomic.root_of_unity(8) * 3 - Cyclotomic.from_rational(Fraction(1, 2))]
    for v in vals:
        assert Cyclotomic.parse_token(v.token()) == v


@st.composite
def small_cyclotomics(draw):
    n = draw(st.sampled_from([1, 3, 4, 5, 8, 12]))
    terms = draw(st.dictionaries(st.integers(0, n - 1),
                                 st.integers(-3, 3), max_size=3))
    return Cyclotomic(n, {k: Fraction(c) for k, c in terms.items()})


@settings(max_examples=80, deadline=None)
@given(small_cyclotomics(), small_cyclotomics(), small_cyclotomics())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@settings(max_examples=40, deadline=None)
@given(small_cyclotomics())
def test_abs_squared_real(a):
    assert a.abs_squared().is_real()
    assert Cyclotomic.parse_token(a.token()) == a


def test_galois_requires_coprime():
    z = Cyclotomic.root_of_unity(6)
    with pytest.raises(ValueError):
        z.galois(3)
