from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hjflab.gaussian import (GaussRat, HalfLattice, I, Rep, UNITS, conj, lattice_points, norm, reduce,
                             representatives, unit_index)

from oracles import cmul

rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)
pairs = st.tuples(rats, rats)


def as_pair(g):
    return (g.re, g.im)


def test_norms():
    assert norm(GaussRat(1, 1)) == 2
    assert norm(GaussRat(0, Fraction(1, 2))) == Fraction(1, 4)
    assert norm(HalfLattice(3, 1)) == Fraction(5, 2)


def test_representatives_index1():
    assert set(representatives(1)) == {(0, 0), (0, 1), (1, 0), (1, 1)}


@pytest.mark.parametrize("m,size", [(1, 4), (2, 16), (3, 36)])
def test_representative_counts(m, size):
    assert len(representatives(m)) == size == 4 * m * m


def test_reduce_and_units():
    assert reduce((5, 1), 2) == Rep(1, 1)
    assert unit_index(I, (1, 0), 1) == Rep(0, 1)
    assert unit_index(-1, (1, 3), 2) == Rep(3, 1)
    with pytest.raises(ValueError):
        unit_index(GaussRat(1, 1), (1, 0), 1)


def test_lattice_points_match_brute_force():
    bound = Fraction(6)
    pts = lattice_points((1, 0), 2, bound)
    brute = sorted((Fraction(a * a + b * b, 8), a, b)
                   for a in range(-20, 21) for b in range(-20, 21)
                   if (a - 1) % 4 == 0 and b % 4 == 0 and Fraction(a * a + b * b, 8) < bound)
    assert pts == brute


@given(pairs, pairs)
def test_ring_operations_match_fraction_pairs(p, q):
    a, b = GaussRat(*p), GaussRat(*q)
    assert as_pair(a + b) == (p[0] + q[0], p[1] + q[1])
    assert as_pair(a - b) == (p[0] - q[0], p[1] - q[1])
    assert as_pair(a * b) == cmul(p, q)
    assert as_pair(conj(a)) == (p[0], -p[1])
    assert norm(a) == p[0] ** 2 + p[1] ** 2


@given(pairs, pairs)
def test_division_inverts_multiplication(p, q):
    a, b = GaussRat(*p), GaussRat(*q)
    if b:
        assert (a / b) * b == a
        assert b * b.inverse() == 1


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(1, 4))
def test_unit_orbits_stay_in_residue_system(a, b, m):
    s = reduce((a, b), m)
    assert 0 <= s.a < 2 * m and 0 <= s.b < 2 * m
    orbit = {unit_index(e, s, m) for e in UNITS}
    assert all(unit_index(e, t, m) in orbit for e in UNITS for t in orbit)
