from fractions import Fraction

import pytest

from hjflab.errors import InsufficientPrecision, UnsupportedRange
from hjflab.hermitian import build_index1_2mod4, restrict
from hjflab.jacobi import dev2
from hjflab.modular import (SpaceBasis, bernoulli, delta, dim_J, dims, eisenstein, membership, rank,
                            rank_audit, sequence_audit)

from oracles import e4, poly_mul

P = 30


def test_eisenstein_and_discriminant():
    E4, E6 = eisenstein(4, P), eisenstein(6, P)
    assert [E4[n] for n in range(3)] == [1, 240, 2160]
    assert (E4 ** 3 - E6 ** 2).agrees(delta(P).scale(1728))
    assert bernoulli(12) == Fraction(-691, 2730)


def test_eichler_zagier_dimensions_brute():
    # J_{k,1} = M_k E_{4,1} + M_{k-2} E_{6,1}-type count: dim M_k + dim S_{k+2}
    for k in range(4, 60, 2):
        assert dim_J(k, 1) == dims(k, "M") + dims(k + 2, "S")


def test_quoted_dimensions():
    assert dims(10, "hjf1") == 1
    assert dims(14, "hjf2") == 4
    assert dims(4, "hjf2") == 2
    assert dims(4, "J2") == 1
    assert dims(12, "S") == 1 and dims(2, "M") == 0


def test_unsupported_ranges():
    with pytest.raises(UnsupportedRange):
        dims(7, "hjf1")
    with pytest.raises(UnsupportedRange):
        dims(10, "J5")
    with pytest.raises(ValueError):
        dims(10, "nope")


def test_ranks():
    assert rank(4, 1) == 3 and rank(2, 1) == 4 and rank(4, 2) == 6
    for m in range(1, 11):
        assert rank(4, m) == m * m + 2
        assert rank(2, m) == 2 * (m * m + 1)


def test_membership():
    E4, E6 = eisenstein(4, P), eisenstein(6, P)
    res = membership(E4 * E6, SpaceBasis(10, False, P))
    assert res.ok and res.coords == [1]
    bad = membership(delta(P), SpaceBasis(10, False, P))
    assert not bad.ok and bad.residual_exponent == 1
    with pytest.raises(InsufficientPrecision):
        membership(E4.truncate(1), SpaceBasis(4, False, P))


def test_membership_is_additive():
    B = SpaceBasis(24, False, P)
    f, g = B.basis[0].scale(3), B.basis[2].scale(-5)
    a, b, s = membership(f, B), membership(g, B), membership(f + g, B)
    assert [x + y for x, y in zip(a.coords, b.coords)] == s.coords


def test_second_development_coefficient():
    phi = build_index1_2mod4(10, SpaceBasis(12, True, P).basis[0], P)
    assert dev2(restrict(phi)).agrees(delta(P).scale(40))


def test_sequence_audits():
    r = sequence_audit("thm3.1", 10)
    assert [v for _, v in r.terms] == [1, -2, 1] and r.passed
    r = sequence_audit("thm4.4", 14)
    assert [v for _, v in r.terms] == [1, 1, -4, 3, -1] and r.passed
    r = sequence_audit("sect6", 16)
    assert [v for _, v in r.terms] == [8, -4, -2, -2] and r.passed
    with pytest.raises(UnsupportedRange):
        sequence_audit("thm3.1", 12)


def test_rank_excess_periodic():
    for m in (1, 2):
        for res in (0, 2):
            assert rank_audit(m, res).bounded


def test_sturm_basis_matches_oracle():
    B = SpaceBasis(8, False, 10)
    assert [B.basis[0][n] for n in range(10)] == poly_mul(e4(10), e4(10), 10)
