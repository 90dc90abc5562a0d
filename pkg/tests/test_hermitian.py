from fractions import Fraction

import pytest

from hjflab.errors import DecompositionError, SupportError
from hjflab.gaussian import Rep, representatives
from hjflab.hermitian import (ComponentVector, HermitianExpansion, assemble, build_index1_2mod4,
                              build_ker_pi1_2mod4, build_named, char_project, check_symmetries, d06,
                              extract, fill_by_units, mul_hjf, named_components, order_vanishing,
                              restrict, scalar_mul, taylor_chi, theta_hermitian, u_raise, xi_hat, xi_ops)
from hjflab.jacobi import specialize_z0, theta_classical, theta_constants
from hjflab.modular import SpaceBasis, delta, eisenstein
from hjflab.qseries import QSeries, eta_power, qderive

from oracles import e4, gaussian_counts, hermitian_theta_terms, phi41_components, phi41_coeff, sigma

P = 16


@pytest.fixture(scope="module")
def phi41():
    return build_named("phi41", P)


@pytest.fixture(scope="module")
def phi42():
    return build_named("phi42", P)


@pytest.mark.parametrize("m,s", [(1, (0, 0)), (1, (1, 0)), (2, (1, 3)), (2, (2, 2))])
def test_hermitian_theta_matches_enumeration(m, s):
    th = theta_hermitian(m, s, 8)
    got = {(Fraction(n, th.den), a, b) for (n, a, b) in th.coeffs}
    assert got == hermitian_theta_terms(m, *s, 8)


def test_theta_at_origin_counts_sums_of_two_squares():
    f = specialize_z0(restrict(theta_hermitian(1, (0, 0), P)))
    assert [f[n] for n in range(6)] == [1, 4, 4, 0, 4, 8]
    assert [f[n] for n in range(P)] == gaussian_counts(P)


def test_phi41_against_raw_theta_products(phi41):
    comps = phi41_components(8 * 6)
    for (n, a, b), c in phi41.coeffs.items():
        n8 = Fraction(n, phi41.den) * 8
        if n8 < 48:
            assert c == phi41_coeff(comps, int(n8), a, b), (n, a, b)


def test_extract_recovers_components(phi41):
    cv = extract(phi41)
    ref = named_components("phi41", P)
    for s in representatives(1):
        assert cv[s].agrees(ref[s])


def test_extract_theta_gives_indicator():
    cv = extract(theta_hermitian(2, (1, 2), 10))
    for s in representatives(2):
        want = QSeries.constant(1 if s == Rep(1, 2) else 0, 10)
        assert cv[s].agrees(want)


def test_extract_rejects_nondecomposable():
    bad = HermitianExpansion(4, 1, {(0, 0, 0): 1, (4, 2, 0): 7}, 4, 3)
    with pytest.raises(DecompositionError) as exc:
        extract(bad)
    assert exc.value.witness["have"] != exc.value.witness["expected"]


def test_support_law_enforced():
    cv = ComponentVector(4, 1, {(1, 0): QSeries.constant(1, 5)})
    with pytest.raises(SupportError):
        assemble(cv)
    with pytest.raises(SupportError):
        # weight 2 stabilizer of (1,1) under i forces h_{1,1} = -h_{1,1}
        fill_by_units({(1, 1): QSeries({0: 1}, 1, 5)}, 2, 1)


def test_index1_symmetries_for_k_2mod4():
    f = SpaceBasis(12, True, P).basis[0]
    phi = build_index1_2mod4(10, f, P)
    cv = extract(phi)
    assert cv[(0, 0)].is_zero() and cv[(1, 1)].is_zero()
    assert cv[(1, 0)].agrees(-cv[(0, 1)])
    assert cv[(0, 1)].agrees(eta_power(18, P).scale(-2))
    assert check_symmetries(cv).ok


def test_phi42_lies_in_trivial_character(phi42):
    rep = check_symmetries(extract(phi42))
    assert rep.ok and rep.character() == 0
    assert char_project(phi42, 0) == phi42
    total = char_project(phi42, 0)
    for a in (1, 2, 3):
        total = total + char_project(phi42, a)
    assert total == phi42


def test_restrictions_and_index_raising(phi41, phi42):
    assert restrict(build_named("phi42tilde", P), 1).agrees(restrict(phi42, 1))
    assert restrict(u_raise(phi41), 1).agrees(restrict(phi41, "1+i"))
    assert specialize_z0(restrict(u_raise(phi41))).agrees(specialize_z0(restrict(phi41)))
    assert restrict(phi42, 1).index == 2 and restrict(phi41, "1+i").index == 2


def test_taylor_coefficients_of_phi41(phi41):
    E4 = e4(P)
    chi00 = taylor_chi(phi41, 0, 0)
    assert [chi00[n] for n in range(P)] == [2 * c for c in E4]
    chi11 = taylor_chi(phi41, 1, 1)
    assert [chi11[n] for n in range(P)] == [120 * n * sigma(n, 3) for n in range(P)]
    xi11, xi22 = xi_ops(phi41)
    assert xi11.is_zero() and xi22.is_zero()
    assert xi_ops(scalar_mul(eisenstein(4, P), phi41, 4))[0].is_zero()


def test_parity_rule(phi41):
    for a in range(5):
        for b in range(5 - a):
            if (a - b - 4) % 4:
                assert taylor_chi(phi41, a, b).is_zero(), (a, b)


def test_d06_antisymmetric_in_z1_z2(phi42):
    conj = HermitianExpansion(phi42.weight, 2, {(n, a, -b): c for (n, a, b), c in phi42.coeffs.items()},
                              phi42.den, phi42.prec)
    assert taylor_chi(conj, 0, 6).agrees(d06(phi42))


def test_products(phi41):
    sq = mul_hjf(phi41, phi41)
    assert (sq.weight, sq.index) == (8, 2)
    assert taylor_chi(sq, 0, 0).agrees((eisenstein(4, P) ** 2).scale(4))


def test_index1_constructor_edge_cases():
    assert build_index1_2mod4(10, SpaceBasis(12, True, P).basis[0], P).weight == 10
    with pytest.raises(ValueError):
        build_index1_2mod4(8, delta(P), P)
    with pytest.raises(ValueError):
        build_index1_2mod4(10, eisenstein(12, P), P)  # not a cusp form
    zero = build_ker_pi1_2mod4(2, None, None, P)
    assert zero.is_zero()


def test_kernel_form_restricts_to_zero():
    f = SpaceBasis(12, True, P).basis[0]
    phi = build_ker_pi1_2mod4(6, f, None, P)
    assert restrict(phi, 1).is_zero()
    assert not phi.is_zero()


def test_order_of_vanishing(phi41):
    assert order_vanishing(phi41) == 0
    phi10 = build_index1_2mod4(10, SpaceBasis(12, True, P).basis[0], P)
    assert order_vanishing(phi10) == 2
    assert not taylor_chi(phi10, 2, 0).is_zero()
    assert taylor_chi(phi10, 1, 1).is_zero()
    assert order_vanishing(HermitianExpansion(4, 1, {}, 1, P)) == float("inf")
