from fractions import Fraction

import pytest

from hjflab.errors import DecompositionError
from hjflab.jacobi import (JacobiExpansion, Lambda, assemble_classical, dev2, specialize_z0, taylor_psi,
                           theta_classical, theta_constants, theta_decompose_classical)
from hjflab.qseries import QSeries

from oracles import classical_theta_terms, gaussian_counts

P = 20


@pytest.mark.parametrize("m,mu", [(1, 0), (1, 1), (2, 3), (4, 5)])
def test_theta_terms_match_lattice_enumeration(m, mu):
    th = theta_classical(m, mu, P)
    got = {(n, r) for (n, r), c in th.items()}
    assert got == classical_theta_terms(m, mu, P)
    assert all(c == 1 for _, c in th.items())


def test_theta_11_first_terms():
    th = theta_classical(1, 1, 3)
    assert {(n, r) for (n, r), _ in th.items()} == {(Fraction(1, 4), 1), (Fraction(1, 4), -1),
                                                    (Fraction(9, 4), 3), (Fraction(9, 4), -3)}


def test_specialization_of_theta():
    assert specialize_z0(theta_classical(2, 0, P)).agrees(
        QSeries.from_terms({0: 1, 2: 2, 8: 2, 18: 2}, P))
    tc = theta_constants(P)
    # vartheta0 squared counts sums of two squares
    r2 = gaussian_counts(P)
    sq = tc.vartheta0 ** 2
    assert [sq[n] for n in range(P)] == r2
    assert specialize_z0(theta_classical(1, 1, P)).agrees(tc.vartheta1)


def test_taylor_coefficients():
    lead = taylor_psi(theta_classical(1, 1, P), 2).leading()
    assert lead == (Fraction(1, 4), 1)
    const = JacobiExpansion(4, 1, {(0, 0): 1}, 1, P)
    assert dev2(const).is_zero()


def test_lambda_pair():
    phi = theta_classical(1, 1, P)
    d0, d2 = Lambda(phi)
    assert d0.agrees(specialize_z0(phi))
    assert d2.agrees(dev2(phi).scale(2))


def test_classical_decomposition_round_trip():
    comps = theta_decompose_classical(theta_classical(2, 1, P))
    assert comps[1].agrees(QSeries.constant(1, P))
    assert all(comps[mu].is_zero() for mu in (0, 2, 3))
    h = {0: QSeries({0: 1, 1: 3}, 1, 10), 1: QSeries({0: 2}, 1, 10)}
    phi = assemble_classical(h, 1, 1)
    back = theta_decompose_classical(phi)
    assert back[0].agrees(h[0]) and back[1].agrees(h[1])


def test_decomposition_error_has_witness():
    bad = JacobiExpansion(None, 1, {(0, 0): 1, (4, 2): 5}, 4, 5)
    with pytest.raises(DecompositionError) as exc:
        theta_decompose_classical(bad)
    assert exc.value.witness is not None
