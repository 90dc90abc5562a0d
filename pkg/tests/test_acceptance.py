"""Acceptance criteria 1-12, one test per criterion.

Each test records a single PASS/FAIL line; the lines are printed together in
the terminal summary (see conftest.py).
"""

import io
import os
from fractions import Fraction

import pytest

from hjflab.cli import main
from hjflab.hermitian import restrict, xi_hat
from hjflab.jacobi import theta_constants
from hjflab.modular import delta, sequence_audit
from hjflab.qseries import eta_power
from hjflab.suites import (CATALOG, GATED, _CACHE, battery, chi60_constant, coefficient_matrix, form,
                           matrix_rank, run_suite, wronskian_constant)

from reports import PREC, report

RESULTS: dict[int, str] = {}


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def suites_pass(*names):
    bad = []
    total = 0
    for name in names:
        r = report(name)
        total += len(r.checks)
        if r.status != "PASS":
            bad.append(f"{name}: {r.failures()[0].label}")
    return not bad, (f"{total} checks in {', '.join(names)}" if not bad else "; ".join(bad))


def test_criterion_01_theta_constants():
    tc = theta_constants(PREC)
    a, b = tc.a, tc.b
    direct = (tc.x == a[0] + a[2] and tc.y == a[0] - a[2] and tc.z == a[1].scale(2)
              and all(b[mu] == b[-mu % 8] for mu in range(8)))
    ok, detail = suites_pass("theta-constants")
    record(1, ok and direct, detail)


def test_criterion_02_restriction_tables():
    record(2, *suites_pass("lemma-2to2", "lemma-2to4", "lemma-utheta"))


def test_criterion_03_index1_pipeline():
    audits = all(sequence_audit("thm3.1", k).passed for k in (10, 14, 18, 22))
    ok, detail = suites_pass("thm-index1-2mod4")
    record(3, ok and audits, detail)


def test_criterion_04_kernel_pipeline():
    audits = all(sequence_audit("thm4.4", k).passed for k in (6, 10, 14))
    ok, detail = suites_pass("thm-2mod4-ind2")
    record(4, ok and audits, detail)


def test_criterion_05_injectivity():
    rows = []
    for name in ("phi42", "phi42tilde", "phi41^2"):
        phi = form(name, PREC)
        rows.append((restrict(phi, 1), restrict(phi, "1+i")))
    # independent recomputation: the joint coefficient matrix of both restrictions has full rank
    mat = [a + b for a, b in zip(coefficient_matrix([r[0] for r in rows]),
                                 coefficient_matrix([r[1] for r in rows]))]
    full = matrix_rank(mat) == 3
    audits = all(sequence_audit("thm4.8", k).passed for k in (8, 12, 16, 20))
    ok, detail = suites_pass("thm-0mod4-ind2")
    record(5, ok and full and audits, detail)


def test_criterion_06_phi42_pair():
    record(6, *suites_pass("prop-phi42"))


def test_criterion_07_wronskian_and_chi60():
    consts = wronskian_constant(PREC) == Fraction(3, 64) and chi60_constant(PREC) == 1024
    ok, detail = suites_pass("wronskian", "chi60")
    record(7, ok and consts, detail + "; W = (3/64) eta^15, c6 = 1024")


def test_criterion_08_vanishing_orders():
    record(8, *suites_pass("vanishing-order"))


def test_criterion_09_xi_hat():
    xi = xi_hat(PREC)
    direct = (xi.agrees(eta_power(6, PREC).scale(Fraction(-1, 2)))
              and (delta(PREC) / xi).agrees(eta_power(18, PREC).scale(-2)))
    ok, detail = suites_pass("cor-xi-iso")
    record(9, ok and direct, detail)


def test_criterion_10_dimension_audits():
    record(10, *suites_pass("dims-audit", "ranks-audit", "sect6-identity"))


def test_criterion_11_invariant_battery():
    for name in CATALOG:
        if name not in GATED:
            report(name)
    names = sorted(key[1] for key in _CACHE if key[0] == "form" and key[2] == PREC)
    bad = []
    for name in names:
        for c in battery(name, form(name, PREC)):
            if not c.passed:
                bad.append(c.label)
    record(11, bool(names) and not bad,
           f"battery on {len(names)} constructed forms" if not bad else "; ".join(bad[:3]))


def test_criterion_12_gated_suite(tmp_path, monkeypatch):
    supplied = os.environ.get("HJF_DATA_DIR")
    skipped = run_suite("sasaki-identities", PREC, data_dir=str(tmp_path)).status == "SKIPPED"
    monkeypatch.delenv("HJF_DATA_DIR", raising=False)
    out = io.StringIO()
    code = main(["verify", "all", "--format", "text"], stdout=out, stderr=io.StringIO())
    detail = "without data: SKIPPED, verify all exits 0" if skipped and code == 0 else \
        f"without data: status skipped={skipped}, verify all exit {code}"
    ok = skipped and code == 0
    if supplied:
        r = run_suite("sasaki-identities", PREC, data_dir=supplied)
        ok = ok and r.status == "PASS"
        detail += f"; with data from HJF_DATA_DIR: {r.status}"
    else:
        detail += "; no external data supplied, identities (i)-(iii) not exercised"
    record(12, ok, detail)
