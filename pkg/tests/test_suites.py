import json

import pytest

from hjflab.errors import FormatError
from hjflab.hermitian import scalar_mul
from hjflab.jacobi import theta_classical
from hjflab.modular import eisenstein
from hjflab.serialize import load_external, to_json
from hjflab.suites import (CATALOG, GATED, SASAKI_FILES, Check, SuiteReport, form, matrix_rank,
                           run_suite, wronskian_constant)

from reports import PREC, report

UNGATED = [n for n in CATALOG if n not in GATED]


@pytest.mark.parametrize("name", UNGATED)
def test_suite_passes(name):
    r = report(name)
    assert r.status == "PASS", r.to_text()
    assert r.checks


def test_gated_suite_skips_without_data(tmp_path):
    r = run_suite("sasaki-identities", PREC, data_dir=str(tmp_path))
    assert r.status == "SKIPPED" and r.passed
    assert "phi_8_1" in r.to_json()["reason"]


def _write(path, obj, source="synthetic test data"):
    d = to_json(obj)
    if source is not None:
        d["source"] = source
    path.write_text(json.dumps(d))


def _synthetic_dir(tmp_path, source="synthetic test data"):
    P = 12
    phi41 = form("phi41", P)
    E4 = eisenstein(4, P)
    _write(tmp_path / SASAKI_FILES["phi81"], scalar_mul(E4, phi41, 4), source)
    _write(tmp_path / SASAKI_FILES["phi121"], scalar_mul(E4 * E4, phi41, 8), source)
    _write(tmp_path / SASAKI_FILES["E41"], theta_classical(1, 0, P).with_weight(4), source)
    _write(tmp_path / SASAKI_FILES["E61"], theta_classical(1, 1, P).with_weight(6), source)
    return tmp_path


def test_gated_suite_reads_supplied_data(tmp_path):
    # the synthetic forms do not satisfy the identities: the suite must run and fail with witnesses
    r = run_suite("sasaki-identities", 12, data_dir=str(_synthetic_dir(tmp_path)))
    assert r.status == "FAIL"
    assert all(c.passed for c in r.checks if "type and index" in c.label)
    bad = r.failures()[0]
    assert {"at", "have", "expected"} <= set(r.to_json()["checks"][r.checks.index(bad)]["witness"])


def test_gated_suite_rejects_unsourced_data(tmp_path):
    d = _synthetic_dir(tmp_path, source=None)
    with pytest.raises(FormatError):
        load_external(str(d / SASAKI_FILES["phi81"]))
    r = run_suite("sasaki-identities", 12, data_dir=str(d))
    assert r.status == "FAIL" and r.checks[0].label == "input data"


def test_reports_are_deterministic():
    a = json.dumps(run_suite("wronskian", 30).to_json())
    b = json.dumps(run_suite("wronskian", 30).to_json())
    assert a == b
    assert "wall_time" not in a
    assert "wall_time" in run_suite("wronskian", 30).to_json(timing=True)


@pytest.mark.parametrize("name", ["theta-constants", "chi60", "prop-phi42", "lemma-2to4"])
def test_raising_precision_keeps_passing(name):
    assert run_suite(name, 30).status == report(name).status == "PASS"


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")


def test_report_rendering():
    r = SuiteReport("demo", 40, [Check("ok", True), Check("bad", False, {"at": 1})])
    assert r.status == "FAIL" and not r.passed
    assert "FAIL bad" in r.to_text()


def test_rank_over_gaussian_rationals():
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 0], [0, 1], [1, 1]]) == 2


def test_wronskian_constant_is_three_sixtyfourths():
    from fractions import Fraction
    assert wronskian_constant(30) == Fraction(3, 64)
