import io
import json

import pytest

from hjflab.cli import main
from hjflab.serialize import loads

from oracles import e4


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def pipe(*commands, prec="12"):
    text = ""
    for argv in commands:
        code, text, err = run(argv + ["--prec", prec], text)
        assert code == 0, err
    return text


def test_dims():
    assert run(["dims", "--k", "14", "--space", "hjf2"])[:2] == (0, "4\n")
    code, _, err = run(["dims", "--k", "7", "--space", "hjf1"])
    assert code == 3 and "unsupported range" in err


def test_build_then_taylor_coefficient():
    f = loads(pipe(["form", "build", "phi41"], ["op", "chi", "--alpha", "0", "--beta", "0"]))
    assert [f[n] for n in range(12)] == [2 * c for c in e4(12)]


def test_vanishing_order_output():
    assert pipe(["form", "from-cusp", "--k", "10", "--f", "0"], ["op", "vanish"]) == "2\n"


def test_kernel_restricts_to_zero():
    text = pipe(["form", "ker", "--k", "6", "--f", "0"], ["restrict", "--rho", "1"])
    assert loads(text).is_zero()


def test_d0_acts_on_restriction():
    text = pipe(["form", "from-cusp", "--k", "10", "--f", "0"], ["op", "d0"])
    assert loads(text).is_zero()


def test_scale_and_square():
    a = loads(pipe(["form", "build", "phi41"], ["form", "mul"]))
    assert (a.weight, a.index) == (8, 2)
    b = loads(pipe(["form", "build", "phi41"], ["form", "scale", "--by", "E4^2.Delta"]))
    assert b.weight == 24


def test_theta_commands_and_text_output():
    assert loads(pipe(["theta", "classical", "--m", "1", "--mu", "1"])).index == 1
    code, out, _ = run(["theta", "hermitian", "--m", "2", "--s", "1,1", "--prec", "8", "--format", "text"])
    assert code == 0 and out.startswith("HermitianExpansion weight=1 index=2")


def test_export_import_round_trip(tmp_path):
    text = pipe(["form", "build", "phi42tilde"])
    f = tmp_path / "f.json"
    assert run(["export", str(f)], text)[0] == 0
    code, out, _ = run(["import", str(f)])
    assert code == 0 and out == text


@pytest.mark.parametrize("argv,stdin,code", [
    (["op", "chi", "--alpha", "0", "--beta", "0"], '{"kind": "hjf",\n', 2),
    (["op", "chi"], "", 2),
    (["dims", "--k", "4", "--space", "hjf1", "--prec", "3"], "", 2),
    (["form", "from-cusp", "--k", "10", "--f", "5"], "", 3),
    (["form", "bogus"], "", 2),
    (["verify", "nope"], "", 2),
])
def test_error_exit_codes(argv, stdin, code):
    assert run(argv, stdin)[0] == code


def test_malformed_json_position():
    code, _, err = run(["op", "vanish"], '{"kind": "hjf",\n')
    assert code == 2 and "line 2 column 1" in err


def test_verify_single_suite():
    code, out, _ = run(["verify", "prop-det", "--prec", "30"])
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_verify_gated_suite_skips(tmp_path):
    code, out, _ = run(["verify", "sasaki-identities", "--data", str(tmp_path)])
    assert code == 0 and json.loads(out)["status"] == "SKIPPED"


def test_verify_all_exits_zero(monkeypatch):
    monkeypatch.delenv("HJF_DATA_DIR", raising=False)
    code, out, _ = run(["verify", "all", "--format", "text"])
    assert code == 0
    assert "sasaki-identities: SKIPPED" in out
    assert out.count(": PASS") == 18
