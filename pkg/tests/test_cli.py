import io
import json
import subprocess
import sys

import pytest

from trumpkit.cli import dumps, format_float, run

from golden_cases import CASES, EXITS, FIXTURES, GOLDEN, argv


def call(args):
    buf = io.StringIO()
    code = run(args, buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, text = call(argv(name))
    assert code == EXITS[name]
    assert text.encode() == (GOLDEN / name).read_bytes()


@pytest.mark.parametrize("name", ["triple_mlocc.json", "triple_approximate.json",
                                  "quad_mlocc.json", "quad_catalyst_build.json"])
@pytest.mark.parametrize("threads", [2, 4])
def test_thread_count_invariant(name, threads):
    assert call(argv(name, threads))[1].encode() == (GOLDEN / name).read_bytes()


def test_subprocess_matches_in_process():
    args = argv("quad_mlocc.json")
    proc = subprocess.run([sys.executable, "-m", "trumpkit", *args], capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "quad_mlocc.json").read_bytes()


def test_majorize_examples():
    code, text = call(["majorize", "--x", "[0.4,0.4,0.2]", "--y", "[0.5,0.25,0.25]"])
    assert code == 1
    assert json.loads(text)["verdict"]["firstViolation"] == 2
    assert call(["majorize", "--x", "[1]", "--y", "[1]"])[0] == 0


def test_mlocc_jp():
    code, text = call(["mlocc", "--file", str(FIXTURES / "quad.json"), "--n-max", "5", "--verify"])
    assert code == 0 and json.loads(text)["n"] == 3


def test_exact_mode_from_env(monkeypatch):
    monkeypatch.setenv("TRUMPKIT_MODE", "exact")
    code, text = call(["majorize", "--x", "[0.4,0.4,0.2]", "--y", "[0.5,0.25,0.25]"])
    out = json.loads(text)
    assert out["mode"] == "exact" and out["verdict"]["gap"] == 0.05


def test_flag_overrides_file(tmp_path):
    code, text = call(["mlocc", "--file", str(FIXTURES / "quad.json"), "--n-max", "2"])
    assert code == 1 and json.loads(text)["nReached"] == 2


def test_catalyst_writes_z_file(tmp_path):
    zf = tmp_path / "z.json"
    code, text = call(["catalyst", "--x", "[0.4,0.4,0.1,0.1]", "--y", "[0.5,0.25,0.25,0]",
                       "--z-file", str(zf)])
    out = json.loads(text)
    assert code == 0 and out["n"] == 3 and "z" not in out
    assert len(json.loads(zf.read_text())) == 48


def test_catalyst_build_not_found():
    code, text = call(["catalyst", "--x", "[0.4,0.4,0.2]", "--y", "[0.5,0.25,0.25]",
                       "--n-max", "3"])
    assert code == 1 and json.loads(text)["found"] is False


def test_approximate_requires_eps():
    assert call(["approximate", "--x", "[0.4,0.4,0.2]", "--y", "[0.5,0.25,0.25]"])[0] == 2


def test_approximate_precondition_reported():
    code, text = call(["approximate", "--x", "[0.6,0.4]", "--y", "[0.5,0.5]", "--eps", "0.01"])
    assert code == 1 and json.loads(text)["found"] is False


def test_ldp_json():
    code, text = call(["ldp", "--x", "[0.3,0.3,0.3]", "--y", "[0.5,0.3,0.2]", "--emit", "json",
                       "--t-points", "9"])
    out = json.loads(text)
    assert code == 0 and out["dominated"] and len(out["rows"]) == 9


def test_kyfan():
    code, text = call(["kyfan", "--x", "[0.4,0.4,0.2]", "--y", "[0.5,0.25,0.25]"])
    out = json.loads(text)
    assert code == 1 and out["normsA"][1] == pytest.approx(0.8)


def test_corpus_seeded():
    a = call(["corpus", "--seed", "3", "--count", "5"])[1]
    assert a == call(["corpus", "--seed", "3", "--count", "5"])[1]
    assert len(json.loads(a)["instances"]) == 5


@pytest.mark.parametrize("args", [
    ["majorize", "--x", "[0.4,", "--y", "[1]"],
    ["majorize", "--x", "[-0.5, 1.5]", "--y", "[1]"],
    ["majorize", "--x", "[0.5]", "--y", "[1]", "--mode", "decimal"],
    ["nosuch"],
])
def test_bad_input_exit_two(args):
    assert call(args)[0] == 2


def test_unknown_instance_key_rejected(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"x": [1], "y": [1], "w": [1]}')
    assert call(["majorize", "--file", str(f)])[0] == 2


def test_float_format():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(float("inf")) == "Infinity"
    assert dumps({"a": [1, 0.5, None, True]}) == '{"a": [1, 0.5, null, true]}'
