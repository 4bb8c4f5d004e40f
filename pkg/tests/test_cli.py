import io
import json
import subprocess
import sys

import pytest

from nilpo.algparse import serialize_json, serialize_map, serialize_text
from nilpo.catalog import heisenberg, heisenberg_center_delta, witt
from nilpo.cli import run
from nilpo.exactlin import QQ, Matrix


def call(*argv, env_seed=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_der_chain():
    code, out, _ = call("der", "--catalog", "chain", "--n", "5")
    assert code == 0
    assert "dim Der = 2" in out


def test_check_and_series_json():
    code, out, _ = call("series", "--catalog", "witt", "--n", "5", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["nilindex"] == 5
    code, out, _ = call("check", "--catalog", "heisenberg", "--n", "2")
    assert code == 0 and "lie: True" in out


def test_char_2_degenerate_exit_1():
    code, out, err = call("locder", "construct", "--catalog", "heisenberg", "--n", "1", "--field", "F2")
    assert code == 1
    assert "degenerate in characteristic 2" in out + err


def test_gf3_no_scalar_exit_1():
    code, out, err = call("locaut", "construct", "--catalog", "heisenberg", "--n", "1", "--field", "F3")
    assert code == 1


def test_bad_epsilon_is_usage_error():
    code, _, err = call("locaut", "construct", "--catalog", "heisenberg", "--n", "1", "--epsilon", "1")
    assert code == 2 and err


def test_catalog_verify_s_z2():
    code, out, _ = call("catalog", "verify", "s_z2")
    assert code == 0
    assert "all facts pass" in out


def test_catalog_list_and_unknown():
    code, out, _ = call("catalog", "list")
    assert code == 0 and "witt" in out
    code, _, err = call("catalog", "verify", "nope")
    assert code == 2 and "heisenberg" in err


def test_seed_required_for_randomized_commands(monkeypatch):
    monkeypatch.delenv("NILPO_SEED", raising=False)
    code, _, err = call("locder", "construct", "--catalog", "heisenberg", "--samples", "5")
    assert code == 2 and "seed" in err
    monkeypatch.setenv("NILPO_SEED", "3")
    code, _, _ = call("locder", "construct", "--catalog", "heisenberg", "--samples", "5")
    assert code == 0


def test_json_output_is_reproducible():
    args = ("locder", "construct", "--catalog", "witt", "--n", "6", "--samples", "20", "--seed", "7",
            "--format", "json")
    first = call(*args)
    second = call(*args)
    assert first[0] == 0 and first[1] == second[1]
    obj = json.loads(first[1])
    assert obj["verified"] is True
    assert obj["certificate"]["type"] == "pure-local-derivation-certificate"


def test_locder_witness_and_falsify(tmp_path):
    h = heisenberg(1)
    alg = tmp_path / "h.alg"
    alg.write_text(serialize_text(h))
    m = tmp_path / "delta.json"
    m.write_bytes(serialize_map(heisenberg_center_delta(h)))
    code, out, _ = call("locder", "witness", "--input", str(alg), "--map", str(m), "--point", "1,0,1")
    assert code == 0
    code, out, _ = call("locder", "falsify", "--input", str(alg), "--map", str(m), "--seed", "1",
                        "--budget", "50")
    assert code == 0 and "does not prove" in out
    bad = tmp_path / "bad.json"
    # e0 -> e1 leaves the center, which no derivation does
    bad.write_bytes(serialize_map(Matrix(QQ, [[0, 0, 0], [0, 0, 1], [0, 0, 0]])))
    code, out, _ = call("locder", "falsify", "--input", str(alg), "--map", str(bad), "--seed", "1")
    assert code == 1 and "refuted" in out


def test_locder_probe_with_probe_file(tmp_path):
    probes = tmp_path / "p.txt"
    probes.write_text("1,1,1,1,0,0\n0,0,0,1,1,1\n")
    code, out, _ = call("locder", "probe", "--catalog", "c6", "--probes", str(probes))
    assert code == 0 and "LocDerEqualsDer" in out
    code, out, _ = call("locder", "probe", "--catalog", "heisenberg")
    assert code == 1 and "Inconclusive" in out


def test_aut_commands(tmp_path):
    w = witt(5)
    m = tmp_path / "ad.json"
    ad = Matrix(QQ, [[0] * 5, [0] * 5, [0, 1, 0, 0, 0], [0, 0, 2, 0, 0], [0, 0, 0, 3, 0]])
    m.write_bytes(serialize_map(ad))
    code, out, _ = call("aut", "exp", "--catalog", "witt", "--n", "5", "--map", str(m))
    assert code == 0
    code, out, _ = call("aut", "check", "--catalog", "witt", "--n", "5", "--map", str(m))
    assert code == 1
    code, out, _ = call("aut", "scale", "--catalog", "heisenberg", "--epsilon", "3")
    assert code == 0 and "9" in out


def test_exp_undefined_in_char_2(tmp_path):
    m = tmp_path / "ad2.json"
    from nilpo.deriv import inner_derivation
    from nilpo.exactlin import GF, unit_vector
    m.write_bytes(serialize_map(inner_derivation(witt(5, GF(2)), unit_vector(5, 1))))
    code, out, err = call("aut", "exp", "--catalog", "witt", "--n", "5", "--field", "F2", "--map", str(m))
    assert code == 1 and "2! is not invertible" in err


def test_locaut_witness_families(tmp_path):
    m = tmp_path / "nabla.json"
    m.write_bytes(serialize_map(Matrix.diagonal(QQ, [1, 1, 4])))
    base = ("locaut", "witness", "--catalog", "heisenberg", "--map", str(m), "--format", "json")
    code, out, _ = call(*base, "--point", "1,0,1", "--family", "theorem-cases")
    assert code == 0
    # Id + (e-1 -> 3 e0)
    assert json.loads(out)["witness"]["entries"][2] == ["3", "0", "1"]
    code, out, _ = call(*base, "--point", "1,0,1")
    assert code == 0
    # exp(N) is unipotent and cannot send e0 to 4 e0
    code, out, _ = call(*base, "--point", "0,0,1")
    assert code == 1
    code, out, _ = call(*base, "--point", "0,0,1", "--family", "theorem-cases")
    assert code == 0


def test_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("dim 3\n[e1,e9] = e2\n")
    code, _, err = call("der", "--input", str(bad))
    assert code == 2
    assert "2:" in err


def test_json_input(tmp_path):
    p = tmp_path / "w.json"
    p.write_bytes(serialize_json(witt(6)))
    code, out, _ = call("der", "--input", str(p))
    assert code == 0 and "dim Der = 9" in out


def test_missing_command_and_bad_flag():
    assert call()[0] == 2
    assert call("der", "--bogus")[0] == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "nilpo.cli", "catalog", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "heisenberg" in r.stdout
