import json
import subprocess
import sys

import pytest

from eigenone.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_induce_g2_long_a1(capsys):
    code, out = run_cli(["induce", "--type", "G2", "--parabolic", "long-A1"],
                        capsys)
    assert code == 0
    payload = json.loads(out)
    rows = {r["label"]: r["multiplicity"] for r in payload["decomposition"]}
    assert rows.get("phi''{1,3}") == 1
    code, out = run_cli(["induce", "--type", "G2", "--parabolic", "short-A1"],
                        capsys)
    payload = json.loads(out)
    rows = {r["label"]: r["multiplicity"] for r in payload["decomposition"]}
    assert "phi''{1,3}" not in rows


def test_induce_regular(capsys):
    code, out = run_cli(["induce", "--type", "A", "--rank", "3",
                         "--parabolic", "none"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert all(r["multiplicity"] == r["degree"]
               for r in payload["decomposition"])


def test_orbits_commands(capsys):
    code, out = run_cli(["orbits", "--type", "E6", "--iota", "graph"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert len(payload["orbits"]) == 3
    assert all(o["has_stable_element"] for o in payload["orbits"])
    code, out = run_cli(["orbits", "--type", "A1"], capsys)
    payload = json.loads(out)
    assert len(payload["orbits"]) == 2


def test_orbits_byte_stable(capsys):
    _, out1 = run_cli(["orbits", "--type", "D4", "--iota", "triality"], capsys)
    _, out2 = run_cli(["orbits", "--type", "D4", "--iota", "triality"], capsys)
    assert out1 == out2


def test_chartab_roundtrip(capsys):
    code, out = run_cli(["chartab", "a5"], capsys)
    assert code == 0
    from eigenone.chartab import CharacterTable
    tab = CharacterTable.from_text(out)
    assert sorted(tab.degrees) == [1, 3, 3, 4, 5]
    assert tab.to_text() == out


def test_e1_instance_file(tmp_path, capsys):
    f = tmp_path / "inst.json"
    f.write_text(json.dumps({"group": "a5",
                             "character": {"degree": 5},
                             "automorphism":
                                 "imgs:[(1,2,3,4,0);(1,2,0,3,4)]"}))
    # identity images: valid automorphism spec listing generator images
    code, out = run_cli(["e1", str(f)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "VerifiedE1"
    assert payload["character_degree"] == 5


def test_e1_exit_code_on_frobenius(tmp_path, capsys):
    f = tmp_path / "inst.json"
    f.write_text(json.dumps({"group": "psl2:8",
                             "character": {"degree": 7, "index": 0},
                             "automorphism": "frobenius"}))
    code, out = run_cli(["e1", str(f)], capsys)
    assert code == 0
    assert json.loads(out)["verdict"] == "VerifiedE1"


def test_data_validate_shipped_e7(tmp_path, capsys):
    import os
    path = os.path.join(os.path.dirname(__file__), "..", "src", "eigenone",
                        "data", "weyl_e7.ct")
    if not os.path.exists(path):
        pytest.skip("e7 data file not generated yet")
    code, out = run_cli(["data", "validate", path, "--type", "E7"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 2903040
    assert payload["classes"] == 60
    assert payload["column_orthogonality"] == "ok"


def test_cli_entrypoint_subprocess():
    out = subprocess.run([sys.executable, "-m", "eigenone.cli", "orbits",
                          "--type", "A1", "--format", "md"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "mod-2 orbits" in out.stdout
