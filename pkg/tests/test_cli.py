import json

import pytest

from pdcodes import parse
from pdcodes.cli import run

from conftest import HOPF_TEXT, MIRROR_TREFOIL_TEXT, TREFOIL_TEXT

KINKED_MOVE = '{"kind": "R1a", "direction": "insert", "site": [[1, 1]]}'


def out_of(capsys):
    return capsys.readouterr().out


def test_validate_ok(capsys):
    assert run(["validate", TREFOIL_TEXT]) == 0
    assert "valid: n=3 mu=1" in out_of(capsys)


def test_validate_invalid_exits_1(capsys):
    assert run(["validate", "{[+1,-1,-2,+3]}"]) == 1
    assert "invalid" in out_of(capsys)


def test_syntax_error_exits_2(capsys):
    assert run(["validate", "{[+1,-1"]) == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        run(["frobnicate"])
    assert excinfo.value.code == 2


def test_info_json(capsys):
    assert run(["--format", "json", "info", TREFOIL_TEXT]) == 0
    data = json.loads(out_of(capsys))
    assert data["chi"] == 2
    assert data["spherical"] is True


def test_faces_text(capsys):
    assert run(["faces", TREFOIL_TEXT]) == 0
    assert len(out_of(capsys).strip().splitlines()) == 5


def test_convert_roundtrip(capsys):
    assert run(["convert", TREFOIL_TEXT, "--to", "knottheory"]) == 0
    kt = out_of(capsys).strip()
    assert kt.startswith("PD[")
    assert run(["convert", kt, "--to", "paper"]) == 0
    roundtripped = out_of(capsys).strip()
    assert parse(roundtripped, "paper") == parse(TREFOIL_TEXT, "paper")


def test_act_mirror(capsys):
    assert run(["act", TREFOIL_TEXT, "--gamma", "(-1; -1; id)"]) == 0
    mirrored = out_of(capsys).strip()
    assert parse(mirrored, "paper") == parse(MIRROR_TREFOIL_TEXT, "paper")


def test_stabilizer(capsys):
    assert run(["--format", "json", "stabilizer", HOPF_TEXT]) == 0
    assert json.loads(out_of(capsys))["order"] == 2


def test_apply_and_equiv(capsys, tmp_path):
    assert run(["apply", TREFOIL_TEXT, "--move", KINKED_MOVE]) == 0
    kinked = out_of(capsys).strip()
    assert run(["--format", "json", "equiv", TREFOIL_TEXT, kinked,
                "--max-crossings", "4"]) == 0
    data = json.loads(out_of(capsys))
    assert data["status"] == "found"
    assert len(data["sequence"]["steps"]) == 1

    seq_file = tmp_path / "seq.json"
    seq_file.write_text(json.dumps(data["sequence"]))
    assert run(["apply", "--sequence", str(seq_file)]) == 0
    assert out_of(capsys).strip() == kinked


def test_equiv_not_found_still_exit_0(capsys):
    assert run(["--format", "json", "equiv", TREFOIL_TEXT, MIRROR_TREFOIL_TEXT,
                "--max-crossings", "6"]) == 0
    data = json.loads(out_of(capsys))
    assert data["status"] == "not_found"
    assert data["reason"] == "exhausted"


def test_batch(capsys, tmp_path):
    table = tmp_path / "table.json"
    table.write_text(json.dumps([
        {"name": "trefoil", "notation": TREFOIL_TEXT},
        {"name": "hopf", "notation": HOPF_TEXT},
    ]))
    assert run(["batch", "--in", str(table)]) == 0
    lines = out_of(capsys).strip().splitlines()
    assert lines[0] == "name,n,mu,chi,genus,spherical,stabilizer"
    assert lines[1] == "trefoil,3,1,2,0,True,1"
    assert lines[2] == "hopf,2,2,2,0,True,2"


def test_random_is_seed_deterministic(capsys):
    assert run(["random", "--seed", "7", "--steps", "5"]) == 0
    first = out_of(capsys)
    assert run(["random", "--seed", "7", "--steps", "5"]) == 0
    assert out_of(capsys) == first
    assert run(["validate", first.strip()]) == 0


def test_gauss(capsys):
    assert run(["gauss", TREFOIL_TEXT]) == 0
    text = out_of(capsys).strip()
    assert text.count("U") == 3 and text.count("O") == 3


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(TREFOIL_TEXT))
    assert run(["validate", "-"]) == 0
    assert "valid" in out_of(capsys)


def test_file_input(capsys, tmp_path):
    path = tmp_path / "code.txt"
    path.write_text(TREFOIL_TEXT)
    assert run(["info", "--in", str(path)]) == 0
    assert "chi=2" in out_of(capsys)
