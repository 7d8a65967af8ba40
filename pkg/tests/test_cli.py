import io
import json
import subprocess
import sys

import pytest

from beatty_dcs import cli, documents
from beatty_dcs.core import BeattySystem

SEVEN_DOC = {"p": 7, "sequences": [
    {"q": 4, "offset_num": 0, "offset_den": 1},
    {"q": 2, "offset_num": -1, "offset_den": 1},
    {"q": 1, "offset_num": -3, "offset_den": 1},
], "name": "three-sequence example"}


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def seven_file(tmp_path):
    path = tmp_path / "seven.json"
    path.write_text(json.dumps(SEVEN_DOC))
    return str(path)


def test_verify_mod7(seven_file):
    code, text = run(["verify", seven_file])
    doc = json.loads(text)
    assert code == 0 and doc["ok"] is True
    assert doc["assignment"] == [0, 0, 1, 0, 2, 0, 1]


def test_verify_density_failure(tmp_path):
    bad = dict(SEVEN_DOC, sequences=SEVEN_DOC["sequences"][:2])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, text = run(["verify", str(path)])
    assert code == 1 and json.loads(text)["failure"] == "density"


def test_verify_double_cover_reports_residue(tmp_path):
    bad = {"p": 7, "sequences": [{"q": 4, "offset_num": 0}, {"q": 2, "offset_num": 0},
                                 {"q": 1, "offset_num": -3}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, text = run(["verify", str(path)])
    doc = json.loads(text)
    assert code == 1 and doc["failure"] == "double-cover" and doc["residue"] == 0


@pytest.mark.parametrize("text,field", [
    ("not json", "<document>"),
    ('{"sequences": []}', "p"),
    ('{"p": 7}', "sequences"),
    ('{"p": 7, "sequences": [{"q": 4}]}', "sequences[0].offset_num"),
    ('{"p": 7, "sequences": [{"q": 4, "offset_num": 0, "offset_den": 0}]}', "sequences[0].offset_den"),
    ('{"p": 7, "sequences": [{"q": 7, "offset_num": 0}]}', "sequences[0]"),
    ('{"p": 6, "sequences": [{"q": 4, "offset_num": 0}]}', "sequences[0]"),
    ('{"p": 7, "sequences": [{"q": "4", "offset_num": 0}]}', "sequences[0].q"),
])
def test_parse_errors_name_field(text, field, tmp_path, capsys):
    with pytest.raises(documents.DocumentError) as err:
        documents.parse_system(text)
    assert err.value.field == field
    path = tmp_path / "x.json"
    path.write_text(text)
    code, _ = run(["verify", str(path)])
    assert code == 2
    assert field in capsys.readouterr().err


def test_missing_file_is_input_error():
    code, _ = run(["verify", "/nonexistent/file.json"])
    assert code == 2


def test_fraenkel_pipe_verify(monkeypatch):
    for n in (2, 4, 5, 10):
        code, text = run(["fraenkel", "--n", str(n)])
        assert code == 0
        assert json.loads(text)["p"] == 2**n - 1
        code, cert = run(["verify", "-"], stdin=text, monkeypatch=monkeypatch)
        assert code == 0 and json.loads(cert)["ok"]


def test_fraenkel_out_of_range():
    assert run(["fraenkel", "--n", "40"])[0] == 2


def test_window_check(seven_file):
    code, text = run(["verify", "--window", "30", seven_file])
    wc = json.loads(text)["window_check"]
    assert code == 0
    assert wc == {"window": 30, "uncovered": 0, "double_covered": 0,
                  "first_violation": None, "consistent": True}


def test_window_check_on_failure(tmp_path):
    bad = {"p": 7, "sequences": [{"q": 4, "offset_num": 0}, {"q": 2, "offset_num": 0},
                                 {"q": 1, "offset_num": -3}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, text = run(["verify", "--window", "10", str(path)])
    wc = json.loads(text)["window_check"]
    assert code == 1 and wc["consistent"] and wc["double_covered"] > 0 and wc["uncovered"] > 0


def test_blocks_normalized(seven_file):
    code, text = run(["blocks", "--normalize", seven_file])
    doc = json.loads(text)
    assert code == 0 and doc["normalized"]
    assert [b["elements"] for b in doc["blocks"]] == [[0, 1, 2, 3], [4, 6], [5]]
    assert [b["qtilde"] for b in doc["blocks"]] == [1, 2, 4]
    assert [b["btilde"] for b in doc["blocks"]] == [0, 4, 5]


def test_blocks_unnormalized(seven_file):
    code, text = run(["blocks", seven_file])
    doc = json.loads(text)
    assert [(b["start"], b["diff"], b["len"]) for b in doc["blocks"]] == [(0, 5, 4), (6, 3, 2), (4, 6, 1)]
    assert "qtilde" not in doc["blocks"][0]


def test_blocks_reorders_before_normalizing(tmp_path):
    doc = dict(SEVEN_DOC, sequences=[SEVEN_DOC["sequences"][i] for i in (2, 0, 1)])
    path = tmp_path / "perm.json"
    path.write_text(json.dumps(doc))
    code, text = run(["blocks", "--normalize", str(path)])
    out = json.loads(text)
    assert [b["index"] for b in out["blocks"]] == [1, 2, 0]
    assert out["blocks"][0]["elements"] == [0, 1, 2, 3]


def test_blocks_fraenkel_four(monkeypatch):
    _, text = run(["fraenkel", "--n", "4"])
    code, out = run(["blocks", "--normalize", "-"], stdin=text, monkeypatch=monkeypatch)
    assert json.loads(out)["blocks"][0]["elements"] == list(range(8))


def test_blocks_non_dcs(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(dict(SEVEN_DOC, sequences=SEVEN_DOC["sequences"][:2])))
    assert run(["blocks", str(path)])[0] == 1


def test_tg_mod13_example():
    code, text = run(["tg", "--a", "0", "--d", "7", "--q", "4", "--p", "13", "--q1", "5"])
    doc = json.loads(text)
    assert code == 0
    assert doc["points"] == [0, 1, 7, 8]
    assert (doc["profile"]["c"], doc["profile"]["G"], doc["profile"]["k"]) == (1, 6, 2)
    assert doc["c2"]["lhs"] == doc["c2"]["rhs"] == 4 and doc["c2"]["satisfied"]


def test_tg_ap_examples():
    doc = json.loads(run(["tg", "--a", "0", "--d", "1", "--q", "3", "--p", "7"])[1])
    assert doc["ap_structure"]["kind"] == "single-AP" and doc["ap_structure"]["diff"] == 1
    assert "c2" not in doc
    doc = json.loads(run(["tg", "--a", "0", "--d", "8", "--q", "6", "--p", "15"])[1])
    assert doc["ap_structure"]["kind"] == "two-APs" and doc["ap_structure"]["diff"] == 1
    assert doc["ap_structure"]["matches_corollary"]


def test_tg_c2_not_applicable():
    doc = json.loads(run(["tg", "--a", "0", "--d", "7", "--q", "4", "--p", "13", "--q1", "9"])[1])
    assert doc["c2"]["applicable"] is False


@pytest.mark.parametrize("argv", [
    ["tg", "--a", "0", "--d", "5", "--q", "3", "--p", "15"],
    ["tg", "--a", "0", "--d", "1", "--q", "9", "--p", "7"],
    ["tg", "--a", "0", "--d", "1", "--q", "3"],
    ["search", "--n", "3"],
    ["nonsense"],
])
def test_invalid_arguments_exit_2(argv):
    assert run(argv)[0] == 2


def test_search_n4():
    code, text = run(["search", "--n", "4", "--pmax", "60"])
    doc = json.loads(text)
    assert code == 0 and doc["complete"]
    assert doc["families"] == [{"p": 15, "q": [8, 4, 2, 1]}]
    assert "4 <= p <= 60" in doc["bound"]
    assert len(doc["per_p"]) == 57


def test_search_n2_multiple():
    doc = json.loads(run(["search", "--n", "2", "--pmax", "10"])[1])
    assert len(doc["certificates"]) > 1
    assert {"p": 3, "q": [2, 1]} in doc["families"]


def test_search_budget_exit_3():
    code, text = run(["search", "--n", "4", "--pmax", "40", "--budget", "100"])
    doc = json.loads(text)
    assert code == 3 and doc["complete"] is False


def test_search_allow_multiplicity():
    doc = json.loads(run(["search", "--n", "3", "--pmax", "8", "--allow-multiplicity"])[1])
    assert doc["config"]["require_distinct"] is False
    assert any(len(set(f["q"])) < 3 for f in doc["families"])


def test_round_trip_canonical():
    text = json.dumps(SEVEN_DOC)
    once = documents.canonical(text)
    assert documents.canonical(once) == once
    system, meta = documents.parse_system(once)
    assert isinstance(system, BeattySystem) and meta == {"name": "three-sequence example"}


def test_rational_offsets_round_trip():
    text = '{"p": 5, "sequences": [{"q": 3, "offset_num": 4, "offset_den": 6}, {"q": 2, "offset_num": 1}]}'
    once = documents.canonical(text)
    doc = json.loads(once)
    assert doc["sequences"][0] == {"q": 3, "offset_num": 2, "offset_den": 3}
    assert documents.canonical(once) == once


def test_output_is_stable(seven_file):
    assert run(["blocks", "--normalize", seven_file]) == run(["blocks", "--normalize", seven_file])
    text = run(["verify", seven_file])[1]
    assert text.endswith("\n") and "\r" not in text


def test_console_script_entry_point(seven_file):
    proc = subprocess.run([sys.executable, "-m", "beatty_dcs", "verify", seven_file],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["ok"]
