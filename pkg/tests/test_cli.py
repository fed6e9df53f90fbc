import io
import json
import subprocess
import sys

import pytest

from contactsurgery.cfk import format_cfk, parse_cfk, staircase
from contactsurgery.cli import dumps, run

FAREY_GOLDEN = """{
  "command": "farey path",
  "inputs": {
    "from": 1,
    "oracle": false,
    "to": "12/7"
  },
  "results": {
    "back_slopes": [
      "1/1",
      "3/2",
      "5/3",
      "12/7"
    ],
    "bracket_updates": 5,
    "surgeries": [
      "2/1",
      "2/1",
      "7/4"
    ]
  },
  "version": "1",
  "warnings": [
    "path minimality is not verified"
  ]
}
"""


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call("--json", *argv)
    return code, json.loads(text), text


@pytest.fixture
def trefoil(tmp_path):
    path = tmp_path / "trefoil-right.cfk"
    path.write_text(format_cfk(staircase(1, "right")))
    return str(path)


@pytest.fixture
def bad_cfk(tmp_path):
    path = tmp_path / "bad.cfk"
    path.write_text("cfk v1\ngenerator a A=2\ngenerator b A=1\ngenerator c A=0\narrow a b h=0\narrow b c h=0\n")
    return str(path)


def test_farey_golden():
    code, text = call("--json", "farey", "path", "--from", "1", "--to", "12/7")
    assert code == 0
    assert text == FAREY_GOLDEN


def test_farey_text():
    code, text = call("farey", "path", "--from", "1", "--to", "12/7")
    assert code == 0
    assert "surgeries: 2/1 2/1 7/4" in text
    assert "back_slopes: 1/1 3/2 5/3 12/7" in text


def test_farey_slamdunk():
    code, data, _ = call_json("farey", "slamdunk", "--slope", "12/7", "--n", "1")
    assert code == 0
    assert data["results"] == {"meridian_slope": "-7/5", "negative": True}


def test_contact_verdict(trefoil):
    code, data, _ = call_json("contact", "verdict", "--slope", "2/1", trefoil)
    assert code == 0
    assert data["results"]["status"] == "NONVANISHING"
    assert data["results"]["certificate"]["gate"] == "n >= 2g check: g=1, n=2, ok"


def test_contact_delta(trefoil):
    code, data, _ = call_json("contact", "delta", trefoil)
    assert code == 0
    assert data["results"]["kernel_rank"] == 1
    assert data["results"]["witness"] == [["g1"]]


def test_validate_d_squared_violation(bad_cfk, capsys):
    code, data, _ = call_json("cfk", "validate", bad_cfk)
    assert code == 1
    assert data["error"]["error"] == "ValidationError"
    assert data["error"]["details"]["witness"] == ["a", "c"]
    assert "ValidationError" in capsys.readouterr().err


def test_validate_ok(trefoil):
    code, data, _ = call_json("cfk", "validate", trefoil)
    assert code == 0
    assert data["results"] == {"arrows": 2, "generators": 3, "maslov": True, "valid": True}


def test_hfk_and_genus(trefoil):
    _, data, _ = call_json("cfk", "hfk", trefoil)
    assert data["results"]["hfk"] == [{"alexander": s, "rank": 1} for s in (1, 0, -1)]
    _, data, _ = call_json("cfk", "genus", trefoil)
    assert data["results"] == {"fibered_like": True, "genus": 1}


def test_staircase_to_stdout_parses():
    code, text = call("cfk", "staircase", "--k", "2", "--hand", "left")
    assert code == 0
    assert parse_cfk(text) == staircase(2, "left")


def test_staircase_out(tmp_path):
    target = tmp_path / "t.cfk"
    code, _ = call("cfk", "staircase", "--k", "3", "--hand", "right", "--out", str(target))
    assert code == 0
    assert parse_cfk(target.read_text()) == staircase(3, "right")


def test_surgery_commands(trefoil):
    code, data, _ = call_json("--oracle", "surgery", "hf", "--n", "2", "--m", "3", trefoil)
    assert code == 0
    assert data["results"]["m"] == 1
    assert data["results"]["total"] == 1
    code, data, _ = call_json("surgery", "core-table", "--n", "2", trefoil)
    rows = data["results"]["rows"]
    assert [(r["rank_s"], r["rank_q"]) for r in rows] == [(1, 0), (0, 1)]
    code, data, _ = call_json("surgery", "lspace", "--n", "2", trefoil)
    assert data["results"]["certificate"] is True


def test_odd_window_warning(trefoil):
    _, data, _ = call_json("surgery", "core-table", "--n", "5", trefoil)
    assert any("length-n window -2..2" in w for w in data["warnings"])
    assert [r["m"] for r in data["results"]["rows"]] == [-2, -1, 0, 1, 2]


def test_slope_too_small(trefoil):
    code, data, _ = call_json("surgery", "hf", "--n", "1", "--m", "0", trefoil)
    assert code == 1
    assert data["error"]["error"] == "SlopeTooSmall"


def test_heegaard_commands(tmp_path):
    domain = tmp_path / "d.dom"
    domain.write_text("domain v1\nregion a mult=0\nregion b mult=1\ngenerator x corners=a,a,b,b\ngenerator y corners=a,a,a,a\n")
    code, data, _ = call_json("heegaard", "grading", str(domain), "--x", "x", "--y", "y")
    assert code == 0
    assert data["results"]["alexander_difference"] == "1/2"
    assert data["warnings"] == ["Alexander difference is not an integer"]
    _, data, _ = call_json("heegaard", "winding", "--a", "4", "--q", "6")
    assert data["results"] == {"distinct": False, "witness": [2, 3]}
    _, data, _ = call_json("heegaard", "cable", "--p", "6", "--P", "4")
    assert data["results"] == {"copies": 2, "order": 3}
    code, data, _ = call_json("heegaard", "grading", str(domain), "--x", "x", "--y", "zz")
    assert code == 1 and data["error"]["error"] == "UnknownGenerator"


@pytest.mark.parametrize(
    "argv",
    [
        ["farey", "path", "--from", "1", "--to", "x"],
        ["farey", "path", "--from", "1"],
        ["nonsense"],
        ["heegaard", "winding", "--a", "0", "--q", "3"],
        ["cfk", "staircase", "--k", "2", "--hand", "up"],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        run(argv, stdout=io.StringIO())
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv,variant",
    [
        (["farey", "path", "--from", "2", "--to", "1/2"], "SlopeNotAbove"),
        (["farey", "path", "--from", "1", "--to", "4/2"], "NonCoprime"),
        (["farey", "slamdunk", "--slope", "3/1", "--n", "3"], "Indeterminate"),
        (["cfk", "validate", "/nonexistent/file.cfk"], "ParseError"),
    ],
)
def test_domain_errors_exit_1(argv, variant):
    code, data, _ = call_json(*argv)
    assert code == 1
    assert data["error"]["error"] == variant


def test_json_round_trip(trefoil):
    for argv in (
        ["farey", "path", "--from", "1", "--to", "12/7"],
        ["contact", "verdict", "--slope", "5/2", trefoil],
        ["surgery", "core-table", "--n", "3", trefoil],
        ["cfk", "hfk", trefoil],
    ):
        _, data, text = call_json(*argv)
        assert dumps(data) == text


def test_global_flags_after_subcommand():
    code, text = call("farey", "path", "--json", "--from", "1", "--to", "2")
    assert code == 0
    assert json.loads(text)["results"]["surgeries"] == ["1/0"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "contactsurgery", "--json", "farey", "path", "--from", "1", "--to", "12/7"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == FAREY_GOLDEN
