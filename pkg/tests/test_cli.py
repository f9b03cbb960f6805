from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from parthom import cli


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_table_example28():
    code, text = run("table", "example28", "--p", "11", "--format", "json")
    assert code == 0
    rows = json.loads(text)["rows"]
    assert [r["count"] for r in rows] == [3, 18, 21]
    assert all(r["status"] == "PASS" for r in rows)
    assert rows[-1]["source"] == "example28/ASL-squares(1,11)/total"


def test_table_psl216_text():
    code, text = run("table", "psl216")
    assert code == 0
    assert "FAIL" not in text and text.count("PASS") == 12


def test_table_5hom_without_slow_skips_m24():
    code, text = run("table", "5hom", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    m12 = [r for r in rows if r["group"] == "M12"]
    assert [r["count"] for r in m12] == ["2", "2", "2", "5", "5", "8", "6", "30"]
    assert {r["status"] for r in rows if r["group"] == "M24"} == {"SKIP"}


def test_json_is_byte_identical():
    a = run("table", "3hom", "--format", "json")[1]
    b = run("table", "3hom", "--format", "json")[1]
    assert a == b
    c = run("closed", "AGL(1,8)", "3,2,1...", "--format", "json", "--seed", "4")[1]
    d = run("closed", "AGL(1,8)", "3,2,1...", "--format", "json", "--seed", "4")[1]
    assert c == d


def test_mismatch_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(cli._EXAMPLE28, 11, ((3, 19), 22))
    code, _ = run("table", "example28", "--p", "11")
    assert code == cli.MISMATCH
    assert "MISMATCH example28/ASL-squares(1,11)" in capsys.readouterr().err


def test_closed():
    code, text = run("closed", "M22", "4,1...", "--format", "json")
    assert code == 0 and json.loads(text)["closed"] is True
    code, text = run("closed", "PSL(2,7)", "4,1...", "--format", "json")
    assert code == 0 and json.loads(text)["closed"] is False


def test_verify():
    code, text = run("verify", "S6", "2,2,1,1", "--format", "json")
    assert code == 0
    rec = json.loads(text)
    assert all(v is True for v in rec["checks"].values())
    code, _ = run("verify", "C7", "2,1^5")
    assert code == cli.HYPOTHESIS


def test_homog():
    code, text = run("homog", "M24", "5", "--format", "json")
    assert code == 0 and json.loads(text)["homogeneous"] is True
    code, text = run("homog", "M24", "6", "--format", "json")
    assert code == 0 and json.loads(text)["homogeneous"] is False


def test_twogen():
    code, text = run("twogen", "M11", "--format", "json")
    assert code == 0
    assert len(json.loads(text)["generators"]) == 2
    assert run("twogen", "C7")[0] == cli.HYPOTHESIS


def test_probe_and_cap():
    code, text = run("probe", "25", "--format", "json")
    assert code == 0 and json.loads(text)["closed"] is True
    code, _ = run("probe", "49", "--cap", "100")
    assert code == cli.CAP
    code, _ = run("closed", "M22", "2,2,2,1...", "--cap", "1000")
    assert code == cli.CAP


@pytest.mark.parametrize("argv", [
    ["table", "nope"],
    ["homog", "X9", "2"],
    ["closed", "M22", "30,1"],
    ["table", "example28", "--p", "13"],
    ["probe", "8"],
    ["homog", "S5", "9"],
    ["twogen", "S5", "--threads", "0"],
    [],
])
def test_input_errors(argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv, out=io.StringIO())
        raise SystemExit(code)
    assert exc.value.code == cli.INPUT


def test_data_path(tmp_path):
    from parthom.catalog.groups import load_generator_data
    data = {"groups": list(load_generator_data().values())}
    path = tmp_path / "g.json"
    path.write_text(json.dumps(data))
    try:
        code, text = run("homog", "M12", "5", "--data", str(path), "--format", "json")
        assert code == 0 and json.loads(text)["homogeneous"] is True
        assert run("homog", "M12", "5", "--data", str(tmp_path / "missing.json"))[0] == cli.INPUT
    finally:
        from parthom.catalog.groups import set_data_path
        set_data_path(None)


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "parthom.cli", "homog", "PSL(2,8)", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "True" in proc.stdout
