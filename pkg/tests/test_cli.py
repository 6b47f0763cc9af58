from __future__ import annotations

import json
import subprocess
import sys

import pytest

from linkpoly.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from linkpoly.expansion import default_rule_table, table_to_json
from linkpoly.kauffman import LOOP_VALUE
from linkpoly.laurent import RationalFunction, Z, parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCompute:
    def test_kauffman_circle(self, capsys):
        code, out, _ = run(capsys, "compute", "kauffman", "--name", "circle")
        assert code == EXIT_OK
        assert parse_rational(out.strip()) == LOOP_VALUE

    def test_homfly_specialized(self, capsys):
        code, out, _ = run(capsys, "compute", "homfly", "--name", "circle", "--specialize", "1")
        assert code == EXIT_OK and out.strip() == "1"

    def test_braid_input(self, capsys):
        code, out, _ = run(capsys, "compute", "kauffman", "--braid", "BR 2 : 1 -1")
        assert code == EXIT_OK and parse_rational(out.strip()) == LOOP_VALUE * LOOP_VALUE

    def test_pd_file_batch(self, capsys, tmp_path):
        path = tmp_path / "in.pd"
        path.write_text("one: X[1,1,2,2]\ntwo: Loop[1]\n")
        code, out, _ = run(capsys, "compute", "homfly", "--pd", str(path))
        lines = out.strip().splitlines()
        assert code == EXIT_OK and [line.split(":")[0] for line in lines] == ["one", "two"]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "compute", "kauffman", "--name", "trefoil", "--format", "json")
        obj = json.loads(out)
        assert code == EXIT_OK and obj["invariant"] == "kauffman" and obj["name"] == "trefoil"
        assert RationalFunction.from_json(obj) == parse_rational(obj["value"])


class TestExpand:
    def test_states_dn(self, capsys):
        code, out, _ = run(capsys, "expand", "--name", "circle", "--states")
        lines = out.strip().splitlines()
        assert code == EXIT_OK and len(lines) == 3
        assert all(line.startswith("state [-] loops [") for line in lines[:2])
        assert parse_rational(lines[-1]) == LOOP_VALUE

    def test_states_bn(self, capsys):
        code, out, _ = run(capsys, "expand", "--name", "circle", "--family", "bn", "--states")
        lines = out.strip().splitlines()
        assert code == EXIT_OK and len(lines) == 4
        assert any("erased" in line for line in lines)

    def test_json_states(self, capsys):
        code, out, _ = run(capsys, "expand", "--name", "hopf_positive", "--format", "json", "--states", "--jobs", "2")
        obj = json.loads(out)
        assert code == EXIT_OK and obj["states"] == len(obj["state_rows"]) and obj["family"] == "dn"

    def test_custom_table(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        path.write_text(table_to_json(default_rule_table("dn")))
        code, out, _ = run(capsys, "expand", "--name", "circle", "--table", str(path))
        assert code == EXIT_OK and parse_rational(out.strip()) == LOOP_VALUE

    def test_bad_table(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "expand", "--name", "circle", "--table", str(path))
        assert code == EXIT_INPUT and err.startswith("error:")


class TestVerify:
    def test_all(self, capsys, tmp_path):
        report = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "--all", "--report", str(report), "--report-format", "json")
        lines = out.strip().splitlines()
        assert code == EXIT_OK and len(lines) == 14
        assert all(line.startswith("PASS ") and "family=dn" in line for line in lines)
        assert all(row["equal"] for row in json.loads(report.read_text()))

    def test_single_bn(self, capsys):
        code, out, _ = run(capsys, "verify", "--name", "trefoil", "--family", "bn")
        assert code == EXIT_OK
        assert "specialized[n=1:PASS n=2:PASS n=3:PASS]" in out and "(informational)" in out

    def test_failing_table_exits_one(self, capsys, tmp_path):
        bad = default_rule_table("dn").with_weight(1, "downup", Z * 2)
        path = tmp_path / "bad.json"
        path.write_text(table_to_json(bad))
        code, out, _ = run(capsys, "verify", "--name", "trefoil", "--table", str(path), "--report", str(tmp_path / "r.txt"))
        assert code == EXIT_FAIL and out.startswith("FAIL trefoil")
        assert (tmp_path / "r.txt").read_text().startswith("FAIL")

    def test_needs_input(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify"])
        assert exc.value.code == 2


class TestInputErrors:
    @pytest.mark.parametrize("argv", [
        ["compute", "homfly", "--name", "no_such_knot"],
        ["compute", "homfly", "--braid", "BR 2 : 3"],
        ["compute", "kauffman", "--pd", "/nonexistent/file.pd"],
        ["expand", "--braid", "garbage"],
    ])
    def test_exit_two(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == EXIT_INPUT and out == "" and err.startswith("error:")

    def test_bad_pd_content(self, capsys, tmp_path):
        path = tmp_path / "bad.pd"
        path.write_text("X[1,2,3,4]\n")
        code, _, err = run(capsys, "compute", "kauffman", "--pd", str(path))
        assert code == EXIT_INPUT and "error:" in err


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "linkpoly.cli", "compute", "homfly", "--name", "circle",
                          "--specialize", "2"], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "q + q^-1"
