import json
import subprocess
import sys

import pytest

from sevenvalent.cli import main, run
from sevenvalent.graphs import Graph, dihedrant_translation
from sevenvalent.permgroup import write_group_text


def run_json(argv, capsys):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_congruence(capsys):
    code, rep = run_json(["congruence", "--m", "43"], capsys)
    assert code == 0 and rep["results"]["roots"] == [4, 11, 16, 21, 35, 41]
    assert set(rep) >= {"schema", "command", "inputs", "results", "paper_checks", "elapsed", "seed",
                        "budget", "exit_code"}


def test_missing_file_is_usage_error(capsys):
    assert main(["aut", "/nonexistent/graph.el"]) == 2


def test_bad_subcommand_and_bad_option():
    assert main(["nonsense"]) == 2
    assert main(["congruence", "--m", "one"]) == 2


def test_table1_two_rows(capsys):
    code, rep = run_json(["table1", "--rows", "K77,CC30"], capsys)
    assert code == 0
    rows = rep["results"]["rows"]
    assert [r["row"] for r in rows] == ["K77", "CC30"] and all(r["status"] == "pass" for r in rows)
    assert all("paper_location" in c for c in rep["paper_checks"])


def test_build_aut_stran_iso(tmp_path, capsys):
    el = tmp_path / "cd58.el"
    assert main(["build", "dihedrant", "--m", "29", "--edgelist", str(el)]) == 0
    capsys.readouterr()
    g = Graph.from_edgelist(el.read_text())
    assert g.n == 58 and g.valency() == 7
    code, rep = run_json(["aut", str(el)], capsys)
    assert code == 0 and rep["results"]["order"] == "406"
    code, rep = run_json(["stran", str(el)], capsys)
    assert code == 0 and rep["results"]["s"] == 1
    el2 = tmp_path / "cd58b.el"
    main(["build", "dihedrant", "--m", "29", "--k", "23", "--edgelist", str(el2)])
    capsys.readouterr()
    code, rep = run_json(["iso", str(el), str(el2)], capsys)
    assert code == 0 and rep["results"]["isomorphic"] is True


def test_quotient_and_basic(tmp_path, capsys):
    el = tmp_path / "cd58.el"
    main(["build", "dihedrant", "--m", "29", "--edgelist", str(el)])
    grp = tmp_path / "rot.grp"
    grp.write_text(write_group_text(58, [dihedrant_translation(29)]))
    capsys.readouterr()
    code, rep = run_json(["quotient", str(el), str(grp)], capsys)
    assert code == 0 and rep["results"]["orbit_count"] == 2 and rep["results"]["is_cover"] is False
    code, rep = run_json(["basic", str(el)], capsys)
    assert code == 0 and rep["results"]["basic"] is True


def test_budget_exit_code(tmp_path, capsys):
    el = tmp_path / "k77.el"
    main(["build", "complete_bipartite", "--n", "7", "--edgelist", str(el)])
    capsys.readouterr()
    assert main(["aut", str(el), "--budget-seconds", "0"]) == 3


def test_failed_check_exit_code(capsys):
    # the six-prime list has a printed entry that the computation does not reproduce
    assert main(["lemma32"]) == 1
    assert main(["lemma31"]) == 0


def test_reproducible_json_is_byte_identical(tmp_path):
    out = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        code, _ = run(["table1", "--rows", "CD86", "--json", "--reproducible", "--seed", "5", "--out", str(path)])
        out.append(path.read_bytes())
    assert out[0] == out[1]
    assert json.loads(out[0])["elapsed"] is None


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sevenvalent", "congruence", "--m", "29"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "7, 16, 20, 23, 24, 25" in proc.stdout


@pytest.mark.parametrize("table_id", ["table2", "table3", "table4", "table5"])
def test_tables_command(table_id, capsys):
    code, rep = run_json(["tables", "--id", table_id], capsys)
    assert code == 0
    statuses = {c["status"] for c in rep["paper_checks"]}
    assert statuses <= {"pass", "discrepancy-noted"}
