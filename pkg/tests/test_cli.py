import json

import numpy as np
import pytest

from prmkit import tables
from prmkit.cli import (
    EXIT_INFEASIBLE,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    main,
    matrix_from_json,
    matrix_to_json,
    matrix_to_text,
)
from prmkit.codes import CodeSpec, prm_generator


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_params_prm(capsys):
    code, out, _ = run(capsys, "params", "--family", "prm", "--q", "2", "--s", "2", "--m", "2", "--d", "3")
    assert code == EXIT_OK
    assert "n=21" in out and "k=10" in out and "d1=8" in out


def test_params_ssc_lambda(capsys):
    code, out, _ = run(capsys, "params", "--family", "ssc-prm", "--q", "2", "--s", "2",
                       "--m", "3", "--lambda", "1")
    assert code == EXIT_OK
    assert "n=85" in out and "k=16" in out


def test_params_json_with_oracle(capsys):
    code, out, _ = run(capsys, "params", "--family", "ssc-prm", "--q", "2", "--s", "2",
                       "--m", "2", "--lambda", "1", "--format", "json", "--oracle-cap", "1024")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["n"] == 21 and payload["k"] == 9 and payload["d1_oracle"] == 8


def test_params_usage_errors(capsys):
    code, _, err = run(capsys, "params", "--family", "prm", "--q", "2", "--s", "1", "--m", "2")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "params", "--family", "prm", "--q", "2", "--s", "1",
                       "--m", "2", "--d", "0")
    assert code == EXIT_USAGE


def test_params_infeasible_oracle(capsys):
    code, _, _ = run(capsys, "params", "--family", "prm", "--q", "2", "--s", "2", "--m", "2",
                     "--d", "5", "--oracle-cap", "100")
    assert code == EXIT_INFEASIBLE


def test_genmat_text_header(tmp_path, capsys):
    out_path = tmp_path / "g.txt"
    code, _, _ = run(capsys, "genmat", "--family", "prm", "--q", "2", "--s", "1", "--m", "2",
                     "--d", "1", "--out", str(out_path))
    assert code == EXIT_OK
    lines = out_path.read_text().splitlines()
    assert lines[0] == "2 1 3 7"
    assert len(lines) == 4


def test_genmat_ssc_uses_subfield(capsys):
    code, out, _ = run(capsys, "genmat", "--family", "ssc-prm", "--q", "2", "--s", "2",
                       "--m", "2", "--lambda", "1")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "2 1 9 21"


def test_genmat_dual_family(capsys):
    code, out, _ = run(capsys, "genmat", "--family", "dual-ssc-prm", "--q", "2", "--s", "2",
                       "--m", "2", "--lambda", "1")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "2 1 12 21"


def test_ghw_line_code(capsys):
    code, out, _ = run(capsys, "ghw", "--q", "5", "--s", "1", "--m", "1", "--d", "2", "--all")
    assert code == EXIT_OK
    assert "r=1  lower=4  upper=4" in out


def test_genmat_csv(capsys):
    code, out, _ = run(capsys, "genmat", "--family", "prm", "--q", "2", "--s", "1", "--m", "2",
                       "--d", "1", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "2,1,3,7"


def test_matrix_json_roundtrip():
    C = prm_generator(CodeSpec(2, 2, 2, 2))
    parsed = matrix_from_json(matrix_to_json(C))
    assert (parsed.generator.a == C.generator.a).all()
    assert parsed.ctx.order == C.ctx.order
    assert matrix_to_text(parsed) == matrix_to_text(C)


def test_ghw_single_rank(capsys):
    code, out, _ = run(capsys, "ghw", "--q", "2", "--s", "2", "--m", "2", "--d", "5", "--r", "2")
    assert code == EXIT_OK
    assert "lower=4" in out and "upper=4" in out and "exact" in out


def test_ghw_interval(capsys):
    code, out, _ = run(capsys, "ghw", "--q", "2", "--s", "2", "--m", "2", "--d", "3", "--r", "2")
    assert code == EXIT_OK
    assert "lower=10" in out and "upper=11" in out


def test_ghw_refined_row_matches_table(capsys):
    code, out, _ = run(capsys, "ghw", "--q", "3", "--s", "1", "--m", "3", "--d", "3",
                       "--all", "--refine", "--format", "json")
    assert code == EXIT_OK
    recs = {r["r"]: r for r in json.loads(out)["records"]}
    golden = tables.golden_ghw_table("q3m3bis")["rows"]["3"]
    for i, cell in enumerate(golden):
        r = i + 2
        got = str(recs[r]["lower"]) if recs[r]["status"] == "exact" else f"{recs[r]['lower']}-{recs[r]['upper']}"
        assert got == cell


def test_ghw_oracle_column(capsys):
    code, out, _ = run(capsys, "ghw", "--q", "2", "--s", "1", "--m", "2", "--d", "1",
                       "--all", "--oracle-cap", "100000")
    assert code == EXIT_OK
    assert "oracle=6" in out and "oracle=7" in out


@pytest.mark.parametrize("table_id", tables.GHW_TABLE_IDS)
def test_table_check_passes(capsys, table_id):
    code, out, _ = run(capsys, "table", table_id, "--check")
    assert code == EXIT_OK
    assert "PASS" in out


def test_table_output_reproducible(capsys):
    _, out1, _ = run(capsys, "table", "q4m2")
    _, out2, _ = run(capsys, "table", "q4m2")
    assert out1 == out2


def test_table_check_catches_mutations(capsys, monkeypatch):
    """Any single perturbed cell must fail the check."""
    original = tables.golden_ghw_table("q3m2")
    rng = np.random.default_rng(9)

    pristine = json.loads(json.dumps(original))
    cells = [(d, i) for d, row in pristine["rows"].items() for i in range(len(row))]
    picks = [cells[i] for i in rng.choice(len(cells), size=6, replace=False)]
    for d, i in picks:
        mutated = json.loads(json.dumps(pristine))
        cell = mutated["rows"][d][i]
        lo = int(cell.split("-")[0])
        mutated["rows"][d][i] = str(lo + 1) if "-" not in cell else f"{lo + 1}-{cell.split('-')[1]}"
        monkeypatch.setattr(tables, "golden_ghw_table", lambda _tid, _m=mutated: _m)
        code, out, _ = run(capsys, "table", "q3m2", "--check")
        assert code == EXIT_MISMATCH and "FAIL" in out
        monkeypatch.undo()


def test_table_goodparams(capsys):
    code, out, _ = run(capsys, "table", "goodparams", "--check", "--oracle-cap", "70000")
    assert code == EXIT_OK
    assert "[21,9]" in out and "[2451,9]" in out and "PASS" in out


def test_table_goodparams_mutation_caught(capsys, monkeypatch):
    pristine = tables.golden_good_params()
    mutated = json.loads(json.dumps(pristine))
    mutated["rows"][0]["k"] += 1
    monkeypatch.setattr(tables, "golden_good_params", lambda: mutated)
    code, out, _ = run(capsys, "table", "goodparams", "--check", "--oracle-cap", "1024")
    assert code == EXIT_MISMATCH and "FAIL" in out


def test_ghw_rank_out_of_range(capsys):
    code, _, err = run(capsys, "ghw", "--q", "2", "--s", "1", "--m", "2", "--d", "1", "--r", "9")
    assert code == EXIT_USAGE


def test_verify_ordering(capsys):
    code, out, _ = run(capsys, "verify", "ordering", "--max-n", "100")
    assert code == EXIT_OK and "PASS" in out


def test_verify_recursion_small(capsys):
    code, out, _ = run(capsys, "verify", "recursion", "--max-n", "45")
    assert code == EXIT_OK and "PASS" in out
