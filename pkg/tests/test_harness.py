import json

import pytest

from rotor import cli
from rotor.harness import (
    Budget,
    RunReport,
    conjecture_sizes,
    emit,
    emit_many,
    format_text,
    load_golden,
    run_groundstate,
    state_dimension,
    verify_conjecture,
)
from rotor.errors import BudgetExceededError
from rotor.harness import require_budget
from rotor.sparse import SparseIntMatrix
from rotor.hamiltonian import build_hamiltonian


def test_golden_rows_are_self_consistent():
    rows = load_golden()
    assert len(rows) == 6 + 5 + 4
    for row in rows.values():
        assert row.consistent(), row.source
        assert sum(row.multiplicities) == state_dimension(row.bc, row.n)


def test_closed_five():
    r = run_groundstate("closed", 5)
    assert [v for v, _ in r.components] == [113, 111, 55, 31, 25, 21, 19, 11, 5]
    assert [m for _, m in r.components] == [2, 1, 4, 2, 4, 2, 4, 4, 2]
    assert r.sum == 891 and r.predicted_sum == 891 and r.sum_match
    assert r.min == 5 and r.predicted_min == 5 and r.min_match and r.scale == 1
    assert r.golden_match == "match" and r.passed and r.consistent()


def test_periodic_one_and_identified_two():
    r = run_groundstate("periodic", 1)
    assert r.components == [(1, 1)] and r.sum == 1 and r.sum_match
    r = run_groundstate("identified", 2)
    assert r.components == [(1, 1)] and r.sum == 1 and r.golden_match == "match"


def test_no_fixture_outside_tables():
    assert run_groundstate("closed", 7).golden_match == "no-fixture"


def test_text_line():
    line = format_text(run_groundstate("closed", 5))
    assert line.startswith("N=5  psi0=(113,111,55,31,25,21,19,11,5)  mult=(2,1,4,2,4,2,4,4,2)  S=891")
    assert "predicted=891 [ok]" in line and "golden=match" in line


def test_json_round_trip():
    r = run_groundstate("periodic", 4)
    text = emit(r, "json")
    again = emit(RunReport.from_dict(json.loads(text)), "json")
    assert again == text


def test_optional_fields_absent():
    d = run_groundstate("periodic", 4).as_dict()
    for key in ("predicted_min", "scale", "normalized_sum", "min_match"):
        assert key not in d
    assert d["sum_match"] is True and d["golden_match"] == "match"
    assert set(d["stats"]) >= {"method", "dimension", "fill_in", "max_bits", "elapsed"}


def test_closed_nine_scaled():
    r = run_groundstate("closed", 9)
    assert r.scale == 3 and r.min_match and r.sum_match
    assert r.normalized_sum == r.predicted_sum == 319794090309
    assert "scaled x3" in format_text(r)


def test_csv():
    out = emit_many([run_groundstate("closed", 3), run_groundstate("closed", 4)], "csv")
    lines = out.splitlines()
    assert lines[0] == "bc,n,value,multiplicity"
    assert lines[1:] == ["closed,3,2,2", "closed,3,1,2", "closed,4,14,1", "closed,4,5,1", "closed,4,4,2"]


def test_unknown_format():
    with pytest.raises(ValueError):
        emit(run_groundstate("closed", 2), "xml")


@pytest.mark.parametrize("k, max_n, sizes", [(1, 6, [1, 2, 3, 4, 5, 6]), (2, 5, [1, 2, 3, 4, 5]), (3, 8, [2, 4, 6, 8])])
def test_verify_conjecture(k, max_n, sizes):
    result = verify_conjecture(k, max_n)
    assert result.verdict and result.complete
    assert [r.n for r in result.reports] == sizes == conjecture_sizes(k, max_n)


def test_verify_conjecture_parallel_is_ordered():
    result = verify_conjecture(1, 6, jobs=2)
    assert [r.n for r in result.reports] == list(range(1, 7)) and result.verdict


def test_budget_skip_is_incomplete():
    result = verify_conjecture(2, 6, Budget(max_dimension=300))
    assert result.skipped == [6]
    assert not result.complete and not result.verdict


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("ROTOR_MAX_DIM", "7")
    monkeypatch.setenv("ROTOR_MAX_SECONDS", "1.5")
    assert Budget.from_env() == Budget(7, 1.5)
    with pytest.raises(BudgetExceededError):
        require_budget("periodic", 3, Budget.from_env())


def test_bad_conjecture_number():
    with pytest.raises(ValueError):
        conjecture_sizes(4, 5)


# -- command line -------------------------------------------------------------


def test_cli_run_text(capsys):
    assert cli.main(["run", "--bc", "closed", "--n", "5"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# rotor groundstates, closed")
    assert "S=891" in out


def test_cli_run_json_and_full(capsys):
    assert cli.main(["run", "--bc", "identified", "--n", "6", "--format", "json", "--full"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["sum"] == 189 and d["stats"]["reduced_dimension"] == d["dimension"] == 25


def test_cli_run_modular_csv(capsys):
    assert cli.main(["run", "--bc", "periodic", "--n", "3", "--format", "csv", "--method", "modular"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "bc,n,value,multiplicity"


def test_cli_dump_matrix(tmp_path, capsys):
    path = tmp_path / "h.txt"
    assert cli.main(["run", "--bc", "closed", "--n", "4", "--dump-matrix", str(path)]) == 0
    with open(path) as fh:
        assert SparseIntMatrix.load(fh) == build_hamiltonian(4, "closed")
    assert path.read_text().splitlines()[0].split()[0] == "4"


def test_cli_check(capsys):
    assert cli.main(["check", "--conjecture", "3", "--max-n", "8"]) == 0
    assert "VERIFIED" in capsys.readouterr().out


def test_cli_check_incomplete_fails(capsys):
    assert cli.main(["check", "--conjecture", "1", "--max-n", "6", "--max-dim", "10"]) == 1
    out = capsys.readouterr().out
    assert "skipped" in out and "NOT VERIFIED (incomplete)" in out


def test_cli_check_json(capsys):
    assert cli.main(["check", "--conjecture", "2", "--max-n", "3", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["verdict"] and [r["n"] for r in d["reports"]] == [1, 2, 3]


def test_cli_enum(capsys):
    assert cli.main(["enum", "--quantity", "vsasm3", "--m", "4"]) == 0
    assert capsys.readouterr().out.strip() == "16038"


def test_cli_weights(capsys):
    assert cli.main(["weights", "--u", "0"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "omega_R = 0"
    assert out[2].startswith("omega_A = -0.43301270")


def test_cli_relations(capsys):
    assert cli.main(["relations", "--bc", "periodic", "--n", "5"]) == 0
    assert "relations hold" in capsys.readouterr().out


def test_cli_errors(capsys):
    assert cli.main(["run", "--bc", "identified", "--n", "3"]) == 2
    assert cli.main(["run", "--bc", "periodic", "--n", "10", "--max-dim", "1000"]) == 2
    assert "error" in capsys.readouterr().err
