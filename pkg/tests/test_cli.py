"""End-to-end tests for the command-line frontend.

Each test drives main(argv) directly and inspects stdout/stderr plus the
exit code.  Frozen outputs come from the library's own tested behavior.
"""

import json

import pytest

from nottorsion.characters import char_act, parse_character_literal
from nottorsion.cli import TABLES_HEADER, main
from nottorsion.reduction import verify_witness
from nottorsion.series import parse_nottingham


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# reduce


def test_reduce_text(capsys):
    code, out, err = run(capsys, "reduce", "--p", "3", "--char", "1:1,2:3,4:3")
    assert code == 0
    assert "type     <1,4>" in out
    assert "reduced  1:1,4:3" in out
    assert "witness  t*(1+t^2)*(1+t^4)^2" in out
    assert "verified ok" in out


def test_reduce_json_roundtrip(capsys):
    code, out, err = run(capsys, "reduce", "--p", "3", "--char",
                         "1:1,2:3,4:3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    assert payload["type"] == [1, 4]
    chi = parse_character_literal(payload["input"], payload["p"])
    psi = parse_character_literal(payload["reduced"], payload["p"])
    u = parse_nottingham(payload["witness"], payload["p"])
    assert char_act(u, chi) == psi
    assert verify_witness(chi, psi, u).ok


def test_reduce_rejects_bad_literal(capsys):
    code, out, err = run(capsys, "reduce", "--p", "2", "--char", "4:1")
    assert code == 2
    assert "coprime" in err


def test_reduce_already_reduced_identity_witness(capsys):
    code, out, err = run(capsys, "reduce", "--p", "3", "--char", "2:1,5:3")
    assert code == 0
    assert "reduced  2:1,5:3" in out
    assert "witness  t" in out


# ---------------------------------------------------------------------------
# classify


def test_classify_text(capsys):
    code, out, err = run(capsys, "classify", "--p", "2", "--l", "3", "--m", "6")
    assert code == 0
    assert "4 reduced forms, 2 class(es)" in out
    assert "class 0: 3:1 | 3:1,5:2" in out
    assert "class 1: 3:3 | 3:3,5:2" in out
    assert out.count("witness") == 2


def test_classify_json(capsys):
    code, out, err = run(capsys, "classify", "--p", "2", "--l", "3", "--m", "6",
                         "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["class_count"] == 2
    assert payload["bound"] == 4
    assert payload["method"] == "oracle-partition"


def test_classify_csv(capsys):
    code, out, err = run(capsys, "classify", "--p", "2", "--l", "3", "--m", "6",
                         "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,l,m,B,d,method,runtime_ms"
    cells = lines[1].split(",")
    assert cells[:5] == ["2", "3", "6", "4", "2"]


def test_classify_budget_refusal(capsys):
    code, out, err = run(capsys, "classify", "--p", "2", "--l", "5", "--m", "15",
                         "--budget", "100")
    assert code == 3
    assert "budget refused" in err
    assert "32768" in err
    assert out == ""


def test_classify_invalid_type(capsys):
    code, out, err = run(capsys, "classify", "--p", "2", "--l", "2", "--m", "4")
    assert code == 2


# ---------------------------------------------------------------------------
# bound


def test_bound_text(capsys):
    code, out, err = run(capsys, "bound", "--p", "2", "--l", "5", "--m", "15")
    assert code == 0
    assert "B(p=2, l=5, m=15) = 4" in out
    assert "k=2, eps=2" in out


def test_bound_json(capsys):
    code, out, err = run(capsys, "bound", "--p", "3", "--l", "2", "--m", "6",
                         "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"p": 3, "l": 2, "m": 6, "bound": 18, "k": 2, "eps": 1}


def test_bound_invalid_type(capsys):
    code, out, err = run(capsys, "bound", "--p", "3", "--l", "2", "--m", "5")
    assert code == 2
    assert "break type" in err


# ---------------------------------------------------------------------------
# tables


def test_tables_shape_and_rows(capsys):
    code, out, err = run(capsys, "tables", "--p", "2", "--l", "3", "--m", "7",
                         "--budget", "100")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == TABLES_HEADER
    rows = {}
    for line in lines[1:]:
        cells = line.split(",")
        rows[(int(cells[1]), int(cells[2]))] = cells
    # grid is every (l, m) with 1 <= l <= 3, 2 <= m <= 7
    assert set(rows) == {(l, m) for l in (1, 2, 3) for m in range(2, 8)}
    # l = 2 collides with p = 2, so the whole row band is invalid
    assert rows[(2, 4)] == ["2", "2", "4", "no", "", "", "", "0"]
    # within budget: 2^6 = 64 <= 100
    assert rows[(3, 6)][:7] == ["2", "3", "6", "yes", "4", "2", "oracle-partition"]
    # over budget: 2^7 = 128 > 100, bound still printed, count refused
    assert rows[(3, 7)] == ["2", "3", "7", "yes", "2", "", "refused", "0"]


def test_tables_json_matches_csv(capsys):
    code, csv_out, err = run(capsys, "tables", "--p", "3", "--l", "1", "--m", "5")
    assert code == 0
    code, json_out, err = run(capsys, "tables", "--p", "3", "--l", "1", "--m", "5",
                              "--format", "json")
    assert code == 0
    rows = json.loads(json_out)
    assert len(rows) == len(csv_out.strip().splitlines()) - 1
    by_type = {(r["l"], r["m"]): r for r in rows}
    assert by_type[(1, 3)]["d"] == 6
    assert by_type[(1, 4)]["d"] == 4
    assert by_type[(1, 5)]["d"] == 12
    assert by_type[(1, 2)]["valid"] == "no"


# ---------------------------------------------------------------------------
# power-conj


def test_power_conj_negative_case(capsys):
    code, out, err = run(capsys, "power-conj", "--p", "2", "--l", "3", "--m", "6",
                         "--n", "3")
    assert code == 0
    assert "predicate  not conjugate" in out
    assert "oracle     not conjugate" in out
    assert "agreement  ok" in out


def test_power_conj_positive_case_with_char(capsys):
    code, out, err = run(capsys, "power-conj", "--p", "3", "--n", "4",
                         "--char", "1:1,4:3")
    assert code == 0
    assert "type <1,4> over F_3" in out
    assert "predicate  conjugate" in out
    assert "witness t*(1+t^3)" in out
    assert "agreement  ok" in out


def test_power_conj_json(capsys):
    code, out, err = run(capsys, "power-conj", "--p", "2", "--l", "3", "--m", "7",
                         "--n", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["predicate"] is True
    assert payload["oracle"] is True
    assert payload["agreement"] is True
    chi = parse_character_literal(payload["character"], 2)
    u = parse_nottingham(payload["witness"], 2, precision=chi.bound)
    from nottorsion.characters import scalar_mul

    assert char_act(u, chi) == scalar_mul(3, chi)


def test_power_conj_oracle_skipped_over_budget(capsys):
    code, out, err = run(capsys, "power-conj", "--p", "2", "--l", "5", "--m", "15",
                         "--n", "3", "--budget", "1000")
    assert code == 0
    assert "oracle     skipped" in out
    assert "exceeds budget" in out


def test_power_conj_no_oracle_flag(capsys):
    code, out, err = run(capsys, "power-conj", "--p", "3", "--l", "1", "--m", "4",
                         "--n", "4", "--no-oracle")
    assert code == 0
    assert "oracle     skipped (--no-oracle)" in out


def test_power_conj_needs_type_or_char(capsys):
    code, out, err = run(capsys, "power-conj", "--p", "3", "--n", "4")
    assert code == 2
    assert "--char" in err


def test_power_conj_char_type_contradiction(capsys):
    code, out, err = run(capsys, "power-conj", "--p", "3", "--n", "4",
                         "--char", "1:1,4:3", "--l", "2", "--m", "6")
    assert code == 2


# ---------------------------------------------------------------------------
# verify


def test_verify_single_passing_criterion(capsys):
    code, out, err = run(capsys, "verify", "--only", "1")
    assert code == 0
    assert "criterion 1 PASS" in out
    assert err == ""


def test_verify_criterion_3_fails_honestly(capsys):
    code, out, err = run(capsys, "verify", "--only", "3")
    assert code == 1
    assert "criterion 3 FAIL" in out
    assert "strict 12, p*weak 36" in out
    assert "1 of 1 criteria failed" in err


def test_verify_json(capsys):
    code, out, err = run(capsys, "verify", "--only", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 1
    assert payload[0]["criterion"] == 1
    assert payload[0]["passed"] is True


def test_verify_rejects_bad_criterion(capsys):
    code, out, err = run(capsys, "verify", "--only", "9")
    assert code == 2


# ---------------------------------------------------------------------------
# argument plumbing


def test_unknown_subcommand_usage_error(capsys):
    code, out, err = run(capsys, "frobnicate")
    assert code == 2


def test_jobs_must_be_positive(capsys):
    code, out, err = run(capsys, "classify", "--p", "2", "--l", "3", "--m", "6",
                         "--jobs", "0")
    assert code == 2
    assert "positive" in err


def test_help_exits_zero(capsys):
    code, out, err = run(capsys, "--help")
    assert code == 0
    assert "reduce" in out and "classify" in out and "verify" in out


def test_missing_required_flag(capsys):
    code, out, err = run(capsys, "bound", "--p", "2", "--l", "5")
    assert code == 2
