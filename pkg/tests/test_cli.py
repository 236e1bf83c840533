import csv
import io
import json

import anyio
import pytest

from hnpkit.cli.app import run
from hnpkit.cli.corpus import SUITE_TRIALS, run_corpus_suite
from hnpkit.sysio import parse_system


def invoke(capsys, *argv: str) -> tuple[int, str, str]:
    code = anyio.run(run, ["--log-level", "WARNING", *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def test_randomized_decision(capsys):
    code, out, _ = invoke(capsys, "hnp", "decide", "corpus/xy_minus_1.sys", "--D", "1000000", "--trials", "5", "--seed", "7")
    assert code == 0
    transcript = json.loads(out)
    assert transcript["answer"] == "SAT"
    assert transcript["instance"] == "xy_minus_1"
    assert len(transcript["trials"]) == 5


def test_randomized_decision_is_reproducible(capsys):
    argv = ("hnp", "decide", "corpus/yx_y2x.sys", "--D", "1000", "--seed", "3", "--no-normalize")
    _, first, _ = invoke(capsys, *argv)
    _, second, _ = invoke(capsys, *argv)
    assert first == second
    assert json.loads(first)["answer"] == "UNSAT"


def test_elimination_reports_the_witness(capsys):
    code, out, _ = invoke(capsys, "hnp", "decide-elim", "corpus/yx_y2x.sys")
    assert code == 0
    report = json.loads(out)
    assert report["answer"] == "UNSAT"
    assert report["oracle"] == "elimination"
    assert report["witness"] is not None


def test_parameter_free_decision_over_prime_field(capsys, tmp_path):
    path = tmp_path / "i.sys"
    path.write_text("params\nvars y\neq y^2 + 1\n")
    code, out, _ = invoke(capsys, "hn", "decide", str(path), "--field", "fp:5")
    assert code == 0
    assert json.loads(out)["answer"] == "SAT"
    _, out, _ = invoke(capsys, "hn", "decide", str(path), "--field", "fp:7")
    assert json.loads(out)["answer"] == "UNSAT"


def test_hn_decide_refuses_parameters(capsys):
    code, _, err = invoke(capsys, "hn", "decide", "corpus/xy_minus_1.sys")
    assert code == 1
    assert "parameter-free" in err


def test_prime_density_table(capsys, tmp_path):
    path = tmp_path / "i.sys"
    path.write_text("params\nvars y\neq y^2 + 1\n")
    code, out, _ = invoke(capsys, "hn", "prime-density", str(path), "--primes", "3..30")
    assert code == 0
    table = rows(out)
    assert [int(r["p"]) for r in table] == [3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert {int(r["p"]) for r in table if r["sat"] == "true"} == {5, 13, 17, 29}


def test_certificate_round_trip(capsys, tmp_path):
    code, out, _ = invoke(capsys, "cert", "find", "corpus/yx_y2x.sys")
    assert code == 0
    found = json.loads(out)
    assert found["report"]["valid"] is True
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(found["certificate"]))
    code, out, _ = invoke(capsys, "cert", "verify", "corpus/yx_y2x.sys", str(cert))
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_bad_certificate_is_reported_not_raised(capsys, tmp_path):
    cert = tmp_path / "bad.json"
    cert.write_text(json.dumps({"a": "1", "g": ["0", "0"], "scaling": "1"}))
    code, out, _ = invoke(capsys, "cert", "verify", "corpus/yx_y2x.sys", str(cert))
    assert code == 0
    assert json.loads(out)["valid"] is False


def test_certificate_of_satisfiable_system_is_an_error(capsys):
    code, _, err = invoke(capsys, "cert", "find", "corpus/xy_minus_1.sys")
    assert code == 1
    assert err.startswith("error:")


def test_normalize_emits_system_and_map(capsys):
    code, out, _ = invoke(capsys, "normalize", "corpus/normalize_heavy.sys")
    assert code == 0
    payload = json.loads(out)
    assert payload["instance"] == "normalize_heavy"
    assert payload["map"]["introduced"]
    normalized = parse_system(payload["system"])
    assert normalized.k >= 1
    _, text, _ = invoke(capsys, "normalize", "corpus/normalize_heavy.sys", "--text")
    assert text.strip() == payload["system"].strip()


def test_algebraic_commands(capsys):
    _, out, _ = invoke(capsys, "alg", "disc", "y^2 - x", "--params", "x")
    assert json.loads(out)["discriminant"] == "4*x"
    _, out, _ = invoke(capsys, "alg", "resultant", "y - 2", "y - 3")
    assert json.loads(out)["resultant"] == "-1"
    _, out, _ = invoke(capsys, "alg", "prim-elem", "y^2 - 2", "y^2 - 3")
    payload = json.loads(out)
    assert payload["constants"] == [1, 1]
    assert payload["status"] == "primitive"


def test_algebraic_commands_over_quotients(capsys):
    code, out, _ = invoke(capsys, "alg", "resultant", "y - 1/x", "y - 2", "--params", "x")
    assert code == 0
    assert json.loads(out)["resultant"] == "(-2*x + 1)/(x)"
    _, out, _ = invoke(capsys, "alg", "disc", "y^2 - 1/x", "--params", "x")
    assert json.loads(out)["discriminant"] == "(4)/(x)"
    code, out, _ = invoke(capsys, "alg", "minpoly-sum", "y^2 - 1/x", "y - 1", "--params", "x")
    assert code == 0
    assert "x*y^2 - 2*x*y + x - 1" in out


def test_error_budget_command(capsys):
    code, out, _ = invoke(capsys, "experiment", "error-budget", "--s", "2", "--D", "16")
    assert code == 0
    assert json.loads(out)["correct_given_unsat"] == "45/64"


def test_identity_lemma_command(capsys):
    code, out, _ = invoke(capsys, "experiment", "identity-lemma", "x1*x2", "--range", "0..9")
    assert code == 0
    (row,) = rows(out)
    assert row["zero_fraction"] == "19/100"
    assert row["holds"] == "true"


def test_equisat_needs_exactly_one_mode(capsys):
    code, _, _ = invoke(capsys, "experiment", "equisat", "corpus/yx_y2x.sys")
    assert code == 1
    code, out, _ = invoke(capsys, "experiment", "equisat", "corpus/yx_y2x.sys", "--exhaustive", "--D", "20")
    assert code == 0
    (row,) = rows(out)
    assert row["truth"] == "UNSAT"


def test_unknown_flag_is_a_usage_error(capsys):
    code, _, _ = invoke(capsys, "hnp", "decide", "corpus/xy_minus_1.sys", "--no-such-flag")
    assert code == 1


def test_conflicting_range_options(capsys):
    code, _, err = invoke(capsys, "hnp", "decide", "corpus/xy_minus_1.sys", "--D", "10", "--growth-c", "1")
    assert code == 1
    assert "invalid configuration" in err


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "broken.sys"
    path.write_text("params x\nvars y\neq y^^2\n")
    code, out, err = invoke(capsys, "hnp", "decide-elim", str(path))
    assert code == 1
    assert out == ""
    assert err.startswith("parse error: line 3")


def test_missing_file(capsys):
    code, _, err = invoke(capsys, "hnp", "decide-elim", "corpus/does_not_exist.sys")
    assert code == 1
    assert "cannot read" in err


def test_budget_exceeded_exit_code(capsys):
    code, out, _ = invoke(
        capsys, "--max-basis-size", "1", "--max-reductions", "1", "hnp", "decide-elim", "corpus/circle_three_lines.sys"
    )
    assert code == 2
    report = json.loads(out)
    assert report["cap"] in {"max_basis_size", "max_terms", "max_reductions"}
    assert report["observed"] > report["limit"]


def test_out_writes_a_copy(capsys, tmp_path):
    code, out, _ = invoke(capsys, "--out", str(tmp_path / "reports"), "hnp", "decide-elim", "corpus/xy_minus_1.sys")
    assert code == 0
    assert (tmp_path / "reports" / "decision.json").read_text() == out


def test_timing_adds_elapsed(capsys):
    _, out, _ = invoke(capsys, "--timing", "hnp", "decide-elim", "corpus/xy_minus_1.sys")
    assert json.loads(out)["elapsed_ms"] >= 0


@pytest.fixture
def small_corpus(tmp_path):
    (tmp_path / "reciprocal.sys").write_text("params x\nvars y\neq x*y - 1\n")
    (tmp_path / "contradiction.sys").write_text("params\nvars y\neq y\neq y + 1\n")
    labels = {
        "reciprocal": {"label": "SAT", "provenance": "y = 1/x"},
        "contradiction": {"label": "SAT", "provenance": "mislabeled on purpose"},
    }
    (tmp_path / "labels.json").write_text(json.dumps(labels))
    return tmp_path


def test_suite_reports_failing_rows_without_failing(capsys, small_corpus):
    code, out, _ = invoke(capsys, "suite", "--corpus", str(small_corpus))
    assert code == 0
    table = {r["instance"]: r for r in rows(out)}
    assert list(table) == ["contradiction", "reciprocal"]
    assert table["reciprocal"]["passed"] == "true"
    assert table["contradiction"]["passed"] == "false"
    assert table["contradiction"]["label_ok"] == "false"
    assert table["contradiction"]["oracle_answer"] == "UNSAT"
    assert table["contradiction"]["equisat_ok"] == "true"
    assert table["reciprocal"]["equisat_ok"] == ""
    assert {r["trial_disagreements"] for r in table.values()} == {"0"}


def test_suite_concurrent_matches_sequential(capsys, small_corpus):
    _, sequential, _ = invoke(capsys, "suite", "--corpus", str(small_corpus))
    _, concurrent, _ = invoke(capsys, "suite", "--corpus", str(small_corpus), "--concurrent")
    assert sequential == concurrent


def test_empty_corpus_prints_only_the_header(capsys, tmp_path):
    code, out, _ = invoke(capsys, "suite", "--corpus", str(tmp_path))
    assert code == 0
    assert out.strip().split(",")[0] == "instance"
    assert len(out.strip().splitlines()) == 1


@pytest.mark.slow
def test_bundled_corpus_passes(capsys):
    code, out, _ = invoke(capsys, "suite")
    assert code == 0
    failing = [r["instance"] for r in rows(out) if r["passed"] != "true"]
    assert failing == []


@pytest.mark.slow
def test_randomized_trials_rarely_disagree_with_elimination(corpus):
    suite = run_corpus_suite(corpus)
    assert len(corpus.entries) * SUITE_TRIALS >= 100
    assert all(r.trial_disagreements is not None for r in suite)
    assert sum(r.trial_disagreements for r in suite) <= 1
