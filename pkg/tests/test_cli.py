"""CLI contract: grammar, grid expansion, formats, determinism, exit codes."""

import csv
import io
import json

import pytest

from qtrinom.cli import (
    CSV_COLUMNS,
    RunConfig,
    UsageError,
    expand_tasks,
    main,
    parse_int_list,
    report_from_json,
    report_to_json,
    report_to_text,
    run_verify,
)
from qtrinom.congruence import CongruenceReport, run_task, verify_lemma, verify_theorem
from qtrinom.polyring import LaurentPoly
from qtrinom.trinomials import TrinomialKind


def test_parse_int_list():
    assert parse_int_list("1..6", "--n") == [1, 2, 3, 4, 5, 6]
    assert parse_int_list("3,5,7", "--p") == [3, 5, 7]
    assert parse_int_list("4", "--a") == [4]
    assert parse_int_list("1..3,9", "--n") == [1, 2, 3, 9]
    with pytest.raises(UsageError):
        parse_int_list("x..3", "--n")
    with pytest.raises(UsageError):
        parse_int_list("5..1", "--n")
    with pytest.raises(UsageError):
        parse_int_list("1;2", "--n")


def test_expand_tasks_theorem_grid():
    cfg = RunConfig(targets=["theorem-a"], n_range=[1, 2], a_range=[2], b_range=[1])
    tasks, warnings = expand_tasks(cfg)
    assert [t.params for t in tasks] == [{"a": 2, "b": 1, "n": 1}, {"a": 2, "b": 1, "n": 2}]
    assert warnings == []


def test_expand_tasks_skips_with_warnings():
    cfg = RunConfig(targets=["theorem-a"], n_range=[0, 1], a_range=[2, 1], b_range=[1])
    tasks, warnings = expand_tasks(cfg)
    assert [t.params for t in tasks] == [{"a": 2, "b": 1, "n": 1}]
    assert len(warnings) == 3  # (2,1,0), (1,1,0), (1,1,1)
    assert all("skipping" in w for w in warnings)


def test_expand_tasks_prime_filtering():
    cfg = RunConfig(targets=["babbage"], p_list=[2, 3, 4, 5])
    tasks, warnings = expand_tasks(cfg)
    assert [t.params["p"] for t in tasks] == [3, 5]
    assert len(warnings) == 2


def test_expand_tasks_lemma_k_defaults():
    cfg = RunConfig(targets=["lemma-2.1"], n_range=[4])
    tasks, _ = expand_tasks(cfg)
    assert [t.params["k"] for t in tasks] == [1, 2, 3]
    cfg = RunConfig(targets=["lemma-2.1"], n_range=[4], k_range=[2, 9])
    tasks, warnings = expand_tasks(cfg)
    assert [t.params["k"] for t in tasks] == [2]
    assert len(warnings) == 1


def test_expand_tasks_straub_filter():
    cfg = RunConfig(targets=["straub-q"], n_range=[5, 6], a_range=[2], b_range=[1])
    tasks, warnings = expand_tasks(cfg)
    assert [t.params["n"] for t in tasks] == [5]
    assert "gcd" in warnings[0]


def test_expand_tasks_deduplicates_and_sorts():
    cfg = RunConfig(
        targets=["babbage", "theorem-a", "babbage"],
        n_range=[2, 1],
        a_range=[2],
        b_range=[1],
        p_list=[5, 3, 5],
    )
    tasks, _ = expand_tasks(cfg)
    keys = [t.sort_key() for t in tasks]
    assert keys == sorted(keys)
    assert len(tasks) == 4  # 2 babbage + 2 theorem-a


def test_expand_tasks_errors():
    with pytest.raises(UsageError):
        expand_tasks(RunConfig(targets=["theorem-a"], n_range=[1]))  # no --a
    with pytest.raises(UsageError):
        expand_tasks(RunConfig(targets=["no-such-target"], n_range=[1]))


# ---- serialization ----


def _sample_reports():
    return [
        verify_theorem(TrinomialKind.round, 2, 1, 2),
        verify_theorem(TrinomialKind.t1, 2, 1, 3),
        verify_lemma("lemma-theta", 7),  # modulus is None
        verify_lemma("lemma-upsilon-inv", 4),  # nonzero cleared_shift
        run_task_report("cor-plain", a=2, b=1, p=3),  # holds=False, residual 3
        run_task_report("straub-q", a=3, b=2, n=5),
    ]


def run_task_report(target, **params):
    from qtrinom.congruence import VerificationTask

    return run_task(VerificationTask(target, params))


def test_json_round_trip_identical_fields():
    reports = _sample_reports()
    assert any(r.cleared_shift > 0 for r in reports)
    assert any(not r.holds for r in reports)
    for report in reports:
        line = report_to_json(report)
        parsed = report_from_json(line)
        assert parsed == report
        # keys exactly as the interface promises
        obj = json.loads(line)
        assert set(obj) == {
            "target",
            "params",
            "holds",
            "cleared_shift",
            "residual",
            "modulus",
            "elapsed_ms",
        }


def test_json_residual_is_zero_string_when_holds():
    report = verify_theorem(TrinomialKind.round, 2, 1, 2)
    assert json.loads(report_to_json(report))["residual"] == "0"


def test_text_rendering_and_elision():
    line = report_to_text(run_task_report("cor-plain", a=2, b=1, p=3))
    assert line.startswith("FAIL cor-plain a=2 b=1 p=3")
    assert "residual=3" in line and "mod=3^2" in line

    ok_line = report_to_text(verify_theorem(TrinomialKind.round, 2, 1, 2))
    assert ok_line.startswith("ok   theorem-a a=2 b=1 n=2")
    assert "mod=Phi(2)^2" in ok_line

    big = CongruenceReport(
        target="theorem-a",
        params={"n": 1},
        holds=False,
        residual=LaurentPoly(0, [1] * 60),
        cleared_shift=0,
        modulus=(1, 2),
        elapsed_ms=1,
    )
    assert "residual=<degree 59, 60 terms>" in report_to_text(big)


# ---- verify end-to-end ----


def test_run_verify_json_stream():
    cfg = RunConfig(
        targets=["theorem-a"], n_range=[1, 2, 3, 4, 5, 6], a_range=[2], b_range=[1],
        format="json",
    )
    out = io.StringIO()
    code = run_verify(cfg, stream=out, err=io.StringIO())
    assert code == 0
    lines = out.getvalue().strip().splitlines()
    assert len(lines) == 6
    reports = [report_from_json(line) for line in lines]
    assert all(r.holds for r in reports)
    assert [r.params["n"] for r in reports] == [1, 2, 3, 4, 5, 6]


def test_run_verify_warns_and_skips():
    cfg = RunConfig(targets=["theorem-a"], n_range=[0, 1], a_range=[2], b_range=[1])
    out, err = io.StringIO(), io.StringIO()
    assert run_verify(cfg, stream=out, err=err) == 0
    assert len(out.getvalue().strip().splitlines()) == 1
    assert "warning: skipping theorem-a" in err.getvalue()


def test_run_verify_exit_one_on_failure():
    cfg = RunConfig(targets=["cor-plain"], a_range=[2], b_range=[1], p_list=[3, 5])
    out = io.StringIO()
    assert run_verify(cfg, stream=out, err=io.StringIO()) == 1
    lines = out.getvalue().strip().splitlines()
    assert len(lines) == 2  # both reports still emitted without --fail-fast


def test_run_verify_fail_fast_stops():
    cfg = RunConfig(
        targets=["cor-plain"], a_range=[2, 4], b_range=[1, 3], p_list=[3], fail_fast=True
    )
    out = io.StringIO()
    assert run_verify(cfg, stream=out, err=io.StringIO()) == 1
    lines = out.getvalue().strip().splitlines()
    assert len(lines) == 1  # stopped at the first failing report


def test_run_verify_csv_format():
    cfg = RunConfig(targets=["babbage"], p_list=[3, 5], format="csv")
    out = io.StringIO()
    assert run_verify(cfg, stream=out, err=io.StringIO()) == 0
    rows = list(csv.reader(io.StringIO(out.getvalue())))
    assert rows[0] == CSV_COLUMNS
    assert rows[1][0] == "babbage" and rows[1][1] == "p=3" and rows[1][2] == "true"
    assert len(rows) == 3


def test_run_verify_deterministic_across_jobs():
    def run(jobs):
        cfg = RunConfig(
            targets=["theorem-b", "lemma-2.1", "babbage"],
            n_range=[1, 2, 3, 4],
            a_range=[2, 3],
            b_range=[1, 2],
            p_list=[3, 5, 7],
            format="json",
            jobs=jobs,
        )
        out = io.StringIO()
        assert run_verify(cfg, stream=out, err=io.StringIO()) == 0
        return [report_from_json(l) for l in out.getvalue().strip().splitlines()]

    sequential = run(1)
    parallel = run(4)
    strip = lambda rs: [
        (r.target, tuple(sorted(r.params.items())), r.holds, r.cleared_shift, r.residual, r.modulus)
        for r in rs
    ]
    assert strip(sequential) == strip(parallel)
    keys = [r.sort_key() for r in sequential]
    assert keys == sorted(keys)


# ---- main() and compute ----


def test_main_compute_examples(capsys):
    assert main(["compute", "--object", "cyclotomic", "--n", "6"]) == 0
    assert capsys.readouterr().out.strip() == "q^2 - q + 1"

    assert main(["compute", "--object", "qbinom", "--n", "4", "--m", "2"]) == 0
    assert capsys.readouterr().out.strip() == "q^4 + q^3 + 2*q^2 + q + 1"

    assert main(["compute", "--object", "qbinom", "--n", "2", "--m", "1", "--base", "2"]) == 0
    assert capsys.readouterr().out.strip() == "q^2 + 1"

    assert main(["compute", "--object", "theta", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() == "-q"

    assert main(["compute", "--object", "vartheta", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() == "-q^-1"

    assert main(["compute", "--object", "trinomial", "--n", "2", "--m", "0"]) == 0
    assert capsys.readouterr().out.strip() == "3"

    assert main(["compute", "--object", "qtrinomial", "--kind", "round", "--n", "2", "--m", "0"]) == 0
    assert capsys.readouterr().out.strip() == "q^2 + q + 1"

    assert main(
        ["compute", "--object", "truncated", "--kind", "T0", "--a", "2", "--b", "1", "--n", "1"]
    ) == 0
    assert capsys.readouterr().out.strip() == "-q^2 - 1"


def test_main_compute_usage_errors(capsys):
    assert main(["compute", "--object", "qbinom", "--n", "4"]) == 2  # missing --m
    assert "error" in capsys.readouterr().err
    assert main(["compute", "--object", "cyclotomic", "--n", "0"]) == 2
    capsys.readouterr()
    assert main(["compute", "--object", "qtrinomial", "--n", "2", "--m", "0"]) == 2  # no kind
    capsys.readouterr()
    assert main(["compute", "--object", "truncated", "--kind", "T0", "--a", "1", "--b", "1", "--n", "1"]) == 2
    capsys.readouterr()


def test_main_verify_spec_example(capsys):
    code = main(
        ["verify", "--target", "theorem-a", "--n", "1..6", "--a", "2", "--b", "1",
         "--format", "json"]
    )
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6
    assert all(json.loads(l)["holds"] for l in lines)


def test_main_verify_text_targets_comma_split(capsys):
    code = main(["verify", "--target", "babbage,wolstenholme", "--p", "5,7", "--format", "text"])
    assert code == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 4
    assert all(line.startswith("ok  ") for line in out)


def test_main_verify_usage_error_exit_2(capsys):
    assert main(["verify", "--target", "theorem-a", "--n", "1..3"]) == 2
    assert "requires --a" in capsys.readouterr().err
    assert main(["verify", "--target", "bogus", "--n", "1"]) == 2
    capsys.readouterr()
    assert main(["verify", "--target", "theorem-a", "--n", "3..1", "--a", "2", "--b", "1"]) == 2
    capsys.readouterr()


def test_main_argparse_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify"])  # --target is required
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--object", "weird"])
    assert exc.value.code == 2


def test_main_out_file(tmp_path, capsys):
    out_file = tmp_path / "reports.json"
    code = main(
        ["verify", "--target", "lemma-theta", "--n", "0..5", "--format", "json",
         "--out", str(out_file)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    lines = out_file.read_text().strip().splitlines()
    assert len(lines) == 6
    assert all(json.loads(l)["modulus"] is None for l in lines)
