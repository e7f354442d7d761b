import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from k3verify import checks, cli, exports
from k3verify.report import Report


def schema():
    return json.loads(resources.files("k3verify").joinpath("data/report.schema.json").read_text())


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_json_report_validates(capsys):
    code, out, _ = run(["golay", "geometry", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema())
    ids = [c["id"] for c in doc["checks"]]
    assert ids == [c.id for c in checks.REGISTRY if c.suite in ("golay", "geometry")]
    assert len(ids) == len(set(ids))
    assert doc["summary"]["fail"] == 0 and doc["summary"]["warn"] == 2


def test_same_output_twice_and_across_jobs(capsys):
    _, a, _ = run(["golay", "surfaces", "--format", "json"], capsys)
    _, b, _ = run(["golay", "surfaces", "--format", "json"], capsys)
    _, c, _ = run(["surfaces", "golay", "--format", "json", "--jobs", "2"], capsys)
    assert a == b == c


def test_text_report(capsys):
    code, out, _ = run(["golay"], capsys)
    assert code == 0
    assert out.splitlines()[-1].startswith("4 checks: 3 pass, 0 fail, 1 warn")
    assert "WARN  golay.listed_octads" in out


def test_unknown_suite_is_usage_error(capsys):
    code, _, err = run(["octonions"], capsys)
    assert code == 2 and "unknown suite" in err


def test_bad_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["golay", "--ext-degree", "5"])
    assert e.value.code == 2


def test_failing_check_gives_exit_1(monkeypatch, capsys):
    broken = checks.Check("golay.broken", "golay", lambda ctx: Report("golay.broken", False, failures=["x"]), None)
    crashing = checks.Check("golay.crash", "golay", lambda ctx: 1 / 0, None)
    monkeypatch.setattr(checks, "REGISTRY", (broken, crashing))
    code, out, _ = run(["golay", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 1
    assert [c["status"] for c in doc["checks"]] == ["fail", "fail"]
    assert "ZeroDivisionError" in doc["checks"][1]["messages"][0]


def test_warnings_do_not_fail(monkeypatch, capsys):
    rep = Report("golay.w", True, warnings=["misprint"])
    monkeypatch.setattr(checks, "REGISTRY", (checks.Check("golay.w", "golay", lambda ctx: rep, None),))
    assert run(["golay"], capsys)[0] == 0


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert run(["geometry", "--format", "json", "--out", str(path)], capsys)[0] == 0
    jsonschema.validate(json.loads(path.read_text()), schema())


def test_timings_are_opt_in():
    rep = checks.run_checks(["golay"], timings=True)
    assert all(isinstance(r.elapsed, float) for r in rep)
    assert all(r.elapsed is None for r in checks.run_checks(["golay"]))


def test_export_octads(capsys):
    code, out, _ = run(["export", "octads"], capsys)
    assert code == 0
    assert len(json.loads(out)) == 759


def test_export_combinations(capsys):
    assert run(["export", "octads", "--format", "bin"], capsys)[0] == 2
    assert run(["export", "gram", "--format", "bin"], capsys)[0] == 2
    with pytest.raises(exports.UnsupportedExport):
        exports.export_data("octads", "csv")
    with pytest.raises(SystemExit):
        cli.main(["export", "weights"])


def test_export_io_failure(tmp_path, capsys):
    assert run(["export", "plane-incidence", "--format", "csv", str(tmp_path / "no" / "x.csv")], capsys)[0] == 1


def test_exports_from_context(ctx):
    inc = list(csv.reader(io.StringIO(exports.export_data("incidence", "csv", ctx=ctx))))
    assert len(inc) == 42 and all(len(r) == 42 for r in inc)
    gram = json.loads(exports.export_data("gram", "json", ctx=ctx))
    assert len(gram) == 22 and all(len(r) == 22 for r in gram)
    roots168 = json.loads(exports.export_data("roots168", ctx=ctx))
    assert len(roots168) == 168
    configs = json.loads(exports.export_data("configs", ctx=ctx))
    assert configs
    assert exports.export_data("bijection", ctx=ctx) == exports.export_data("bijection", ctx=ctx)


def test_minvecs_bin_export(ctx, tmp_path):
    data = exports.export_data("minvecs", "bin", ctx=ctx)
    assert len(data) == 4 + 196560 * 48
