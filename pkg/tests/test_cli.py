"""End-to-end CLI behaviour through main(argv)."""

import csv
import io
import json

import pytest

from twisted_hurwitz import cli
from twisted_hurwitz.cli import RunRecord, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def compute_args(tmp_path, *extra):
    return ("compute", "--cache-file", str(tmp_path / "cache.jsonl")) + extra


# -- compute ---------------------------------------------------------------------


def test_plain_output(tmp_path, capsys):
    code, out, err = run(
        capsys, *compute_args(tmp_path, "--method", "symgroup", "-d", "2", "-g", "3")
    )
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "16"
    assert "method=symgroup" in lines[1]
    assert "connected=true" in lines[1]
    assert "numerator" not in lines[1]


def test_plain_output_fractional_value(tmp_path, capsys):
    code, out, _ = run(
        capsys, *compute_args(tmp_path, "--method", "symgroup", "-d", "2", "-g", "1")
    )
    assert code == 0
    assert out.splitlines()[0] == "3/4"


def test_json_round_trip(tmp_path, capsys):
    code, out, _ = run(
        capsys,
        *compute_args(
            tmp_path, "--method", "symgroup", "-d", "2", "-g", "3", "--format", "json"
        ),
    )
    assert code == 0
    data = json.loads(out)
    record = RunRecord.from_dict(data)
    assert record.value == 16
    assert (record.method, record.d, record.g, record.connected) == (
        "symgroup",
        2,
        3,
        True,
    )
    assert record.as_dict() == data


def test_csv_output(tmp_path, capsys):
    code, out, _ = run(
        capsys,
        *compute_args(
            tmp_path, "--method", "fock", "-d", "2", "-g", "3", "--format", "csv"
        ),
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert rows[0]["numerator"] == "20" and rows[0]["denominator"] == "1"
    assert rows[0]["connected"] == "False"  # fock defaults to disconnected


def test_method_defaults_and_overrides(tmp_path, capsys):
    _, out, _ = run(
        capsys, *compute_args(tmp_path, "--method", "fock", "-d", "2", "-g", "2")
    )
    assert out.splitlines()[0] == "2"
    _, out, _ = run(
        capsys,
        *compute_args(
            tmp_path, "--method", "symgroup", "-d", "2", "-g", "2", "--disconnected"
        ),
    )
    assert out.splitlines()[0] == "2"
    _, out, _ = run(
        capsys, *compute_args(tmp_path, "--method", "feynman", "-d", "2", "-g", "3")
    )
    assert out.splitlines()[0] == "16"
    assert "normalization_reading=2^(g-1) multiplies, #Aut divides" in out.splitlines()[1]


def test_methods_agree_through_the_cli(tmp_path, capsys):
    values = {}
    for method in ("symgroup", "tropical", "feynman"):
        _, out, _ = run(
            capsys, *compute_args(tmp_path, "--method", method, "-d", "2", "-g", "4")
        )
        values[method] = out.splitlines()[0]
    assert values == {"symgroup": "56", "tropical": "56", "feynman": "56"}


def test_threads_flag_keeps_values(tmp_path, capsys):
    outs = []
    for i, threads in enumerate(("1", "2")):
        _, out, _ = run(
            capsys,
            "compute",
            "--cache-file",
            str(tmp_path / ("c%d.jsonl" % i)),  # separate caches: force recompute
            "--method",
            "symgroup",
            "-d",
            "2",
            "-g",
            "3",
            "--threads",
            threads,
        )
        outs.append(out.splitlines()[0])
    assert outs[0] == outs[1] == "16"


# -- incompatible queries ----------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ("--method", "tropical", "-d", "2", "-g", "1"),
        ("--method", "tropical", "-d", "2", "-g", "3", "--disconnected"),
        ("--method", "feynman", "-d", "2", "-g", "2"),
        ("--method", "fock", "-d", "2", "-g", "3", "--connected"),
        ("--method", "symgroup", "-d", "0", "-g", "3"),
        ("--method", "symgroup", "-d", "2", "-g", "0"),
    ],
)
def test_incompatible_parameters_exit_2(tmp_path, capsys, argv):
    code, out, err = run(capsys, *compute_args(tmp_path, *argv))
    assert code == 2
    assert out == ""
    assert err.startswith("incompatible parameters:")


def test_explicit_connected_flag_is_accepted_where_valid(tmp_path, capsys):
    code, out, _ = run(
        capsys,
        *compute_args(
            tmp_path, "--method", "tropical", "-d", "2", "-g", "3", "--connected"
        ),
    )
    assert code == 0 and out.splitlines()[0] == "16"


# -- budget ---------------------------------------------------------------------


def test_budget_flag_exit_3(tmp_path, capsys):
    code, out, err = run(
        capsys,
        *compute_args(
            tmp_path, "--method", "symgroup", "-d", "3", "-g", "4", "--budget", "10"
        ),
    )
    assert code == 3
    assert out == ""
    assert "step budget exceeded" in err


def test_budget_env_exit_3(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TH_BUDGET", "10")
    code, _, err = run(
        capsys, *compute_args(tmp_path, "--method", "symgroup", "-d", "2", "-g", "3")
    )
    assert code == 3 and "step budget exceeded" in err


# -- cache ----------------------------------------------------------------------


def test_cached_rerun_is_byte_identical(tmp_path, capsys):
    argv = compute_args(
        tmp_path, "--method", "symgroup", "-d", "2", "-g", "3", "--format", "json"
    )
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2  # including wall_time_ms: the record is replayed verbatim
    assert (tmp_path / "cache.jsonl").read_text().count("\n") == 1


def test_version_bump_misses_the_cache(tmp_path, capsys, monkeypatch):
    argv = compute_args(tmp_path, "--method", "symgroup", "-d", "2", "-g", "2")
    run(capsys, *argv)
    monkeypatch.setattr(cli, "__version__", "99.0")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == "2"
    assert "tool_version=99.0" in out.splitlines()[1]
    entries = (tmp_path / "cache.jsonl").read_text().splitlines()
    assert len(entries) == 2  # a second record was computed and stored


def test_corrupt_cache_lines_are_skipped(tmp_path, capsys):
    cache_file = tmp_path / "cache.jsonl"
    argv = (
        "compute", "--cache-file", str(cache_file),
        "--method", "symgroup", "-d", "2", "-g", "3", "--format", "json",
    )
    _, out1, _ = run(capsys, *argv)
    cache_file.write_text("{not json}\n" + cache_file.read_text())
    with pytest.warns(UserWarning, match="skipping corrupt cache line 1"):
        code, out2, _ = run(capsys, *argv)
    assert code == 0
    assert out2 == out1  # the valid record still hits


def test_cache_show_and_clear(tmp_path, capsys):
    cache_file = str(tmp_path / "cache.jsonl")
    run(
        capsys, "compute", "--cache-file", cache_file,
        "--method", "symgroup", "-d", "1", "-g", "1",
    )
    code, out, _ = run(capsys, "cache", "show", "--cache-file", cache_file)
    assert code == 0
    assert out.splitlines()[0].startswith("1 cached results in")
    assert json.loads(out.splitlines()[1])["numerator"] == "1"
    code, out, _ = run(capsys, "cache", "clear", "--cache-file", cache_file)
    assert code == 0 and "cache cleared" in out
    code, out, _ = run(capsys, "cache", "show", "--cache-file", cache_file)
    assert out.splitlines()[0].startswith("0 cached results")


# -- validate ---------------------------------------------------------------------


def test_validate_small_grid(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", "-d", "2", "-g", "3")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 7  # 6 grid rows + summary
    assert lines[-1] == "validate: all identities PASS"
    assert any("tropical==sym:PASS" in line for line in lines)
    assert any("fock==sym_disc:PASS" in line for line in lines)
    row11 = [line for line in lines if line.startswith("d=1 g=1")][0]
    assert "tropical=-" in row11 and "feynman=-" in row11


def test_validate_budget_skips(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", "-d", "2", "-g", "4", "--budget", "10")
    assert code == 0
    assert "SKIP" in out
    assert "FAIL" not in out
    assert "budget SKIPs" in out.splitlines()[-1]


# -- export ----------------------------------------------------------------------


def test_export_covers_json(tmp_path, capsys):
    target = tmp_path / "covers.json"
    code, out, _ = run(
        capsys, "export-covers", "-d", "2", "-g", "3", "--out", str(target)
    )
    assert code == 0
    assert out.startswith("5 covers at d=2 g=3")
    records = json.loads(target.read_text())
    assert len(records) == 5
    assert sorted(
        int(r["multiplicity"]["numerator"]) for r in records if r["multiplicity"]["denominator"] == "1"
    ) == [2, 2, 4, 4, 4]


def test_export_covers_dot(tmp_path, capsys):
    target = tmp_path / "dots"
    code, out, _ = run(
        capsys,
        "export-covers", "-d", "2", "-g", "3", "--out", str(target), "--format", "dot",
    )
    assert code == 0
    files = sorted(target.glob("cover_*.dot"))
    assert len(files) == 5
    for path in files:
        text = path.read_text()
        assert text.startswith("digraph %s {" % path.stem)
        assert text.count("{") == text.count("}") == 1
        assert text.rstrip().endswith("}")


def test_export_covers_rejects_genus_1(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "export-covers", "-d", "2", "-g", "1", "--out", str(tmp_path / "x.json"),
    )
    assert code == 2 and "incompatible parameters" in err


def test_export_covers_unwritable_path_exit_4(capsys):
    code, _, err = run(
        capsys,
        "export-covers", "-d", "2", "-g", "3", "--out", "/proc/nope/covers.json",
    )
    assert code == 4
    assert err.startswith("cannot write")


# -- misc ------------------------------------------------------------------------


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip().startswith("twisted-hurwitz ")
