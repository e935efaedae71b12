import io
import json
import subprocess
import sys

import pytest

from heckeconv.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_range, read_config, UsageError


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_parse_range():
    assert parse_range("1..3,7") == [1, 2, 3, 7]
    assert parse_range("5") == [5]
    with pytest.raises(UsageError):
        parse_range("4..2")


def test_verify_exact_record_schema():
    code, text = run(["verify", "--r1", "1", "--r2", "3", "--d", "1", "--n", "1..3", "--exact"])
    assert code == EXIT_OK
    recs = records(text)
    assert [r["n"] for r in recs] == [1, 2, 3]
    r = recs[0]
    assert set(r) >= {"params", "n", "lhs", "rhs", "residual", "pass", "timings"}
    assert set(r["lhs"]) == {"value", "tail"} and set(r["rhs"]) == {"z1", "z2", "cusp"}
    assert set(r["residual"]) == {"abs", "rel"}
    re_part, im_part = r["lhs"]["value"]
    assert isinstance(re_part, str) and isinstance(im_part, str)
    assert r["residual"]["abs"] == "0" and r["pass"] is True
    assert r["timings"] is None


def test_verify_numeric_cusp_case():
    code, text = run(["verify", "--r1", "3", "--r2", "3", "--d", "2", "--n", "2", "--prec", "30"])
    assert code == EXIT_OK
    assert records(text)[0]["pass"] is True


@pytest.mark.parametrize("argv", [
    ["verify", "--r1", "0", "--r2", "0", "--d", "1"],
    ["verify", "--r1", "1/3", "--r2", "1/3", "--d", "14/3", "--exact"],
    ["verify", "--r1", "1", "--r2", "3"],
    ["regularize", "--r1", "7", "--r2", "7", "--d", "-8"],
    ["selftest", "--k", "24"],
    ["bogus"],
])
def test_usage_errors_exit_2(argv):
    assert run(argv)[0] == EXIT_USAGE


def test_regularize_printed_case_fails_numerically():
    code, text = run(["regularize", "--case", "reg_k12_r7r7", "--n", "2", "--prec", "30"])
    assert code == EXIT_FAIL
    rec = records(text)[0]
    assert rec["pass"] is False


def test_timings_flag():
    _, text = run(["verify", "--r1", "1", "--r2", "3", "--d", "1", "--n", "2", "--timings"])
    assert records(text)[0]["timings"] is not None


def test_config_file_and_flag_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nprec = 25\nformat = text\n")
    assert read_config(cfg)["digits"] == 25
    monkeypatch.setenv("HECKECONV_PREC", "40")
    _, text = run(["verify", "--r1", "1", "--r2", "3", "--d", "1", "--n", "2", "--config", str(cfg)])
    assert text.startswith("PASS")
    # the flag overrides the file
    _, text = run(["verify", "--r1", "1", "--r2", "3", "--d", "1", "--n", "2", "--config", str(cfg),
                   "--format", "json"])
    assert records(text)[0]["params"]["digits"] == 25
    _, text = run(["verify", "--r1", "1", "--r2", "3", "--d", "1", "--n", "2", "--format", "json"])
    assert records(text)[0]["params"]["digits"] == 40


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(["verify", "--r1", "1", "--r2", "3", "--d", "1", "--config", str(cfg)])[0] == EXIT_USAGE


def test_csv_output():
    _, text = run(["verify", "--r1", "1", "--r2", "3", "--d", "1", "--n", "1..2", "--format", "csv"])
    lines = text.splitlines()
    assert len(lines) == 3 and "," in lines[0]


def test_jobs_preserve_order():
    argv = ["verify", "--r1", "3", "--r2", "5", "--d", "2", "--n", "9,2,5"]
    serial = run(argv)[1]
    parallel = run(argv + ["--jobs", "2"])[1]
    assert serial == parallel
    assert [r["n"] for r in records(serial)] == [9, 2, 5]


def test_cache_dir_receives_table(tmp_path):
    code, _ = run(["verify", "--r1", "3", "--r2", "3", "--d", "2", "--n", "1", "--prec", "30",
                   "--cache-dir", str(tmp_path)])
    assert code == EXIT_OK
    path = tmp_path / "eigenform_k12.txt"
    assert path.read_text().split("\n", 1)[0].split()[0] == "12"


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "heckeconv.cli", "verify", "--r1", "2", "--r2", "4", "--d", "1",
            "--n", "1..2", "--terms", "200", "--prec", "30"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_selftest_quick_suite():
    code, text = run(["selftest", "--suite", "ramanujan", "--quick"])
    assert code == EXIT_OK
    assert all(r["pass"] for r in records(text))
