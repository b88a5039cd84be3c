import json

from pweil.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_5_11_json(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--n", "5", "--p", "11",
        "--format", "json", "--precision", "192", "--bound", "100")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert rep["split"]["g"] == 4
    assert rep["split"]["T"] == ["P0", "P1", "P2", "P3"]
    assert rep["split"]["S"] == ["P0", "P2"]
    assert rep["weil_basis"]["M"] == 1
    assert rep["weil_basis"]["rank"] == 2
    assert rep["closure"]["dimension"] == 2
    assert rep["closure"]["dense"] is True
    assert rep["gross_matrix"]["heuristic_rank"] == 2
    assert rep["argument_independence"]["certificate"]["status"] == "none-up-to-bound"


def test_analyze_5_19_rank_zero(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--n", "5", "--p", "19", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["weil_basis"]["rank"] == 0
    assert rep["split"]["T"] == []
    assert rep["argument_independence"] is None


def test_analyze_ramified_is_config_error(capsys):
    code, _, err = run_cli(capsys, "analyze", "--n", "5", "--p", "5")
    assert code == 2
    assert "ramified" in err


def test_analyze_rejects_bad_conductor(capsys):
    code, _, err = run_cli(capsys, "analyze", "--n", "6", "--p", "5")
    assert code == 2
    code, _, err = run_cli(capsys, "analyze", "--n", "5", "--p", "9")
    assert code == 2


def test_analyze_text_output_symbols(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--n", "5", "--p", "11",
                           "--precision", "192", "--bound", "100")
    assert code == 0
    assert "T (primes with P != P^c)" in out
    assert "S (representatives mod conjugation)" in out
    assert "M = 1" in out
    assert "rank E_p = 2" in out
    assert "PASS" in out


def test_scan_small_grid(capsys):
    code, out, _ = run_cli(
        capsys, "scan", "--n-range", "5,8", "--p-max", "30",
        "--precision", "128", "--bound", "100", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("n,p,f,g,T_size,S_size,rank,M")
    rows = [dict(zip(lines[0].split(","), ln.split(","))) for ln in lines[1:]]
    for row in rows:
        assert int(row["rank"]) * 2 == int(row["T_size"])
        n, p = int(row["n"]), int(row["p"])
        if p % n == 1:
            assert row["dense"] == "True"
    assert any(int(r["rank"]) > 0 for r in rows)


def test_scan_caps(capsys):
    code, _, err = run_cli(capsys, "scan", "--n-range", "24", "--p-max", "10")
    assert code == 2 and "cap" in err
    code, _, err = run_cli(capsys, "scan", "--n-range", "5", "--p-max", "5000")
    assert code == 2 and "cap" in err


def test_scan_cache_rerun_identical(capsys, tmp_path):
    args = ["scan", "--n-range", "5", "--p-max", "20", "--precision", "128",
            "--bound", "100", "--format", "csv", "--cache-dir", str(tmp_path)]
    code1, out1, _ = run_cli(capsys, *args)
    assert code1 == 0
    assert any(f.suffix == ".json" for f in tmp_path.iterdir())
    code2, out2, _ = run_cli(capsys, *args)
    assert code2 == 0
    assert out1 == out2


def test_analyze_cache(capsys, tmp_path):
    args = ["analyze", "--n", "5", "--p", "19", "--format", "json",
            "--cache-dir", str(tmp_path)]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_appendix_pass(capsys):
    code, out, _ = run_cli(
        capsys, "appendix", "--n", "5", "--p", "11", "--chars", "1", "1",
        "--precision", "320")
    assert code == 0
    assert "PASS" in out
    assert "reconstructs to" in out


def test_appendix_json(capsys):
    code, out, _ = run_cli(
        capsys, "appendix", "--n", "5", "--p", "11", "--chars", "1", "2",
        "--precision", "320", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["identity"]["ok"] is True
    assert rep["identity"]["rational"] is not None


def test_appendix_invalid_chars(capsys):
    code, _, err = run_cli(capsys, "appendix", "--n", "5", "--p", "11",
                           "--chars", "2", "3")
    assert code == 2
    code, _, err = run_cli(capsys, "appendix", "--n", "5", "--p", "7",
                           "--chars", "1", "1")
    assert code == 2  # 7 != 1 mod 5


def test_appendix_small_bound_fails(capsys):
    code, out, _ = run_cli(
        capsys, "appendix", "--n", "5", "--p", "11", "--chars", "1", "1",
        "--den-bound", "1", "--precision", "320")
    assert code == 1
    assert "FAIL" in out


def test_workers_flag(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "scan", "--n-range", "5", "--p-max", "15", "--precision", "128",
        "--bound", "100", "--format", "csv", "--workers", "2")
    assert code == 0
    assert out.count("\n") >= 4
