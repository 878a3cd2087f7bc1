import json
import subprocess
import sys

import pytest

from conftest import FIXTURE_EU, FIXTURE_SEQ


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "huspmine", *args],
                          capture_output=True, text=True)


@pytest.fixture(scope="module")
def fixture_paths(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    seq = root / "db.seq"
    eu = root / "db.eu"
    seq.write_text(FIXTURE_SEQ)
    eu.write_text(FIXTURE_EU)
    return str(seq), str(eu)


def test_mine_half_ratio(fixture_paths, tmp_path):
    seq, eu = fixture_paths
    out = tmp_path / "res.txt"
    stats = tmp_path / "stats.json"
    proc = run_cli("mine", "--data", seq, "--utils", eu, "--ratio", "0.5",
                   "--out", str(out), "--stats", str(stats))
    assert proc.returncode == 0, proc.stderr
    assert out.read_text() == "1 2 -1 1 4 -2 #UTIL: 25\n"
    doc = json.loads(stats.read_text())
    assert doc["husps"] == 1
    assert doc["ratio"] == "1/2"
    assert doc["bound"] == "trsu"


def test_mine_to_stdout(fixture_paths):
    seq, eu = fixture_paths
    proc = run_cli("mine", "--data", seq, "--utils", eu, "--ratio", "0.5")
    assert proc.returncode == 0
    assert proc.stdout == "1 2 -1 1 4 -2 #UTIL: 25\n"
    assert json.loads(proc.stderr)["husps"] == 1


def test_mine_usage_errors(fixture_paths):
    seq, eu = fixture_paths
    assert run_cli("mine", "--data", seq, "--utils", eu,
                   "--ratio", "1.5").returncode == 2
    assert run_cli("mine", "--data", seq, "--utils", eu).returncode == 2
    assert run_cli("mine", "--data", seq, "--utils", eu, "--ratio", "0.5",
                   "--minutil", "3").returncode == 2
    assert run_cli("nonsense").returncode == 2


def test_mine_missing_file_is_data_error(fixture_paths, tmp_path):
    _, eu = fixture_paths
    proc = run_cli("mine", "--data", str(tmp_path / "absent.seq"),
                   "--utils", eu, "--ratio", "0.5")
    assert proc.returncode == 3
    assert "error" in proc.stderr


def test_mine_malformed_data_reports_position(fixture_paths, tmp_path):
    _, eu = fixture_paths
    bad = tmp_path / "bad.seq"
    bad.write_text("1:1 -2\n2:1 1:1 -2\n")
    proc = run_cli("mine", "--data", str(bad), "--utils", eu, "--ratio", "0.5")
    assert proc.returncode == 3
    assert "line 2" in proc.stderr


def test_bound_choice_changes_stats_not_results(fixture_paths, tmp_path):
    seq, eu = fixture_paths
    outs, docs = [], []
    for bound in ("trsu", "rsu"):
        out = tmp_path / f"{bound}.txt"
        stats = tmp_path / f"{bound}.json"
        proc = run_cli("mine", "--data", seq, "--utils", eu, "--ratio", "0.2",
                       "--bound", bound, "--out", str(out), "--stats", str(stats))
        assert proc.returncode == 0
        outs.append(out.read_text())
        docs.append(json.loads(stats.read_text()))
    assert outs[0] == outs[1]
    assert docs[0]["candidates"] <= docs[1]["candidates"]


def test_mine_rerun_is_byte_identical(fixture_paths, tmp_path):
    seq, eu = fixture_paths
    texts = []
    for tag in ("one", "two"):
        out = tmp_path / f"{tag}.txt"
        proc = run_cli("mine", "--data", seq, "--utils", eu, "--ratio", "0.2",
                       "--out", str(out), "--threads", "2")
        assert proc.returncode == 0
        texts.append(out.read_text())
    assert texts[0] == texts[1]


def test_verify_fixture(fixture_paths):
    seq, eu = fixture_paths
    proc = run_cli("verify", "--data", seq, "--utils", eu, "--ratio", "0.5",
                   "--seeds", "3")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert proc.stdout.count("PASS") == 4


def test_verify_exit_code_on_mismatch(fixture_paths, monkeypatch, capsys):
    import huspmine.cli as cli
    from huspmine.miner import HUSPResult, MineStats

    seq, eu = fixture_paths
    monkeypatch.setattr(cli, "mine",
                        lambda db, cfg: HUSPResult([], MineStats()))
    code = cli.main(["verify", "--data", seq, "--utils", eu, "--ratio", "0.5"])
    assert code == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "missing" in out


def test_verify_rejects_oversized_database(fixture_paths, tmp_path):
    _, eu = fixture_paths
    big = tmp_path / "big.seq"
    big.write_text("".join("1:1 -1 2:1 -2\n" for _ in range(9)))
    proc = run_cli("verify", "--data", str(big), "--utils", eu, "--ratio", "0.5")
    assert proc.returncode == 3
    assert "error" in proc.stderr


def test_gen_writes_reproducible_files(tmp_path):
    args = ("gen", "--d", "50", "--c", "3", "--t", "2", "--n", "25",
            "--seed", "1")
    first = run_cli(*args, "--out-prefix", str(tmp_path / "one"))
    second = run_cli(*args, "--out-prefix", str(tmp_path / "two"))
    assert first.returncode == 0 and second.returncode == 0
    assert (tmp_path / "one.seq").read_text() == (tmp_path / "two.seq").read_text()
    assert (tmp_path / "one.eu").read_text() == (tmp_path / "two.eu").read_text()
    from huspmine import load_database
    db = load_database(tmp_path / "one.seq", tmp_path / "one.eu")
    assert len(db.sequences) == 50


def test_gen_usage_error():
    assert run_cli("gen", "--d", "0", "--out-prefix", "x").returncode == 2


def test_bench_csv(fixture_paths, tmp_path):
    seq, eu = fixture_paths
    out = tmp_path / "bench.csv"
    proc = run_cli("bench", "--data", seq, "--utils", eu,
                   "--ratios", "0.5,0.2", "--configs", "trsu,rsu,trsu-noiip",
                   "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "config,ratio,runtime_ms,candidates,husps,mem_bytes"
    assert len(lines) == 7
    rows = [line.split(",") for line in lines[1:]]
    husps_by_ratio = {}
    for config, ratio, _, candidates, husps, _ in rows:
        husps_by_ratio.setdefault(ratio, set()).add(husps)
        assert int(candidates) >= 0
    assert all(len(v) == 1 for v in husps_by_ratio.values())


def test_bench_rejects_empty_ratio_list(fixture_paths):
    seq, eu = fixture_paths
    assert run_cli("bench", "--data", seq, "--utils", eu,
                   "--ratios", "").returncode == 2
