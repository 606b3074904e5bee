"""CLI black-box tests: exit codes, determinism, file formats."""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "locq.cli"]


def run_cli(*args, env=None):
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=full_env
    )


@pytest.fixture(scope="module")
def rep_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("codes") / "rep.json"
    res = run_cli("build", "--kind", "gen-rep", "--delta", "3", "--length", "5",
                  "--out", str(path))
    assert res.returncode == 0
    return path


@pytest.fixture(scope="module")
def sub_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("codes") / "sub.json"
    res = run_cli("build", "--kind", "subdivided", "--outer", "toric:3,3",
                  "--length", "3", "--out", str(path))
    assert res.returncode == 0
    return path


class TestBuild:
    def test_census_printed(self, tmp_path):
        res = run_cli("build", "--kind", "gen-rep", "--delta", "3", "--length", "5")
        assert res.returncode == 0
        assert "(hyper)edges: 7" in res.stdout

    def test_missing_length_exit_2(self):
        res = run_cli("build", "--kind", "gen-rep", "--delta", "3")
        assert res.returncode == 2

    def test_even_length_rejected(self):
        res = run_cli("build", "--kind", "gen-rep", "--delta", "3", "--length", "4")
        assert res.returncode == 2
        assert "odd" in res.stderr

    def test_unknown_kind_exit_2(self):
        res = run_cli("build", "--kind", "mystery", "--length", "3")
        assert res.returncode == 2

    def test_file_byte_stable(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            run_cli("build", "--kind", "gen-surface", "--delta", "3,3",
                    "--length", "3", "--out", str(path))
        assert a.read_bytes() == b.read_bytes()
        payload = json.loads(a.read_text())
        assert payload["format_version"] == 1


class TestDecode:
    def test_zero_error(self, sub_file, tmp_path):
        err = tmp_path / "e.json"
        err.write_text(json.dumps({"format_version": 1, "error": [], "erasure": []}))
        res = run_cli("decode", "--code", str(sub_file), "--error", str(err),
                      "--decoder", "subdivided")
        assert res.returncode == 0
        report = json.loads(res.stdout)
        assert report["failure"] is False
        assert report["correction"] == []

    def test_sampled_deterministic(self, sub_file, tmp_path):
        outs = []
        for name in ("r1.json", "r2.json"):
            out = tmp_path / name
            res = run_cli("decode", "--code", str(sub_file), "--sample", "0.02,0,9",
                          "--decoder", "subdivided", "--out", str(out))
            assert res.returncode == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_decoder_kind_mismatch_exit_3(self, sub_file, tmp_path):
        res = run_cli("decode", "--code", str(sub_file), "--sample", "0.01",
                      "--decoder", "rep-mwpm")
        assert res.returncode == 3
        patch = tmp_path / "patch.json"
        run_cli("build", "--kind", "gen-surface", "--delta", "3,3", "--length", "3",
                "--out", str(patch))
        res = run_cli("decode", "--code", str(patch), "--sample", "0.01",
                      "--decoder", "rep-mwpm")
        assert res.returncode == 3

    def test_parallel_flag_matches_serial(self, sub_file, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run_cli("decode", "--code", str(sub_file), "--sample", "0.03,0,4",
                "--decoder", "subdivided", "--out", str(a))
        run_cli("decode", "--code", str(sub_file), "--sample", "0.03,0,4",
                "--decoder", "subdivided", "--parallel-patches", "--out", str(b))
        ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
        assert ra["correction"] == rb["correction"]

    def test_rep_decode(self, rep_file):
        res = run_cli("decode", "--code", str(rep_file), "--sample", "0.2,0,3",
                      "--decoder", "rep-mwpm")
        assert res.returncode == 0
        report = json.loads(res.stdout)
        assert report["residual_syndrome_empty"] is True

    def test_tampered_code_file_exit_3(self, rep_file, tmp_path):
        payload = json.loads(rep_file.read_text())
        payload["hyperedges"][0]["vertices"] = [0]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(payload))
        res = run_cli("decode", "--code", str(bad), "--sample", "0.1",
                      "--decoder", "rep-mwpm")
        assert res.returncode == 3


class TestSweep:
    def test_single_zero_noise_row(self, tmp_path):
        out = tmp_path / "s.csv"
        res = run_cli("sweep", "--outer", "toric:3,3", "--L", "3", "--p", "0",
                      "--trials", "1", "--out", str(out))
        assert res.returncode == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == ("code_id,decoder,L,p,p_erase,trials,failures,"
                            "rate,ci_lo,ci_hi,seed")
        assert len(lines) == 2
        assert lines[1].split(",")[6] == "0"  # failures

    def test_seed_changes_rates(self, tmp_path):
        rows = {}
        for seed in ("3", "4"):
            out = tmp_path / f"s{seed}.csv"
            res = run_cli("sweep", "--outer", "toric:3,3", "--L", "3", "--p", "0.06",
                          "--trials", "120", "--seed", seed, "--out", str(out))
            assert res.returncode == 0
            rows[seed] = out.read_text().strip().split("\n")[1].split(",")
        r3, r4 = float(rows["3"][7]), float(rows["4"][7])
        assert r3 != r4
        # same parameters: intervals overlap
        assert float(rows["3"][8]) <= float(rows["4"][9])
        assert float(rows["4"][8]) <= float(rows["3"][9])

    def test_bounds_rows_appended(self, tmp_path):
        out = tmp_path / "b.csv"
        res = run_cli("sweep", "--outer", "toric:3,3", "--L", "3,5",
                      "--p", "0.01:0.02:0.01", "--trials", "5", "--out", str(out),
                      "--bounds")
        assert res.returncode == 0
        lines = out.read_text().strip().split("\n")[1:]
        bound_rows = [l for l in lines if ",bound:" in l]
        assert len(bound_rows) == 8  # hoeffding + mwpm_path per (L, p)
        for line in lines:
            assert len(line.split(",")) == 11

    def test_malformed_range_exit_2(self, tmp_path):
        res = run_cli("sweep", "--L", "3", "--p", "0.1:0.0:-1", "--trials", "1",
                      "--out", str(tmp_path / "x.csv"))
        assert res.returncode == 2

    def test_env_seed_fallback(self, tmp_path):
        outs = []
        for name in ("e1.csv", "e2.csv"):
            out = tmp_path / name
            res = run_cli("sweep", "--outer", "toric:3,3", "--L", "3", "--p", "0.05",
                          "--trials", "40", "--out", str(out),
                          env={"LOCQ_SEED": "77"})
            assert res.returncode == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        assert b",77" in outs[0]


class TestBench:
    def test_slope_reported(self, tmp_path):
        out = tmp_path / "bench.csv"
        res = run_cli("bench", "--decoder", "gen-uf", "--sizes", "3,5,9",
                      "--trials", "4", "--seed", "2", "--out", str(out))
        assert res.returncode == 0
        assert "slope_ops=" in res.stdout
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "decoder,size,n,ops,seconds"
        assert len(lines) == 4

    def test_single_size_flagged(self):
        res = run_cli("bench", "--decoder", "gen-uf", "--sizes", "5", "--trials", "2")
        assert res.returncode == 0
        assert "undefined" in res.stdout

    def test_empty_sizes_rejected(self):
        res = run_cli("bench", "--decoder", "gen-uf", "--sizes", "", "--trials", "2")
        assert res.returncode in (2, 3)
