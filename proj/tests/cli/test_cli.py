import csv
import hashlib
import io
import json
import os
import subprocess

import pytest

CLI = os.environ.get("MODGROWTH_CLI", "modgrowth")


def run(*args, env=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=env)


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def counts(text):
    return {(r["variant"], float(r["R"])): int(r["count"]) for r in rows(text)}


def sha256(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def test_ball_examples():
    out = run("ball", "--center", "i", "--radius", "1.0", "--units", "hyp")
    assert out.returncode == 0
    assert counts(out.stdout) == {("omega", 1.0): 10, ("orbit", 1.0): 5}
    out = run("ball", "--center", "i", "--radius", "0")
    assert counts(out.stdout) == {("omega", 0.0): 2, ("orbit", 0.0): 1}


def test_ball_teich_radius_is_halved():
    hyp = counts(run("ball", "--center", "i", "--radius", "4").stdout)
    teich = counts(run("--units", "teich", "ball", "--center", "i", "--radius", "2").stdout)
    assert hyp[("omega", 4.0)] == teich[("omega", 2.0)]


@pytest.mark.parametrize(
    "args, code",
    [
        (["ball", "--center", "1+x", "--radius", "1"], 1),
        (["ball", "--center", "1-i", "--radius", "1"], 1),
        (["ball", "--center", "i", "--radius", "-1"], 1),
        (["ball", "--center", "i", "--radius", "200"], 3),
        (["conj", "--phi", "1,1,0,1", "--X", "i", "--Y", "i", "--radii", "2"], 1),
        (["conj", "--phi", "2,1,1,2", "--X", "i", "--Y", "i", "--radii", "2"], 1),
        (["verify", "--suite", "nope"], 1),
        (["frobnicate"], 1),
    ],
)
def test_exit_codes(args, code):
    assert run(*args).returncode == code


def test_conj_examples():
    out = run("conj", "--phi", "2,1,1,1", "--X", "i", "--Y", "i", "--radii", "1,1.93", "--A", "1.75")
    assert out.returncode == 0
    # Four conjugates move i by exactly lambda = 1.9248..., with distinct images.
    assert counts(out.stdout) == {("gamma", 1.0): 0, ("gamma", 1.93): 4}


def test_verify_identities_passes():
    out = run("verify", "--suite", "identities", "--cases", "2000")
    assert out.returncode == 0
    assert json.loads(out.stdout)["pass"] is True


def test_verify_inclusions_with_tiny_A_reports_witnesses():
    out = run("verify", "--suite", "inclusions", "--A", "0.01")
    assert out.returncode == 2
    report = json.loads(out.stdout)
    assert report["pass"] is False
    assert any(case["ball_not_in_plus"] for case in report["cases"])


def test_verify_sandwich_passes():
    out = run("verify", "--suite", "sandwich", "--A", "1.75")
    assert out.returncode == 0, out.stdout


def test_constants_example():
    out = run("constants", "--N", "3", "--h", "2", "--A", "1")
    assert out.returncode == 0
    assert json.loads(out.stdout)["G_U"] == pytest.approx(8.15485, abs=1e-5)


def test_calibrate_bound():
    out = run("calibrate", "--samples", "10000")
    assert out.returncode == 0
    assert json.loads(out.stdout)["A_hyp"] <= 3.0


def test_fit_on_exported_orbit_csv(tmp_path):
    path = tmp_path / "census.csv"
    out = run("census", "--center", "i", "--radii", "8:14:0.5", "--out", str(path))
    assert out.returncode == 0
    fit = run("fit", "--in", str(path), "--variant", "omega", "--lo", "8", "--hi", "14")
    assert fit.returncode == 0
    assert json.loads(fit.stdout)["slope"] == pytest.approx(1.0, abs=0.05)


def test_outputs_reproduce_across_thread_counts(tmp_path):
    args = ["conj", "--phi", "2,1,1,1", "--X", "1/3+3/2*i", "--Y", "i", "--radii", "2:12:0.5", "--A", "1.75"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run("--threads", "1", *args, "--out", str(a)).returncode == 0
    assert run("--threads", "4", *args, "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()
    manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
    assert manifest["outputs"][0]["sha256"] == sha256(a)
    assert manifest["phi"] == "(2 1; 1 1)"
    assert manifest["threads"] == 1
    assert "boundary_hits" in manifest


def test_rerun_is_idempotent(tmp_path):
    path = tmp_path / "ball.csv"
    args = ["census", "--center", "i", "--radii", "1:6:1", "--out", str(path)]
    assert run(*args).returncode == 0
    before = (path.read_bytes(), path.stat().st_mtime_ns)
    assert run(*args).returncode == 0
    assert (path.read_bytes(), path.stat().st_mtime_ns) == before
    lines = path.read_text().splitlines()
    assert lines[0] == "R,units,count,variant"
    assert len(lines) == 1 + 6 * 5


def test_config_file_and_unknown_keys(tmp_path):
    good = tmp_path / "good.conf"
    good.write_text("units = teich\nthreads = 2\n")
    out = run("--config", str(good), "ball", "--center", "i", "--radius", "2")
    assert counts(out.stdout)[("omega", 2.0)] == counts(run("ball", "--center", "i", "--radius", "4").stdout)[("omega", 4.0)]
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    assert run("--config", str(bad), "ball", "--center", "i", "--radius", "1").returncode == 1
    env = dict(os.environ, MODGROWTH_CONFIG=str(bad))
    assert run("ball", "--center", "i", "--radius", "1", env=env).returncode == 1
