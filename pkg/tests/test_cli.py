import json

import numpy as np
import pytest

from conftest import make_scene
from twoview.cli import main
from twoview.harness import GRID_CSV_HEADER, rotation_discrepancy, translation_discrepancy


def write_scene_files(tmp_path, seed=0, alpha=0.5, n_pts=20, noise_px=0.0):
    points, pose, corr = make_scene(seed, alpha=alpha, n_pts=n_pts, noise_px=noise_px)
    corr_path = tmp_path / "pairs.txt"
    lines = ["# pixel correspondences: x1 y1 x2 y2"]
    for pl, pr in zip(corr.pixels_left, corr.pixels_right):
        lines.append(f"{float(pl[0])!r} {float(pl[1])!r} {float(pr[0])!r} {float(pr[1])!r}")
    corr_path.write_text("\n".join(lines) + "\n")
    intr_path = tmp_path / "intrinsics.txt"
    intr_path.write_text("fx=800\nfy=800\ncx=512\ncy=512\n")
    return corr_path, intr_path, points, pose


def test_estimate_roundtrip(tmp_path, capsys):
    corr_path, intr_path, points, pose = write_scene_files(tmp_path)
    rc = main(["estimate", str(corr_path), "--intrinsics", str(intr_path)])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    r_est = np.array(report["rotation"]).reshape(3, 3)
    t_est = np.array(report["translation"])
    assert rotation_discrepancy(pose.rotation, r_est) < 1e-6
    assert translation_discrepancy(pose.translation, t_est) < 1e-5
    assert report["votes"]["s1"][0] + report["votes"]["s1"][1] == 20
    assert max(report["votes"]["s2"]) == 20
    assert report["motion_label"] == "general_motion"
    # depths scale back to the world points
    t_len = np.linalg.norm(pose.translation)
    depths = np.array([p["depth_left_ratio"] for p in report["points"]])
    np.testing.assert_allclose(depths * t_len, points[:, 2], rtol=1e-6)
    # orthonormal after the JSON round trip
    assert np.abs(r_est.T @ r_est - np.eye(3)).max() < 1e-8


def test_estimate_too_few_points(tmp_path, capsys):
    corr_path, intr_path, _, _ = write_scene_files(tmp_path, n_pts=8)
    text = corr_path.read_text().strip().split("\n")
    corr_path.write_text("\n".join(text[:8]) + "\n")  # comment + 7 pairs
    rc = main(["estimate", str(corr_path), "--intrinsics", str(intr_path)])
    assert rc == 3
    assert json.loads(capsys.readouterr().out)["error"] == "too_few_points"


def test_estimate_degenerate(tmp_path, capsys):
    corr_path = tmp_path / "pairs.txt"
    corr_path.write_text("\n".join(["100 100 120 100"] * 10) + "\n")
    intr_path = tmp_path / "intrinsics.txt"
    intr_path.write_text("fx=800\nfy=800\ncx=512\ncy=512\n")
    rc = main(["estimate", str(corr_path), "--intrinsics", str(intr_path)])
    assert rc == 3
    assert json.loads(capsys.readouterr().out)["error"] == "degenerate_configuration"


def test_estimate_parse_failure(tmp_path, capsys):
    corr_path = tmp_path / "pairs.txt"
    corr_path.write_text("not numbers at all\n")
    rc = main(["estimate", str(corr_path), "--normalized"])
    assert rc == 2
    assert json.loads(capsys.readouterr().out)["error"] == "parse_error"


def test_estimate_missing_file(capsys):
    rc = main(["estimate", "/nonexistent/pairs.txt", "--normalized"])
    assert rc == 2


def test_estimate_pure_rotation(tmp_path, capsys):
    corr_path, intr_path, _, _ = write_scene_files(tmp_path, seed=3, alpha=0.0)
    rc = main(["estimate", str(corr_path), "--intrinsics", str(intr_path)])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["motion_label"] == "pure_rotation"
    assert all(not p["valid"] for p in report["points"])
    assert np.linalg.norm(report["translation"]) == pytest.approx(1.0, abs=1e-9)


def test_estimate_normalized_input(tmp_path, capsys):
    _, pose, corr = make_scene(4, alpha=0.5, n_pts=15)
    corr_path = tmp_path / "pairs.txt"
    rows = [
        f"{float(xl[0])!r} {float(xl[1])!r} {float(xr[0])!r} {float(xr[1])!r}"
        for xl, xr in zip(corr.x_left, corr.x_right)
    ]
    corr_path.write_text("\n".join(rows) + "\n")
    rc = main(["estimate", str(corr_path), "--normalized"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    r_est = np.array(report["rotation"]).reshape(3, 3)
    assert rotation_discrepancy(pose.rotation, r_est) < 1e-6


def test_estimate_csv_flag(tmp_path, capsys):
    corr_path, intr_path, _, _ = write_scene_files(tmp_path)
    rc = main(["estimate", str(corr_path), "--intrinsics", str(intr_path), "--csv"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0].startswith("#")
    assert lines[1] == "index,depth_left_ratio,depth_right_ratio,x,y,z,valid"
    assert len(lines) == 2 + 20


def test_classify_output(tmp_path, capsys):
    corr_path, intr_path, _, _ = write_scene_files(tmp_path, seed=5, alpha=0.0)
    rc = main(["classify", str(corr_path), "--intrinsics", str(intr_path)])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["motion_label"] == "pure_rotation"
    assert set(out) == {"motion_label", "pri", "m3", "delta_pri", "delta_theta"}


def test_simulate_grid_size(tmp_path, capsys):
    out_path = tmp_path / "grid.csv"
    rc = main(
        [
            "simulate",
            "--alpha-steps", "3",
            "--noise-steps", "3",
            "--n-scenes", "1",
            "--n-mc", "1",
            "--n-pts", "10",
            "--seed", "1",
            "--output", str(out_path),
        ]
    )
    assert rc == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines[1] == GRID_CSV_HEADER
    assert len(lines) == 2 + 9


def test_simulate_deterministic_metrics(tmp_path):
    args = [
        "simulate",
        "--alpha-steps", "2",
        "--noise-steps", "2",
        "--n-scenes", "1",
        "--n-mc", "2",
        "--n-pts", "10",
        "--seed", "42",
    ]
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert main(args + ["--output", str(out_a)]) == 0
    assert main(args + ["--output", str(out_b)]) == 0

    def strip_timings(path):
        lines = path.read_text().strip().split("\n")
        return [",".join(line.split(",")[:9]) for line in lines[2:]]

    assert strip_timings(out_a) == strip_timings(out_b)


def test_simulate_config_file(tmp_path):
    cfg_path = tmp_path / "sweep.cfg"
    cfg_path.write_text(
        "alpha_steps=2\nnoise_steps=1\nn_scenes=1\nn_mc=1\nn_pts=10\nseed=3\n"
    )
    out_path = tmp_path / "grid.csv"
    rc = main(["simulate", "--config", str(cfg_path), "--output", str(out_path)])
    assert rc == 0
    assert len(out_path.read_text().strip().split("\n")) == 2 + 2


def test_simulate_flag_overrides_config(tmp_path):
    cfg_path = tmp_path / "sweep.cfg"
    cfg_path.write_text("alpha_steps=5\nnoise_steps=1\nn_scenes=1\nn_mc=1\nn_pts=10\n")
    out_path = tmp_path / "grid.csv"
    rc = main(
        ["simulate", "--config", str(cfg_path), "--alpha-steps", "2", "--output", str(out_path)]
    )
    assert rc == 0
    assert len(out_path.read_text().strip().split("\n")) == 2 + 2


def test_simulate_invalid_config(capsys):
    rc = main(["simulate", "--alpha-min", "0"])
    assert rc == 2
    assert json.loads(capsys.readouterr().out)["error"] == "config_invalid"


def test_bench_single_rep(tmp_path):
    out_path = tmp_path / "bench.csv"
    rc = main(["bench", "--points", "16,32", "--reps", "1", "--output", str(out_path)])
    assert rc == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines[1] == "n_points,t_method1_ns,t_method2_ns,t_traditional_ns"
    assert len(lines) == 2 + 2


def test_bench_invalid_counts(capsys):
    rc = main(["bench", "--points", "4", "--reps", "1"])
    assert rc == 2
