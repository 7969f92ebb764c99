"""Synthetic two-view scenes, Monte Carlo sweeps and the summary metrics."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .camera import CameraIntrinsics, CorrespondenceSet, Pose, normalized_to_pixel
from .decompose import decompose
from .errors import ConfigInvalid, ZeroVector
from .essential import build_constraint_matrix, solve_linear
from .identify import cheirality_identify, identify
from .motion import compute_m3, compute_pri
from .pipeline import identify_and_reconstruct
from .reconstruct import analytic_depths, dlt_triangulate

__all__ = [
    "BENCH_CSV_HEADER",
    "BENCH_CSV_SCHEMA",
    "BenchRecord",
    "ExperimentRecord",
    "GRID_CSV_HEADER",
    "GRID_CSV_SCHEMA",
    "ScenarioConfig",
    "add_pixel_noise",
    "bench_timings",
    "default_intrinsics",
    "euler_zyx_deg",
    "format_bench_csv",
    "format_grid_csv",
    "generate_scene",
    "rotation_discrepancy",
    "rotation_from_euler_zyx",
    "run_grid",
    "translation_discrepancy",
]

GRID_CSV_SCHEMA = "twoview-grid-v1"
GRID_CSV_HEADER = (
    "alpha,noise_std,rot_rmse_deg,trans_rmse_new_deg,trans_rmse_trad_deg,"
    "trans_diff_deg,ratio3d,pri_mean,m3_mean,t_identify_ns,t_cheirality_ns"
)
BENCH_CSV_SCHEMA = "twoview-bench-v1"
BENCH_CSV_HEADER = "n_points,t_method1_ns,t_method2_ns,t_traditional_ns"


def default_intrinsics() -> CameraIntrinsics:
    """The fixed synthetic camera: 800 px focal, 512 px principal point."""
    return CameraIntrinsics(fx=800.0, fy=800.0, cx=512.0, cy=512.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Monte Carlo sweep settings.

    World points are drawn uniformly in a cube centered at (0, 0, d) with side
    lengths (30, 30, d) meters.  The right view rotates by Euler angles drawn
    from zero-mean normals with stds euler_std_deg = (z, y, x) degrees and
    translates by alpha * t_max along a direction drawn uniformly on the unit
    circle in the x-y plane.  Pixel noise stds sweep noise_min..noise_max
    linearly while alpha sweeps alpha_min..alpha_max log-spaced.
    """

    d: float = 30.0
    n_pts: int = 50
    n_scenes: int = 20
    n_mc: int = 10
    alpha_min: float = 1e-3
    alpha_max: float = 1.0
    alpha_steps: int = 10
    noise_min: float = 0.1
    noise_max: float = 5.0
    noise_steps: int = 10
    t_max: float = 4.2
    seed: int = 0
    euler_std_deg: tuple = (5.0, 5.0, 20.0)

    def validate(self) -> None:
        if self.d <= 0 or self.t_max <= 0:
            raise ConfigInvalid("d and t_max must be positive")
        if self.n_pts < 8:
            raise ConfigInvalid("need at least 8 points per scene")
        if min(self.n_scenes, self.n_mc, self.alpha_steps, self.noise_steps) < 1:
            raise ConfigInvalid("all counts must be at least 1")
        if not 0 < self.alpha_min <= self.alpha_max:
            raise ConfigInvalid("alpha grid must satisfy 0 < alpha_min <= alpha_max")
        if not 0 <= self.noise_min <= self.noise_max:
            raise ConfigInvalid("noise grid must satisfy 0 <= noise_min <= noise_max")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigInvalid("seed must be a non-negative integer")
        if len(self.euler_std_deg) != 3 or any(s < 0 for s in self.euler_std_deg):
            raise ConfigInvalid("euler_std_deg must be three non-negative values")

    def alphas(self) -> np.ndarray:
        return np.logspace(
            np.log10(self.alpha_min), np.log10(self.alpha_max), self.alpha_steps
        )

    def noise_stds(self) -> np.ndarray:
        return np.linspace(self.noise_min, self.noise_max, self.noise_steps)


@dataclass(frozen=True)
class ExperimentRecord:
    """One (parallax, noise) grid cell's aggregated metrics."""

    alpha: float
    noise_std: float
    rot_rmse_deg: float
    trans_rmse_new_deg: float
    trans_rmse_trad_deg: float
    trans_diff_deg: float
    ratio3d: float
    pri_mean: float
    m3_mean: float
    t_identify_ns: int
    t_cheirality_ns: int

    def as_csv_row(self) -> str:
        floats = (
            self.alpha,
            self.noise_std,
            self.rot_rmse_deg,
            self.trans_rmse_new_deg,
            self.trans_rmse_trad_deg,
            self.trans_diff_deg,
            self.ratio3d,
            self.pri_mean,
            self.m3_mean,
        )
        parts = [repr(float(v)) for v in floats]
        parts += [str(int(self.t_identify_ns)), str(int(self.t_cheirality_ns))]
        return ",".join(parts)


def rotation_from_euler_zyx(z_deg: float, y_deg: float, x_deg: float) -> np.ndarray:
    """Rotation matrix Rz(z) @ Ry(y) @ Rx(x) from intrinsic z-y-x Euler angles."""
    z, y, x = np.deg2rad([z_deg, y_deg, x_deg])
    cz, sz = np.cos(z), np.sin(z)
    cy, sy = np.cos(y), np.sin(y)
    cx, sx = np.cos(x), np.sin(x)
    rz = np.array([[cz, -sz, 0.0], [sz, cz, 0.0], [0.0, 0.0, 1.0]])
    ry = np.array([[cy, 0.0, sy], [0.0, 1.0, 0.0], [-sy, 0.0, cy]])
    rx = np.array([[1.0, 0.0, 0.0], [0.0, cx, -sx], [0.0, sx, cx]])
    return rz @ ry @ rx


def euler_zyx_deg(rotation) -> np.ndarray:
    """Intrinsic z-y-x Euler angles (degrees) of a rotation matrix."""
    r = np.asarray(rotation, dtype=float)
    sy = -r[2, 0]
    if abs(sy) >= 1.0 - 1e-12:
        # Gimbal-locked: fold the x angle into z.
        y = np.arcsin(np.clip(sy, -1.0, 1.0))
        z = np.arctan2(-r[0, 1], r[1, 1])
        x = 0.0
    else:
        y = np.arcsin(sy)
        z = np.arctan2(r[1, 0], r[0, 0])
        x = np.arctan2(r[2, 1], r[2, 2])
    return np.rad2deg([z, y, x])


def rotation_discrepancy(r_true, r_est) -> float:
    """Mean absolute Euler angle, in degrees, of the residual rotation."""
    rel = np.asarray(r_true, dtype=float).T @ np.asarray(r_est, dtype=float)
    return float(np.sum(np.abs(euler_zyx_deg(rel))) / 3.0)


def translation_discrepancy(t_true, t_est) -> float:
    """Angle in degrees between two translation directions, in [0, 180]."""
    a = np.asarray(t_true, dtype=float)
    b = np.asarray(t_est, dtype=float)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("translation direction undefined for a zero vector")
    return float(np.degrees(np.arccos(np.clip(a @ b / (na * nb), -1.0, 1.0))))


def generate_scene(cfg: ScenarioConfig, alpha: float, rng, intrinsics=None):
    """One synthetic scene: world points, the right-view pose and clean pairs.

    alpha = 0 produces a pure-rotation scene.  Points that would fall behind
    either camera are resampled so every returned pair is projectable.
    """
    if alpha < 0:
        raise ConfigInvalid("alpha must be non-negative")
    intr = intrinsics if intrinsics is not None else default_intrinsics()
    angles = rng.normal(0.0, cfg.euler_std_deg)
    rotation = rotation_from_euler_zyx(*angles)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    translation = alpha * cfg.t_max * np.array([np.cos(phi), np.sin(phi), 0.0])
    pose = Pose(rotation=rotation, translation=translation)
    lo = np.array([-15.0, -15.0, 0.5 * cfg.d])
    hi = np.array([15.0, 15.0, 1.5 * cfg.d])
    points = np.empty((cfg.n_pts, 3))
    filled = 0
    attempts = 0
    while filled < cfg.n_pts:
        attempts += 1
        if attempts > 1000:
            raise ConfigInvalid("could not sample points visible in both views")
        draw = rng.uniform(lo, hi, size=(cfg.n_pts - filled, 3))
        right_z = draw @ rotation[2] + translation[2]
        kept = draw[(draw[:, 2] > 0) & (right_z > 0)]
        points[filled : filled + kept.shape[0]] = kept
        filled += kept.shape[0]
    right = points @ rotation.T + translation
    x_left = points / points[:, 2:3]
    x_right = right / right[:, 2:3]
    corr = CorrespondenceSet(
        x_left=x_left,
        x_right=x_right,
        pixels_left=normalized_to_pixel(x_left, intr),
        pixels_right=normalized_to_pixel(x_right, intr),
    )
    return points, pose, corr


def add_pixel_noise(corr: CorrespondenceSet, std_px: float, intrinsics, rng) -> CorrespondenceSet:
    """Add i.i.d. Gaussian pixel noise to both views and re-normalize."""
    if std_px < 0:
        raise ConfigInvalid("noise std must be non-negative")
    pl = corr.pixels_left
    pr = corr.pixels_right
    if pl is None or pr is None:
        pl = normalized_to_pixel(corr.x_left, intrinsics)
        pr = normalized_to_pixel(corr.x_right, intrinsics)
    pl = pl + rng.normal(0.0, std_px, size=pl.shape)
    pr = pr + rng.normal(0.0, std_px, size=pr.shape)
    return CorrespondenceSet.from_pixels(pl, pr, intrinsics)


def _finite_mean(values: np.ndarray) -> float:
    finite = values[np.isfinite(values)]
    return float(np.mean(finite)) if finite.size else float("inf")


def _run_trial(points, pose, corr):
    """Full pipeline on one noisy draw; returns the per-trial metric tuple.

    Each identification flavor is timed over its whole path from the
    correspondence arrays to the chosen pose (constraint rows, linear solve,
    candidate enumeration, disambiguation); the rows are built once and shared
    by the solve and the same-side votes.
    """
    t0 = time.perf_counter_ns()
    rows = build_constraint_matrix(corr)
    est = solve_linear(corr, rows=rows)
    cands = decompose(est)
    res = identify(cands, est.q, corr, rows=rows)
    t_identify = time.perf_counter_ns() - t0

    t0 = time.perf_counter_ns()
    rows_c = build_constraint_matrix(corr)
    est_c = solve_linear(corr, rows=rows_c)
    cands_c = decompose(est_c)
    res_trad = cheirality_identify(cands_c, corr)
    t_cheirality = time.perf_counter_ns() - t0

    rot_err = rotation_discrepancy(pose.rotation, res.chosen.rotation)
    t_len = float(np.linalg.norm(pose.translation))
    if t_len > 0:
        trans_new = translation_discrepancy(pose.translation, res.chosen.t_dir)
        trans_trad = translation_discrepancy(pose.translation, res_trad.chosen.t_dir)
    else:
        trans_new = trans_trad = float("nan")

    rec_anal = analytic_depths(res.chosen.rotation, res.chosen.t_dir, corr)
    rec_trad = dlt_triangulate(res.chosen.rotation, res.chosen.t_dir, corr)
    err_anal = _finite_mean(np.linalg.norm(rec_anal.points * t_len - points, axis=1))
    err_trad = _finite_mean(np.linalg.norm(rec_trad.points * t_len - points, axis=1))

    pri = compute_pri(res.chosen.rotation, res.chosen.t_dir, corr)
    m3 = compute_m3(res.chosen.rotation, corr)
    return (
        rot_err,
        trans_new,
        trans_trad,
        err_anal,
        err_trad,
        pri,
        m3,
        t_identify,
        t_cheirality,
    )


def _scene_rng(cfg: ScenarioConfig, alpha_idx: int, scene_idx: int):
    return np.random.default_rng(
        np.random.SeedSequence((cfg.seed, 101, alpha_idx, scene_idx))
    )


def _noise_rng(cfg: ScenarioConfig, alpha_idx: int, noise_idx: int, scene_idx: int, mc_idx: int):
    return np.random.default_rng(
        np.random.SeedSequence((cfg.seed, 202, alpha_idx, noise_idx, scene_idx, mc_idx))
    )


def _rms(values: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(values))))


def _run_cell(cfg: ScenarioConfig, alpha_idx: int, noise_idx: int) -> ExperimentRecord:
    """All trials of one grid cell: RMSE across Monte Carlo runs per scene,
    then means across scenes."""
    alpha = float(cfg.alphas()[alpha_idx])
    std = float(cfg.noise_stds()[noise_idx])
    intr = default_intrinsics()
    scene_rot = np.empty(cfg.n_scenes)
    scene_new = np.empty(cfg.n_scenes)
    scene_trad = np.empty(cfg.n_scenes)
    scene_anal3d = np.empty(cfg.n_scenes)
    scene_trad3d = np.empty(cfg.n_scenes)
    scene_pri = np.empty(cfg.n_scenes)
    scene_m3 = np.empty(cfg.n_scenes)
    t_id_total = 0
    t_ch_total = 0
    for si in range(cfg.n_scenes):
        points, pose, clean = generate_scene(cfg, alpha, _scene_rng(cfg, alpha_idx, si), intr)
        trial = np.empty((cfg.n_mc, 7))
        for mi in range(cfg.n_mc):
            noisy = add_pixel_noise(clean, std, intr, _noise_rng(cfg, alpha_idx, noise_idx, si, mi))
            out = _run_trial(points, pose, noisy)
            trial[mi] = out[:7]
            t_id_total += out[7]
            t_ch_total += out[8]
        scene_rot[si] = _rms(trial[:, 0])
        scene_new[si] = _rms(trial[:, 1])
        scene_trad[si] = _rms(trial[:, 2])
        scene_anal3d[si] = _rms(trial[:, 3])
        scene_trad3d[si] = _rms(trial[:, 4])
        scene_pri[si] = np.mean(trial[:, 5])
        scene_m3[si] = np.mean(trial[:, 6])
    n_trials = cfg.n_scenes * cfg.n_mc
    trad3d = float(np.mean(scene_trad3d))
    anal3d = float(np.mean(scene_anal3d))
    trans_new = float(np.mean(scene_new))
    trans_trad = float(np.mean(scene_trad))
    return ExperimentRecord(
        alpha=alpha,
        noise_std=std,
        rot_rmse_deg=float(np.mean(scene_rot)),
        trans_rmse_new_deg=trans_new,
        trans_rmse_trad_deg=trans_trad,
        trans_diff_deg=trans_trad - trans_new,
        ratio3d=anal3d / trad3d if trad3d > 0 else float("nan"),
        pri_mean=float(np.mean(scene_pri)),
        m3_mean=float(np.mean(scene_m3)),
        t_identify_ns=t_id_total // n_trials,
        t_cheirality_ns=t_ch_total // n_trials,
    )


def _cell_entry(args):
    cfg, alpha_idx, noise_idx = args
    return _run_cell(cfg, alpha_idx, noise_idx)


def run_grid(cfg: ScenarioConfig, workers: int = 1) -> list[ExperimentRecord]:
    """Sweep the full (alpha, noise) grid.

    Per-trial RNG streams are derived from (seed, alpha index, noise index,
    scene index, mc index) and results are collected in fixed cell order, so
    every metric column is reproducible regardless of worker count; only the
    wall-clock timing columns vary between runs.
    """
    cfg.validate()
    cells = [
        (cfg, ai, ni)
        for ai in range(cfg.alpha_steps)
        for ni in range(cfg.noise_steps)
    ]
    if workers <= 1:
        return [_cell_entry(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_cell_entry, cells))


def format_grid_csv(records) -> str:
    lines = [f"# {GRID_CSV_SCHEMA}", GRID_CSV_HEADER]
    lines += [rec.as_csv_row() for rec in records]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BenchRecord:
    """Mean wall time per identification flavor at one point count.

    method1: vote-based identification (candidate enumeration included);
    method2: method1 plus the closed-form reconstruction;
    traditional: triangulate-and-count baseline.
    """

    n_points: int
    t_method1_ns: int
    t_method2_ns: int
    t_traditional_ns: int

    def as_csv_row(self) -> str:
        return ",".join(
            str(int(v))
            for v in (
                self.n_points,
                self.t_method1_ns,
                self.t_method2_ns,
                self.t_traditional_ns,
            )
        )


def _mean_times_ns(fns, reps: int) -> list[int]:
    # Round-robin the repetitions so every flavor sees the same machine
    # conditions; blocks measured back to back skew under CPU contention.
    for fn in fns:
        fn()  # warm-up
    totals = [0] * len(fns)
    for _ in range(reps):
        for i, fn in enumerate(fns):
            t0 = time.perf_counter_ns()
            fn()
            totals[i] += time.perf_counter_ns() - t0
    return [total // reps for total in totals]


def bench_timings(
    point_counts,
    reps: int = 20,
    seed: int = 0,
    noise_px: float = 0.5,
    alpha: float = 0.5,
    d: float = 30.0,
) -> list[BenchRecord]:
    """Time the identification flavors on one noisy scene per point count.

    Every flavor is timed from the correspondence arrays to the chosen pose:
    constraint rows (built once, shared by the solve and the same-side votes),
    linear solve, candidate enumeration, then either the vote counts
    (method 1), votes plus the closed-form reconstruction (method 2), or the
    triangulate-and-count baseline (traditional).  Producing the
    correspondences themselves is upstream work and excluded.
    """
    counts = [int(c) for c in point_counts]
    if not counts or min(counts) < 8:
        raise ConfigInvalid("point counts must be at least 8")
    if reps < 1:
        raise ConfigInvalid("reps must be at least 1")
    records = []
    for m in counts:
        cfg = ScenarioConfig(d=d, n_pts=m, seed=seed)
        rng = np.random.default_rng(np.random.SeedSequence((seed, 303, m)))
        intr = default_intrinsics()
        _, _, clean = generate_scene(cfg, alpha, rng, intr)
        corr = add_pixel_noise(clean, noise_px, intr, rng)

        def method1():
            rows = build_constraint_matrix(corr)
            est = solve_linear(corr, rows=rows)
            cands = decompose(est)
            identify(cands, est.q, corr, rows=rows)

        def method2():
            rows = build_constraint_matrix(corr)
            est = solve_linear(corr, rows=rows)
            cands = decompose(est)
            identify_and_reconstruct(cands, est.q, corr, rows=rows)

        def traditional():
            rows = build_constraint_matrix(corr)
            est = solve_linear(corr, rows=rows)
            cands = decompose(est)
            cheirality_identify(cands, corr)

        t1, t2, t3 = _mean_times_ns((method1, method2, traditional), reps)
        records.append(
            BenchRecord(
                n_points=m, t_method1_ns=t1, t_method2_ns=t2, t_traditional_ns=t3
            )
        )
    return records


def format_bench_csv(records) -> str:
    lines = [f"# {BENCH_CSV_SCHEMA}", BENCH_CSV_HEADER]
    lines += [rec.as_csv_row() for rec in records]
    return "\n".join(lines) + "\n"
