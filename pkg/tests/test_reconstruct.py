import numpy as np
from numpy.testing import assert_allclose

from conftest import make_scene
from twoview.camera import CorrespondenceSet
from twoview.decompose import decompose
from twoview.essential import solve_linear
from twoview.identify import identify
from twoview.reconstruct import analytic_depths, dlt_triangulate


def test_analytic_hand_case():
    # e x X' = (0,-1,0), X' x RX = (0,-1,0), e x RX = (0,-1,0): both depths 1
    corr = CorrespondenceSet(
        x_left=np.tile([0.0, 0.0, 1.0], (2, 1)), x_right=np.tile([1.0, 0.0, 1.0], (2, 1))
    )
    rec = analytic_depths(np.eye(3), np.array([1.0, 0.0, 0.0]), corr)
    assert_allclose(rec.depth_left, [1.0, 1.0], rtol=1e-12)
    assert_allclose(rec.depth_right, [1.0, 1.0], rtol=1e-12)
    assert_allclose(rec.points, [[0, 0, 1], [0, 0, 1]], atol=1e-12)
    assert rec.valid.all()


def test_analytic_matches_ground_truth():
    for seed in range(10):
        points, pose, corr = make_scene(seed, alpha=0.5)
        t_len = np.linalg.norm(pose.translation)
        rec = analytic_depths(
            pose.rotation, pose.translation / t_len, corr
        )
        assert rec.valid.all()
        rel = np.linalg.norm(rec.points * t_len - points, axis=1) / np.linalg.norm(
            points, axis=1
        )
        assert rel.max() <= 1e-8
        # depths scale back to the metric depths of both views
        assert_allclose(rec.depth_left * t_len, points[:, 2], rtol=1e-8)
        right = points @ pose.rotation.T + pose.translation
        assert_allclose(rec.depth_right * t_len, right[:, 2], rtol=1e-8)


def test_analytic_pure_rotation_all_invalid():
    _, pose, corr = make_scene(3, alpha=0.0)
    rec = analytic_depths(pose.rotation, np.array([1.0, 0.0, 0.0]), corr)
    assert not rec.valid.any()


def test_rewritten_imaging_identity():
    # x' equals the weighted sum of the rotated ray and the baseline direction
    _, pose, corr = make_scene(4, alpha=0.7)
    t_len = np.linalg.norm(pose.translation)
    e = pose.translation / t_len
    rx = corr.x_left @ pose.rotation.T
    w_ray = np.linalg.norm(np.cross(e, corr.x_right), axis=1) / np.linalg.norm(
        np.cross(e, rx), axis=1
    )
    w_base = np.linalg.norm(np.cross(corr.x_right, rx), axis=1) / np.linalg.norm(
        np.cross(e, rx), axis=1
    )
    recon = w_ray[:, None] * rx + w_base[:, None] * e
    assert np.abs(recon - corr.x_right).max() <= 1e-10


def test_depth_substitution_residual():
    # plugging the recovered depths back into the rigid relation
    _, pose, corr = make_scene(5, alpha=0.6)
    t_len = np.linalg.norm(pose.translation)
    rec = analytic_depths(pose.rotation, pose.translation / t_len, corr)
    lhs = rec.depth_right[:, None] * corr.x_right * t_len
    rhs = (rec.depth_left[:, None] * corr.x_left * t_len) @ pose.rotation.T + pose.translation
    assert np.abs(lhs - rhs).max() <= 1e-9 * t_len


def test_parallel_ray_norm_tracks_depth_growth():
    # pushing the scene away with a fixed baseline drives the ray cross norm
    # to zero exactly as both depth ratios diverge
    rng = np.random.default_rng(9)
    r = np.eye(3)
    e = np.array([1.0, 0.0, 0.0])
    prev_cross = None
    prev_depth = None
    for d in (10.0, 100.0, 1000.0, 10000.0):
        points = rng.uniform([-2, -2, d], [2, 2, d + 5], size=(20, 3))
        right = points - e  # unit baseline
        corr = CorrespondenceSet(
            x_left=points / points[:, 2:3], x_right=right / right[:, 2:3]
        )
        cross_norm = np.linalg.norm(
            np.cross(corr.x_right, corr.x_left @ r.T), axis=1
        ).mean()
        rec = analytic_depths(r, e, corr)
        depth = rec.depth_left.mean()
        if prev_cross is not None:
            assert cross_norm < prev_cross
            assert depth > prev_depth
        prev_cross, prev_depth = cross_norm, depth
    # at depth 1e4 with a unit baseline the cross norm is down to ~1/d
    assert prev_cross < 1e-3
    assert prev_depth > 1e3


def test_dlt_agrees_with_analytic():
    for seed in range(5):
        points, pose, corr = make_scene(seed, alpha=0.5)
        t_len = np.linalg.norm(pose.translation)
        t_dir = pose.translation / t_len
        rec_a = analytic_depths(pose.rotation, t_dir, corr)
        rec_d = dlt_triangulate(pose.rotation, t_dir, corr)
        assert_allclose(rec_d.depth_left, rec_a.depth_left, rtol=1e-8)
        assert_allclose(rec_d.points, rec_a.points, rtol=1e-8)


def test_dlt_signs_support_cheirality():
    _, _, corr = make_scene(6, alpha=0.5)
    cands = decompose(solve_linear(corr))
    all_positive = []
    for cand in cands.candidates:
        rec = dlt_triangulate(cand.rotation, cand.t_dir, corr)
        all_positive.append(bool(np.all((rec.depth_left > 0) & (rec.depth_right > 0))))
    assert sum(all_positive) == 1


def test_small_parallax_noisy_analytic_not_worse():
    # averaged over scenes, the closed form degrades no faster than DLT when
    # parallax is small and noise large
    err_a_total = 0.0
    err_d_total = 0.0
    for seed in range(15):
        points, pose, corr = make_scene(seed, alpha=0.02, noise_px=3.0)
        est = solve_linear(corr)
        cands = decompose(est)
        res = identify(cands, est.q, corr)
        t_len = np.linalg.norm(pose.translation)
        rec_a = analytic_depths(res.chosen.rotation, res.chosen.t_dir, corr)
        rec_d = dlt_triangulate(res.chosen.rotation, res.chosen.t_dir, corr)
        err_a = np.linalg.norm(rec_a.points * t_len - points, axis=1)
        err_d = np.linalg.norm(rec_d.points * t_len - points, axis=1)
        err_a_total += np.mean(err_a[np.isfinite(err_a)])
        err_d_total += np.mean(err_d[np.isfinite(err_d)])
    assert err_a_total <= err_d_total


def test_reconstruction_units_are_baseline_lengths():
    points, pose, corr = make_scene(7, alpha=0.5)
    t_len = np.linalg.norm(pose.translation)
    rec = analytic_depths(pose.rotation, pose.translation / t_len, corr)
    # left depth ratio times baseline length recovers the metric depth
    assert_allclose(rec.depth_left * t_len, points[:, 2], rtol=1e-8)
