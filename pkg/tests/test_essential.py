import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import make_scene
from twoview.camera import CorrespondenceSet
from twoview.errors import DegenerateConfiguration, TooFewPoints
from twoview.essential import (
    L_NULL_VECTORS,
    build_constraint_matrix,
    build_l_matrix,
    solve_linear,
)
from twoview.linalg import skew, vec


def test_constraint_row_hand_case():
    corr = CorrespondenceSet(
        x_left=np.tile([0.0, 0.0, 1.0], (8, 1)), x_right=np.tile([0.0, 0.0, 1.0], (8, 1))
    )
    rows = build_constraint_matrix(corr)
    assert_allclose(rows[0], [0, 0, 0, 0, 0, 0, 0, 0, 1])


def test_constraint_rows_collect_epipolar_residuals():
    _, pose, corr = make_scene(2, alpha=0.8, n_pts=20)
    rows = build_constraint_matrix(corr)
    # direct evaluation oracle for each pair
    q = np.random.default_rng(0).normal(size=(3, 3))
    direct = np.einsum("ij,jk,ik->i", corr.x_right, q, corr.x_left)
    assert_allclose(rows @ vec(q), direct, atol=1e-12)


def test_constraint_matrix_requires_eight():
    corr = CorrespondenceSet(
        x_left=np.tile([0.1, 0.2, 1.0], (7, 1)), x_right=np.tile([0.3, 0.4, 1.0], (7, 1))
    )
    with pytest.raises(TooFewPoints):
        build_constraint_matrix(corr)


def test_true_essential_in_nullspace():
    _, pose, corr = make_scene(3, alpha=0.9, n_pts=20)
    rows = build_constraint_matrix(corr)
    e_true = skew(pose.translation) @ pose.rotation
    assert np.linalg.norm(rows @ vec(e_true)) <= 1e-10


def test_solve_linear_aligns_with_truth():
    # any nonzero baseline, down to a millimeter-scale one, recovers the
    # essential direction exactly on clean data
    for seed in range(10):
        for alpha in (1e-3, 0.05, 0.5, 1.0):
            _, pose, corr = make_scene(seed, alpha=alpha)
            est = solve_linear(corr)
            e_true = skew(pose.translation) @ pose.rotation
            cosine = abs(vec(est.q) @ vec(e_true)) / (
                np.linalg.norm(vec(est.q)) * np.linalg.norm(vec(e_true))
            )
            assert cosine >= 1 - 1e-8


def test_solve_linear_unit_norm_and_spectrum():
    _, _, corr = make_scene(4, alpha=0.3)
    est = solve_linear(corr)
    assert abs(np.linalg.norm(vec(est.q)) - 1.0) < 1e-12
    s = est.svd.sigma
    assert_allclose(s[0], s[1], rtol=1e-12)
    assert s[2] <= 1e-12
    assert est.a_norm == pytest.approx(np.sqrt(0.5), rel=1e-12)


def test_solve_linear_cubic_constraint():
    # after projection the trace identity Q Q^T Q = tr(Q Q^T)/2 * Q is exact
    _, _, corr = make_scene(5, alpha=0.6, noise_px=1.0)
    q = solve_linear(corr).q
    lhs = q @ q.T @ q - 0.5 * np.trace(q @ q.T) * q
    assert np.abs(lhs).max() <= 1e-10 * np.linalg.norm(q)


def test_solve_linear_a_norm_identity():
    # the skew factor recovered through the true rotation matches a_norm
    _, pose, corr = make_scene(6, alpha=0.7)
    est = solve_linear(corr)
    skew_a = pose.rotation.T @ est.q
    a = np.array([skew_a[2, 1], skew_a[0, 2], skew_a[1, 0]])
    assert abs(np.linalg.norm(a) - est.a_norm) < 1e-10
    assert np.abs(skew_a + skew_a.T).max() < 1e-7


def test_solve_linear_pure_rotation_structure():
    # with zero baseline the solution is still rotation times a skew factor
    _, pose, corr = make_scene(7, alpha=0.0)
    est = solve_linear(corr)
    skew_a = pose.rotation.T @ est.q
    assert np.abs(skew_a + skew_a.T).max() < 1e-9


def test_solve_linear_degenerate_configuration():
    corr = CorrespondenceSet(
        x_left=np.tile([0.1, 0.2, 1.0], (10, 1)),
        x_right=np.tile([0.15, 0.25, 1.0], (10, 1)),
    )
    with pytest.raises(DegenerateConfiguration):
        solve_linear(corr)


def test_solve_linear_rescale_matches_default():
    # noiseless data: both weightings recover the same essential matrix
    _, _, corr = make_scene(8, alpha=0.5)
    q_plain = solve_linear(corr).q
    q_rescaled = solve_linear(corr, rescale=True).q
    delta = min(
        np.abs(q_plain - q_rescaled).max(), np.abs(q_plain + q_rescaled).max()
    )
    assert delta < 1e-9


def test_l_matrix_row_hand_case():
    corr = CorrespondenceSet(
        x_left=np.tile([1.0, 2.0, 1.0], (8, 1)), x_right=np.tile([0.0, 0.0, 1.0], (8, 1))
    )
    l = build_l_matrix(corr, np.full(8, 3.0))
    assert_allclose(l[0], [1, 2, 1, 3, 2, 4, 2, 6, 1, 2, 1, 3])


def test_l_matrix_null_vectors_exact():
    points, _, corr = make_scene(9, alpha=0.4, n_pts=12)
    inv_depths = 1.0 / points[:, 2]
    l = build_l_matrix(corr, inv_depths)
    for xi in L_NULL_VECTORS:
        residual = l @ xi
        assert np.all(residual == 0.0)


def test_l_matrix_rank_bound():
    for n_pts in (9, 12, 40):
        points, _, corr = make_scene(10, alpha=0.4, n_pts=n_pts)
        l = build_l_matrix(corr, 1.0 / points[:, 2])
        assert np.linalg.matrix_rank(l) <= 9


def test_l_matrix_requires_matching_depths():
    _, _, corr = make_scene(11, alpha=0.4, n_pts=9)
    with pytest.raises(ValueError):
        build_l_matrix(corr, np.ones(5))
