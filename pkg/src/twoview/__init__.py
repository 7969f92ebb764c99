"""Calibrated two-view relative pose toolkit.

Solves the essential-matrix equation linearly, enumerates all pose candidates,
identifies the physical one from two pose-only inequalities (no triangulation),
reconstructs relative depth in closed form, and detects pure-rotation motion.
A Monte Carlo harness sweeps parallax and pixel noise for benchmarking.
"""

from .camera import (
    CameraIntrinsics,
    CorrespondenceSet,
    Pose,
    normalized_to_pixel,
    pixel_to_normalized,
    project_pair,
)
from .decompose import PoseCandidate, PoseCandidateSet, decompose
from .errors import (
    ConfigInvalid,
    DegenerateConfiguration,
    NonPositiveDepth,
    ParseError,
    RankDeficientEssential,
    TooFewPoints,
    TwoViewError,
    ZeroVector,
)
from .essential import EssentialEstimate, build_constraint_matrix, build_l_matrix, solve_linear
from .harness import (
    ExperimentRecord,
    ScenarioConfig,
    add_pixel_noise,
    bench_timings,
    default_intrinsics,
    generate_scene,
    rotation_discrepancy,
    run_grid,
    translation_discrepancy,
)
from .identify import (
    IdentificationResult,
    cheirality_identify,
    identify,
    intersection_values,
    pose_only_residuals,
    same_side_values,
)
from .motion import MotionClassification, classify, compute_m3, compute_pri
from .pipeline import EstimateOutcome, estimate_relative_pose
from .reconstruct import ReconstructionResult, analytic_depths, dlt_triangulate

__version__ = "0.1.0"
