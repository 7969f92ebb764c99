"""End-to-end estimation: solve, enumerate, vote, classify, reconstruct."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .camera import CorrespondenceSet
from .decompose import PoseCandidateSet, decompose
from .essential import EssentialEstimate, build_constraint_matrix, solve_linear
from .identify import IdentificationResult, _identify_full, identify
from .motion import DEFAULT_DELTA_PRI, MotionClassification, classify
from .reconstruct import ReconstructionResult, _analytic_core, analytic_depths

__all__ = ["EstimateOutcome", "estimate_relative_pose", "identify_and_reconstruct"]


def identify_and_reconstruct(
    cands: PoseCandidateSet, q, corr: CorrespondenceSet, rows=None
) -> tuple[IdentificationResult, ReconstructionResult]:
    """Vote identification plus closed-form reconstruction in one pass.

    The per-pair ray norms and baseline projections computed for the
    intersection votes feed straight into the depth formulas, so the
    reconstruction costs little on top of the identification itself.
    """
    result, (nl, nr, dot_right, dot_left) = _identify_full(cands, q, corr, rows)
    chosen = result.chosen
    recon = _analytic_core(
        chosen.rotation, chosen.t_dir, corr, nl * nl, nr * nr, dot_right, dot_left
    )
    return result, recon


@dataclass(frozen=True)
class EstimateOutcome:
    estimate: EssentialEstimate
    candidates: PoseCandidateSet
    identification: IdentificationResult
    classification: MotionClassification
    reconstruction: ReconstructionResult
    t_identify_ns: int
    t_reconstruct_ns: int


def estimate_relative_pose(
    corr: CorrespondenceSet,
    delta_pri: float = DEFAULT_DELTA_PRI,
    delta_theta: float | None = None,
) -> EstimateOutcome:
    """Run the whole pipeline on one correspondence set.

    The constraint rows built for the linear solve are reused by the vote
    stage.  Raises TooFewPoints or DegenerateConfiguration from the solver.
    """
    t0 = time.perf_counter_ns()
    rows = build_constraint_matrix(corr)
    est = solve_linear(corr, rows=rows)
    cands = decompose(est)
    ident = identify(cands, est.q, corr, rows=rows)
    t_identify = time.perf_counter_ns() - t0
    t0 = time.perf_counter_ns()
    recon = analytic_depths(ident.chosen.rotation, ident.chosen.t_dir, corr)
    t_reconstruct = time.perf_counter_ns() - t0
    label = classify(
        ident.chosen.rotation, ident.chosen.t_dir, corr, delta_pri, delta_theta
    )
    return EstimateOutcome(
        estimate=est,
        candidates=cands,
        identification=ident,
        classification=label,
        reconstruction=recon,
        t_identify_ns=t_identify,
        t_reconstruct_ns=t_reconstruct,
    )
