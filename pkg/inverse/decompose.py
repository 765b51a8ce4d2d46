"""
Decomposition of a target N-outcome POVM into a chain of general two-outcome stages.
"""
import logging
from typing import Sequence

import numpy as np

from chain import build_chain, stage_pair
from config import INVERSE_TOL
from qmat import Complex2x2, completeness_residual, hermitian_eigensystem
from qubit import angles_of_ket
from schemas import ChainConfig, GtomTarget
from utils.errors import IncompleteSet, NotPsd, SingularStage
from utils.helpers import max_abs

from .solvers import solve_gtom_params

logger = logging.getLogger(__name__)

# Relative cutoff of the pseudo-inverse of a degenerate Y_l
PINV_RCOND = 1e-12


def _check_targets(targets: Sequence[Complex2x2], tol: float) -> None:
    if len(targets) < 2:
        raise IncompleteSet("a POVM needs at least two outcomes")
    for index, k in enumerate(targets):
        if not k.is_hermitian(tol) or not k.is_psd(tol):
            raise NotPsd(f"target K_{index + 1} is not positive semidefinite", invariant="positivity")
    residual = completeness_residual(targets)
    if residual > tol:
        raise IncompleteSet(f"targets are not complete (residual {residual:.3e})", residual=residual)


def _clipped_effect(a: Complex2x2):
    """Eigensystem of a stage effect with eigenvalues forced into [0, 1]."""
    system = hermitian_eigensystem(a.hermitized(), tol=np.inf)
    lam = [min(1.0, max(0.0, value)) for value in system.eigenvalues]
    return system, lam


def decompose_povm_to_chain(targets: Sequence[Complex2x2], tol: float = INVERSE_TOL) -> ChainConfig:
    """
    Chain config whose outcomes reproduce the given POVM up to left unitaries.

    Stage l must realize the effect A_l with Y_l^dagger A_l Y_l = K_l^dagger K_l,
    where Y_l is the continuing operator accumulated so far. A_l fixes the stage
    weights (p, q) and direction; when p + q < 1 the complementary weights are
    built and the terminating detector sits at port 2.

    Args:
        targets: N positive operators K_l with sum K_l^dagger K_l = I
        tol: Completeness and reconstruction tolerance

    Returns:
        ChainConfig with N - 1 GTOM stages and their exit ports

    Raises:
        NotPsd: If a target is not positive
        IncompleteSet: If the targets are not complete
        SingularStage: If an outcome acts outside the image of Y_l (reorder the outcomes)
        NoSolution: If a stage cannot be realized
    """
    targets = list(targets)
    _check_targets(targets, tol)

    y = np.eye(2, dtype=np.complex128)
    stages, ports = [], []
    for index, k in enumerate(targets[:-1]):
        effect = (k.dag @ k).array
        y_inv = np.linalg.pinv(y, rcond=PINV_RCOND)
        a = Complex2x2(y_inv.conj().T @ effect @ y_inv)
        gap = max_abs(y.conj().T @ a.array @ y - effect)
        if gap > tol:
            raise SingularStage(f"outcome {index + 1} is not reachable after {index} stages (residual {gap:.3e})",
                                invariant="stage reachability", residual=gap)

        system, (p, q) = _clipped_effect(a)
        theta, phi = angles_of_ket(system.vector(0))
        port = 1
        if p + q < 1.0:
            p, q, port = 1.0 - p, 1.0 - q, 2
        stage = solve_gtom_params(GtomTarget(p=p, q=q, theta=theta, phi=phi), tol)
        _, keep = stage_pair(stage, None, port)
        y = keep.array @ y
        stages.append(stage)
        ports.append(port)
        logger.debug("stage %d: p=%.6g q=%.6g port %d", index + 1, p, q, port)

    last = targets[-1]
    gap = max_abs((last.dag @ last).array - y.conj().T @ y)
    if gap > tol:
        raise SingularStage(f"terminal outcome does not match the remaining operator (residual {gap:.3e})",
                            invariant="terminal outcome", residual=gap)

    cfg = ChainConfig(stages=stages, exit_ports=ports)
    rebuilt = build_chain(cfg).effects()
    worst = max(e.max_abs_diff(k.dag @ k) for e, k in zip(rebuilt, targets))
    logger.debug("decomposed %d-outcome POVM: reconstruction residual %.3e", len(targets), worst)
    if worst > tol:
        raise SingularStage(f"rebuilt chain misses the targets (residual {worst:.3e})",
                            invariant="reconstruction", residual=worst)
    return cfg
