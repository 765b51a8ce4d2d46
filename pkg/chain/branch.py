"""
N-outcome POVMs from a cascade of two-outcome measurements.

Stage l either terminates (outcome l) or hands the state to stage l+1:

    K_1 = M1(1),  K_l = W_l M1(l) Y_l,  K_N = W_N Y_N,  Y_{l+1} = M2(l) Y_l,  Y_1 = I

with each W taken from a polar decomposition so that every K is positive.
"""
import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import VALIDATION_TOL
from gtom import build_gtom
from optics import resolve_unitary
from qmat import IDENTITY, Complex2x2, completeness_residual, hs_inner, right_polar_decompose
from schemas import ChainConfig, GtomConfig, MatrixSpec, SolidStateConfig
from solidstate import partial_cnot_measurement
from utils.errors import InvalidConfig, InvariantViolation

logger = logging.getLogger(__name__)


class MultiOutcomePovm(BaseModel):
    """Operators K_l with the Y_l and W_l of the recursion and the per-stage pairs."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    k_ops: list[Complex2x2] = Field(alias="K")
    y_ops: list[Complex2x2] = Field(alias="Y", description="Y_1 = I through Y_N")
    w_ops: list[Complex2x2] = Field(alias="W")
    stage_m1: list[Complex2x2] = Field(alias="stageM1")
    stage_m2: list[Complex2x2] = Field(alias="stageM2")
    stage_kinds: list[str] = Field(alias="stageKinds")

    @property
    def n_outcomes(self) -> int:
        return len(self.k_ops)

    def effects(self) -> list[Complex2x2]:
        return [k.dag @ k for k in self.k_ops]

    def completeness_residual(self) -> float:
        return completeness_residual(self.k_ops)


def _conjugate(m: Complex2x2, rotation: Optional[Complex2x2]) -> Complex2x2:
    return m if rotation is None else rotation.dag @ m @ rotation


def stage_pair(stage, rotation: Optional[Complex2x2] = None, exit_port: int = 1) -> tuple[Complex2x2, Complex2x2]:
    """
    (terminating, continuing) operators of one stage.

    A GTOM stage folds the rotation into its SASTOM `pre` unitary; a solid-state
    stage is conjugated directly. Exit port 2 swaps the two outputs.
    """
    if isinstance(stage, GtomConfig):
        if rotation is not None:
            own = resolve_unitary(stage.sastom.pre, require_su2=False)
            sastom = stage.sastom.model_copy(update={"pre": MatrixSpec(m=own @ rotation)})
            stage = stage.model_copy(update={"sastom": sastom})
        result = build_gtom(stage)
        first, second = result.m1, result.m2
    elif isinstance(stage, SolidStateConfig):
        result = partial_cnot_measurement(stage)
        first, second = _conjugate(result.m0, rotation), _conjugate(result.m1, rotation)
    else:
        raise InvalidConfig(f"unsupported chain stage {type(stage).__name__}")

    if exit_port == 2:
        first, second = second, first
    elif exit_port != 1:
        raise InvalidConfig(f"exit port must be 1 or 2, got {exit_port}")
    return first, second


def chain_from_pairs(pairs, kinds=None, tol: float = VALIDATION_TOL) -> MultiOutcomePovm:
    """
    Run the recursion over (M1, M2) stage pairs.

    Args:
        pairs: Sequence of (terminating, continuing) operator pairs
        kinds: Optional stage labels for provenance
        tol: Completeness tolerance

    Returns:
        MultiOutcomePovm with N = len(pairs) + 1 outcomes

    Raises:
        InvalidConfig: If no stage is given
        InvariantViolation: If the result is not complete
    """
    pairs = list(pairs)
    if not pairs:
        raise InvalidConfig("a measurement chain needs at least one stage")
    kinds = list(kinds) if kinds is not None else ["pair"] * len(pairs)

    y = IDENTITY
    k_ops, y_ops, w_ops = [], [], []
    for m1, m2 in pairs:
        y_ops.append(y)
        polar = right_polar_decompose(m1 @ y)
        k_ops.append(polar.positive_part)
        w_ops.append(polar.unitary_part)
        y = m2 @ y
    # terminal outcome
    y_ops.append(y)
    polar = right_polar_decompose(y)
    k_ops.append(polar.positive_part)
    w_ops.append(polar.unitary_part)

    povm = MultiOutcomePovm(
        k_ops=k_ops,
        y_ops=y_ops,
        w_ops=w_ops,
        stage_m1=[m1 for m1, _ in pairs],
        stage_m2=[m2 for _, m2 in pairs],
        stage_kinds=kinds,
    )
    residual = povm.completeness_residual()
    logger.debug("chain with %d outcomes: completeness residual %.3e", povm.n_outcomes, residual)
    if residual > tol:
        raise InvariantViolation(f"chain POVM is incomplete (residual {residual:.3e})",
                                 invariant="completeness", residual=residual)
    return povm


def build_chain(cfg: ChainConfig, tol: float = VALIDATION_TOL) -> MultiOutcomePovm:
    """
    Build the N-outcome POVM of a chain config.

    Raises:
        InvalidConfig: If a stage or rotation is invalid
        InvariantViolation: If completeness fails
    """
    pairs, kinds = [], []
    for index, stage in enumerate(cfg.stages):
        spec = cfg.rotation(index)
        rotation = None if spec is None else resolve_unitary(spec, require_su2=False)
        pairs.append(stage_pair(stage, rotation, cfg.exit_port(index)))
        kinds.append(stage.kind)
    return chain_from_pairs(pairs, kinds, tol)


def povm_gram(povm: MultiOutcomePovm) -> np.ndarray:
    """N x N matrix of Tr E_l^dagger E_l' with E_l = K_l^dagger K_l."""
    effects = povm.effects()
    n = len(effects)
    gram = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            gram[i, j] = hs_inner(effects[i], effects[j]).real
    return gram


def conservation_residuals(povm: MultiOutcomePovm) -> list[float]:
    """
    Per-stage gaps of K_l^dagger K_l + Y_{l+1}^dagger Y_{l+1} = Y_l^dagger Y_l.

    The last entry compares K_N^dagger K_N with Y_N^dagger Y_N.
    """
    gaps = []
    n = povm.n_outcomes
    for index in range(n - 1):
        k, y, y_next = povm.k_ops[index], povm.y_ops[index], povm.y_ops[index + 1]
        gaps.append((k.dag @ k + y_next.dag @ y_next).max_abs_diff(y.dag @ y))
    k_last, y_last = povm.k_ops[-1], povm.y_ops[-1]
    gaps.append((k_last.dag @ k_last).max_abs_diff(y_last.dag @ y_last))
    return gaps


def check_conservation(povm: MultiOutcomePovm, tol: float = VALIDATION_TOL) -> float:
    """
    Largest conservation gap; also requires every K_l to be positive.

    Raises:
        InvariantViolation: If a gap exceeds tol or some K_l is not PSD
    """
    worst = max(conservation_residuals(povm))
    if worst > tol:
        raise InvariantViolation(f"probability conservation fails (residual {worst:.3e})",
                                 invariant="probability conservation", residual=worst)
    for index, k in enumerate(povm.k_ops):
        if not k.is_psd(tol):
            raise InvariantViolation(f"K_{index + 1} is not positive", invariant="positivity")
    return worst
