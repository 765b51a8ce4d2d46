"""
Born-rule Monte Carlo over two-outcome measurements and measurement chains.
"""
import logging
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.stats import chisquare

from chain import MultiOutcomePovm
from config import AVAILABLE_RNGS, DEFAULT_RNG, DEFAULT_SEED, SHOT_BATCH_SIZE
from qmat import Complex2x2, completeness_residual
from qubit import PolarizationState
from utils.errors import IncompleteSet, InvalidConfig

logger = logging.getLogger(__name__)

COMPLETENESS_TOL = 1e-8
NULL_BRANCH_TOL = 1e-300

_BIT_GENERATORS = {"philox": np.random.Philox, "pcg64": np.random.PCG64}


class OutcomeRecord(BaseModel):
    """Model for one sampled outcome; post_state is None on a zero-probability branch."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    outcome_index: int = Field(alias="outcome", ge=0)
    probability: float = Field(ge=0.0, le=1.0 + 1e-9)
    post_state: Optional[PolarizationState] = Field(default=None, alias="postState")


class ChainRunRecord(BaseModel):
    """Model for one run through a measurement chain."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    outcome_index: int = Field(alias="outcome", ge=0)
    measurements_performed: int = Field(alias="nMeas", ge=1)
    post_state: Optional[PolarizationState] = Field(default=None, alias="postState")


def make_rng(seed: int = DEFAULT_SEED, algorithm: str = DEFAULT_RNG, stream: int = 0) -> np.random.Generator:
    """
    Seedable generator on an independent stream.

    Args:
        seed: Root seed
        algorithm: 'philox' (counter based) or 'pcg64'
        stream: Stream id, e.g. the shot-batch index

    Returns:
        numpy Generator

    Raises:
        InvalidConfig: On an unknown algorithm
    """
    try:
        bit_generator = _BIT_GENERATORS[algorithm.lower()]
    except KeyError:
        raise InvalidConfig(f"unknown RNG '{algorithm}' (expected one of {', '.join(AVAILABLE_RNGS)})")
    return np.random.Generator(bit_generator(np.random.SeedSequence(seed, spawn_key=(stream,))))


def _post_state(vec: np.ndarray) -> Optional[PolarizationState]:
    norm2 = float(np.vdot(vec, vec).real)
    if norm2 <= NULL_BRANCH_TOL:
        return None
    return PolarizationState.from_vector(vec / np.sqrt(norm2), normalize=False)


def born_probabilities(state: PolarizationState, operators: Sequence[Complex2x2],
                       tol: float = COMPLETENESS_TOL) -> list[float]:
    """
    p_n = <psi|M_n^dagger M_n|psi>.

    Raises:
        IncompleteSet: If sum M_n^dagger M_n deviates from I by more than tol
    """
    residual = completeness_residual(operators)
    if residual > tol:
        raise IncompleteSet(f"operators are not complete (residual {residual:.3e})", residual=residual)
    psi = state.vector
    probs = []
    for op in operators:
        out = op @ psi
        probs.append(float(np.vdot(out, out).real))
    return probs


def _draw(probabilities: Sequence[float], uniforms: np.ndarray) -> np.ndarray:
    cumulative = np.cumsum(probabilities)
    cumulative = cumulative / cumulative[-1]
    return np.minimum(np.searchsorted(cumulative, uniforms, side="right"), len(cumulative) - 1)


def sample_outcome(state: PolarizationState, operators: Sequence[Complex2x2],
                   rng: np.random.Generator) -> OutcomeRecord:
    """
    Draw one outcome and the normalized post-measurement state.

    Raises:
        IncompleteSet: If the operators are not complete
    """
    probs = born_probabilities(state, operators)
    index = int(_draw(probs, np.array([rng.random()]))[0])
    post = _post_state(operators[index] @ state.vector)
    return OutcomeRecord(outcome_index=index, probability=min(1.0, probs[index]), post_state=post)


def sample_outcomes(state: PolarizationState, operators: Sequence[Complex2x2], shots: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Outcome indices of `shots` independent measurements."""
    probs = born_probabilities(state, operators)
    return _draw(probs, rng.random(shots))


def _stage_path(state: PolarizationState, povm: MultiOutcomePovm) -> list[float]:
    """Conditional termination probabilities along the never-terminated path."""
    psi = state.vector
    conditional = []
    for m1, m2 in zip(povm.stage_m1, povm.stage_m2):
        stop = m1 @ psi
        conditional.append(min(1.0, max(0.0, float(np.vdot(stop, stop).real))))
        go = m2 @ psi
        norm2 = float(np.vdot(go, go).real)
        psi = go / np.sqrt(norm2) if norm2 > NULL_BRANCH_TOL else np.zeros(2, dtype=np.complex128)
    return conditional


def run_chain(state: PolarizationState, povm: MultiOutcomePovm, rng: np.random.Generator) -> ChainRunRecord:
    """
    Simulate the chain stage by stage.

    At stage l a draw below the conditional probability terminates with outcome l
    after l+1 measurements; otherwise M2 is applied and the next stage runs.

    Raises:
        IncompleteSet: If the chain is not complete
    """
    _require_complete(povm)
    n_stages = povm.n_outcomes - 1
    psi = state.vector
    for index in range(n_stages):
        stop = povm.stage_m1[index] @ psi
        p_stop = float(np.vdot(stop, stop).real)
        if rng.random() < p_stop:
            post = _post_state(povm.w_ops[index] @ stop)
            return ChainRunRecord(outcome_index=index, measurements_performed=index + 1, post_state=post)
        go = povm.stage_m2[index] @ psi
        psi = go / np.sqrt(max(float(np.vdot(go, go).real), NULL_BRANCH_TOL))
    post = _post_state(povm.w_ops[-1] @ psi)
    return ChainRunRecord(outcome_index=n_stages, measurements_performed=n_stages, post_state=post)


def run_chain_shots(state: PolarizationState, povm: MultiOutcomePovm, shots: int,
                    rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized chain runs.

    Returns:
        (outcome indices, measurements performed) as integer arrays
    """
    _require_complete(povm)
    n_stages = povm.n_outcomes - 1
    conditional = _stage_path(state, povm)
    uniforms = rng.random((shots, n_stages))
    stops = uniforms < np.asarray(conditional)
    outcomes = np.where(stops.any(axis=1), stops.argmax(axis=1), n_stages)
    n_meas = np.minimum(outcomes + 1, n_stages)
    return outcomes, n_meas


def chain_outcome_probabilities(state: PolarizationState, povm: MultiOutcomePovm) -> list[float]:
    """Outcome distribution of stage-by-stage sampling: prod_{j<l} (1 - c_j) c_l."""
    conditional = _stage_path(state, povm)
    probs, survive = [], 1.0
    for c in conditional:
        probs.append(survive * c)
        survive *= 1.0 - c
    probs.append(survive)
    return probs


def expected_measurement_count(probabilities: Sequence[float]) -> float:
    """sum_l p_l min(l + 1, N - 1) for outcome probabilities of an N-outcome chain."""
    n = len(probabilities)
    return float(sum(p * min(index + 1, n - 1) for index, p in enumerate(probabilities)))


def chi_square(counts: Sequence[int], probabilities: Sequence[float]) -> tuple[float, float]:
    """
    Pearson chi-square of observed counts against outcome probabilities.

    Zero-probability bins are dropped (they must also be empty). No counts at all fit
    trivially.

    Returns:
        (statistic, p-value)
    """
    counts = np.asarray(counts, dtype=float)
    probs = np.asarray(probabilities, dtype=float)
    keep = probs > 0.0
    if np.any(counts[~keep] > 0):
        return float("inf"), 0.0
    observed = counts[keep]
    if observed.size < 2 or observed.sum() == 0:
        return 0.0, 1.0
    expected = probs[keep] / probs[keep].sum() * observed.sum()
    result = chisquare(observed, expected)
    return float(result.statistic), float(result.pvalue)


def _require_complete(povm: MultiOutcomePovm) -> None:
    residual = povm.completeness_residual()
    if residual > COMPLETENESS_TOL:
        raise IncompleteSet(f"chain is not complete (residual {residual:.3e})", residual=residual)


def run_batches(shots: int, draw, seed: int = DEFAULT_SEED, algorithm: str = DEFAULT_RNG,
                batch_size: int = SHOT_BATCH_SIZE):
    """
    Split `shots` into batches, batch i drawing from stream i.

    Args:
        shots: Total number of shots
        draw: Callable (n, rng) -> array or tuple of arrays
        seed: Root seed
        algorithm: RNG algorithm
        batch_size: Shots per batch

    Returns:
        Concatenation of the per-batch results (same structure as `draw`)
    """
    if shots < 0 or batch_size < 1:
        raise InvalidConfig(f"invalid shot count {shots} or batch size {batch_size}")
    chunks = []
    for stream, start in enumerate(range(0, shots, batch_size)):
        n = min(batch_size, shots - start)
        chunks.append(draw(n, make_rng(seed, algorithm, stream)))
    logger.debug("drew %d shots in %d batches", shots, len(chunks))
    if not chunks:
        chunks.append(draw(0, make_rng(seed, algorithm, 0)))
    if isinstance(chunks[0], tuple):
        return tuple(np.concatenate(parts) for parts in zip(*chunks))
    return np.concatenate(chunks)
