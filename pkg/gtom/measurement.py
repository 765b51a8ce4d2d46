"""
General two-outcome measurements: a SASTOM recombined on a second beam splitter.
"""
import logging
import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import VALIDATION_TOL
from optics import beam_splitter
from qmat import IDENTITY, ZERO, Complex2x2, completeness_residual, hs_inner, right_polar_decompose
from qubit import ket_from_angles, orthogonal_ket
from sastom import SastomCharacterization, build_sastom
from schemas import GtomConfig, MatrixSpec, SastomConfig
from utils.errors import InvariantViolation, OutOfRange

logger = logging.getLogger(__name__)

# Tolerance of the closed-form indistinguishability identity
INDISTINGUISHABILITY_TOL = 1e-12


class GtomResult(BaseModel):
    """Measurement operators M1' = X1' and M2' = S X2' with their weights p, q."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    m1: Complex2x2
    m2: Complex2x2
    s_gate: Complex2x2 = Field(alias="sGate")
    s_kind: Literal["phase", "identity"] = Field(alias="sKind")
    p: float
    q: float
    delta: float
    characterization: SastomCharacterization

    @property
    def operators(self) -> list[Complex2x2]:
        return [self.m1, self.m2]

    def effects(self) -> tuple[Complex2x2, Complex2x2]:
        return self.m1.dag @ self.m1, self.m2.dag @ self.m2


def gtom_weights(epsilon: float, r_prime: float) -> tuple[float, float]:
    """
    (p, q) from sqrt(p) = r' a + t' b and sqrt(q) = r' b + t' a, a, b = sqrt((1 +- eps)/2).
    """
    t_prime = math.sqrt(max(0.0, 1.0 - r_prime ** 2))
    a = math.sqrt((1.0 + epsilon) / 2.0)
    b = math.sqrt(max(0.0, (1.0 - epsilon) / 2.0))
    return (r_prime * a + t_prime * b) ** 2, (r_prime * b + t_prime * a) ** 2


def phase_gate_predicted(epsilon: float, r_prime: float) -> bool:
    """sqrt(1 - eps^2) <= 2 r' t'."""
    t_prime = math.sqrt(max(0.0, 1.0 - r_prime ** 2))
    return math.sqrt(max(0.0, 1.0 - epsilon ** 2)) <= 2.0 * r_prime * t_prime


def classify_s_gate(s: Complex2x2, char: SastomCharacterization, tol: float = VALIDATION_TOL) -> str:
    """'phase' for +-(|m+><m+| - |m-><m-|), 'identity' for +-I."""
    flip = char.projector_plus() - char.projector_minus()
    if min(s.max_abs_diff(flip), s.max_abs_diff(-flip)) <= tol:
        return "phase"
    if min(s.max_abs_diff(IDENTITY), s.max_abs_diff(-IDENTITY)) <= tol:
        return "identity"
    raise InvariantViolation("compensation gate is neither a phase gate nor the identity",
                             invariant="compensation gate form")


def build_gtom(cfg: GtomConfig, tol: float = VALIDATION_TOL) -> GtomResult:
    """
    Build the general two-outcome measurement of a GTOM config.

    X1' = r' M1 + t' M2 is already positive; S is the unitary part of X2' = t' M1 - r' M2.

    Args:
        cfg: SASTOM plus second beam splitter
        tol: Validation tolerance

    Returns:
        GtomResult

    Raises:
        InvalidConfig: If the underlying SASTOM is invalid
        InvariantViolation: If completeness, the trace identity or the phase-gate
            condition fails
    """
    pair = build_sastom(cfg.sastom, tol=tol)
    char = pair.characterization
    bs = beam_splitter(cfg.r_prime)
    x1 = pair.m1 * bs[0, 0] + pair.m2 * bs[0, 1]
    x2 = pair.m1 * bs[1, 0] + pair.m2 * bs[1, 1]

    m1 = x1.hermitized()
    if x2.max_abs_diff(ZERO) <= tol:
        # outcome 2 never fires (p = q = 1); S is taken as the identity
        m2, s_gate, s_kind = ZERO, IDENTITY, "identity"
    else:
        polar = right_polar_decompose(x2)
        m2, s_gate = polar.positive_part, polar.unitary_part
        s_kind = classify_s_gate(s_gate, char)

    p, q = gtom_weights(char.epsilon, cfg.r_prime)
    delta = p + q - 1.0

    residual = completeness_residual([m1, m2])
    if residual > tol:
        raise InvariantViolation(f"GTOM operators are incomplete (residual {residual:.3e})",
                                 invariant="completeness", residual=residual)

    # dual path: weights from the coefficient formulas against the effect's diagonal
    e1 = m1.dag @ m1
    plus = np.array(char.m_plus, dtype=np.complex128)
    minus = np.array(char.m_minus, dtype=np.complex128)
    weight_err = max(abs(np.vdot(plus, e1 @ plus).real - p), abs(np.vdot(minus, e1 @ minus).real - q))
    trace_err = abs(e1.trace().real - (1.0 + delta))
    if max(weight_err, trace_err) > tol:
        raise InvariantViolation(f"p, q disagree with M1' (residual {max(weight_err, trace_err):.3e})",
                                 invariant="trace identity", residual=max(weight_err, trace_err))

    # phase-gate condition cross-check away from its boundary
    a, b = char.eigenvalues()
    c_plus = cfg.t_prime * a - cfg.r_prime * b
    c_minus = cfg.t_prime * b - cfg.r_prime * a
    if abs(c_plus) > tol and abs(c_minus) > tol:
        predicted = "phase" if phase_gate_predicted(char.epsilon, cfg.r_prime) else "identity"
        if predicted != s_kind:
            raise InvariantViolation(f"phase-gate condition predicts {predicted}, decomposition gave {s_kind}",
                                     invariant="phase-gate condition")

    logger.debug("GTOM r'=%.6g eps=%.6g: p=%.6g q=%.6g S=%s", cfg.r_prime, char.epsilon, p, q, s_kind)
    return GtomResult(m1=m1, m2=m2, s_gate=s_gate, s_kind=s_kind, p=p, q=q, delta=delta, characterization=char)


def _root(x: float) -> float:
    return math.sqrt(min(1.0, max(0.0, x)))


def analytic_gtom_operators(p: float, q: float, m_plus, m_minus) -> tuple[Complex2x2, Complex2x2]:
    """
    M1' = sqrt(p)|m+><m+| + sqrt(q)|m-><m-|, M2' = sqrt(1-p)|m+><m+| + sqrt(1-q)|m-><m-|.
    """
    plus = Complex2x2.projector(np.asarray(m_plus, dtype=np.complex128))
    minus = Complex2x2.projector(np.asarray(m_minus, dtype=np.complex128))
    return plus * _root(p) + minus * _root(q), plus * _root(1.0 - p) + minus * _root(1.0 - q)


def indistinguishability(result: GtomResult) -> float:
    """
    Tr E1'^dagger E2', checked against p(1-p) + q(1-q).

    Raises:
        InvariantViolation: If the two disagree beyond 1e-12
    """
    e1, e2 = result.effects()
    value = hs_inner(e1, e2).real
    expected = result.p * (1.0 - result.p) + result.q * (1.0 - result.q)
    if abs(value - expected) > INDISTINGUISHABILITY_TOL:
        raise InvariantViolation(f"Tr E1'E2' = {value!r}, expected {expected!r}",
                                 invariant="indistinguishability identity", residual=abs(value - expected))
    return value


def partial_collapse(p: float, theta: float, phi: float) -> GtomConfig:
    """
    GTOM config with q = 1: |m-> passes undisturbed when outcome 1 occurs.

    With sqrt(p) = sin 2g the weights need r' = sin g and eps = cos 2g = 1 - 2 r'^2.
    The SASTOM measures along |H> (w = 0, r^2 = (1 + eps)/2) and a pre-rotation
    R with R^dagger|H> = |m+> turns it onto (theta, phi).

    Raises:
        OutOfRange: If p is outside [0, 1]
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"partial-collapse weight {p} outside [0, 1]")
    half_angle = math.asin(math.sqrt(p)) / 2.0
    r_prime = math.sin(half_angle)
    epsilon = math.cos(2.0 * half_angle)
    basis = np.column_stack([ket_from_angles(theta, phi), orthogonal_ket(theta, phi)])
    rotation = Complex2x2(basis).dag
    sastom = SastomConfig(r=math.sqrt((1.0 + epsilon) / 2.0), pre=MatrixSpec(m=rotation))
    logger.debug("partial collapse p=%.6g: r'=%.6g eps=%.6g", p, r_prime, epsilon)
    return GtomConfig(sastom=sastom, r_prime=r_prime)
