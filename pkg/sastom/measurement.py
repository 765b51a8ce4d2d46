"""
Symmetric arbitrary-strength two-outcome measurements (SASTOM).
"""
import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import DUAL_PATH_CHECK, VALIDATION_TOL, ZERO_STRENGTH_TOL
from optics import interferometer_branches, path_overlap, pre_rotation
from qmat import (
    IDENTITY,
    Complex2x2,
    ComplexJson,
    Ket,
    commutator,
    completeness_residual,
    hs_inner,
    right_polar_decompose,
)
from qubit import angles_of_ket, ket_from_angles, orthogonal_ket
from schemas import SastomConfig
from utils.errors import InvariantViolation, OutOfRange
from utils.helpers import max_abs, wrap_phase

logger = logging.getLogger(__name__)


class SastomCharacterization(BaseModel):
    """Strength, direction and eigenbasis of a SASTOM."""
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(ge=0.0, le=1.0)
    w: Optional[ComplexJson] = Field(default=None, description="<H|U1^dagger U2|V>; None without an interferometer")
    theta: float
    phi: float
    m_plus: Ket
    m_minus: Ket

    def eigenvalues(self) -> tuple[float, float]:
        """(sqrt((1+eps)/2), sqrt((1-eps)/2))."""
        return math.sqrt((1.0 + self.epsilon) / 2.0), math.sqrt(max(0.0, (1.0 - self.epsilon) / 2.0))

    def projector_plus(self) -> Complex2x2:
        return Complex2x2.projector(np.array(self.m_plus, dtype=np.complex128))

    def projector_minus(self) -> Complex2x2:
        return Complex2x2.projector(np.array(self.m_minus, dtype=np.complex128))


class MeasurementPair(BaseModel):
    """Validated two-outcome set {M1, M2} with compensation unitaries V1, V2."""
    model_config = ConfigDict(frozen=True)

    m1: Complex2x2
    m2: Complex2x2
    v1: Complex2x2
    v2: Complex2x2
    characterization: SastomCharacterization

    @property
    def operators(self) -> list[Complex2x2]:
        return [self.m1, self.m2]

    def effects(self) -> tuple[Complex2x2, Complex2x2]:
        return self.m1.dag @ self.m1, self.m2.dag @ self.m2

    def indistinguishability(self) -> float:
        e1, e2 = self.effects()
        return hs_inner(e1, e2).real


def _basis_from_angles(theta: float, phi: float) -> tuple[tuple, tuple]:
    plus = ket_from_angles(theta, phi)
    minus = orthogonal_ket(theta, phi)
    return tuple(complex(z) for z in plus), tuple(complex(z) for z in minus)


def characterize_sastom(cfg: SastomConfig) -> SastomCharacterization:
    """
    Strength and direction of the measurement realized by a SASTOM config.

    eps = hypot(r^2 - t^2, 2 r t |w|). The direction is that of the Bloch vector
    of X1^dagger X1: polar angle from tan(theta/2) = (t^2 - r^2 + eps) / (2 r t |w|)
    and azimuth -arg(w). With w = 0 the direction is |H> when r^2 >= t^2 and
    |V> otherwise. At zero strength (theta, phi) = (pi/2, 0) by convention.

    Raises:
        InvalidConfig: If a path unitary is not in SU(2)
    """
    r, t = cfg.r, cfg.t
    w = path_overlap(cfg)
    diff = r * r - t * t
    coupling = 2.0 * r * t * abs(w)
    epsilon = min(1.0, math.hypot(diff, coupling))

    if epsilon <= ZERO_STRENGTH_TOL:
        theta, phi = math.pi / 2, 0.0
    else:
        if diff <= 0.0:
            theta = 2.0 * math.atan2(epsilon - diff, coupling)
        else:
            theta = 2.0 * math.atan2(coupling, epsilon + diff)
        phi = wrap_phase(-np.angle(w)) if coupling > 0.0 else 0.0
        if theta in (0.0, math.pi):
            phi = 0.0

    rotation = pre_rotation(cfg)
    if rotation is not None and epsilon > ZERO_STRENGTH_TOL:
        # X R has effects R^dagger E R, eigenvectors R^dagger m
        theta, phi = angles_of_ket(rotation.dag @ ket_from_angles(theta, phi))

    m_plus, m_minus = _basis_from_angles(theta, phi)
    return SastomCharacterization(epsilon=epsilon, w=w, theta=theta, phi=phi, m_plus=m_plus, m_minus=m_minus)


def analytic_operators(char: SastomCharacterization) -> tuple[Complex2x2, Complex2x2]:
    """
    M1 = a|m+><m+| + b|m-><m-| and M2 = b|m+><m+| + a|m-><m-| with a, b = sqrt((1 +- eps)/2).
    """
    a, b = char.eigenvalues()
    plus, minus = char.projector_plus(), char.projector_minus()
    return plus * a + minus * b, plus * b + minus * a


def check_measurement_pair(m1: Complex2x2, m2: Complex2x2, tol: float = VALIDATION_TOL) -> None:
    """
    Verify completeness, unit traces of both effects and commutation.

    Raises:
        InvariantViolation: Naming the first failed property
    """
    residual = completeness_residual([m1, m2])
    if residual > tol:
        raise InvariantViolation(f"M1^dagger M1 + M2^dagger M2 != I (residual {residual:.3e})",
                                 invariant="completeness", residual=residual)
    for label, op in (("M1", m1), ("M2", m2)):
        trace_err = abs((op.dag @ op).trace() - 1.0)
        if trace_err > tol:
            raise InvariantViolation(f"Tr {label}^dagger {label} != 1 (residual {trace_err:.3e})",
                                     invariant="unit effect trace", residual=trace_err)
    comm = max_abs(commutator(m1, m2).array)
    if comm > tol:
        raise InvariantViolation(f"M1 and M2 do not commute (residual {comm:.3e})",
                                 invariant="commutation", residual=comm)


def dual_path_residual(pair: MeasurementPair) -> float:
    """Largest entrywise gap between decomposition-derived and analytic operators."""
    a1, a2 = analytic_operators(pair.characterization)
    return max(pair.m1.max_abs_diff(a1), pair.m2.max_abs_diff(a2))


def build_sastom(cfg: SastomConfig, validate: Optional[bool] = None, tol: float = VALIDATION_TOL) -> MeasurementPair:
    """
    Build the minimally-disturbing measurement pair of a SASTOM interferometer.

    Args:
        cfg: Interferometer configuration
        validate: Compare against the analytic operators (defaults to DUAL_PATH_CHECK)
        tol: Validation tolerance

    Returns:
        MeasurementPair with X_n = V_n^dagger M_n

    Raises:
        InvalidConfig: If a path unitary is invalid
        InvariantViolation: If a post-condition fails
    """
    branches = interferometer_branches(cfg)
    polar1 = right_polar_decompose(branches.x1)
    polar2 = right_polar_decompose(branches.x2)
    pair = MeasurementPair(
        m1=polar1.positive_part,
        m2=polar2.positive_part,
        v1=polar1.unitary_part,
        v2=polar2.unitary_part,
        characterization=characterize_sastom(cfg),
    )
    check_measurement_pair(pair.m1, pair.m2, tol)

    if DUAL_PATH_CHECK if validate is None else validate:
        residual = dual_path_residual(pair)
        logger.debug("dual-path residual %.3e at r=%.6g", residual, cfg.r)
        if residual > tol:
            raise InvariantViolation(
                f"decomposition and analytic operators disagree (residual {residual:.3e})",
                invariant="dual-path agreement", residual=residual,
            )
    return pair


def sastom_from_strength(epsilon: float, theta: float, phi: float) -> MeasurementPair:
    """
    Build M1, M2 directly in the (theta, phi) eigenbasis, with V1 = V2 = I.

    Raises:
        OutOfRange: If eps is outside [0, 1], theta outside [0, pi] or phi outside [-pi, pi]
    """
    if not 0.0 <= epsilon <= 1.0:
        raise OutOfRange(f"strength {epsilon} outside [0, 1]")
    if not 0.0 <= theta <= math.pi:
        raise OutOfRange(f"polar angle {theta} outside [0, pi]")
    if not -math.pi <= phi <= math.pi:
        raise OutOfRange(f"azimuth {phi} outside (-pi, pi]")

    if epsilon <= ZERO_STRENGTH_TOL:
        theta, phi = math.pi / 2, 0.0
    phi = wrap_phase(phi)
    m_plus, m_minus = _basis_from_angles(theta, phi)
    char = SastomCharacterization(epsilon=epsilon, theta=theta, phi=phi, m_plus=m_plus, m_minus=m_minus)
    m1, m2 = analytic_operators(char)
    return MeasurementPair(m1=m1, m2=m2, v1=IDENTITY, v2=IDENTITY, characterization=char)


def strength_closed_form(r: float, w: complex) -> float:
    """sqrt(1 - 4 r^2 t^2 (1 - |w|^2)), the unsimplified form of the strength."""
    t2 = max(0.0, 1.0 - r * r)
    return math.sqrt(max(0.0, 1.0 - 4.0 * r * r * t2 * (1.0 - abs(w) ** 2)))
