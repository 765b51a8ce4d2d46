"""
Pure polarization states and Bloch-vector conversions.
"""
import math
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import PROJECTOR_TOL, STATE_NORM_TOL
from qmat import PAULIS, Complex2x2, ComplexJson, canonical_phase
from utils.errors import InvalidConfig, NotProjector
from utils.helpers import wrap_phase

POLE_CUTOFF = 1e-12


class PolarizationState(BaseModel):
    """Model for a normalized state c_H|H> + c_V|V>."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    c_h: ComplexJson = Field(alias="cH", description="Amplitude of |H>")
    c_v: ComplexJson = Field(alias="cV", description="Amplitude of |V>")

    @model_validator(mode="after")
    def _check_norm(self):
        norm2 = abs(self.c_h) ** 2 + abs(self.c_v) ** 2
        if abs(norm2 - 1.0) > STATE_NORM_TOL:
            raise ValueError(f"state is not normalized: |cH|^2 + |cV|^2 = {norm2!r}")
        return self

    @classmethod
    def from_vector(cls, vec, normalize: bool = True) -> "PolarizationState":
        """Build a state from a 2-vector, fixing the global phase canonically."""
        vec = np.asarray(vec, dtype=np.complex128).reshape(2)
        if normalize:
            norm = float(np.linalg.norm(vec))
            if norm == 0.0:
                raise InvalidConfig("cannot normalize the zero vector", invariant="state normalization")
            vec = vec / norm
        vec = canonical_phase(vec)
        return cls(c_h=complex(vec[0]), c_v=complex(vec[1]))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c_h, self.c_v], dtype=np.complex128)

    def projector(self) -> Complex2x2:
        return Complex2x2.projector(self.vector)

    def bloch(self) -> "BlochVector":
        return bloch_of_projector(self.projector())


class BlochVector(BaseModel):
    """Model for a Bloch vector (x, y, z)."""
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    z: float

    @model_validator(mode="after")
    def _check_length(self):
        if self.norm() > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector longer than 1: {self.norm()!r}")
        return self

    def norm(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def angles(self) -> tuple[float, float]:
        return angles_from_bloch(self)


_SQRT_HALF = 1.0 / math.sqrt(2.0)

PRESETS = {
    "H": PolarizationState(c_h=1.0, c_v=0.0),
    "V": PolarizationState(c_h=0.0, c_v=1.0),
    "D": PolarizationState(c_h=_SQRT_HALF, c_v=_SQRT_HALF),
    "A": PolarizationState(c_h=_SQRT_HALF, c_v=-_SQRT_HALF),
    "R": PolarizationState(c_h=_SQRT_HALF, c_v=1j * _SQRT_HALF),
    "L": PolarizationState(c_h=_SQRT_HALF, c_v=-1j * _SQRT_HALF),
}


def resolve_state(value: Union[str, dict, PolarizationState]) -> PolarizationState:
    """
    Accept a preset name, a `{"cH": .., "cV": ..}` mapping or a state.

    Raises:
        InvalidConfig: On unknown preset names or malformed mappings
    """
    if isinstance(value, PolarizationState):
        return value
    if isinstance(value, str):
        try:
            return PRESETS[value.strip().upper()]
        except KeyError:
            raise InvalidConfig(f"unknown state preset '{value}' (expected one of {', '.join(PRESETS)})")
    try:
        return PolarizationState.model_validate(value)
    except ValueError as e:
        raise InvalidConfig(f"invalid state: {e}") from e


def ket_from_angles(theta: float, phi: float) -> np.ndarray:
    """|m+> = cos(theta/2)|H> + e^{i phi} sin(theta/2)|V>."""
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)], dtype=np.complex128)


def orthogonal_ket(theta: float, phi: float) -> np.ndarray:
    """|m-> = -e^{-i phi} sin(theta/2)|H> + cos(theta/2)|V>."""
    return np.array([-np.exp(-1j * phi) * math.sin(theta / 2), math.cos(theta / 2)], dtype=np.complex128)


def projector_from_angles(theta: float, phi: float) -> Complex2x2:
    return Complex2x2.projector(ket_from_angles(theta, phi))


def bloch_of_projector(p: Complex2x2, tol: float = PROJECTOR_TOL) -> BlochVector:
    """
    Bloch vector (Tr P sx, Tr P sy, Tr P sz) of a rank-1 projector.

    Args:
        p: Hermitian, idempotent, unit-trace matrix
        tol: Tolerance of the projector checks

    Returns:
        Unit-norm BlochVector

    Raises:
        NotProjector: If p is not a rank-1 orthogonal projector within tol
    """
    idempotency = (p @ p).max_abs_diff(p)
    if not p.is_hermitian(tol) or idempotency > tol or abs(p.trace() - 1.0) > tol:
        raise NotProjector(
            f"not a rank-1 projector (idempotency residual {idempotency:.3e}, trace {p.trace():.6g})",
            residual=idempotency,
        )
    comps = np.array([(p @ s).trace().real for s in PAULIS])
    comps = comps / np.linalg.norm(comps)
    return BlochVector(x=float(comps[0]), y=float(comps[1]), z=float(comps[2]))


def angles_from_bloch(b: Union[BlochVector, np.ndarray]) -> tuple[float, float]:
    """
    Polar and azimuthal angles of a Bloch vector.

    theta is in [0, pi] and phi in (-pi, pi]; at the poles phi is 0.
    """
    x, y, z = (b.x, b.y, b.z) if isinstance(b, BlochVector) else (float(b[0]), float(b[1]), float(b[2]))
    rho = math.hypot(x, y)
    if rho <= POLE_CUTOFF:
        return (0.0 if z >= 0.0 else math.pi), 0.0
    return math.atan2(rho, z), wrap_phase(math.atan2(y, x))


def angles_of_ket(vec) -> tuple[float, float]:
    """(theta, phi) of the direction of a (normalized) 2-vector."""
    vec = np.asarray(vec, dtype=np.complex128)
    vec = vec / np.linalg.norm(vec)
    return angles_from_bloch(bloch_of_projector(Complex2x2.projector(vec)))
