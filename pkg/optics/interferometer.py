"""
Branch operators of the polarizing beam splitter interferometer.
"""
import logging
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict

from config import VALIDATION_TOL
from qmat import IDENTITY, Complex2x2, commutator
from schemas import MatrixSpec, PlateStack, SastomConfig
from utils.errors import InvalidConfig
from .elements import beam_splitter, pauli_rotation, pbs_projectors, plates_to_su2

logger = logging.getLogger(__name__)


class BranchOperators(BaseModel):
    """Maps from input polarization to the polarization in output paths 1 and 2."""
    model_config = ConfigDict(frozen=True)

    x1: Complex2x2
    x2: Complex2x2

    def effects(self) -> tuple[Complex2x2, Complex2x2]:
        return self.x1.dag @ self.x1, self.x2.dag @ self.x2

    def completeness_residual(self) -> float:
        e1, e2 = self.effects()
        return (e1 + e2).max_abs_diff(IDENTITY)

    def commutation_residual(self) -> float:
        e1, e2 = self.effects()
        return commutator(e1, e2).max_abs_diff(Complex2x2.zeros())


def resolve_unitary(spec, require_su2: bool = True, tol: float = VALIDATION_TOL) -> Complex2x2:
    """
    Turn a PlateStack or MatrixSpec into its matrix.

    Args:
        spec: PlateStack, MatrixSpec or None (identity)
        require_su2: Also require determinant 1
        tol: Unitarity tolerance

    Returns:
        The unitary as Complex2x2

    Raises:
        InvalidConfig: If the matrix is not unitary (or not in SU(2) when required)
    """
    if spec is None:
        return IDENTITY
    if isinstance(spec, PlateStack):
        return plates_to_su2(spec)
    if not isinstance(spec, MatrixSpec):
        raise InvalidConfig(f"unsupported unitary specification {type(spec).__name__}")
    u = spec.m
    if not u.is_unitary(tol):
        residual = (u.dag @ u).max_abs_diff(IDENTITY)
        raise InvalidConfig(f"matrix is not unitary (residual {residual:.3e})", invariant="unitarity", residual=residual)
    if require_su2 and abs(u.det() - 1.0) > tol:
        residual = abs(u.det() - 1.0)
        raise InvalidConfig(
            f"matrix determinant {u.det():.6g} is not 1", invariant="unit determinant", residual=residual
        )
    return u


def interferometer_branches(cfg: SastomConfig) -> BranchOperators:
    """
    Assemble X1 = r U1|H><H| + t U2|V><V| and X2 = t U1|H><H| - r U2|V><V|.

    An optional `pre` unitary R acts before the polarizing beam splitter, giving X_n R.
    """
    u1 = resolve_unitary(cfg.u1)
    u2 = resolve_unitary(cfg.u2)
    pre = resolve_unitary(cfg.pre, require_su2=False)

    bs = beam_splitter(cfg.r)
    proj_h, proj_v = pbs_projectors()
    path_h = u1 @ proj_h
    path_v = u2 @ proj_v
    x1 = (path_h * bs[0, 0] + path_v * bs[0, 1]) @ pre
    x2 = (path_h * bs[1, 0] + path_v * bs[1, 1]) @ pre
    branches = BranchOperators(x1=x1, x2=x2)
    logger.debug("branches for r=%.6g: completeness residual %.3e", cfg.r, branches.completeness_residual())
    return branches


def iinuma_preset(eta: float) -> SastomConfig:
    """
    Balanced interferometer with U1 = exp(-i 2 eta sy) and U2 = exp(i 2 eta sy).

    Gives w = sin(4 eta), strength |sin 4 eta| and a measurement along the x axis.
    """
    return SastomConfig(
        r=1.0 / math.sqrt(2.0),
        u1=MatrixSpec(m=pauli_rotation("y", 2 * eta)),
        u2=MatrixSpec(m=pauli_rotation("y", -2 * eta)),
    )


def path_overlap(cfg: SastomConfig) -> complex:
    """w = <H| U1^dagger U2 |V>."""
    u1 = resolve_unitary(cfg.u1)
    u2 = resolve_unitary(cfg.u2)
    return complex((u1.dag @ u2)[0, 1])


def pre_rotation(cfg: SastomConfig) -> Optional[Complex2x2]:
    return None if cfg.pre is None else resolve_unitary(cfg.pre, require_su2=False)
