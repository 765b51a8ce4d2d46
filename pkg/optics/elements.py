"""
Jones matrices of wave plates, the beam splitter mode matrix and Pauli rotations.
"""
import itertools
import logging
import math
from typing import Sequence, Union

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from qmat import PROJ_H, PROJ_V, SIGMA_X, SIGMA_Y, SIGMA_Z, Complex2x2
from schemas import PlateStack
from utils.errors import InvalidConfig, NoSolution

logger = logging.getLogger(__name__)

PLATE_FIT_TOL = 1e-9

_AXES = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def wave_plate(angle: float, retardance: float) -> Complex2x2:
    """
    Jones matrix of a retarder with its fast axis at `angle`.

    cos(G/2) I - i sin(G/2) (cos 2a sz + sin 2a sx), which has determinant 1.
    """
    axis = SIGMA_Z.array * math.cos(2 * angle) + SIGMA_X.array * math.sin(2 * angle)
    return Complex2x2(math.cos(retardance / 2) * np.eye(2) - 1j * math.sin(retardance / 2) * axis)


def quarter_wave_plate(angle: float) -> Complex2x2:
    return wave_plate(angle, math.pi / 2)


def half_wave_plate(angle: float) -> Complex2x2:
    return wave_plate(angle, math.pi)


def _stack_array(q1: float, h: float, q2: float) -> np.ndarray:
    return (quarter_wave_plate(q1) @ half_wave_plate(h) @ quarter_wave_plate(q2)).array


def plates_to_su2(stack: PlateStack) -> Complex2x2:
    """
    Unitary of the quarter(q1) . half(h) . quarter(q2) gadget.

    Every plate already has unit determinant; the product is renormalized
    onto det = 1 to remove accumulated rounding.
    """
    u = _stack_array(stack.quarter1_angle, stack.half_angle, stack.quarter2_angle)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    return Complex2x2(u / np.sqrt(det))


def su2_to_plates(u: Complex2x2, tol: float = PLATE_FIT_TOL) -> PlateStack:
    """
    Find plate angles reproducing u up to a global sign.

    Multi-start least squares over the three angles.

    Args:
        u: Target SU(2) matrix
        tol: Largest accepted entrywise residual

    Returns:
        PlateStack whose gadget equals +u or -u within tol

    Raises:
        InvalidConfig: If u is not in SU(2)
        NoSolution: If no start converges below tol
    """
    if not u.is_unitary(1e-10) or abs(u.det() - 1.0) > 1e-10:
        raise InvalidConfig("target of plate fitting must be in SU(2)")

    target = u.array
    best = (math.inf, None)
    starts = np.linspace(0.0, math.pi, 4, endpoint=False)
    for sign in (1.0, -1.0):
        def residuals(angles, sign=sign):
            diff = _stack_array(*angles) - sign * target
            return np.concatenate([diff.real.ravel(), diff.imag.ravel()])

        for x0 in itertools.product(starts, repeat=3):
            fit = least_squares(residuals, np.array(x0), xtol=1e-15, ftol=1e-15, gtol=1e-15)
            err = float(np.max(np.abs(residuals(fit.x))))
            if err < best[0]:
                best = (err, fit.x)
            if best[0] <= 1e-13:
                break
        if best[0] <= 1e-13:
            break

    err, angles = best
    logger.debug("plate fit residual %.3e", err)
    if err > tol:
        raise NoSolution(f"no plate angles reproduce the unitary (residual {err:.3e})", residual=err)
    q1, h, q2 = (float(a) for a in angles)
    return PlateStack(quarter1_angle=q1, half_angle=h, quarter2_angle=q2)


def beam_splitter(r: float) -> np.ndarray:
    """
    Real mode matrix of a beam splitter: out1 = r in1 + t in2, out2 = t in1 - r in2.
    """
    if not 0.0 <= r <= 1.0:
        raise InvalidConfig(f"reflection coefficient {r} outside [0, 1]")
    t = math.sqrt(max(0.0, 1.0 - r * r))
    return np.array([[r, t], [t, -r]])


def pbs_projectors() -> tuple[Complex2x2, Complex2x2]:
    """Path projectors of the polarizing beam splitter (|H> to path 1, |V> to path 2)."""
    return PROJ_H, PROJ_V


def pauli_rotation(axis: Union[str, Sequence[float]], angle: float) -> Complex2x2:
    """
    exp(-i angle n.sigma) for a named axis ('x', 'y', 'z') or a unit 3-vector.
    """
    if isinstance(axis, str):
        try:
            generator = _AXES[axis.lower()].array
        except KeyError:
            raise InvalidConfig(f"unknown rotation axis '{axis}'")
    else:
        n = np.asarray(axis, dtype=float)
        n = n / np.linalg.norm(n)
        generator = sum(c * s.array for c, s in zip(n, (SIGMA_X, SIGMA_Y, SIGMA_Z)))
    return Complex2x2(expm(-1j * angle * generator))
