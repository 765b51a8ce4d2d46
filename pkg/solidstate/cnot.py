"""
Measurements realized with an ancilla qubit and a (partial) CNOT gate.
"""
import logging
import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import expm

from config import VALIDATION_TOL
from qmat import SIGMA_X, Complex2x2, completeness_residual, hs_inner, right_polar_decompose
from schemas import SolidStateConfig
from utils.errors import InvariantViolation, OutOfRange

logger = logging.getLogger(__name__)


class SolidStateResult(BaseModel):
    """Positive parts M0, M1 for ancilla readouts 0 and 1 with their corrections."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    m0: Complex2x2
    m1: Complex2x2
    correction0: Complex2x2
    correction1: Complex2x2
    alpha_prime: float = Field(alias="alphaPrime")
    basis: Literal["computational", "diagonal"] = "computational"

    @property
    def operators(self) -> list[Complex2x2]:
        return [self.m0, self.m1]

    @property
    def weights(self) -> tuple[float, float]:
        """(p, q): weights of M0^dagger M0 on |+> and |->, the GTOM form of readout 0."""
        plus, minus = basis_projectors(self.basis)
        e0 = self.m0.dag @ self.m0
        return hs_inner(plus, e0).real, hs_inner(minus, e0).real


def basis_projectors(basis: str) -> tuple[Complex2x2, Complex2x2]:
    """|+><+| and |-><-| for the requested embedding."""
    if basis == "computational":
        plus = np.array([1.0, 0.0])
        minus = np.array([0.0, 1.0])
    elif basis == "diagonal":
        plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
        minus = np.array([1.0, -1.0]) / math.sqrt(2.0)
    else:
        raise OutOfRange(f"unknown basis '{basis}'")
    return Complex2x2.projector(plus), Complex2x2.projector(minus)


def alpha_prime(alpha: float, xi: float) -> float:
    """sqrt([1 - (2 alpha^2 - 1) cos 2 xi] / 2)."""
    return math.sqrt(max(0.0, (1.0 - (2.0 * alpha * alpha - 1.0) * math.cos(2.0 * xi)) / 2.0))


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise OutOfRange(f"ancilla amplitude {alpha} outside [0, 1]")


def branch_operators(cfg: SolidStateConfig) -> tuple[Complex2x2, Complex2x2]:
    """
    X0 = alpha P+ + (alpha cos xi + i beta sin xi) P-,
    X1 = beta P+ + (i alpha sin xi + beta cos xi) P-.
    """
    alpha, beta, xi = cfg.alpha, cfg.beta, cfg.xi
    plus, minus = basis_projectors(cfg.basis)
    x0 = plus * alpha + minus * (alpha * math.cos(xi) + 1j * beta * math.sin(xi))
    x1 = plus * beta + minus * (1j * alpha * math.sin(xi) + beta * math.cos(xi))
    return x0, x1


def circuit_branches(cfg: SolidStateConfig) -> tuple[Complex2x2, Complex2x2]:
    """
    X0, X1 from a two-qubit state-vector run of the partial CNOT.

    U = P+ (x) I + P- (x) exp(i xi sx) acts on system (x) ancilla, index 2*s + a;
    the ancilla starts in alpha|0> + beta|1> and X_n = <n|_anc U |ancilla>.
    """
    _check_alpha(cfg.alpha)
    plus, minus = basis_projectors(cfg.basis)
    gate = np.kron(plus.array, np.eye(2)) + np.kron(minus.array, expm(1j * cfg.xi * SIGMA_X.array))
    ancilla = np.array([cfg.alpha, cfg.beta], dtype=np.complex128)

    columns = [np.zeros((2, 2), dtype=np.complex128), np.zeros((2, 2), dtype=np.complex128)]
    for j in range(2):
        system_in = np.zeros(2, dtype=np.complex128)
        system_in[j] = 1.0
        out = (gate @ np.kron(system_in, ancilla)).reshape(2, 2)
        for n in range(2):
            columns[n][:, j] = out[:, n]
    return Complex2x2(columns[0]), Complex2x2(columns[1])


def partial_cnot_measurement(cfg: SolidStateConfig, tol: float = VALIDATION_TOL) -> SolidStateResult:
    """
    Positive parts of the partial-CNOT branch operators and their correction unitaries.

    M0 = alpha P+ + sqrt(1 - alpha'^2) P- and M1 = beta P+ + alpha' P-.

    Args:
        cfg: Ancilla amplitude, gate angle and basis embedding
        tol: Tolerance of the closed-form cross-check

    Returns:
        SolidStateResult

    Raises:
        OutOfRange: If alpha is outside [0, 1]
        InvariantViolation: If the circuit, closed form and decomposition disagree
    """
    _check_alpha(cfg.alpha)
    x0, x1 = branch_operators(cfg)
    c0, c1 = circuit_branches(cfg)
    circuit_gap = max(x0.max_abs_diff(c0), x1.max_abs_diff(c1))
    if circuit_gap > tol:
        raise InvariantViolation(f"gate simulation disagrees with the branch formulas (residual {circuit_gap:.3e})",
                                 invariant="circuit identity", residual=circuit_gap)
    polar0 = right_polar_decompose(x0)
    polar1 = right_polar_decompose(x1)

    a_prime = alpha_prime(cfg.alpha, cfg.xi)
    plus, minus = basis_projectors(cfg.basis)
    closed0 = plus * cfg.alpha + minus * math.sqrt(max(0.0, 1.0 - a_prime ** 2))
    closed1 = plus * cfg.beta + minus * a_prime

    residual = max(polar0.positive_part.max_abs_diff(closed0), polar1.positive_part.max_abs_diff(closed1))
    if residual > tol:
        raise InvariantViolation(f"closed-form operators disagree with the decomposition (residual {residual:.3e})",
                                 invariant="dual-path agreement", residual=residual)
    completeness = completeness_residual([polar0.positive_part, polar1.positive_part])
    if completeness > tol:
        raise InvariantViolation(f"solid-state operators are incomplete (residual {completeness:.3e})",
                                 invariant="completeness", residual=completeness)

    logger.debug("partial CNOT alpha=%.6g xi=%.6g: alpha'=%.12g", cfg.alpha, cfg.xi, a_prime)
    return SolidStateResult(
        m0=polar0.positive_part,
        m1=polar1.positive_part,
        correction0=polar0.unitary_part,
        correction1=polar1.unitary_part,
        alpha_prime=a_prime,
        basis=cfg.basis,
    )


def cnot_measurement(alpha: float, basis: str = "computational") -> SolidStateResult:
    """
    Full CNOT (xi = pi/2): a SASTOM in the |+>, |-> basis with strength |2 alpha^2 - 1|.

    Raises:
        OutOfRange: If alpha is outside [0, 1]
    """
    _check_alpha(alpha)
    return partial_cnot_measurement(SolidStateConfig(alpha=alpha, xi=math.pi / 2, basis=basis))
