"""
Inverse design of SASTOM and GTOM parameters from target measurement characteristics.
"""
import logging
import math

import numpy as np
from scipy.optimize import brentq

from config import INVERSE_TOL, ROOT_MAX_ITER, ROOT_XTOL, ZERO_STRENGTH_TOL
from gtom import build_gtom
from qubit import ket_from_angles
from sastom import characterize_sastom
from schemas import GtomConfig, GtomTarget, MatrixSpec, SastomConfig, SastomTarget, identity_spec
from utils.errors import NoSolution, OutOfRange
from utils.helpers import wrap_phase

logger = logging.getLogger(__name__)

# Slack on the angle-variable box when enumerating GTOM solutions
ANGLE_SLACK = 1e-12


def _direction_gap(theta_a: float, phi_a: float, theta_b: float, phi_b: float) -> float:
    """Largest entrywise gap between the two direction projectors."""
    ka, kb = ket_from_angles(theta_a, phi_a), ket_from_angles(theta_b, phi_b)
    return float(np.max(np.abs(np.outer(ka, ka.conj()) - np.outer(kb, kb.conj()))))


def _check_sastom_target(target: SastomTarget) -> None:
    if not 0.0 <= target.epsilon <= 1.0:
        raise OutOfRange(f"strength {target.epsilon} outside [0, 1]")
    if not 0.0 <= target.theta <= math.pi:
        raise OutOfRange(f"polar angle {target.theta} outside [0, pi]")
    if not math.isfinite(target.phi):
        raise OutOfRange("azimuth must be finite")


def path_unitary(w: complex) -> MatrixSpec:
    """SU(2) matrix [[c, w], [-conj(w), c]] with c = sqrt(1 - |w|^2), so <H|U|V> = w."""
    c = math.sqrt(max(0.0, 1.0 - abs(w) ** 2))
    return MatrixSpec(m=[[c, w], [-np.conj(w), c]])


def solve_sastom_params(target: SastomTarget, tol: float = INVERSE_TOL) -> SastomConfig:
    """
    Find r and w reproducing a target (eps, theta, phi), in the gauge U1 = I.

    r solves (2 r^2 - 1) = eps cos(theta) on the bracket
    [sqrt((1-eps)/2), sqrt((1+eps)/2)]; then |w| = eps sin(theta) / (2 r t)
    and w = |w| e^{-i phi}.

    Args:
        target: Strength and direction
        tol: Round-trip tolerance

    Returns:
        SastomConfig with U1 = I and U2 carrying w

    Raises:
        OutOfRange: If the target lies outside its ranges
        NoSolution: If the forward model does not reproduce the target within tol
    """
    _check_sastom_target(target)
    eps, theta, phi = target.epsilon, target.theta, wrap_phase(target.phi)

    if eps <= ZERO_STRENGTH_TOL:
        cfg = SastomConfig(r=1.0 / math.sqrt(2.0), u1=identity_spec(), u2=identity_spec())
    else:
        lo = math.sqrt((1.0 - eps) / 2.0)
        hi = math.sqrt((1.0 + eps) / 2.0)

        def mismatch(r: float) -> float:
            return (2.0 * r * r - 1.0) - eps * math.cos(theta)

        f_lo, f_hi = mismatch(lo), mismatch(hi)
        if f_lo >= 0.0:
            r = lo
        elif f_hi <= 0.0:
            r = hi
        else:
            r = brentq(mismatch, lo, hi, xtol=ROOT_XTOL, maxiter=ROOT_MAX_ITER)
        t = math.sqrt(max(0.0, 1.0 - r * r))
        modulus = 0.0 if r * t == 0.0 else min(1.0, eps * math.sin(theta) / (2.0 * r * t))
        w = modulus * np.exp(-1j * phi)
        cfg = SastomConfig(r=r, u1=identity_spec(), u2=path_unitary(complex(w)))

    char = characterize_sastom(cfg)
    residual = abs(char.epsilon - eps)
    if eps > ZERO_STRENGTH_TOL:
        residual = max(residual, _direction_gap(char.theta, char.phi, theta, phi))
    logger.debug("sastom solve eps=%.6g theta=%.6g phi=%.6g: residual %.3e", eps, theta, phi, residual)
    if residual > tol:
        logger.warning("sastom inverse residual %.3e exceeds %.1e", residual, tol)
        raise NoSolution(f"no SASTOM reproduces the target (residual {residual:.3e})", residual=residual)
    return cfg


def gtom_angle_candidates(p: float, q: float) -> list[tuple[float, float]]:
    """
    All (gamma, delta) with sqrt(p) = sin(gamma + delta), sqrt(q) = cos(gamma - delta),
    gamma in [0, pi/2] and delta in [0, pi/4]; r' = sin(gamma), eps = cos(2 delta).
    """
    a0 = math.asin(min(1.0, math.sqrt(p)))
    b0 = math.acos(min(1.0, math.sqrt(q)))
    found = []
    for a in (a0, math.pi - a0):
        for b in (b0, -b0):
            gamma, delta = (a + b) / 2.0, (a - b) / 2.0
            if -ANGLE_SLACK <= gamma <= math.pi / 2 + ANGLE_SLACK and -ANGLE_SLACK <= delta <= math.pi / 4 + ANGLE_SLACK:
                gamma = min(max(gamma, 0.0), math.pi / 2)
                delta = min(max(delta, 0.0), math.pi / 4)
                if all(abs(gamma - g) > 1e-15 or abs(delta - d) > 1e-15 for g, d in found):
                    found.append((gamma, delta))
    return found


def solve_gtom_params(target: GtomTarget, tol: float = INVERSE_TOL) -> GtomConfig:
    """
    Find (eps, r') and a SASTOM direction reproducing target weights (p, q).

    The coefficient system is solved exactly in angle variables. A single GTOM
    needs p + q >= 1. Among several solutions a nonzero strength is preferred,
    then the largest r', then the smaller eps.

    Args:
        target: Weights p, q and direction (theta, phi)
        tol: Round-trip tolerance

    Returns:
        GtomConfig

    Raises:
        OutOfRange: If p or q lies outside [0, 1]
        NoSolution: If p + q < 1 or the round trip fails
    """
    p, q = target.p, target.q
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise OutOfRange(f"weights ({p}, {q}) outside [0, 1]")
    shortfall = 1.0 - (p + q)
    if shortfall > tol:
        raise NoSolution(f"p + q = {p + q:.6g} < 1 cannot be realized by one GTOM", residual=shortfall)
    p, q = (p, q) if shortfall <= 0.0 else (p + shortfall / 2.0, q + shortfall / 2.0)

    candidates = gtom_angle_candidates(min(p, 1.0), min(q, 1.0))
    if not candidates:
        raise NoSolution(f"no GTOM parameters for (p, q) = ({p:.6g}, {q:.6g})", residual=shortfall)
    gamma, delta = max(candidates, key=lambda c: (math.cos(2 * c[1]) > ZERO_STRENGTH_TOL, c[0], c[1]))
    eps = min(1.0, max(0.0, math.cos(2.0 * delta)))
    r_prime = math.sin(gamma)

    sastom = solve_sastom_params(SastomTarget(epsilon=eps, theta=target.theta, phi=target.phi), tol)
    cfg = GtomConfig(sastom=sastom, r_prime=r_prime)

    result = build_gtom(cfg)
    residual = max(abs(result.p - target.p), abs(result.q - target.q))
    logger.debug("gtom solve p=%.6g q=%.6g: eps=%.6g r'=%.6g residual %.3e", target.p, target.q, eps, r_prime, residual)
    if residual > tol:
        logger.warning("gtom inverse residual %.3e exceeds %.1e", residual, tol)
        raise NoSolution(f"no GTOM reproduces the target (residual {residual:.3e})", residual=residual)
    return cfg
