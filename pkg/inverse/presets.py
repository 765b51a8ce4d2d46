"""
Four-outcome and equal-weight POVM designs realized through the chain decomposition.
"""
import math

import numpy as np

from qmat import IDENTITY, PAULIS, Complex2x2, psd_sqrt
from schemas import ChainConfig, GtomTarget
from utils.errors import InvalidConfig, OutOfRange

from .solvers import solve_gtom_params

TETRAHEDRON = tuple(
    np.array(v, dtype=float) / math.sqrt(3.0)
    for v in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
)


def equal_trace_povm(strength: float) -> list[Complex2x2]:
    """
    K_l = sqrt((I + x n_l . sigma) / 4) over the tetrahedral directions n_l.

    Every effect has trace 1/2 and every pair the same overlap (1 - x^2/3) / 8.

    Raises:
        OutOfRange: If x is outside [0, 1]
    """
    if not 0.0 <= strength <= 1.0:
        raise OutOfRange(f"design strength {strength} outside [0, 1]")
    ops = []
    for n in TETRAHEDRON:
        effect = IDENTITY * 0.25
        for component, pauli in zip(n, PAULIS):
            effect = effect + pauli * (0.25 * strength * component)
        ops.append(psd_sqrt(effect))
    return ops


def equal_weight_chain(n: int) -> ChainConfig:
    """
    Chain whose n outcomes all have effect I / n.

    Stage l keeps a fraction 1/(n - l) of what is left in every direction, so
    it is a GTOM with p = q; small fractions terminate through port 2.

    Raises:
        InvalidConfig: If n < 2
    """
    if n < 2:
        raise InvalidConfig(f"an equal-weight chain needs at least two outcomes, got {n}")
    stages, ports = [], []
    for index in range(n - 1):
        share = 1.0 / (n - index)
        port = 1
        if 2.0 * share < 1.0:
            share, port = 1.0 - share, 2
        stages.append(solve_gtom_params(GtomTarget(p=share, q=share)))
        ports.append(port)
    return ChainConfig(stages=stages, exit_ports=ports)
