"""
Polar angle of the measurement direction against the beam-splitter reflectivity.
"""
import csv
import logging
import math
from typing import Optional, Sequence, TextIO

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from utils.errors import OutOfRange

logger = logging.getLogger(__name__)

MERGE_POINT = 1.0 / math.sqrt(2.0)
CSV_HEADER = ("epsilon", "r", "theta")


class CurvePoint(BaseModel):
    """Model for one (epsilon, r, theta) row."""
    model_config = ConfigDict(frozen=True)

    epsilon: float
    r: float
    theta: float


class ThetaCurves(BaseModel):
    """Model for an emitted curve table and its skipped-pair count."""
    model_config = ConfigDict(frozen=True)

    points: list[CurvePoint] = Field(default_factory=list)
    skipped: int = Field(default=0, ge=0)

    def curve(self, epsilon: float) -> list[CurvePoint]:
        return [point for point in self.points if point.epsilon == epsilon]


def theta_on_curve(epsilon: float, r: float) -> Optional[float]:
    """
    Polar angle at strength eps and reflectivity r, None where no |w| <= 1 fits.

    With d = r^2 - t^2 the strength relation leaves (2 r t |w|)^2 = eps^2 - d^2,
    so theta = atan2(sqrt(eps^2 - d^2), d).
    """
    d = 2.0 * r * r - 1.0
    if d * d > epsilon * epsilon:
        return None
    return math.atan2(math.sqrt(max(0.0, epsilon * epsilon - d * d)), d)


def curve_grid(grid: int) -> np.ndarray:
    """linspace(0, 1, grid) with the merge point 1/sqrt(2) added."""
    return np.unique(np.append(np.linspace(0.0, 1.0, grid), MERGE_POINT))


def emit_theta_curves(eps_list: Sequence[float], r_grid_size: int) -> ThetaCurves:
    """
    Tabulate theta(r) for every strength in eps_list.

    Args:
        eps_list: Strengths in (0, 1]
        r_grid_size: Number of evenly spaced reflectivities (>= 2)

    Returns:
        ThetaCurves sorted by (epsilon, r)

    Raises:
        OutOfRange: On a strength outside (0, 1] or a grid below 2
    """
    if r_grid_size < 2:
        raise OutOfRange(f"curve grid needs at least 2 points, got {r_grid_size}")
    for eps in eps_list:
        if not 0.0 < eps <= 1.0:
            raise OutOfRange(f"curve strength {eps} outside (0, 1]")

    rs = curve_grid(r_grid_size)
    points, skipped = [], 0
    for eps in sorted(set(float(e) for e in eps_list)):
        for r in rs:
            theta = theta_on_curve(eps, float(r))
            if theta is None:
                skipped += 1
                continue
            points.append(CurvePoint(epsilon=eps, r=float(r), theta=theta))
    if skipped:
        logger.info("skipped %d infeasible (epsilon, r) pairs", skipped)
    return ThetaCurves(points=points, skipped=skipped)


def write_curves_csv(curves: ThetaCurves, stream: TextIO) -> None:
    """CSV with 17 significant digits and a trailing comment counting skipped pairs."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for point in curves.points:
        writer.writerow([format(point.epsilon, ".17g"), format(point.r, ".17g"), format(point.theta, ".17g")])
    stream.write(f"# skipped {curves.skipped} infeasible (epsilon, r) pairs\n")
