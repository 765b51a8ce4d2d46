"""
General two-outcome measurements and the partial-collapse special case.
"""
from .measurement import (
    GtomResult,
    analytic_gtom_operators,
    build_gtom,
    classify_s_gate,
    gtom_weights,
    indistinguishability,
    partial_collapse,
    phase_gate_predicted,
)

__all__ = [
    'GtomResult', 'build_gtom', 'partial_collapse', 'indistinguishability',
    'analytic_gtom_operators', 'gtom_weights', 'phase_gate_predicted', 'classify_s_gate',
]
