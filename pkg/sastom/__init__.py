"""
Symmetric arbitrary-strength two-outcome measurements.
"""
from .measurement import (
    MeasurementPair,
    SastomCharacterization,
    analytic_operators,
    build_sastom,
    characterize_sastom,
    check_measurement_pair,
    dual_path_residual,
    sastom_from_strength,
    strength_closed_form,
)

__all__ = [
    'SastomCharacterization', 'MeasurementPair', 'characterize_sastom', 'build_sastom',
    'sastom_from_strength', 'analytic_operators', 'check_measurement_pair',
    'dual_path_residual', 'strength_closed_form',
]
