"""
Single-qubit polarization states and Bloch-sphere conversions.
"""
from .states import (
    PRESETS,
    BlochVector,
    PolarizationState,
    angles_from_bloch,
    angles_of_ket,
    bloch_of_projector,
    ket_from_angles,
    orthogonal_ket,
    projector_from_angles,
    resolve_state,
)

__all__ = [
    'PolarizationState', 'BlochVector', 'PRESETS', 'resolve_state', 'bloch_of_projector',
    'angles_from_bloch', 'angles_of_ket', 'ket_from_angles', 'orthogonal_ket',
    'projector_from_angles',
]
