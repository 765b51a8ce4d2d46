"""
Linear-optical elements and the interferometer forward model.
"""
from .elements import (
    beam_splitter,
    half_wave_plate,
    pauli_rotation,
    pbs_projectors,
    plates_to_su2,
    quarter_wave_plate,
    su2_to_plates,
    wave_plate,
)
from .interferometer import (
    BranchOperators,
    iinuma_preset,
    interferometer_branches,
    path_overlap,
    pre_rotation,
    resolve_unitary,
)

__all__ = [
    'wave_plate', 'quarter_wave_plate', 'half_wave_plate', 'plates_to_su2', 'su2_to_plates',
    'beam_splitter', 'pbs_projectors', 'pauli_rotation', 'BranchOperators', 'resolve_unitary',
    'interferometer_branches', 'iinuma_preset', 'path_overlap', 'pre_rotation',
]
