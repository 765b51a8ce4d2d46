"""
Inverse design: physical parameters from target measurements.
"""
from .decompose import decompose_povm_to_chain
from .presets import TETRAHEDRON, equal_trace_povm, equal_weight_chain
from .solvers import gtom_angle_candidates, path_unitary, solve_gtom_params, solve_sastom_params

__all__ = [
    'solve_sastom_params', 'solve_gtom_params', 'gtom_angle_candidates', 'path_unitary',
    'decompose_povm_to_chain', 'equal_trace_povm', 'equal_weight_chain', 'TETRAHEDRON',
]
