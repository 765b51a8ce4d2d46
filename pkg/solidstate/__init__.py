"""
Solid-state (ancilla and CNOT) realizations of two-outcome measurements.
"""
from .cnot import (
    SolidStateResult,
    alpha_prime,
    basis_projectors,
    branch_operators,
    circuit_branches,
    cnot_measurement,
    partial_cnot_measurement,
)

__all__ = [
    'SolidStateResult', 'partial_cnot_measurement', 'cnot_measurement', 'circuit_branches',
    'branch_operators', 'basis_projectors', 'alpha_prime',
]
