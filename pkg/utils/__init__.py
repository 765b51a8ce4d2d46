"""
Utility functions and the shared exception hierarchy.
"""
from .errors import (
    IncompleteSet,
    InvalidConfig,
    InvariantViolation,
    NoSolution,
    NonFiniteMatrix,
    NotHermitian,
    NotProjector,
    NotPsd,
    OutOfRange,
    PovmForgeError,
    SingularStage,
    UsageError,
)
from .helpers import max_abs, parse_key_values, wrap_phase

__all__ = [
    'PovmForgeError', 'NonFiniteMatrix', 'NotHermitian', 'NotPsd', 'NotProjector',
    'InvalidConfig', 'OutOfRange', 'NoSolution', 'IncompleteSet', 'SingularStage',
    'InvariantViolation', 'UsageError', 'wrap_phase', 'max_abs', 'parse_key_values',
]
