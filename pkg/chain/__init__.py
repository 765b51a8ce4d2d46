"""
Branch-structure measurement chains realizing N-outcome POVMs.
"""
from .branch import (
    MultiOutcomePovm,
    build_chain,
    chain_from_pairs,
    check_conservation,
    conservation_residuals,
    povm_gram,
    stage_pair,
)

__all__ = [
    'MultiOutcomePovm', 'build_chain', 'chain_from_pairs', 'stage_pair', 'povm_gram',
    'conservation_residuals', 'check_conservation',
]
