"""
Born-rule sampling of measurement outcomes and chain runs.
"""
from .born import (
    ChainRunRecord,
    OutcomeRecord,
    born_probabilities,
    chain_outcome_probabilities,
    chi_square,
    expected_measurement_count,
    make_rng,
    run_batches,
    run_chain,
    run_chain_shots,
    sample_outcome,
    sample_outcomes,
)

__all__ = [
    'OutcomeRecord', 'ChainRunRecord', 'make_rng', 'born_probabilities', 'sample_outcome',
    'sample_outcomes', 'run_chain', 'run_chain_shots', 'chain_outcome_probabilities',
    'expected_measurement_count', 'chi_square', 'run_batches',
]
