"""Tests for Born-rule sampling of two-outcome measurements and chains."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from chain import build_chain
from inverse import equal_weight_chain
from qmat import PROJ_H, PROJ_V
from qubit import PRESETS, PolarizationState
from sampler import (
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
from sastom import sastom_from_strength
from utils.errors import IncompleteSet, InvalidConfig


class TestMakeRng:
    """Seedable, stream-split generators"""

    @pytest.mark.parametrize("algorithm", ["philox", "pcg64", "PCG64"])
    def test_reproducible(self, algorithm):
        first = make_rng(7, algorithm).random(5)
        second = make_rng(7, algorithm).random(5)
        np.testing.assert_array_equal(first, second)

    def test_streams_differ(self):
        assert not np.array_equal(make_rng(7, "philox", 0).random(5), make_rng(7, "philox", 1).random(5))

    def test_unknown_algorithm(self):
        with pytest.raises(InvalidConfig):
            make_rng(0, "mt19937")


class TestTwoOutcomeSampling:
    """Single measurements"""

    def test_born_probabilities(self):
        pair = sastom_from_strength(0.6, 0.0, 0.0)
        assert born_probabilities(PRESETS["H"], pair.operators) == pytest.approx([0.8, 0.2])
        assert born_probabilities(PRESETS["D"], pair.operators) == pytest.approx([0.5, 0.5])

    def test_incomplete_operators(self):
        with pytest.raises(IncompleteSet):
            born_probabilities(PRESETS["H"], [PROJ_H])

    def test_frequency_band(self):
        pair = sastom_from_strength(0.6, 0.0, 0.0)
        outcomes = sample_outcomes(PRESETS["H"], pair.operators, 100_000, make_rng(1))
        frequency = float(np.mean(outcomes == 0))
        assert 0.796 <= frequency <= 0.804

    def test_chi_square_against_probabilities(self):
        pair = sastom_from_strength(0.3, 1.0, 0.5)
        state = PRESETS["R"]
        outcomes = sample_outcomes(state, pair.operators, 20_000, make_rng(3))
        counts = np.bincount(outcomes, minlength=2)
        _, p_value = chi_square(counts, born_probabilities(state, pair.operators))
        assert p_value > 1e-3

    def test_post_state(self):
        record = sample_outcome(PRESETS["D"], [PROJ_H, PROJ_V], make_rng(5))
        expected = PRESETS["H"] if record.outcome_index == 0 else PRESETS["V"]
        assert record.probability == pytest.approx(0.5)
        assert record.post_state.vector == pytest.approx(expected.vector)

    def test_record_aliases(self):
        record = OutcomeRecord(outcome=1, probability=0.25)
        assert record.model_dump(by_alias=True) == {"outcome": 1, "probability": 0.25, "postState": None}
        with pytest.raises(ValidationError):
            OutcomeRecord(outcome=-1, probability=0.5)


class TestChainSampling:
    """Stage-by-stage runs"""

    def test_equal_weight_frequencies(self):
        povm = build_chain(equal_weight_chain(4))
        outcomes, n_meas = run_chain_shots(PRESETS["D"], povm, 100_000, make_rng(11))
        counts = np.bincount(outcomes, minlength=4)
        probs = chain_outcome_probabilities(PRESETS["D"], povm)
        assert probs == pytest.approx([0.25] * 4)
        assert np.all(np.abs(counts / 100_000 - 0.25) < 0.006)
        assert float(np.mean(n_meas)) == pytest.approx(2.25, abs=0.01)
        assert expected_measurement_count(probs) == pytest.approx(2.25)

    def test_stage_probabilities_match_povm(self, random_chain, rng):
        for _ in range(20):
            povm = build_chain(random_chain())
            state = PolarizationState.from_vector(rng.normal(size=2) + 1j * rng.normal(size=2))
            direct = born_probabilities(state, povm.k_ops)
            assert chain_outcome_probabilities(state, povm) == pytest.approx(direct, abs=1e-10)

    def test_single_run(self):
        povm = build_chain(equal_weight_chain(3))
        record = run_chain(PRESETS["H"], povm, make_rng(2))
        assert isinstance(record, ChainRunRecord)
        assert 0 <= record.outcome_index < 3
        assert record.measurements_performed == min(record.outcome_index + 1, 2)
        assert record.post_state is not None

    def test_post_state_is_normalized_operator_image(self, random_chain, rng):
        for seed in range(200):
            povm = build_chain(random_chain())
            state = PolarizationState.from_vector(rng.normal(size=2) + 1j * rng.normal(size=2))
            record = run_chain(state, povm, make_rng(seed))
            image = povm.k_ops[record.outcome_index] @ state.vector
            image = image / np.linalg.norm(image)
            assert abs(np.vdot(image, record.post_state.vector)) == pytest.approx(1.0, abs=1e-9)

    def test_stage_runs_fit_direct_povm(self, random_chain, rng):
        fitted = 0
        while fitted < 5:
            povm = build_chain(random_chain(max_outcomes=5))
            state = PolarizationState.from_vector(rng.normal(size=2) + 1j * rng.normal(size=2))
            probs = born_probabilities(state, povm.k_ops)
            if min(probs) < 1e-3:
                continue
            outcomes, _ = run_chain_shots(state, povm, 100_000, make_rng(300 + fitted))
            counts = np.bincount(outcomes, minlength=povm.n_outcomes)
            _, p_value = chi_square(counts, probs)
            assert p_value > 1e-3
            fitted += 1

    def test_measurement_count_of_last_two_outcomes(self):
        assert expected_measurement_count([0.0, 0.0, 1.0]) == 2.0
        assert expected_measurement_count([0.0, 1.0, 0.0]) == 2.0
        assert expected_measurement_count([1.0, 0.0, 0.0]) == 1.0


class TestChiSquare:
    """Goodness of fit helper"""

    def test_perfect_fit(self):
        statistic, p_value = chi_square([50, 50], [0.5, 0.5])
        assert statistic == 0.0
        assert p_value == pytest.approx(1.0)

    def test_no_counts_fit_trivially(self):
        assert chi_square([0, 0, 0], [0.2, 0.3, 0.5]) == (0.0, 1.0)

    def test_counts_in_impossible_bin(self):
        statistic, p_value = chi_square([10, 1], [1.0, 0.0])
        assert math.isinf(statistic)
        assert p_value == 0.0

    def test_empty_impossible_bin_is_dropped(self):
        assert chi_square([10, 0], [1.0, 0.0]) == (0.0, 1.0)


class TestRunBatches:
    """Batch splitting over RNG streams"""

    def test_shape_and_reproducibility(self):
        def draw(n, rng):
            return rng.random(n)

        first = run_batches(25, draw, seed=4, algorithm="philox", batch_size=10)
        second = run_batches(25, draw, seed=4, algorithm="philox", batch_size=10)
        assert first.shape == (25,)
        np.testing.assert_array_equal(first, second)
        np.testing.assert_array_equal(first[:10], make_rng(4, "philox", 0).random(10))
        np.testing.assert_array_equal(first[10:20], make_rng(4, "philox", 1).random(10))

    def test_tuple_results(self):
        povm = build_chain(equal_weight_chain(3))

        def draw(n, rng):
            return run_chain_shots(PRESETS["H"], povm, n, rng)

        outcomes, n_meas = run_batches(7, draw, batch_size=3)
        assert outcomes.shape == n_meas.shape == (7,)

    def test_zero_shots(self):
        assert run_batches(0, lambda n, rng: rng.random(n)).shape == (0,)

    def test_invalid(self):
        with pytest.raises(InvalidConfig):
            run_batches(-1, lambda n, rng: rng.random(n))
