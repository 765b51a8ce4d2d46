"""Tests for N-outcome POVMs built from measurement chains."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from chain import (
    build_chain,
    chain_from_pairs,
    check_conservation,
    conservation_residuals,
    povm_gram,
    stage_pair,
)
from inverse import equal_weight_chain
from optics import half_wave_plate
from qmat import IDENTITY, KET_H, KET_V, PROJ_H, PROJ_V, Complex2x2
from schemas import ChainConfig, GtomConfig, MatrixSpec, SastomConfig, SolidStateConfig, parse_build_config
from utils.errors import InvalidConfig, InvariantViolation

PROJECTIVE_STAGE = GtomConfig(sastom=SastomConfig(r=1.0), r_prime=1.0)


class TestBuildChain:
    """Recursion K_l = W_l M1(l) Y_l"""

    def test_random_chains_are_complete_and_conserving(self, random_chain):
        for _ in range(200):
            cfg = random_chain()
            povm = build_chain(cfg)
            assert povm.n_outcomes == cfg.n_outcomes
            assert povm.completeness_residual() <= 1e-10
            assert check_conservation(povm) <= 1e-10
            for w in povm.w_ops:
                assert w.is_unitary(1e-10)

    def test_first_operator_is_first_stage(self, random_chain):
        cfg = random_chain()
        povm = build_chain(cfg)
        assert povm.k_ops[0].allclose(povm.stage_m1[0], 1e-12)
        assert povm.y_ops[0].allclose(IDENTITY, 0.0)

    def test_recursion_rebuilds_from_stage_operators(self, random_chain):
        for _ in range(100):
            povm = build_chain(random_chain())
            y = IDENTITY
            for index, (m1, m2) in enumerate(zip(povm.stage_m1, povm.stage_m2)):
                assert povm.y_ops[index].allclose(y, 1e-12)
                assert povm.k_ops[index].allclose(povm.w_ops[index] @ m1 @ y, 1e-12)
                y = m2 @ y
            assert povm.y_ops[-1].allclose(y, 1e-12)
            assert povm.k_ops[-1].allclose(povm.w_ops[-1] @ y, 1e-12)
            if len(povm.stage_m2) >= 2:
                assert (povm.stage_m2[1] @ povm.stage_m2[0]).allclose(povm.y_ops[2], 1e-12)

    def test_projective_three_outcome_chain(self):
        povm = build_chain(ChainConfig(stages=[PROJECTIVE_STAGE, PROJECTIVE_STAGE]))
        effects = povm.effects()
        assert effects[0].allclose(PROJ_H, 1e-14)
        assert effects[1].allclose(Complex2x2.zeros(), 1e-14)
        assert effects[2].allclose(PROJ_V, 1e-14)
        assert povm.stage_kinds == ["gtom", "gtom"]

    def test_exit_port_swaps_outputs(self):
        povm = build_chain(ChainConfig(stages=[PROJECTIVE_STAGE, PROJECTIVE_STAGE], exit_ports=[1, 2]))
        effects = povm.effects()
        assert effects[0].allclose(PROJ_H, 1e-14)
        assert effects[1].allclose(PROJ_V, 1e-14)
        assert effects[2].allclose(Complex2x2.zeros(), 1e-14)

    def test_pre_rotation_changes_direction(self):
        cfg = ChainConfig(stages=[PROJECTIVE_STAGE], pre_rotations=[MatrixSpec(m=half_wave_plate(math.pi / 8))])
        effects = build_chain(cfg).effects()
        proj_d = Complex2x2.projector((KET_H + KET_V) / math.sqrt(2))
        proj_a = Complex2x2.projector((KET_H - KET_V) / math.sqrt(2))
        assert effects[0].allclose(proj_d, 1e-12)
        assert effects[1].allclose(proj_a, 1e-12)

    def test_solid_state_stage(self):
        cfg = ChainConfig(stages=[SolidStateConfig(alpha=0.9), PROJECTIVE_STAGE])
        effects = build_chain(cfg).effects()
        assert effects[0].allclose(Complex2x2([[0.81, 0], [0, 0.19]]), 1e-12)
        assert effects[1].allclose(PROJ_H * 0.19, 1e-12)
        assert effects[2].allclose(PROJ_V * 0.81, 1e-12)

    def test_config_from_json(self):
        cfg = parse_build_config({
            "kind": "chain",
            "stages": [{"kind": "gtom", "sastom": {"r": 1.0}, "rPrime": 1.0}, {"kind": "solidstate", "alpha": 0.5}],
            "preRotations": [None, [[0, 0], [1, 0], [-1, 0], [0, 0]]],
            "exitPorts": [2, 1],
        })
        assert cfg.n_outcomes == 3
        assert cfg.exit_port(0) == 2
        assert isinstance(cfg.rotation(1), MatrixSpec)
        assert build_chain(cfg).completeness_residual() <= 1e-12


class TestEqualWeightChain:
    """N outcomes of effect I / N"""

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
    def test_effects(self, n):
        povm = build_chain(equal_weight_chain(n))
        for effect in povm.effects():
            assert effect.allclose(IDENTITY / n, 1e-10)

    def test_four_outcome_gram(self):
        cfg = equal_weight_chain(4)
        assert cfg.exit_ports == [2, 2, 1]
        gram = povm_gram(build_chain(cfg))
        np.testing.assert_allclose(gram, np.full((4, 4), 1 / 8), atol=1e-10)

    def test_too_few_outcomes(self):
        with pytest.raises(InvalidConfig):
            equal_weight_chain(1)


class TestFailures:
    """Rejected chains"""

    def test_empty(self):
        with pytest.raises(InvalidConfig):
            chain_from_pairs([])
        with pytest.raises(ValidationError):
            ChainConfig(stages=[])

    def test_incomplete_pairs(self):
        with pytest.raises(InvariantViolation) as e:
            chain_from_pairs([(PROJ_H, PROJ_H)])
        assert e.value.invariant == "completeness"

    def test_bad_exit_port(self):
        with pytest.raises(InvalidConfig):
            stage_pair(PROJECTIVE_STAGE, None, 3)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            ChainConfig(stages=[PROJECTIVE_STAGE], exit_ports=[1, 2])

    def test_conservation_residuals_per_stage(self):
        povm = chain_from_pairs([(PROJ_H, PROJ_V), (PROJ_V, PROJ_H)], kinds=["a", "b"])
        gaps = conservation_residuals(povm)
        assert len(gaps) == 3
        assert max(gaps) <= 1e-15
        assert povm.stage_kinds == ["a", "b"]
