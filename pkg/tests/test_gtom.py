"""Tests for general two-outcome measurements and partial collapse."""
import math

import numpy as np
import pytest

from gtom import (
    analytic_gtom_operators,
    build_gtom,
    gtom_weights,
    indistinguishability,
    partial_collapse,
    phase_gate_predicted,
)
from qmat import IDENTITY, PROJ_H, PROJ_V, SIGMA_Z, Complex2x2
from schemas import GtomConfig, SastomConfig
from utils.errors import OutOfRange


class TestBuildGtom:
    """Second beam splitter recombination"""

    def test_random_configs(self, random_gtom):
        for _ in range(1000):
            cfg = random_gtom()
            result = build_gtom(cfg)
            assert result.m1.is_psd(1e-12) and result.m2.is_psd(1e-12)
            assert result.s_gate.is_unitary(1e-10)
            assert result.delta == pytest.approx(result.p + result.q - 1.0)
            indistinguishability(result)

    def test_effects_match_analytic_operators(self, random_gtom):
        for _ in range(200):
            result = build_gtom(random_gtom())
            char = result.characterization
            a1, a2 = analytic_gtom_operators(result.p, result.q, char.m_plus, char.m_minus)
            e1, e2 = result.effects()
            assert e1.allclose(a1.dag @ a1, 1e-10)
            assert e2.allclose(a2.dag @ a2, 1e-10)
            assert result.m1.allclose(a1, 1e-10)

    def test_weights_excess(self, rng):
        for _ in range(100):
            epsilon, r_prime = rng.uniform(size=2)
            p, q = gtom_weights(epsilon, r_prime)
            t_prime = math.sqrt(1 - r_prime ** 2)
            assert p + q - 1 == pytest.approx(2 * r_prime * t_prime * math.sqrt(1 - epsilon ** 2), abs=1e-12)


class TestLimits:
    """Pass-through and balanced recombination"""

    def test_full_reflection_passes_sastom_through(self):
        result = build_gtom(GtomConfig(sastom=SastomConfig(r=math.sqrt(0.8)), r_prime=1.0))
        assert result.p == pytest.approx(0.8)
        assert result.q == pytest.approx(0.2)
        assert result.s_kind == "identity"
        assert result.m1.allclose(Complex2x2([[math.sqrt(0.8), 0], [0, math.sqrt(0.2)]]), 1e-12)

    def test_balanced_recombination_of_projective_measurement(self):
        result = build_gtom(GtomConfig(sastom=SastomConfig(r=1.0), r_prime=1 / math.sqrt(2)))
        assert result.s_kind == "phase"
        assert result.m1.allclose(IDENTITY / math.sqrt(2), 1e-12)
        assert result.m2.allclose(IDENTITY / math.sqrt(2), 1e-12)
        assert min(result.s_gate.max_abs_diff(SIGMA_Z), result.s_gate.max_abs_diff(-SIGMA_Z)) <= 1e-12
        assert (result.p, result.q) == pytest.approx((0.5, 0.5))

    def test_zero_reflection_swaps_operators(self):
        result = build_gtom(GtomConfig(sastom=SastomConfig(r=1.0), r_prime=0.0))
        assert result.m1.allclose(PROJ_V, 1e-12)
        assert result.m2.allclose(PROJ_H, 1e-12)
        assert (result.p, result.q) == pytest.approx((0.0, 1.0))

    def test_json_aliases(self):
        result = build_gtom(GtomConfig.model_validate({"sastom": {"r": 1.0}, "rPrime": 1.0}))
        dumped = result.model_dump(mode="json", by_alias=True)
        assert {"sGate", "sKind", "p", "q", "delta"} <= dumped.keys()


class TestPhaseGateCondition:
    """S is a phase gate exactly when sqrt(1 - eps^2) <= 2 r' t'"""

    @pytest.mark.parametrize("r_prime, expected", [(0.3, "identity"), (0.7, "phase"), (0.95, "identity")])
    def test_prediction_and_decomposition_agree(self, r_prime, expected):
        cfg = GtomConfig(sastom=SastomConfig(r=math.sqrt(0.8)), r_prime=r_prime)
        assert phase_gate_predicted(0.6, r_prime) == (expected == "phase")
        assert build_gtom(cfg).s_kind == expected

    @pytest.mark.parametrize("offset", [-1e-12, 1e-12])
    def test_operators_continuous_across_boundary(self, offset):
        sastom = SastomConfig(r=math.sqrt(0.8))
        at_boundary = build_gtom(GtomConfig(sastom=sastom, r_prime=math.sqrt(0.2)))
        nearby = build_gtom(GtomConfig(sastom=sastom, r_prime=math.sqrt(0.2) + offset))
        assert nearby.m2.max_abs_diff(at_boundary.m2) <= 1e-9
        assert nearby.m1.max_abs_diff(at_boundary.m1) <= 1e-9


class TestPartialCollapse:
    """q = 1 measurements"""

    @pytest.mark.parametrize("p", [0.0, 0.36, 0.5, 0.9, 1.0])
    def test_leaves_minus_state_undisturbed(self, p):
        cfg = partial_collapse(p, 1.1, 0.4)
        result = build_gtom(cfg)
        assert result.p == pytest.approx(p, abs=1e-8)
        assert result.q == pytest.approx(1.0, abs=1e-8)
        char = result.characterization
        assert char.epsilon == pytest.approx(1 - 2 * cfg.r_prime ** 2, abs=1e-8)

    @pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.75])
    def test_second_operator_is_rank_one(self, p):
        result = build_gtom(partial_collapse(p, 0.7, -2.0))
        assert result.q == pytest.approx(1.0, abs=1e-10)
        singular = np.linalg.svd(result.m2.array, compute_uv=False)
        assert singular[1] <= 1e-10
        assert singular[0] == pytest.approx(math.sqrt(1 - p), abs=1e-10)

    def test_direction_follows_target(self):
        result = build_gtom(partial_collapse(0.36, 1.1, 0.4))
        char = result.characterization
        assert char.theta == pytest.approx(1.1, abs=1e-8)
        assert char.phi == pytest.approx(0.4, abs=1e-8)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            partial_collapse(1.5, 0.0, 0.0)
