"""Tests for symmetric arbitrary-strength two-outcome measurements."""
import math

import numpy as np
import pytest

from optics import half_wave_plate, iinuma_preset, path_overlap
from qmat import IDENTITY, KET_H, KET_V, PAULIS, PROJ_H, PROJ_V, Complex2x2
from sastom import (
    analytic_operators,
    build_sastom,
    characterize_sastom,
    check_measurement_pair,
    sastom_from_strength,
    strength_closed_form,
)
from schemas import MatrixSpec, SastomConfig
from utils.errors import InvariantViolation, OutOfRange


def bloch_effect(epsilon, theta, phi):
    """(I + eps n.sigma) / 2 for the direction (theta, phi)."""
    n = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    return (IDENTITY + sum((s * c for s, c in zip(PAULIS, n)), Complex2x2.zeros()) * epsilon) * 0.5


class TestBuildSastom:
    """Measurement operators from the interferometer"""

    def test_random_configs_agree_with_analytic_form(self, random_sastom):
        for index in range(1000):
            cfg = random_sastom(with_pre=bool(index % 2))
            pair = build_sastom(cfg, validate=True)
            assert pair.m1.is_psd(1e-12) and pair.m2.is_psd(1e-12)
            assert pair.v1.is_unitary(1e-12) and pair.v2.is_unitary(1e-12)
            char = pair.characterization
            assert 0.0 <= char.theta <= math.pi
            assert -math.pi < char.phi <= math.pi

    def test_effect_points_along_reported_direction(self, random_sastom):
        for _ in range(200):
            pair = build_sastom(random_sastom(with_pre=True))
            char = pair.characterization
            e1 = pair.effects()[0]
            assert e1.allclose(bloch_effect(char.epsilon, char.theta, char.phi), 1e-10)

    def test_strength_matches_closed_form(self, random_sastom):
        for _ in range(200):
            cfg = random_sastom()
            epsilon = characterize_sastom(cfg).epsilon
            assert epsilon ** 2 == pytest.approx(strength_closed_form(cfg.r, path_overlap(cfg)) ** 2, abs=1e-12)

    def test_branch_reconstruction(self, random_sastom):
        from optics import interferometer_branches

        for _ in range(50):
            cfg = random_sastom(with_pre=True)
            branches = interferometer_branches(cfg)
            pair = build_sastom(cfg)
            assert (pair.v1.dag @ pair.m1).allclose(branches.x1, 1e-12)
            assert (pair.v2.dag @ pair.m2).allclose(branches.x2, 1e-12)


class TestLimits:
    """Projective, identity and balanced cases"""

    def test_full_reflection_is_projective(self):
        pair = build_sastom(SastomConfig(r=1.0), validate=True)
        assert pair.m1.allclose(PROJ_H, 1e-14)
        assert pair.m2.allclose(PROJ_V, 1e-14)
        char = pair.characterization
        assert char.epsilon == 1.0
        assert (char.theta, char.phi) == (0.0, 0.0)

    def test_full_transmission_points_to_vertical(self):
        char = characterize_sastom(SastomConfig(r=0.0))
        assert char.epsilon == 1.0
        assert char.theta == pytest.approx(math.pi)

    def test_balanced_without_overlap_is_zero_strength(self):
        pair = build_sastom(SastomConfig(r=1 / math.sqrt(2)), validate=True)
        char = pair.characterization
        assert char.epsilon == pytest.approx(0.0, abs=1e-14)
        assert (char.theta, char.phi) == (math.pi / 2, 0.0)
        assert pair.m1.allclose(IDENTITY / math.sqrt(2), 1e-14)
        assert pair.m2.allclose(IDENTITY / math.sqrt(2), 1e-14)

    @pytest.mark.parametrize("eta", np.linspace(0.0, math.pi / 4, 102)[1:-1])
    def test_iinuma_measures_along_x(self, eta):
        pair = build_sastom(iinuma_preset(eta), validate=True)
        char = pair.characterization
        assert char.epsilon == pytest.approx(abs(math.sin(4 * eta)), abs=1e-12)
        assert char.theta == pytest.approx(math.pi / 2, abs=1e-12)
        assert char.phi == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("eta", np.linspace(math.pi / 4, math.pi / 2, 102)[1:-1])
    def test_iinuma_negative_overlap_points_along_minus_x(self, eta):
        char = build_sastom(iinuma_preset(eta), validate=True).characterization
        assert char.epsilon == pytest.approx(abs(math.sin(4 * eta)), abs=1e-12)
        assert char.theta == pytest.approx(math.pi / 2, abs=1e-12)
        assert char.phi == pytest.approx(math.pi, abs=1e-12)
        proj_a = Complex2x2.projector((KET_H - KET_V) / math.sqrt(2))
        assert char.projector_plus().allclose(proj_a, 1e-12)

    def test_unequal_reflection_without_overlap(self):
        char = characterize_sastom(SastomConfig(r=math.sqrt(0.8)))
        assert char.epsilon == pytest.approx(0.6)
        assert char.theta == 0.0
        assert char.w == 0

    def test_pre_rotation_turns_direction(self):
        cfg = SastomConfig(r=1.0, pre=MatrixSpec(m=half_wave_plate(math.pi / 8)))
        pair = build_sastom(cfg, validate=True)
        proj_d = Complex2x2.projector((KET_H + KET_V) / math.sqrt(2))
        assert pair.m1.allclose(proj_d, 1e-12)
        assert pair.characterization.theta == pytest.approx(math.pi / 2)
        assert pair.characterization.phi == pytest.approx(0.0, abs=1e-12)


class TestSastomFromStrength:
    """Direct construction in a chosen eigenbasis"""

    @pytest.mark.parametrize("epsilon", [0.0, 0.3, 0.6, 1.0])
    def test_indistinguishability(self, epsilon):
        pair = sastom_from_strength(epsilon, 1.0, 0.5)
        check_measurement_pair(pair.m1, pair.m2)
        assert pair.indistinguishability() == pytest.approx((1 - epsilon ** 2) / 2, abs=1e-12)
        assert pair.characterization.w is None

    def test_effect_direction(self):
        pair = sastom_from_strength(0.7, 2.1, -1.3)
        e1, e2 = pair.effects()
        assert e1.allclose(bloch_effect(0.7, 2.1, -1.3), 1e-14)
        assert (e1 + e2).allclose(IDENTITY, 1e-14)

    def test_zero_strength_resets_direction(self):
        char = sastom_from_strength(0.0, 0.4, 1.0).characterization
        assert (char.theta, char.phi) == (math.pi / 2, 0.0)

    def test_analytic_operators_swap_eigenvalues(self):
        char = sastom_from_strength(0.6, 0.0, 0.0).characterization
        m1, m2 = analytic_operators(char)
        assert m1.allclose(Complex2x2([[math.sqrt(0.8), 0], [0, math.sqrt(0.2)]]), 1e-14)
        assert m2.allclose(Complex2x2([[math.sqrt(0.2), 0], [0, math.sqrt(0.8)]]), 1e-14)

    @pytest.mark.parametrize("epsilon, theta, phi", [(1.5, 0.0, 0.0), (0.5, 4.0, 0.0), (0.5, 1.0, 4.0), (-0.1, 0, 0)])
    def test_out_of_range(self, epsilon, theta, phi):
        with pytest.raises(OutOfRange):
            sastom_from_strength(epsilon, theta, phi)


class TestCheckMeasurementPair:
    """Named post-condition failures"""

    def test_incomplete(self):
        with pytest.raises(InvariantViolation) as e:
            check_measurement_pair(PROJ_H, PROJ_H)
        assert e.value.invariant == "completeness"

    def test_unit_trace(self):
        with pytest.raises(InvariantViolation) as e:
            check_measurement_pair(IDENTITY, Complex2x2.zeros())
        assert e.value.invariant == "unit effect trace"

    def test_commutation(self):
        flip = Complex2x2.outer(KET_V, KET_H)
        with pytest.raises(InvariantViolation) as e:
            check_measurement_pair(flip, PROJ_V)
        assert e.value.invariant == "commutation"
