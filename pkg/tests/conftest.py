"""
Shared fixtures: seeded generators, Haar-random SU(2) matrices and random configs.
"""
import math

import numpy as np
import pytest

from qmat import Complex2x2
from schemas import ChainConfig, GtomConfig, MatrixSpec, SastomConfig, SolidStateConfig


def haar_su2(rng: np.random.Generator) -> Complex2x2:
    """Uniform SU(2) element from a normalized quaternion."""
    a = rng.normal(size=4)
    a /= np.linalg.norm(a)
    return Complex2x2([[a[0] + 1j * a[3], a[2] + 1j * a[1]], [-a[2] + 1j * a[1], a[0] - 1j * a[3]]])


@pytest.fixture(name="rng")
def fixture_rng():
    """Seeded generator so every run sees the same random configs."""
    return np.random.default_rng(20240607)


@pytest.fixture(name="random_su2")
def fixture_random_su2(rng):
    def _random_su2():
        return haar_su2(rng)

    return _random_su2


@pytest.fixture(name="random_sastom")
def fixture_random_sastom(rng):
    def _random_sastom(with_pre: bool = False):
        return SastomConfig(
            r=float(rng.uniform(0.0, 1.0)),
            u1=MatrixSpec(m=haar_su2(rng)),
            u2=MatrixSpec(m=haar_su2(rng)),
            pre=MatrixSpec(m=haar_su2(rng)) if with_pre else None,
        )

    return _random_sastom


@pytest.fixture(name="random_gtom")
def fixture_random_gtom(rng, random_sastom):
    def _random_gtom():
        return GtomConfig(sastom=random_sastom(), r_prime=float(rng.uniform(0.0, 1.0)))

    return _random_gtom


@pytest.fixture(name="random_chain")
def fixture_random_chain(rng, random_gtom):
    """Chains of 1 to 7 stages mixing GTOM and solid-state stages, rotations and exit ports."""

    def _random_chain(max_outcomes: int = 8):
        n_stages = int(rng.integers(1, max_outcomes))
        stages = []
        for _ in range(n_stages):
            if rng.random() < 0.25:
                stages.append(SolidStateConfig(alpha=float(rng.uniform()), xi=float(rng.uniform(0.0, math.pi))))
            else:
                stages.append(random_gtom())
        rotations = [MatrixSpec(m=haar_su2(rng)) if rng.random() < 0.5 else None for _ in range(n_stages)]
        ports = [int(rng.integers(1, 3)) for _ in range(n_stages)]
        return ChainConfig(stages=stages, pre_rotations=rotations, exit_ports=ports)

    return _random_chain
