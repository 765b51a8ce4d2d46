"""
Complex 2x2 linear algebra: matrices, eigensystems, square roots and polar decompositions.
"""
from .matrix import (
    IDENTITY,
    KET_H,
    KET_V,
    PAULIS,
    PROJ_H,
    PROJ_V,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ZERO,
    Complex2x2,
    ComplexJson,
    Ket,
)
from .decompositions import (
    HermitianEigenSystem,
    PolarDecomposition,
    adjugate,
    canonical_phase,
    commutator,
    completeness_residual,
    hermitian_eigensystem,
    hs_inner,
    positive_part,
    psd_sqrt,
    right_polar_decompose,
)

__all__ = [
    'Complex2x2', 'ComplexJson', 'Ket', 'IDENTITY', 'ZERO', 'SIGMA_X', 'SIGMA_Y', 'SIGMA_Z',
    'PAULIS', 'KET_H', 'KET_V', 'PROJ_H', 'PROJ_V',
    'HermitianEigenSystem', 'PolarDecomposition', 'hermitian_eigensystem', 'psd_sqrt',
    'right_polar_decompose', 'positive_part', 'hs_inner', 'adjugate', 'canonical_phase',
    'commutator', 'completeness_residual',
]
