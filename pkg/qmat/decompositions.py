"""
Closed-form spectral and polar decompositions of 2x2 complex matrices.
"""
import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from config import VALIDATION_TOL
from utils.errors import NotHermitian, NotPsd
from .matrix import IDENTITY, Complex2x2, Ket

# Relative determinant size below which a matrix is handled as rank-1
SINGULAR_RTOL = 1e-14

PHASE_CUTOFF = 1e-12


class HermitianEigenSystem(BaseModel):
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix."""
    model_config = ConfigDict(frozen=True)

    eigenvalues: tuple[float, float]
    eigenvectors: tuple[Ket, Ket]

    def vector(self, index: int) -> np.ndarray:
        return np.array(self.eigenvectors[index], dtype=np.complex128)

    def projector(self, index: int) -> Complex2x2:
        return Complex2x2.projector(self.vector(index))

    def reconstruct(self) -> Complex2x2:
        return self.projector(0) * self.eigenvalues[0] + self.projector(1) * self.eigenvalues[1]


class PolarDecomposition(BaseModel):
    """X = unitary_part.dag @ positive_part."""
    model_config = ConfigDict(frozen=True)

    unitary_part: Complex2x2
    positive_part: Complex2x2

    def reconstruct(self) -> Complex2x2:
        return self.unitary_part.dag @ self.positive_part


def canonical_phase(vec: np.ndarray) -> np.ndarray:
    """
    Fix the global phase of a 2-vector.

    The first component with modulus above 1e-12 is made real and positive.
    """
    vec = np.asarray(vec, dtype=np.complex128)
    for component in vec:
        if abs(component) > PHASE_CUTOFF:
            return vec * (abs(component) / component)
    return vec


def hermitian_eigensystem(a: Complex2x2, tol: float = VALIDATION_TOL) -> HermitianEigenSystem:
    """
    Eigen-decompose a Hermitian 2x2 matrix without iteration.

    Args:
        a: Hermitian matrix
        tol: Allowed deviation from Hermitian symmetry

    Returns:
        HermitianEigenSystem with eigenvalues sorted descending

    Raises:
        NotHermitian: If a differs from its adjoint by more than tol
    """
    if not a.is_hermitian(tol):
        residual = a.max_abs_diff(a.dag)
        raise NotHermitian(f"matrix is not Hermitian (asymmetry {residual:.3e})", residual=residual)

    d0, d1 = float(a[0, 0].real), float(a[1, 1].real)
    b = 0.5 * (a[0, 1] + np.conj(a[1, 0]))
    mean = 0.5 * (d0 + d1)
    half = 0.5 * (d0 - d1)
    radius = math.hypot(half, abs(b))

    if radius == 0.0:
        v1 = np.array([1.0, 0.0], dtype=np.complex128)
    else:
        # pick the better conditioned of the two row-null vectors
        if half >= 0.0:
            v1 = np.array([radius + half, np.conj(b)], dtype=np.complex128)
        else:
            v1 = np.array([b, radius - half], dtype=np.complex128)
        v1 = v1 / np.linalg.norm(v1)
    v2 = np.array([-np.conj(v1[1]), np.conj(v1[0])], dtype=np.complex128)

    v1 = canonical_phase(v1)
    v2 = canonical_phase(v2)
    return HermitianEigenSystem(
        eigenvalues=(mean + radius, mean - radius),
        eigenvectors=(tuple(complex(z) for z in v1), tuple(complex(z) for z in v2)),
    )


def psd_sqrt(a: Complex2x2, tol: float = VALIDATION_TOL) -> Complex2x2:
    """
    Positive square root of a PSD matrix.

    Eigenvalues in [-tol, 0] are clamped to zero.

    Raises:
        NotHermitian: If a is not Hermitian
        NotPsd: If an eigenvalue lies below -tol
    """
    system = hermitian_eigensystem(a, tol)
    lo = system.eigenvalues[1]
    if lo < -tol:
        raise NotPsd(f"matrix has negative eigenvalue {lo:.3e}", residual=-lo)
    roots = [math.sqrt(max(lam, 0.0)) for lam in system.eigenvalues]
    return system.projector(0) * roots[0] + system.projector(1) * roots[1]


def adjugate(x: Complex2x2) -> Complex2x2:
    return Complex2x2([[x[1, 1], -x[0, 1]], [-x[1, 0], x[0, 0]]])


def right_polar_decompose(x: Complex2x2) -> PolarDecomposition:
    """
    Split X into V^dagger M with V unitary and M = sqrt(X^dagger X).

    Uses the 2x2 identity U = (X + e^{i chi} adj(X)^dagger) / s with U = V^dagger.
    For nonsingular X the phase is that of det X. For rank-1 X the unitary part
    is not unique; the kernel is sent to the orthogonal complement of the image
    with e^{i chi} taken from tr X (1 when the trace vanishes), so rank-1 PSD
    inputs get V = I. This trace phase fixes the rank-1 freedom in place of making a
    free matrix element of V real and positive; both choices leave M unchanged.
    The zero matrix decomposes as V = I, M = 0.

    Args:
        x: Any finite 2x2 matrix

    Returns:
        PolarDecomposition(unitary_part=V, positive_part=M)
    """
    arr = x.array
    frob2 = float(np.sum(np.abs(arr) ** 2))
    if frob2 == 0.0:
        return PolarDecomposition(unitary_part=IDENTITY, positive_part=Complex2x2.zeros())

    det = x.det()
    if abs(det) > SINGULAR_RTOL * frob2:
        phase = det / abs(det)
    else:
        trace = x.trace()
        phase = trace / abs(trace) if abs(trace) > PHASE_CUTOFF * math.sqrt(frob2) else 1.0

    y = arr + phase * adjugate(x).array.conj().T
    scale = float(np.linalg.norm(y)) / math.sqrt(2.0)
    u = Complex2x2(y / scale)
    m = (u.dag @ x).hermitized()
    return PolarDecomposition(unitary_part=u.dag, positive_part=m)


def positive_part(x: Complex2x2) -> Complex2x2:
    return right_polar_decompose(x).positive_part


def hs_inner(a: Complex2x2, b: Complex2x2) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dagger B)."""
    return complex(np.vdot(a.array, b.array))


def commutator(a: Complex2x2, b: Complex2x2) -> Complex2x2:
    return a @ b - b @ a


def completeness_residual(operators) -> float:
    """Largest entry of sum_n M_n^dagger M_n - I."""
    total = np.zeros((2, 2), dtype=np.complex128)
    for op in operators:
        total += op.array.conj().T @ op.array
    return float(np.max(np.abs(total - np.eye(2))))
