"""
Immutable complex 2x2 matrices, the Pauli basis and their JSON encoding.
"""
import math
from typing import Annotated, Any

import numpy as np
from pydantic import PlainSerializer, PlainValidator
from pydantic_core import core_schema

from utils.errors import NonFiniteMatrix


class Complex2x2:
    """Read-only 2x2 complex matrix; entries are always finite."""

    __slots__ = ("_a",)
    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, entries):
        a = np.array(entries, dtype=np.complex128).reshape(2, 2)
        if not np.all(np.isfinite(a)):
            raise NonFiniteMatrix(f"matrix has non-finite entries: {a.tolist()}")
        a.setflags(write=False)
        self._a = a

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls) -> "Complex2x2":
        return cls(np.eye(2))

    @classmethod
    def zeros(cls) -> "Complex2x2":
        return cls(np.zeros((2, 2)))

    @classmethod
    def outer(cls, ket, bra) -> "Complex2x2":
        """|ket><bra| for two complex 2-vectors."""
        return cls(np.outer(np.asarray(ket, dtype=np.complex128), np.conj(np.asarray(bra, dtype=np.complex128))))

    @classmethod
    def projector(cls, ket) -> "Complex2x2":
        """|v><v| for a (not necessarily normalized) 2-vector."""
        return cls.outer(ket, ket)

    @classmethod
    def from_json(cls, data) -> "Complex2x2":
        """Decode the row-major `[[re, im], ...]` encoding (nested 2x2 complex lists also accepted)."""
        if isinstance(data, Complex2x2):
            return data
        if isinstance(data, np.ndarray):
            return cls(data)
        items = list(data)
        if len(items) == 4 and all(isinstance(x, (list, tuple)) and len(x) == 2 for x in items):
            return cls([complex(float(re), float(im)) for re, im in items])
        return cls(items)

    # views --------------------------------------------------------------

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def dag(self) -> "Complex2x2":
        return Complex2x2(self._a.conj().T)

    def trace(self) -> complex:
        return complex(self._a[0, 0] + self._a[1, 1])

    def det(self) -> complex:
        a = self._a
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])

    def __getitem__(self, index):
        return self._a[index]

    def to_json(self) -> list:
        return [[float(z.real), float(z.imag)] for z in self._a.reshape(4)]

    # algebra ------------------------------------------------------------

    def __matmul__(self, other):
        if isinstance(other, Complex2x2):
            return Complex2x2(self._a @ other._a)
        # matrix-vector products stay plain numpy
        return self._a @ np.asarray(other, dtype=np.complex128)

    def __add__(self, other: "Complex2x2") -> "Complex2x2":
        return Complex2x2(self._a + other._a)

    def __sub__(self, other: "Complex2x2") -> "Complex2x2":
        return Complex2x2(self._a - other._a)

    def __neg__(self) -> "Complex2x2":
        return Complex2x2(-self._a)

    def __mul__(self, scalar) -> "Complex2x2":
        return Complex2x2(self._a * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Complex2x2":
        return Complex2x2(self._a / scalar)

    # predicates ---------------------------------------------------------

    def max_abs_diff(self, other: "Complex2x2") -> float:
        return float(np.max(np.abs(self._a - other._a)))

    def allclose(self, other: "Complex2x2", tol: float = 1e-10) -> bool:
        return self.max_abs_diff(other) <= tol

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return float(np.max(np.abs(self._a - self._a.conj().T))) <= tol

    def is_unitary(self, tol: float = 1e-10) -> bool:
        return float(np.max(np.abs(self._a.conj().T @ self._a - np.eye(2)))) <= tol

    def is_psd(self, tol: float = 1e-10) -> bool:
        if not self.is_hermitian(tol):
            return False
        return self.min_eigenvalue() >= -tol

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the Hermitian part (closed form)."""
        a = self._a
        d0, d1 = a[0, 0].real, a[1, 1].real
        b = 0.5 * (a[0, 1] + np.conj(a[1, 0]))
        return 0.5 * (d0 + d1) - math.hypot(0.5 * (d0 - d1), abs(b))

    def hermitized(self) -> "Complex2x2":
        return Complex2x2(0.5 * (self._a + self._a.conj().T))

    def __repr__(self) -> str:
        return f"Complex2x2({self._a.tolist()})"

    # pydantic integration -------------------------------------------------

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: Any) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls._validate,
            serialization=core_schema.plain_serializer_function_ser_schema(lambda m: m.to_json()),
        )

    @classmethod
    def _validate(cls, value: Any) -> "Complex2x2":
        try:
            return cls.from_json(value)
        except NonFiniteMatrix as e:
            raise ValueError(str(e)) from e
        except (TypeError, ValueError) as e:
            raise ValueError(f"not a 2x2 complex matrix: {e}") from e


def _complex_from_json(value: Any) -> complex:
    if isinstance(value, bool):
        raise ValueError("boolean is not a complex number")
    if isinstance(value, (int, float, complex, np.number)):
        z = complex(value)
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        z = complex(float(value[0]), float(value[1]))
    else:
        raise ValueError(f"expected [re, im], got {value!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("complex value must be finite")
    return z


ComplexJson = Annotated[
    complex,
    PlainValidator(_complex_from_json),
    PlainSerializer(lambda z: [float(z.real), float(z.imag)]),
]

# Normalized 2-vector, serialized as [[re, im], [re, im]]
Ket = tuple[ComplexJson, ComplexJson]

IDENTITY = Complex2x2.identity()
ZERO = Complex2x2.zeros()
SIGMA_X = Complex2x2([[0, 1], [1, 0]])
SIGMA_Y = Complex2x2([[0, -1j], [1j, 0]])
SIGMA_Z = Complex2x2([[1, 0], [0, -1]])
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

KET_H = np.array([1.0, 0.0], dtype=np.complex128)
KET_V = np.array([0.0, 1.0], dtype=np.complex128)
KET_H.setflags(write=False)
KET_V.setflags(write=False)

PROJ_H = Complex2x2.projector(KET_H)
PROJ_V = Complex2x2.projector(KET_V)
