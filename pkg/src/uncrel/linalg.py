"""Dense complex linear algebra for small Hilbert spaces (d <= 64).

Thin validating wrappers around numpy plus a Hermitian eigensolver with a
fixed phase convention. No quantum semantics live here: higher layers attach
meaning to the vectors and matrices.

All tolerances are relative to the Frobenius norm of the input, with an
absolute floor for near-zero matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EigensolverError,
    FinitenessError,
    HermiticityError,
)

HERMITICITY_RTOL = 1e-10
ORTHONORMALITY_ATOL = 1e-10
RECONSTRUCTION_RTOL = 1e-9
NORM_FLOOR = 1e-14


def as_vector(x) -> np.ndarray:
    """Coerce to a finite 1-d complex128 array."""
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatchError(f"expected a nonempty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise FinitenessError("vector contains NaN or Inf entries")
    return v


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite square 2-d complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatchError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise FinitenessError("matrix contains NaN or Inf entries")
    return a


def _require_same_dim(n: int, m: int, what: str) -> None:
    if n != m:
        raise DimensionMismatchError(f"{what}: dimensions {n} and {m} differ")


def inner(x, y) -> complex:
    """Inner product, conjugate-linear in the first argument."""
    xv, yv = as_vector(x), as_vector(y)
    _require_same_dim(xv.size, yv.size, "inner product")
    return complex(np.vdot(xv, yv))


def norm(x) -> float:
    """Euclidean norm induced by :func:`inner`."""
    return float(np.linalg.norm(as_vector(x)))


def mat_apply(m, x) -> np.ndarray:
    mv, xv = as_matrix(m), as_vector(x)
    _require_same_dim(mv.shape[1], xv.size, "matrix-vector product")
    return mv @ xv


def mat_mul(m, n) -> np.ndarray:
    mv, nv = as_matrix(m), as_matrix(n)
    _require_same_dim(mv.shape[1], nv.shape[0], "matrix product")
    return mv @ nv


def mat_add(m, n) -> np.ndarray:
    mv, nv = as_matrix(m), as_matrix(n)
    _require_same_dim(mv.shape[0], nv.shape[0], "matrix sum")
    return mv + nv


def mat_sub(m, n) -> np.ndarray:
    mv, nv = as_matrix(m), as_matrix(n)
    _require_same_dim(mv.shape[0], nv.shape[0], "matrix difference")
    return mv - nv


def scalar_mul(c, m) -> np.ndarray:
    return complex(c) * as_matrix(m)


def adjoint(m) -> np.ndarray:
    """Conjugate transpose. Involutive exactly: adjoint(adjoint(m)) == m."""
    return as_matrix(m).conj().T.copy()


def hermiticity_residual(m) -> float:
    """Max entrywise |M - M*| relative to the Frobenius norm (floored)."""
    a = as_matrix(m)
    fro = float(np.linalg.norm(a))
    dev = float(np.abs(a - a.conj().T).max())
    return dev / max(fro, NORM_FLOOR)


def require_hermitian(m, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Return the validated matrix, raising if it is not Hermitian."""
    a = as_matrix(m)
    fro = float(np.linalg.norm(a))
    dev = float(np.abs(a - a.conj().T).max())
    if dev > max(rtol * fro, NORM_FLOOR):
        raise HermiticityError(
            f"matrix is not Hermitian: residual {dev / max(fro, NORM_FLOOR):.3e} "
            f"exceeds tolerance {rtol:.1e}"
        )
    return a


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.size

    def vector(self, k: int) -> np.ndarray:
        return self.vectors[:, k]


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    # Make the first component with modulus > 1e-12 real non-negative,
    # so repeated runs report the same basis.
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = int(np.argmax(np.abs(col) > 1e-12))
        pivot = col[idx]
        if abs(pivot) > 0.0:
            out[:, k] = col * (pivot.conjugate() / abs(pivot))
    return out


def hermitian_eigensystem(m) -> EigenSystem:
    """Full eigendecomposition of a Hermitian matrix.

    Values come back ascending with orthonormal eigenvectors; degenerate
    eigenvalues yield an arbitrary orthonormal basis of the eigenspace.
    """
    a = require_hermitian(m)
    sym = (a + a.conj().T) / 2.0
    try:
        values, vectors = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc
    vectors = _fix_phases(vectors)

    gram = vectors.conj().T @ vectors
    ortho_dev = float(np.abs(gram - np.eye(a.shape[0])).max())
    if ortho_dev > ORTHONORMALITY_ATOL:
        raise EigensolverError(f"eigenvector basis not orthonormal: residual {ortho_dev:.3e}")
    recon = (vectors * values) @ vectors.conj().T
    fro = float(np.linalg.norm(a))
    recon_dev = float(np.linalg.norm(recon - a))
    if recon_dev > max(RECONSTRUCTION_RTOL * fro, NORM_FLOOR):
        raise EigensolverError(f"spectral reconstruction residual {recon_dev:.3e} too large")

    values = values.astype(np.float64, copy=True)
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenSystem(values=values, vectors=vectors)
