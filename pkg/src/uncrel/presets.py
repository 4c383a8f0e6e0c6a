"""Built-in observables and basis states for demos and tests.

Pauli matrices are exact integer matrices. Spin components for dimension d
(spin j = (d-1)/2, d <= 8) are built from integer ladder coefficients, so the
only rounding is the final correctly-rounded square root of an integer.
"""

from __future__ import annotations

import numpy as np

from .errors import ProblemFileError
from .quantum import Observable, PureState

MAX_SPIN_DIM = 8

PRESET_OBSERVABLE_NAMES = (
    "pauli-x",
    "pauli-y",
    "pauli-z",
    "identity",
    "spin-x",
    "spin-y",
    "spin-z",
)


def pauli_x() -> Observable:
    return Observable(np.array([[0, 1], [1, 0]], dtype=complex), label="pauli-x")


def pauli_y() -> Observable:
    return Observable(np.array([[0, -1j], [1j, 0]], dtype=complex), label="pauli-y")


def pauli_z() -> Observable:
    return Observable(np.array([[1, 0], [0, -1]], dtype=complex), label="pauli-z")


def identity_observable(dim: int) -> Observable:
    return Observable(np.eye(dim, dtype=complex), label="identity")


def _ladder_coeffs(dim: int) -> np.ndarray:
    # c_k = sqrt((k+1)(d-1-k)), the raising amplitude between levels k+1 and k.
    k = np.arange(dim - 1)
    return np.sqrt((k + 1.0) * (dim - 1.0 - k))


def spin_component(axis: str, dim: int) -> Observable:
    """Spin-j component for j = (dim-1)/2 in the standard weight basis."""
    if dim < 2 or dim > MAX_SPIN_DIM:
        raise ProblemFileError(f"spin presets support dimensions 2..{MAX_SPIN_DIM}, got {dim}")
    c = _ladder_coeffs(dim)
    m = np.zeros((dim, dim), dtype=complex)
    if axis == "z":
        np.fill_diagonal(m, (dim - 1 - 2 * np.arange(dim)) / 2.0)
    elif axis == "x":
        for k in range(dim - 1):
            m[k, k + 1] = c[k] / 2.0
            m[k + 1, k] = c[k] / 2.0
    elif axis == "y":
        for k in range(dim - 1):
            m[k, k + 1] = -1j * c[k] / 2.0
            m[k + 1, k] = 1j * c[k] / 2.0
    else:
        raise ProblemFileError(f"unknown spin axis '{axis}'")
    return Observable(m, label=f"spin-{axis}")


def preset_observable(name: str, dim: int = 2) -> Observable:
    """Resolve a preset observable name at the given dimension."""
    if name in ("pauli-x", "pauli-y", "pauli-z"):
        if dim != 2:
            raise ProblemFileError(f"preset '{name}' requires dimension 2, got {dim}")
        return {"pauli-x": pauli_x, "pauli-y": pauli_y, "pauli-z": pauli_z}[name]()
    if name == "identity":
        return identity_observable(dim)
    if name.startswith("spin-") and name[5:] in ("x", "y", "z"):
        return spin_component(name[5:], dim)
    raise ProblemFileError(
        f"unknown preset observable '{name}'; available: {', '.join(PRESET_OBSERVABLE_NAMES)}"
    )


def preset_state(name: str, dim: int) -> PureState:
    """Resolve a preset state; 'basis-K' is the K-th standard basis vector."""
    if name.startswith("basis-"):
        try:
            k = int(name[6:])
        except ValueError:
            raise ProblemFileError(f"malformed basis state name '{name}'") from None
        if not 0 <= k < dim:
            raise ProblemFileError(f"basis index {k} out of range for dimension {dim}")
        v = np.zeros(dim, dtype=complex)
        v[k] = 1.0
        return PureState(v)
    raise ProblemFileError(f"unknown preset state '{name}'; use 'basis-K' or a problem file label")
