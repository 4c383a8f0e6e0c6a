"""Observables, pure states, moments, and the quantum correlation function.

The moment routines compute every standard deviation two ways, as the norm of
the centered action (F - <F>)|phi> and as sqrt(<F^2> - <F>^2), and refuse to
return if the routes disagree beyond numerical noise. The second moment is
taken as ||F|phi>||^2 rather than through the matrix square, which loses less
precision; the matrix-square route survives only in the test suite as an
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, NormalizationError, NumericalIntegrityError
from .linalg import as_vector, require_hermitian

STATE_NORM_ATOL = 1e-12
EXPECTATION_IMAG_RTOL = 1e-11
MOMENT_CROSSCHECK_RTOL = 1e-10
CORRELATION_CROSSCHECK_RTOL = 1e-11


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian matrix with a label; Hermiticity is validated once here."""

    matrix: np.ndarray
    label: str = "F"

    def __post_init__(self):
        m = require_hermitian(self.matrix).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_fro", float(np.linalg.norm(m)))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def fro_norm(self) -> float:
        return self._fro

    def __add__(self, other: "Observable") -> "Observable":
        _check_obs_dims(self, other)
        return Observable(self.matrix + other.matrix, label=f"{self.label}+{other.label}")

    def __sub__(self, other: "Observable") -> "Observable":
        _check_obs_dims(self, other)
        return Observable(self.matrix - other.matrix, label=f"{self.label}-{other.label}")


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm complex vector."""

    vector: np.ndarray

    def __post_init__(self):
        v = as_vector(self.vector).copy()
        n = float(np.linalg.norm(v))
        if abs(n - 1.0) > STATE_NORM_ATOL:
            raise NormalizationError(
                f"state is not normalized: |norm - 1| = {abs(n - 1.0):.3e} "
                f"exceeds {STATE_NORM_ATOL:.1e}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    @classmethod
    def from_unnormalized(cls, vec) -> "PureState":
        v = as_vector(vec)
        n = float(np.linalg.norm(v))
        if n < 1e-12:
            raise NormalizationError("cannot normalize a (near-)zero vector")
        return cls(v / n)

    @property
    def dim(self) -> int:
        return self.vector.size


@dataclass(frozen=True, eq=False)
class MomentSet:
    """Mean, second moment, standard deviation, and centered action for one pair."""

    mean: float
    second_moment: float
    std_dev: float
    deviation_vector: np.ndarray = field(repr=False)

    @property
    def variance(self) -> float:
        return self.std_dev**2


@dataclass(frozen=True)
class Correlation:
    """Quantum correlation <AB> - <A><B>; real part classical, imaginary quantum."""

    value: complex
    classical_part: float
    quantum_part: float


def _check_obs_dims(a: Observable, b: Observable) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(
            f"observables '{a.label}' ({a.dim}) and '{b.label}' ({b.dim}) differ in dimension"
        )


def _check_state_dim(f: Observable, state: PureState) -> None:
    if f.dim != state.dim:
        raise DimensionMismatchError(
            f"observable '{f.label}' has dimension {f.dim}, state has {state.dim}"
        )


def _real_mean(raw: complex, scale: float, label: str) -> float:
    if abs(raw.imag) > EXPECTATION_IMAG_RTOL * max(1.0, scale):
        raise NumericalIntegrityError(
            f"expectation of '{label}' has imaginary residue {raw.imag:.3e}; "
            "observable appears corrupted"
        )
    return float(raw.real)


def mean_and_deviation(f: Observable, state: PureState) -> tuple[float, np.ndarray, np.ndarray]:
    """Return (<F>, F|phi>, (F - <F>)|phi>). Low-level shared kernel."""
    _check_state_dim(f, state)
    v = state.vector
    fv = f.matrix @ v
    mean = _real_mean(complex(np.vdot(v, fv)), f.fro_norm, f.label)
    return mean, fv, fv - mean * v


def expectation(f: Observable, state: PureState) -> float:
    """Mean value <phi|F|phi>, guaranteed real for a valid observable."""
    mean, _, _ = mean_and_deviation(f, state)
    return mean


def deviation_operator(f: Observable, state: PureState) -> Observable:
    """F shifted by its mean in the given state; its mean there is zero."""
    mean, _, _ = mean_and_deviation(f, state)
    return Observable(f.matrix - mean * np.eye(f.dim), label=f"dev({f.label})")


def moments(f: Observable, state: PureState) -> MomentSet:
    """Mean, second moment, and standard deviation with a dual-route cross-check."""
    mean, fv, dev = mean_and_deviation(f, state)
    second = float(np.vdot(fv, fv).real)
    std = float(np.linalg.norm(dev))
    var_alt = second - mean**2
    scale = max(1.0, f.fro_norm) ** 2
    if abs(std**2 - var_alt) > MOMENT_CROSSCHECK_RTOL * scale:
        raise NumericalIntegrityError(
            f"variance routes diverge for '{f.label}': "
            f"|{std**2:.12e} - {var_alt:.12e}| exceeds tolerance"
        )
    dev = dev.copy()
    dev.setflags(write=False)
    return MomentSet(mean=mean, second_moment=second, std_dev=std, deviation_vector=dev)


def commutator_expectation(a: Observable, b: Observable, state: PureState) -> complex:
    """<phi|[A,B]|phi>, purely imaginary for Hermitian A and B."""
    _check_obs_dims(a, b)
    _check_state_dim(a, state)
    v = state.vector
    z = complex(np.vdot(a.matrix @ v, b.matrix @ v))
    return complex(0.0, 2.0 * z.imag)


def correlation(a: Observable, b: Observable, state: PureState) -> Correlation:
    """Quantum correlation of A and B in the given state.

    Computed as the overlap of the two centered actions and cross-checked
    against <AB> - <A><B>; the two must agree to rounding. The imaginary part
    fixes the commutator expectation: |<[A,B]>| = 2 |Im C|.
    """
    _check_obs_dims(a, b)
    _check_state_dim(a, state)
    mean_a, av, dev_a = mean_and_deviation(a, state)
    mean_b, bv, dev_b = mean_and_deviation(b, state)
    c_dev = complex(np.vdot(dev_a, dev_b))
    c_raw = complex(np.vdot(av, bv)) - mean_a * mean_b
    scale = max(1.0, a.fro_norm * b.fro_norm)
    if abs(c_dev - c_raw) > CORRELATION_CROSSCHECK_RTOL * scale:
        raise NumericalIntegrityError(
            f"correlation routes diverge for '{a.label}','{b.label}': "
            f"{c_dev!r} vs {c_raw!r}"
        )
    comm = commutator_expectation(a, b, state)
    if abs(2.0 * abs(c_dev.imag) - abs(comm)) > CORRELATION_CROSSCHECK_RTOL * scale:
        raise NumericalIntegrityError(
            "commutator expectation and correlation imaginary part disagree"
        )
    return Correlation(value=c_dev, classical_part=c_dev.real, quantum_part=c_dev.imag)
