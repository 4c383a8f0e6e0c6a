"""Problem-file JSON schema: named observables and states for one dimension.

Layout::

    {
      "dim": 2,
      "observables": {"A": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]},
      "states": {"phi": [[1.0, 0.0], [0.0, 0.0]]}
    }

Complex numbers are [re, im] pairs throughout, matrices row-major. Numbers
round-trip exactly: a file written by this module re-reads to bit-identical
arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ProblemFileError
from .quantum import Observable, PureState

OBSERVABLE_HERMITICITY_RTOL = 1e-10
STATE_NORM_ATOL = 1e-10


@dataclass
class ProblemFile:
    """Validated bundle of same-dimension observables and states."""

    dim: int
    observables: dict[str, Observable] = field(default_factory=dict)
    states: dict[str, PureState] = field(default_factory=dict)


def pairs_to_vector(pairs, label: str) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ProblemFileError(f"state '{label}': expected a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def pairs_to_matrix(pairs, label: str) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ProblemFileError(f"observable '{label}': expected a square matrix of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def vector_to_pairs(v: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in v]


def matrix_to_pairs(m: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def parse_problem(payload: dict) -> ProblemFile:
    """Validate a decoded problem payload into typed objects.

    Every failure names the offending label and the measured residual.
    """
    if not isinstance(payload, dict) or "dim" not in payload:
        raise ProblemFileError("problem payload must be an object with a 'dim' field")
    dim = payload["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ProblemFileError(f"'dim' must be a positive integer, got {dim!r}")

    observables: dict[str, Observable] = {}
    for label, pairs in (payload.get("observables") or {}).items():
        m = pairs_to_matrix(pairs, label)
        if m.shape[0] != dim:
            raise ProblemFileError(
                f"observable '{label}' has dimension {m.shape[0]}, file declares {dim}"
            )
        fro = float(np.linalg.norm(m))
        residual = float(np.abs(m - m.conj().T).max()) / max(fro, 1e-14)
        if residual > OBSERVABLE_HERMITICITY_RTOL:
            raise ProblemFileError(
                f"observable '{label}' is not Hermitian: residual {residual:.3e} "
                f"exceeds {OBSERVABLE_HERMITICITY_RTOL:.1e}"
            )
        observables[label] = Observable(m, label=label)

    states: dict[str, PureState] = {}
    for label, pairs in (payload.get("states") or {}).items():
        v = pairs_to_vector(pairs, label)
        if v.size != dim:
            raise ProblemFileError(
                f"state '{label}' has dimension {v.size}, file declares {dim}"
            )
        residual = abs(float(np.linalg.norm(v)) - 1.0)
        if residual > STATE_NORM_ATOL:
            raise ProblemFileError(
                f"state '{label}' is not normalized: residual {residual:.3e} "
                f"exceeds {STATE_NORM_ATOL:.1e}"
            )
        # Accept bit-exact when already unit norm at construction tolerance,
        # renormalize only the looser file-level band.
        if residual <= 1e-12:
            states[label] = PureState(v)
        else:
            states[label] = PureState.from_unnormalized(v)

    return ProblemFile(dim=dim, observables=observables, states=states)


def problem_to_payload(problem: ProblemFile) -> dict:
    return {
        "dim": problem.dim,
        "observables": {
            label: matrix_to_pairs(obs.matrix) for label, obs in problem.observables.items()
        },
        "states": {label: vector_to_pairs(st.vector) for label, st in problem.states.items()},
    }


def load_problem(path: str) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ProblemFileError(f"cannot read problem file '{path}': {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"problem file '{path}' is not valid JSON: {exc}") from exc
    return parse_problem(payload)


def save_problem(problem: ProblemFile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(problem_to_payload(problem), fh, indent=2)
        fh.write("\n")
