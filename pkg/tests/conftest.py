import numpy as np
import pytest

from uncrel import Observable, PureState
from uncrel.presets import pauli_x, pauli_y, pauli_z


@pytest.fixture
def sx() -> Observable:
    return pauli_x()


@pytest.fixture
def sy() -> Observable:
    return pauli_y()


@pytest.fixture
def sz() -> Observable:
    return pauli_z()


@pytest.fixture
def ket0() -> PureState:
    return PureState(np.array([1.0, 0.0], dtype=complex))


@pytest.fixture
def ket1() -> PureState:
    return PureState(np.array([0.0, 1.0], dtype=complex))


@pytest.fixture
def tilted() -> PureState:
    """Real state at angle pi/8 from the first basis vector."""
    return PureState(np.array([np.cos(np.pi / 8), np.sin(np.pi / 8)], dtype=complex))
