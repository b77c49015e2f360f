import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcc.states import (
    InvalidStateError,
    PairState,
    QubitState,
    from_mu_basis,
    partial_trace_a,
    partial_trace_b,
    qubit_matrix,
    to_mu_basis,
)

from conftest import random_state


def test_qubit_params_validation():
    assert np.allclose(qubit_matrix(0.5, 0.5), 0.5 * np.ones((2, 2)))
    with pytest.raises(InvalidStateError):
        qubit_matrix(1.2, 0.0)
    with pytest.raises(InvalidStateError):
        qubit_matrix(0.5, 0.51)


def test_rejects_bad_matrices():
    with pytest.raises(InvalidStateError):
        QubitState(np.array([[0.5, 0.1], [0.2, 0.5]]))  # not hermitian
    with pytest.raises(InvalidStateError):
        QubitState(np.eye(2))  # trace 2
    with pytest.raises(InvalidStateError):
        QubitState(np.diag([1.5, -0.5]))  # negative
    with pytest.raises(InvalidStateError):
        PairState(np.eye(2) / 2)


def test_states_are_read_only():
    q = QubitState.from_params(0.3, 0.1j)
    with pytest.raises(ValueError):
        q.matrix[0, 0] = 1.0
    assert q.alpha == pytest.approx(0.3) and q.beta == pytest.approx(0.1j)


def test_mu_basis_of_plus_state():
    q = QubitState.from_params(0.5, 0.5)  # |+><+|
    assert np.allclose(q.in_mu_basis(), np.diag([1.0, 0.0]))


@given(seed=st.integers(0, 2**32 - 1))
def test_basis_round_trip_and_partial_traces(seed):
    rng = np.random.default_rng(seed)
    ra, rb = random_state(rng), random_state(rng)
    joint = np.kron(ra, rb)
    assert np.allclose(partial_trace_b(joint), ra)
    assert np.allclose(partial_trace_a(joint), rb)
    assert np.allclose(from_mu_basis(to_mu_basis(joint)), joint)
    p = PairState.product(ra, rb)
    assert np.allclose(p.computational(), joint)
    # the basis change is local, so partial traces commute with it
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.allclose(partial_trace_b(p.matrix), h.T @ ra @ h)
