"""Core linear-algebra layer: construction invariants, partial trace,
Schmidt decomposition, party permutation."""

import math

import numpy as np
import pytest

from mubcert import (
    DensityMatrix,
    StateVector,
    dagger,
    ghz3,
    kron,
    mix,
    partial_trace,
    permute_parties,
    psi_lambda,
    purity,
    random_biseparable,
    random_pure,
    reduced_rank,
    schmidt_coefficients,
)


def test_state_vector_normalizes_and_reports_original_norm():
    psi = StateVector((2,), np.array([3.0, 4.0]))
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-10
    assert abs(psi.original_norm - 5.0) <= 1e-12
    assert abs(psi.amplitudes[0] - 0.6) <= 1e-12


def test_state_vector_rejects_zero_vector():
    with pytest.raises(ValueError):
        StateVector((2,), np.array([0.0, 0.0]))


def test_state_vector_rejects_dim_mismatch():
    with pytest.raises(ValueError):
        StateVector((2, 2), np.ones(6))


def test_state_vector_amplitudes_immutable():
    psi = psi_lambda(0.5)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 1.0


def test_constructed_states_are_normalized():
    # every constructor output obeys the norm invariant at 1e-10
    states = [
        psi_lambda(0.3),
        ghz3(0.7),
        random_pure((2, 2, 2, 2), 5),
        StateVector((3,), np.array([1.0, 1.0j, -1.0])),
    ]
    for psi in states:
        assert abs(np.sum(np.abs(psi.amplitudes) ** 2) - 1.0) <= 1e-10


def test_density_matrix_rejects_bad_inputs():
    with pytest.raises(ValueError):
        DensityMatrix(dims=(2,), entries=np.array([[0.6, 0.3], [0.2, 0.4]]))
    with pytest.raises(ValueError):
        DensityMatrix(dims=(2,), entries=np.array([[0.8, 0.0], [0.0, 0.4]]))
    with pytest.raises(ValueError):
        DensityMatrix(dims=(2,), entries=np.array([[1.2, 0.0], [0.0, -0.2]]))


def test_purity_of_pure_projectors():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(2, 5))
        psi = random_pure((2,) * n, int(rng.integers(0, 2**31)))
        assert abs(purity(psi.density()) - 1.0) <= 1e-10


def test_partial_trace_bell_marginal_is_maximally_mixed():
    rho = psi_lambda(0.5).density()
    marg = partial_trace(rho, keep=[0])
    assert np.max(np.abs(marg.entries - np.eye(2) / 2)) <= 1e-12


def test_partial_trace_composes():
    for seed in range(20):
        rho = random_pure((2, 2, 2), seed).density()
        via_two_steps = partial_trace(partial_trace(rho, keep=[0, 1]), keep=[0])
        direct = partial_trace(rho, keep=[0])
        assert np.max(np.abs(via_two_steps.entries - direct.entries)) <= 1e-12


def test_partial_trace_keeps_trace_one():
    rho = random_pure((2, 3, 2), 7).density()
    marg = partial_trace(rho, keep=[1])
    assert abs(np.trace(marg.entries) - 1.0) <= 1e-10
    assert marg.dims == (3,)


def test_kron_associativity():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    c = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    left = kron(kron(a, b), c)
    right = kron(a, kron(b, c))
    assert np.max(np.abs(left - right)) <= 1e-14


def test_dagger():
    m = np.array([[1.0, 2.0j], [3.0, 4.0]])
    assert np.array_equal(dagger(m), m.conj().T)


def test_schmidt_known_states():
    flat = schmidt_coefficients(StateVector((2, 2), np.array([1.0, 0, 0, 0])))
    assert np.allclose(flat, [1.0, 0.0], atol=1e-12)
    bell = schmidt_coefficients(psi_lambda(0.5))
    assert np.allclose(bell, [1 / math.sqrt(2)] * 2, atol=1e-12)
    skew = schmidt_coefficients(psi_lambda(0.3))
    assert np.allclose(skew, [math.sqrt(0.7), math.sqrt(0.3)], atol=1e-12)


def test_schmidt_local_unitary_invariance():
    rng = np.random.default_rng(11)
    for seed in range(10):
        psi = random_pure((2, 3), seed)
        coeffs = schmidt_coefficients(psi)
        ua = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
        ub = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))[0]
        rotated = StateVector((2, 3), kron(ua, ub) @ psi.amplitudes)
        assert np.max(np.abs(schmidt_coefficients(rotated) - coeffs)) <= 1e-9


def test_schmidt_requires_bipartite():
    with pytest.raises(ValueError):
        schmidt_coefficients(ghz3(0.5))


def test_reduced_rank():
    assert reduced_rank(partial_trace(ghz3(0.0).density(), [0]), 1e-9) == 1
    assert reduced_rank(partial_trace(ghz3(math.pi / 4).density(), [0]), 1e-9) == 2
    # pure biseparable states have a rank-1 marginal on one side of the cut
    rho = random_biseparable(3, (0,), seed=5, terms=1)
    assert reduced_rank(partial_trace(rho, [0]), 1e-9) == 1


def test_permute_parties_roundtrip():
    psi = random_pure((2, 3, 2), 13)
    cycled = permute_parties(permute_parties(psi, (1, 2, 0)), (2, 0, 1))
    assert np.max(np.abs(cycled.amplitudes - psi.amplitudes)) <= 1e-14
    assert cycled.dims == psi.dims


def test_permute_parties_moves_amplitudes():
    # |01> -> |10> under the swap permutation
    psi = StateVector((2, 2), np.array([0.0, 1.0, 0.0, 0.0]))
    swapped = permute_parties(psi, (1, 0))
    assert abs(swapped.amplitudes[2] - 1.0) <= 1e-12


def test_mix_weights():
    r1 = psi_lambda(1.0).density()  # |00><00|
    r2 = psi_lambda(0.0).density()  # |11><11|
    rho = mix([r1, r2], [3.0, 1.0])
    assert abs(rho.entries[0, 0] - 0.75) <= 1e-12
    assert abs(np.trace(rho.entries) - 1.0) <= 1e-12
    with pytest.raises(ValueError):
        mix([r1, r2], [0.5, -0.5])
