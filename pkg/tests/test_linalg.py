import numpy as np
import pytest

from qchan import linalg
from qchan.errors import CapacityError, NotPositiveError, NumericalError, UsageError, ValidationError

rng = np.random.default_rng(20260809)


def randc(*shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_hermitian(n):
    a = randc(n, n)
    return (a + a.conj().T) / 2


def test_tensor_identity():
    out = linalg.tensor_product(np.eye(2), np.eye(3))
    assert np.array_equal(out, np.eye(6))


def test_tensor_diagonal():
    out = linalg.tensor_product(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    assert np.array_equal(np.diag(out).real, [3, 4, 6, 8])


def test_tensor_mixed_product_identity():
    a, b, c, d = (randc(2, 2) for _ in range(4))
    lhs = linalg.tensor_product(a, b) @ linalg.tensor_product(c, d)
    rhs = linalg.tensor_product(a @ c, b @ d)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_tensor_associative_exact_on_exact_entries():
    # integer entries multiply without rounding, so both orders agree bit-for-bit
    a, b, c = (rng.integers(-4, 5, size=(n, n)) + 1j * rng.integers(-4, 5, size=(n, n))
               for n in (2, 2, 3))
    left = linalg.tensor_product(linalg.tensor_product(a, b), c)
    right = linalg.tensor_product(a, linalg.tensor_product(b, c))
    assert np.array_equal(left, right)


def test_tensor_associative_float():
    a, b, c = randc(2, 2), randc(2, 2), randc(3, 3)
    left = linalg.tensor_product(linalg.tensor_product(a, b), c)
    right = linalg.tensor_product(a, linalg.tensor_product(b, c))
    assert np.abs(left - right).max() < 1e-14


def test_tensor_capacity_error():
    with pytest.raises(CapacityError):
        linalg.tensor_product(np.eye(3), np.eye(3), dim_cap=8)


def _partial_trace_oracle(x, dl, dr, side):
    # independent index-summation oracle
    out_dim = dr if side == "left" else dl
    out = np.zeros((out_dim, out_dim), dtype=complex)
    for i in range(dl):
        for j in range(dr):
            for k in range(dl):
                for m in range(dr):
                    if side == "left" and i == k:
                        out[j, m] += x[i * dr + j, k * dr + m]
                    if side == "right" and j == m:
                        out[i, k] += x[i * dr + j, k * dr + m]
    return out


def test_partial_trace_product_state():
    rho = rand_hermitian(2)
    sigma = rand_hermitian(3)
    x = np.kron(rho, sigma)
    left = linalg.partial_trace(x, 2, 3, "left")
    assert np.abs(left - np.trace(rho) * sigma).max() < 1e-12
    right = linalg.partial_trace(x, 2, 3, "right")
    assert np.abs(right - np.trace(sigma) * rho).max() < 1e-12


def test_partial_trace_identity():
    out = linalg.partial_trace(np.eye(4), 2, 2, "right")
    assert np.abs(out - 2 * np.eye(2)).max() < 1e-14


def test_partial_trace_matches_oracle_and_preserves_trace():
    x = randc(4, 4)
    for side in ("left", "right"):
        got = linalg.partial_trace(x, 2, 2, side)
        want = _partial_trace_oracle(x, 2, 2, side)
        assert np.abs(got - want).max() < 1e-13
        assert abs(np.trace(got) - np.trace(x)) < 1e-12


def test_partial_trace_recovers_tensor_factor():
    b = rand_hermitian(3)
    x = linalg.tensor_product(np.eye(2), b)
    out = linalg.partial_trace(x, 2, 3, "left")
    assert np.abs(out - 2 * b).max() < 1e-12


def test_partial_trace_bad_dims():
    with pytest.raises(UsageError):
        linalg.partial_trace(np.eye(6), 4, 2, "left")
    with pytest.raises(UsageError):
        linalg.partial_trace(np.eye(4), 2, 2, "middle")


def test_hermitian_eig_sorted():
    eig = linalg.hermitian_eig(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(eig.values, [1, 2, 3])


def test_hermitian_eig_pauli_x():
    eig = linalg.hermitian_eig(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(eig.values, [-1, 1])


def test_hermitian_eig_invariants_random():
    a = rand_hermitian(5)
    values, vectors = linalg.hermitian_eig(a)
    scale = np.linalg.norm(a)
    recon = (vectors * values) @ vectors.conj().T
    assert np.linalg.norm(recon - a) <= 1e-12 * 5 * scale
    assert np.linalg.norm(vectors.conj().T @ vectors - np.eye(5)) <= 1e-12 * 5


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        linalg.hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_eig_rejects_nan():
    with pytest.raises(ValidationError):
        linalg.hermitian_eig(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_matrix_function_identity_rule():
    a = rand_hermitian(4)
    out = linalg.matrix_function_hermitian(a, lambda v: v)
    assert np.linalg.norm(out - a) <= 1e-12 * np.linalg.norm(a) * 4


def test_matrix_function_log():
    out = linalg.matrix_function_hermitian(np.diag([1.0, np.e]), np.log)
    assert np.allclose(out, np.diag([0.0, 1.0]), atol=1e-14)


def test_matrix_function_square_matches_product():
    a = rand_hermitian(4)
    out = linalg.matrix_function_hermitian(a, lambda v: v ** 2)
    assert np.abs(out - a @ a).max() < 1e-12


def test_matrix_function_trace_identity():
    a = rand_hermitian(4)
    values = np.linalg.eigvalsh(a)
    out = linalg.matrix_function_hermitian(a, np.exp)
    assert abs(np.trace(out).real - np.exp(values).sum()) < 1e-12 * 4


def test_matrix_function_undefined_value():
    with pytest.raises(NumericalError):
        linalg.matrix_function_hermitian(np.diag([-1.0, 1.0]), np.log)


def test_clamp_spectrum():
    out = linalg.clamp_spectrum(np.array([-5e-11, 0.3, 0.7]))
    assert out[0] == 0.0 and out[1] == 0.3
    with pytest.raises(NotPositiveError) as err:
        linalg.clamp_spectrum(np.array([-1e-9, 1.0]))
    assert err.value.eigenvalue == pytest.approx(-1e-9)


def test_as_complex_matrix_rejects_nonsquare():
    with pytest.raises(ValidationError):
        linalg.as_complex_matrix(np.zeros((2, 3)))
