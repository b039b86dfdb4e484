import numpy as np
import pytest
import scipy.linalg

from phi_combine.core.errors import RequestError
from phi_combine.core.nilpotent import NilpotentCoeffMatrix, exp_scaled, kron_exp, kron_shifted


def taylor_exp(N: np.ndarray, terms: int = 60) -> np.ndarray:
    result = np.eye(N.shape[0])
    term = np.eye(N.shape[0])
    for k in range(1, terms):
        term = term @ N / k
        result = result + term
    return result


def test_structure():
    assert np.array_equal(NilpotentCoeffMatrix(0).array(), np.zeros((1, 1)))

    J = NilpotentCoeffMatrix(3).array()
    expected = np.zeros((4, 4))
    expected[1, 2] = expected[2, 3] = 1.0
    assert np.array_equal(J, expected)

    with pytest.raises(RequestError):
        NilpotentCoeffMatrix(-1)


@pytest.mark.parametrize("p", [0, 1, 2, 5, 9])
@pytest.mark.parametrize("c", [0.0, 0.37, -2.5, 40.0])
def test_exp_scaled_matches_truncated_taylor(p, c):
    J = NilpotentCoeffMatrix(p)
    np.testing.assert_array_max_ulp(exp_scaled(J, c), taylor_exp(c * J.array()), maxulp=2)


def test_kron_exp_matches_dense_exponential(rng):
    J = NilpotentCoeffMatrix(4)
    Delta = np.diag(rng.uniform(-2.0, 2.0, 3))

    E = kron_exp(J, Delta, 3.0)
    np.testing.assert_allclose(E, scipy.linalg.expm(np.kron(J.array(), Delta) / 3.0), rtol=1e-14, atol=1e-15)
    np.testing.assert_array_max_ulp(E, taylor_exp(np.kron(J.array(), Delta / 3.0)), maxulp=2)


def test_kron_exp_rejects_bad_input():
    J = NilpotentCoeffMatrix(2)
    with pytest.raises(RequestError):
        kron_exp(J, np.ones((2, 2)), 1.0)
    with pytest.raises(RequestError):
        kron_exp(J, np.eye(2), 0.0)


def test_kron_shifted():
    J = NilpotentCoeffMatrix(2)
    Delta, T = np.diag([2.0, 3.0]), np.diag([0.5, 0.25])

    Y = kron_shifted(J, Delta, T, xi=4.0)
    assert Y.shape == (6, 6)
    assert np.allclose(np.tril(Y, -1), 0.0)
    np.testing.assert_allclose(np.diag(Y), np.tile([-2.0, -1.0], 3))

    # Slot 1 couples into slot 2 for the same abscissa only
    assert Y[2, 4] == 2.0 and Y[3, 5] == 3.0 and Y[2, 5] == 0.0

    with pytest.raises(RequestError):
        kron_shifted(J, Delta, np.eye(3), xi=0.0)


def test_kron_exp_collapses_for_one_abscissa():
    J = NilpotentCoeffMatrix(3)
    np.testing.assert_array_max_ulp(kron_exp(J, np.array([[0.6]]), 2.0), exp_scaled(J, 0.3), maxulp=1)


def test_kron_exp_with_identity_core():
    J = NilpotentCoeffMatrix(3)
    E = exp_scaled(J, 0.5)

    np.testing.assert_allclose(kron_exp(J, np.eye(2), 2.0), np.kron(E, np.eye(2)), rtol=1e-15, atol=0)
