"""Reference evaluations used to check the evaluators.

Three independent routes are provided:

- `reference_w` reads the whole combination from the exponential of one augmented
  matrix, computed by a dense Taylor scaling-and-squaring with compensated summation.
- `dense_phi` returns phi_0(tM), ..., phi_jmax(tM) for a small matrix from one
  scipy.linalg.expm call on a block-companion embedding.
- `lowrank_reference` evaluates the combination for A = U M U^T through the core M only.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import gammaln

from phi_combine.core.errors import OracleError, RequestError

TAYLOR_DEGREE = 30
SCALED_NORM = 0.25
ORTHONORMALITY_TOL = 1e-10


@dataclass
class AugmentedSystem:
    """[[tA, V_hat], [0, J_p(0)]] together with the vector [v_0; e_p] it acts on."""

    body: np.ndarray
    tail: np.ndarray
    n: int
    p: int

    @classmethod
    def build(cls, A: np.ndarray, V: np.ndarray, t: float, alpha: float = 1.0):
        A = np.asarray(A, dtype=float)
        V = np.asarray(V, dtype=float)
        if V.ndim == 1:
            V = V[:, None]

        n, p = A.shape[0], V.shape[1] - 1
        if A.shape != (n, n) or V.shape[0] != n:
            raise RequestError(f"Incompatible shapes: A {A.shape}, V {V.shape}")

        # Absorb alpha^j into v_j, then reverse to [v_p, ..., v_1]
        weighted = V * alpha ** np.arange(p + 1)
        body = np.zeros((n + p, n + p))
        body[:n, :n] = t * A
        body[:n, n:] = weighted[:, :0:-1]
        for i in range(p - 1):
            body[n + i, n + i + 1] = 1.0

        tail = np.zeros(n + p)
        tail[:n] = V[:, 0]
        if p > 0:
            tail[-1] = 1.0

        return cls(body=body, tail=tail, n=n, p=p)


def expm_taylor(M: np.ndarray) -> np.ndarray:
    """exp(M) by degree-30 Taylor on M/2^k with ||M/2^k||_1 <= 1/4, then k squarings.

    Raises:
        OracleError: M is not finite or the result overflows
    """
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise OracleError("Cannot exponentiate a matrix with non-finite entries")

    norm = float(np.linalg.norm(M, 1)) if M.size else 0.0
    squarings = max(0, math.ceil(math.log2(norm / SCALED_NORM))) if norm > 0 else 0
    X = M / 2.0**squarings

    # Kahan-compensated Taylor sum
    E = np.eye(M.shape[0])
    compensation = np.zeros_like(E)
    term = np.eye(M.shape[0])
    for k in range(1, TAYLOR_DEGREE + 1):
        term = term @ X / k
        y = term - compensation
        total = E + y
        compensation = (total - E) - y
        E = total

    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(squarings):
            E = E @ E

    if not np.all(np.isfinite(E)):
        raise OracleError(f"Matrix exponential overflowed after {squarings} squarings (||M||_1 = {norm:.3e})")

    return E


def reference_w(A: np.ndarray, V: np.ndarray, t: float, alpha: float = 1.0) -> np.ndarray:
    """sum_j alpha^j phi_j(tA) v_j from the augmented-matrix exponential."""
    system = AugmentedSystem.build(A, V, t, alpha)
    return (expm_taylor(system.body) @ system.tail)[: system.n]


def dense_phi(M: np.ndarray, t: float, jmax: int) -> list[np.ndarray]:
    """[phi_0(tM), ..., phi_jmax(tM)] for a small matrix M.

    The exponential of the block matrix with tM on the diagonal of its first block,
    identities on the block superdiagonal and zeros elsewhere carries phi_k(tM) in
    block (0, k).
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    d = M.shape[0]
    if jmax < 0:
        raise RequestError(f"jmax must be nonnegative, got {jmax}")

    size = d * (jmax + 1)
    companion = np.zeros((size, size))
    companion[:d, :d] = t * M
    for k in range(jmax):
        companion[k * d : (k + 1) * d, (k + 1) * d : (k + 2) * d] = np.eye(d)

    with np.errstate(over="ignore", invalid="ignore"):
        E = scipy.linalg.expm(companion)

    if not np.all(np.isfinite(E)):
        raise OracleError(f"phi-function embedding overflowed for ||tM||_1 = {abs(t) * np.linalg.norm(M, 1):.3e}")

    return [E[:d, k * d : (k + 1) * d].copy() for k in range(jmax + 1)]


def phi_recurrence_residual(M: np.ndarray, t: float, phis: list[np.ndarray]) -> list[float]:
    """Relative residuals ||tM phi_{j+1} - phi_j + I/j!|| / ||phi_j|| for consecutive pairs."""
    X = t * np.atleast_2d(np.asarray(M, dtype=float))
    identity = np.eye(X.shape[0])

    residuals = []
    for j in range(len(phis) - 1):
        R = X @ phis[j + 1] - phis[j] + identity * math.exp(-gammaln(j + 1))
        residuals.append(float(np.linalg.norm(R, 1) / max(np.linalg.norm(phis[j], 1), np.finfo(float).tiny)))

    return residuals


def lowrank_reference(U: np.ndarray, M: np.ndarray, V: np.ndarray, t: float, alpha: float = 1.0) -> np.ndarray:
    """sum_j alpha^j phi_j(tA) v_j for A = U W^T, W = U M^T, with U orthonormal.

    Uses phi_j(tA) = I/j! + t U phi_{j+1}(tM) W^T, so only r x r functions are formed.
    """
    U = np.asarray(U, dtype=float)
    M = np.atleast_2d(np.asarray(M, dtype=float))
    V = np.asarray(V, dtype=float)
    if V.ndim == 1:
        V = V[:, None]

    r = U.shape[1]
    if np.max(np.abs(U.T @ U - np.eye(r))) > ORTHONORMALITY_TOL:
        raise OracleError("U must have orthonormal columns")

    p = V.shape[1] - 1
    weights = alpha ** np.arange(p + 1)
    factorials = np.exp(-gammaln(np.arange(p + 1) + 1))

    W = U @ M.T
    projected = W.T @ V
    phis = dense_phi(M, t, p + 1)

    low = np.zeros(r)
    for j in range(p + 1):
        low += weights[j] * (phis[j + 1] @ projected[:, j])

    return V @ (weights * factorials) + t * (U @ low)
