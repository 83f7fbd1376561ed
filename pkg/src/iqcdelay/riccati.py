"""Algebraic Riccati solver for J-spectral factorization.

Solves A'X + XA - (XB + C') Dpi^-1 (B'X + C) = 0 for the stabilizing
X = X' via the stable invariant subspace of the Hamiltonian matrix.  Dpi is
symmetric and may be indefinite, which rules out the definite-cost solvers
in scipy; the Hamiltonian route handles the sign-indefinite case directly.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DimensionError, NoStabilizingSolution

__all__ = ["solve_are", "are_residual"]


def are_residual(A, B, C, Dpi, X) -> float:
    """Relative residual ||A'X + XA - (XB+C') Dpi^-1 (B'X+C)|| / (1+||X||)."""
    G = np.linalg.solve(Dpi, B.T @ X + C)
    R = A.T @ X + X @ A - (X @ B + C.T) @ G
    return np.linalg.norm(R) / (1.0 + np.linalg.norm(X))


def solve_are(A, B, C, Dpi, axis_tol: float = 1e-8):
    """Stabilizing solution of the sign-indefinite Riccati equation.

    Returns the unique X = X' such that A - B Dpi^-1 (B'X + C) is Hurwitz.
    Raises NoStabilizingSolution when the Hamiltonian matrix has eigenvalues
    on the imaginary axis (no J-spectral factorization exists) or the stable
    subspace is not complementary.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[0]
    Dpi = np.atleast_2d(np.asarray(Dpi, dtype=float))
    m = Dpi.shape[0]
    B = np.asarray(B, dtype=float).reshape(n, m)
    C = np.asarray(C, dtype=float).reshape(m, n)
    if Dpi.shape != (m, m) or not np.allclose(Dpi, Dpi.T, atol=1e-10):
        raise DimensionError("Dpi must be square symmetric")
    if n == 0:
        return np.zeros((0, 0))

    Dinv_C = np.linalg.solve(Dpi, C)
    Dinv_Bt = np.linalg.solve(Dpi, B.T)
    Ahat = A - B @ Dinv_C
    R = B @ Dinv_Bt
    Q = C.T @ Dinv_C
    H = np.block([[Ahat, -R], [Q, -Ahat.T]])

    lam = np.linalg.eigvals(H)
    scale = max(1.0, np.max(np.abs(lam)))
    if np.any(np.abs(lam.real) <= axis_tol * scale):
        raise NoStabilizingSolution(
            "Hamiltonian has imaginary-axis eigenvalues; "
            "no stabilizing Riccati solution exists"
        )

    T, Z, sdim = scipy.linalg.schur(H, output="real", sort="lhp")
    if sdim != n:
        raise NoStabilizingSolution(
            f"stable Hamiltonian subspace has dimension {sdim}, expected {n}"
        )
    U1 = Z[:n, :n]
    U2 = Z[n:, :n]
    if np.linalg.cond(U1) > 1e12:
        raise NoStabilizingSolution("stable subspace not complementary (U1 singular)")
    X = np.linalg.solve(U1.T, U2.T).T
    X = (X + X.T) / 2

    res = are_residual(A, B, C, Dpi, X)
    if not res <= 1e-8:
        raise NoStabilizingSolution(f"Riccati residual {res:.2e} exceeds 1e-8")
    Acl = A - B @ np.linalg.solve(Dpi, B.T @ X + C)
    if np.any(np.linalg.eigvals(Acl).real >= 0):
        raise NoStabilizingSolution("closed-loop matrix is not Hurwitz")
    return X
