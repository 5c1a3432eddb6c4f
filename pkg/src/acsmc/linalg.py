"""Small dense linear-algebra helpers: symmetric eigendecompositions, Cholesky
factors, SPD log-determinants and solves.

These wrap LAPACK via numpy with the error conventions used throughout the
package: a non-SPD input to a routine that requires one raises
:class:`~acsmc.errors.NotPositiveDefiniteError`, which doubles as the
positive-definiteness test for policy constraints.
"""

from __future__ import annotations

import numpy as np

from .errors import NotPositiveDefiniteError

__all__ = ["symeig", "cholesky", "logdet_spd", "spd_inverse", "symmetrize", "is_pd"]


def symmetrize(m: np.ndarray) -> np.ndarray:
    """Return (M + M^T)/2."""
    return 0.5 * (m + m.T)


def symeig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix.

    Returns
    -------
    (eigenvalues, eigenvectors)
        Eigenvalues in ascending order; eigenvectors as columns.
    """
    m = np.asarray(m, dtype=float)
    return np.linalg.eigh(symmetrize(m))


def cholesky(m: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of an SPD matrix.

    Raises
    ------
    NotPositiveDefiniteError
        If the matrix is not positive definite.
    """
    try:
        return np.linalg.cholesky(np.asarray(m, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(f"matrix is not positive definite: {exc}") from exc


def is_pd(m: np.ndarray) -> bool:
    """True iff the symmetric matrix is positive definite (Cholesky test)."""
    try:
        np.linalg.cholesky(np.asarray(m, dtype=float))
        return True
    except np.linalg.LinAlgError:
        return False


def logdet_spd(m: np.ndarray) -> float:
    """log det(M) for SPD M, via the Cholesky factor."""
    lower = cholesky(m)
    return 2.0 * float(np.sum(np.log(np.diag(lower))))


def spd_inverse(m: np.ndarray) -> np.ndarray:
    """Inverse of an SPD matrix, symmetrized on output."""
    lower = cholesky(m)
    inv_lower = np.linalg.inv(lower)
    return symmetrize(inv_lower.T @ inv_lower)
