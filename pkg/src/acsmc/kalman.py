"""Exact Kalman filtering and RTS smoothing for tempered linear-Gaussian
state-space models.

The model is

    s_0 ~ N(0, B B^T),   s_t = A s_{t-1} + B eps_t,   eps_t ~ N(0, I),
    y_t ~ N(d + E s_t, F),   t = 1..T,

and the tempered observation density is g(y_t|s_t)^lambda.  Raising a Gaussian
density to a power lambda in (0, 1] is again Gaussian up to a constant,

    N(y; mu, F)^lambda = c(lambda) N(y; mu, F/lambda),
    log c(lambda) = (1-lambda) d_y/2 log(2 pi) + (1-lambda)/2 logdet F
                    - d_y/2 log lambda,

so a single filter with inflated covariance F/lambda is exact for any
lambda in (0, 1].  Inverse temperatures below ``LAMBDA_FLOOR`` are treated as
zero, for which the tempered likelihood is identically one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, NotPositiveDefiniteError
from .linalg import logdet_spd, spd_inverse, symmetrize

__all__ = ["LinearGaussianSpec", "KalmanResult", "kalman_loglik", "kalman_filter", "kalman_smoother_marginals", "LAMBDA_FLOOR"]

LAMBDA_FLOOR = 1e-12


@dataclass(frozen=True)
class LinearGaussianSpec:
    """Matrices of a linear-Gaussian state-space model.

    Attributes
    ----------
    A : (d, d) state transition matrix.
    B : (d, d_noise) noise loading; the initial state is N(0, B B^T).
    d : (d_y,) observation offset.
    E : (d_y, d) observation matrix.
    F : (d_y, d_y) SPD observation covariance.
    """

    A: np.ndarray
    B: np.ndarray
    d: np.ndarray
    E: np.ndarray
    F: np.ndarray

    def __post_init__(self):
        for name in ("A", "B", "d", "E", "F"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        dim = self.A.shape[0]
        if self.A.shape != (dim, dim):
            raise InvalidInputError("A must be square")
        if self.B.shape[0] != dim:
            raise InvalidInputError("B row count must match state dimension")
        d_y = self.d.shape[0]
        if self.E.shape != (d_y, dim) or self.F.shape != (d_y, d_y):
            raise InvalidInputError("observation matrices have inconsistent shapes")

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def d_y(self) -> int:
        return self.d.shape[0]


@dataclass
class KalmanResult:
    """Filtered and predicted moments from one Kalman pass."""

    loglik: float
    filt_means: np.ndarray      # (T+1, d), index 0 is the prior-updated initial state
    filt_covs: np.ndarray       # (T+1, d, d)
    pred_means: np.ndarray      # (T, d), mean of s_t | y_{1:t-1}
    pred_covs: np.ndarray       # (T, d, d)
    log_constant: float = 0.0   # tempering constant already included in loglik


def _validate_obs(y: np.ndarray, d_y: int) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    if y.shape[1] != d_y:
        raise InvalidInputError(f"observations have {y.shape[1]} columns, expected {d_y}")
    if not np.all(np.isfinite(y)):
        raise InvalidInputError("observations contain non-finite values")
    return y


def kalman_filter(spec: LinearGaussianSpec, y: np.ndarray, lam: float = 1.0) -> KalmanResult:
    """Run the (tempered) Kalman filter and return moments plus log-likelihood.

    Covariance updates use the Joseph form and are symmetrized after every
    step.  For ``lam`` below ``LAMBDA_FLOOR`` the observation updates are
    skipped entirely and the log-likelihood is zero.
    """
    if not 0.0 <= lam <= 1.0:
        raise InvalidInputError(f"inverse temperature {lam} outside [0, 1]")
    y = _validate_obs(y, spec.d_y)
    T = y.shape[0]
    dim = spec.dim
    A, B, d_vec, E, F = spec.A, spec.B, spec.d, spec.E, spec.F

    tempered = lam >= LAMBDA_FLOOR
    if tempered:
        F_eff = F / lam
        log_c = ((1.0 - lam) * spec.d_y / 2.0 * np.log(2.0 * np.pi)
                 + (1.0 - lam) / 2.0 * logdet_spd(F)
                 - spec.d_y / 2.0 * np.log(lam))
    else:
        F_eff = F
        log_c = 0.0

    Q = B @ B.T
    m = np.zeros(dim)
    P = Q.copy()

    filt_means = np.empty((T + 1, dim))
    filt_covs = np.empty((T + 1, dim, dim))
    pred_means = np.empty((T, dim))
    pred_covs = np.empty((T, dim, dim))
    filt_means[0] = m
    filt_covs[0] = P

    loglik = 0.0
    eye = np.eye(dim)
    for t in range(T):
        m_pred = A @ m
        P_pred = symmetrize(A @ P @ A.T + Q)
        pred_means[t] = m_pred
        pred_covs[t] = P_pred

        if tempered:
            resid = y[t] - d_vec - E @ m_pred
            S = symmetrize(E @ P_pred @ E.T + F_eff)
            S_inv = spd_inverse(S)
            K = P_pred @ E.T @ S_inv
            m = m_pred + K @ resid
            IKE = eye - K @ E
            P = symmetrize(IKE @ P_pred @ IKE.T + K @ F_eff @ K.T)
            loglik += -0.5 * (spec.d_y * np.log(2.0 * np.pi) + logdet_spd(S)
                              + resid @ S_inv @ resid)
            loglik += log_c
        else:
            m, P = m_pred, P_pred

        filt_means[t + 1] = m
        filt_covs[t + 1] = P

    return KalmanResult(loglik=float(loglik), filt_means=filt_means, filt_covs=filt_covs,
                        pred_means=pred_means, pred_covs=pred_covs,
                        log_constant=float(T * log_c))


def kalman_loglik(spec: LinearGaussianSpec, y: np.ndarray, lam: float = 1.0) -> float:
    """Exact log p(y_{1:T} | lambda) of the tempered linear-Gaussian model."""
    if lam < LAMBDA_FLOOR:
        return 0.0
    return kalman_filter(spec, y, lam).loglik


def kalman_smoother_marginals(spec: LinearGaussianSpec, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """RTS-smoothed marginal means and covariances of p(s_t | y_{1:T}).

    Returns
    -------
    (means, covs)
        Arrays of shape (T+1, d) and (T+1, d, d), indexed by time from 0.
    """
    res = kalman_filter(spec, y, lam=1.0)
    T = res.pred_means.shape[0]
    means = res.filt_means.copy()
    covs = res.filt_covs.copy()
    for t in range(T - 1, -1, -1):
        P_filt = res.filt_covs[t]
        P_pred = res.pred_covs[t]
        try:
            P_pred_inv = spd_inverse(P_pred)
        except NotPositiveDefiniteError:
            # singular predicted covariance (rank-deficient B B^T)
            P_pred_inv = np.linalg.pinv(P_pred, hermitian=True)
        G = P_filt @ spec.A.T @ P_pred_inv
        means[t] = res.filt_means[t] + G @ (means[t + 1] - res.pred_means[t])
        covs[t] = symmetrize(P_filt + G @ (covs[t + 1] - P_pred) @ G.T)
    return means, covs
