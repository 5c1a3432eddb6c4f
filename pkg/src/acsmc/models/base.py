"""State-space model contracts and simulation entry points.

Two model flavors are supported:

* :class:`NoiseDrivenModel` -- the state is a deterministic map of the previous
  state and a standard-normal noise vector, ``s_t = Phi(s_{t-1}, eps_t)``, with
  an exact linearization ``Phi(s, eps) = A s + B eps + c(s, eps)``.  Twisted
  proposals for these models act on the noise vector.
* :class:`DensityDrivenModel` -- the transition admits a tractable density and
  the model ships its own base proposal transition, which is Gaussian in a
  fixed coordinate transform of the state.  Twisted proposals act on the
  transformed state pair.

All densities are handled in log scale.  Observation log-densities receive the
time index and both the previous and current states; models that depend on the
current state only simply ignore the previous one.  Model objects are immutable
after construction; all randomness flows through caller-supplied generators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidInputError

__all__ = ["ModelDims", "NoiseDrivenModel", "DensityDrivenModel", "ParameterVector",
           "tempered_obs_logdensity", "tempered_logg", "simulate", "trajectory_log_g"]


@dataclass(frozen=True)
class ModelDims:
    """Dimensions of a state-space model.

    Attributes
    ----------
    d : state dimension.
    d_noise : exogenous noise dimension (noise-driven models).
    d_y : observation dimension.
    T : time horizon (number of observation steps), at least 1.
    """

    d: int
    d_noise: int
    d_y: int
    T: int

    def __post_init__(self):
        if min(self.d, self.d_noise, self.d_y) <= 0 or self.T < 1:
            raise InvalidInputError(f"invalid model dimensions {self!r}")


class NoiseDrivenModel:
    """Interface contract for noise-driven state-space models.

    Subclasses provide the maps below, vectorized over a leading particle
    axis.  The linearization is definitional: ``transition_map(s, eps)`` must
    equal ``s @ A.T + eps @ B.T + residual(s, eps)`` exactly.

    Required methods / attributes
    -----------------------------
    dims : ModelDims
    A, B : linearization matrices, shapes (d, d) and (d, d_noise).
    initial_map(eps0) : (N, d_noise) -> (N, d), the map ``Phi^{(0)}``.
    transition_map(s, eps) : (N, d), (N, d_noise) -> (N, d).
    obs_logdensity(t, s_prev, s_cur, y_t) : -> (N,) log g values, t in 1..T.
    obs_sample(t, s_prev, s_cur, rng) : -> (N, d_y) draws from g.
    """

    dims: ModelDims
    A: np.ndarray
    B: np.ndarray

    is_noise_driven = True

    def initial_map(self, eps0: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def transition_map(self, s: np.ndarray, eps: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def residual(self, s: np.ndarray, eps: np.ndarray) -> np.ndarray:
        """c(s, eps) = transition_map(s, eps) - (A s + B eps)."""
        return self.transition_map(s, eps) - s @ self.A.T - eps @ self.B.T

    def obs_logdensity(self, t: int, s_prev: np.ndarray, s_cur: np.ndarray, y_t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def obs_sample(self, t: int, s_prev: np.ndarray, s_cur: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError


class DensityDrivenModel:
    """Interface contract for models with tractable transition densities.

    The base proposal transition must be Gaussian in transformed coordinates
    ``z = state_transform(s)``; the twisted machinery relies on that structure
    for exact conditional expectations of log-quadratic policies.

    Required methods / attributes
    -----------------------------
    dims : ModelDims (d_noise is the transformed dimension, equal to d).
    initial_state() : -> (d,), the deterministic initial state.
    state_transform(s) / state_untransform(z) : bijection (N, d) <-> (N, d).
    proposal_mean_cov(t, s_prev) : -> ((N, d) means, (N, d, d) covariances) of
        the base proposal in transformed coordinates, t in 1..T.
    base_logweight(t, s_prev, s_cur) : -> (N,) values of log f - log q, the
        transition-to-proposal density log-ratio.
    obs_logdensity, obs_sample : as for noise-driven models.
    transition_sample(t, s_prev, rng) : -> (N, d) exact draw from f (used for
        prior trajectory simulation).
    """

    dims: ModelDims

    is_noise_driven = False

    def initial_state(self) -> np.ndarray:
        raise NotImplementedError

    def state_transform(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def state_untransform(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def proposal_mean_cov(self, t: int, s_prev: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def base_logweight(self, t: int, s_prev: np.ndarray, s_cur: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def transition_sample(self, t: int, s_prev: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def obs_logdensity(self, t: int, s_prev: np.ndarray, s_cur: np.ndarray, y_t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def obs_sample(self, t: int, s_prev: np.ndarray, s_cur: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError


class ParameterVector:
    """A flat parameter vector with named-field access.

    Parameters outside their declared support should be rejected by the model
    builder that consumes the vector; this class only pairs values with names.
    """

    def __init__(self, values, names=None):
        self.values = np.atleast_1d(np.asarray(values, dtype=float))
        self.names = tuple(names) if names is not None else tuple(f"theta{i}" for i in range(self.values.size))
        if len(self.names) != self.values.size:
            raise InvalidInputError("parameter names do not match vector length")
        self._index = {n: i for i, n in enumerate(self.names)}

    def __getitem__(self, key):
        if isinstance(key, str):
            return float(self.values[self._index[key]])
        return self.values[key]

    def __len__(self):
        return self.values.size

    def as_dict(self) -> dict:
        return {n: float(v) for n, v in zip(self.names, self.values)}

    def __repr__(self):
        inner = ", ".join(f"{n}={v:.6g}" for n, v in zip(self.names, self.values))
        return f"ParameterVector({inner})"


def tempered_logg(logg: np.ndarray, lam: float) -> np.ndarray:
    """lambda * log g with the g^0 = 1 convention (exact zero at lambda = 0)."""
    if lam == 0.0:
        return np.zeros_like(np.asarray(logg, dtype=float))
    return lam * np.asarray(logg, dtype=float)


def tempered_obs_logdensity(model, t: int, s_prev, s_cur, y_t, lam: float):
    """lambda * log g(y_t | s_{t-1}, s_t) for one model at one time step.

    Returns exact zero when lambda is zero (g^0 = 1 even where g vanishes) and
    -inf where the observation density vanishes at positive lambda.
    """
    if not 0.0 <= lam <= 1.0:
        raise InvalidInputError(f"inverse temperature {lam} outside [0, 1]")
    if not 1 <= t <= model.dims.T:
        raise InvalidInputError(f"time index {t} outside 1..{model.dims.T}")
    s_prev = np.atleast_2d(np.asarray(s_prev, dtype=float))
    s_cur = np.atleast_2d(np.asarray(s_cur, dtype=float))
    y_t = np.asarray(y_t, dtype=float)
    if not (np.all(np.isfinite(s_prev)) and np.all(np.isfinite(s_cur)) and np.all(np.isfinite(y_t))):
        raise InvalidInputError("non-finite state or observation")
    if lam == 0.0:
        out = np.zeros(s_cur.shape[0])
    else:
        out = lam * model.obs_logdensity(t, s_prev, s_cur, y_t)
    return float(out[0]) if out.shape[0] == 1 else out


def simulate(model, T: int | None = None, rng: np.random.Generator | None = None):
    """Simulate a trajectory s_{0:T} and observations y_{1:T} from the model.

    Returns
    -------
    (states, obs) or (states, obs, noises)
        ``states`` has shape (T+1, d) and ``obs`` (T, d_y).  Noise-driven
        models additionally return the noise sequence (T+1, d_noise).
    """
    if rng is None:
        rng = np.random.default_rng()
    if T is None:
        T = model.dims.T
    d = model.dims.d
    states = np.empty((T + 1, d))
    obs = np.empty((T, model.dims.d_y))
    if model.is_noise_driven:
        d_noise = model.dims.d_noise
        noises = np.empty((T + 1, d_noise))
        noises[0] = rng.standard_normal(d_noise)
        states[0] = model.initial_map(noises[0][None, :])[0]
        for t in range(1, T + 1):
            noises[t] = rng.standard_normal(d_noise)
            states[t] = model.transition_map(states[t - 1][None, :], noises[t][None, :])[0]
            obs[t - 1] = model.obs_sample(t, states[t - 1][None, :], states[t][None, :], rng)[0]
        return states, obs, noises
    states[0] = model.initial_state()
    for t in range(1, T + 1):
        states[t] = model.transition_sample(t, states[t - 1][None, :], rng)[0]
        obs[t - 1] = model.obs_sample(t, states[t - 1][None, :], states[t][None, :], rng)[0]
    return states, obs


def trajectory_log_g(model, states: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-step log g(y_t | s_{t-1}, s_t) along one trajectory, shape (T,)."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    T = y.shape[0]
    out = np.empty(T)
    for t in range(1, T + 1):
        out[t - 1] = model.obs_logdensity(t, states[t - 1][None, :], states[t][None, :], y[t - 1])[0]
    return out
