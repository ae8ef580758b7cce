"""
Ornstein-Uhlenbeck long-term prediction.

Each local-plane axis (east, north) carries an independent OU velocity
    dv = gamma * (mu - v) dt + sigma dW
and position is the integral of velocity. Mean and covariance of the position
are closed-form, which makes the model usable across AIS gaps of many hours.

Contains:
- OuModel / Prediction value types
- fit_ou_velocities: per-axis maximum likelihood on the exact discrete transition
- fit_ou: model from a track window (reported SOG/COG or finite-difference velocities)
- predict / ou_mean_state / ou_position_variance: closed-form moments
- simulate_ou: exact-discretisation simulator of (position, velocity)

Fitting follows the usual two-stage route: the AR(1) regression gives the closed-form
estimate for a regular cadence, the exact Gaussian likelihood with irregular
spacing is then minimised from there.

External Libraries Used:
- numpy (BSD License) - Vectorised likelihood and simulation
- scipy.optimize (BSD License) - L-BFGS-B likelihood refinement
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from analyses.ais.kinematics import points_in_window, reported_velocity
from analyses.ais.model import Track
from core.errors import DegenerateTrackError, InsufficientDataError
from geo import GeoPoint, LocalPlane, spherical_centroid

logger = logging.getLogger(__name__)

GAMMA_MIN = 1e-7
SIGMA_MIN = 1e-6
MIN_FIT_POINTS = 10
_SERIES_LIMIT = 1e-2
_CONSTANT_TOL = 1e-9

Pair = Tuple[float, float]


@dataclass(frozen=True)
class OuModel:
    """Per-axis (east, north) OU velocity parameters anchored at a last known state."""
    mu: Pair
    gamma: Pair
    sigma: Pair
    anchor: GeoPoint
    anchor_t: int
    v0: Pair

    def __post_init__(self):
        if not all(g > 0 for g in self.gamma):
            raise ValueError("gamma must be positive on both axes")
        if not all(s > 0 for s in self.sigma):
            raise ValueError("sigma must be positive on both axes")

    def reanchor(self, t: float) -> "OuModel":
        """Model anchored at the predicted mean state at time t."""
        p = predict(self, t)
        return replace(self, anchor=p.mean_pos, anchor_t=int(t), v0=p.mean_velocity)


@dataclass(frozen=True, eq=False)
class Prediction:
    t: float
    mean_pos: GeoPoint
    cov: np.ndarray  # 2x2 east/north position covariance, m^2
    radius_3sigma_m: float
    mean_velocity: Pair = (0.0, 0.0)


# ============================================================================
# CLOSED-FORM MOMENTS
# ============================================================================

def _variance_shape(x: float) -> float:
    """x - 2(1 - e^-x) + (1 - e^-2x)/2, accurate for small x."""
    if x < _SERIES_LIMIT:
        return x ** 3 / 3.0 - x ** 4 / 4.0 + 7.0 * x ** 5 / 60.0 - x ** 6 / 24.0 + 31.0 * x ** 7 / 2520.0
    return x + 2.0 * math.expm1(-x) - 0.5 * math.expm1(-2.0 * x)


def ou_position_variance(gamma: float, sigma: float, dt: float) -> float:
    """Variance of the integrated OU position after dt seconds from a known state."""
    if dt <= 0.0:
        return 0.0
    return sigma ** 2 / gamma ** 3 * _variance_shape(gamma * dt)


def ou_velocity_variance(gamma: float, sigma: float, dt: float) -> float:
    return sigma ** 2 * -math.expm1(-2.0 * gamma * dt) / (2.0 * gamma)


def ou_position_velocity_cov(gamma: float, sigma: float, dt: float) -> float:
    return sigma ** 2 / (2.0 * gamma ** 2) * math.expm1(-gamma * dt) ** 2


def ou_mean_state(mu: float, gamma: float, v0: float, dt: float) -> Pair:
    """(mean displacement, mean velocity) after dt seconds on one axis."""
    decay = -math.expm1(-gamma * dt)
    displacement = mu * dt + (v0 - mu) * decay / gamma
    velocity = mu + (v0 - mu) * math.exp(-gamma * dt)
    return displacement, velocity


def predict(model: OuModel, t: float) -> Prediction:
    """
    Predicted position and covariance at time t >= the anchor time.

    Raises:
        ValueError: t before the anchor
    """
    dt = float(t - model.anchor_t)
    if dt < 0:
        raise ValueError(f"prediction time {t} precedes anchor {model.anchor_t}")
    x, ve = ou_mean_state(model.mu[0], model.gamma[0], model.v0[0], dt)
    y, vn = ou_mean_state(model.mu[1], model.gamma[1], model.v0[1], dt)
    cov = np.diag([ou_position_variance(model.gamma[0], model.sigma[0], dt),
                   ou_position_variance(model.gamma[1], model.sigma[1], dt)])
    mean_pos = model.anchor if dt == 0.0 else LocalPlane(model.anchor).from_xy(x, y)
    radius = 3.0 * math.sqrt(max(float(np.max(np.linalg.eigvalsh(cov))), 0.0))
    return Prediction(t=float(t), mean_pos=mean_pos, cov=cov, radius_3sigma_m=radius,
                      mean_velocity=(ve, vn))


# ============================================================================
# ESTIMATION
# ============================================================================

def _negative_log_likelihood(params: np.ndarray, v: np.ndarray, dts: np.ndarray) -> float:
    mu, log_gamma, log_sigma = params
    gamma = math.exp(log_gamma)
    sigma = math.exp(log_sigma)
    phi = np.exp(-gamma * dts)
    var = sigma ** 2 * -np.expm1(-2.0 * gamma * dts) / (2.0 * gamma)
    resid = v[1:] - (mu + phi * (v[:-1] - mu))
    return float(0.5 * np.sum(np.log(2.0 * np.pi * var) + resid ** 2 / var))


def _ar1_start(v: np.ndarray, dts: np.ndarray) -> Tuple[float, float, float]:
    """Closed-form AR(1) estimate on the median spacing."""
    dt = float(np.median(dts))
    x_t = v[:-1]
    x_next = v[1:]
    design = np.vstack([np.ones(len(x_t)), x_t]).T
    (c, b), *_ = np.linalg.lstsq(design, x_next, rcond=None)
    if not 0.0 < b < 1.0:
        mu = float(np.mean(v))
        sigma = float(np.std(np.diff(v)) / math.sqrt(dt)) or SIGMA_MIN
        return mu, GAMMA_MIN, max(sigma, SIGMA_MIN)
    gamma = max(-math.log(b) / dt, GAMMA_MIN)
    mu = float(c / (1.0 - b))
    resid = x_next - (c + b * x_t)
    sigma = math.sqrt(float(np.var(resid)) * 2.0 * gamma / -math.expm1(-2.0 * gamma * dt))
    return mu, gamma, max(sigma, SIGMA_MIN)


def fit_ou_axis(times: np.ndarray, v: np.ndarray) -> Tuple[float, float, float]:
    """Maximum-likelihood (mu, gamma, sigma) for one velocity component."""
    dts = np.diff(times).astype(float)
    if np.any(dts <= 0):
        raise ValueError("velocity times must be strictly increasing")
    if np.ptp(v) <= _CONSTANT_TOL:
        return float(v[0]), GAMMA_MIN, SIGMA_MIN
    mu0, gamma0, sigma0 = _ar1_start(v, dts)
    result = minimize(_negative_log_likelihood, np.array([mu0, math.log(gamma0), math.log(sigma0)]),
                      args=(v, dts), method="L-BFGS-B",
                      bounds=[(None, None), (math.log(GAMMA_MIN), math.log(1.0)), (None, None)])
    if not result.success:
        logger.warning(f"OU likelihood refinement did not converge ({result.message}); "
                       f"keeping closed-form estimate")
        return mu0, gamma0, sigma0
    mu, log_gamma, log_sigma = result.x
    return float(mu), max(math.exp(log_gamma), GAMMA_MIN), max(math.exp(log_sigma), SIGMA_MIN)


def fit_ou_velocities(times: Sequence[float], ve: Sequence[float],
                      vn: Sequence[float]) -> Tuple[Pair, Pair, Pair]:
    """
    Fit both axes from velocity samples.

    Returns:
        (mu, gamma, sigma) as (east, north) pairs

    Raises:
        InsufficientDataError: fewer than MIN_FIT_POINTS samples
        DegenerateTrackError: every sample is the same velocity
    """
    times = np.asarray(times, dtype=float)
    ve = np.asarray(ve, dtype=float)
    vn = np.asarray(vn, dtype=float)
    if len(times) < MIN_FIT_POINTS:
        raise InsufficientDataError(f"{len(times)} velocity samples, need {MIN_FIT_POINTS}")
    if np.ptp(ve) <= _CONSTANT_TOL and np.ptp(vn) <= _CONSTANT_TOL:
        raise DegenerateTrackError("all velocity samples are identical")
    mu_e, gamma_e, sigma_e = fit_ou_axis(times, ve)
    mu_n, gamma_n, sigma_n = fit_ou_axis(times, vn)
    return (mu_e, mu_n), (gamma_e, gamma_n), (sigma_e, sigma_n)


def fit_ou(track: Track, window: Tuple[float, float], velocity_source: str = "reported") -> OuModel:
    """
    OU model from the reports of a track inside window, anchored at the last of them.

    velocity_source:
        reported - east/north velocity from SOG/COG of every report
        fixes    - finite differences of consecutive positions on a local plane
    """
    points = points_in_window(track, window[0], window[1])
    if len(points) < MIN_FIT_POINTS:
        raise InsufficientDataError(f"track {track.mmsi}: {len(points)} reports in window, "
                                    f"need {MIN_FIT_POINTS}")
    last = points[-1]
    if velocity_source == "reported":
        times = [p.t for p in points]
        velocities = [reported_velocity(p) for p in points]
    elif velocity_source == "fixes":
        plane = LocalPlane(spherical_centroid([p.pos for p in points]))
        xy = np.array([plane.to_xy(p.pos) for p in points])
        t = np.array([p.t for p in points], dtype=float)
        rates = np.diff(xy, axis=0) / np.diff(t)[:, None]
        times = list(0.5 * (t[1:] + t[:-1]))
        velocities = [tuple(r) for r in rates]
        if len(times) < MIN_FIT_POINTS:
            raise InsufficientDataError(f"track {track.mmsi}: {len(times)} velocity samples, "
                                        f"need {MIN_FIT_POINTS}")
    else:
        raise ValueError(f"unknown velocity source {velocity_source!r}")

    ve = [v[0] for v in velocities]
    vn = [v[1] for v in velocities]
    try:
        mu, gamma, sigma = fit_ou_velocities(times, ve, vn)
    except DegenerateTrackError as e:
        raise DegenerateTrackError(f"track {track.mmsi}: {e}")
    model = OuModel(mu=mu, gamma=gamma, sigma=sigma, anchor=last.pos, anchor_t=last.t,
                    v0=(ve[-1], vn[-1]))
    logger.debug(f"track {track.mmsi}: OU fit mu={mu} gamma={gamma} sigma={sigma}")
    return model


# ============================================================================
# SIMULATION
# ============================================================================

def simulate_ou(mu: Pair, gamma: Pair, sigma: Pair, v0: Pair, step_s: float, n_steps: int,
                rng: np.random.Generator, n_paths: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exact joint simulation of OU velocity and integrated position.

    Returns:
        (positions, velocities), each shaped (n_paths, n_steps + 1, 2), starting
        from position (0, 0) and velocity v0
    """
    if step_s <= 0 or n_steps < 0 or n_paths < 1:
        raise ValueError("step_s must be positive, n_steps >= 0, n_paths >= 1")
    positions = np.zeros((n_paths, n_steps + 1, 2))
    velocities = np.zeros((n_paths, n_steps + 1, 2))
    velocities[:, 0, :] = v0
    for axis in range(2):
        g, s, m = gamma[axis], sigma[axis], mu[axis]
        var_x = ou_position_variance(g, s, step_s)
        var_v = ou_velocity_variance(g, s, step_s)
        cov_xv = ou_position_velocity_cov(g, s, step_s)
        chol = np.linalg.cholesky(np.array([[var_x, cov_xv], [cov_xv, var_v]]) + 1e-18 * np.eye(2))
        decay = -math.expm1(-g * step_s)
        phi = math.exp(-g * step_s)
        for k in range(n_steps):
            v = velocities[:, k, axis]
            noise = rng.standard_normal((n_paths, 2)) @ chol.T
            positions[:, k + 1, axis] = positions[:, k, axis] + m * step_s + (v - m) * decay / g + noise[:, 0]
            velocities[:, k + 1, axis] = m + phi * (v - m) + noise[:, 1]
    return positions, velocities
