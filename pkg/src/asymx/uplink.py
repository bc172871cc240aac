"""Uplink training, detection, ergodic SE, and the composite-angle SNR loss.

The receive array sees K users through orthogonal pilots.  LS/LMMSE
estimates feed either matched-filter (MRC) or zero-forcing combining.  When
two paths sit closer than the receive aperture can resolve, they merge into
one composite path; the resulting matched-filter SNR loss has a closed form
(a ratio of Dirichlet kernels) that this module cross-checks against
brute-force vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks as _find_signal_peaks

from .arrays import (
    AntennaSelection,
    angular_resolution,
    select_comb,
    select_random,
    select_successive,
)
from .channel import (
    ArrayGeometry,
    ChannelMatrix,
    PathSet,
    draw_path_set,
    steering_uplink,
    uplink_channel,
    user_channels,
)


@dataclass(frozen=True)
class PilotBlock:
    """K orthonormal pilot rows of length tau, sent at power ``power``."""

    matrix: np.ndarray
    power: float

    def __post_init__(self) -> None:
        p = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", p)
        if p.ndim != 2 or p.shape[0] > p.shape[1]:
            raise ValueError("pilot matrix must be K x tau with tau >= K")
        gram = p @ p.conj().T
        if not np.allclose(gram, np.eye(p.shape[0]), atol=1e-12):
            raise ValueError("pilot rows must be orthonormal")
        if self.power <= 0:
            raise ValueError("pilot power must be positive")


@dataclass(frozen=True)
class NoiseModel:
    """Circularly symmetric complex Gaussian noise."""

    variance: float = 1.0

    def __post_init__(self) -> None:
        if self.variance < 0:
            raise ValueError("noise variance must be non-negative")

    def draw(self, rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
        re = rng.standard_normal(shape)
        im = rng.standard_normal(shape)
        return np.sqrt(self.variance / 2.0) * (re + 1j * im)


@dataclass(frozen=True)
class SnrLossInputs:
    """Two-path geometry for the composite-angle SNR-loss formulas.

    The loss is defined for two equal-power paths at theta1/theta2 with gain
    phases phi1/phi2, received on N successive elements, and captured by a
    single matched filter pointed at composite_theta.
    """

    theta1: float
    theta2: float
    composite_theta: float
    phi1: float
    phi2: float
    num_receive: int
    d_over_lambda: float = 0.5

    def __post_init__(self) -> None:
        if self.num_receive < 1:
            raise ValueError("num_receive must be positive")
        if np.isclose(np.sin(self.theta1), np.sin(self.theta2)):
            raise ValueError("paths must have distinct spatial frequencies")


def generate_pilots(num_users: int, length: int, power: float = 1.0) -> PilotBlock:
    """First K rows of the scaled tau-point DFT; rows are orthonormal."""
    if length < num_users:
        raise ValueError("pilot length must be at least the user count")
    k = np.arange(num_users)[:, None]
    t = np.arange(length)[None, :]
    matrix = np.exp(-2j * np.pi * k * t / length) / np.sqrt(length)
    return PilotBlock(matrix, power)


def received_pilot(
    channels: ChannelMatrix | np.ndarray,
    pilots: PilotBlock,
    noise: NoiseModel,
    rng: np.random.Generator,
) -> np.ndarray:
    """Y = sqrt(rho_tau) * H * P + W, one row per receive element."""
    h = _uplink_data(channels)
    y = np.sqrt(pilots.power) * (h @ pilots.matrix)
    if noise.variance > 0:
        y = y + noise.draw(rng, y.shape)
    return y


def estimate_ls(received: np.ndarray, pilots: PilotBlock) -> ChannelMatrix:
    """Least-squares estimate Y * P^H / sqrt(rho_tau)."""
    est = received @ pilots.matrix.conj().T / np.sqrt(pilots.power)
    return ChannelMatrix(est, "uplink")


def estimate_lmmse(
    received: np.ndarray,
    pilots: PilotBlock,
    correlation: np.ndarray | None = None,
) -> ChannelMatrix:
    """LMMSE estimate (1/sqrt(rho)) * Y * P^H * ((1/rho) R^-1 + I)^-1.

    ``correlation`` is the K x K user-correlation E{H^H H}; the default
    N * I_K follows from unit-variance path gains.
    """
    ls = estimate_ls(received, pilots).data
    num_receive, num_users = ls.shape
    if correlation is None:
        correlation = num_receive * np.eye(num_users)
    correlation = np.asarray(correlation, dtype=complex)
    inv_r = np.linalg.inv(correlation)
    filt = np.linalg.inv(inv_r / pilots.power + np.eye(num_users))
    return ChannelMatrix(ls @ filt, "uplink")


def mrc_detect(
    channel_est: ChannelMatrix | np.ndarray,
    channel_true: ChannelMatrix | np.ndarray,
    symbols: np.ndarray,
    power: float,
    rng: np.random.Generator,
    noise: NoiseModel = NoiseModel(),
) -> np.ndarray:
    """Matched-filter combining: r = sqrt(rho_u) H_est^H H x + H_est^H n."""
    h_est = _uplink_data(channel_est)
    h = _uplink_data(channel_true)
    n = noise.draw(rng, (h.shape[0],))
    return np.sqrt(power) * (h_est.conj().T @ (h @ symbols)) + h_est.conj().T @ n


def zf_detect(
    channel_est: ChannelMatrix | np.ndarray, received: np.ndarray
) -> np.ndarray:
    """Zero-forcing combining: pseudo-inverse of the estimate applied to y."""
    h_est = _uplink_data(channel_est)
    return np.linalg.pinv(h_est) @ received


def uplink_sinr(
    channel_est: ChannelMatrix | np.ndarray,
    channel_true: ChannelMatrix | np.ndarray,
    power: float,
    detector: str = "mrc",
    noise_variance: float = 1.0,
) -> np.ndarray:
    """Per-user SINR for one channel realization.

    MRC combines with the estimate itself; ZF with the pseudo-inverse
    columns.  SINR_k = rho |v_k^H h_k|^2 /
    (rho * sum_{i != k} |v_k^H h_i|^2 + ||v_k||^2 sigma_n^2).
    """
    h_est = _uplink_data(channel_est)
    h = _uplink_data(channel_true)
    if detector == "mrc":
        combiner = h_est
    elif detector == "zf":
        combiner = np.linalg.pinv(h_est).conj().T
    else:
        raise ValueError(f"unknown detector {detector!r}")
    cross = np.abs(combiner.conj().T @ h) ** 2  # K x K, [k, i] = |v_k^H h_i|^2
    signal = np.diag(cross)
    interference = cross.sum(axis=1) - signal
    norms = np.sum(np.abs(combiner) ** 2, axis=0)
    return power * signal / (power * interference + norms * noise_variance)


@dataclass(frozen=True)
class UplinkScenario:
    """System description for ergodic uplink SE simulation."""

    num_transmit: int
    num_receive: int
    num_users: int
    paths_per_user: int
    selection: str
    power: float
    pilot_power: float | None = None
    pilot_length: int | None = None
    estimator: str = "lmmse"
    angle_low: float = np.deg2rad(-60.0)
    angle_high: float = np.deg2rad(60.0)
    spacing: float = 0.5

    @property
    def geometry(self) -> ArrayGeometry:
        return ArrayGeometry(self.num_transmit, self.spacing)


def uplink_se(
    scenario: UplinkScenario,
    trials: int,
    rng: np.random.Generator,
    detector: str = "mrc",
) -> tuple[np.ndarray, float, float]:
    """Ergodic per-user and system SE, Monte-Carlo averaged.

    Returns (per-user SE, system SE, standard error of the system SE).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    per_user = np.zeros(scenario.num_users)
    totals = np.zeros(trials)
    for t in range(trials):
        rates = _uplink_rates_once(scenario, detector, rng)
        per_user += rates
        totals[t] = rates.sum()
    per_user /= trials
    stderr = float(totals.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return per_user, float(totals.mean()), stderr


def uplink_se_mrc(
    scenario: UplinkScenario, trials: int, rng: np.random.Generator
) -> tuple[np.ndarray, float, float]:
    """Ergodic SE with the matched-filter receiver."""
    return uplink_se(scenario, trials, rng, detector="mrc")


def _uplink_rates_once(
    scenario: UplinkScenario, detector: str, rng: np.random.Generator
) -> np.ndarray:
    geometry = scenario.geometry
    selection = make_selection(
        scenario.selection, scenario.num_transmit, scenario.num_receive, rng
    )
    paths = [
        draw_path_set(
            scenario.paths_per_user, scenario.angle_low, scenario.angle_high, rng
        )
        for _ in range(scenario.num_users)
    ]
    h_up, _ = user_channels(paths, selection, geometry)
    if scenario.estimator == "perfect":
        h_est = h_up
    else:
        pilot_power = scenario.pilot_power or scenario.power
        length = scenario.pilot_length or scenario.num_users
        pilots = generate_pilots(scenario.num_users, length, pilot_power)
        y = received_pilot(h_up, pilots, NoiseModel(), rng)
        if scenario.estimator == "ls":
            h_est = estimate_ls(y, pilots)
        elif scenario.estimator == "lmmse":
            h_est = estimate_lmmse(y, pilots)
        else:
            raise ValueError(f"unknown estimator {scenario.estimator!r}")
    sinr = uplink_sinr(h_est, h_up, scenario.power, detector)
    return np.log2(1.0 + sinr)


def make_selection(
    kind: str,
    num_transmit: int,
    num_receive: int,
    rng: np.random.Generator | None = None,
    pinned: bool = False,
) -> AntennaSelection:
    """Construct a selection by kind; random draws need an rng."""
    if kind == "successive":
        return select_successive(num_transmit, num_receive)
    if kind == "comb":
        return select_comb(num_transmit, num_receive)
    if kind == "random":
        if rng is None:
            raise ValueError("random selection requires an rng")
        return select_random(num_transmit, num_receive, rng, pinned)
    raise ValueError(f"unknown selection kind {kind!r}")


def dirichlet_ratio(count: int, u: np.ndarray | float) -> np.ndarray | float:
    """sin(count*pi*u) / sin(pi*u), with the limit value at denominator zeros.

    At integer u the ratio tends to count * cos(count*pi*u) / cos(pi*u),
    magnitude ``count`` (the unambiguous-aperture peak).
    """
    u_arr = np.asarray(u, dtype=float)
    den = np.sin(np.pi * u_arr)
    near_zero = np.abs(den) < 1e-9
    safe_den = np.where(near_zero, 1.0, den)
    ratio = np.sin(count * np.pi * u_arr) / safe_den
    cos_den = np.cos(np.pi * u_arr)
    # cos is +/-1 wherever sin vanishes; the guard only silences the branch
    # numpy evaluates for entries that take the ratio above.
    safe_cos = np.where(np.abs(cos_den) < 1e-12, 1.0, cos_den)
    limit = count * np.cos(count * np.pi * u_arr) / safe_cos
    out = np.where(near_zero, limit, ratio)
    return out if out.ndim else float(out)


def snr_loss_closed_form(inputs: SnrLossInputs) -> float:
    """Closed-form matched-filter SNR loss of the merged two-path channel.

    loss = 1 - (L1^2 + L2^2 + 2 L1 L2 cos G) / (2 N^2 + 2 N L cos G)
    with L* Dirichlet ratios of the angle gaps and G the net phase between
    the two path responses at the composite angle.
    """
    n = inputs.num_receive
    dl = inputs.d_over_lambda
    gap = np.sin(inputs.theta1) - np.sin(inputs.theta2)
    gap1 = np.sin(inputs.composite_theta) - np.sin(inputs.theta1)
    gap2 = np.sin(inputs.composite_theta) - np.sin(inputs.theta2)
    lam = dirichlet_ratio(n, dl * gap)
    lam1 = dirichlet_ratio(n, dl * gap1)
    lam2 = dirichlet_ratio(n, dl * gap2)
    gamma = inputs.phi1 - inputs.phi2 - np.pi * dl * (n - 1) * gap
    num = lam1**2 + lam2**2 + 2.0 * lam1 * lam2 * np.cos(gamma)
    den = 2.0 * n**2 + 2.0 * n * lam * np.cos(gamma)
    return float(1.0 - num / den)


def snr_loss_numeric(inputs: SnrLossInputs) -> float:
    """Brute-force SNR loss from explicit steering vectors.

    Builds the two-path channel h = sqrt(N/2) (e^{j phi1} a(theta1) +
    e^{j phi2} a(theta2)) and the composite capture h_s = sqrt(N/2) g_s
    a(theta_s) with |g_s| = sqrt(2) (energy conservation), then compares
    matched-filter SNRs; the transmit power cancels in the ratio.
    """
    n = inputs.num_receive
    geometry = ArrayGeometry(n, inputs.d_over_lambda)
    selection = select_successive(n, n)
    a1 = steering_uplink(selection, geometry, np.sin(inputs.theta1))
    a2 = steering_uplink(selection, geometry, np.sin(inputs.theta2))
    a_s = steering_uplink(selection, geometry, np.sin(inputs.composite_theta))
    h = np.sqrt(n / 2.0) * (
        np.exp(1j * inputs.phi1) * a1 + np.exp(1j * inputs.phi2) * a2
    )
    h_s = np.sqrt(n / 2.0) * np.sqrt(2.0) * a_s
    snr_full = np.vdot(h, h).real
    snr_merged = float(np.abs(np.vdot(h_s, h)) ** 2 / np.vdot(h_s, h_s).real)
    return float(1.0 - snr_merged / snr_full)


def steered_response(
    channel: np.ndarray,
    selection: AntennaSelection,
    geometry: ArrayGeometry,
    w_grid: np.ndarray,
) -> np.ndarray:
    """|a_U(w)^H h| over a grid of spatial frequencies (the periodogram)."""
    w = np.atleast_1d(np.asarray(w_grid, dtype=float))
    phase = (
        2j * np.pi * geometry.spacing * np.outer(selection.indices - 1, w)
    )
    return np.abs(np.exp(phase).T @ channel) / np.sqrt(selection.num_receive)


def composite_angle(
    theta1: float,
    theta2: float,
    phi1: float,
    phi2: float,
    selection: AntennaSelection,
    geometry: ArrayGeometry,
    grid_multiplier: int = 16,
) -> float:
    """Dominant resolved angle of a merged two-path channel.

    Maximizes the periodogram |a_U(w)^H h| over a grid of 16*M points on
    [-1, 1], then polishes with a bounded scalar minimizer to 1e-6 in w.
    """
    paths = PathSet(
        np.array([np.exp(1j * phi1), np.exp(1j * phi2)]),
        np.array([theta1, theta2]),
    )
    h = uplink_channel(paths, selection, geometry)
    grid = np.linspace(-1.0, 1.0, grid_multiplier * geometry.num_transmit)
    response = steered_response(h, selection, geometry, grid)
    best = int(np.argmax(response))
    step = grid[1] - grid[0]
    lo = max(-1.0, grid[best] - step)
    hi = min(1.0, grid[best] + step)

    def negated(w: float) -> float:
        return -float(steered_response(h, selection, geometry, w)[0])

    result = minimize_scalar(
        negated, bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-7},
    )
    w_star = float(np.clip(result.x, -1.0, 1.0))
    return float(np.arcsin(w_star))


def resolved_path_count(
    channel: np.ndarray,
    selection: AntennaSelection,
    geometry: ArrayGeometry,
    w_center: float,
    w_halfwidth: float | None = None,
    grid_multiplier: int = 16,
) -> int:
    """Number of dominant periodogram peaks near a spatial frequency.

    Counts local maxima within +/- w_halfwidth of w_center whose height is
    at least half the window maximum with prominence at least 10 % of it;
    Dirichlet side lobes (-13 dB, i.e. 0.22 of the peak) stay excluded
    while a genuinely split composite (two comparable lobes) counts as 2.
    """
    if w_halfwidth is None:
        w_halfwidth = 4.0 / selection.num_receive
    lo = max(-1.0, w_center - w_halfwidth)
    hi = min(1.0, w_center + w_halfwidth)
    grid = np.linspace(lo, hi, grid_multiplier * geometry.num_transmit)
    response = steered_response(channel, selection, geometry, grid)
    top = response.max()
    peaks, _ = _find_signal_peaks(
        response, height=0.5 * top, prominence=0.1 * top
    )
    return int(len(peaks))


def resolved_peak_freqs(
    channel: np.ndarray,
    selection: AntennaSelection,
    geometry: ArrayGeometry,
    w_center: float,
    w_halfwidth: float | None = None,
    grid_multiplier: int = 16,
) -> np.ndarray:
    """Spatial frequencies of the peaks counted by resolved_path_count."""
    if w_halfwidth is None:
        w_halfwidth = 4.0 / selection.num_receive
    lo = max(-1.0, w_center - w_halfwidth)
    hi = min(1.0, w_center + w_halfwidth)
    grid = np.linspace(lo, hi, grid_multiplier * geometry.num_transmit)
    response = steered_response(channel, selection, geometry, grid)
    top = response.max()
    peaks, _ = _find_signal_peaks(
        response, height=0.5 * top, prominence=0.1 * top
    )
    return grid[peaks]


def _uplink_data(channels: ChannelMatrix | np.ndarray) -> np.ndarray:
    if isinstance(channels, ChannelMatrix):
        if channels.orientation != "uplink":
            raise ValueError("expected an uplink-oriented channel matrix")
        return channels.data
    arr = np.asarray(channels, dtype=complex)
    return arr[:, None] if arr.ndim == 1 else arr
