"""Measurement layer: quadrature sampling, temporal-mode matched filtering,
photocurrent spectra with technical noise, and Wigner-function tomography.

The local oscillator is treated as a classical number throughout: a
quadrature sample at phase theta is a draw from the marginal of
X_theta = X cos(theta) + P sin(theta), and the standard quantum limit
(SQL) is the vacuum variance 1/2.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import welch

from .fock import FockState
from .gaussian import GaussianState, quadrature_mean, quadrature_variance

SQL_VARIANCE = 0.5

TWO_PI = 2.0 * np.pi


def _readonly(a, dtype=float) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuadratureDataset:
    """Homodyne measurement record: (phase, quadrature value) samples."""

    thetas: np.ndarray
    xs: np.ndarray
    source_meta: dict = field(default_factory=dict)
    rng_seed: int = 0

    def __post_init__(self):
        thetas = _readonly(np.mod(self.thetas, TWO_PI))
        xs = _readonly(self.xs)
        if thetas.shape != xs.shape or thetas.ndim != 1:
            raise ValueError("thetas and xs must be equal-length 1-d arrays")
        if not (np.all(np.isfinite(thetas)) and np.all(np.isfinite(xs))):
            raise ValueError("dataset contains non-finite values")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "xs", xs)

    def __len__(self) -> int:
        return self.xs.size

    @property
    def samples(self):
        """Iterator over (theta, x) pairs."""
        return zip(self.thetas, self.xs)


def save_dataset_csv(dataset: QuadratureDataset, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "x"])
        for theta, x in dataset.samples:
            writer.writerow([repr(float(theta)), repr(float(x))])


def load_dataset_csv(path) -> QuadratureDataset:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return QuadratureDataset(thetas=data[:, 0], xs=data[:, 1])


def hermite_functions(n_max: int, xs: np.ndarray) -> np.ndarray:
    """Harmonic-oscillator eigenfunctions phi_0..phi_{n_max-1} on a grid.

    Uses the stable two-term recursion; rows are n, columns follow xs.
    """
    xs = np.asarray(xs, dtype=float)
    out = np.empty((n_max, xs.size))
    out[0] = np.pi ** (-0.25) * np.exp(-0.5 * xs**2)
    if n_max > 1:
        out[1] = np.sqrt(2.0) * xs * out[0]
    for n in range(2, n_max):
        out[n] = np.sqrt(2.0 / n) * xs * out[n - 1] - np.sqrt((n - 1) / n) * out[n - 2]
    return out


def quadrature_pdf(state, mode: int, theta: float, xs: np.ndarray) -> np.ndarray:
    """Probability density of a quadrature measurement at phase theta.

    Works for both engines: exact normal density for Gaussian states, and
    the Hermite-expanded marginal for Fock states (including entangled
    multimode states, where the other modes are summed over).
    """
    xs = np.asarray(xs, dtype=float)
    if isinstance(state, GaussianState):
        mu = quadrature_mean(state, mode, theta)
        var = quadrature_variance(state, mode, theta)
        return np.exp(-0.5 * (xs - mu) ** 2 / var) / np.sqrt(2.0 * np.pi * var)
    if isinstance(state, FockState):
        d = state.cutoff
        amps = np.moveaxis(np.asarray(state.amps), mode, 0).reshape(d, -1)
        norm_sq = float(np.vdot(amps, amps).real)
        rotated = amps * np.exp(-1j * theta * np.arange(d))[:, None]
        waves = hermite_functions(d, xs)
        branches = waves.T @ rotated
        return np.einsum("xk,xk->x", branches, branches.conj()).real / norm_sq
    raise TypeError("state must be a GaussianState or FockState")


def _check_normalized(state):
    if isinstance(state, FockState):
        norm_sq = float(np.vdot(state.amps, state.amps).real)
        if abs(norm_sq - 1.0) > 1e-6:
            raise ValueError(f"state norm^2 = {norm_sq:.8g}, not normalized")


def sample_quadratures(
    state, mode: int, thetas, n_per_theta: int, seed: int = 0
) -> QuadratureDataset:
    """Draw homodyne samples at each phase; reproducible for a fixed seed.

    Each phase gets its own deterministic child generator, so results do
    not depend on evaluation order.
    """
    _check_normalized(state)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if n_per_theta < 1:
        raise ValueError("n_per_theta must be positive")
    children = np.random.SeedSequence(seed).spawn(thetas.size)
    all_thetas = np.repeat(thetas, n_per_theta)
    blocks = []
    if isinstance(state, GaussianState):
        for theta, child in zip(thetas, children):
            rng = np.random.default_rng(child)
            mu = quadrature_mean(state, mode, theta)
            sd = np.sqrt(quadrature_variance(state, mode, theta))
            blocks.append(rng.normal(mu, sd, size=n_per_theta))
    elif isinstance(state, FockState):
        span = np.sqrt(2.0 * state.cutoff) + 5.0
        grid = np.linspace(-span, span, 4097)
        dx = grid[1] - grid[0]
        for theta, child in zip(thetas, children):
            rng = np.random.default_rng(child)
            pdf = quadrature_pdf(state, mode, theta, grid)
            cdf = np.concatenate(([0.0], np.cumsum(0.5 * (pdf[1:] + pdf[:-1]) * dx)))
            cdf /= cdf[-1]
            blocks.append(np.interp(rng.uniform(size=n_per_theta), cdf, grid))
    else:
        raise TypeError("state must be a GaussianState or FockState")
    meta = {
        "engine": type(state).__name__,
        "mode": mode,
        "n_per_theta": int(n_per_theta),
    }
    return QuadratureDataset(
        thetas=all_thetas, xs=np.concatenate(blocks), source_meta=meta, rng_seed=seed
    )


@dataclass(frozen=True)
class PhotocurrentTrace:
    """A sampled homodyne photocurrent record."""

    dt: float
    values: np.ndarray
    sql_variance: float = SQL_VARIANCE

    def __post_init__(self):
        values = _readonly(self.values)
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if values.size < 2:
            raise ValueError("trace needs at least 2 samples")
        object.__setattr__(self, "values", values)

    @property
    def fs(self) -> float:
        return 1.0 / self.dt

    @property
    def duration(self) -> float:
        return self.values.size * self.dt


def matched_filter_quadrature(trace: PhotocurrentTrace, mode_fn) -> float:
    """Temporal-mode quadrature estimate: the integral of phi(t) I(t) dt.

    mode_fn holds phi sampled on the trace's grid and must be normalized
    so that sum(phi^2) dt = 1.
    """
    phi = np.asarray(mode_fn, dtype=float)
    if phi.shape != trace.values.shape:
        raise ValueError("mode function must be sampled on the trace grid")
    norm = float(np.sum(phi**2) * trace.dt)
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"mode function not normalized: sum(phi^2) dt = {norm:.8g}")
    return float(np.sum(phi * trace.values) * trace.dt)


def photocurrent_with_drift(
    quad_variance: float,
    drift_amplitude: float,
    drift_timescale: float,
    fs: float,
    duration: float,
    seed: int = 0,
    electronic_noise_variance: float = 0.0,
) -> PhotocurrentTrace:
    """White quadrature noise plus a slow random drift of the zero point.

    The white component has the given per-sample variance (SQL = 1/2); the
    drift is an Ornstein-Uhlenbeck process with the given stationary RMS
    amplitude and correlation timescale, the simplest stationary process
    with a single timescale. An optional detector electronic-noise floor
    (white, off by default) adds on top.
    """
    if fs <= 0 or duration <= 0:
        raise ValueError("fs and duration must be positive")
    if quad_variance <= 0:
        raise ValueError("quad_variance must be positive")
    if electronic_noise_variance < 0:
        raise ValueError("electronic_noise_variance cannot be negative")
    n = int(round(fs * duration))
    if n < 2**10:
        raise ValueError("fs * duration must be at least 2^10 samples")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    values = rng.normal(0.0, np.sqrt(quad_variance), size=n)
    if electronic_noise_variance > 0.0:
        values = values + rng.normal(0.0, np.sqrt(electronic_noise_variance), size=n)
    if drift_amplitude > 0.0:
        if drift_timescale <= 0:
            raise ValueError("drift_timescale must be positive")
        decay = np.exp(-1.0 / (fs * drift_timescale))
        kick = drift_amplitude * np.sqrt(1.0 - decay**2)
        shocks = rng.normal(0.0, 1.0, size=n)
        drift = np.empty(n)
        drift[0] = drift_amplitude * shocks[0]
        for k in range(1, n):
            drift[k] = decay * drift[k - 1] + kick * shocks[k]
        values = values + drift
    return PhotocurrentTrace(dt=1.0 / fs, values=values)


@dataclass(frozen=True)
class PowerSpectrum:
    """Welch power curve of a photocurrent, in quadrature-variance units.

    Normalized so that white noise of per-sample variance V has a flat
    floor at V, independent of the sampling rate; the SQL floor is 1/2.
    """

    freqs: np.ndarray
    power: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "freqs", _readonly(self.freqs))
        object.__setattr__(self, "power", _readonly(self.power))

    def band_mean(self, f_lo: float, f_hi: float) -> float:
        sel = (self.freqs >= f_lo) & (self.freqs <= f_hi)
        if not np.any(sel):
            raise ValueError("no spectrum bins in the requested band")
        return float(np.mean(self.power[sel]))


@dataclass(frozen=True)
class NoiseSpectrum:
    """Squeezed / antisqueezed variance curves V-(nu) <= V+(nu) on a grid."""

    freqs: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        freqs = _readonly(self.freqs)
        v_plus = _readonly(self.v_plus)
        v_minus = _readonly(self.v_minus)
        if not (freqs.shape == v_plus.shape == v_minus.shape):
            raise ValueError("freqs, v_plus, v_minus must have matching shapes")
        if np.any(v_minus <= 0):
            raise ValueError("v_minus must be positive")
        if np.any(v_plus < v_minus * (1.0 - 1e-12)):
            raise ValueError("v_plus must dominate v_minus")
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "v_plus", v_plus)
        object.__setattr__(self, "v_minus", v_minus)


def save_noise_spectrum_csv(spectrum_: NoiseSpectrum, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["freq_hz", "v_plus", "v_minus"])
        for f, vp, vm in zip(spectrum_.freqs, spectrum_.v_plus, spectrum_.v_minus):
            writer.writerow([repr(float(f)), repr(float(vp)), repr(float(vm))])


def save_power_spectrum_csv(spectrum_: PowerSpectrum, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["freq_hz", "power"])
        for f, p in zip(spectrum_.freqs, spectrum_.power):
            writer.writerow([repr(float(f)), repr(float(p))])


def spectrum(trace: PhotocurrentTrace, n_segments: int = 16) -> PowerSpectrum:
    """Welch-averaged power spectrum in quadrature-variance units."""
    if n_segments < 4:
        raise ValueError("need at least 4 Welch segments")
    nperseg = trace.values.size // n_segments
    if nperseg < 16:
        raise ValueError("trace too short for the requested segment count")
    freqs, psd = welch(
        trace.values, fs=trace.fs, nperseg=nperseg, window="hann", detrend=False
    )
    return PowerSpectrum(freqs=freqs, power=psd * trace.fs / 2.0)


def sideband_quadratures(trace: PhotocurrentTrace, freq_hz: float) -> tuple[float, float]:
    """Real and imaginary parts of the photocurrent FFT bin at freq_hz.

    Normalized so that a white SQL trace gives both components variance
    1/2 (across repeated traces); they are the sum/difference sideband
    quadratures of the +/- freq_hz modes, and both drop below 1/2 for a
    time-domain-squeezed input.
    """
    n = trace.values.size
    k = int(round(freq_hz * n * trace.dt))
    if not 1 <= k < n // 2:
        raise ValueError("sideband frequency outside the resolvable range")
    bin_value = np.fft.rfft(trace.values)[k]
    scale = np.sqrt(2.0 / n)
    return float(scale * bin_value.real), float(scale * bin_value.imag)


# -- Wigner tomography (filtered backprojection) ------------------------------


def wigner_grid(extent: float, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Square (x, p) grid: returns (points (n*n, 2), x axis, p axis)."""
    axis = np.linspace(-extent, extent, n)
    xx, pp = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([xx.ravel(), pp.ravel()]), axis, axis


def save_wigner_csv(points: np.ndarray, values: np.ndarray, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "p", "w"])
        for (x, p), w in zip(points, values):
            writer.writerow([repr(float(x)), repr(float(p)), repr(float(w))])


def _phase_groups(dataset: QuadratureDataset):
    order = np.argsort(dataset.thetas, kind="stable")
    thetas = dataset.thetas[order]
    xs = dataset.xs[order]
    edges = np.flatnonzero(np.abs(np.diff(thetas)) > 1e-12) + 1
    groups = []
    for block_t, block_x in zip(np.split(thetas, edges), np.split(xs, edges)):
        groups.append((float(block_t[0]), block_x))
    return groups


def default_filter_cutoff(dataset: QuadratureDataset) -> float:
    """Default tomography filter cutoff: 1.5x a Gaussian-matched estimate.

    The estimate is sqrt(ln(N) / V_min), the frequency where a Gaussian
    marginal of the smallest observed variance V_min decays to 1/N of its
    peak in the characteristic-function domain; beyond it, the sample
    noise dominates the signal.
    """
    groups = _phase_groups(dataset)
    per_phase = [float(np.var(xs)) for _, xs in groups if xs.size > 1]
    v_min = min(per_phase) if per_phase else float(np.var(dataset.xs))
    v_min = max(v_min, 1e-3)
    return 1.5 * np.sqrt(np.log(max(len(dataset), 2)) / v_min)


def _ramlak_kernel(t: np.ndarray, kc: float) -> np.ndarray:
    """Integral of |k| e^{ikt} over |k| <= kc."""
    u = kc * t
    small = np.abs(u) < 1e-4
    safe = np.where(small, 1.0, t)
    out = 2.0 * (u * np.sin(u) + np.cos(u) - 1.0) / safe**2
    return np.where(small, kc**2 * (1.0 - u**2 / 4.0), out)


def reconstruct_wigner(
    dataset: QuadratureDataset, grid, filter_cutoff: float | None = None
) -> np.ndarray:
    """Filtered-backprojection (inverse Radon) Wigner estimate.

    grid is an (M, 2) array of (x, p) points. Requires at least 12
    distinct phases modulo pi. filter_cutoff bounds the Ram-Lak ramp
    filter in the characteristic-function domain; by default it is chosen
    from the sample variance (see default_filter_cutoff).
    """
    points = np.atleast_2d(np.asarray(grid, dtype=float))
    if points.shape[1] != 2:
        raise ValueError("grid points must be (x, p) pairs")
    groups = _phase_groups(dataset)
    distinct = np.unique(np.round(np.mod([t for t, _ in groups], np.pi), 9))
    if distinct.size < 12:
        raise ValueError(
            f"insufficient phase coverage: {distinct.size} distinct phases, need >= 12"
        )
    kc = default_filter_cutoff(dataset) if filter_cutoff is None else float(filter_cutoff)
    if kc <= 0:
        raise ValueError("filter cutoff must be positive")
    accum = np.zeros(points.shape[0])
    block = max(1, 4_000_000 // max(points.shape[0], 1))
    for theta, xs in groups:
        s = points[:, 0] * np.cos(theta) + points[:, 1] * np.sin(theta)
        total = np.zeros(points.shape[0])
        for lo in range(0, xs.size, block):
            chunk = xs[lo : lo + block]
            total += np.sum(_ramlak_kernel(s[:, None] - chunk[None, :], kc), axis=1)
        accum += total / xs.size
    return accum * (np.pi / len(groups)) / (4.0 * np.pi**2)


def moments_from_wigner(points: np.ndarray, values: np.ndarray):
    """Mean vector and covariance of a sampled Wigner surface.

    Treats the (possibly slightly negative) reconstruction as a density.
    Far-field reconstruction noise enters with x^2 weight, so prefer
    wigner_axis_ratio for noisy tomographic estimates.
    """
    weights = values / np.sum(values)
    mean = weights @ points
    centered = points - mean
    cov = (centered * weights[:, None]).T @ centered
    return mean, cov


def variance_profile(dataset: QuadratureDataset):
    """Fit V(theta) = a + b cos(2 theta) + c sin(2 theta) to the per-phase
    sample variances.

    Returns (v_min, v_max, phi_min): the extremal quadrature variances and
    the phase of the squeezed axis. This is the standard sinusoidal law
    for Gaussian states and a good first-pass summary for any dataset.
    """
    groups = _phase_groups(dataset)
    if len(groups) < 3:
        raise ValueError("need at least 3 phases to fit the variance profile")
    thetas = np.array([t for t, _ in groups])
    variances = np.array([np.var(xs) for _, xs in groups])
    design = np.column_stack(
        [np.ones_like(thetas), np.cos(2 * thetas), np.sin(2 * thetas)]
    )
    (a, b, c), *_ = np.linalg.lstsq(design, variances, rcond=None)
    amp = np.hypot(b, c)
    phi_min = 0.5 * np.arctan2(-c, -b)
    return float(a - amp), float(a + amp), float(phi_min)


def mean_profile(dataset: QuadratureDataset) -> np.ndarray:
    """Phase-space mean (x, p) fitted from the per-phase sample means.

    Uses <X_theta> = mx cos(theta) + mp sin(theta).
    """
    groups = _phase_groups(dataset)
    if len(groups) < 2:
        raise ValueError("need at least 2 phases to fit the mean")
    thetas = np.array([t for t, _ in groups])
    means = np.array([np.mean(xs) for _, xs in groups])
    design = np.column_stack([np.cos(thetas), np.sin(thetas)])
    fit, *_ = np.linalg.lstsq(design, means, rcond=None)
    return fit


def wigner_axis_ratio(
    dataset: QuadratureDataset, points: np.ndarray, values: np.ndarray
) -> float:
    """Antisqueezed/squeezed axis ratio of a reconstructed Wigner surface.

    Second moments of the reconstruction under a Gaussian window three
    times wider than the state (window shape taken from the dataset's
    variance profile). A window proportional to the state's covariance
    shrinks both principal variances by the same factor, so the ratio is
    unbiased while far-field reconstruction noise is suppressed.
    """
    v_min, v_max, phi = variance_profile(dataset)
    rot = np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
    sigma_w = 9.0 * rot @ np.diag([max(v_min, 1e-3), max(v_max, 1e-3)]) @ rot.T
    prec_w = np.linalg.inv(sigma_w)
    pts = np.asarray(points, dtype=float) - mean_profile(dataset)
    window = np.exp(-0.5 * np.einsum("mi,ij,mj->m", pts, prec_w, pts))
    weighted = np.asarray(values) * window
    _, cov = moments_from_wigner(pts, weighted)
    eigs = np.sort(np.linalg.eigvalsh(cov))
    if eigs[0] <= 0:
        raise ValueError("windowed moments not positive definite; surface too noisy")
    return float(np.sqrt(eigs[1] / eigs[0]))


