"""Exact Gaussian-state engine.

States are (mean, covariance) pairs over N optical modes, evolved by
symplectic transformations and the pure-loss channel.

Conventions (used throughout the package):

* ``[X, P] = i`` and ``X = (a + a^dag)/sqrt(2)``, ``P = (a - a^dag)/(i sqrt(2))``,
  so the vacuum has ``Var(X) = Var(P) = 1/2``.
* Quadratures are ordered ``(X1, P1, X2, P2, ...)``.
* Mode indices are 0-based.
* A squeezing parameter ``r > 0`` scales ``X -> X exp(-r)`` and
  ``P -> P exp(+r)`` (position squeezing for ``r > 0``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

# Structural checks (symplecticity, symmetry) use 1e-10 relative;
# physics inequalities (uncertainty principle) use 1e-9 absolute.
STRUCTURAL_TOL = 1e-10
PHYSICS_TOL = 1e-9

VACUUM_VARIANCE = 0.5

GSTATE_FORMAT_VERSION = "gstate-v1"


def symplectic_form(n_modes: int) -> np.ndarray:
    """The 2N x 2N symplectic form Omega, block-diagonal [[0, 1], [-1, 0]]."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a covariance matrix, sorted ascending.

    These are the moduli of the eigenvalues of Omega @ cov, which come in
    pairs +/- i*nu; a physical state has every nu >= 1/2.
    """
    n = cov.shape[0] // 2
    eigs = np.linalg.eigvals(symplectic_form(n) @ cov)
    return np.sort(np.abs(eigs))[::2]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GaussianState:
    """An N-mode Gaussian state: quadrature mean vector and covariance matrix.

    Attributes
    ----------
    mean : (2N,) array
        Quadrature means, ordered (X1, P1, ..., XN, PN).
    cov : (2N, 2N) array
        Symmetric quadrature covariance matrix; the vacuum is I/2.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = _readonly(self.mean).reshape(-1)
        cov = _readonly(self.cov)
        if mean.size == 0 or mean.size % 2 != 0:
            raise ValueError("mean must have length 2N with N >= 1")
        if cov.shape != (mean.size, mean.size):
            raise ValueError("cov must be 2N x 2N, matching the mean vector")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > 1e-12 * scale:
            raise ValueError("covariance matrix is not symmetric")
        nus = symplectic_eigenvalues(np.asarray(cov))
        if np.min(nus) < VACUUM_VARIANCE - PHYSICS_TOL:
            raise ValueError(
                "covariance violates the uncertainty principle "
                f"(min symplectic eigenvalue {np.min(nus):.6g} < 1/2)"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def to_json(self) -> dict:
        """Serializable dict, format ``gstate-v1`` (cov row-major)."""
        return {
            "version": GSTATE_FORMAT_VERSION,
            "n_modes": self.n_modes,
            "mean": self.mean.tolist(),
            "cov": self.cov.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "GaussianState":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("version") != GSTATE_FORMAT_VERSION:
            raise ValueError(f"unsupported state format: {data.get('version')!r}")
        state = cls(mean=np.array(data["mean"]), cov=np.array(data["cov"]))
        if state.n_modes != data["n_modes"]:
            raise ValueError("n_modes field inconsistent with mean length")
        return state


@dataclass(frozen=True)
class SymplecticOp:
    """A Gaussian unitary: symplectic matrix plus a phase-space shift.

    Acts on states as mean -> S mean + shift, cov -> S cov S^T.
    """

    matrix: np.ndarray
    shift: np.ndarray = field(default=None)

    def __post_init__(self):
        matrix = _readonly(self.matrix)
        n2 = matrix.shape[0]
        shift = np.zeros(n2) if self.shift is None else np.asarray(self.shift, float)
        shift = _readonly(shift)
        omega = symplectic_form(n2 // 2)
        defect = matrix.T @ omega @ matrix - omega
        # rounding in S^T Omega S grows like eps * |S|^2, so scale the check
        tol = STRUCTURAL_TOL * max(1.0, float(np.max(np.abs(matrix))) ** 2)
        if np.max(np.abs(defect)) > tol:
            raise ValueError("matrix is not symplectic (S^T Omega S != Omega)")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "shift", shift)

    def __call__(self, state: GaussianState) -> GaussianState:
        if self.matrix.shape[0] != 2 * state.n_modes:
            raise ValueError("operator and state mode counts differ")
        return GaussianState(
            mean=self.matrix @ state.mean + self.shift,
            cov=self.matrix @ state.cov @ self.matrix.T,
        )

    def compose(self, other: "SymplecticOp") -> "SymplecticOp":
        """The operation 'self after other'."""
        return SymplecticOp(
            matrix=self.matrix @ other.matrix,
            shift=self.matrix @ other.shift + self.shift,
        )


def _embed(n_modes: int, blocks: dict[tuple[int, int], np.ndarray]) -> np.ndarray:
    """Place 2x2 blocks into a 2N x 2N identity at the given mode pairs."""
    s = np.eye(2 * n_modes)
    for (i, j), blk in blocks.items():
        s[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = blk
    return s


def _check_mode(state: GaussianState, mode: int):
    if not 0 <= mode < state.n_modes:
        raise ValueError(f"mode {mode} out of range for {state.n_modes}-mode state")


def vacuum(n_modes: int) -> GaussianState:
    """The N-mode vacuum: zero mean, covariance I/2."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return GaussianState(
        mean=np.zeros(2 * n_modes),
        cov=VACUUM_VARIANCE * np.eye(2 * n_modes),
    )


def rotation_op(n_modes: int, mode: int, theta: float) -> SymplecticOp:
    """Phase-space rotation of one mode by angle theta (counterclockwise)."""
    c, s = np.cos(theta), np.sin(theta)
    blk = np.array([[c, -s], [s, c]])
    return SymplecticOp(matrix=_embed(n_modes, {(mode, mode): blk}))


def squeeze_op(n_modes: int, mode: int, r: float, phi: float = 0.0) -> SymplecticOp:
    """Single-mode squeezer.

    For phi = 0 the X quadrature is scaled by exp(-r) and P by exp(+r);
    a nonzero phi rotates the squeezed axis to angle phi (the phi != 0
    case is defined as the rotation conjugate of the phi = 0 squeezer).
    """
    local = np.diag([np.exp(-r), np.exp(r)])
    if phi != 0.0:
        c, s = np.cos(phi), np.sin(phi)
        rot = np.array([[c, -s], [s, c]])
        local = rot @ local @ rot.T
    return SymplecticOp(matrix=_embed(n_modes, {(mode, mode): local}))


def two_mode_squeeze_op(n_modes: int, modes: tuple[int, int], r: float) -> SymplecticOp:
    """Two-mode squeezer: correlates positions, anticorrelates momenta.

    Sum/difference quadratures scale as (X_a +/- X_b) -> exp(+/- r) and
    (P_a +/- P_b) -> exp(-/+ r).
    """
    i, j = modes
    ch, sh = np.cosh(r), np.sinh(r)
    diag = np.array([[ch, 0.0], [0.0, ch]])
    off = np.array([[sh, 0.0], [0.0, -sh]])
    return SymplecticOp(
        matrix=_embed(n_modes, {(i, i): diag, (j, j): diag, (i, j): off, (j, i): off})
    )


def beam_splitter_op(
    n_modes: int, modes: tuple[int, int], tau: float, rho: float
) -> SymplecticOp:
    """Beam splitter mixing modes (i, j): a' = tau a - rho b, b' = tau b + rho a.

    Both X and P pairs mix with the same real (tau, rho); no extra phases.
    """
    if abs(tau * tau + rho * rho - 1.0) > STRUCTURAL_TOL:
        raise ValueError("beam splitter requires tau^2 + rho^2 = 1")
    i, j = modes
    t = tau * np.eye(2)
    return SymplecticOp(
        matrix=_embed(
            n_modes,
            {(i, i): t, (j, j): t, (i, j): -rho * np.eye(2), (j, i): rho * np.eye(2)},
        )
    )


def _check_pair(state: GaussianState, modes: tuple[int, int]):
    i, j = modes
    _check_mode(state, i)
    _check_mode(state, j)
    if i == j:
        raise ValueError("the two modes must be distinct")


def squeeze(state: GaussianState, mode: int, r: float, phi: float = 0.0) -> GaussianState:
    """Apply a single-mode squeezer to one mode of the state."""
    _check_mode(state, mode)
    return squeeze_op(state.n_modes, mode, r, phi)(state)


def two_mode_squeeze(state: GaussianState, modes: tuple[int, int], r: float) -> GaussianState:
    """Apply a two-mode squeezer to a pair of modes."""
    _check_pair(state, modes)
    return two_mode_squeeze_op(state.n_modes, modes, r)(state)


def beam_splitter(
    state: GaussianState, modes: tuple[int, int], tau: float, rho: float
) -> GaussianState:
    """Mix two modes on a beam splitter with amplitudes (tau, rho)."""
    _check_pair(state, modes)
    return beam_splitter_op(state.n_modes, modes, tau, rho)(state)


def rotate(state: GaussianState, mode: int, theta: float) -> GaussianState:
    """Rotate one mode in phase space by theta."""
    _check_mode(state, mode)
    return rotation_op(state.n_modes, mode, theta)(state)


def displace(state: GaussianState, mode: int, alpha: complex) -> GaussianState:
    """Displace one mode by complex amplitude alpha.

    Shifts the mean by (sqrt(2) Re alpha, sqrt(2) Im alpha); the covariance
    is unchanged.
    """
    _check_mode(state, mode)
    alpha = complex(alpha)
    shift = np.zeros(2 * state.n_modes)
    shift[2 * mode] = np.sqrt(2.0) * alpha.real
    shift[2 * mode + 1] = np.sqrt(2.0) * alpha.imag
    return GaussianState(mean=state.mean + shift, cov=state.cov)


def loss_channel(state: GaussianState, mode: int, transmissivity: float) -> GaussianState:
    """Pure-loss channel on one mode (beam splitter with a vacuum ancilla).

    Per-quadrature variance maps as V -> T V + (1 - T)/2, the mean scales
    by sqrt(T), and cross-covariances with other modes scale by sqrt(T).
    """
    _check_mode(state, mode)
    t = float(transmissivity)
    if not 0.0 <= t <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    n2 = 2 * state.n_modes
    scale = np.ones(n2)
    scale[2 * mode : 2 * mode + 2] = np.sqrt(t)
    x = np.diag(scale)
    y = np.zeros((n2, n2))
    y[2 * mode, 2 * mode] = y[2 * mode + 1, 2 * mode + 1] = (1.0 - t) * VACUUM_VARIANCE
    return GaussianState(mean=scale * state.mean, cov=x @ state.cov @ x.T + y)


def quadrature_variance(state: GaussianState, mode: int, theta: float) -> float:
    """Variance of the rotated quadrature X_theta = X cos(theta) + P sin(theta)."""
    _check_mode(state, mode)
    c = np.zeros(2 * state.n_modes)
    c[2 * mode] = np.cos(theta)
    c[2 * mode + 1] = np.sin(theta)
    return float(c @ state.cov @ c)


def quadrature_mean(state: GaussianState, mode: int, theta: float) -> float:
    """Mean of the rotated quadrature X_theta."""
    _check_mode(state, mode)
    return float(
        state.mean[2 * mode] * np.cos(theta) + state.mean[2 * mode + 1] * np.sin(theta)
    )


def squeezing_db(variance: float) -> float:
    """Quadrature variance in decibels relative to the vacuum: 10 log10(2V).

    Negative values indicate squeezing below the standard quantum limit.
    """
    if variance <= 0.0:
        raise ValueError("variance must be positive")
    return float(10.0 * np.log10(2.0 * variance))


def infer_effective_loss(v_min: float, v_max: float) -> tuple[float, float]:
    """Explain a measured (min, max) quadrature-variance pair as an ideal
    squeezed state degraded by loss.

    Returns (T, r) such that v_min = T exp(-2r)/2 + (1-T)/2 and
    v_max = T exp(+2r)/2 + (1-T)/2.

    Raises ValueError when v_min * v_max < 1/4 (an uncertainty-principle
    violation) or when the pair cannot come from a lossy pure squeezed
    state (thermal, not squeezed). The degenerate vacuum pair
    v_min = v_max = 1/2 returns (1, 0) by convention.
    """
    if not 0.0 < v_min <= v_max:
        raise ValueError("require 0 < v_min <= v_max")
    product = v_min * v_max
    if product < 0.25 - PHYSICS_TOL:
        raise ValueError(
            f"v_min*v_max = {product:.6g} < 1/4: violation of the uncertainty principle"
        )
    if v_max - v_min <= PHYSICS_TOL:
        # The 2x2 system is rank-deficient at v_min = v_max.
        if abs(v_min - VACUUM_VARIANCE) <= PHYSICS_TOL:
            return 1.0, 0.0
        raise ValueError("equal variances above 1/2: thermal, not squeezed")
    s = v_min + v_max
    t = (0.5 - s + 2.0 * product) / (1.0 - s)
    if t <= 0.0 or t > 1.0 + PHYSICS_TOL:
        raise ValueError("no loss channel on a pure squeezed state fits: thermal, not squeezed")
    t = min(t, 1.0)
    exp_m2r = 2.0 * (v_min - (1.0 - t) * VACUUM_VARIANCE) / t
    if exp_m2r <= 0.0:
        raise ValueError("inferred squeezed variance not positive; inconsistent pair")
    r = -0.5 * np.log(exp_m2r)
    return float(t), float(r)


def wigner_gaussian(state: GaussianState, grid) -> np.ndarray:
    """Wigner function of a Gaussian state on the given phase-space points.

    grid is an (M, 2N) array of points ordered like the mean vector; the
    result integrates to 1 over phase space (single-mode vacuum peaks at
    1/pi).
    """
    points = np.atleast_2d(np.asarray(grid, dtype=float))
    n2 = 2 * state.n_modes
    if points.shape[1] != n2:
        raise ValueError(f"grid points must have dimension {n2}")
    det = np.linalg.det(state.cov)
    if det <= 0 or np.linalg.cond(state.cov) > 1e14:
        raise ValueError("singular covariance matrix")
    prec = np.linalg.inv(state.cov)
    delta = points - state.mean
    quad = np.einsum("mi,ij,mj->m", delta, prec, delta)
    norm = (2.0 * np.pi) ** state.n_modes * np.sqrt(det)
    return np.exp(-0.5 * quad) / norm
