"""Single-excitation dynamics of the emitter-cavity system.

State vector ``y = (n, p, Re c, Im c)`` with ``n = <a†a>``, ``p = <σ+σ->`` and
``c = <σ+ a>`` in the phase convention where the population equations read

    dn/dt = -κ n + 2 g Re c
    dp/dt = -γ p - 2 g Re c
    dc/dt = -(iδ + Γ) c + g (p - n),     Γ = (γ + γ* + κ)/2

starting from ``|e, 0>`` (n = 0, p = 1, c = 0).  In the convention of the
Hamiltonian ``g(a†σ- + σ+a)`` the same coherence is ``-i c``; the regression
spectrum below works in that convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .errors import StepTooLarge, ZeroCoupling
from .merit import lifetime_inv
from .params import SystemParams
from .spectra import Spectrum, _as_grid, _normalized

STEP_FACTOR = 0.01  # default dt * max_rate
MAX_STEP_FACTOR = 0.05
DECAY_LENGTHS = 30.0  # default t_max in units of the slowest decay time


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled trajectory; times in ħ/µeV."""

    t: np.ndarray
    n: np.ndarray
    p: np.ndarray
    c: np.ndarray  # complex

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i):
        return TrajectoryPoint(float(self.t[i]), float(self.n[i]), float(self.p[i]), complex(self.c[i]))

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    n: float
    p: float
    c: complex


@dataclass(frozen=True)
class TimeIntegrals:
    """Integrals over [0, ∞) of n, p and c, in ħ/µeV."""

    N: float
    P: float
    C: complex


def generator(params: SystemParams) -> np.ndarray:
    """Real 4x4 matrix A with dy/dt = A y."""
    g, k, ga, d = params.g, params.kappa, params.gamma, params.delta
    big_gamma = (params.gamma + params.gamma_star + params.kappa) / 2
    return np.array(
        [
            [-k, 0.0, 2 * g, 0.0],
            [0.0, -ga, -2 * g, 0.0],
            [-g, g, -big_gamma, d],
            [0.0, 0.0, -d, -big_gamma],
        ]
    )


def max_rate(params: SystemParams) -> float:
    return max(params.kappa, params.gamma + params.gamma_star, params.g, abs(params.delta))


def slowest_decay(params: SystemParams) -> float:
    """Smallest decay scale: min of γ, κ, τ⁻¹ and the slowest generator eigenvalue."""
    slowest_mode = np.min(-np.linalg.eigvals(generator(params)).real)
    return float(min(params.gamma, params.kappa, lifetime_inv(params), slowest_mode))


def rk4_step(f, y, h):
    k1 = f(y)
    k2 = f(y + h / 2 * k1)
    k3 = f(y + h / 2 * k2)
    k4 = f(y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _propagate(step: np.ndarray, y0: np.ndarray, nsteps: int, block: int = 512) -> np.ndarray:
    """Iterate ``y <- step @ y`` and return all ``nsteps + 1`` states.

    Powers ``step**k`` for k < block are tabulated once, then each block is
    produced from its first state with one batched product.
    """
    dim = len(y0)
    block = max(1, min(block, nsteps + 1))
    powers = np.empty((block, dim, dim))
    powers[0] = np.eye(dim)
    for k in range(1, block):
        powers[k] = step @ powers[k - 1]
    jump = step @ powers[-1]
    nblocks = -(-(nsteps + 1) // block)
    starts = np.empty((nblocks, dim))
    starts[0] = y0
    for j in range(1, nblocks):
        starts[j] = jump @ starts[j - 1]
    states = np.einsum("kab,jb->jka", powers, starts).reshape(-1, dim)
    return states[: nsteps + 1]


def integrate_populations(params: SystemParams, t_max: float | None = None, dt: float | None = None) -> Trajectory:
    """Fixed-step classic Runge-Kutta integration from ``|e, 0>``.

    The system is linear and autonomous, so one RK4 step is a fixed matrix
    built by stepping the unit vectors; the trajectory is its repeated
    application.

    Parameters
    ----------
    t_max : float, optional
        Final time in ħ/µeV. Defaults to 30 slowest decay times.
    dt : float, optional
        Step in ħ/µeV. Defaults to ``0.01 / max_rate``; values above
        ``0.05 / max_rate`` raise :class:`StepTooLarge`.
    """
    rate = max_rate(params)
    if dt is None:
        dt = STEP_FACTOR / rate
    if not dt > 0 or dt > MAX_STEP_FACTOR / rate * (1 + 1e-12):
        raise StepTooLarge(f"dt={dt!r} exceeds {MAX_STEP_FACTOR}/max_rate = {MAX_STEP_FACTOR / rate:.6g}")
    if t_max is None:
        t_max = DECAY_LENGTHS / slowest_decay(params)
    nsteps = max(1, int(np.ceil(t_max / dt - 1e-9)))

    a = generator(params)
    step = np.column_stack([rk4_step(lambda y: a @ y, e, dt) for e in np.eye(4)])
    states = _propagate(step, np.array([0.0, 1.0, 0.0, 0.0]), nsteps)
    t = dt * np.arange(nsteps + 1)
    return Trajectory(t, states[:, 0], states[:, 1], states[:, 2] + 1j * states[:, 3])


def _tail(t: np.ndarray, y: np.ndarray) -> float:
    """Exponential extrapolation of ∫ y beyond the last sample."""
    k = max(1, len(y) // 10)
    y1, y0 = y[-1], y[-1 - k]
    if y0 == 0 or y1 == 0 or np.sign(y1) != np.sign(y0) or abs(y1) >= abs(y0):
        return 0.0
    rate = np.log(y0 / y1) / (t[-1] - t[-1 - k])
    return float(y1 / rate)


def trajectory_integrals(traj: Trajectory) -> TimeIntegrals:
    """Trapezoid integrals of a trajectory plus an exponential tail estimate."""
    parts = []
    for y in (traj.n, traj.p, traj.c.real, traj.c.imag):
        parts.append(float(trapezoid(y, traj.t)) + _tail(traj.t, y))
    return TimeIntegrals(parts[0], parts[1], complex(parts[2], parts[3]))


def time_integrals_closed_form(params: SystemParams) -> TimeIntegrals:
    """Exact integrals from the integrated equations of motion.

    With everything decayed at t = ∞, integrating from ``|e, 0>`` gives
    ``κN = 2g Re C``, ``γP + 2g Re C = 1`` and ``(iδ + Γ) C = g (P - N)``.
    Eliminating C leaves a 2x2 real system in N and P.
    """
    g, k, ga = params.g, params.kappa, params.gamma
    big_gamma = (params.gamma + params.gamma_star + params.kappa) / 2
    response = 1.0 / complex(big_gamma, params.delta)  # C = g (P - N) * response
    exchange = 2 * g * g * response.real
    # [[κ + x, -x], [-x, γ + x]] @ [N, P] = [0, 1]
    det = k * ga + exchange * (k + ga)
    n_int = exchange / det
    p_int = (k + exchange) / det
    c_int = g * (k / det) * response  # P - N = κ/det, without cancellation
    return TimeIntegrals(n_int, p_int, c_int)


def regression_matrix(params: SystemParams) -> np.ndarray:
    """Evolution in τ of (<a†(t+τ) a(t)>, <σ+(t+τ) a(t)>)."""
    g = params.g
    return np.array(
        [
            [1j * params.omega_cav - params.kappa / 2, 1j * g],
            [1j * g, 1j * params.omega0 - (params.gamma + params.gamma_star) / 2],
        ]
    )


def qrt_spectrum(params: SystemParams, grid=None) -> Spectrum:
    """Cavity emission spectrum from the quantum regression theorem.

    ``s(w) = Re [(iw - M)^-1 v]_0`` with ``v`` the time-integrated initial
    correlations ``(N, -iC)``. Negative values from round-off are clipped; the
    pre-clip minimum is kept as ``raw_min``.
    """
    if params.g == 0:
        raise ZeroCoupling("cavity is never populated when g = 0")
    grid = _as_grid(params, grid)
    ints = time_integrals_closed_form(params)
    v = np.array([ints.N, -1j * ints.C])
    m = regression_matrix(params)
    lhs = 1j * grid[:, None, None] * np.eye(2) - m
    resolved = np.linalg.solve(lhs, np.broadcast_to(v, (len(grid), 2))[..., None])[:, 0, 0]
    raw = resolved.real
    return _normalized(grid, np.clip(raw, 0.0, None), "qrt_oracle", raw_min=float(raw.min()))
