"""Swing dynamics integration and trajectory comparison.

The Kron-reduced dynamics per generator are

    M_i ddot(delta)_i + D_i dot(delta)_i
        = f_i - sum_k E_i E_k Gamma_ik sin(delta_i - delta_k),

integrated with the classical fixed-step 4th-order Runge-Kutta scheme on the
first-order (delta, omega) system.  Angles live on the real line and are
never wrapped.  Bus voltages can be recovered on demand for every sample
through V_G = X E_G and the non-generator back-solve.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve

from .errors import DimensionMismatch, GridMismatch, NonFiniteState
from .kron import KronSystem, _spd_factor
from .network import LaplacianBlocks, PowerNetwork, build_laplacian


@dataclass(frozen=True, eq=False)
class SwingState:
    """Rotor angles (rad) and angular velocities (rad/s) at one instant."""

    t: float
    delta: np.ndarray
    omega: np.ndarray


@dataclass(frozen=True, eq=False)
class Trajectory:
    """State samples on a uniform time grid, one row per sample.

    ``V`` and ``theta`` (bus voltage amplitudes/phases over all n + n_bar
    buses) are present only when voltages were recovered.
    """

    t: np.ndarray
    delta: np.ndarray
    omega: np.ndarray
    V: np.ndarray | None = None
    theta: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.delta.shape[1]

    def state(self, k: int) -> SwingState:
        return SwingState(t=float(self.t[k]), delta=self.delta[k], omega=self.omega[k])


def swing_rhs(ks: KronSystem, net: PowerNetwork, state: SwingState):
    """Time derivative (ddelta, domega) of the swing dynamics at ``state``."""
    d = np.asarray(state.delta, dtype=float)
    w = np.asarray(state.omega, dtype=float)
    if d.shape != (net.n,) or w.shape != (net.n,):
        raise DimensionMismatch(f"state vectors must have length n={net.n}")
    K = ks.Gamma * np.outer(net.E, net.E)
    coupling = (K * np.sin(d[:, None] - d[None, :])).sum(axis=1)
    return w.copy(), (net.f - coupling - net.D * w) / net.M


def _rk4_path(ks: KronSystem, net: PowerNetwork, d0, w0, t_end: float, dt: float):
    """Classical RK4 on the (delta, omega) system, sampled on a uniform grid.

    The state may carry a leading batch axis; batch members evolve
    independently (the coupling acts along the last axis only).
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    steps = int(np.floor(t_end / dt + 1e-9))
    t = np.arange(steps + 1) * dt
    d = np.array(d0, dtype=float)
    w = np.array(w0, dtype=float)
    dd = np.empty((steps + 1, *d.shape))
    ww = np.empty_like(dd)
    dd[0] = d
    ww[0] = w

    K = ks.Gamma * np.outer(net.E, net.E)
    f, D, Minv = net.f, net.D, 1.0 / net.M
    half, sixth = 0.5 * dt, dt / 6.0

    def acc(dv, wv):
        coupling = (K * np.sin(dv[..., :, None] - dv[..., None, :])).sum(axis=-1)
        return (f - coupling - D * wv) * Minv

    # Overflow only precedes the finite check that turns it into NonFiniteState.
    with np.errstate(over="ignore", invalid="ignore"):
        for s in range(1, steps + 1):
            a1 = acc(d, w)
            d2 = d + half * w
            w2 = w + half * a1
            a2 = acc(d2, w2)
            d3 = d + half * w2
            w3 = w + half * a2
            a3 = acc(d3, w3)
            d4 = d + dt * w3
            w4 = w + dt * a3
            a4 = acc(d4, w4)
            d = d + sixth * (w + 2.0 * w2 + 2.0 * w3 + w4)
            w = w + sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
            if not (np.isfinite(d).all() and np.isfinite(w).all()):
                raise NonFiniteState(f"non-finite state at t = {s * dt:.6g}; reduce dt")
            dd[s] = d
            ww[s] = w
    return t, dd, ww


def integrate(
    ks: KronSystem,
    net: PowerNetwork,
    delta0,
    omega0=None,
    t_end: float = 10.0,
    dt: float = 1e-3,
    with_voltages: bool = False,
    blocks: LaplacianBlocks | None = None,
) -> Trajectory:
    """Fixed-step RK4 integration from (delta0, omega0) over [0, t_end].

    Samples sit on the uniform grid 0, dt, 2 dt, ..., ending at the largest
    grid point <= t_end.  ``omega0 = None`` means starting at rest.  Raises
    NonFiniteState if the state leaves the representable range (step too
    large for the dynamics).
    """
    n = net.n
    d = np.asarray(delta0, dtype=float)
    w = np.zeros(n) if omega0 is None else np.asarray(omega0, dtype=float)
    if d.shape != (n,) or w.shape != (n,):
        raise DimensionMismatch(f"initial conditions must have length n={n}")
    t, dd, ww = _rk4_path(ks, net, d, w, t_end, dt)
    traj = Trajectory(t=t, delta=dd, omega=ww)
    if with_voltages:
        if blocks is None:
            blocks = build_laplacian(net)
        traj = with_bus_voltages(traj, ks, blocks, net.E)
    return traj


def integrate_many(
    ks: KronSystem,
    net: PowerNetwork,
    delta0s,
    omega0s=None,
    t_end: float = 10.0,
    dt: float = 1e-3,
    with_voltages: bool = False,
    blocks: LaplacianBlocks | None = None,
) -> list:
    """Integrate several initial conditions at once on one shared grid.

    Rows of ``delta0s``/``omega0s`` are independent initial conditions; the
    whole batch advances in lockstep, which is much cheaper than calling
    :func:`integrate` per row.  Returns one Trajectory per row.
    """
    n = net.n
    d = np.asarray(delta0s, dtype=float)
    if d.ndim != 2 or d.shape[1] != n:
        raise DimensionMismatch(f"delta0s must have shape (m, n={n}), got {d.shape}")
    w = np.zeros_like(d) if omega0s is None else np.asarray(omega0s, dtype=float)
    if w.shape != d.shape:
        raise DimensionMismatch(f"omega0s must match delta0s shape {d.shape}")
    t, dd, ww = _rk4_path(ks, net, d, w, t_end, dt)
    if with_voltages and blocks is None:
        blocks = build_laplacian(net)
    trajs = []
    for k in range(d.shape[0]):
        traj = Trajectory(t=t, delta=dd[:, k], omega=ww[:, k])
        if with_voltages:
            traj = with_bus_voltages(traj, ks, blocks, net.E)
        trajs.append(traj)
    return trajs


def with_bus_voltages(
    traj: Trajectory, ks: KronSystem, blocks: LaplacianBlocks, E
) -> Trajectory:
    """Copy of ``traj`` carrying amplitudes and phases for all n + n_bar buses."""
    E = np.asarray(E, dtype=float)
    if E.shape != (traj.n,):
        raise DimensionMismatch(f"E must have length n={traj.n}")
    e_g = E * np.exp(1j * traj.delta)
    v_g = e_g @ ks.X.T  # V_G = X E_G per sample
    n_bar = blocks.L22.shape[0]
    if n_bar > 0:
        c22 = _spd_factor(blocks.L22, "L22")
        Z = cho_solve(c22, blocks.L12.T)
        v = np.hstack([v_g, -(v_g @ Z.T)])
    else:
        v = v_g
    return Trajectory(
        t=traj.t, delta=traj.delta, omega=traj.omega, V=np.abs(v), theta=np.angle(v)
    )


def compare(full: Trajectory, lifted: Trajectory) -> dict:
    """Per-signal-family error maxima between two trajectories on one grid.

    Voltage metrics are None when either trajectory lacks recovered voltages.
    """
    if full.t.shape != lifted.t.shape or (
        full.t.size and float(np.max(np.abs(full.t - lifted.t))) > 1e-12
    ):
        raise GridMismatch("trajectories are sampled on different time grids")
    if full.delta.shape != lifted.delta.shape:
        raise DimensionMismatch(
            f"state dimensions differ: {full.delta.shape} vs {lifted.delta.shape}"
        )
    metrics = {
        "max_abs_delta_err": float(np.max(np.abs(full.delta - lifted.delta))),
        "max_abs_omega_err": float(np.max(np.abs(full.omega - lifted.omega))),
        "terminal_delta_err": float(np.max(np.abs(full.delta[-1] - lifted.delta[-1]))),
        "max_abs_V_err": None,
        "max_abs_theta_err": None,
    }
    if full.V is not None and lifted.V is not None:
        if full.V.shape != lifted.V.shape:
            raise DimensionMismatch(
                f"voltage dimensions differ: {full.V.shape} vs {lifted.V.shape}"
            )
        metrics["max_abs_V_err"] = float(np.max(np.abs(full.V - lifted.V)))
        metrics["max_abs_theta_err"] = float(np.max(np.abs(full.theta - lifted.theta)))
    return metrics
