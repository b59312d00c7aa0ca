"""Aggregation-based model reduction: cluster generators and their buses.

The characteristic matrix P of a partition (one column per cluster, one 1 per
row) projects the generator block of the network: inertias, damping and input
powers add over a cluster, generator reactances combine in parallel, voltage
amplitudes average, and the Laplacian blocks become P^T L11 P and P^T L12
while the non-generator block L22 is kept intact.  The result is again a
power network of the same form, for arbitrary partitions.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonLaplacianResult
from .network import Line, PowerNetwork, build_laplacian, validate_network
from .simulate import Trajectory
from .sync import Partition, validate_partition


@dataclass(frozen=True, eq=False)
class AggregationMatrix:
    """Zero/one characteristic matrix of a partition; P^T P = diag(cluster sizes)."""

    P: np.ndarray
    cluster_sizes: np.ndarray

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def n_hat(self) -> int:
        return self.P.shape[1]


def build_P(part: Partition, n: int) -> AggregationMatrix:
    """Aggregation matrix of ``part``: P[i, l] = 1 iff generator i is in cluster l."""
    validate_partition(part, n)
    P = np.zeros((n, len(part.clusters)))
    for col, cluster in enumerate(part.clusters):
        for i in cluster:
            P[i - 1, col] = 1.0
    sizes = np.array([len(c) for c in part.clusters], dtype=float)
    return AggregationMatrix(P=P, cluster_sizes=sizes)


def lines_from_laplacian(L: np.ndarray) -> tuple:
    """Recover the line set of a Laplacian: chi = -1/L[a, b] per negative entry.

    Raises NonLaplacianResult on a positive off-diagonal entry, which cannot
    occur for matrices projected with a zero/one aggregation matrix.
    """
    nb = L.shape[0]
    scale = max(1.0, float(np.max(np.abs(L)))) if L.size else 1.0
    lines = []
    for a in range(nb):
        for b in range(a + 1, nb):
            w = L[a, b]
            if w > 1e-12 * scale:
                raise NonLaplacianResult(
                    f"positive off-diagonal entry {w} at ({a + 1},{b + 1})"
                )
            if w < 0:
                lines.append(Line(a + 1, b + 1, float(-1.0 / w)))
    return tuple(lines)


def aggregate(net: PowerNetwork, part: Partition) -> PowerNetwork:
    """Reduced power network with one generator per cluster.

    Per-cluster parameters follow the projected quantities: M, D, f add,
    chi combines in parallel (from the diagonal of P^T L_D P), E is the
    cluster mean.  The reduced line set is rebuilt from the projected
    Laplacian, collapsing parallel reduced lines into one line with summed
    admittance; non-generator buses are kept as they are.
    """
    agg = build_P(part, net.n)
    P = agg.P
    blocks = build_laplacian(net)

    M_hat = P.T @ net.M
    D_hat = P.T @ net.D
    f_hat = P.T @ net.f
    E_hat = (P.T @ net.E) / agg.cluster_sizes
    chi_hat = 1.0 / (P.T @ (1.0 / net.chi_gen))

    L11_hat = P.T @ blocks.L11 @ P
    L12_hat = P.T @ blocks.L12
    n_hat = agg.n_hat
    nb_hat = n_hat + net.n_bar
    L_hat = np.zeros((nb_hat, nb_hat))
    L_hat[:n_hat, :n_hat] = L11_hat
    L_hat[:n_hat, n_hat:] = L12_hat
    L_hat[n_hat:, :n_hat] = L12_hat.T
    L_hat[n_hat:, n_hat:] = blocks.L22

    reduced = PowerNetwork(
        n=n_hat,
        n_bar=net.n_bar,
        chi_gen=chi_hat,
        lines=lines_from_laplacian(L_hat),
        M=M_hat,
        D=D_hat,
        f=f_hat,
        E=E_hat,
    )
    validate_network(reduced)
    return reduced


def project_initial(agg: AggregationMatrix, delta0, omega0):
    """Cluster means (P^T P)^{-1} P^T of the initial angles and velocities."""
    delta0 = np.asarray(delta0, dtype=float)
    omega0 = np.asarray(omega0, dtype=float)
    n = agg.n
    if delta0.shape != (n,) or omega0.shape != (n,):
        raise DimensionMismatch(f"initial conditions must have length n={n}")
    return (agg.P.T @ delta0) / agg.cluster_sizes, (agg.P.T @ omega0) / agg.cluster_sizes


def lift(agg: AggregationMatrix, hat_traj: Trajectory) -> Trajectory:
    """Map a reduced trajectory back to the full generator dimension via P.

    Generator states and generator-bus voltages are left-multiplied by P per
    sample; non-generator bus voltages are kept unchanged; timestamps are
    preserved.
    """
    n_hat = agg.n_hat
    if hat_traj.delta.shape[1] != n_hat:
        raise DimensionMismatch(
            f"trajectory has {hat_traj.delta.shape[1]} generators, P expects {n_hat}"
        )
    Pt = agg.P.T
    V = theta = None
    if hat_traj.V is not None:
        V = np.hstack([hat_traj.V[:, :n_hat] @ Pt, hat_traj.V[:, n_hat:]])
        theta = np.hstack([hat_traj.theta[:, :n_hat] @ Pt, hat_traj.theta[:, n_hat:]])
    return Trajectory(
        t=hat_traj.t,
        delta=hat_traj.delta @ Pt,
        omega=hat_traj.omega @ Pt,
        V=V,
        theta=theta,
    )
