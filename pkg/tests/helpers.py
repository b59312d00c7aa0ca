"""Shared builders and independent brute-force oracles for the test suite."""

import math
from itertools import combinations

import numpy as np

from swingsync import Line, PowerNetwork, validate_network

# The bundled 5-generator, 7-bus example: generators 1, 2 behind hub bus 6,
# generators 3, 4, 5 behind hub bus 7, with a direct 3-4 tie.
DEMO_LINES = [
    (1, 6, 1.0),
    (2, 6, 1.0),
    (3, 4, 1.0),
    (3, 7, 1.0),
    (4, 7, 1.0),
    (5, 7, 1.0),
    (6, 7, 1.0),
]

DEMO_L = np.array(
    [
        [1, 0, 0, 0, 0, -1, 0],
        [0, 1, 0, 0, 0, -1, 0],
        [0, 0, 2, -1, 0, 0, -1],
        [0, 0, -1, 2, 0, 0, -1],
        [0, 0, 0, 0, 1, 0, -1],
        [-1, -1, 0, 0, 0, 3, -1],
        [0, 0, -1, -1, -1, -1, 4],
    ],
    dtype=float,
)

DEMO_GAMMA = (
    np.array(
        [
            [21, 5, 2, 2, 2],
            [5, 21, 2, 2, 2],
            [2, 2, 16, 8, 4],
            [2, 2, 8, 16, 4],
            [2, 2, 4, 4, 20],
        ],
        dtype=float,
    )
    / 32.0
)

DEMO_GAMMA_P = np.array([[13, 3], [13, 3], [2, 14], [2, 14], [2, 14]], dtype=float) / 16.0

DEMO_GAMMA_HAT = np.array([[13, 3], [3, 21]], dtype=float) / 8.0


def demo_network(M=None, D=None, f=None, E=None, chi=None, lines=None):
    """The 7-bus example with unit parameters unless overridden."""
    return PowerNetwork(
        n=5,
        n_bar=2,
        chi_gen=np.ones(5) if chi is None else chi,
        lines=DEMO_LINES if lines is None else lines,
        M=np.ones(5) if M is None else M,
        D=np.ones(5) if D is None else D,
        f=np.zeros(5) if f is None else f,
        E=np.ones(5) if E is None else E,
    )


def random_network(rng, n=None, n_bar=None, uniform_params=False, uniform_chi=False):
    """Random connected network: spanning tree plus extra lines, random parameters."""
    n = int(rng.integers(2, 9)) if n is None else n
    n_bar = int(rng.integers(0, 9)) if n_bar is None else n_bar
    nb = n + n_bar
    lines = {}
    order = rng.permutation(nb)
    for idx in range(1, nb):
        a, b = int(order[idx]), int(order[rng.integers(0, idx)])
        key = (min(a, b) + 1, max(a, b) + 1)
        lines[key] = float(rng.uniform(0.5, 2.0))
    for _ in range(int(rng.integers(0, nb + 1))):
        a, b = rng.integers(0, nb, size=2)
        if a == b:
            continue
        key = (int(min(a, b)) + 1, int(max(a, b)) + 1)
        if key not in lines:
            lines[key] = float(rng.uniform(0.5, 2.0))
    if uniform_params:
        M, D, f, E = np.ones(n), np.ones(n), np.zeros(n), np.ones(n)
    else:
        M = rng.uniform(0.5, 2.0, n)
        D = rng.uniform(0.0, 1.5, n)
        f = rng.uniform(-0.5, 0.5, n)
        E = rng.uniform(0.5, 1.5, n)
    chi = np.ones(n) if uniform_chi else rng.uniform(0.5, 2.0, n)
    net = PowerNetwork(
        n=n,
        n_bar=n_bar,
        chi_gen=chi,
        lines=[Line(i, j, c) for (i, j), c in sorted(lines.items())],
        M=M,
        D=D,
        f=f,
        E=E,
    )
    validate_network(net)
    return net


def random_twin_network(rng, n=None, n_bar=None):
    """Random network whose generators 1 and 2 are exact structural twins.

    Bus 2 copies every line of bus 1 (same reactances) and the two generators
    share identical parameters, so the whole system is invariant under
    swapping labels 1 and 2.
    """
    n = int(rng.integers(3, 7)) if n is None else n
    n_bar = int(rng.integers(0, 5)) if n_bar is None else n_bar
    nb = n + n_bar
    others = [b for b in range(1, nb + 1) if b != 2]  # connected graph without bus 2
    lines = {}
    order = rng.permutation(len(others))
    for idx in range(1, len(others)):
        a, b = others[order[idx]], others[order[int(rng.integers(0, idx))]]
        lines[(min(a, b), max(a, b))] = float(rng.uniform(0.5, 2.0))
    for _ in range(int(rng.integers(0, nb))):
        a, b = rng.choice(others, size=2)
        if a != b and (min(a, b), max(a, b)) not in lines:
            lines[(min(a, b), max(a, b))] = float(rng.uniform(0.5, 2.0))
    # mirror every line of bus 1 onto bus 2 (keys are (min, max), so a == 1 covers all)
    for (a, b), c in list(lines.items()):
        if a == 1:
            lines[(2, b)] = c
    if rng.random() < 0.5:
        lines[(1, 2)] = float(rng.uniform(0.5, 2.0))
    M = rng.uniform(0.5, 2.0, n)
    D = rng.uniform(0.0, 1.5, n)
    f = rng.uniform(-0.5, 0.5, n)
    E = rng.uniform(0.5, 1.5, n)
    chi = rng.uniform(0.5, 2.0, n)
    for vec in (M, D, f, E, chi):
        vec[1] = vec[0]
    net = PowerNetwork(
        n=n,
        n_bar=n_bar,
        chi_gen=chi,
        lines=[Line(i, j, c) for (i, j), c in sorted(lines.items())],
        M=M,
        D=D,
        f=f,
        E=E,
    )
    validate_network(net)
    return net


def random_swap_symmetric(rng, n, i, j):
    """A random (non-symmetric) matrix commuting with the (i, j) transposition."""
    A = rng.normal(size=(n, n))
    perm = np.arange(n)
    perm[[i - 1, j - 1]] = perm[[j - 1, i - 1]]
    return 0.5 * (A + A[perm][:, perm])


def all_partitions(n):
    """Every partition of {1..n}, clusters sorted, ordered by smallest member."""
    result = []
    clusters = []

    def grow(x):
        if x > n:
            result.append(tuple(tuple(c) for c in clusters))
            return
        for c in clusters:
            c.append(x)
            grow(x + 1)
            c.pop()
        clusters.append([x])
        grow(x + 1)
        clusters.pop()

    grow(1)
    return result


def refines(p, q):
    """True when every cluster of p is contained in some cluster of q."""
    qsets = [set(c) for c in q]
    return all(any(set(c) <= qs for qs in qsets) for c in p)


def is_equitable(Gamma, clusters, tol=1e-9):
    """Row sums of Gamma toward every cluster are constant inside each cluster."""
    cl0 = [[i - 1 for i in c] for c in clusters]
    scale = max(1.0, float(np.max(np.abs(Gamma))))
    for c in cl0:
        for c2 in cl0:
            sums = Gamma[np.ix_(c, c2)].sum(axis=1)
            if sums.max() - sums.min() > tol * scale:
                return False
    return True


def refines_level_sets(clusters, net, tol=1e-9):
    """True when every cluster is constant in all of (M, D, f, E, chi)."""
    for c in clusters:
        idx = [i - 1 for i in c]
        for vec in (net.M, net.D, net.f, net.E, net.chi_gen):
            vals = vec[idx]
            if vals.max() - vals.min() > tol * max(1.0, float(np.max(np.abs(vals)))):
                return False
    return True


def weak_sync_literal(net, ks, clusters, tol=1e-9):
    """Literal invariance-condition checker, independent of the library route.

    Hypotheses (M, D, f, E constant per cluster) first; a single cluster then
    suffices on its own.  With two or more clusters: chi constant per cluster
    and the Gamma image condition through the orthogonal projector onto
    cluster-constant vectors, || Gamma P - P (P^T P)^{-1} P^T Gamma P || <= tol.
    """
    cl0 = [[i - 1 for i in c] for c in clusters]
    for vec in (net.M, net.D, net.f, net.E):
        for c in cl0:
            vals = vec[c]
            if vals.max() - vals.min() > tol * max(1.0, float(np.max(np.abs(vals)))):
                return False
    if len(cl0) == 1:
        return True
    for c in cl0:
        vals = net.chi_gen[c]
        if vals.max() - vals.min() > tol * max(1.0, float(np.max(np.abs(vals)))):
            return False
    P = np.zeros((net.n, len(cl0)))
    for col, c in enumerate(cl0):
        P[c, col] = 1.0
    proj = P @ np.linalg.inv(P.T @ P) @ P.T
    GP = ks.Gamma @ P
    return float(np.max(np.abs(GP - proj @ GP))) <= tol * max(1.0, float(np.max(np.abs(GP))))


def swing_acc_loops(net, Gamma, delta, omega):
    """Scalar double-loop reimplementation of the swing accelerations."""
    n = net.n
    out = np.zeros(n)
    for i in range(n):
        s = 0.0
        for k in range(n):
            s += net.E[i] * net.E[k] * Gamma[i, k] * math.sin(delta[i] - delta[k])
        out[i] = (net.f[i] - s - net.D[i] * omega[i]) / net.M[i]
    return out


def networks_equal(a, b, tol=1e-12):
    """Semantic equality: same sizes, same parameters, same Laplacian."""
    from swingsync import build_laplacian

    if (a.n, a.n_bar) != (b.n, b.n_bar):
        return False
    for va, vb in ((a.M, b.M), (a.D, b.D), (a.f, b.f), (a.E, b.E), (a.chi_gen, b.chi_gen)):
        if not np.allclose(va, vb, rtol=tol, atol=tol):
            return False
    return np.allclose(build_laplacian(a).L, build_laplacian(b).L, rtol=tol, atol=tol)
