"""Power network data model and graph Laplacian assembly.

A network consists of n generators, each attached through reactance chi_i to
its own bus (buses 1..n are generator buses), plus n_bar non-generator buses
(n+1..n+n_bar) and a set of reactance lines between buses.  A line with
reactance chi_ij contributes edge weight 1/chi_ij to the weighted graph
Laplacian of the bus network.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadBusIndex,
    DimensionMismatch,
    DisconnectedNetwork,
    DuplicateLine,
    NonpositiveParameter,
)


def _freeze(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Line:
    """Reactance line between buses i and j (1-based, unordered pair)."""

    i: int
    j: int
    chi: float


@dataclass(frozen=True, eq=False)
class PowerNetwork:
    """Generators, buses and lines of a swing-equation power network.

    Generator i hangs off bus i only; buses n+1..n+n_bar carry no generator.
    All per-generator vectors have length n.  Instances are immutable; use
    :func:`validate_network` to check the value/topology invariants.
    """

    n: int
    n_bar: int
    chi_gen: np.ndarray  # generator-to-bus reactances, > 0
    lines: tuple  # bus-to-bus reactance lines
    M: np.ndarray  # inertias, > 0
    D: np.ndarray  # damping, >= 0
    f: np.ndarray  # input powers
    E: np.ndarray  # generator voltage amplitudes, > 0 (constant in time)

    def __post_init__(self):
        for name in ("chi_gen", "M", "D", "f", "E"):
            arr = _freeze(getattr(self, name))
            if arr.shape != (self.n,):
                raise DimensionMismatch(
                    f"{name} must have length n={self.n}, got shape {arr.shape}"
                )
            object.__setattr__(self, name, arr)
        lines = tuple(
            ln if isinstance(ln, Line) else Line(int(ln[0]), int(ln[1]), float(ln[2]))
            for ln in self.lines
        )
        object.__setattr__(self, "lines", lines)

    @property
    def n_bus(self) -> int:
        return self.n + self.n_bar


@dataclass(frozen=True, eq=False)
class LaplacianBlocks:
    """Weighted graph Laplacian of the bus network, partitioned by bus kind.

    L is (n+n_bar) square with L11 the generator-bus block, L22 the
    non-generator block and L12 the coupling block.  L is symmetric with zero
    row sums and nonpositive off-diagonal entries; L22 is nonsingular whenever
    the network is connected.
    """

    L: np.ndarray
    L11: np.ndarray
    L12: np.ndarray
    L22: np.ndarray


def validate_network(net: PowerNetwork) -> None:
    """Check all invariants of ``net``; raise a specific error on the first violation."""
    if net.n < 1:
        raise DimensionMismatch("a network needs at least one generator")
    if net.n_bar < 0:
        raise DimensionMismatch("n_bar must be nonnegative")
    for name in ("chi_gen", "M", "E"):
        v = getattr(net, name)
        if not np.all(v > 0):
            k = int(np.argmin(v > 0))
            raise NonpositiveParameter(f"{name}[{k + 1}] = {v[k]} must be > 0")
    if not np.all(net.D >= 0):
        k = int(np.argmin(net.D >= 0))
        raise NonpositiveParameter(f"D[{k + 1}] = {net.D[k]} must be >= 0")

    nb = net.n_bus
    seen = set()
    for ln in net.lines:
        if not (1 <= ln.i <= nb and 1 <= ln.j <= nb) or ln.i == ln.j:
            raise BadBusIndex(
                f"line ({ln.i},{ln.j}) must join two distinct buses in 1..{nb}"
            )
        key = (min(ln.i, ln.j), max(ln.i, ln.j))
        if key in seen:
            raise DuplicateLine(f"more than one line between buses {key[0]} and {key[1]}")
        seen.add(key)
        if not ln.chi > 0:
            raise NonpositiveParameter(
                f"line ({ln.i},{ln.j}) reactance {ln.chi} must be > 0"
            )

    # Connectivity of the bus graph by breadth-first search from bus 1.
    adj = [[] for _ in range(nb)]
    for ln in net.lines:
        adj[ln.i - 1].append(ln.j - 1)
        adj[ln.j - 1].append(ln.i - 1)
    reached = np.zeros(nb, dtype=bool)
    queue = deque([0])
    reached[0] = True
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not reached[v]:
                reached[v] = True
                queue.append(v)
    if not reached.all():
        missing = int(np.argmin(reached)) + 1
        raise DisconnectedNetwork(f"bus {missing} is not reachable from bus 1")


def build_laplacian(net: PowerNetwork) -> LaplacianBlocks:
    """Assemble the weighted Laplacian of the bus network and its blocks.

    Entry rule: L[i, j] = -1/chi_ij for a line between buses i and j, and the
    diagonal holds the negated row sums.
    """
    nb = net.n_bus
    L = np.zeros((nb, nb))
    for ln in net.lines:
        a, b = ln.i - 1, ln.j - 1
        w = 1.0 / ln.chi
        L[a, b] -= w
        L[b, a] -= w
        L[a, a] += w
        L[b, b] += w
    n = net.n
    blocks = LaplacianBlocks(
        L=_freeze(L),
        L11=_freeze(L[:n, :n]),
        L12=_freeze(L[:n, n:]),
        L22=_freeze(L[n:, n:]),
    )
    return blocks


def build_LD(net: PowerNetwork) -> np.ndarray:
    """Positive diagonal reactance matrix diag(1/chi_1, ..., 1/chi_n)."""
    return np.diag(1.0 / net.chi_gen)
