"""Network/partition JSON files and trajectory CSV serialization.

Network schema (generator ids must be exactly 1..n, non-generator bus ids
n+1..n+n_bar):

    {"generators":   [{"id": 1, "M": 1.0, "D": 1.0, "f": 0.0,
                       "E": 1.0, "chi": 1.0}, ...],
     "nongen_buses": [{"id": 6}, ...],
     "lines":        [{"from": 1, "to": 6, "chi": 1.0}, ...]}

Partitions are a JSON list of lists of generator ids.  Trajectories are CSV
with header t, delta_1..n, omega_1..n and optionally V_1..V_{n+n_bar},
theta_1..theta_{n+n_bar}; numbers carry 17 significant digits so files
round-trip bit-exactly.
"""

import json

import numpy as np

from .errors import FileFormatError
from .network import Line, PowerNetwork, validate_network
from .simulate import Trajectory
from .sync import Partition

_FLOAT = "{:.17g}"


def network_to_dict(net: PowerNetwork) -> dict:
    return {
        "generators": [
            {
                "id": i + 1,
                "M": float(net.M[i]),
                "D": float(net.D[i]),
                "f": float(net.f[i]),
                "E": float(net.E[i]),
                "chi": float(net.chi_gen[i]),
            }
            for i in range(net.n)
        ],
        "nongen_buses": [{"id": net.n + k + 1} for k in range(net.n_bar)],
        "lines": [{"from": ln.i, "to": ln.j, "chi": ln.chi} for ln in net.lines],
    }


def _field(obj: dict, key: str, where: str):
    if key not in obj:
        raise FileFormatError(f"missing field {where}.{key}")
    return obj[key]


def network_from_dict(doc: dict) -> PowerNetwork:
    """Parse and fully validate a network document."""
    if not isinstance(doc, dict):
        raise FileFormatError("network document must be a JSON object")
    gens = _field(doc, "generators", "network")
    nongen = _field(doc, "nongen_buses", "network")
    lines = _field(doc, "lines", "network")
    if not isinstance(gens, list) or not gens:
        raise FileFormatError("field generators must be a nonempty list")
    n = len(gens)
    try:
        gens = sorted(gens, key=lambda g: int(_field(g, "id", "generators[]")))
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"field generators[].id must be an integer: {exc}") from exc
    ids = [int(g["id"]) for g in gens]
    if ids != list(range(1, n + 1)):
        raise FileFormatError(
            f"field generators[].id must be exactly 1..{n}, got {ids}"
        )
    nongen_ids = sorted(int(_field(b, "id", "nongen_buses[]")) for b in nongen)
    n_bar = len(nongen_ids)
    if nongen_ids != list(range(n + 1, n + n_bar + 1)):
        raise FileFormatError(
            f"field nongen_buses[].id must be exactly {n + 1}..{n + n_bar}, got {nongen_ids}"
        )
    try:
        net = PowerNetwork(
            n=n,
            n_bar=n_bar,
            chi_gen=[float(_field(g, "chi", "generators[]")) for g in gens],
            lines=[
                Line(
                    int(_field(ln, "from", "lines[]")),
                    int(_field(ln, "to", "lines[]")),
                    float(_field(ln, "chi", "lines[]")),
                )
                for ln in lines
            ],
            M=[float(_field(g, "M", "generators[]")) for g in gens],
            D=[float(_field(g, "D", "generators[]")) for g in gens],
            f=[float(_field(g, "f", "generators[]")) for g in gens],
            E=[float(_field(g, "E", "generators[]")) for g in gens],
        )
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed network field: {exc}") from exc
    validate_network(net)
    return net


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"{path}: malformed JSON at byte {exc.pos}: {exc.msg}"
        ) from exc


def load_network(path) -> PowerNetwork:
    return network_from_dict(_load_json(path))


def save_network(net: PowerNetwork, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(network_to_dict(net), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_partition(path) -> Partition:
    doc = _load_json(path)
    if not isinstance(doc, list) or not all(isinstance(c, list) for c in doc):
        raise FileFormatError(f"{path}: partition must be a JSON list of lists")
    try:
        return Partition(tuple(tuple(int(i) for i in c) for c in doc))
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: partition entries must be integers") from exc


def save_partition(part: Partition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([list(c) for c in part.clusters], fh)
        fh.write("\n")


def trajectory_header(n: int, n_bus: int, with_voltages: bool) -> list:
    cols = ["t"]
    cols += [f"delta_{i}" for i in range(1, n + 1)]
    cols += [f"omega_{i}" for i in range(1, n + 1)]
    if with_voltages:
        cols += [f"V_{i}" for i in range(1, n_bus + 1)]
        cols += [f"theta_{i}" for i in range(1, n_bus + 1)]
    return cols


def write_trajectory_csv(traj: Trajectory, path) -> None:
    with_v = traj.V is not None
    n_bus = traj.V.shape[1] if with_v else 0
    header = trajectory_header(traj.n, n_bus, with_v)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for k in range(traj.t.shape[0]):
            row = [traj.t[k], *traj.delta[k], *traj.omega[k]]
            if with_v:
                row += [*traj.V[k], *traj.theta[k]]
            fh.write(",".join(_FLOAT.format(x) for x in row) + "\n")


def read_trajectory_csv(path) -> Trajectory:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    n = sum(1 for c in header if c.startswith("delta_"))
    n_bus = sum(1 for c in header if c.startswith("V_"))
    with_v = n_bus > 0
    if header != trajectory_header(n, n_bus, with_v):
        raise FileFormatError(f"{path}: unexpected trajectory header {header}")
    try:
        data = np.array([[float(x) for x in row] for row in rows])
    except ValueError as exc:
        raise FileFormatError(f"{path}: non-numeric trajectory entry: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != len(header):
        raise FileFormatError(f"{path}: inconsistent column count")
    t = data[:, 0]
    if np.any(np.diff(t) <= 0):
        raise FileFormatError(f"{path}: time column must be strictly increasing")
    delta = data[:, 1 : 1 + n]
    omega = data[:, 1 + n : 1 + 2 * n]
    V = theta = None
    if with_v:
        V = data[:, 1 + 2 * n : 1 + 2 * n + n_bus]
        theta = data[:, 1 + 2 * n + n_bus :]
    return Trajectory(t=t, delta=delta, omega=omega, V=V, theta=theta)
