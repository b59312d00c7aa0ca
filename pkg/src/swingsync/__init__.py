"""Synchronization analysis and aggregation-based reduction of swing-equation networks."""

from .aggregation import (
    AggregationMatrix,
    aggregate,
    build_P,
    lift,
    lines_from_laplacian,
    project_initial,
)
from .errors import (
    BadBusIndex,
    BadIndex,
    DimensionMismatch,
    DisconnectedNetwork,
    DuplicateLine,
    FileFormatError,
    GridMismatch,
    InvalidPartition,
    NonFiniteState,
    NonLaplacianResult,
    NonpositiveParameter,
    SingularSystem,
    SwingSyncError,
)
from .io import (
    load_network,
    load_partition,
    network_from_dict,
    network_to_dict,
    read_trajectory_csv,
    save_network,
    save_partition,
    write_trajectory_csv,
)
from .kron import (
    KronSystem,
    gen_bus_phasors,
    kron_reduce,
    recover_gen_bus_voltages,
    recover_nongen_voltages,
)
from .network import (
    LaplacianBlocks,
    Line,
    PowerNetwork,
    build_laplacian,
    build_LD,
    validate_network,
)
from .simulate import (
    SwingState,
    Trajectory,
    compare,
    integrate,
    integrate_many,
    swing_rhs,
    with_bus_voltages,
)
from .sync import (
    DEFAULT_TOL,
    Partition,
    SyncReport,
    Violation,
    coarsest_equitable_refinement,
    in_S_ij,
    in_X_ij,
    pair_sync,
    pair_sync_general,
    singletons,
    strong_sync,
    validate_partition,
    weak_sync,
)

__all__ = [
    "AggregationMatrix",
    "BadBusIndex",
    "BadIndex",
    "DEFAULT_TOL",
    "DimensionMismatch",
    "DisconnectedNetwork",
    "DuplicateLine",
    "FileFormatError",
    "GridMismatch",
    "InvalidPartition",
    "KronSystem",
    "LaplacianBlocks",
    "Line",
    "NonFiniteState",
    "NonLaplacianResult",
    "NonpositiveParameter",
    "Partition",
    "PowerNetwork",
    "SingularSystem",
    "SwingState",
    "SwingSyncError",
    "SyncReport",
    "Trajectory",
    "Violation",
    "aggregate",
    "build_LD",
    "build_P",
    "build_laplacian",
    "coarsest_equitable_refinement",
    "compare",
    "gen_bus_phasors",
    "in_S_ij",
    "in_X_ij",
    "integrate",
    "integrate_many",
    "kron_reduce",
    "lift",
    "lines_from_laplacian",
    "load_network",
    "load_partition",
    "network_from_dict",
    "network_to_dict",
    "pair_sync",
    "pair_sync_general",
    "project_initial",
    "read_trajectory_csv",
    "recover_gen_bus_voltages",
    "recover_nongen_voltages",
    "save_network",
    "save_partition",
    "singletons",
    "strong_sync",
    "swing_rhs",
    "validate_network",
    "validate_partition",
    "weak_sync",
    "with_bus_voltages",
    "write_trajectory_csv",
]
