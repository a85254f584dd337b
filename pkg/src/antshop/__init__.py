"""Ant-colony search for job-shop schedules.

The package splits into small layers: `instances` holds the problem data
and file format, `graph` the incremental construction state, `colony` the
ant search itself, `schedule` decoding and validation, `oracle` a brute
force reference, and `harness` the multi-execution benchmark machinery that
`cli` exposes as a command line tool.
"""

from .colony import (
    AcoParams,
    AntPath,
    ColonyResult,
    IncMode,
    InitMode,
    PheromoneMatrix,
    run_colony,
    select_next,
    transition_probabilities,
)
from .graph import InfeasibleMoveError, SearchState, attractiveness
from .harness import (
    ExperimentConfig,
    RunStats,
    compute_stats,
    load_config,
    run_experiment,
    sweep,
)
from .instances import (
    Instance,
    Op,
    OpId,
    ParseError,
    bundled_names,
    known_optimum,
    load_bundled,
    load_instance,
    load_manifest,
    parse_instance,
    resolve_instance,
    serialize_instance,
)
from .oracle import (
    OracleResult,
    SequenceCapExceeded,
    exhaustive_optimum,
    sequence_count,
)
from .schedule import (
    DecodeError,
    Schedule,
    Violation,
    decode,
    render_gantt,
    schedule_from_json,
    schedule_to_json,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AcoParams",
    "AntPath",
    "ColonyResult",
    "DecodeError",
    "ExperimentConfig",
    "IncMode",
    "InfeasibleMoveError",
    "InitMode",
    "Instance",
    "Op",
    "OpId",
    "OracleResult",
    "ParseError",
    "PheromoneMatrix",
    "RunStats",
    "Schedule",
    "SearchState",
    "SequenceCapExceeded",
    "Violation",
    "attractiveness",
    "bundled_names",
    "compute_stats",
    "decode",
    "exhaustive_optimum",
    "known_optimum",
    "load_bundled",
    "load_config",
    "load_instance",
    "load_manifest",
    "parse_instance",
    "render_gantt",
    "resolve_instance",
    "run_colony",
    "run_experiment",
    "schedule_from_json",
    "schedule_to_json",
    "select_next",
    "sequence_count",
    "serialize_instance",
    "sweep",
    "transition_probabilities",
    "validate",
]
