from .bundles import (
    ALGORITHM_NAMES,
    AlgorithmBundle,
    BoundCheckFailed,
    DischargeReport,
    RunResult,
    all_bundles,
    build_registry,
    discharge_all,
    discharge_obligation,
    get_bundle,
    register_time_function,
)

__all__ = [
    "ALGORITHM_NAMES",
    "AlgorithmBundle",
    "BoundCheckFailed",
    "DischargeReport",
    "RunResult",
    "all_bundles",
    "build_registry",
    "discharge_all",
    "discharge_obligation",
    "get_bundle",
    "register_time_function",
]
