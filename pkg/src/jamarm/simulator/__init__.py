"""Deterministic teleoperation simulator: events, sessions, wire protocol."""

from .events import (
    LOAD_POINTS,
    LoadEvent,
    PressureEvent,
    ResetEvent,
    ScriptError,
    parse_script,
    parse_script_file,
)
from .serialize import canonical_json
from .session import (
    EventError,
    PlantConfig,
    SessionConfig,
    SessionState,
    default_segments,
    load_session_config,
    run_script,
    session_config_from_json,
    snapshot_payload,
    snapshot_serialize,
    step,
    trajectory_serialize,
)

__all__ = [
    "LOAD_POINTS",
    "LoadEvent",
    "PressureEvent",
    "ResetEvent",
    "ScriptError",
    "parse_script",
    "parse_script_file",
    "canonical_json",
    "EventError",
    "PlantConfig",
    "SessionConfig",
    "SessionState",
    "default_segments",
    "load_session_config",
    "run_script",
    "session_config_from_json",
    "snapshot_payload",
    "snapshot_serialize",
    "step",
    "trajectory_serialize",
]
