"""Append-only session log and derived progress reports."""

from .events import Event, EventKind, from_json_line, to_json_line
from .eventlog import EventLog, log_path_for_class, read_events
from .replay import SessionState, WorldState, replay, step
from .report import ProgressReport, all_student_ids, progress_report, report_from_state

__all__ = [
    "Event",
    "EventKind",
    "EventLog",
    "ProgressReport",
    "SessionState",
    "WorldState",
    "all_student_ids",
    "from_json_line",
    "log_path_for_class",
    "progress_report",
    "read_events",
    "replay",
    "report_from_state",
    "step",
    "to_json_line",
]
