"""Event records and their JSON Lines encoding.

One event per line: {"seq": int, "ts": RFC-3339 UTC, "kind": str, ...payload}.
`seq` is the ordering authority; timestamps are informational.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum


class EventKind(str, Enum):
    CLASS_CREATED = "ClassCreated"
    STUDENT_REGISTERED = "StudentRegistered"
    SESSION_STARTED = "SessionStarted"
    QUESTION_ASKED = "QuestionAsked"
    CARD_DETECTED = "CardDetected"
    EVALUATED = "Evaluated"
    FEEDBACK_ACKNOWLEDGED = "FeedbackAcknowledged"
    SESSION_ENDED = "SessionEnded"


_REQUIRED_FIELDS: dict[EventKind, frozenset[str]] = {
    EventKind.CLASS_CREATED: frozenset({"class_id"}),
    EventKind.STUDENT_REGISTERED: frozenset({"class_id", "student_id", "display_name"}),
    EventKind.SESSION_STARTED: frozenset(
        {"session_id", "class_id", "student_id", "bank_version", "seed"}
    ),
    EventKind.QUESTION_ASKED: frozenset({"session_id", "question_id"}),
    EventKind.CARD_DETECTED: frozenset(
        {"session_id", "question_id", "emotion", "confidence", "source"}
    ),
    EventKind.EVALUATED: frozenset(
        {"session_id", "question_id", "emotion", "appropriate"}
    ),
    EventKind.FEEDBACK_ACKNOWLEDGED: frozenset({"session_id", "question_id"}),
    EventKind.SESSION_ENDED: frozenset({"session_id"}),
}

_OPTIONAL_FIELDS: dict[EventKind, frozenset[str]] = {
    EventKind.FEEDBACK_ACKNOWLEDGED: frozenset({"note"}),
}


@dataclass(frozen=True)
class Event:
    seq: int
    ts: datetime
    kind: EventKind
    payload: dict

    def __post_init__(self):
        validate_payload(self.kind, self.payload)
        if self.seq < 1:
            raise ValueError("seq starts at 1")
        if self.ts.tzinfo is None:
            raise ValueError("event timestamps must be timezone-aware")


def validate_payload(kind: EventKind, payload: dict) -> None:
    required = _REQUIRED_FIELDS[kind]
    optional = _OPTIONAL_FIELDS.get(kind, frozenset())
    missing = required - payload.keys()
    if missing:
        raise ValueError(f"{kind.value} payload missing fields: {', '.join(sorted(missing))}")
    extra = payload.keys() - required - optional
    if extra:
        raise ValueError(f"{kind.value} payload has unknown fields: {', '.join(sorted(extra))}")


def format_ts(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def parse_ts(raw: str) -> datetime:
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    ts = datetime.fromisoformat(raw)
    if ts.tzinfo is None:
        raise ValueError("timestamp lacks a UTC offset")
    return ts.astimezone(timezone.utc)


def to_json_line(event: Event) -> str:
    doc = {"seq": event.seq, "ts": format_ts(event.ts), "kind": event.kind.value}
    doc.update(event.payload)
    return json.dumps(doc, ensure_ascii=False, separators=(", ", ": "))


def from_json_line(line: str) -> Event:
    doc = json.loads(line)
    if not isinstance(doc, dict):
        raise ValueError("event line must be a JSON object")
    try:
        seq = doc.pop("seq")
        ts = parse_ts(doc.pop("ts"))
        kind = EventKind(doc.pop("kind"))
    except KeyError as exc:
        raise ValueError(f"event line missing {exc.args[0]!r}") from None
    if not isinstance(seq, int):
        raise ValueError("seq must be an integer")
    return Event(seq=seq, ts=ts, kind=kind, payload=doc)
