"""Append-only event log, optionally file-backed as JSON Lines.

Single writer per log; appends validate sequence continuity and entity
references against the incrementally maintained world state before any byte
is written. Previously written bytes are never touched: the file is opened
in append mode and only ever grows.
"""

from __future__ import annotations

import threading
from datetime import datetime, timezone
from pathlib import Path

from ..errors import CorruptLog, SequenceGap, StorageFailure
from ..game import QuestionBank, default_bank
from .events import Event, EventKind, from_json_line, to_json_line
from .replay import WorldState, replay, step


def read_events(path: str | Path) -> list[Event]:
    """Parse a JSON Lines log file; CorruptLog carries the 1-based line
    number of the first bad line."""
    events = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    events.append(from_json_line(line))
                except (ValueError, KeyError) as exc:
                    raise CorruptLog(lineno, f"line {lineno}: {exc}") from None
    except OSError as exc:
        raise StorageFailure(f"cannot read event log {path}: {exc}") from None
    return events


def log_path_for_class(directory: str | Path, class_id: str) -> Path:
    return Path(directory) / f"events-{class_id}.jsonl"


class EventLog:
    """In-memory event sequence with an optional durable JSONL sink."""

    def __init__(self, path: str | Path | None = None, bank: QuestionBank | None = None):
        self._bank = bank if bank is not None else default_bank()
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._events: list[Event] = []
        self._fh = None

        if self._path is not None and self._path.exists():
            self._events = read_events(self._path)
        self._state = replay(self._events, self._bank)

        if self._path is not None:
            try:
                self._path.parent.mkdir(parents=True, exist_ok=True)
                self._fh = open(self._path, "a", encoding="utf-8")
            except OSError as exc:
                raise StorageFailure(f"cannot open event log {self._path}: {exc}") from None

    # -- reading ------------------------------------------------------------

    @property
    def events(self) -> tuple[Event, ...]:
        with self._lock:
            return tuple(self._events)

    @property
    def state(self) -> WorldState:
        """The world state after every appended event. Treat as read-only."""
        return self._state

    @property
    def bank(self) -> QuestionBank:
        return self._bank

    def next_seq(self) -> int:
        with self._lock:
            return len(self._events) + 1

    # -- writing ------------------------------------------------------------

    def append_event(self, event: Event) -> Event:
        """Validate and durably append one fully-formed event."""
        with self._lock:
            return self._append_locked(event)

    def append(
        self, kind: EventKind, payload: dict, ts: datetime | None = None
    ) -> Event:
        """Build and append the next event in sequence."""
        with self._lock:
            event = Event(
                seq=len(self._events) + 1,
                ts=ts if ts is not None else datetime.now(timezone.utc),
                kind=kind,
                payload=payload,
            )
            return self._append_locked(event)

    def _append_locked(self, event: Event) -> Event:
        expected = len(self._events) + 1
        if event.seq != expected:
            raise SequenceGap(f"expected seq {expected}, got {event.seq}")
        # validate against current state before committing anything; step()
        # only mutates once its checks pass
        step(self._state, event, self._bank)
        self._events.append(event)
        if self._fh is not None:
            try:
                self._fh.write(to_json_line(event) + "\n")
                self._fh.flush()
            except OSError as exc:
                raise StorageFailure(f"append failed: {exc}") from None
        return event

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def __enter__(self) -> "EventLog":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
