"""Rebuilding world state by folding the event log.

`step` applies one event; `replay` folds a whole log, wrapping any
inconsistency into CorruptLog with the offending sequence number. Session
reconstruction drives the actual game state machine, so a replayed session
is equal, field for field, to the live session that emitted the events.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..cards import Emotion
from ..errors import CorruptLog, DuplicateEntity, EthicaArError, UnknownEntity
from ..game import QuestionBank, Roster, Session, default_bank
from ..game.session import (
    Phase,
    acknowledge_feedback,
    next_question,
    start_session,
    submit_detection,
)
from .events import Event, EventKind

DETECTION_SOURCES = ("camera", "manual")


@dataclass
class SessionState:
    session: Session
    pending: tuple[Emotion, float, str] | None = None  # awaiting Evaluated
    ended: bool = False


@dataclass
class WorldState:
    classes: dict[str, dict[str, str]] = field(default_factory=dict)
    sessions: dict[str, SessionState] = field(default_factory=dict)
    last_seq: int = 0

    def roster(self, class_id: str) -> Roster:
        try:
            students = self.classes[class_id]
        except KeyError:
            raise UnknownEntity(f"unknown class {class_id!r}") from None
        return Roster(class_id=class_id, students=tuple(students.items()))

    def session_state(self, session_id: str) -> SessionState:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise UnknownEntity(f"unknown session {session_id!r}") from None

    def student_exists(self, student_id: str) -> bool:
        return any(student_id in students for students in self.classes.values())


def step(state: WorldState, event: Event, bank: QuestionBank) -> WorldState:
    """Apply one event in place; raises on any inconsistency."""
    payload = event.payload
    kind = event.kind

    if kind is EventKind.CLASS_CREATED:
        class_id = payload["class_id"]
        if class_id in state.classes:
            raise DuplicateEntity(f"class {class_id!r} already exists")
        state.classes[class_id] = {}

    elif kind is EventKind.STUDENT_REGISTERED:
        class_id = payload["class_id"]
        if class_id not in state.classes:
            raise UnknownEntity(f"unknown class {class_id!r}")
        student_id = payload["student_id"]
        if student_id in state.classes[class_id]:
            raise DuplicateEntity(f"student {student_id!r} already in class {class_id!r}")
        state.classes[class_id][student_id] = payload["display_name"]

    elif kind is EventKind.SESSION_STARTED:
        session_id = payload["session_id"]
        if session_id in state.sessions:
            raise DuplicateEntity(f"session {session_id!r} already exists")
        if payload["bank_version"] != bank.version:
            raise ValueError(
                f"log was written with bank version {payload['bank_version']!r}, "
                f"replaying with {bank.version!r}"
            )
        roster = state.roster(payload["class_id"])
        session = start_session(
            roster,
            payload["student_id"],
            bank,
            seed=payload["seed"],
            session_id=session_id,
        )
        state.sessions[session_id] = SessionState(session=session)

    elif kind is EventKind.QUESTION_ASKED:
        entry = state.session_state(payload["session_id"])
        _require_active(entry)
        session, question = next_question(entry.session, bank)
        if question.id != payload["question_id"]:
            raise ValueError(
                f"logged question {payload['question_id']!r} but the session PRNG "
                f"draws {question.id!r}"
            )
        entry.session = session

    elif kind is EventKind.CARD_DETECTED:
        entry = state.session_state(payload["session_id"])
        _require_active(entry)
        if entry.pending is not None:
            raise ValueError("detection logged while another awaits evaluation")
        if entry.session.current != payload["question_id"]:
            raise ValueError(
                f"detection for {payload['question_id']!r} but current question "
                f"is {entry.session.current!r}"
            )
        source = payload["source"]
        if source not in DETECTION_SOURCES:
            raise ValueError(f"unknown detection source {source!r}")
        entry.pending = (
            Emotion.from_token(payload["emotion"]),
            float(payload["confidence"]),
            source,
        )

    elif kind is EventKind.EVALUATED:
        entry = state.session_state(payload["session_id"])
        _require_active(entry)
        if entry.pending is None:
            raise ValueError("evaluation without a preceding detection")
        emotion, confidence, _source = entry.pending
        if payload["question_id"] != entry.session.current:
            raise ValueError("evaluation references a different question")
        if Emotion.from_token(payload["emotion"]) is not emotion:
            raise ValueError("evaluation emotion differs from the detection")
        session, evaluation = submit_detection(
            entry.session, emotion, confidence, bank, now=event.ts
        )
        if evaluation.appropriate != bool(payload["appropriate"]):
            raise ValueError(
                f"logged appropriate={payload['appropriate']} contradicts the bank"
            )
        entry.session = session
        entry.pending = None

    elif kind is EventKind.FEEDBACK_ACKNOWLEDGED:
        entry = state.session_state(payload["session_id"])
        _require_active(entry)
        if entry.session.current != payload["question_id"]:
            raise ValueError("acknowledgement references a different question")
        entry.session = acknowledge_feedback(entry.session, payload.get("note"))

    elif kind is EventKind.SESSION_ENDED:
        entry = state.session_state(payload["session_id"])
        _require_active(entry)
        if entry.session.phase is not Phase.COMPLETE:
            raise ValueError("session ended before reaching Complete")
        entry.ended = True

    else:  # pragma: no cover - enum is exhaustive
        raise ValueError(f"unhandled event kind {kind}")

    state.last_seq = event.seq
    return state


def _require_active(entry: SessionState) -> None:
    if entry.ended:
        raise ValueError("event for an already-ended session")


def replay(events, bank: QuestionBank | None = None) -> WorldState:
    """Fold events into a fresh WorldState.

    Sequence numbers must be contiguous from 1; any violation or
    inconsistent event raises CorruptLog naming the offending seq.
    """
    if bank is None:
        bank = default_bank()
    state = WorldState()
    for event in events:
        if event.seq != state.last_seq + 1:
            raise CorruptLog(event.seq, f"expected seq {state.last_seq + 1}")
        try:
            step(state, event, bank)
        except (EthicaArError, ValueError, KeyError) as exc:
            raise CorruptLog(event.seq, str(exc)) from exc
    return state
