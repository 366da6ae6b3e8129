"""Couples game transitions to the event log.

The EventLog replays every appended event through the game state machine,
so its world state *is* the live state. Each director method peeks the next
transition with the pure game functions, then appends the matching events;
the log's own step validation re-runs the transition and would reject any
divergence. That construction makes "state equals replay of the log" hold
by definition rather than by discipline.

Calls touching one session must be serialized by the caller (the HTTP layer
keeps one lock per session); calls for different sessions may interleave.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from datetime import datetime, timezone

from .cards import Emotion
from .errors import UnknownEntity, WrongPhase
from .game import Evaluation, Phase, Question, QuestionBank, Roster, Session
from .game.session import next_question, start_session, submit_detection
from .store import EventKind, EventLog
from .store.replay import SessionState


def _now() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(frozen=True)
class SubmitOutcome:
    session: Session
    evaluation: Evaluation
    ended: bool


class GameDirector:
    def __init__(self, log: EventLog):
        self.log = log

    @property
    def bank(self) -> QuestionBank:
        return self.log.bank

    # -- entities -------------------------------------------------------

    def create_class(self, class_id: str, ts: datetime | None = None) -> Roster:
        self.log.append(EventKind.CLASS_CREATED, {"class_id": class_id}, ts)
        return self.log.state.roster(class_id)

    def register_student(
        self,
        class_id: str,
        student_id: str,
        display_name: str = "",
        ts: datetime | None = None,
    ) -> Roster:
        if class_id not in self.log.state.classes:
            raise UnknownEntity(f"unknown class {class_id!r}")
        self.log.append(
            EventKind.STUDENT_REGISTERED,
            {
                "class_id": class_id,
                "student_id": student_id,
                "display_name": display_name,
            },
            ts,
        )
        return self.log.state.roster(class_id)

    # -- sessions -------------------------------------------------------

    def start_session(
        self,
        class_id: str,
        student_id: str,
        seed: int,
        session_id: str | None = None,
        ts: datetime | None = None,
    ) -> Session:
        roster = self.log.state.roster(class_id)
        if not roster.has_student(student_id):
            raise UnknownEntity(f"unknown student {student_id!r} in class {class_id!r}")
        session_id = session_id if session_id is not None else uuid.uuid4().hex
        self.log.append(
            EventKind.SESSION_STARTED,
            {
                "session_id": session_id,
                "class_id": class_id,
                "student_id": student_id,
                "bank_version": self.bank.version,
                "seed": seed,
            },
            ts,
        )
        return self.session(session_id)

    def session_entry(self, session_id: str) -> SessionState:
        return self.log.state.session_state(session_id)

    def session(self, session_id: str) -> Session:
        return self.session_entry(session_id).session

    def draw_question(
        self, session_id: str, ts: datetime | None = None
    ) -> tuple[Session, Question]:
        session = self.session(session_id)
        _, question = next_question(session, self.bank)  # peek; step() re-runs it
        self.log.append(
            EventKind.QUESTION_ASKED,
            {"session_id": session_id, "question_id": question.id},
            ts,
        )
        return self.session(session_id), question

    def current_question(self, session_id: str) -> Question | None:
        session = self.session(session_id)
        return self.bank.question(session.current) if session.current else None

    def submit_card(
        self,
        session_id: str,
        emotion: Emotion,
        confidence: float,
        source: str = "camera",
        ts: datetime | None = None,
    ) -> SubmitOutcome:
        session = self.session(session_id)
        if session.phase is not Phase.AWAITING_CARD:
            raise WrongPhase(Phase.AWAITING_CARD.value, session.phase.value)
        ts = ts if ts is not None else _now()
        emotion = Emotion(emotion)
        # peek the evaluation; the log's replay of Evaluated recomputes and
        # cross-checks it
        _, evaluation = submit_detection(session, emotion, confidence, self.bank, now=ts)
        assert session.current is not None
        self.log.append(
            EventKind.CARD_DETECTED,
            {
                "session_id": session_id,
                "question_id": session.current,
                "emotion": emotion.token,
                "confidence": confidence,
                "source": source,
            },
            ts,
        )
        self.log.append(
            EventKind.EVALUATED,
            {
                "session_id": session_id,
                "question_id": session.current,
                "emotion": emotion.token,
                "appropriate": evaluation.appropriate,
            },
            ts,
        )
        ended = self._end_if_complete(session_id, ts)
        return SubmitOutcome(
            session=self.session(session_id), evaluation=evaluation, ended=ended
        )

    def acknowledge(
        self, session_id: str, note: str | None = None, ts: datetime | None = None
    ) -> Session:
        session = self.session(session_id)
        if session.phase is not Phase.SHOWING_FEEDBACK:
            raise WrongPhase(Phase.SHOWING_FEEDBACK.value, session.phase.value)
        ts = ts if ts is not None else _now()
        payload = {"session_id": session_id, "question_id": session.current}
        if note is not None:
            payload["note"] = note
        self.log.append(EventKind.FEEDBACK_ACKNOWLEDGED, payload, ts)
        self._end_if_complete(session_id, ts)
        return self.session(session_id)

    def _end_if_complete(self, session_id: str, ts: datetime) -> bool:
        entry = self.session_entry(session_id)
        if entry.session.phase is Phase.COMPLETE and not entry.ended:
            self.log.append(EventKind.SESSION_ENDED, {"session_id": session_id}, ts)
            return True
        return False
