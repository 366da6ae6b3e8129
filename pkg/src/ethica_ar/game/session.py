"""Per-student session state machine.

One session walks a student through every bank question exactly once:

    AwaitingQuestion --draw--> AwaitingCard --appropriate--> AwaitingQuestion
                                           --inappropriate--> ShowingFeedback
    ShowingFeedback --acknowledge--> AwaitingQuestion
    (either path lands in Complete once no questions remain)

Sessions are immutable values; every operation returns the successor state,
which keeps replay-from-log trivially equal to live execution. Question
order is drawn without replacement from a PRNG seeded per session, so a
(seed, bank) pair always produces the same order.
"""

from __future__ import annotations

import random
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum

from ..cards import ALL_CARDS, Emotion
from ..errors import SessionComplete, UnknownStudent, WrongPhase
from .model import Question, QuestionBank, Roster


class Phase(str, Enum):
    AWAITING_QUESTION = "AwaitingQuestion"
    AWAITING_CARD = "AwaitingCard"
    SHOWING_FEEDBACK = "ShowingFeedback"
    COMPLETE = "Complete"


@dataclass(frozen=True)
class ResponseRecord:
    question_id: str
    detected: Emotion
    appropriate: bool
    confidence: float
    feedback_shown: str | None
    teacher_note: str | None
    timestamp: datetime


@dataclass(frozen=True)
class Evaluation:
    """Outcome handed back to the caller after a card submission."""

    appropriate: bool
    media_cue: str | None
    feedback: str | None


@dataclass(frozen=True)
class Session:
    session_id: str
    class_id: str
    student_id: str
    bank_version: str
    remaining: frozenset[str]
    current: str | None
    phase: Phase
    responses: tuple[ResponseRecord, ...]
    rng_seed: int
    draws: int  # questions drawn so far; replays the PRNG deterministically

    def summary(self) -> "Summary":
        return session_summary(self)


@dataclass(frozen=True)
class Summary:
    asked: int
    appropriate: int
    per_emotion: dict[Emotion, int]


def _now() -> datetime:
    return datetime.now(timezone.utc)


def start_session(
    roster: Roster,
    student_id: str,
    bank: QuestionBank,
    seed: int,
    session_id: str | None = None,
) -> Session:
    """Open a fresh session for a rostered student."""
    if not roster.has_student(student_id):
        raise UnknownStudent(f"student {student_id!r} is not in class {roster.class_id!r}")
    return Session(
        session_id=session_id if session_id is not None else uuid.uuid4().hex,
        class_id=roster.class_id,
        student_id=student_id,
        bank_version=bank.version,
        remaining=frozenset(bank.ids()),
        current=None,
        phase=Phase.AWAITING_QUESTION,
        responses=(),
        rng_seed=seed,
        draws=0,
    )


def _check_bank(session: Session, bank: QuestionBank) -> None:
    if bank.version != session.bank_version:
        raise ValueError(
            f"session was started with bank version {session.bank_version!r}, "
            f"got {bank.version!r}"
        )


def _draw(session: Session, bank: QuestionBank) -> str:
    """The next question id for this session state.

    Replays the session PRNG from its seed: draw k picks uniformly among the
    N-k ids left at that point. A pure function of (seed, draws, remaining).
    """
    rng = random.Random(session.rng_seed)
    total = len(bank)
    index = 0
    for size in range(total, total - session.draws - 1, -1):
        index = rng.randrange(size)
    ordered = sorted(session.remaining)
    return ordered[index]


def next_question(session: Session, bank: QuestionBank) -> tuple[Session, Question]:
    """Draw the next question (uniform, without replacement)."""
    _check_bank(session, bank)
    if session.phase is Phase.COMPLETE or not session.remaining:
        raise SessionComplete("all questions have been asked")
    if session.phase is not Phase.AWAITING_QUESTION:
        raise WrongPhase(Phase.AWAITING_QUESTION.value, session.phase.value)
    qid = _draw(session, bank)
    updated = replace(
        session,
        remaining=session.remaining - {qid},
        current=qid,
        phase=Phase.AWAITING_CARD,
        draws=session.draws + 1,
    )
    return updated, bank.question(qid)


def submit_detection(
    session: Session,
    detected: Emotion,
    confidence: float,
    bank: QuestionBank,
    now: datetime | None = None,
) -> tuple[Session, Evaluation]:
    """Record the card a student raised for the current question.

    An appropriate card advances straight to the next question (or
    completes the session); otherwise the session stops in ShowingFeedback
    until the teacher acknowledges the feedback panel.
    """
    _check_bank(session, bank)
    if session.phase is not Phase.AWAITING_CARD:
        raise WrongPhase(Phase.AWAITING_CARD.value, session.phase.value)
    if not 0.0 <= confidence <= 1.0:
        raise ValueError(f"confidence must be within [0, 1], got {confidence}")
    detected = Emotion(detected)
    assert session.current is not None
    question = bank.question(session.current)
    appropriate = question.is_appropriate(detected)

    if appropriate:
        evaluation = Evaluation(
            appropriate=True, media_cue=question.media_cue.get(detected), feedback=None
        )
        next_phase = Phase.AWAITING_QUESTION if session.remaining else Phase.COMPLETE
        next_current = None
    else:
        evaluation = Evaluation(
            appropriate=False, media_cue=None, feedback=question.feedback[detected]
        )
        next_phase = Phase.SHOWING_FEEDBACK
        next_current = session.current

    record = ResponseRecord(
        question_id=question.id,
        detected=detected,
        appropriate=appropriate,
        confidence=confidence,
        feedback_shown=evaluation.feedback,
        teacher_note=None,
        timestamp=now if now is not None else _now(),
    )
    updated = replace(
        session,
        current=next_current,
        phase=next_phase,
        responses=session.responses + (record,),
    )
    return updated, evaluation


def acknowledge_feedback(session: Session, teacher_note: str | None = None) -> Session:
    """Close the feedback panel, optionally recording the teacher's note on
    the child's spoken explanation."""
    if session.phase is not Phase.SHOWING_FEEDBACK:
        raise WrongPhase(Phase.SHOWING_FEEDBACK.value, session.phase.value)
    last = session.responses[-1]
    if teacher_note is not None:
        last = replace(last, teacher_note=teacher_note)
    return replace(
        session,
        current=None,
        phase=Phase.AWAITING_QUESTION if session.remaining else Phase.COMPLETE,
        responses=session.responses[:-1] + (last,),
    )


def session_summary(session: Session) -> Summary:
    """Counts derived purely from the recorded responses."""
    per_emotion = {emotion: 0 for emotion in ALL_CARDS}
    appropriate = 0
    for record in session.responses:
        per_emotion[record.detected] += 1
        appropriate += record.appropriate
    return Summary(
        asked=len(session.responses), appropriate=appropriate, per_emotion=per_emotion
    )


def check_invariants(session: Session, bank: QuestionBank) -> None:
    """Assert the session bookkeeping is consistent; test helper."""
    all_ids = set(bank.ids())
    answered = {r.question_id for r in session.responses}
    current = {session.current} if session.current else set()
    assert session.remaining | answered | current == all_ids
    assert not (session.remaining & answered)
    assert not (session.remaining & current)
    assert (session.phase is Phase.COMPLETE) == (
        not session.remaining and session.current is None
    )
    if session.phase is Phase.SHOWING_FEEDBACK:
        assert session.current is not None
        assert session.responses[-1].question_id == session.current
