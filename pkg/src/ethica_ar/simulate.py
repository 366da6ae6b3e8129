"""Desk-scale class simulation.

Simulated students raise a probable card with probability `accuracy`,
otherwise a uniformly chosen non-probable one; answers with feedback are
acknowledged immediately. This exists to exercise the whole stack (game,
log, reports) without a camera or a classroom, not to model children.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import datetime

from .cards import ALL_CARDS, Emotion
from .director import GameDirector
from .game import Phase, Question, Session
from .store import EventLog

DEFAULT_CLASS_ID = "sim-class"


@dataclass(frozen=True)
class SimProfile:
    students: int
    accuracy: float
    seed: int

    def __post_init__(self):
        if self.students < 1:
            raise ValueError("need at least one student")
        if not 0.0 <= self.accuracy <= 1.0:
            raise ValueError("accuracy must be within [0, 1]")


def pick_emotion(question: Question, accuracy: float, rng: random.Random) -> Emotion:
    probable = sorted(question.probable)
    others = sorted(set(ALL_CARDS) - question.probable)
    if not others or rng.random() < accuracy:
        return rng.choice(probable)
    return rng.choice(others)


def run_session(
    director: GameDirector,
    class_id: str,
    student_id: str,
    game_seed: int,
    answer: "callable",
    session_id: str | None = None,
    ts: datetime | None = None,
) -> Session:
    """Drive one full session; `answer(question) -> Emotion`."""
    session = director.start_session(
        class_id, student_id, seed=game_seed, session_id=session_id, ts=ts
    )
    while session.phase is not Phase.COMPLETE:
        session, question = director.draw_question(session.session_id, ts=ts)
        outcome = director.submit_card(
            session.session_id, answer(question), confidence=1.0, source="manual", ts=ts
        )
        session = outcome.session
        if session.phase is Phase.SHOWING_FEEDBACK:
            session = director.acknowledge(session.session_id, ts=ts)
    return session


def simulate_class(
    log: EventLog,
    profile: SimProfile,
    class_id: str = DEFAULT_CLASS_ID,
    ts: datetime | None = None,
) -> list[Session]:
    """Register `students` pupils and run one session each, deterministically
    for a given profile seed (timestamps aside)."""
    director = GameDirector(log)
    director.create_class(class_id, ts=ts)
    sessions = []
    for i in range(1, profile.students + 1):
        student_id = f"student-{i:02d}"
        director.register_student(class_id, student_id, f"Student {i}", ts=ts)
    for i in range(1, profile.students + 1):
        student_id = f"student-{i:02d}"
        behaviour = random.Random(profile.seed * 100003 + i)
        session = run_session(
            director,
            class_id,
            student_id,
            game_seed=profile.seed + i,
            answer=lambda q: pick_emotion(q, profile.accuracy, behaviour),
            session_id=f"sim-{class_id}-{student_id}",
            ts=ts,
        )
        sessions.append(session)
    return sessions
