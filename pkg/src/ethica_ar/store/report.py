"""Per-student progress derived from the event log.

The shipped metric is deliberately simple: how often the raised card was an
appropriate reaction, overall and per session over time, plus a confusion
breakdown of which emotion was chosen against each kind of expected answer
set. The raw log keeps everything needed for richer analysis later.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import UnknownEntity
from ..game import QuestionBank, default_bank
from .replay import WorldState, replay


def probable_signature(probable) -> str:
    """Stable label for an expected-answer set, e.g. 'angry|sad'."""
    return "|".join(sorted(e.token for e in probable))


@dataclass(frozen=True)
class ProgressReport:
    student_id: str
    sessions_played: int
    questions_answered: int
    appropriate_count: int
    appropriate_rate: float | None  # absent (None) when nothing answered
    per_emotion_confusion: dict[str, dict[str, int]]
    trend: list[float]  # one rate per answered session, in log order

    def to_dict(self) -> dict:
        return {
            "student_id": self.student_id,
            "sessions_played": self.sessions_played,
            "questions_answered": self.questions_answered,
            "appropriate_count": self.appropriate_count,
            "appropriate_rate": self.appropriate_rate,
            "per_emotion_confusion": self.per_emotion_confusion,
            "trend": self.trend,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        rate = "-" if self.appropriate_rate is None else f"{self.appropriate_rate:.3f}"
        lines = [
            f"student {self.student_id}: {self.sessions_played} session(s), "
            f"{self.questions_answered} answered, rate {rate}",
        ]
        if self.trend:
            lines.append("  trend: " + " -> ".join(f"{r:.3f}" for r in self.trend))
        for signature, counts in sorted(self.per_emotion_confusion.items()):
            chosen = ", ".join(f"{tok}={n}" for tok, n in sorted(counts.items()))
            lines.append(f"  expected [{signature}]: {chosen}")
        return "\n".join(lines)


def report_from_state(
    state: WorldState, student_id: str, bank: QuestionBank | None = None
) -> ProgressReport:
    if bank is None:
        bank = default_bank()
    if not state.student_exists(student_id):
        raise UnknownEntity(f"unknown student {student_id!r}")

    sessions = [
        entry
        for entry in state.sessions.values()
        if entry.session.student_id == student_id
    ]
    answered = 0
    appropriate = 0
    confusion: dict[str, dict[str, int]] = {}
    trend: list[float] = []
    for entry in sessions:
        responses = entry.session.responses
        answered += len(responses)
        session_good = sum(r.appropriate for r in responses)
        appropriate += session_good
        if responses:
            trend.append(session_good / len(responses))
        for record in responses:
            question = bank.question(record.question_id)
            signature = probable_signature(question.probable)
            counts = confusion.setdefault(signature, {})
            token = record.detected.token
            counts[token] = counts.get(token, 0) + 1

    return ProgressReport(
        student_id=student_id,
        sessions_played=len(sessions),
        questions_answered=answered,
        appropriate_count=appropriate,
        appropriate_rate=(appropriate / answered) if answered else None,
        per_emotion_confusion=confusion,
        trend=trend,
    )


def progress_report(
    student_id: str, events, bank: QuestionBank | None = None
) -> ProgressReport:
    """Replay `events` and derive the report for one student."""
    if bank is None:
        bank = default_bank()
    return report_from_state(replay(events, bank), student_id, bank)


def all_student_ids(state: WorldState) -> list[str]:
    ids = []
    for students in state.classes.values():
        ids.extend(students)
    return sorted(set(ids))
