"""Question bank, roster, and the per-student session state machine."""

from .model import Question, QuestionBank, Roster, default_bank, load_question_bank
from .session import (
    Evaluation,
    Phase,
    ResponseRecord,
    Session,
    Summary,
    acknowledge_feedback,
    next_question,
    session_summary,
    start_session,
    submit_detection,
)

__all__ = [
    "Evaluation",
    "Phase",
    "Question",
    "QuestionBank",
    "ResponseRecord",
    "Roster",
    "Session",
    "Summary",
    "acknowledge_feedback",
    "default_bank",
    "load_question_bank",
    "next_question",
    "session_summary",
    "start_session",
    "submit_detection",
]
