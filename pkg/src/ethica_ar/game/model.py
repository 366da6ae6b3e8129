"""Question bank and roster models.

The bank file is a JSON document (see `load_question_bank`); the shipped
Justice bank carries ten questions, each with the set of emotions counted
as appropriate, corrective feedback for every other emotion, and a media
cue naming the animation to play per emotion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from ..cards import ALL_CARDS, Emotion
from ..errors import SchemaError, ValidationError

ADVISED_ROSTER_MIN = 5
ADVISED_ROSTER_MAX = 10


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    probable: frozenset[Emotion]
    feedback: dict[Emotion, str]
    media_cue: dict[Emotion, str]

    def is_appropriate(self, emotion: Emotion) -> bool:
        return emotion in self.probable


@dataclass(frozen=True)
class QuestionBank:
    version: str
    topic: str
    questions: tuple[Question, ...]
    _index: dict[str, Question] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {q.id: q for q in self.questions})

    def __len__(self) -> int:
        return len(self.questions)

    def ids(self) -> tuple[str, ...]:
        return tuple(q.id for q in self.questions)

    def question(self, question_id: str) -> Question:
        try:
            return self._index[question_id]
        except KeyError:
            raise KeyError(f"no question {question_id!r} in bank") from None


def _require(condition: bool, message: str, error=SchemaError) -> None:
    if not condition:
        raise error(message)


def _parse_emotion(name, where: str) -> Emotion:
    _require(isinstance(name, str), f"{where}: emotion name must be a string")
    try:
        return Emotion.from_token(name)
    except ValueError:
        raise SchemaError(
            f"{where}: emotion must be one of happy, sad, angry, surprised; got {name!r}"
        ) from None


def load_question_bank(document: str) -> QuestionBank:
    """Parse and validate a question-bank JSON document.

    Malformed structure (bad JSON, wrong types, unknown emotion names)
    raises SchemaError; well-formed content that breaks bank invariants
    (duplicate ids, empty probable set, missing feedback or media cue)
    raises ValidationError.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None

    _require(isinstance(data, dict), "bank document must be a JSON object")
    _require(isinstance(data.get("version"), str), "bank needs a string 'version'")
    _require(isinstance(data.get("topic"), str), "bank needs a string 'topic'")
    _require(isinstance(data.get("questions"), list), "bank needs a 'questions' array")

    questions = []
    seen_ids = set()
    for i, raw in enumerate(data["questions"]):
        where = f"questions[{i}]"
        _require(isinstance(raw, dict), f"{where} must be an object")
        qid = raw.get("id")
        _require(isinstance(qid, str) and qid, f"{where} needs a non-empty string 'id'")
        text = raw.get("text")
        _require(isinstance(text, str) and text, f"{where} needs a non-empty string 'text'")
        _require(isinstance(raw.get("probable"), list), f"{where} needs a 'probable' array")
        _require(isinstance(raw.get("feedback"), dict), f"{where} needs a 'feedback' object")
        _require(isinstance(raw.get("media_cue"), dict), f"{where} needs a 'media_cue' object")

        if qid in seen_ids:
            raise ValidationError(f"duplicate question id {qid!r}")
        seen_ids.add(qid)

        probable = frozenset(_parse_emotion(name, where) for name in raw["probable"])
        if not probable:
            raise ValidationError(f"{where} ({qid}): probable set must not be empty")

        feedback = {}
        for name, value in raw["feedback"].items():
            emotion = _parse_emotion(name, where)
            _require(isinstance(value, str) and value, f"{where}: feedback text for {name} must be a non-empty string")
            feedback[emotion] = value
        media_cue = {}
        for name, value in raw["media_cue"].items():
            emotion = _parse_emotion(name, where)
            _require(isinstance(value, str) and value, f"{where}: media cue for {name} must be a non-empty string")
            media_cue[emotion] = value

        for emotion in ALL_CARDS:
            if emotion not in probable and emotion not in feedback:
                raise ValidationError(
                    f"{where} ({qid}): missing feedback for non-probable emotion {emotion.token}"
                )
            if emotion in probable and emotion not in media_cue:
                raise ValidationError(
                    f"{where} ({qid}): missing media cue for probable emotion {emotion.token}"
                )

        questions.append(
            Question(id=qid, text=text, probable=probable, feedback=feedback, media_cue=media_cue)
        )

    return QuestionBank(
        version=data["version"], topic=data["topic"], questions=tuple(questions)
    )


def default_bank() -> QuestionBank:
    """The shipped Justice bank."""
    document = (
        resources.files("ethica_ar.game").joinpath("data/justice_bank.json").read_text("utf-8")
    )
    return load_question_bank(document)


@dataclass(frozen=True)
class Roster:
    class_id: str
    students: tuple[tuple[str, str], ...]  # (student_id, display_name)

    def __post_init__(self):
        ids = [sid for sid, _ in self.students]
        if len(ids) != len(set(ids)):
            raise ValidationError(f"duplicate student ids in class {self.class_id!r}")

    def student_ids(self) -> tuple[str, ...]:
        return tuple(sid for sid, _ in self.students)

    def has_student(self, student_id: str) -> bool:
        return any(sid == student_id for sid, _ in self.students)

    def size_advisory(self) -> str | None:
        """Advisory warning when the class size leaves the recommended
        5-10 band; never an error."""
        n = len(self.students)
        if n < ADVISED_ROSTER_MIN:
            return (
                f"class has {n} student(s); the game is designed for "
                f"{ADVISED_ROSTER_MIN} to {ADVISED_ROSTER_MAX}"
            )
        if n > ADVISED_ROSTER_MAX:
            return (
                f"class has {n} students, above the designed range of "
                f"{ADVISED_ROSTER_MIN} to {ADVISED_ROSTER_MAX}"
            )
        return None
