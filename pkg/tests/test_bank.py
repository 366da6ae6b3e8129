import json

import pytest

from ethica_ar.cards import ALL_CARDS, Emotion
from ethica_ar.errors import SchemaError, ValidationError
from ethica_ar.game import default_bank, load_question_bank

# the published probable-answer table, transcribed independently
PROBABLE_ANSWERS = {
    "q1": {Emotion.SAD, Emotion.ANGRY},
    "q2": {Emotion.SAD, Emotion.ANGRY},
    "q3": {Emotion.HAPPY, Emotion.SURPRISED},
    "q4": {Emotion.SAD},
    "q5": {Emotion.ANGRY},
    "q6": {Emotion.ANGRY, Emotion.SAD},
    "q7": {Emotion.SAD},
    "q8": {Emotion.HAPPY},
    "q9": {Emotion.HAPPY},
    "q10": {Emotion.SURPRISED, Emotion.HAPPY},
}


def test_shipped_bank_has_ten_questions():
    bank = default_bank()
    assert len(bank) == 10
    assert bank.topic == "Justice"
    assert bank.ids() == tuple(f"q{i}" for i in range(1, 11))


def test_shipped_bank_matches_probable_answer_table():
    bank = default_bank()
    for qid, probable in PROBABLE_ANSWERS.items():
        assert bank.question(qid).probable == probable, qid


def test_q3_text_and_probable():
    q3 = default_bank().question("q3")
    assert q3.text == "Look! What a beautiful cat it is."
    assert q3.probable == {Emotion.HAPPY, Emotion.SURPRISED}


def test_q1_rain_question():
    q1 = default_bank().question("q1")
    assert q1.text.startswith("It is raining today")
    assert q1.probable == {Emotion.SAD, Emotion.ANGRY}


def test_q10_dress_question():
    q10 = default_bank().question("q10")
    assert "I just love my dress" in q10.text
    assert q10.probable == {Emotion.SURPRISED, Emotion.HAPPY}


def test_every_non_probable_emotion_has_feedback():
    for q in default_bank().questions:
        for emotion in ALL_CARDS:
            if emotion not in q.probable:
                assert q.feedback[emotion]


def test_every_probable_emotion_has_media_cue():
    for q in default_bank().questions:
        for emotion in q.probable:
            assert q.media_cue[emotion]


def _minimal_bank(questions):
    return json.dumps({"version": "t", "topic": "t", "questions": questions})


def _question(qid="qa", probable=("sad",)):
    feedback = {
        e.token: f"usually not {e.token}" for e in ALL_CARDS if e.token not in probable
    }
    return {
        "id": qid,
        "text": "Something happened.",
        "probable": list(probable),
        "feedback": feedback,
        "media_cue": {e.token: f"cue-{e.token}" for e in ALL_CARDS},
    }


def test_duplicate_question_id_rejected():
    doc = _minimal_bank([_question("dup"), _question("dup")])
    with pytest.raises(ValidationError):
        load_question_bank(doc)


def test_empty_probable_set_rejected():
    q = _question(probable=())
    q["feedback"] = {e.token: "x" for e in ALL_CARDS}
    with pytest.raises(ValidationError):
        load_question_bank(_minimal_bank([q]))


def test_missing_feedback_rejected():
    q = _question(probable=("sad",))
    del q["feedback"]["happy"]
    with pytest.raises(ValidationError):
        load_question_bank(_minimal_bank([q]))


def test_unknown_emotion_name_rejected():
    q = _question()
    q["probable"] = ["melancholic"]
    with pytest.raises(SchemaError):
        load_question_bank(_minimal_bank([q]))


def test_malformed_json_rejected():
    with pytest.raises(SchemaError):
        load_question_bank("{not json")


def test_non_object_document_rejected():
    with pytest.raises(SchemaError):
        load_question_bank("[1, 2, 3]")


def test_missing_version_rejected():
    with pytest.raises(SchemaError):
        load_question_bank(json.dumps({"topic": "t", "questions": []}))
