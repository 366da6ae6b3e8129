from datetime import datetime, timezone

import pytest

from ethica_ar.cards import ALL_CARDS, Emotion
from ethica_ar.errors import SessionComplete, UnknownStudent, WrongPhase
from ethica_ar.game import (
    Phase,
    Roster,
    acknowledge_feedback,
    default_bank,
    next_question,
    session_summary,
    start_session,
    submit_detection,
)
from ethica_ar.game.session import check_invariants

BANK = default_bank()
ROSTER = Roster(
    class_id="preprimary-a",
    students=tuple((f"s{i}", f"Student {i}") for i in range(1, 7)),
)
T0 = datetime(2024, 3, 1, 9, 0, tzinfo=timezone.utc)


def fresh(seed=0):
    return start_session(ROSTER, "s1", BANK, seed=seed, session_id="sess-test")


def any_probable(question):
    return sorted(question.probable)[0]


def any_improbable(question):
    return sorted(set(ALL_CARDS) - question.probable)[0]


def drive_full_session(seed, pick, note=None):
    """Run a whole session; `pick` maps a Question to the raised Emotion."""
    session = fresh(seed)
    asked = []
    while session.phase is not Phase.COMPLETE:
        session, question = next_question(session, BANK)
        asked.append(question.id)
        session, evaluation = submit_detection(session, pick(question), 1.0, BANK, now=T0)
        if not evaluation.appropriate:
            session = acknowledge_feedback(session, note)
        check_invariants(session, BANK)
    return session, asked


def test_start_session_state():
    session = fresh()
    assert session.phase is Phase.AWAITING_QUESTION
    assert session.remaining == frozenset(BANK.ids())
    assert session.responses == ()
    assert session.current is None


def test_unknown_student_rejected():
    with pytest.raises(UnknownStudent):
        start_session(ROSTER, "nobody", BANK, seed=0)


def test_same_inputs_same_session_modulo_id():
    a = start_session(ROSTER, "s2", BANK, seed=9, session_id="x")
    b = start_session(ROSTER, "s2", BANK, seed=9, session_id="y")
    assert a.remaining == b.remaining and a.phase == b.phase
    assert a.rng_seed == b.rng_seed


def test_ten_draws_are_a_permutation():
    _, asked = drive_full_session(7, any_probable)
    assert sorted(asked) == sorted(BANK.ids())
    assert len(asked) == 10


def test_permutations_vary_across_seeds():
    orders = {tuple(drive_full_session(seed, any_probable)[1]) for seed in range(12)}
    assert len(orders) > 1


def test_draw_is_deterministic():
    s1, q1 = next_question(fresh(3), BANK)
    s2, q2 = next_question(fresh(3), BANK)
    assert q1.id == q2.id
    assert s1.remaining == s2.remaining


def test_next_question_wrong_phase():
    session, _ = next_question(fresh(), BANK)
    with pytest.raises(WrongPhase):
        next_question(session, BANK)


def test_next_question_after_complete_raises_session_complete():
    session, _ = drive_full_session(1, any_probable)
    with pytest.raises(SessionComplete):
        next_question(session, BANK)


def test_submit_requires_awaiting_card():
    with pytest.raises(WrongPhase):
        submit_detection(fresh(), Emotion.SAD, 1.0, BANK)


def test_appropriate_answer_returns_media_cue():
    session, question = next_question(fresh(2), BANK)
    emotion = any_probable(question)
    session, evaluation = submit_detection(session, emotion, 0.9, BANK, now=T0)
    assert evaluation.appropriate
    assert evaluation.media_cue == question.media_cue[emotion]
    assert evaluation.feedback is None
    assert session.phase is Phase.AWAITING_QUESTION
    assert session.responses[-1].appropriate


def test_inappropriate_answer_shows_feedback():
    session, question = next_question(fresh(2), BANK)
    emotion = any_improbable(question)
    session, evaluation = submit_detection(session, emotion, 0.8, BANK, now=T0)
    assert not evaluation.appropriate
    assert evaluation.feedback == question.feedback[emotion]
    assert evaluation.media_cue is None
    assert session.phase is Phase.SHOWING_FEEDBACK
    assert session.responses[-1].feedback_shown == evaluation.feedback


def test_acknowledge_stores_note():
    session, question = next_question(fresh(2), BANK)
    session, _ = submit_detection(session, any_improbable(question), 1.0, BANK, now=T0)
    session = acknowledge_feedback(session, "confused sad and angry")
    assert session.responses[-1].teacher_note == "confused sad and angry"
    assert session.phase is Phase.AWAITING_QUESTION


def test_acknowledge_without_note_keeps_record():
    session, question = next_question(fresh(2), BANK)
    session, _ = submit_detection(session, any_improbable(question), 1.0, BANK, now=T0)
    before = session.responses[-1]
    session = acknowledge_feedback(session)
    after = session.responses[-1]
    assert after == before  # only the phase advanced
    assert session.phase is Phase.AWAITING_QUESTION


def test_acknowledge_wrong_phase():
    with pytest.raises(WrongPhase):
        acknowledge_feedback(fresh())


def test_full_session_of_wrong_answers_completes():
    session, _ = drive_full_session(4, any_improbable, note="talked it through")
    assert session.phase is Phase.COMPLETE
    assert len(session.responses) == 10
    assert all(r.teacher_note == "talked it through" for r in session.responses)
    assert session_summary(session).appropriate == 0


def test_feedback_on_final_question_completes_after_acknowledge():
    session = fresh(5)
    for _ in range(9):
        session, question = next_question(session, BANK)
        session, _ = submit_detection(session, any_probable(question), 1.0, BANK, now=T0)
    session, question = next_question(session, BANK)
    session, evaluation = submit_detection(session, any_improbable(question), 1.0, BANK, now=T0)
    assert not evaluation.appropriate
    assert session.phase is Phase.SHOWING_FEEDBACK
    session = acknowledge_feedback(session)
    assert session.phase is Phase.COMPLETE


def test_summary_counts():
    session, _ = drive_full_session(6, any_probable)
    summary = session_summary(session)
    assert summary.asked == 10
    assert summary.appropriate == 10
    assert sum(summary.per_emotion.values()) == 10


def test_fresh_summary_is_zero():
    summary = session_summary(fresh())
    assert summary.asked == 0 and summary.appropriate == 0
    assert all(v == 0 for v in summary.per_emotion.values())


def test_responses_length_tracks_questions_asked():
    session = fresh(8)
    for i in range(10):
        session, question = next_question(session, BANK)
        assert len(session.responses) == i
        session, evaluation = submit_detection(session, any_probable(question), 1.0, BANK, now=T0)
        assert len(session.responses) == i + 1


def test_evaluation_oracle_all_40_pairs():
    """Appropriateness is exactly probable-set membership for every
    (question, emotion) pair of the shipped bank."""
    from dataclasses import replace

    from tests.test_bank import PROBABLE_ANSWERS

    for question in BANK.questions:
        for emotion in ALL_CARDS:
            session, _ = next_question(fresh(1), BANK)
            session = replace(session, current=question.id)  # force the pairing
            _, evaluation = submit_detection(session, emotion, 1.0, BANK, now=T0)
            expected = emotion in PROBABLE_ANSWERS[question.id]
            assert evaluation.appropriate == expected, (question.id, emotion)


def test_determinism_of_full_session_final_state():
    a, _ = drive_full_session(11, any_probable)
    b, _ = drive_full_session(11, any_probable)
    assert a == b
