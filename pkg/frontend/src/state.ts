// Client-side mirror of one live session. The mirror never decides anything
// about the game: phase, appropriateness, feedback, and cues all arrive from
// the server, and the view only reflects the latest server response.

import type {
  EvaluationView,
  FrameResult,
  PhaseName,
  QuestionView,
  SessionView,
} from "./api.js";

export interface UiSessionView {
  session: SessionView;
  question: QuestionView | null;
  phase: PhaseName;
  lastResult: FrameResult | null;
  lastEvaluation: EvaluationView | null;
  animationCue: string | null;
  hint: string | null;
}

export function freshView(session: SessionView): UiSessionView {
  return {
    session,
    question: null,
    phase: session.phase,
    lastResult: null,
    lastEvaluation: null,
    animationCue: null,
    hint: null,
  };
}

export function withSession(view: UiSessionView, session: SessionView): UiSessionView {
  return { ...view, session, phase: session.phase };
}

export function withQuestion(view: UiSessionView, question: QuestionView): UiSessionView {
  return {
    ...view,
    question,
    phase: "AwaitingCard",
    lastResult: null,
    lastEvaluation: null,
    animationCue: null,
    hint: null,
  };
}

export function withFrameResult(view: UiSessionView, result: FrameResult): UiSessionView {
  const next: UiSessionView = {
    ...view,
    phase: result.phase,
    lastResult: result,
    hint: null,
  };
  if (result.status === "Ambiguous") {
    next.hint = "One card at a time, please!";
  } else if (result.status === "Resolved" && result.evaluation) {
    next.lastEvaluation = result.evaluation;
    next.animationCue = result.evaluation.media_cue;
  }
  return next;
}

export function withAcknowledged(view: UiSessionView, phase: PhaseName): UiSessionView {
  return {
    ...view,
    phase,
    question: phase === "AwaitingCard" ? view.question : null,
    lastEvaluation: null,
    animationCue: null,
  };
}

// The question card must never show while the server has us in feedback.
export function questionVisible(view: UiSessionView): boolean {
  return view.phase === "AwaitingCard" && view.question !== null;
}

// Frame posting is allowed only while the server awaits a card.
export function mayPostFrames(view: UiSessionView): boolean {
  return view.phase === "AwaitingCard";
}
