// Live game screen: shows the question, pumps webcam frames to the server,
// plays the per-emotion cue, and walks the teacher through feedback. All
// outcomes come from server responses; this controller never inspects the
// question bank.

import type { EmotionToken, GameApi, SessionView } from "./api.js";
import { ApiError, EMOTIONS } from "./api.js";
import type { FrameSource } from "./capture.js";
import {
  freshView,
  mayPostFrames,
  questionVisible,
  withAcknowledged,
  withFrameResult,
  withQuestion,
  withSession,
  type UiSessionView,
} from "./state.js";
import { playCue } from "./animations.js";

export const TEACHER_PROMPT = "Why does this sentence make you feel this way?";
export const DEFAULT_CAPTURE_INTERVAL_MS = 500; // 2 frames/s

export interface GameScreenOptions {
  cueHoldMs?: number;
  captureIntervalMs?: number;
  onComplete?: (session: SessionView) => void;
}

export class GameScreen {
  view: UiSessionView;
  private inFlight = false;
  private timer: ReturnType<typeof setInterval> | null = null;
  private readonly cueHoldMs: number;
  readonly captureIntervalMs: number;
  private readonly onComplete?: (session: SessionView) => void;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: GameApi,
    private frames: FrameSource | null,
    session: SessionView,
    options: GameScreenOptions = {},
  ) {
    this.view = freshView(session);
    this.cueHoldMs = options.cueHoldMs ?? 1200;
    this.captureIntervalMs = options.captureIntervalMs ?? DEFAULT_CAPTURE_INTERVAL_MS;
    this.onComplete = options.onComplete;
    this.wireControls();
    this.render();
  }

  private q<T extends HTMLElement>(selector: string): T {
    const el = this.root.querySelector<T>(selector);
    if (!el) {
      throw new Error(`game screen is missing ${selector}`);
    }
    return el;
  }

  private wireControls(): void {
    const buttons = this.q<HTMLElement>("[data-manual]");
    buttons.innerHTML = "";
    for (const emotion of EMOTIONS) {
      const button = document.createElement("button");
      button.textContent = emotion;
      button.className = `manual-btn manual-${emotion}`;
      button.dataset.emotion = emotion;
      button.addEventListener("click", () => {
        void this.manual(emotion);
      });
      buttons.appendChild(button);
    }
    this.q<HTMLButtonElement>("[data-acknowledge]").addEventListener("click", () => {
      void this.acknowledge();
    });
  }

  cameraUnavailable(message: string): void {
    this.frames = null;
    this.q("[data-camera-note]").textContent =
      `${message} - use the emotion buttons below.`;
  }

  /** Ask the server for the current or next question and show it. */
  async fetchQuestion(): Promise<void> {
    try {
      const question = await this.api.getQuestion(this.view.session.session_id);
      this.view = withQuestion(this.view, question);
    } catch (error) {
      if (error instanceof ApiError && error.status === 410) {
        await this.refreshSession();
      } else if (error instanceof ApiError && error.status === 409) {
        await this.refreshSession(); // feedback still open on the server
      } else {
        throw error;
      }
    }
    this.render();
    await this.maybeComplete();
  }

  private async refreshSession(): Promise<void> {
    const session = await this.api.getSession(this.view.session.session_id);
    this.view = withSession(this.view, session);
  }

  /** One capture cycle: at most one frame request in flight, and only while
   * the server is waiting for a card. */
  async step(): Promise<void> {
    if (this.inFlight || !this.frames || !mayPostFrames(this.view)) {
      return;
    }
    this.inFlight = true; // set before any await so concurrent steps bail
    try {
      const frame = await this.frames.next();
      if (frame === null || !mayPostFrames(this.view)) {
        return;
      }
      const result = await this.api.submitFrame(this.view.session.session_id, frame);
      this.view = withFrameResult(this.view, result);
      this.render();
      await this.afterResolution();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        await this.refreshSession(); // raced a manual submission
        this.render();
      } else {
        throw error;
      }
    } finally {
      this.inFlight = false;
    }
  }

  async manual(emotion: EmotionToken): Promise<void> {
    if (!mayPostFrames(this.view)) {
      return;
    }
    const result = await this.api.manualSubmit(this.view.session.session_id, emotion);
    this.view = withFrameResult(this.view, result);
    this.render();
    await this.afterResolution();
  }

  private async afterResolution(): Promise<void> {
    const evaluation = this.view.lastEvaluation;
    if (!evaluation) {
      return;
    }
    if (evaluation.appropriate) {
      if (this.view.animationCue) {
        playCue(this.q("[data-animation]"), this.view.animationCue);
        await sleep(this.cueHoldMs);
      }
      if (this.view.phase === "AwaitingQuestion") {
        await this.fetchQuestion();
      } else {
        await this.maybeComplete();
      }
    }
    // inappropriate: stay in ShowingFeedback until the teacher acknowledges
  }

  async acknowledge(): Promise<void> {
    if (this.view.phase !== "ShowingFeedback") {
      return;
    }
    const noteBox = this.q<HTMLTextAreaElement>("[data-note]");
    const note = noteBox.value.trim();
    const { phase } = await this.api.acknowledge(
      this.view.session.session_id,
      note === "" ? undefined : note,
    );
    noteBox.value = "";
    this.view = withAcknowledged(this.view, phase);
    this.render();
    if (phase === "AwaitingQuestion") {
      await this.fetchQuestion();
    } else {
      await this.maybeComplete();
    }
  }

  private async maybeComplete(): Promise<void> {
    if (this.view.phase !== "Complete") {
      return;
    }
    this.stop();
    await this.refreshSession();
    this.render();
    this.onComplete?.(this.view.session);
  }

  start(): void {
    if (this.timer === null) {
      this.timer = setInterval(() => {
        void this.step();
      }, this.captureIntervalMs);
    }
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
    this.frames?.stop();
  }

  render(): void {
    const view = this.view;
    this.q("[data-phase]").textContent = view.phase;
    this.q("[data-progress-count]").textContent =
      `${view.session.asked} answered, ${view.session.remaining} to go`;

    const questionEl = this.q("[data-question]");
    if (questionVisible(view)) {
      questionEl.textContent = view.question?.text ?? "";
      questionEl.parentElement?.classList.remove("hidden");
    } else {
      questionEl.textContent = "";
      questionEl.parentElement?.classList.add("hidden");
    }

    const feedbackPanel = this.q("[data-feedback-panel]");
    if (view.phase === "ShowingFeedback" && view.lastEvaluation) {
      feedbackPanel.classList.remove("hidden");
      this.q("[data-feedback-text]").textContent = view.lastEvaluation.feedback ?? "";
      this.q("[data-teacher-prompt]").textContent = TEACHER_PROMPT;
    } else {
      feedbackPanel.classList.add("hidden");
    }

    this.q("[data-hint]").textContent = view.hint ?? "";

    const summaryPanel = this.q("[data-summary]");
    if (view.phase === "Complete" && view.session.summary) {
      const s = view.session.summary;
      summaryPanel.classList.remove("hidden");
      summaryPanel.textContent =
        `Session complete: ${s.appropriate} of ${s.asked} appropriate answers.`;
    } else {
      summaryPanel.classList.add("hidden");
    }

    const manualButtons = this.q("[data-manual]");
    manualButtons.querySelectorAll("button").forEach((button) => {
      button.disabled = view.phase !== "AwaitingCard";
    });
  }
}

function sleep(ms: number): Promise<void> {
  if (ms <= 0) {
    return Promise.resolve();
  }
  return new Promise((resolve) => setTimeout(resolve, ms));
}
