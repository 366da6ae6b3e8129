// App bootstrap: one GameApi, three screens, hash-free navigation.

import { GameApi } from "./api.js";
import { WebcamSource } from "./capture.js";
import { TeacherConsole } from "./console.js";
import { GameScreen } from "./game.js";
import { ProgressScreen } from "./progress.js";

declare global {
  interface Window {
    ETHICA_AR_BASE?: string;
  }
}

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing #${id}`);
  }
  return found as T;
}

function show(screen: "console" | "game" | "progress"): void {
  el("screen-console").classList.toggle("hidden", screen !== "console");
  el("screen-game").classList.toggle("hidden", screen !== "game");
  el("screen-progress").classList.toggle("hidden", screen !== "progress");
}

async function boot(): Promise<void> {
  // same-origin by default; override via window.ETHICA_AR_BASE or ?api=
  const override = new URLSearchParams(location.search).get("api");
  const api = new GameApi(override ?? window.ETHICA_AR_BASE ?? "");

  const progressScreen = new ProgressScreen(el("screen-progress"), api);
  let game: GameScreen | null = null;
  let lastStudent: string | null = null;

  const teacherConsole = new TeacherConsole(el("screen-console"), api, {
    onStartSession: (sessionId, studentId) => {
      void startGame(sessionId, studentId);
    },
    onShowProgress: (studentId) => {
      lastStudent = studentId;
      show("progress");
      void progressScreen.show(studentId);
    },
  });

  async function startGame(sessionId: string, studentId: string): Promise<void> {
    lastStudent = studentId;
    const session = await api.getSession(sessionId);
    show("game");

    let frames = null;
    let cameraNote = "";
    try {
      frames = await WebcamSource.open(el<HTMLVideoElement>("webcam"));
    } catch {
      cameraNote = "Camera unavailable";
    }
    game?.stop();
    game = new GameScreen(el("screen-game"), api, frames, session, {
      onComplete: (done) => {
        void progressScreen.show(done.student_id).then(() => show("progress"));
      },
    });
    if (cameraNote) {
      game.cameraUnavailable(cameraNote);
    }
    await game.fetchQuestion();
    game.start();
  }

  el("nav-console").addEventListener("click", () => {
    game?.stop();
    show("console");
    void teacherConsole.refresh();
  });
  el("game-exit").addEventListener("click", () => {
    game?.stop();
    show("console");
    void teacherConsole.refresh();
  });
  el("progress-back").addEventListener("click", () => {
    show("console");
    void teacherConsole.refresh();
  });

  show("console");
  await teacherConsole.refresh();
  void lastStudent;
}

void boot();
