// Teacher console: pick or create a class, manage the roster, start a
// session for a student.

import type { GameApi, RosterView } from "./api.js";
import { ApiError } from "./api.js";

export interface ConsoleCallbacks {
  onStartSession(sessionId: string, studentId: string): void;
  onShowProgress(studentId: string): void;
}

export class TeacherConsole {
  private selectedClass: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: GameApi,
    private readonly callbacks: ConsoleCallbacks,
  ) {
    this.wire();
  }

  private q<T extends HTMLElement>(selector: string): T {
    const el = this.root.querySelector<T>(selector);
    if (!el) {
      throw new Error(`console is missing ${selector}`);
    }
    return el;
  }

  private wire(): void {
    this.q<HTMLButtonElement>("[data-create-class]").addEventListener("click", () => {
      void this.createClass();
    });
    this.q<HTMLButtonElement>("[data-add-student]").addEventListener("click", () => {
      void this.addStudent();
    });
    this.q<HTMLButtonElement>("[data-retry]").addEventListener("click", () => {
      void this.refresh();
    });
  }

  async refresh(): Promise<void> {
    const banner = this.q("[data-error-banner]");
    try {
      const { classes } = await this.api.listClasses();
      banner.classList.add("hidden");
      this.renderClasses(classes);
      if (this.selectedClass) {
        const roster = classes.find((c) => c.class_id === this.selectedClass);
        if (roster) {
          this.renderRoster(roster);
        }
      }
    } catch (error) {
      banner.classList.remove("hidden");
      this.q("[data-error-text]").textContent =
        error instanceof ApiError
          ? `Service error: ${error.message}`
          : "Cannot reach the game service. Is it running?";
    }
  }

  private async createClass(): Promise<void> {
    const input = this.q<HTMLInputElement>("[data-class-name]");
    const classId = input.value.trim();
    if (!classId) {
      return;
    }
    try {
      await this.api.createClass(classId);
      input.value = "";
      this.selectedClass = classId;
      await this.refresh();
    } catch (error) {
      this.note(error instanceof ApiError ? error.message : String(error));
    }
  }

  private async addStudent(): Promise<void> {
    if (!this.selectedClass) {
      this.note("Select a class first.");
      return;
    }
    const idInput = this.q<HTMLInputElement>("[data-student-id]");
    const nameInput = this.q<HTMLInputElement>("[data-student-name]");
    const studentId = idInput.value.trim();
    if (!studentId) {
      return;
    }
    try {
      const result = await this.api.registerStudent(
        this.selectedClass,
        studentId,
        nameInput.value.trim() || studentId,
      );
      idInput.value = "";
      nameInput.value = "";
      this.note(result.warning ?? "");
      await this.refresh();
    } catch (error) {
      this.note(error instanceof ApiError ? error.message : String(error));
    }
  }

  private note(text: string): void {
    this.q("[data-console-note]").textContent = text;
  }

  private renderClasses(classes: RosterView[]): void {
    const list = this.q("[data-class-list]");
    list.innerHTML = "";
    for (const roster of classes) {
      const item = document.createElement("button");
      item.className = "class-item";
      item.textContent = `${roster.class_id} (${roster.students.length})`;
      if (roster.class_id === this.selectedClass) {
        item.classList.add("selected");
      }
      item.addEventListener("click", () => {
        this.selectedClass = roster.class_id;
        this.renderClasses(classes);
        this.renderRoster(roster);
      });
      list.appendChild(item);
    }
    if (classes.length === 0) {
      list.textContent = "No classes yet - create one above.";
    }
  }

  private renderRoster(roster: RosterView): void {
    this.q("[data-roster-title]").textContent = `Class ${roster.class_id}`;
    const warningEl = this.q("[data-roster-warning]");
    // the size advisory comes straight from the server
    warningEl.textContent = roster.warning ?? "";
    warningEl.classList.toggle("hidden", !roster.warning);

    const list = this.q("[data-student-list]");
    list.innerHTML = "";
    for (const student of roster.students) {
      const row = document.createElement("li");
      const label = document.createElement("span");
      label.textContent = `${student.display_name} (${student.student_id})`;
      const play = document.createElement("button");
      play.textContent = "Play";
      play.className = "play-btn";
      play.addEventListener("click", () => {
        void this.startSession(roster.class_id, student.student_id);
      });
      const progress = document.createElement("button");
      progress.textContent = "Progress";
      progress.className = "progress-btn";
      progress.addEventListener("click", () => {
        this.callbacks.onShowProgress(student.student_id);
      });
      row.append(label, play, progress);
      list.appendChild(row);
    }
  }

  private async startSession(classId: string, studentId: string): Promise<void> {
    try {
      const session = await this.api.startSession(classId, studentId);
      this.callbacks.onStartSession(session.session_id, studentId);
    } catch (error) {
      this.note(error instanceof ApiError ? error.message : String(error));
    }
  }
}
