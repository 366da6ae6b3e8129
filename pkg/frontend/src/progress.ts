// Per-student progress view: totals plus the per-session trend, rendered
// exactly as the server reports them.

import type { GameApi, ProgressView } from "./api.js";

export class ProgressScreen {
  constructor(
    private readonly root: HTMLElement,
    private readonly api: GameApi,
  ) {}

  private q<T extends HTMLElement>(selector: string): T {
    const el = this.root.querySelector<T>(selector);
    if (!el) {
      throw new Error(`progress screen is missing ${selector}`);
    }
    return el;
  }

  async show(studentId: string): Promise<void> {
    const report = await this.api.progress(studentId);
    this.render(report);
  }

  render(report: ProgressView): void {
    this.q("[data-progress-student]").textContent = report.student_id;
    const empty = this.q("[data-progress-empty]");
    const body = this.q("[data-progress-body]");
    if (report.questions_answered === 0) {
      empty.classList.remove("hidden");
      empty.textContent = "No sessions yet.";
      body.classList.add("hidden");
      return;
    }
    empty.classList.add("hidden");
    body.classList.remove("hidden");

    const rate =
      report.appropriate_rate === null ? "-" : `${(report.appropriate_rate * 100).toFixed(0)}%`;
    this.q("[data-progress-totals]").textContent =
      `${report.sessions_played} session(s), ${report.questions_answered} answered, ` +
      `${report.appropriate_count} appropriate (${rate})`;

    const trend = this.q("[data-trend]");
    trend.innerHTML = "";
    report.trend.forEach((value, index) => {
      const point = document.createElement("div");
      point.className = "trend-point";
      point.dataset.value = value.toFixed(3);
      const bar = document.createElement("div");
      bar.className = "trend-bar";
      bar.style.height = `${Math.round(value * 100)}%`;
      bar.title = `session ${index + 1}: ${(value * 100).toFixed(0)}%`;
      const label = document.createElement("span");
      label.textContent = `${(value * 100).toFixed(0)}%`;
      point.append(bar, label);
      trend.appendChild(point);
    });
  }
}
