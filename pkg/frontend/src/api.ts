// Typed client for the game service (/v1). All game decisions happen on the
// server; this module only moves JSON and PNG bytes.

export type EmotionToken = "happy" | "sad" | "angry" | "surprised";

export const EMOTIONS: EmotionToken[] = ["happy", "sad", "angry", "surprised"];

export type PhaseName =
  | "AwaitingQuestion"
  | "AwaitingCard"
  | "ShowingFeedback"
  | "Complete";

export interface StudentEntry {
  student_id: string;
  display_name: string;
}

export interface RosterView {
  class_id: string;
  students: StudentEntry[];
  warning?: string;
}

export interface SessionView {
  session_id: string;
  class_id: string;
  student_id: string;
  phase: PhaseName;
  asked: number;
  remaining: number;
  ended: boolean;
  summary?: SessionSummary;
}

export interface SessionSummary {
  asked: number;
  appropriate: number;
  per_emotion: Record<EmotionToken, number>;
}

export interface QuestionView {
  question_id: string;
  text: string;
}

export interface EvaluationView {
  appropriate: boolean;
  media_cue: string | null;
  feedback: string | null;
}

export interface DetectionView {
  card: EmotionToken;
  corners: [number, number][];
  rotation: number;
  confidence: number;
}

export interface FrameResult {
  status: "NoCard" | "Ambiguous" | "Resolved";
  detections: DetectionView[];
  resolved: EmotionToken | null;
  evaluation: EvaluationView | null;
  phase: PhaseName;
}

export interface ProgressView {
  student_id: string;
  sessions_played: number;
  questions_answered: number;
  appropriate_count: number;
  appropriate_rate: number | null;
  per_emotion_confusion: Record<string, Record<string, number>>;
  trend: number[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "unknown";
  let message = response.statusText;
  try {
    const body = (await response.json()) as { error?: string; message?: string };
    code = body.error ?? code;
    message = body.message ?? message;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, message);
}

export class GameApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listClasses(): Promise<{ classes: RosterView[] }> {
    return this.request("/v1/classes");
  }

  createClass(classId: string): Promise<RosterView> {
    return this.post("/v1/classes", { class_id: classId });
  }

  getClass(classId: string): Promise<RosterView> {
    return this.request(`/v1/classes/${encodeURIComponent(classId)}`);
  }

  registerStudent(
    classId: string,
    studentId: string,
    displayName: string,
  ): Promise<{ warning?: string }> {
    return this.post(`/v1/classes/${encodeURIComponent(classId)}/students`, {
      student_id: studentId,
      display_name: displayName,
    });
  }

  startSession(classId: string, studentId: string, seed?: number): Promise<SessionView> {
    return this.post("/v1/sessions", {
      class_id: classId,
      student_id: studentId,
      ...(seed === undefined ? {} : { seed }),
    });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request(`/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  getQuestion(sessionId: string): Promise<QuestionView> {
    return this.request(`/v1/sessions/${encodeURIComponent(sessionId)}/question`);
  }

  async submitFrame(sessionId: string, png: Uint8Array | Blob): Promise<FrameResult> {
    const body = png instanceof Blob ? png : new Blob([png as BlobPart]);
    const ts = encodeURIComponent(new Date().toISOString());
    return this.request(
      `/v1/sessions/${encodeURIComponent(sessionId)}/frames?client_ts=${ts}`,
      {
        method: "POST",
        headers: { "content-type": "image/png" },
        body,
      },
    );
  }

  acknowledge(sessionId: string, note?: string): Promise<{ phase: PhaseName }> {
    return this.post(`/v1/sessions/${encodeURIComponent(sessionId)}/acknowledge`, {
      note: note ?? null,
    });
  }

  manualSubmit(sessionId: string, emotion: EmotionToken): Promise<FrameResult> {
    return this.post(`/v1/sessions/${encodeURIComponent(sessionId)}/manual`, {
      emotion,
    });
  }

  progress(studentId: string): Promise<ProgressView> {
    return this.request(`/v1/students/${encodeURIComponent(studentId)}/progress`);
  }
}
