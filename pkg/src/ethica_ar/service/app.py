"""HTTP API for live classroom sessions.

A thin adapter over the game director and the vision pipeline: every state
change goes through the event log, frames are decoded and detected
synchronously, and ambiguous or empty frames never touch session state.
Designed for a trusted classroom LAN; there is no authentication layer.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .. import __version__
from ..cards import Emotion
from ..director import GameDirector
from ..errors import (
    DuplicateEntity,
    EthicaArError,
    SessionComplete,
    UnknownEntity,
    UnknownStudent,
    WrongPhase,
)
from ..game import Phase, Question, Session, session_summary
from ..store import EventLog
from ..store.events import parse_ts
from ..vision import Detection, DetectionParams, MarkerSpec, decode_image_bytes, detect
from ..vision.dictionary import default_marker_spec

MAX_FRAME_BYTES = 8 * 1024 * 1024
MAX_FRAME_WIDTH = 1920
MAX_FRAME_HEIGHT = 1080
AMBIGUITY_MARGIN = 0.1


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _map_error(exc: EthicaArError) -> ApiError:
    if isinstance(exc, DuplicateEntity):
        return ApiError(409, "duplicate_id", str(exc))
    if isinstance(exc, (UnknownEntity, UnknownStudent)):
        return ApiError(404, "unknown_entity", str(exc))
    if isinstance(exc, WrongPhase):
        return ApiError(409, "wrong_phase", str(exc))
    if isinstance(exc, SessionComplete):
        return ApiError(410, "session_complete", str(exc))
    return ApiError(500, "internal", str(exc))


class ClassBody(BaseModel):
    class_id: str


class StudentBody(BaseModel):
    student_id: str
    display_name: str = ""


class SessionBody(BaseModel):
    class_id: str
    student_id: str
    seed: int | None = None


class AcknowledgeBody(BaseModel):
    note: str | None = None


class ManualBody(BaseModel):
    emotion: str


@dataclass
class ServiceState:
    log: EventLog
    director: GameDirector
    spec: MarkerSpec
    params: DetectionParams
    session_locks: dict[str, threading.Lock] = field(default_factory=dict)
    registry_lock: threading.Lock = field(default_factory=threading.Lock)

    def lock_for(self, session_id: str) -> threading.Lock:
        with self.registry_lock:
            return self.session_locks.setdefault(session_id, threading.Lock())

    def active_session_of(self, student_id: str) -> str | None:
        for sid, entry in self.log.state.sessions.items():
            if entry.session.student_id == student_id and not entry.ended:
                return sid
        return None


def _detection_json(det: Detection) -> dict:
    return {
        "card": det.card.token,
        "corners": [[x, y] for x, y in det.quad.corners],
        "rotation": det.rotation,
        "confidence": det.confidence,
    }


def _session_json(session: Session, ended: bool) -> dict:
    doc = {
        "session_id": session.session_id,
        "class_id": session.class_id,
        "student_id": session.student_id,
        "phase": session.phase.value,
        "asked": len(session.responses),
        "remaining": len(session.remaining),
        "bank_version": session.bank_version,
        "ended": ended,
    }
    if session.phase is Phase.COMPLETE:
        doc["summary"] = _summary_json(session)
    return doc


def _summary_json(session: Session) -> dict:
    summary = session_summary(session)
    return {
        "asked": summary.asked,
        "appropriate": summary.appropriate,
        "per_emotion": {e.token: n for e, n in summary.per_emotion.items()},
    }


def _question_json(question: Question) -> dict:
    return {"question_id": question.id, "text": question.text}


def _evaluation_json(evaluation) -> dict:
    return {
        "appropriate": evaluation.appropriate,
        "media_cue": evaluation.media_cue,
        "feedback": evaluation.feedback,
    }


def _roster_json(state: ServiceState, class_id: str) -> dict:
    roster = state.log.state.roster(class_id)
    doc = {
        "class_id": class_id,
        "students": [
            {"student_id": sid, "display_name": name} for sid, name in roster.students
        ],
    }
    warning = roster.size_advisory()
    if warning:
        doc["warning"] = warning
    return doc


def create_app(
    log: EventLog,
    spec: MarkerSpec | None = None,
    params: DetectionParams | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    state = ServiceState(
        log=log,
        director=GameDirector(log),
        spec=spec if spec is not None else default_marker_spec(),
        params=params if params is not None else DetectionParams(),
    )
    app = FastAPI(title="ethica-ar", version=__version__)
    app.state.service = state

    @app.exception_handler(ApiError)
    async def api_error_handler(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"error": exc.code, "message": exc.message}
        )

    @app.exception_handler(EthicaArError)
    async def domain_error_handler(_request: Request, exc: EthicaArError):
        mapped = _map_error(exc)
        return JSONResponse(
            status_code=mapped.status,
            content={"error": mapped.code, "message": mapped.message},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"error": "malformed", "message": str(exc.errors())}
        )

    # -- classes and students -------------------------------------------

    @app.post("/v1/classes", status_code=201)
    def create_class(body: ClassBody):
        state.director.create_class(body.class_id)
        return _roster_json(state, body.class_id)

    @app.get("/v1/classes")
    def list_classes():
        return {
            "classes": [
                _roster_json(state, class_id) for class_id in state.log.state.classes
            ]
        }

    @app.get("/v1/classes/{class_id}")
    def get_class(class_id: str):
        return _roster_json(state, class_id)

    @app.post("/v1/classes/{class_id}/students", status_code=201)
    def register_student(class_id: str, body: StudentBody):
        roster = state.director.register_student(
            class_id, body.student_id, body.display_name
        )
        doc = {
            "class_id": class_id,
            "student_id": body.student_id,
            "display_name": body.display_name,
            "students": len(roster.students),
        }
        warning = roster.size_advisory()
        if warning:
            doc["warning"] = warning
        return doc

    # -- sessions ---------------------------------------------------------

    @app.post("/v1/sessions", status_code=201)
    def start_session(body: SessionBody):
        with state.registry_lock:
            active = state.active_session_of(body.student_id)
            if active is not None:
                raise ApiError(
                    409,
                    "active_session_exists",
                    f"student {body.student_id!r} already has active session {active!r}",
                )
            seed = body.seed if body.seed is not None else random.randrange(2**31)
            session = state.director.start_session(
                body.class_id, body.student_id, seed=seed
            )
        return _session_json(session, ended=False)

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        entry = state.director.session_entry(session_id)
        return _session_json(entry.session, entry.ended)

    @app.get("/v1/sessions/{session_id}/question")
    def get_question(session_id: str):
        with state.lock_for(session_id):
            session = state.director.session(session_id)
            if session.phase is Phase.COMPLETE:
                return JSONResponse(
                    status_code=410,
                    content={
                        "error": "session_complete",
                        "message": "all questions answered",
                        "summary": _summary_json(session),
                    },
                )
            if session.phase is Phase.AWAITING_CARD:
                question = state.director.current_question(session_id)
                assert question is not None
                return _question_json(question)
            if session.phase is Phase.SHOWING_FEEDBACK:
                raise WrongPhase(Phase.AWAITING_QUESTION.value, session.phase.value)
            _, question = state.director.draw_question(session_id)
            return _question_json(question)

    @app.post("/v1/sessions/{session_id}/frames")
    async def submit_frame(session_id: str, request: Request, client_ts: str | None = None):
        # client_ts is informational (client-side capture instant); event
        # ordering stays server-authoritative
        if client_ts is not None:
            try:
                parse_ts(client_ts)
            except ValueError as exc:
                raise ApiError(400, "malformed", f"bad client_ts: {exc}") from None
        raw = await request.body()
        if len(raw) > MAX_FRAME_BYTES:
            raise ApiError(413, "frame_too_large", "frame exceeds the size limit")
        try:
            frame = decode_image_bytes(raw)
        except ValueError as exc:
            raise ApiError(400, "bad_image", str(exc)) from None
        height, width = frame.shape
        if width > MAX_FRAME_WIDTH or height > MAX_FRAME_HEIGHT:
            raise ApiError(
                413,
                "frame_too_large",
                f"{width}x{height} exceeds {MAX_FRAME_WIDTH}x{MAX_FRAME_HEIGHT}",
            )

        with state.lock_for(session_id):
            session = state.director.session(session_id)
            if session.phase is not Phase.AWAITING_CARD:
                raise WrongPhase(Phase.AWAITING_CARD.value, session.phase.value)

            detections = detect(frame, state.spec, state.params)
            result = {
                "detections": [_detection_json(d) for d in detections],
                "resolved": None,
                "status": "NoCard",
                "evaluation": None,
            }
            if not detections:
                result["phase"] = session.phase.value
                return result

            ranked = sorted(detections, key=lambda d: -d.confidence)
            if (
                len(ranked) >= 2
                and ranked[0].card != ranked[1].card
                and ranked[0].confidence - ranked[1].confidence <= AMBIGUITY_MARGIN
            ):
                result["status"] = "Ambiguous"
                result["phase"] = session.phase.value
                return result

            winner = ranked[0]
            outcome = state.director.submit_card(
                session_id, winner.card, winner.confidence, source="camera"
            )
            result["status"] = "Resolved"
            result["resolved"] = winner.card.token
            result["evaluation"] = _evaluation_json(outcome.evaluation)
            result["phase"] = outcome.session.phase.value
            return result

    @app.post("/v1/sessions/{session_id}/acknowledge")
    def acknowledge(session_id: str, body: AcknowledgeBody):
        with state.lock_for(session_id):
            session = state.director.acknowledge(session_id, body.note)
        return {"phase": session.phase.value}

    @app.post("/v1/sessions/{session_id}/manual")
    def manual_submit(session_id: str, body: ManualBody):
        try:
            emotion = Emotion.from_token(body.emotion)
        except ValueError as exc:
            raise ApiError(400, "malformed", str(exc)) from None
        with state.lock_for(session_id):
            session = state.director.session(session_id)
            if session.phase is not Phase.AWAITING_CARD:
                raise WrongPhase(Phase.AWAITING_CARD.value, session.phase.value)
            outcome = state.director.submit_card(
                session_id, emotion, confidence=1.0, source="manual"
            )
        return {
            "status": "Resolved",
            "resolved": emotion.token,
            "evaluation": _evaluation_json(outcome.evaluation),
            "phase": outcome.session.phase.value,
        }

    # -- progress ---------------------------------------------------------

    @app.get("/v1/students/{student_id}/progress")
    def student_progress(student_id: str):
        from ..store.report import report_from_state

        report = report_from_state(state.log.state, student_id, state.log.bank)
        return report.to_dict()

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "version": __version__, "events": len(state.log.events)}

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
