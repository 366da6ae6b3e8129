"""Operator command line.

Subcommands: cards (printable marker sheets), detect-image (run the
detector on a file), simulate (synthetic class run writing an event log),
report (progress from a log), serve (HTTP service).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .cards import ALL_CARDS
from .errors import CorruptLog, EthicaArError, StorageFailure, UnknownEntity
from .game import QuestionBank, default_bank, load_question_bank
from .simulate import DEFAULT_CLASS_ID, SimProfile, simulate_class
from .store import EventLog, log_path_for_class, progress_report, read_events, replay
from .store.report import all_student_ids, report_from_state
from .vision import DetectionParams, default_marker_spec, detect, load_png, render_marker, save_png

log = logging.getLogger("ethica_ar")

DEFAULT_ADDR = "127.0.0.1:8089"


def _load_bank(path: str | None) -> QuestionBank:
    if path is None:
        return default_bank()
    return load_question_bank(Path(path).read_text(encoding="utf-8"))


def _load_params(path: str | None) -> DetectionParams:
    if path is None:
        return DetectionParams()
    return DetectionParams.from_json(Path(path).read_text(encoding="utf-8"))


def cmd_cards(args) -> int:
    spec = default_marker_spec()
    if args.module_px != spec.module_size_px:
        from .vision import MarkerSpec

        spec = MarkerSpec(
            codewords=spec.codewords,
            module_size_px=args.module_px,
            quiet_zone=spec.quiet_zone,
        )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for card in ALL_CARDS:
        path = out / f"card_{card.token}.png"
        save_png(render_marker(spec, card), path)
        print(f"wrote {path}")
    sidecar = out / "card_spec.txt"
    lines = [
        "Tomato flashcard markers",
        "",
        f"modules: 6x6 (1-module black border, 4x4 payload), quiet zone {spec.quiet_zone} module(s)",
        f"rendered at {spec.module_size_px} px per module ({spec.side_px} px per side)",
        "",
        "Print each marker with the black square at least 8 cm wide and keep",
        "the white margin around it; glue it beside the tomato artwork on the",
        "physical card. The camera reads only the black-and-white pattern.",
        "",
        "codewords (16-bit payload per card):",
    ]
    lines += [f"  {card.token}: 0x{spec.codeword(card):04X}" for card in ALL_CARDS]
    sidecar.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {sidecar}")
    return 0


def cmd_detect_image(args) -> int:
    try:
        frame = load_png(args.file)
    except Exception as exc:  # noqa: BLE001 - unreadable input is exit code 2
        print(f"error: cannot read image {args.file}: {exc}", file=sys.stderr)
        return 2
    params = _load_params(args.params)
    detections = detect(frame, default_marker_spec(), params)
    if args.json:
        doc = [
            {
                "card": d.card.token,
                "rotation": d.rotation,
                "confidence": d.confidence,
                "corners": [[x, y] for x, y in d.quad.corners],
            }
            for d in detections
        ]
        print(json.dumps(doc, indent=2))
    else:
        for d in detections:
            corners = " ".join(f"({x:.1f},{y:.1f})" for x, y in d.quad.corners)
            print(
                f"{d.card.token} confidence={d.confidence:.3f} "
                f"rotation={d.rotation * 90}deg corners={corners}"
            )
        if not detections:
            print("no markers detected")
    return 0 if detections else 1


def cmd_simulate(args) -> int:
    bank = _load_bank(args.bank)
    profile = SimProfile(students=args.students, accuracy=args.accuracy, seed=args.seed)
    path = Path(args.log) if args.log else log_path_for_class(".", args.class_id)
    if path.exists():
        path.unlink()
        print(f"replaced existing log {path}")
    with EventLog(path, bank) as event_log:
        simulate_class(event_log, profile, class_id=args.class_id)
        state = event_log.state
        print(f"wrote {len(event_log.events)} events to {path}")
        for student_id in all_student_ids(state):
            print(report_from_state(state, student_id, bank).to_text())
    return 0


def cmd_report(args) -> int:
    bank = _load_bank(args.bank)
    try:
        events = read_events(args.log)
        if args.student:
            reports = [progress_report(args.student, events, bank)]
        else:
            state = replay(events, bank)
            reports = [
                report_from_state(state, student_id, bank)
                for student_id in all_student_ids(state)
            ]
    except CorruptLog as exc:
        print(f"error: corrupt log {args.log}: {exc}", file=sys.stderr)
        return 2
    except StorageFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownEntity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for report in reports:
            print(report.to_text())
    return 0


def _parse_addr(raw: str) -> tuple[str, int]:
    host, _, port = raw.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"address must look like host:port, got {raw!r}")
    return host, int(port)


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    addr = args.addr or os.environ.get("ETHICA_AR_ADDR") or DEFAULT_ADDR
    try:
        host, port = _parse_addr(addr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    bank = _load_bank(args.bank)
    params = _load_params(args.params)
    event_log = EventLog(args.log, bank)
    app = create_app(event_log, params=params, static_dir=args.static)
    print(f"serving on http://{host}:{port} (log: {args.log})")
    uvicorn.run(app, host=host, port=port, log_level="info" if args.verbose else "warning")
    return 0


def _shared_flags(parser: argparse.ArgumentParser, *, suppress: bool = False) -> None:
    """--bank/--params/--verbose work both before and after the subcommand;
    SUPPRESS on the subparser copies keeps them from clobbering values given
    at the top level."""
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--bank", metavar="FILE", default=default,
                        help="question bank JSON (default: shipped Justice bank)")
    parser.add_argument("--params", metavar="FILE", default=default,
                        help="detection params JSON")
    parser.add_argument("--verbose", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="more logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ethica-ar",
        description="Flashcard quiz game tooling: markers, detection, simulation, reports, service.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _shared_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def subparser(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _shared_flags(p, suppress=True)
        return p

    p = subparser("cards", "emit printable marker PNGs plus a sidecar note")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--module-px", type=int, default=10, metavar="N",
                   help="pixels per marker module (default 10)")
    p.set_defaults(func=cmd_cards)

    p = subparser("detect-image", "detect markers in an image file")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_detect_image)

    p = subparser("simulate", "run a synthetic class and write its event log")
    p.add_argument("--students", type=int, default=10)
    p.add_argument("--accuracy", type=float, default=0.8,
                   help="probability a simulated answer is appropriate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--log", metavar="FILE", help="event log path (default events-<class>.jsonl)")
    p.add_argument("--class-id", default=DEFAULT_CLASS_ID)
    p.set_defaults(func=cmd_simulate)

    p = subparser("report", "print progress reports from an event log")
    p.add_argument("--log", required=True, metavar="FILE")
    p.add_argument("--student", metavar="ID", help="report a single student")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)

    p = subparser("serve", "run the classroom HTTP service")
    p.add_argument("--addr", metavar="HOST:PORT",
                   help=f"listen address (or ETHICA_AR_ADDR; default {DEFAULT_ADDR})")
    p.add_argument("--log", required=True, metavar="FILE", help="event log path")
    p.add_argument("--static", metavar="DIR", help="serve a built UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except EthicaArError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
