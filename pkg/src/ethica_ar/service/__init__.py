"""HTTP service exposing classes, sessions, frame ingestion, and progress."""

from .app import create_app

__all__ = ["create_app"]
