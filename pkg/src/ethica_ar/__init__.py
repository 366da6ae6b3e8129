"""Flashcard-driven ethics quiz game.

Subpackages: `vision` (fiducial markers and detection), `game` (question
bank and session state machine), `store` (event log, replay, progress
reports), `service` (HTTP API). The `ethica-ar` CLI ties them together.
"""

from .cards import ALL_CARDS, CardId, Emotion

__version__ = "0.1.0"

__all__ = ["ALL_CARDS", "CardId", "Emotion", "__version__"]
