"""The four tomato flashcards.

The same enumeration doubles as the marker identity decoded from camera
frames (``CardId``) and the emotion a question is answered with
(``Emotion``); they are one concept seen from two sides.
"""

from __future__ import annotations

from enum import IntEnum


class CardId(IntEnum):
    HAPPY = 0
    SAD = 1
    ANGRY = 2
    SURPRISED = 3

    @property
    def token(self) -> str:
        """Lowercase wire name used in JSON documents and file names."""
        return self.name.lower()

    @classmethod
    def from_token(cls, token: str) -> "CardId":
        try:
            return cls[token.upper()]
        except KeyError:
            raise ValueError(f"unknown emotion name {token!r}") from None


Emotion = CardId

ALL_CARDS: tuple[CardId, ...] = tuple(CardId)
