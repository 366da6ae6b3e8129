"""Marker codeword dictionary.

Each flashcard is identified by a 16-bit payload printed as a 4x4 module
grid inside a 6x6 marker (one-module black border around the payload). The
four shipped codewords are found by seeded brute force subject to: every
pair of the 16 patterns obtained by rotating each codeword through all four
quarter-turns differs in at least 8 bits, and no codeword is
rotation-symmetric. That distance budget makes decoding unambiguous when up
to 2 modules are misread.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..cards import ALL_CARDS, CardId
from ..errors import DictionarySearchFailed

GRID_MODULES = 6           # full marker grid, border included
PAYLOAD_MODULES = 4
PAYLOAD_BITS = PAYLOAD_MODULES * PAYLOAD_MODULES
BORDER_MODULE_COUNT = GRID_MODULES * GRID_MODULES - PAYLOAD_BITS
MIN_DISTANCE = 8

DEFAULT_MODULE_SIZE_PX = 10
DEFAULT_QUIET_ZONE = 1
DEFAULT_SEED = 0


@dataclass(frozen=True)
class MarkerSpec:
    """Printable marker family: payload codewords plus render geometry."""

    codewords: tuple[int, int, int, int]  # indexed by CardId
    module_size_px: int = DEFAULT_MODULE_SIZE_PX
    quiet_zone: int = DEFAULT_QUIET_ZONE

    def __post_init__(self):
        if len(self.codewords) != len(ALL_CARDS):
            raise ValueError("need exactly one codeword per card")
        if self.quiet_zone < 1:
            raise ValueError("quiet zone must be at least one module")
        if self.module_size_px < 1:
            raise ValueError("module size must be positive")

    def codeword(self, card: CardId) -> int:
        return self.codewords[card]

    @property
    def side_modules(self) -> int:
        """Rendered marker width in modules, quiet zone included."""
        return GRID_MODULES + 2 * self.quiet_zone

    @property
    def side_px(self) -> int:
        return self.side_modules * self.module_size_px


def rotate_payload_cw(code: int) -> int:
    """Payload bits after a quarter-turn clockwise of the module grid.

    Bit (r*4 + c) holds module row r, column c; 1 means a black module.
    """
    out = 0
    for r in range(PAYLOAD_MODULES):
        for c in range(PAYLOAD_MODULES):
            src = (PAYLOAD_MODULES - 1 - c) * PAYLOAD_MODULES + r
            if (code >> src) & 1:
                out |= 1 << (r * PAYLOAD_MODULES + c)
    return out


def rotations(code: int) -> tuple[int, int, int, int]:
    """The codeword under 0..3 clockwise quarter-turns."""
    r1 = rotate_payload_cw(code)
    r2 = rotate_payload_cw(r1)
    r3 = rotate_payload_cw(r2)
    return (code, r1, r2, r3)


def hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


@lru_cache(maxsize=1)
def _popcount_table() -> np.ndarray:
    return np.array([i.bit_count() for i in range(1 << PAYLOAD_BITS)], dtype=np.uint8)


@lru_cache(maxsize=1)
def _rotation_table() -> np.ndarray:
    """rot_cw for every 16-bit value, vectorized over the bit permutation."""
    codes = np.arange(1 << PAYLOAD_BITS, dtype=np.uint32)
    rotated = np.zeros_like(codes)
    for r in range(PAYLOAD_MODULES):
        for c in range(PAYLOAD_MODULES):
            src = (PAYLOAD_MODULES - 1 - c) * PAYLOAD_MODULES + r
            dst = r * PAYLOAD_MODULES + c
            rotated |= ((codes >> src) & 1) << dst
    return rotated


@lru_cache(maxsize=1)
def _self_compatible_pool() -> tuple[int, ...]:
    """All codewords whose own four rotations are distinct and pairwise at
    least MIN_DISTANCE apart.

    Rotation permutes bits, so in-orbit distances reduce to d(c, rot c) and
    d(c, rot^2 c); distinctness likewise.
    """
    pop = _popcount_table()
    rot = _rotation_table()
    codes = np.arange(1 << PAYLOAD_BITS, dtype=np.uint32)
    r1 = rot[codes]
    r2 = rot[r1]
    ok = (
        (codes != r1)
        & (codes != r2)
        & (pop[codes ^ r1] >= MIN_DISTANCE)
        & (pop[codes ^ r2] >= MIN_DISTANCE)
    )
    return tuple(int(c) for c in codes[ok])


@lru_cache(maxsize=16)
def build_dictionary(seed: int = DEFAULT_SEED) -> MarkerSpec:
    """Brute-force a four-codeword dictionary, deterministically per seed.

    Greedy selection over a shuffled pool of self-compatible candidates,
    restarting with a fresh shuffle when a pass dead-ends.
    """
    pool = list(_self_compatible_pool())
    rng = random.Random(seed)
    max_restarts = 200

    for _ in range(max_restarts):
        candidates = list(pool)
        rng.shuffle(candidates)
        chosen: list[int] = []
        patterns: list[int] = []
        for cand in candidates:
            rots = rotations(cand)
            if all(hamming(p, r) >= MIN_DISTANCE for p in patterns for r in rots):
                chosen.append(cand)
                patterns.extend(rots)
                if len(chosen) == len(ALL_CARDS):
                    return MarkerSpec(codewords=tuple(chosen))
    raise DictionarySearchFailed(
        f"no {MIN_DISTANCE}-distance dictionary found for seed {seed} "
        f"within {max_restarts} restarts"
    )


def default_marker_spec() -> MarkerSpec:
    return build_dictionary(DEFAULT_SEED)


def best_match(bits: int, spec: MarkerSpec) -> tuple[CardId, int, int]:
    """Closest rotated codeword as (card, rotation, hamming distance).

    Ties (only possible far outside the decode radius) go to the lowest card
    value, then the lowest rotation.
    """
    best: tuple[CardId, int, int] | None = None
    for card in ALL_CARDS:
        for rotation, pattern in enumerate(rotations(spec.codeword(card))):
            d = hamming(bits, pattern)
            if best is None or d < best[2]:
                best = (card, rotation, d)
    assert best is not None
    return best


def decode_payload(
    bits: int, spec: MarkerSpec, radius: int = 2
) -> tuple[CardId, int] | None:
    """Match payload bits against every rotated codeword.

    Returns (card, quarter-turns clockwise) for the unique codeword within
    `radius` bit errors, or None when nothing matches. Uniqueness inside the
    radius is guaranteed by the dictionary's distance budget.
    """
    card, rotation, distance = best_match(bits, spec)
    if distance <= radius:
        return card, rotation
    return None
