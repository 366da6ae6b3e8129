"""Rendering printable marker images."""

from __future__ import annotations

import numpy as np

from ..cards import CardId
from .dictionary import GRID_MODULES, PAYLOAD_MODULES, MarkerSpec


def module_grid(spec: MarkerSpec, card: CardId) -> np.ndarray:
    """The 6x6 marker as booleans, True = black module.

    Outer ring is the solid border; the inner 4x4 carries the codeword,
    bit (r*4 + c) at payload row r, column c.
    """
    grid = np.ones((GRID_MODULES, GRID_MODULES), dtype=bool)
    code = spec.codeword(card)
    for r in range(PAYLOAD_MODULES):
        for c in range(PAYLOAD_MODULES):
            bit = (code >> (r * PAYLOAD_MODULES + c)) & 1
            grid[r + 1, c + 1] = bool(bit)
    return grid


def render_marker(spec: MarkerSpec, card: CardId) -> np.ndarray:
    """Render the marker to an 8-bit grayscale image.

    The result is square with side (6 + 2*quiet_zone) * module_size_px:
    white quiet zone, black border ring, black/white payload modules.
    """
    grid = module_grid(spec, card)
    m = spec.module_size_px
    qz = spec.quiet_zone
    core = np.where(np.kron(grid, np.ones((m, m), dtype=bool)), 0, 255)
    img = np.full((spec.side_px, spec.side_px), 255, dtype=np.uint8)
    img[qz * m : qz * m + core.shape[0], qz * m : qz * m + core.shape[1]] = core
    return img
