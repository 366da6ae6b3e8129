"""Grayscale PNG input/output."""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError


def save_png(img: np.ndarray, path: str | Path) -> None:
    if img.ndim != 2 or img.dtype != np.uint8:
        raise ValueError("expected a 2-D uint8 grayscale image")
    Image.fromarray(img, mode="L").save(str(path), format="PNG")


def load_png(path: str | Path) -> np.ndarray:
    with Image.open(str(path)) as image:
        return np.asarray(image.convert("L"), dtype=np.uint8).copy()


def decode_image_bytes(data: bytes) -> np.ndarray:
    """Decode an uploaded image to grayscale; color inputs are converted.

    Raises ValueError when the bytes are not a decodable image.
    """
    try:
        with Image.open(io.BytesIO(data)) as image:
            return np.asarray(image.convert("L"), dtype=np.uint8).copy()
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise ValueError(f"undecodable image: {exc}") from None
