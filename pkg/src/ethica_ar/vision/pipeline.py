"""The frame pipeline: threshold, quad extraction, payload readout, decode.

All stages are pure functions of their inputs; the only configuration is an
explicit DetectionParams value, so identical frames always produce identical
detection lists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..cards import CardId
from ..errors import BadWindow, DegenerateConfiguration, OutOfFrame
from .backend import kernels
from .dictionary import BORDER_MODULE_COUNT, GRID_MODULES, MarkerSpec, best_match
from .geometry import (
    CANONICAL_CORNERS,
    Quad,
    canonicalize_quad,
    estimate_homography,
    is_strictly_convex,
    perimeter,
    polygon_area,
    simplify_closed_contour,
)
from .params import DEFAULT_MIN_CONTRAST, DetectionParams

# Fraction of the contour perimeter used as the polygon simplification
# tolerance when fitting quads.
SIMPLIFY_PERIMETER_FRACTION = 0.03


@dataclass(frozen=True)
class Detection:
    """One decoded card in a frame."""

    card: CardId
    quad: Quad
    rotation: int  # quarter-turns clockwise of the card in the frame
    confidence: float


def ensure_gray(img: np.ndarray) -> np.ndarray:
    img = np.ascontiguousarray(img)
    if img.ndim != 2 or img.dtype != np.uint8:
        raise ValueError("expected a 2-D uint8 grayscale image")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("image must be non-empty")
    return img


def threshold_adaptive(img: np.ndarray, window: int, offset: float) -> np.ndarray:
    """Local-mean binarization: 0 where a pixel is `offset` below the mean
    of its window x window neighbourhood (clamped at borders), else 255."""
    img = ensure_gray(img)
    h, w = img.shape
    if window % 2 == 0 or window < 3 or window > min(w, h):
        raise BadWindow(
            f"window must be odd, >= 3 and <= min(width, height); got {window} "
            f"for a {w}x{h} image"
        )
    return kernels().adaptive_threshold(img, window, float(offset))


def find_quads(binary: np.ndarray, min_area: float) -> list[Quad]:
    """Extract convex quads from dark-region boundaries.

    Each traced boundary is simplified at 3% of its perimeter; boundaries
    that reduce to exactly four strictly-convex corners with at least
    `min_area` enclosed are returned, canonicalized, in trace order.
    """
    binary = ensure_gray(binary)
    quads = []
    # n boundary pixels span at most n*sqrt(2) of perimeter, enclosing at
    # most (n*sqrt(2)/4)^2 of area, so short contours can never reach
    # min_area
    min_boundary_len = max(4, int(2.8 * np.sqrt(max(min_area, 0.0))) - 4)
    for contour in kernels().trace_boundaries(binary):
        if len(contour) < min_boundary_len:
            continue
        pts = contour.astype(np.float64)
        tol = SIMPLIFY_PERIMETER_FRACTION * perimeter(pts)
        verts = simplify_closed_contour(pts, tol)
        if len(verts) != 4:
            continue
        if not is_strictly_convex(verts):
            continue
        if polygon_area(verts) < min_area:
            continue
        quads.append(canonicalize_quad(verts))
    return quads


def _module_centers() -> np.ndarray:
    """Canonical-square coordinates of all 36 module centers, row-major."""
    step = 1.0 / GRID_MODULES
    pts = [
        ((c + 0.5) * step, (r + 0.5) * step)
        for r in range(GRID_MODULES)
        for c in range(GRID_MODULES)
    ]
    return np.asarray(pts, dtype=np.float64)


_MODULE_CENTERS = _module_centers()

_BORDER_INDEX = np.array(
    [
        r * GRID_MODULES + c
        for r in range(GRID_MODULES)
        for c in range(GRID_MODULES)
        if r in (0, GRID_MODULES - 1) or c in (0, GRID_MODULES - 1)
    ]
)
_PAYLOAD_INDEX = np.array(
    [
        r * GRID_MODULES + c
        for r in range(1, GRID_MODULES - 1)
        for c in range(1, GRID_MODULES - 1)
    ]
)


def otsu_threshold(values: np.ndarray) -> float:
    """Otsu's split of a small sample set, as a concrete threshold value.

    Maximizes between-class variance over all splits of the sorted samples;
    the returned threshold is the midpoint of the gap at the best split
    (first best on ties).
    """
    v = np.sort(np.asarray(values, dtype=np.float64))
    n = len(v)
    if n < 2:
        return float(v[0]) if n else 0.0
    prefix = np.cumsum(v)
    total = prefix[-1]
    best_k = 1
    best_score = -1.0
    for k in range(1, n):
        w0 = k / n
        w1 = 1.0 - w0
        mean0 = prefix[k - 1] / k
        mean1 = (total - prefix[k - 1]) / (n - k)
        score = w0 * w1 * (mean0 - mean1) ** 2
        if score > best_score:
            best_score = score
            best_k = k
    return float((v[best_k - 1] + v[best_k]) / 2.0)


def _sample_module_values(img: np.ndarray, h: np.ndarray) -> np.ndarray:
    pts = _MODULE_CENTERS
    hom = np.hstack([pts, np.ones((len(pts), 1))]) @ np.asarray(h, dtype=np.float64).T
    xs = hom[:, 0] / hom[:, 2]
    ys = hom[:, 1] / hom[:, 2]
    height, width = img.shape
    if (
        (xs < 0).any()
        or (xs > width - 1).any()
        or (ys < 0).any()
        or (ys > height - 1).any()
    ):
        raise OutOfFrame("module sample point outside the image")
    return kernels().bilinear_sample(img, np.ascontiguousarray(xs), np.ascontiguousarray(ys))


def _classify_modules(
    samples: np.ndarray, min_contrast: float
) -> tuple[np.ndarray, float]:
    """Dark/light flags for the 36 samples plus the threshold used.

    Below `min_contrast` spread the candidate has no black/white structure
    to read: everything is classified light.
    """
    if float(samples.max() - samples.min()) < min_contrast:
        return np.zeros(len(samples), dtype=bool), float("nan")
    threshold = otsu_threshold(samples)
    return samples < threshold, threshold


def sample_grid(
    img: np.ndarray,
    h: np.ndarray,
    spec: MarkerSpec,
    min_contrast: float = DEFAULT_MIN_CONTRAST,
) -> tuple[int, bool]:
    """Read the 36 module centers through a canonical-square-to-image
    homography.

    Returns (payload bits, border_ok): a payload bit is 1 when its module
    sampled dark (below the Otsu split of all 36 samples), and border_ok
    requires every border module dark. The marker spec fixes geometry only;
    no decoding happens here.
    """
    img = ensure_gray(img)
    samples = _sample_module_values(img, h)
    dark, _ = _classify_modules(samples, min_contrast)
    border_ok = bool(dark[_BORDER_INDEX].all())
    payload_dark = dark[_PAYLOAD_INDEX]
    bits = 0
    for i, flag in enumerate(payload_dark):
        if flag:
            bits |= 1 << i
    return bits, border_ok


def _bbox_overlap(a: Quad, b: Quad) -> bool:
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    return ax0 <= bx1 and bx0 <= ax1 and ay0 <= by1 and by0 <= ay1


def detect(
    frame: np.ndarray,
    spec: MarkerSpec,
    params: DetectionParams | None = None,
) -> list[Detection]:
    """Find and identify every marker in a grayscale frame.

    Pipeline: adaptive threshold, quad extraction, per-quad homography,
    module sampling, codeword match. A candidate is accepted only when its
    whole border ring reads dark and the payload is within the Hamming
    radius of some rotated codeword. Confidence is
    (1 - distance / (radius + 1)) scaled by the fraction of dark border
    modules (1.0 for accepted candidates). Overlapping quads that decode to
    the same card collapse to the most confident one.
    """
    if params is None:
        params = DetectionParams()
    params.validate()
    frame = ensure_gray(frame)

    binary = threshold_adaptive(frame, params.window, params.offset)
    candidates: list[Detection] = []
    for quad in find_quads(binary, params.min_area):
        try:
            h = estimate_homography(CANONICAL_CORNERS, quad.corners)
            samples = _sample_module_values(frame, h)
        except (DegenerateConfiguration, OutOfFrame):
            continue
        dark, _ = _classify_modules(samples, params.min_contrast)
        border_dark = int(dark[_BORDER_INDEX].sum())
        if border_dark < BORDER_MODULE_COUNT:
            continue
        bits = 0
        for i, flag in enumerate(dark[_PAYLOAD_INDEX]):
            if flag:
                bits |= 1 << i
        card, rotation, distance = best_match(bits, spec)
        if distance > params.hamming_radius:
            continue
        confidence = (1.0 - distance / (params.hamming_radius + 1)) * (
            border_dark / BORDER_MODULE_COUNT
        )
        candidates.append(Detection(card=card, quad=quad, rotation=rotation, confidence=confidence))

    merged: list[Detection] = []
    for det in candidates:
        replaced = False
        for i, kept in enumerate(merged):
            if kept.card == det.card and _bbox_overlap(kept.quad, det.quad):
                if det.confidence > kept.confidence:
                    merged[i] = det
                replaced = True
                break
        if not replaced:
            merged.append(det)
    return merged
