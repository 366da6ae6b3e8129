"""NumPy implementation of the pixel kernels.

This is the fallback used when the compiled extension is unavailable. The
compiled twin (`_kernels_cy`) implements the same four operations with the
same arithmetic, in the same order, so both backends produce bit-identical
results; tests/test_backends.py enforces that.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

# Moore neighbourhood, clockwise on screen (x right, y down), starting west.
_DIRS = ((-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1))
_OFFSET_TO_DIR = {d: i for i, d in enumerate(_DIRS)}


def adaptive_threshold(img: np.ndarray, window: int, offset: float) -> np.ndarray:
    """Binarize against the local window mean.

    A pixel becomes 0 (dark) iff value < window_mean - offset, with windows
    clamped at the borders. Output pixels are exactly 0 or 255.
    """
    h, w = img.shape
    integral = np.zeros((h + 1, w + 1), dtype=np.int64)
    np.cumsum(np.cumsum(img, axis=0, dtype=np.int64), axis=1, out=integral[1:, 1:])

    r = window // 2
    ys = np.arange(h)
    xs = np.arange(w)
    y0 = np.maximum(ys - r, 0)
    y1 = np.minimum(ys + r, h - 1)
    x0 = np.maximum(xs - r, 0)
    x1 = np.minimum(xs + r, w - 1)

    sums = (
        integral[np.ix_(y1 + 1, x1 + 1)]
        - integral[np.ix_(y0, x1 + 1)]
        - integral[np.ix_(y1 + 1, x0)]
        + integral[np.ix_(y0, x0)]
    )
    area = (y1 - y0 + 1)[:, None] * (x1 - x0 + 1)[None, :]
    # v < sum/area - offset, rearranged to avoid the division
    dark = (img.astype(np.float64) + offset) * area < sums
    return np.where(dark, 0, 255).astype(np.uint8)


def trace_boundaries(binary: np.ndarray) -> list[np.ndarray]:
    """Trace the boundaries of dark (0) 8-connected regions.

    Scans row-major; every dark pixel whose left neighbour is light (or the
    image edge) starts a Moore-neighbour trace unless it already lies on a
    traced boundary. Outer boundaries come out clockwise on screen; hole
    boundaries are traced too and left to the caller to filter. Returns
    (n, 2) int32 arrays of (x, y) pixel coordinates in trace order, in
    scan-discovery order.
    """
    h, w = binary.shape
    dark = binary == 0
    visited = np.zeros((h, w), dtype=bool)

    start_mask = dark.copy()
    start_mask[:, 1:] &= ~dark[:, :-1]
    starts = np.argwhere(start_mask)  # row-major (y, x)

    contours = []
    for y0, x0 in starts.tolist():
        if visited[y0, x0]:
            continue
        contours.append(_trace(dark, visited, x0, y0))
    return contours


def _trace(dark: np.ndarray, visited: np.ndarray, x0: int, y0: int) -> np.ndarray:
    h, w = dark.shape
    points = [(x0, y0)]
    visited[y0, x0] = True

    cx, cy = x0, y0
    bdir = 0  # backtrack direction: the light pixel west of the start
    # Jacob's stopping criterion: terminate on re-entering the start pixel
    # with a backtrack direction already seen there.
    seen_at_start = [False] * 8
    seen_at_start[bdir] = True
    max_steps = 8 * h * w

    for _ in range(max_steps):
        found = -1
        prev_dir = bdir
        for k in range(1, 9):
            d = (bdir + k) % 8
            nx = cx + _DIRS[d][0]
            ny = cy + _DIRS[d][1]
            if 0 <= nx < w and 0 <= ny < h and dark[ny, nx]:
                found = d
                break
            prev_dir = d
        if found < 0:
            break  # isolated pixel

        # backtrack for the next step: the neighbour checked just before the
        # hit, re-expressed relative to the new current pixel
        lx = cx + _DIRS[prev_dir][0]
        ly = cy + _DIRS[prev_dir][1]
        cx += _DIRS[found][0]
        cy += _DIRS[found][1]
        bdir = _OFFSET_TO_DIR[(lx - cx, ly - cy)]

        if cx == x0 and cy == y0:
            if seen_at_start[bdir]:
                break
            seen_at_start[bdir] = True
        points.append((cx, cy))
        visited[cy, cx] = True

    return np.array(points, dtype=np.int32)


def bilinear_sample(img: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Sample at float coordinates with edge clamping; pixel centers sit on
    integer coordinates."""
    h, w = img.shape
    x0 = np.floor(xs)
    y0 = np.floor(ys)
    fx = xs - x0
    fy = ys - y0
    x0 = x0.astype(np.int64)
    y0 = y0.astype(np.int64)
    x0c = np.clip(x0, 0, w - 1)
    x1c = np.clip(x0 + 1, 0, w - 1)
    y0c = np.clip(y0, 0, h - 1)
    y1c = np.clip(y0 + 1, 0, h - 1)
    v00 = img[y0c, x0c].astype(np.float64)
    v01 = img[y0c, x1c].astype(np.float64)
    v10 = img[y1c, x0c].astype(np.float64)
    v11 = img[y1c, x1c].astype(np.float64)
    top = v00 * (1.0 - fx) + v01 * fx
    bottom = v10 * (1.0 - fx) + v11 * fx
    return top * (1.0 - fy) + bottom * fy


def warp_into(
    dst: np.ndarray,
    src: np.ndarray,
    m: np.ndarray,
    x_lo: int,
    y_lo: int,
    x_hi: int,
    y_hi: int,
) -> None:
    """Inverse-map warp of `src` into `dst` over an inclusive pixel box.

    `m` maps destination pixel coordinates to continuous source coordinates.
    Destination pixels whose preimage lies inside the source footprint
    ([-0.5, size-0.5] in each axis) are replaced by the bilinear sample,
    rounded half-up; others are left untouched. Modifies `dst` in place.
    """
    sh, sw = src.shape
    xs, ys = np.meshgrid(
        np.arange(x_lo, x_hi + 1, dtype=np.float64),
        np.arange(y_lo, y_hi + 1, dtype=np.float64),
    )
    u = m[0, 0] * xs + m[0, 1] * ys + m[0, 2]
    v = m[1, 0] * xs + m[1, 1] * ys + m[1, 2]
    z = m[2, 0] * xs + m[2, 1] * ys + m[2, 2]
    sx = u / z
    sy = v / z
    inside = (sx >= -0.5) & (sx <= sw - 0.5) & (sy >= -0.5) & (sy <= sh - 0.5)
    if not inside.any():
        return
    vals = bilinear_sample(src, sx[inside], sy[inside])
    vals = np.floor(vals + 0.5).astype(np.uint8)
    dst[ys[inside].astype(np.int64), xs[inside].astype(np.int64)] = vals
