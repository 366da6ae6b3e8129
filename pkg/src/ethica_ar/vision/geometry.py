"""Planar geometry: quads, polygon simplification, homographies.

Image coordinates put pixel centers on integer (x, y) with x growing right
and y growing down; "clockwise" is the on-screen sense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import DegenerateConfiguration

# Corners of the canonical marker square (the black border outline),
# clockwise from top-left.
CANONICAL_CORNERS: tuple[tuple[float, float], ...] = (
    (0.0, 0.0),
    (1.0, 0.0),
    (1.0, 1.0),
    (0.0, 1.0),
)


@dataclass(frozen=True)
class Quad:
    """Convex four-corner polygon, corners clockwise starting top-left."""

    corners: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.corners) != 4:
            raise ValueError("a quad has exactly four corners")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.corners, dtype=np.float64)

    def area(self) -> float:
        return polygon_area(self.as_array())

    def bbox(self) -> tuple[float, float, float, float]:
        pts = self.as_array()
        return (
            float(pts[:, 0].min()),
            float(pts[:, 1].min()),
            float(pts[:, 0].max()),
            float(pts[:, 1].max()),
        )


def polygon_area(points: np.ndarray) -> float:
    """Unsigned shoelace area of a closed polygon given as (n, 2) vertices."""
    x = points[:, 0]
    y = points[:, 1]
    return float(abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))) / 2.0


def perimeter(points: np.ndarray) -> float:
    closed = np.vstack([points, points[:1]])
    return float(np.hypot(*(np.diff(closed, axis=0).T)).sum())


def is_strictly_convex(points: np.ndarray) -> bool:
    """True when consecutive edge cross products all share one strict sign."""
    n = len(points)
    sign = 0
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        c = points[(i + 2) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross == 0:
            return False
        s = 1 if cross > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def simplify_closed_contour(points: np.ndarray, tolerance: float) -> np.ndarray:
    """Douglas-Peucker on a closed contour.

    Splits the loop at the first vertex and the vertex farthest from it,
    simplifies both chains against the perpendicular-distance tolerance, and
    returns the surviving vertices in contour order.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    if n < 3:
        return pts.copy()

    d2 = ((pts - pts[0]) ** 2).sum(axis=1)
    split = int(np.argmax(d2))
    if split == 0:  # all points coincide
        return pts[:1].copy()

    # virtual closed sequence: index n aliases index 0
    closed = np.vstack([pts, pts[:1]])
    keep = np.zeros(n + 1, dtype=bool)
    keep[0] = keep[split] = True
    _dp_mark(closed, 0, split, tolerance, keep)
    _dp_mark(closed, split, n, tolerance, keep)
    return pts[keep[:n]].copy()


def _dp_mark(pts: np.ndarray, i0: int, i1: int, tol: float, keep: np.ndarray) -> None:
    stack = [(i0, i1)]
    while stack:
        a, b = stack.pop()
        if b - a < 2:
            continue
        pa = pts[a]
        pb = pts[b]
        seg = pb - pa
        length = math.hypot(seg[0], seg[1])
        sub = pts[a + 1 : b]
        diff = sub - pa
        if length == 0.0:
            dists = np.hypot(diff[:, 0], diff[:, 1])
        else:
            dists = np.abs(diff[:, 0] * seg[1] - diff[:, 1] * seg[0]) / length
        k = int(np.argmax(dists))
        if dists[k] > tol:
            mid = a + 1 + k
            keep[mid] = True
            stack.append((a, mid))
            stack.append((mid, b))


def canonicalize_quad(points: np.ndarray) -> Quad:
    """Order four corners clockwise starting at the top-left-most one."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.shape != (4, 2):
        raise ValueError("expected four (x, y) corners")
    center = pts.mean(axis=0)
    angles = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
    order = np.argsort(angles, kind="stable")  # increasing angle = clockwise on screen
    ring = pts[order]
    sums = ring.sum(axis=1)
    best = 0
    for i in range(1, 4):
        if (sums[i], ring[i, 1], ring[i, 0]) < (sums[best], ring[best, 1], ring[best, 0]):
            best = i
    ring = np.roll(ring, -best, axis=0)
    return Quad(corners=tuple((float(x), float(y)) for x, y in ring))


def _check_general_position(pts: np.ndarray, label: str) -> None:
    scale = 0.0
    for i, j in combinations(range(4), 2):
        scale = max(scale, float(np.hypot(*(pts[i] - pts[j]))))
    if scale == 0.0:
        raise DegenerateConfiguration(f"{label} points coincide")
    limit = 1e-9 * scale * scale
    for i, j, k in combinations(range(4), 3):
        v1 = pts[j] - pts[i]
        v2 = pts[k] - pts[i]
        area2 = abs(float(v1[0] * v2[1] - v1[1] * v2[0]))
        if area2 <= limit:
            raise DegenerateConfiguration(
                f"{label} points {i}, {j}, {k} are collinear"
            )


def _normalization(pts: np.ndarray) -> np.ndarray:
    """Hartley similarity: centroid to origin, RMS distance sqrt(2)."""
    centroid = pts.mean(axis=0)
    rms = float(np.sqrt(((pts - centroid) ** 2).sum(axis=1).mean()))
    s = math.sqrt(2.0) / rms if rms > 0 else 1.0
    return np.array(
        [[s, 0.0, -s * centroid[0]], [0.0, s, -s * centroid[1]], [0.0, 0.0, 1.0]]
    )


def estimate_homography(src, dst) -> np.ndarray:
    """Exact four-point homography by the direct linear transform.

    Returns the 3x3 matrix H with H[2,2] = 1 mapping each src point onto its
    dst point. Points are Hartley-normalized before the 8x8 solve for
    numerical conditioning.
    """
    src_pts = np.asarray(src, dtype=np.float64)
    dst_pts = np.asarray(dst, dtype=np.float64)
    if src_pts.shape != (4, 2) or dst_pts.shape != (4, 2):
        raise ValueError("expected four source and four destination points")
    _check_general_position(src_pts, "source")
    _check_general_position(dst_pts, "destination")

    t_src = _normalization(src_pts)
    t_dst = _normalization(dst_pts)
    sn = apply_homography(t_src, src_pts)
    dn = apply_homography(t_dst, dst_pts)

    a = np.zeros((8, 8))
    b = np.zeros(8)
    for i in range(4):
        sx, sy = sn[i]
        dx, dy = dn[i]
        a[2 * i] = [sx, sy, 1.0, 0.0, 0.0, 0.0, -dx * sx, -dx * sy]
        b[2 * i] = dx
        a[2 * i + 1] = [0.0, 0.0, 0.0, sx, sy, 1.0, -dy * sx, -dy * sy]
        b[2 * i + 1] = dy
    try:
        sol = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise DegenerateConfiguration(str(exc)) from None

    hn = np.array(
        [
            [sol[0], sol[1], sol[2]],
            [sol[3], sol[4], sol[5]],
            [sol[6], sol[7], 1.0],
        ]
    )
    h = np.linalg.inv(t_dst) @ hn @ t_src
    if h[2, 2] == 0:
        raise DegenerateConfiguration("homography has a vanishing scale term")
    h /= h[2, 2]
    if np.linalg.det(h) == 0:
        raise DegenerateConfiguration("homography is singular")
    return h


def apply_homography(h: np.ndarray, points) -> np.ndarray:
    """Map (n, 2) points through a 3x3 homography."""
    pts = np.asarray(points, dtype=np.float64)
    ones = np.ones((len(pts), 1))
    hom = np.hstack([pts, ones]) @ np.asarray(h, dtype=np.float64).T
    return hom[:, :2] / hom[:, 2:3]
