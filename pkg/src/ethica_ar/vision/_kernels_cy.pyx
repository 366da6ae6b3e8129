# cython: boundscheck=False, wraparound=False, cdivision=True, nonecheck=False
"""Compiled twin of the NumPy kernel backend.

Every operation mirrors `_kernels_py` arithmetic exactly (same expressions,
same evaluation order, IEEE doubles throughout) so the two backends return
bit-identical results.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()

BACKEND_NAME = "compiled"

cdef int[8] _DX = [-1, -1, 0, 1, 1, 1, 0, -1]
cdef int[8] _DY = [0, -1, -1, -1, 0, 1, 1, 1]
# direction index by (dy+1)*3 + (dx+1); 4 (the centre) is unused
cdef int[9] _OFF2DIR = [1, 2, 3, 0, -1, 4, 7, 6, 5]


def adaptive_threshold(cnp.uint8_t[:, ::1] img, int window, double offset):
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    out_arr = np.empty((h, w), dtype=np.uint8)
    integral_arr = np.zeros((h + 1, w + 1), dtype=np.int64)
    cdef cnp.uint8_t[:, ::1] out = out_arr
    cdef cnp.int64_t[:, ::1] integral = integral_arr
    cdef Py_ssize_t x, y, y0, y1, x0, x1
    cdef cnp.int64_t row, s, area
    cdef int r = window // 2

    for y in range(h):
        row = 0
        for x in range(w):
            row += img[y, x]
            integral[y + 1, x + 1] = integral[y, x + 1] + row

    for y in range(h):
        y0 = y - r if y - r > 0 else 0
        y1 = y + r if y + r < h - 1 else h - 1
        for x in range(w):
            x0 = x - r if x - r > 0 else 0
            x1 = x + r if x + r < w - 1 else w - 1
            s = integral[y1 + 1, x1 + 1] - integral[y0, x1 + 1] \
                - integral[y1 + 1, x0] + integral[y0, x0]
            area = (y1 - y0 + 1) * (x1 - x0 + 1)
            out[y, x] = 0 if (<double>img[y, x] + offset) * <double>area < <double>s else 255
    return out_arr


def trace_boundaries(cnp.uint8_t[:, ::1] binary):
    cdef Py_ssize_t h = binary.shape[0]
    cdef Py_ssize_t w = binary.shape[1]
    visited_arr = np.zeros((h, w), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] visited = visited_arr
    contours = []
    cdef Py_ssize_t x, y
    for y in range(h):
        for x in range(w):
            if binary[y, x] == 0 and visited[y, x] == 0 \
                    and (x == 0 or binary[y, x - 1] != 0):
                contours.append(_trace(binary, visited, x, y))
    return contours


cdef _trace(cnp.uint8_t[:, ::1] binary, cnp.uint8_t[:, ::1] visited,
            Py_ssize_t x0, Py_ssize_t y0):
    cdef Py_ssize_t h = binary.shape[0]
    cdef Py_ssize_t w = binary.shape[1]
    cdef Py_ssize_t cap = 64
    cdef Py_ssize_t n = 0
    buf_arr = np.empty((cap, 2), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] buf = buf_arr

    buf[0, 0] = <cnp.int32_t>x0
    buf[0, 1] = <cnp.int32_t>y0
    n = 1
    visited[y0, x0] = 1

    cdef Py_ssize_t cx = x0
    cdef Py_ssize_t cy = y0
    cdef int bdir = 0
    cdef int seen_at_start = 1 << 0
    cdef long long max_steps = 8 * <long long>h * <long long>w
    cdef long long step
    cdef int k, d, found, prev_dir
    cdef Py_ssize_t nx, ny, lx, ly

    for step in range(max_steps):
        found = -1
        prev_dir = bdir
        for k in range(1, 9):
            d = (bdir + k) % 8
            nx = cx + _DX[d]
            ny = cy + _DY[d]
            if 0 <= nx < w and 0 <= ny < h and binary[ny, nx] == 0:
                found = d
                break
            prev_dir = d
        if found < 0:
            break

        lx = cx + _DX[prev_dir]
        ly = cy + _DY[prev_dir]
        cx += _DX[found]
        cy += _DY[found]
        bdir = _OFF2DIR[(ly - cy + 1) * 3 + (lx - cx + 1)]

        if cx == x0 and cy == y0:
            if seen_at_start & (1 << bdir):
                break
            seen_at_start |= 1 << bdir

        if n == cap:
            cap *= 2
            new_arr = np.empty((cap, 2), dtype=np.int32)
            new_arr[:n] = buf_arr
            buf_arr = new_arr
            buf = buf_arr
        buf[n, 0] = <cnp.int32_t>cx
        buf[n, 1] = <cnp.int32_t>cy
        n += 1
        visited[cy, cx] = 1

    return buf_arr[:n].copy()


cdef inline double _bilinear_one(cnp.uint8_t[:, ::1] img, double x, double y):
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    cdef double x0f = floor(x)
    cdef double y0f = floor(y)
    cdef double fx = x - x0f
    cdef double fy = y - y0f
    cdef Py_ssize_t x0 = <Py_ssize_t>x0f
    cdef Py_ssize_t y0 = <Py_ssize_t>y0f
    cdef Py_ssize_t x0c = 0 if x0 < 0 else (w - 1 if x0 > w - 1 else x0)
    cdef Py_ssize_t x1c = 0 if x0 + 1 < 0 else (w - 1 if x0 + 1 > w - 1 else x0 + 1)
    cdef Py_ssize_t y0c = 0 if y0 < 0 else (h - 1 if y0 > h - 1 else y0)
    cdef Py_ssize_t y1c = 0 if y0 + 1 < 0 else (h - 1 if y0 + 1 > h - 1 else y0 + 1)
    cdef double v00 = <double>img[y0c, x0c]
    cdef double v01 = <double>img[y0c, x1c]
    cdef double v10 = <double>img[y1c, x0c]
    cdef double v11 = <double>img[y1c, x1c]
    cdef double top = v00 * (1.0 - fx) + v01 * fx
    cdef double bottom = v10 * (1.0 - fx) + v11 * fx
    return top * (1.0 - fy) + bottom * fy


def bilinear_sample(cnp.uint8_t[:, ::1] img, cnp.float64_t[::1] xs, cnp.float64_t[::1] ys):
    cdef Py_ssize_t n = xs.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef cnp.float64_t[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = _bilinear_one(img, xs[i], ys[i])
    return out_arr


def warp_into(cnp.uint8_t[:, ::1] dst, cnp.uint8_t[:, ::1] src, cnp.float64_t[:, ::1] m,
              Py_ssize_t x_lo, Py_ssize_t y_lo, Py_ssize_t x_hi, Py_ssize_t y_hi):
    cdef Py_ssize_t sh = src.shape[0]
    cdef Py_ssize_t sw = src.shape[1]
    cdef double m00 = m[0, 0], m01 = m[0, 1], m02 = m[0, 2]
    cdef double m10 = m[1, 0], m11 = m[1, 1], m12 = m[1, 2]
    cdef double m20 = m[2, 0], m21 = m[2, 1], m22 = m[2, 2]
    cdef Py_ssize_t x, y
    cdef double fx, fy, u, v, z, sx, sy, val
    for y in range(y_lo, y_hi + 1):
        fy = <double>y
        for x in range(x_lo, x_hi + 1):
            fx = <double>x
            u = m00 * fx + m01 * fy + m02
            v = m10 * fx + m11 * fy + m12
            z = m20 * fx + m21 * fy + m22
            sx = u / z
            sy = v / z
            if sx >= -0.5 and sx <= sw - 0.5 and sy >= -0.5 and sy <= sh - 0.5:
                val = _bilinear_one(src, sx, sy)
                dst[y, x] = <cnp.uint8_t>(<long>floor(val + 0.5))
