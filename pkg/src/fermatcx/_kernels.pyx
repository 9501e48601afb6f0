# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batched retraction kernels.

Same arithmetic as ``_kernels_py`` and ``retraction``; complex numbers are
carried as (re, im) pairs of doubles.
"""

import numpy as np

from libc.math cimport atan2, ceil, cos, sin, pow, hypot, fabs

cdef double PI = 3.141592653589793
cdef double TWO_PI = 6.283185307179586
cdef double REGION_TOL = 1e-12


cdef inline void cpow_int(double re, double im, int n, double* ore, double* oim) noexcept nogil:
    # binary exponentiation, as Python's complex ** int
    cdef double rr = 1.0, ri = 0.0, br = re, bi = im, tr
    while n > 0:
        if n & 1:
            tr = rr * br - ri * bi
            ri = rr * bi + ri * br
            rr = tr
        n >>= 1
        if n:
            tr = br * br - bi * bi
            bi = 2.0 * br * bi
            br = tr
    ore[0] = rr
    oim[0] = ri


cdef inline void lift_g(double wr, double wi, double t, int d,
                        double* ore, double* oim) noexcept nogil:
    cdef double theta, q, vr, vi, ui, phi, ang, rho
    cdef int k
    ore[0] = wr
    oim[0] = wi
    if wr == 0.0 and wi == 0.0:
        return
    theta = atan2(wi, wr)
    if theta < 0:
        theta += TWO_PI
    q = theta * d / PI
    k = <int>ceil(q) if q > 0 else 1
    if k < 1:
        k = 1
    if k > 2 * d:
        k = 2 * d
    cpow_int(wr, wi, d, &vr, &vi)
    ui = (1.0 - t) * vi
    if ui == vi:
        return
    if vr == 0.0 and ui == 0.0:
        ore[0] = 0.0
        oim[0] = 0.0
        return
    phi = atan2(ui, vr)
    if k % 2 == 1:
        if phi < -PI / 2:
            phi += TWO_PI
        ang = phi / d + (k - 1) * PI / d
    else:
        if phi < PI / 2:
            phi += TWO_PI
        ang = (phi - PI) / d + (k - 1) * PI / d
    rho = pow(hypot(vr, ui), 1.0 / d)
    ore[0] = rho * cos(ang)
    oim[0] = rho * sin(ang)


cdef inline void lift_r2_row(double* row, double t, int d) noexcept nogil:
    cdef double Q[3]
    cdef double T[3]
    cdef double S, m, im, scale, denom
    cdef int j, nneg = 0, negj = -1, posj = -1
    for j in range(3):
        cpow_int(row[2 * j], row[2 * j + 1], d, &Q[j], &im)
        if Q[j] < -REGION_TOL:
            nneg += 1
            negj = j
        else:
            posj = j
    if nneg == 0:
        return
    if nneg == 2:
        for j in range(3):
            T[j] = 1.0 if j == posj else 0.0
    else:
        denom = 1.0 - Q[negj]
        for j in range(3):
            T[j] = 0.0 if j == negj else Q[j] / denom
    for j in range(3):
        S = (1.0 - t) * Q[j] + t * T[j]
        if S == Q[j]:
            continue
        m = hypot(row[2 * j], row[2 * j + 1])
        scale = pow(fabs(S), 1.0 / d)
        if m > 0:
            row[2 * j] = row[2 * j] / m * scale
            row[2 * j + 1] = row[2 * j + 1] / m * scale
        else:
            row[2 * j] = scale
            row[2 * j + 1] = 0.0


def retract_batch(P, double t, int d):
    """``retract_full`` applied to every row of the ``(n, 3)`` complex array ``P``."""
    cdef double[:, ::1] a = np.ascontiguousarray(P, dtype=np.complex128).view(np.float64).copy()
    cdef Py_ssize_t i, n = a.shape[0]
    cdef int j
    cdef double s, re, im
    if t <= 0.5:
        s = 2.0 * t
    else:
        s = 1.0
    with nogil:
        for i in range(n):
            for j in range(3):
                lift_g(a[i, 2 * j], a[i, 2 * j + 1], s, d, &re, &im)
                a[i, 2 * j] = re
                a[i, 2 * j + 1] = im
            if t > 0.5:
                lift_r2_row(&a[i, 0], 2.0 * t - 1.0, d)
    return np.asarray(a).view(np.complex128)
