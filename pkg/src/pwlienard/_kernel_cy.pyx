# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trajectory kernel: adaptive RK45 with switching-line events.

Typed twin of ``_kernel_py``; both expose the same ``integrate_return``
entry point and must stay behaviorally identical (the test suite compares
them when this extension is available).  See ``_kernel_py`` for the field
mode and status code conventions.
"""

from libc.math cimport fabs, hypot, pow

BACKEND_NAME = "compiled"

DEF MAXC = 64

cdef double _TRANSVERSAL_GUARD = 1e-8
cdef double _MIN_RETURN_TIME = 0.5

# Dormand-Prince 5(4) tableau
cdef double[7] _C5 = [0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0]
cdef double[7][6] _A5 = [
    [0, 0, 0, 0, 0, 0],
    [1.0 / 5, 0, 0, 0, 0, 0],
    [3.0 / 40, 9.0 / 40, 0, 0, 0, 0],
    [44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0],
    [19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0],
    [9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0],
    [35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84],
]
cdef double[7] _B5 = [35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                      -2187.0 / 6784, 11.0 / 84, 0.0]
cdef double[7] _B4 = [5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                      -92097.0 / 339200, 187.0 / 2100, 1.0 / 40]


cdef struct Coeffs:
    double a0[MAXC]
    double a1[MAXC]
    double b0[MAXC]
    double b1[MAXC]
    double c[MAXC]
    int na0, na1, nb0, nb1, nc


cdef inline double _polyval(double* co, int n, double x) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(n - 1, -1, -1):
        acc = acc * x + co[i]
    return acc


cdef inline void _field(int mode, Coeffs* co, double lam, double eps,
                        double direction, double x, double y, double side,
                        double* dx, double* dy) noexcept nogil:
    cdef double v, f0, f1, g0, g1, g
    if mode == 2:
        v = y
    else:
        v = x
    f0 = _polyval(co.a0, co.na0, v)
    f1 = _polyval(co.a1, co.na1, v)
    g0 = _polyval(co.b0, co.nb0, v)
    g1 = _polyval(co.b1, co.nb1, v)
    g = _polyval(co.c, co.nc, v)
    if mode == 2:
        dx[0] = direction * (y + lam * side * g
                             + eps * (x * (f0 + lam * f1) + side * (g0 + lam * g1)))
        dy[0] = direction * (-x)
    else:
        dx[0] = direction * y
        dy[0] = direction * (-x - lam * side * g
                             - eps * (y * (f0 + lam * f1) + side * (g0 + lam * g1)))


cdef inline double _rk_step(int mode, Coeffs* co, double lam, double eps,
                            double direction, double x, double y, double side,
                            double h, double* xo, double* yo) noexcept nogil:
    cdef double[7] kx
    cdef double[7] ky
    cdef double xs, ys, ex, ey, x5, y5
    cdef int i, j
    _field(mode, co, lam, eps, direction, x, y, side, &kx[0], &ky[0])
    for i in range(1, 7):
        xs = x
        ys = y
        for j in range(i):
            xs += h * _A5[i][j] * kx[j]
            ys += h * _A5[i][j] * ky[j]
        _field(mode, co, lam, eps, direction, xs, ys, side, &kx[i], &ky[i])
    x5 = x
    y5 = y
    ex = 0.0
    ey = 0.0
    for i in range(7):
        x5 += h * _B5[i] * kx[i]
        y5 += h * _B5[i] * ky[i]
        ex += h * (_B5[i] - _B4[i]) * kx[i]
        ey += h * (_B5[i] - _B4[i]) * ky[i]
    xo[0] = x5
    yo[0] = y5
    return hypot(ex, ey)


cdef int _fill(double* dst, object src) except -1:
    cdef int i, n
    n = len(src)
    if n > MAXC:
        raise ValueError("coefficient vector too long for compiled kernel")
    for i in range(n):
        dst[i] = src[i]
    return n


def integrate_return(int mode, fa0, fa1, fb0, fb1, fc, double lam, double eps,
                     double x0, double y0, double rk_tol, double event_tol,
                     long max_steps, double r_min, double r_max,
                     double direction=1.0, record=False):
    """Integrate from a section point to its first full return.

    Returns (status, x, y, t, crossings); see the Python twin for details.
    """
    cdef Coeffs co
    co.na0 = _fill(&co.a0[0], fa0)
    co.na1 = _fill(&co.a1[0], fa1)
    co.nb0 = _fill(&co.b0[0], fb0)
    co.nb1 = _fill(&co.b1[0], fb1)
    co.nc = _fill(&co.c[0], fc)

    cdef double x = x0, y = y0, t = 0.0
    cdef double h = 0.01
    cdef double x5, y5, err, tol, w_old, w_new, lo, hi, mid
    cdef double xe, ye, xm, ym, wm, vel, r, w0, dxv, dyv
    cdef double side
    cdef long steps = 0
    cdef int it
    crossings = []

    # side-independent switch-variable velocity at the start
    _field(mode, &co, lam, eps, direction, x, y, 0.0, &dxv, &dyv)
    w0 = dyv if mode == 0 else dxv
    if fabs(w0) < _TRANSVERSAL_GUARD:
        return 3, x, y, t, crossings
    side = 1.0 if w0 > 0 else -1.0

    while steps < max_steps:
        steps += 1
        err = _rk_step(mode, &co, lam, eps, direction, x, y, side, h, &x5, &y5)
        tol = rk_tol * (1.0 + hypot(x, y))
        if err > tol:
            h *= max(0.2, 0.9 * pow(tol / err, 0.2))
            continue
        w_old = y if mode == 0 else x
        w_new = y5 if mode == 0 else x5
        if w_old != 0.0 and ((w_old > 0.0) != (w_new > 0.0) or w_new == 0.0):
            lo = 0.0
            hi = h
            xe = x5
            ye = y5
            for it in range(80):
                mid = 0.5 * (lo + hi)
                _rk_step(mode, &co, lam, eps, direction, x, y, side, mid,
                         &xm, &ym)
                wm = ym if mode == 0 else xm
                if fabs(wm) <= event_tol:
                    lo = hi = mid
                    xe = xm
                    ye = ym
                    break
                if (wm > 0.0) == (w_old > 0.0):
                    lo = mid
                else:
                    hi = mid
                    xe = xm
                    ye = ym
                if hi - lo <= 1e-16 * max(1.0, h):
                    break
            t += 0.5 * (lo + hi)
            if mode == 0:
                x = xe
                y = 0.0
            else:
                x = 0.0
                y = ye
            _field(mode, &co, lam, eps, direction, x, y, 0.0, &dxv, &dyv)
            vel = dyv if mode == 0 else dxv
            if fabs(vel) < _TRANSVERSAL_GUARD:
                return 3, x, y, t, crossings
            side = 1.0 if vel > 0 else -1.0
            crossings.append((t, x, y, side))
            r = hypot(x, y)
            if r < r_min or r > r_max:
                return 1, x, y, t, crossings
            if t > _MIN_RETURN_TIME:
                if mode == 0 and x > 0.0:
                    return 0, x, y, t, crossings
                if mode != 0 and y > 0.0:
                    return 0, x, y, t, crossings
            h = 0.01
            continue
        x = x5
        y = y5
        t += h
        r = hypot(x, y)
        if r < r_min or r > r_max:
            return 1, x, y, t, crossings
        if err > 0.0:
            h *= min(5.0, 0.9 * pow(tol / err, 0.2))
        else:
            h *= 5.0
    return 2, x, y, t, crossings
