# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled hot kernels; mirrors ``_pykernels`` call-for-call."""
from libc.math cimport sqrt, pow, isfinite

from array import array

cdef enum:
    OK = 0
    NO_CONVERGENCE = 1
    POLE = 2


def qpoch_finite(double complex a, double q, long k):
    cdef double complex p = 1.0
    cdef double complex aqj = a
    cdef long j
    for j in range(k):
        p = p * (1.0 - aqj)
        aqj = aqj * q
    return complex(p)


def qpoch_infinite(double complex a, double q, double abs_floor, long min_terms, long max_terms):
    cdef double complex p = 1.0
    cdef double complex aqk = a
    cdef double mag = abs(a)
    cdef long k = 0
    while True:
        if k >= min_terms and mag < abs_floor:
            return complex(p), k, True
        if k >= max_terms:
            return complex(p), k, False
        p = p * (1.0 - aqk)
        aqk = aqk * q
        mag = mag * q
        k += 1


def hyper_sum(upper, lower, double complex arg, double q, long nterm, double rel_tol,
              double abs_floor, long consecutive_small, long max_terms):
    cdef Py_ssize_t r = len(upper)
    cdef Py_ssize_t s_ = len(lower)
    cdef double complex[16] up
    cdef double complex[16] lo
    cdef Py_ssize_t i
    if r > 16 or s_ > 16:
        raise ValueError("at most 16 upper and 16 lower parameters")
    for i in range(r):
        up[i] = upper[i]
    for i in range(s_):
        lo[i] = lower[i]
    cdef long e = 1 + s_ - r
    cdef double complex t = 1.0
    cdef double complex s = 1.0
    cdef double abs_s = 1.0
    cdef double qk = 1.0
    cdef double complex num, den
    cdef double fac, abs_t
    cdef long small = 0
    cdef long k = 0
    cdef long j
    while True:
        if nterm >= 0:
            if k >= nterm:
                return complex(s), abs_s, k + 1, OK
        elif k >= max_terms:
            return complex(s), abs_s, k + 1, NO_CONVERGENCE
        num = 1.0
        for i in range(r):
            num = num * (1.0 - up[i] * qk)
        den = 1.0 - q * qk
        for i in range(s_):
            den = den * (1.0 - lo[i] * qk)
        if den == 0:
            return complex(s), abs_s, k + 1, POLE
        fac = 1.0
        if e > 0:
            for j in range(e):
                fac = fac * (-qk)
        elif e < 0:
            for j in range(-e):
                fac = fac / (-qk)
        t = t * num / den * fac * arg
        s = s + t
        abs_t = abs(t)
        if not (isfinite(abs_t) and isfinite(abs(s))):
            return complex(s), abs_s, k + 2, NO_CONVERGENCE
        abs_s += abs_t
        k += 1
        if nterm < 0:
            if abs_t < rel_tol * abs(s) + abs_floor:
                small += 1
                if small >= consecutive_small:
                    return complex(s), abs_s, k + 1, OK
            else:
                small = 0
        qk = qk * q


cdef double complex _ladder_top(double complex x, double complex a, double q, long n) nogil:
    cdef double complex h_prev = 1.0
    cdef double complex h, h_next
    cdef double complex two_x = 2.0 * x
    cdef double qn = q
    cdef long j
    if n == 0:
        return h_prev
    h = two_x - a
    for j in range(1, n):
        h_next = (two_x - a * qn) * h - (1.0 - qn) * h_prev
        h_prev = h
        h = h_next
        qn = qn * q
    return h


def hermite_ladder(double complex x, double complex a, double q, long n_max):
    cdef list out = [1.0 + 0.0j]
    if n_max == 0:
        return out
    cdef double complex two_x = 2.0 * x
    cdef double complex h_prev = 1.0
    cdef double complex h = two_x - a
    cdef double complex h_next
    cdef double qn = q
    cdef long j
    out.append(complex(h))
    for j in range(1, n_max):
        h_next = (two_x - a * qn) * h - (1.0 - qn) * h_prev
        h_prev = h
        h = h_next
        out.append(complex(h))
        qn = qn * q
    return out


def basis_value(long n, long m, double complex z, double complex t, double q):
    cdef double complex x = 0.5 * (z + 1.0 / z)
    cdef double a = pow(q, 0.5 * m)
    cdef double complex h = _ladder_top(x, a, q, n)
    cdef double complex tm = 1.0
    cdef long j
    if m >= 0:
        for j in range(m):
            tm = tm * t
    else:
        for j in range(-m):
            tm = tm * t
        tm = 1.0 / tm
    return complex(tm * h)


def qexp_sum(double complex z, double complex a, double complex b, double q, double rel_tol,
             double abs_floor, long consecutive_small, long max_terms):
    cdef double complex zi = 1.0 / z
    cdef double complex az = a * z
    cdef double complex azi = a * zi
    cdef double sq = sqrt(q)
    cdef double complex b2 = b * b
    cdef double complex c0 = 1.0
    cdef double complex c1 = b * sqrt(sq) * (1.0 - az) * (1.0 - azi) / (1.0 - q)
    cdef double complex s = c0 + c1
    cdef double complex t, f_neg, f_pos
    cdef double abs_t
    cdef long small = 0
    cdef double r = sq
    cdef double qn1 = q
    cdef double qn2
    cdef long n = 0
    if abs(c1) < rel_tol * abs(s) + abs_floor:
        small = 1
    while True:
        if n + 2 > max_terms:
            return complex(s), n + 2, NO_CONVERGENCE
        qn2 = qn1 * q
        f_neg = (r - az) * (r - azi)
        f_pos = (1.0 - az * r) * (1.0 - azi * r)
        if n & 1:
            t = c1 * b2 / ((1.0 - qn1) * (1.0 - qn2)) * f_neg * f_pos
            c1 = t
        else:
            t = c0 * b2 / ((1.0 - qn1) * (1.0 - qn2)) * f_neg * f_pos
            c0 = t
        s = s + t
        abs_t = abs(t)
        if not (isfinite(abs_t) and isfinite(abs(s))):
            return complex(s), n + 3, NO_CONVERGENCE
        n += 1
        if abs_t < rel_tol * abs(s) + abs_floor:
            small += 1
            if small >= consecutive_small:
                return complex(s), n + 2, OK
        else:
            small = 0
        r = r * sq
        qn1 = qn2


def g_sum(long n, double complex b, double q, double rel_tol, double abs_floor,
          long consecutive_small, long max_terms):
    cdef double sq = sqrt(q)
    cdef double step = pow(q, (2 * n + 1) / 4.0)
    cdef double complex t = 1.0
    cdef double complex s = 1.0
    cdef double qk1 = q
    cdef double abs_t
    cdef long small = 0
    cdef long k = 0
    while True:
        if k >= max_terms:
            return complex(s), k + 1, NO_CONVERGENCE
        t = t * b * step / (1.0 - qk1)
        s = s + t
        abs_t = abs(t)
        if not (isfinite(abs_t) and isfinite(abs(s))):
            return complex(s), k + 2, NO_CONVERGENCE
        k += 1
        if abs_t < rel_tol * abs(s) + abs_floor:
            small += 1
            if small >= consecutive_small:
                return complex(s), k + 1, OK
        else:
            small = 0
        step = step * sq
        qk1 = qk1 * q


def gram_sums(nodes, wvals, double a, double q, long n_max):
    cdef long size = n_max + 1
    cdef long npts = len(nodes)
    cdef double[:] xs = array("d", [float(v) for v in nodes])
    cdef double[:] ws = array("d", [float(v) for v in wvals])
    cdef double[:] acc = array("d", [0.0] * (size * size))
    cdef double[:] h = array("d", [0.0] * size)
    cdef long k, i, j
    cdef double x, w, two_x, qn, wh
    if len(wvals) != npts:
        raise ValueError("nodes and wvals differ in length")
    with nogil:
        for k in range(npts):
            x = xs[k]
            w = ws[k]
            two_x = 2.0 * x
            h[0] = 1.0
            if n_max >= 1:
                h[1] = two_x - a
            qn = q
            for j in range(1, n_max):
                h[j + 1] = (two_x - a * qn) * h[j] - (1.0 - qn) * h[j - 1]
                qn = qn * q
            for i in range(size):
                wh = w * h[i]
                for j in range(size):
                    acc[i * size + j] += wh * h[j]
    return [[acc[i * size + j] for j in range(size)] for i in range(size)]
