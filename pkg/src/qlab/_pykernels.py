"""Pure-Python hot kernels.

Reference implementation of every kernel in ``_ckernels.pyx``; the two
modules expose identical signatures and return conventions.  Kernels take
plain floats/complex numbers and report failures through status codes so
that the compiled twin never has to raise.

Status codes: ``OK`` converged, ``NO_CONVERGENCE`` hit ``max_terms`` or a
non-finite term, ``POLE`` a vanishing denominator factor.
"""
import math

OK = 0
NO_CONVERGENCE = 1
POLE = 2


def qpoch_finite(a, q, k):
    p = 1.0 + 0.0j
    aqj = complex(a)
    for _ in range(k):
        p *= 1.0 - aqj
        aqj *= q
    return p


def qpoch_infinite(a, q, abs_floor, min_terms, max_terms):
    """Return ``(value, factors_used, converged)`` for ``(a; q)_inf``."""
    a = complex(a)
    p = 1.0 + 0.0j
    aqk = a
    mag = abs(a)
    k = 0
    while True:
        if k >= min_terms and mag < abs_floor:
            return p, k, True
        if k >= max_terms:
            return p, k, False
        p *= 1.0 - aqk
        aqk *= q
        mag *= q
        k += 1


def hyper_sum(upper, lower, arg, q, nterm, rel_tol, abs_floor, consecutive_small, max_terms):
    """Forward summation of the r-phi-s series.

    ``nterm >= 0`` sums exactly ``nterm + 1`` terms (terminating case);
    ``nterm < 0`` sums until ``consecutive_small`` negligible terms in a row.
    Returns ``(sum, sum_of_abs, terms_used, status)``.
    """
    upper = [complex(u) for u in upper]
    lower = [complex(b) for b in lower]
    arg = complex(arg)
    e = 1 + len(lower) - len(upper)
    t = 1.0 + 0.0j
    s = t
    abs_s = 1.0
    qk = 1.0
    small = 0
    k = 0
    while True:
        if nterm >= 0:
            if k >= nterm:
                return s, abs_s, k + 1, OK
        elif k >= max_terms:
            return s, abs_s, k + 1, NO_CONVERGENCE
        num = 1.0 + 0.0j
        for u in upper:
            num *= 1.0 - u * qk
        den = (1.0 - q * qk) + 0.0j
        for b in lower:
            den *= 1.0 - b * qk
        if den == 0:
            return s, abs_s, k + 1, POLE
        fac = 1.0
        if e > 0:
            for _ in range(e):
                fac *= -qk
        elif e < 0:
            for _ in range(-e):
                fac /= -qk
        t = t * num / den * fac * arg
        s += t
        abs_t = abs(t)
        if not (math.isfinite(abs_t) and math.isfinite(abs(s))):
            return s, abs_s, k + 2, NO_CONVERGENCE
        abs_s += abs_t
        k += 1
        if nterm < 0:
            if abs_t < rel_tol * abs(s) + abs_floor:
                small += 1
                if small >= consecutive_small:
                    return s, abs_s, k + 1, OK
            else:
                small = 0
        qk *= q


def hermite_ladder(x, a, q, n_max):
    """H_0 .. H_{n_max} of the big q-Hermite family by upward recurrence."""
    x = complex(x)
    a = complex(a)
    out = [1.0 + 0.0j]
    if n_max == 0:
        return out
    two_x = 2.0 * x
    h_prev = 1.0 + 0.0j
    h = two_x - a
    out.append(h)
    qn = q
    for _ in range(1, n_max):
        h_prev, h = h, (two_x - a * qn) * h - (1.0 - qn) * h_prev
        out.append(h)
        qn *= q
    return out


def basis_value(n, m, z, t, q):
    """t^m H_n((z + 1/z)/2; q^{m/2} | q)."""
    z = complex(z)
    x = 0.5 * (z + 1.0 / z)
    a = q ** (0.5 * m)
    h = hermite_ladder(x, a, q, n)[n]
    return complex(t) ** m * h


def qexp_sum(z, a, b, q, rel_tol, abs_floor, consecutive_small, max_terms):
    """Series for E_q(x; a, b) at x = (z + 1/z)/2.

    Terms are generated on two parity chains, T_{n+2} from T_n, with the
    q^{n^2/4} prefactor absorbed into the q^{-|e|} Pochhammer factors.
    Returns ``(sum, terms_used, status)``.
    """
    z = complex(z)
    a = complex(a)
    b = complex(b)
    zi = 1.0 / z
    az = a * z
    azi = a * zi
    sq = math.sqrt(q)
    b2 = b * b
    chain = [1.0 + 0.0j, b * math.sqrt(sq) * (1.0 - az) * (1.0 - azi) / (1.0 - q)]
    s = chain[0] + chain[1]
    if abs(chain[1]) < rel_tol * abs(s) + abs_floor:
        small = 1
    else:
        small = 0
    r = sq          # q^{(n+1)/2}
    qn1 = q         # q^{n+1}
    n = 0
    while True:
        if n + 2 > max_terms:
            return s, n + 2, NO_CONVERGENCE
        qn2 = qn1 * q
        f_neg = (r - az) * (r - azi)
        f_pos = (1.0 - az * r) * (1.0 - azi * r)
        t = chain[n & 1] * b2 / ((1.0 - qn1) * (1.0 - qn2)) * f_neg * f_pos
        chain[n & 1] = t
        s += t
        abs_t = abs(t)
        if not (math.isfinite(abs_t) and math.isfinite(abs(s))):
            return s, n + 3, NO_CONVERGENCE
        n += 1
        if abs_t < rel_tol * abs(s) + abs_floor:
            small += 1
            if small >= consecutive_small:
                return s, n + 2, OK
        else:
            small = 0
        r *= sq
        qn1 = qn2


def g_sum(n, b, q, rel_tol, abs_floor, consecutive_small, max_terms):
    """sum_k q^{k(k+2n)/4} b^k / (q;q)_k.  Returns ``(sum, terms_used, status)``."""
    b = complex(b)
    sq = math.sqrt(q)
    step = q ** ((2 * n + 1) / 4.0)   # q^{(2k+1+2n)/4} at k = 0
    t = 1.0 + 0.0j
    s = t
    qk1 = q
    small = 0
    k = 0
    while True:
        if k >= max_terms:
            return s, k + 1, NO_CONVERGENCE
        t = t * b * step / (1.0 - qk1)
        s += t
        abs_t = abs(t)
        if not (math.isfinite(abs_t) and math.isfinite(abs(s))):
            return s, k + 2, NO_CONVERGENCE
        k += 1
        if abs_t < rel_tol * abs(s) + abs_floor:
            small += 1
            if small >= consecutive_small:
                return s, k + 1, OK
        else:
            small = 0
        step *= sq
        qk1 *= q


def gram_sums(nodes, wvals, a, q, n_max):
    """Ordered sums sum_k wvals[k] H_i(nodes[k]) H_j(nodes[k]) for real a.

    Returns a nested list of shape (n_max + 1, n_max + 1).
    """
    size = n_max + 1
    acc = [[0.0] * size for _ in range(size)]
    h = [0.0] * size
    for x, w in zip(nodes, wvals):
        two_x = 2.0 * x
        h[0] = 1.0
        if n_max >= 1:
            h[1] = two_x - a
        qn = q
        for j in range(1, n_max):
            h[j + 1] = (two_x - a * qn) * h[j] - (1.0 - qn) * h[j - 1]
            qn *= q
        for i in range(size):
            wh = w * h[i]
            row = acc[i]
            for j in range(size):
                row[j] += wh * h[j]
    return acc
