"""Expansion of E_q(x; -i, b/2) in continuous big q-Hermite polynomials.

The coefficients of ``E_q(x; -i, b/2) = sum_n W_n^m(b) H_n(x; q^{m/2} | q)``
separate as ``W_n^m = u_n y_{m+n}`` with

    u_n(b)  = u_0(b) q^{n^2/4} / (q;q)_n (ib/2)^n,   u_0(b) = 1 / (-b^2/4; q^2)_inf
    y_j(b)  = E_q(-; 0, (ib/2) q^{j/2}) = g_j(ib/2)

The same right-hand side holds for every integer ``m``; as ``q^m -> 0`` it
reduces to the continuous q-Hermite expansion with coefficients ``u_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import PoleError, TailBoundError
from .polys import as_point, hermite_recurrence, qhermite
from .qcore import DEFAULT_CONTROL, SeriesControl, as_qparam, q_power_index, qpoch_finite, qpoch_infinite
from .qexp import QExpParams, g, qexp


@dataclass(frozen=True)
class ExpansionTerms:
    n: int
    m: int
    b: complex
    u_n: complex
    y_mn: complex
    g_val: complex
    W: complex


def u0(b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``1 / (-b^2/4; q^2)_inf``."""
    q = as_qparam(q)
    arg = -complex(b) ** 2 / 4
    q2 = q.q * q.q
    if q_power_index(arg, q2, ctl.max_terms) is not None:
        raise PoleError(f"(-b^2/4; q^2)_inf vanishes at b={b}")
    return 1.0 / qpoch_infinite(arg, q2, ctl)


def u_n(n: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    q = as_qparam(q)
    return u0(b, q, ctl) * q.pow(n * n / 4) / qpoch_finite(q.q, q, n) * (0.5j * complex(b)) ** n


def y(j: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``y_j(b) = g_j(ib/2)``."""
    return g(j, 0.5j * complex(b), q, ctl)


def w_coeff(n: int, m: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``W_n^m(b)``."""
    q = as_qparam(q)
    return u_n(n, b, q, ctl) * y(m + n, b, q, ctl)


def expansion_terms(n: int, m: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> ExpansionTerms:
    q = as_qparam(q)
    un = u_n(n, b, q, ctl)
    yv = y(m + n, b, q, ctl)
    return ExpansionTerms(n, m, complex(b), un, yv, g(n, b, q, ctl), un * yv)


def _res(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def w_recurrence_residuals(n: int, m: int, b: complex, q,
                           ctl: SeriesControl = DEFAULT_CONTROL) -> Tuple[float, float, float]:
    """Residuals of the three coefficient recurrences, evaluated on the closed form.

    * ``i(b/2) q^{-1/4} W_n^{m+1} = q^{-(n+1)/2} (1-q^{n+1}) W_{n+1}^m``
    * ``W_n^{m+2} = W_n^m - (1-q^{n+1}) q^{m/2} W_{n+1}^m``
    * ``W_n^{m+2} = W_n^m - i(b/2) q^{(n+m+1/2)/2} W_n^{m+1}``
    """
    q = as_qparam(q)
    b = complex(b)
    ib2 = 0.5j * b
    w = lambda nn, mm: w_coeff(nn, mm, b, q, ctl)  # noqa: E731
    w_nm, w_nm1, w_nm2, w_n1m = w(n, m), w(n, m + 1), w(n, m + 2), w(n + 1, m)
    r29 = _res(ib2 / q.quarter_root * w_nm1, q.pow(-(n + 1) / 2) * (1 - q.q ** (n + 1)) * w_n1m)
    r32 = _res(w_nm2, w_nm - (1 - q.q ** (n + 1)) * q.pow(m / 2) * w_n1m)
    r33 = _res(w_nm2, w_nm - ib2 * q.pow((n + m + 0.5) / 2) * w_nm1)
    return r29, r32, r33


def y_recurrence_residual(j: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Residual of ``y_{j+2} = y_j - (ib/2) q^{(j+1/2)/2} y_{j+1}``."""
    q = as_qparam(q)
    y0, y1, y2 = y(j, b, q, ctl), y(j + 1, b, q, ctl), y(j + 2, b, q, ctl)
    return _res(y2, y0 - 0.5j * complex(b) * q.pow((j + 0.5) / 2) * y1)


def hermite_abs_bound(n: int, a: complex, q) -> float:
    """Bound on ``|H_n(x; a | q)|`` for ``|x| <= 1``: the product of ``3 + |a| q^{k-1}``, k = 1..n."""
    q = as_qparam(q)
    bound = 1.0
    for k in range(1, n + 1):
        bound *= 3.0 + abs(a) * q.q ** (k - 1)
    return bound


def tail_bound(N: int, m, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL,
               extra: int = 40) -> float:
    """Bound on the omitted terms ``sum_{n > N} |W_n^m| max|H_n|``.

    ``m=None`` bounds the continuous q-Hermite expansion (``a = 0``, ``y = 1``).
    """
    q = as_qparam(q)
    if m is None:
        coeff = lambda n: u_n(n, b, q, ctl)  # noqa: E731
        a = 0.0
    else:
        coeff = lambda n: w_coeff(n, m, b, q, ctl)  # noqa: E731
        a = q.pow(m / 2)
    return sum(abs(coeff(n)) * hermite_abs_bound(n, a, q) for n in range(N + 1, N + 1 + extra))


def _check_tail(N, m, b, q, ctl):
    tail = tail_bound(N, m, b, q, ctl)
    if tail >= ctl.abs_floor:
        suggested = N
        while tail_bound(suggested, m, b, q, ctl) >= ctl.abs_floor and suggested < N + 500:
            suggested += 5
        raise TailBoundError(
            f"N={N} leaves an estimated tail of {tail:.2e} >= {ctl.abs_floor:g}; try N={suggested}",
            suggested_n=suggested,
        )


def expansion_residual(point, m: int, b: complex, q, N: int = 30,
                       ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``|E_q(x; -i, b/2) - sum_{n<=N} W_n^m H_n(x; q^{m/2})| / (1 + |E_q|)``."""
    q = as_qparam(q)
    point = as_point(point)
    _check_tail(N, m, b, q, ctl)
    lhs = qexp(point, QExpParams(-1j, complex(b) / 2), q, ctl)
    ladder = hermite_recurrence(N, point, q.pow(m / 2), q)
    rhs = sum((w_coeff(n, m, b, q, ctl) * ladder[n] for n in range(N + 1)), 0j)
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def expansion_sum(point, m: int, b: complex, q, N: int = 30,
                  ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    q = as_qparam(q)
    point = as_point(point)
    ladder = hermite_recurrence(N, point, q.pow(m / 2), q)
    return sum((w_coeff(n, m, b, q, ctl) * ladder[n] for n in range(N + 1)), 0j)


def qhermite_expansion_sum(point, b: complex, q, N: int = 30,
                           ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    q = as_qparam(q)
    return sum((u_n(k, b, q, ctl) * qhermite(k, point, q, ctl) for k in range(N + 1)), 0j)


def qhermite_expansion_residual(point, b: complex, q, N: int = 30,
                                ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Residual of the continuous q-Hermite expansion of ``E_q(x; -i, b/2)`` with coefficients ``u_k``."""
    q = as_qparam(q)
    point = as_point(point)
    _check_tail(N, None, b, q, ctl)
    lhs = qexp(point, QExpParams(-1j, complex(b) / 2), q, ctl)
    return abs(lhs - qhermite_expansion_sum(point, b, q, N, ctl)) / (1.0 + abs(lhs))
