"""The q-exponential E_q(x; a, b) and the x-free series g_n(b).

    E_q(x; a, b) = sum_n q^{n^2/4} / (q;q)_n (a q^{(1-n)/2} z; q)_n (a q^{(1-n)/2} / z; q)_n b^n
    g_n(b)       = sum_k q^{k(k+2n)/4} / (q;q)_k b^k = E_q(-; 0, b q^{n/2})

with ``x = (z + 1/z)/2``.  Every term of E_q is a Laurent polynomial in
``z``, so the series is evaluated for any ``z != 0``, not only on the unit
circle; the eigenrelation check needs the shifted points ``q^{+-1/2} z``.
For large ``n`` the terms behave like ``(ab)^n``, so the series converges
for ``|ab| < 1``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ._backend import NO_CONVERGENCE, kernels
from .errors import ParameterError, TruncationError
from .opalg import FunctionHandle, tau_apply
from .polys import EvalPointZT, as_point
from .qcore import DEFAULT_CONTROL, SeriesControl, as_qparam, qpoch_finite

B_MAX = 2.0


@dataclass(frozen=True)
class QExpParams:
    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))


def _check_guard(params: QExpParams, b_max: float):
    if abs(params.b) > b_max or abs(params.a * params.b) > b_max:
        raise ParameterError(
            f"|b| = {abs(params.b):.3g} or |ab| = {abs(params.a * params.b):.3g} exceeds b_max = {b_max}"
        )


def _finish(value, terms, status, what):
    if status == NO_CONVERGENCE:
        raise TruncationError(f"{what} did not converge after {terms} terms", partial=value, terms=terms)
    return value


def qexp_z(z: complex, params: QExpParams, q, ctl: SeriesControl = DEFAULT_CONTROL,
           b_max: float = B_MAX) -> complex:
    """E_q at ``x = (z + 1/z)/2`` for any nonzero ``z``."""
    _check_guard(params, b_max)
    q = as_qparam(q)
    z = complex(z)
    if z == 0:
        raise ParameterError("z must be nonzero")
    value, terms, status = kernels.qexp_sum(
        z, params.a, params.b, q.q, ctl.rel_tol, ctl.abs_floor, ctl.consecutive_small, ctl.max_terms
    )
    return _finish(value, terms, status, "E_q series")


def qexp(point, params: QExpParams, q, ctl: SeriesControl = DEFAULT_CONTROL,
         b_max: float = B_MAX) -> complex:
    """``E_q(x; a, b)`` at a sample point (``x = cos theta`` when ``z = e^{i theta}``)."""
    return qexp_z(as_point(point).z, params, q, ctl, b_max)


def qexp_terms_direct(z: complex, params: QExpParams, q, n_terms: int) -> List[complex]:
    """The first ``n_terms`` terms of E_q straight from the definition.

    Independent of the chained recursion used by :func:`qexp`; overflows for
    large ``n`` (``q^{(1-n)/2}`` grows), so keep ``n_terms`` modest.
    """
    q = as_qparam(q)
    z = complex(z)
    out = []
    for n in range(n_terms):
        c = params.a * q.pow((1 - n) / 2)
        out.append(q.pow(n * n / 4) / qpoch_finite(q.q, q, n)
                   * qpoch_finite(c * z, q, n) * qpoch_finite(c / z, q, n) * params.b ** n)
    return out


def qexp_handle(params: QExpParams, q, ctl: SeriesControl = DEFAULT_CONTROL) -> FunctionHandle:
    """E_q as a function of ``(z, t)`` (constant in ``t``)."""
    q = as_qparam(q)
    return FunctionHandle(lambda z, t: qexp_z(z, params, q, ctl), f"E_q(x;{params.a},{params.b})")


def g(n: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``g_n(b)`` by direct summation; any integer ``n``."""
    q = as_qparam(q)
    value, terms, status = kernels.g_sum(
        int(n), complex(b), q.q, ctl.rel_tol, ctl.abs_floor, ctl.consecutive_small, ctl.max_terms
    )
    return _finish(value, terms, status, "g_n series")


def g_via_qexp(n: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``g_n(b)`` as ``E_q(-; 0, b q^{n/2})``; the point is irrelevant at ``a = 0``."""
    q = as_qparam(q)
    return qexp_z(1.0, QExpParams(0.0, complex(b) * q.pow(n / 2)), q, ctl, b_max=math.inf)


def g_recurrence_residual(n: int, b: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Residual of ``g_{n+1} = g_{n-1} - b q^{(2n-1)/4} g_n``, normalised by ``1 + |g_{n+1}|``."""
    if n < 1:
        raise ParameterError("the g recurrence needs n >= 1")
    q = as_qparam(q)
    b = complex(b)
    g_next, g_n, g_prev = g(n + 1, b, q, ctl), g(n, b, q, ctl), g(n - 1, b, q, ctl)
    return abs(g_next - g_prev + b * q.pow((2 * n - 1) / 4) * g_n) / (1.0 + abs(g_next))


def qexp_eigen_residual(params: QExpParams, q, theta_grid: Sequence[float],
                        ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Sup over ``theta_grid`` of ``|tau E_q - a b q^{-1/4} E_q| / (1 + |E_q|)``."""
    q = as_qparam(q)
    e = qexp_handle(params, q, ctl)
    te = tau_apply(e, q)
    eigen = params.a * params.b / q.quarter_root
    worst = 0.0
    for theta in theta_grid:
        z = cmath.exp(1j * theta)
        value = e.fn(z, 1.0)
        worst = max(worst, abs(te.fn(z, 1.0) - eigen * value) / (1.0 + abs(value)))
    return worst


def classical_limit_residual_qexp(x: float, b: float, q_list: Sequence[float],
                                  ctl: SeriesControl = DEFAULT_CONTROL,
                                  a: Optional[complex] = None) -> List[float]:
    """Distance of E_q from its ``q -> 1`` limit for each ``q``.

    Default form: ``|E_q(x; -i, (1-q) b/2) - e^{ibx}|``.  With ``a`` given:
    ``|E_q(x; a, (1-q) b) - exp[(1 + a^2 - 2ax) b]|``.
    """
    point = EvalPointZT.from_x(x)
    out = []
    for qv in q_list:
        q = as_qparam(qv)
        if a is None:
            got = qexp(point, QExpParams(-1j, (1 - q.q) * b / 2), q, ctl)
            want = cmath.exp(1j * b * x)
        else:
            got = qexp(point, QExpParams(a, (1 - q.q) * b), q, ctl)
            want = cmath.exp((1 + a * a - 2 * a * x) * b)
        out.append(abs(got - want))
    return out
