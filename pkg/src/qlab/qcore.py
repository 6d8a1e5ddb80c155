"""q-Pochhammer symbols and the basic hypergeometric series engine.

Everything here works for a real base ``0 < q < 1``.  The r-phi-s engine
sums in double precision through the selected kernel and, when the
magnitude of the terms shows the double result cannot be trusted to
``rel_tol``, re-sums the same terms with mpmath at a working precision
chosen from that condition estimate.  Terminating series with an upper
parameter ``q^{-n}`` are the usual culprit: their terms can exceed the
sum by hundreds of orders of magnitude.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath

from ._backend import NO_CONVERGENCE, POLE, kernels
from .errors import ParameterError, PoleError, TruncationError

EPS = sys.float_info.epsilon

#: relative distance at which a parameter is treated as exactly ``q^{-n}``
SNAP_TOL = 1e-12
#: precision ceiling for escalated sums, in decimal digits
MAX_DIGITS = 4000


@dataclass(frozen=True)
class QParam:
    """The base ``q`` with cached ``q^{1/4}`` and ``q^{1/2}``."""

    q: float
    quarter_root: float = field(init=False, repr=False)
    half_root: float = field(init=False, repr=False)

    def __post_init__(self):
        q = self.q
        if isinstance(q, complex) or not isinstance(q, (int, float)):
            raise ParameterError(f"q must be a real number, got {q!r}")
        q = float(q)
        if not (0.0 < q < 1.0):
            raise ParameterError(f"q must lie in (0, 1), got {q}")
        quarter = q ** 0.25
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "quarter_root", quarter)
        object.__setattr__(self, "half_root", quarter * quarter)

    def pow(self, alpha: float) -> float:
        """``q**alpha`` for real ``alpha``."""
        return self.q ** alpha


def as_qparam(q) -> QParam:
    return q if isinstance(q, QParam) else QParam(q)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy shared by every infinite sum and product.

    A series stops after ``consecutive_small`` successive terms with
    ``|term| < rel_tol*|partial| + abs_floor``; an infinite product stops at
    the first ``K >= consecutive_small`` with ``|a| q^K < abs_floor``.
    ``escalate`` allows ill-conditioned r-phi-s sums to be redone in
    extended precision.
    """

    rel_tol: float = 1e-12
    abs_floor: float = 1e-15
    max_terms: int = 10000
    consecutive_small: int = 3
    escalate: bool = True

    def __post_init__(self):
        if not self.rel_tol >= EPS:
            raise ParameterError("rel_tol must be >= machine epsilon")
        if not self.abs_floor > 0:
            raise ParameterError("abs_floor must be positive")
        if self.max_terms < 1 or self.consecutive_small < 1:
            raise ParameterError("max_terms and consecutive_small must be >= 1")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class HyperSeriesSpec:
    """Parameters of r-phi-s: upper ``a_i``, lower ``b_j`` and the argument."""

    upper: tuple
    lower: tuple
    argument: complex

    def __init__(self, upper: Sequence[complex], lower: Sequence[complex], argument: complex):
        object.__setattr__(self, "upper", tuple(complex(u) for u in upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in lower))
        object.__setattr__(self, "argument", complex(argument))


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms: int
    condition: float     # sum |t_k| / |sum t_k| of the double-precision pass
    digits: int          # working precision of the accepted value (15 = double)
    terminating: Optional[int] = None


def qpoch_finite(a: complex, q, k: int) -> complex:
    """``(a; q)_k``, the product of ``1 - a q^j`` for ``j < k``."""
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    return kernels.qpoch_finite(complex(a), as_qparam(q).q, int(k))


def qpoch_infinite(a: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``(a; q)_inf`` truncated once ``|a| q^K`` drops below ``ctl.abs_floor``."""
    q = as_qparam(q)
    value, used, converged = kernels.qpoch_infinite(
        complex(a), q.q, ctl.abs_floor, ctl.consecutive_small, ctl.max_terms
    )
    if not converged:
        raise TruncationError(
            f"(a;q)_inf did not converge in {used} factors (a={a}, q={q.q})",
            partial=value, terms=used,
        )
    return value


def q_power_index(value: complex, q, limit: int) -> Optional[int]:
    """Return ``k`` in ``[0, limit]`` with ``value == q^{-k}`` (relative ``SNAP_TOL``), else None."""
    q = as_qparam(q)
    value = complex(value)
    if value == 0 or abs(value.imag) > SNAP_TOL * abs(value) or value.real <= 0:
        return None
    k = round(-math.log(value.real) / math.log(q.q))
    if k < 0 or k > limit:
        return None
    target = q.q ** (-k)
    if abs(value - target) <= SNAP_TOL * target:
        return k
    return None


def qpoch_general(a: complex, q, alpha: float, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``(a; q)_alpha = (a; q)_inf / (a q^alpha; q)_inf`` for real ``alpha``."""
    q = as_qparam(q)
    shifted = complex(a) * q.pow(alpha)
    if q_power_index(shifted, q, ctl.max_terms) is not None:
        raise PoleError(f"(a q^alpha; q)_inf vanishes for a={a}, alpha={alpha}")
    den = qpoch_infinite(shifted, q, ctl)
    if den == 0:
        raise PoleError(f"(a q^alpha; q)_inf vanishes for a={a}, alpha={alpha}")
    return qpoch_infinite(a, q, ctl) / den


def _check_lower(spec: HyperSeriesSpec, q: QParam, ctl: SeriesControl):
    for b in spec.lower:
        k = q_power_index(b, q, ctl.max_terms)
        if k is not None:
            raise PoleError(f"lower parameter {b} equals q^-{k}; (b;q)_n vanishes")


def _terminating_order(spec: HyperSeriesSpec, q: QParam, ctl: SeriesControl) -> Optional[int]:
    orders = [k for k in (q_power_index(u, q, ctl.max_terms) for u in spec.upper) if k is not None]
    return min(orders) if orders else None


def qhyper_info(spec: HyperSeriesSpec, q, ctl: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """Evaluate r-phi-s and report term count, condition and precision used."""
    q = as_qparam(q)
    _check_lower(spec, q, ctl)
    order = _terminating_order(spec, q, ctl)
    nterm = -1 if order is None else order
    value, abs_sum, terms, status = kernels.hyper_sum(
        spec.upper, spec.lower, spec.argument, q.q, nterm,
        ctl.rel_tol, ctl.abs_floor, ctl.consecutive_small, ctl.max_terms,
    )
    if status == POLE:
        raise PoleError(f"vanishing denominator in r-phi-s after {terms} terms")
    if status == NO_CONVERGENCE:
        raise TruncationError(
            f"r-phi-s did not converge within {ctl.max_terms} terms", partial=value, terms=terms
        )
    condition = abs_sum / abs(value) if value != 0 else math.inf
    if ctl.escalate and condition * terms * EPS > ctl.rel_tol:
        value, digits = _qhyper_mp(spec, q, ctl, order, condition)
        return SeriesResult(value, terms, condition, digits, order)
    return SeriesResult(value, terms, condition, 15, order)


def qhyper(spec: HyperSeriesSpec, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Sum the basic hypergeometric series r-phi-s.

    The n-th term is ``(a_1..a_r; q)_n / (q, b_1..b_s; q)_n`` times
    ``[(-1)^n q^{n(n-1)/2}]^{1+s-r} z^n``.  An upper parameter equal to
    ``q^{-n}`` makes the series terminate after ``n + 1`` terms.
    """
    return qhyper_info(spec, q, ctl).value


def _mp_sum(spec, q: QParam, ctl, order, digits):
    with mpmath.workdps(digits):
        qm = mpmath.mpf(q.q)
        upper = []
        for u in spec.upper:
            k = q_power_index(u, q, ctl.max_terms)
            upper.append(qm ** (-k) if k is not None and k == order else mpmath.mpc(u))
        lower = [mpmath.mpc(b) for b in spec.lower]
        arg = mpmath.mpc(spec.argument)
        e = 1 + len(lower) - len(upper)
        term = mpmath.mpc(1)
        total = term
        abs_total = mpmath.mpf(1)
        qk = mpmath.mpf(1)
        small = 0
        k = 0
        while True:
            if order is not None:
                if k >= order:
                    break
            elif k >= ctl.max_terms:
                raise TruncationError("extended-precision r-phi-s did not converge",
                                      partial=complex(total), terms=k + 1)
            num = mpmath.mpc(1)
            for u in upper:
                num *= 1 - u * qk
            den = 1 - qm * qk
            for b in lower:
                den *= 1 - b * qk
            term = term * num / den * (-qk) ** e * arg
            total += term
            abs_total += abs(term)
            k += 1
            if order is None:
                if abs(term) < ctl.rel_tol * abs(total) + ctl.abs_floor:
                    small += 1
                    if small >= ctl.consecutive_small:
                        break
                else:
                    small = 0
            qk *= qm
        return total, abs_total, k + 1


def _qhyper_mp(spec, q, ctl, order, condition):
    # Each pass re-estimates the cancellation from the extended-precision sum.
    guess = condition if math.isfinite(condition) else 10.0 ** 30
    digits = 20 + int(math.ceil(math.log10(max(guess, 1.0))))
    while True:
        digits = min(digits, MAX_DIGITS)
        total, abs_total, terms = _mp_sum(spec, q, ctl, order, digits)
        if total == 0:
            cond = mpmath.inf
        else:
            cond = abs_total / abs(total)
        loss = float(mpmath.log10(cond)) if cond != mpmath.inf else math.inf
        if loss + math.log10(terms) - digits <= math.log10(ctl.rel_tol) - 3:
            return complex(total), digits
        if digits >= MAX_DIGITS:
            if total == 0:
                return 0j, digits
            raise TruncationError(
                f"r-phi-s needs more than {MAX_DIGITS} digits", partial=complex(total), terms=terms
            )
        digits = int(math.ceil(loss)) + 25 if math.isfinite(loss) else digits * 2
