"""Continuous big q-Hermite and continuous q-Hermite polynomials.

``H_n(x; a | q)`` is available through three independent routes:

* the three-term recurrence (the reference; stable upward for |x| <= 1),
* the terminating 3-phi-2 representation ``a^{-n} 3phi2(q^{-n}, az, a/z; 0, 0 | q; q)``,
* the terminating 2-phi-0 representation ``z^n 2phi0(q^{-n}, az; - | q; q^n / z^2)``,

with ``x = (z + 1/z)/2``.  The two series routes need ``z`` on the unit
circle, where ``z = e^{i theta}``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ._backend import kernels
from .errors import ParameterError, PoleError
from .qcore import (
    DEFAULT_CONTROL,
    HyperSeriesSpec,
    QParam,
    SeriesControl,
    as_qparam,
    qhyper,
    qpoch_infinite,
)

#: tolerance on | |z| - 1 | for routes that need z = e^{i theta}
UNIT_CIRCLE_TOL = 1e-12


@dataclass(frozen=True)
class EvalPointZT:
    """A sample point ``(z, t)``; ``x = (z + 1/z)/2``."""

    z: complex
    t: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "t", complex(self.t))
        if self.z == 0:
            raise ParameterError("z must be nonzero")
        if self.t == 0:
            raise ParameterError("t must be nonzero")

    @classmethod
    def from_theta(cls, theta: float, t: complex = 1.0) -> "EvalPointZT":
        return cls(cmath.exp(1j * theta), t)

    @classmethod
    def from_x(cls, x: float, t: complex = 1.0) -> "EvalPointZT":
        """Point on the unit circle with real part ``x`` (``-1 <= x <= 1``)."""
        if not -1.0 <= x <= 1.0:
            raise ParameterError(f"x must lie in [-1, 1], got {x}")
        return cls(complex(x, math.sqrt(1.0 - x * x)), t)

    @property
    def x(self) -> complex:
        return 0.5 * (self.z + 1.0 / self.z)

    @property
    def on_circle(self) -> bool:
        return abs(abs(self.z) - 1.0) <= UNIT_CIRCLE_TOL

    @property
    def theta(self) -> Optional[float]:
        return cmath.phase(self.z) if self.on_circle else None


def as_point(point) -> EvalPointZT:
    if isinstance(point, EvalPointZT):
        return point
    return EvalPointZT(point)


@dataclass(frozen=True)
class BigQHermiteSpec:
    n: int
    a: complex
    q: QParam

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError(f"degree must be >= 0, got {self.n}")
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "q", as_qparam(self.q))


def hermite_recurrence(n_max: int, point, a: complex, q) -> List[complex]:
    """``[H_0, ..., H_{n_max}]`` from ``2x H_n = H_{n+1} + a q^n H_n + (1 - q^n) H_{n-1}``."""
    if n_max < 0:
        raise ParameterError(f"n_max must be >= 0, got {n_max}")
    point = as_point(point)
    return kernels.hermite_ladder(point.x, complex(a), as_qparam(q).q, int(n_max))


def big_qhermite(n: int, point, a: complex, q) -> complex:
    """``H_n(x; a | q)`` by the recurrence."""
    return hermite_recurrence(n, point, a, q)[n]


def _require_circle(point: EvalPointZT, what: str):
    if not point.on_circle:
        raise ParameterError(f"{what} needs |z| = 1, got |z| = {abs(point.z)!r}")


def hermite_3phi2(spec: BigQHermiteSpec, point, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    point = as_point(point)
    _require_circle(point, "the 3phi2 representation")
    n, a, q = spec.n, spec.a, spec.q
    if a == 0:
        raise ParameterError("the 3phi2 form has an a^-n prefactor; use qhermite for a = 0")
    z = point.z
    series = HyperSeriesSpec([q.q ** (-n), a * z, a / z], [0, 0], q.q)
    return qhyper(series, q, ctl) / a ** n


def hermite_2phi0(spec: BigQHermiteSpec, point, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    point = as_point(point)
    _require_circle(point, "the 2phi0 representation")
    n, a, q = spec.n, spec.a, spec.q
    z = point.z
    series = HyperSeriesSpec([q.q ** (-n), a * z], [], q.q ** n / (z * z))
    return z ** n * qhyper(series, q, ctl)


def qhermite(n: int, point, q, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Continuous q-Hermite ``H_n(x | q)``, the ``a = 0`` member, via its 2phi0 form."""
    return hermite_2phi0(BigQHermiteSpec(n, 0, as_qparam(q)), point, ctl)


def relative_deviation(u: complex, v: complex) -> float:
    scale = max(abs(u), abs(v))
    return abs(u - v) / scale if scale else 0.0


@dataclass(frozen=True)
class RouteComparison:
    recurrence: complex
    phi32: Optional[complex]
    phi20: complex

    @property
    def max_deviation(self) -> float:
        values = [v for v in (self.recurrence, self.phi32, self.phi20) if v is not None]
        return max(
            (relative_deviation(u, v) for i, u in enumerate(values) for v in values[i + 1:]),
            default=0.0,
        )


def compare_routes(spec: BigQHermiteSpec, point, ctl: SeriesControl = DEFAULT_CONTROL) -> RouteComparison:
    """All available routes for ``H_n(x; a | q)``; the 3phi2 route is skipped at ``a = 0``."""
    point = as_point(point)
    rec = big_qhermite(spec.n, point, spec.a, spec.q)
    phi32 = hermite_3phi2(spec, point, ctl) if spec.a != 0 else None
    return RouteComparison(rec, phi32, hermite_2phi0(spec, point, ctl))


def shift_identity_residual(n: int, point, a: complex, q) -> float:
    """Residual of ``H_n(x;a) = H_n(x;aq) - a(1 - q^n) H_{n-1}(x;aq)``, normalised by ``1 + |LHS|``."""
    if n < 1:
        raise ParameterError("the shift identity needs n >= 1")
    q = as_qparam(q)
    a = complex(a)
    lhs = big_qhermite(n, point, a, q)
    shifted = hermite_recurrence(n, point, a * q.q, q)
    rhs = shifted[n] - a * (1.0 - q.q ** n) * shifted[n - 1]
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def weight(theta: float, a: complex, q, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Orthogonality weight ``|(e^{2i theta}; q)_inf / (a e^{i theta}; q)_inf|^2`` on ``[0, pi]``."""
    if not 0.0 <= theta <= math.pi:
        raise ParameterError(f"theta must lie in [0, pi], got {theta}")
    q = as_qparam(q)
    e = cmath.exp(1j * theta)
    num = qpoch_infinite(e * e, q, ctl)
    den = qpoch_infinite(complex(a) * e, q, ctl)
    if den == 0:
        raise PoleError(f"(a e^(i theta); q)_inf vanishes at theta={theta}, a={a}")
    return abs(num / den) ** 2


def classical_limit_residual_poly(n: int, x: float, a: float, q_list: Sequence[float]) -> List[float]:
    """``|H_n(x; a | q) - (2x - a)^n|`` for each ``q`` in ``q_list``."""
    point = EvalPointZT.from_x(x)
    target = (2.0 * x - a) ** n
    return [abs(big_qhermite(n, point, a, q) - target) for q in q_list]
