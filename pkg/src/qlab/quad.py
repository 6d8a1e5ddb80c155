"""Gauss-Chebyshev quadrature and the orthogonality of big q-Hermite polynomials.

For real ``|a| < 1``,

    (1/2pi) int_{-1}^{1} w(x; a | q) H_m H_n dx / sqrt(1 - x^2) = delta_{mn} / (q^{n+1}; q)_inf.

The first-kind Gauss-Chebyshev rule integrates exactly against
``dx / sqrt(1 - x^2)``, so the weight and polynomials are sampled at the
nodes ``x_k = cos theta_k`` with ``theta_k = (2k - 1) pi / (2N)``; the
nodes never touch the endpoint zeros of ``w``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

import numpy as np

from ._backend import kernels
from .errors import DomainError, ParameterError
from .polys import weight
from .qcore import DEFAULT_CONTROL, SeriesControl, as_qparam, qpoch_infinite


@dataclass(frozen=True)
class ChebyshevRule:
    N: int
    thetas: np.ndarray
    nodes: np.ndarray
    weight: float

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.N, self.weight)


def chebyshev_rule(N: int) -> ChebyshevRule:
    """N-point rule for ``int f(x) dx / sqrt(1 - x^2)``; exact up to degree ``2N - 1``."""
    if N < 1:
        raise ParameterError(f"N must be >= 1, got {N}")
    thetas = (2.0 * np.arange(1, N + 1) - 1.0) * math.pi / (2.0 * N)
    return ChebyshevRule(N, thetas, np.cos(thetas), math.pi / N)


def default_nodes(n_max: int) -> int:
    return 256 if n_max <= 6 else 512


@dataclass(frozen=True)
class OrthogonalityReport:
    m: int
    n: int
    computed: float
    expected: float

    @property
    def abs_err(self) -> float:
        return abs(self.computed - self.expected)


def _real_a(a) -> float:
    if isinstance(a, complex):
        if a.imag != 0:
            raise DomainError(f"orthogonality needs real a, got {a}")
        a = a.real
    a = float(a)
    if not abs(a) < 1.0:
        raise DomainError(f"orthogonality needs |a| < 1, got {a}")
    return a


def node_weights(rule: ChebyshevRule, a: float, q, ctl: SeriesControl = DEFAULT_CONTROL) -> List[float]:
    q = as_qparam(q)
    return [weight(float(theta), a, q, ctl) for theta in rule.thetas]


def expected_entry(m: int, n: int, q, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    if m != n:
        return 0.0
    q = as_qparam(q)
    return (1.0 / qpoch_infinite(q.q ** (n + 1), q, ctl)).real


def gram_matrix(n_max: int, a: float, q, rule: ChebyshevRule = None,
                ctl: SeriesControl = DEFAULT_CONTROL) -> List[List[OrthogonalityReport]]:
    """All entries ``0 <= m, n <= n_max``; the weight is evaluated once per node."""
    if n_max < 0:
        raise ParameterError(f"n_max must be >= 0, got {n_max}")
    a = _real_a(a)
    q = as_qparam(q)
    rule = rule or chebyshev_rule(default_nodes(n_max))
    wvals = node_weights(rule, a, q, ctl)
    sums = kernels.gram_sums(rule.nodes.tolist(), wvals, a, q.q, n_max)
    scale = rule.weight / (2.0 * math.pi)
    return [
        [OrthogonalityReport(m, n, scale * sums[m][n], expected_entry(m, n, q, ctl))
         for n in range(n_max + 1)]
        for m in range(n_max + 1)
    ]


def gram_values(reports: List[List[OrthogonalityReport]]) -> np.ndarray:
    return np.array([[r.computed for r in row] for row in reports])


def orthogonality_entry(m: int, n: int, a: float, q, rule: ChebyshevRule = None,
                        ctl: SeriesControl = DEFAULT_CONTROL) -> OrthogonalityReport:
    """One entry of the Gram matrix against its expected value."""
    if m < 0 or n < 0:
        raise ParameterError("degrees must be >= 0")
    return gram_matrix(max(m, n), a, q, rule, ctl)[m][n]
