"""Residual sweeps behind ``qlab verify``.

Each suite returns :class:`CheckRow` records in a fixed order.  A row
passes when its residual is finite and ``<= tol``.  The default tolerance
of every check is the acceptance tolerance for that identity; passing
``tol`` replaces it for all residual checks (the limits suite compares
ratios and keeps its own threshold).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import expansion as ex
from . import opalg, polys, qexp, quad
from .errors import QLabError

TOLS: Dict[str, float] = {
    "route": 1e-9,
    "shift": 1e-11,
    "action": 1e-10,
    "relation": 1e-9,
    "orth_diag": 1e-7,
    "orth_offdiag": 1e-8,
    "eigen": 1e-9,
    "g_recurrence": 1e-12,
    "g_two_path": 1e-12,
    "y_recurrence": 1e-12,
    "w_recurrence": 1e-11,
    "expansion": 1e-8,
    "qhermite_expansion": 1e-8,
    "m40_limit": 1e-8,
    "limit": 0.99,
}

#: residual sequences entirely below this are exact up to rounding and the
#: finite-difference error of a step 1e-5 (about eps / h)
LIMIT_EXACT_FLOOR = 1e-10

ROUTE_QS = (0.1, 0.5, 0.9)
ROUTE_AS = (0.3, -0.3, 0.9, 0.9j)
ROUTE_THETAS = (0.3, 1.0, 2.0, 2.8)
OPALG_QS = (0.25, 0.5, 0.8)
ORTH_QS = (0.3, 0.5)
ORTH_AS = (0.0, 0.4, -0.7)
EIGEN_QS = (0.3, 0.5, 0.8)
EIGEN_AS = (-1j, 0.5, 0.5j)
EIGEN_BS = (0.1, 0.4)
EIGEN_THETAS = tuple((k - 0.5) * math.pi / 8 for k in range(1, 9))
G_QS = (0.3, 0.5, 0.8)
G_BS = (0.3, -0.7, 1.0, 0.8j, 0.5 + 0.5j)
W_QS = (0.5, 0.8)
W_BS = (0.2, 0.4j)
EXP_QS = (0.3, 0.5, 0.8)
EXP_BS = (0.1, 0.4, 0.4j)
EXP_THETAS = (0.5, 1.0, 2.0)
EXP_MS = (0, 1, 2, 5)
LIMIT_QS = (0.9, 0.99, 0.999)


def fmt_num(v) -> str:
    """Compact label for a real or complex parameter: ``0.3``, ``-1i``, ``0.5+0.5i``."""
    c = complex(v)
    if c.imag == 0:
        return f"{c.real:g}"
    if c.real == 0:
        return f"{c.imag:g}i"
    return f"{c.real:g}{c.imag:+g}i"


@dataclass(frozen=True)
class CheckRow:
    check: str
    relation_id: str
    n: Optional[int]
    m: Optional[int]
    q: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tol

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "relation_id": self.relation_id,
            "n": self.n,
            "m": self.m,
            "q": self.q,
            "residual": self.residual,
            "tol": self.tol,
            "status": self.status,
        }


@dataclass(frozen=True)
class SuiteOptions:
    q: Optional[float] = None
    tol: Optional[float] = None
    a: Optional[float] = None
    n_max: Optional[int] = None
    nodes: Optional[int] = None

    def qs(self, default: Sequence[float]) -> Sequence[float]:
        return (self.q,) if self.q is not None else default

    def tol_for(self, key: str) -> float:
        return self.tol if self.tol is not None else TOLS[key]


def _safe(fn: Callable[[], float]) -> float:
    """A check that raises is reported as a failing row, not a crash."""
    try:
        return float(fn())
    except (QLabError, ArithmeticError, ValueError):
        return math.nan


def suite_polys(opts: SuiteOptions) -> List[CheckRow]:
    rows = []
    for q in opts.qs(ROUTE_QS):
        for a in ROUTE_AS:
            points = [polys.EvalPointZT.from_theta(th) for th in ROUTE_THETAS]
            for n in range(21):
                spec = polys.BigQHermiteSpec(n, a, q)
                dev = _safe(lambda: max(polys.compare_routes(spec, p).max_deviation for p in points))
                rows.append(CheckRow("route", f"a={fmt_num(a)}", n, None, fmt_num(q), dev, opts.tol_for("route")))
            for n in range(1, 21):
                res = _safe(lambda: max(polys.shift_identity_residual(n, p, a, q) for p in points))
                rows.append(CheckRow("shift", f"a={fmt_num(a)}", n, None, fmt_num(q), res, opts.tol_for("shift")))
    return rows


def suite_actions(opts: SuiteOptions) -> List[CheckRow]:
    rows = []
    for q in opts.qs(OPALG_QS):
        grid = opalg.default_grid(q)
        for action_id in opalg.ACTION_IDS:
            for n in range(7):
                for m in range(-3, 4):
                    idx = opalg.BasisIndex(n, m)
                    res = _safe(lambda: opalg.action_residual(action_id, idx, grid, q))
                    rows.append(CheckRow("action", action_id, n, m, fmt_num(q), res, opts.tol_for("action")))
    return rows


def suite_relations(opts: SuiteOptions) -> List[CheckRow]:
    rows = []
    for q in opts.qs(OPALG_QS):
        grid = opalg.default_grid(q)
        for rel in opalg.relations(q):
            for n in range(7):
                for m in range(-3, 4):
                    f = opalg.basis(opalg.BasisIndex(n, m), q)
                    res = _safe(lambda: opalg.expression_residual(rel.lhs - rel.rhs, f, grid, q))
                    rows.append(CheckRow("relation", str(rel.rel_id), n, m, fmt_num(q), res,
                                         opts.tol_for("relation")))
    return rows


def suite_orthogonality(opts: SuiteOptions) -> List[CheckRow]:
    rows = []
    n_max = opts.n_max if opts.n_max is not None else 8
    rule = quad.chebyshev_rule(opts.nodes or 512)
    a_list = (opts.a,) if opts.a is not None else ORTH_AS
    for q in opts.qs(ORTH_QS):
        for a in a_list:
            try:
                gram = quad.gram_matrix(n_max, a, q, rule)
            except (QLabError, ArithmeticError, ValueError):
                gram = None
            for m in range(n_max + 1):
                for n in range(n_max + 1):
                    key = "orth_diag" if m == n else "orth_offdiag"
                    err = gram[m][n].abs_err if gram is not None else math.nan
                    rows.append(CheckRow("orthogonality", f"a={fmt_num(a)}", n, m, fmt_num(q), err,
                                         opts.tol_for(key)))
    return rows


def suite_qexp(opts: SuiteOptions) -> List[CheckRow]:
    rows = []
    for q in opts.qs(EIGEN_QS):
        for a in EIGEN_AS:
            for b in EIGEN_BS:
                params = qexp.QExpParams(a, b)
                res = _safe(lambda: qexp.qexp_eigen_residual(params, q, EIGEN_THETAS))
                rows.append(CheckRow("eigen", f"a={fmt_num(a)},b={fmt_num(b)}", None, None, fmt_num(q), res,
                                     opts.tol_for("eigen")))
    for q in opts.qs(G_QS):
        for b in G_BS:
            for n in range(1, 10):
                res = _safe(lambda: qexp.g_recurrence_residual(n, b, q))
                rows.append(CheckRow("g_recurrence", f"b={fmt_num(b)}", n, None, fmt_num(q), res,
                                     opts.tol_for("g_recurrence")))
            for n in range(11):
                res = _safe(lambda: abs(qexp.g(n, b, q) - qexp.g_via_qexp(n, b, q)))
                rows.append(CheckRow("g_two_path", f"b={fmt_num(b)}", n, None, fmt_num(q), res,
                                     opts.tol_for("g_two_path")))
    return rows


def suite_expansion(opts: SuiteOptions) -> List[CheckRow]:
    rows = []
    for q in opts.qs(G_QS):
        for b in G_BS:
            for j in range(9):
                res = _safe(lambda: ex.y_recurrence_residual(j, b, q))
                rows.append(CheckRow("y_recurrence", f"b={fmt_num(b)}", j, None, fmt_num(q), res,
                                     opts.tol_for("y_recurrence")))
    for q in opts.qs(W_QS):
        for b in W_BS:
            for n in range(11):
                for m in range(-5, 6):
                    try:
                        triple = ex.w_recurrence_residuals(n, m, b, q)
                    except (QLabError, ArithmeticError, ValueError):
                        triple = (math.nan,) * 3
                    for label, res in zip(("29", "32", "33"), triple):
                        rows.append(CheckRow("w_recurrence", f"{label}:b={fmt_num(b)}", n, m, fmt_num(q), res,
                                             opts.tol_for("w_recurrence")))
    for q in opts.qs(EXP_QS):
        for b in EXP_BS:
            for th in EXP_THETAS:
                point = polys.EvalPointZT.from_theta(th)
                rid = f"x=cos{th:g},b={fmt_num(b)}"
                for m in EXP_MS:
                    res = _safe(lambda: ex.expansion_residual(point, m, b, q))
                    rows.append(CheckRow("expansion", rid, None, m, fmt_num(q), res, opts.tol_for("expansion")))
                res = _safe(lambda: ex.qhermite_expansion_residual(point, b, q))
                rows.append(CheckRow("qhermite_expansion", rid, None, None, fmt_num(q), res,
                                     opts.tol_for("qhermite_expansion")))
                res = _safe(lambda: _m40_gap(point, b, q))
                rows.append(CheckRow("m40_limit", rid, None, 40, fmt_num(q), res, opts.tol_for("m40_limit")))
    return rows


def _m40_gap(point, b, q) -> float:
    far = ex.expansion_sum(point, 40, b, q)
    near = ex.qhermite_expansion_sum(point, b, q)
    return abs(far - near) / (1.0 + abs(near))


def decrease_ratio(residuals: Sequence[float], floor: float = LIMIT_EXACT_FLOOR) -> float:
    """Largest ``r[i+1] / r[i]``; 0 when every residual is below ``floor``; inf if a step does not shrink."""
    if all(r <= floor for r in residuals):
        return 0.0
    worst = 0.0
    for prev, cur in zip(residuals, residuals[1:]):
        if not (math.isfinite(prev) and math.isfinite(cur)) or prev <= 0:
            return math.inf
        worst = max(worst, cur / prev)
    return worst


def _x(z):
    return 0.5 * (z + 1.0 / z)


#: q-independent polynomial handles for the generator limits, plus f_2^0 (built per q)
LIMIT_FUNCTIONS: Dict[str, object] = {
    "1": opalg.polynomial_handle(lambda z, t: 1.0 + 0j, "1"),
    "t": opalg.polynomial_handle(lambda z, t: t, "t"),
    "t*x^2": opalg.polynomial_handle(lambda z, t: t * _x(z) ** 2, "t*x^2"),
    "t^2*x^3+x": opalg.polynomial_handle(lambda z, t: t * t * _x(z) ** 3 + _x(z), "t^2*x^3+x"),
    "f_2^0": lambda q: opalg.basis(opalg.BasisIndex(2, 0), q),
}


def suite_limits(opts: SuiteOptions) -> List[CheckRow]:
    rows = []
    qlabel = "|".join(fmt_num(q) for q in LIMIT_QS)
    tol = TOLS["limit"]
    for n in (2, 3, 5):
        res = _safe(lambda: decrease_ratio(polys.classical_limit_residual_poly(n, 0.4, 0.2, LIMIT_QS)))
        rows.append(CheckRow("limit", "poly:x=0.4,a=0.2", n, None, qlabel, res, tol))
    res = _safe(lambda: decrease_ratio(qexp.classical_limit_residual_qexp(0.5, 1.0, LIMIT_QS)))
    rows.append(CheckRow("limit", "qexp:x=0.5,b=1", None, None, qlabel, res, tol))
    res = _safe(lambda: decrease_ratio(qexp.classical_limit_residual_qexp(0.5, 1.0, LIMIT_QS, a=0.3)))
    rows.append(CheckRow("limit", "qexp:x=0.5,b=1,a=0.3", None, None, qlabel, res, tol))
    grid = opalg.default_grid()
    for label, f in LIMIT_FUNCTIONS.items():
        try:
            report = opalg.classical_limit_residual_gens(LIMIT_QS, f, grid)
        except (QLabError, ArithmeticError, ValueError):
            report = {name: [math.nan] * len(LIMIT_QS) for name in opalg.LIMIT_NAMES}
        for name in opalg.LIMIT_NAMES:
            rows.append(CheckRow("limit", f"{name}:{label}", None, None, qlabel, decrease_ratio(report[name]), tol))
    return rows


SUITES: Dict[str, Callable[[SuiteOptions], List[CheckRow]]] = {
    "polys": suite_polys,
    "actions": suite_actions,
    "relations": suite_relations,
    "orthogonality": suite_orthogonality,
    "qexp": suite_qexp,
    "expansion": suite_expansion,
    "limits": suite_limits,
}


def run_suites(names: Iterable[str], opts: SuiteOptions = SuiteOptions()) -> List[CheckRow]:
    rows: List[CheckRow] = []
    for name in names:
        rows.extend(SUITES[name](opts))
    return rows
