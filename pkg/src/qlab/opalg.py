"""q-shift operators, the generator realization and its identity checks.

Functions of ``(z, t)`` are wrapped in :class:`FunctionHandle`; operators map
handles to new handles lazily, so a word of length ``L`` costs at most
``2**L`` evaluations per point of the handle it acts on (``A-``/``B-`` use
four).  Words are written left to right and applied right to left:
``A_MINUS @ A_PLUS`` applies ``A+`` first.

The realization, with ``s = q^{1/2}`` and ``D = z - 1/z``::

    A+ f = t/D [f(sz, t) - f(z/s, t)]
    A- f = 1/(s t D) [z^-2 (f(sz, t) - z/s f(sz, st)) - z^2 (f(z/s, t) - 1/(sz) f(z/s, st))]
    B+ f = t/D [z f(z/s, t) - f(sz, t)/z]
    B- f = 1/(t D) [z (f(z/s, t) - 1/(sz) f(z/s, st)) - (f(sz, t) - z/s f(sz, st))/z]
    K f = f(z, qt),   K^{1/2} f = f(z, st),   P f = (z + 1/z) f,   Q f = t^2 f
"""
from __future__ import annotations

import cmath
import contextlib
import contextvars
import enum
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, Union

from ._backend import kernels
from .errors import ParameterError, SingularityError
from .qcore import QParam, as_qparam

DEFAULT_GUARD = 0.1
WORD_MAX = 4
MUTATION_SCALE = 1.0 + 1e-3


class Generator(enum.Enum):
    A_PLUS = "A+"
    A_MINUS = "A-"
    B_PLUS = "B+"
    B_MINUS = "B-"
    K = "K"
    K_HALF = "K^1/2"
    P = "P"
    Q = "Q"
    ID = "Id"

    @classmethod
    def parse(cls, name: str) -> "Generator":
        key = name.strip().upper().replace("^", "").replace("/", "")
        aliases = {
            "A+": cls.A_PLUS, "APLUS": cls.A_PLUS, "A_PLUS": cls.A_PLUS,
            "A-": cls.A_MINUS, "AMINUS": cls.A_MINUS, "A_MINUS": cls.A_MINUS,
            "B+": cls.B_PLUS, "BPLUS": cls.B_PLUS, "B_PLUS": cls.B_PLUS,
            "B-": cls.B_MINUS, "BMINUS": cls.B_MINUS, "B_MINUS": cls.B_MINUS,
            "K": cls.K, "K12": cls.K_HALF, "KHALF": cls.K_HALF, "K_HALF": cls.K_HALF,
            "P": cls.P, "Q": cls.Q, "ID": cls.ID,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ParameterError(f"unknown generator {name!r}") from None


@dataclass(frozen=True)
class FunctionHandle:
    """A deterministic map ``(z, t) -> complex`` with a readable label."""

    fn: Callable[[complex, complex], complex]
    label: str = "f"

    def __call__(self, z, t=1.0) -> complex:
        return self.fn(complex(z), complex(t))

    def at(self, point) -> complex:
        return self.fn(point.z, point.t)


@dataclass(frozen=True)
class ShiftSpec:
    alpha: float = 0.0   # T_z exponent
    beta: float = 0.0    # T_t exponent


@dataclass(frozen=True)
class BasisIndex:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError(f"basis index n must be >= 0, got {self.n}")


@dataclass(frozen=True)
class PointGrid:
    """Sample points for residual checks, all clear of ``z = +-1`` and ``t = 0``."""

    points: Tuple[Tuple[complex, complex], ...]
    guard: float = DEFAULT_GUARD

    def __post_init__(self):
        pts = tuple((complex(z), complex(t)) for z, t in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ParameterError("empty point grid")
        for z, t in pts:
            if z == 0 or abs(z * z - 1.0) < self.guard:
                raise ParameterError(f"grid point z={z} violates |z^2 - 1| >= {self.guard}")
            if t == 0:
                raise ParameterError("grid point with t = 0")

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


GRID_THETAS = (0.4, 1.0, 1.7, 2.4, 2.9)
GRID_OFF_CIRCLE = (1.5 + 0.2j, 0.6 - 0.4j, 2.0 + 0.0j, 0.5j, -1.3 + 0.5j)
GRID_TS = (0.5, 1.0, 2.0)


def _orbit_clear(z: complex, q: float, depth: int, guard: float) -> bool:
    return all(abs((q ** (k / 2) * z) ** 2 - 1.0) >= guard for k in range(-depth, depth + 1))


def default_grid(q=None, guard: float = DEFAULT_GUARD, depth: int = 2) -> PointGrid:
    """The fixed 10-point grid: five unit-circle and five off-circle ``z``, ``t`` cycling 0.5, 1, 2.

    With ``q`` given, a point whose shift orbit ``q^{k/2} z`` (``|k| <= depth``)
    comes within the guard is rotated by ``e^{0.3i}``; on the real axis this
    happens for ``z = 2`` at ``q = 1/4``.
    """
    zs = [cmath.exp(1j * th) for th in GRID_THETAS] + list(GRID_OFF_CIRCLE)
    if q is not None:
        qv = as_qparam(q).q
        zs = [z if _orbit_clear(z, qv, depth, guard) else z * cmath.exp(0.3j) for z in zs]
    return PointGrid(tuple((z, GRID_TS[i % 3]) for i, z in enumerate(zs)), guard)


_MUTATION: contextvars.ContextVar = contextvars.ContextVar("qlab_mutation", default=None)


@contextlib.contextmanager
def mutated(generator: Union[Generator, str, None]):
    """Debug aid: corrupt one generator's formula (output scaled by ``MUTATION_SCALE``)."""
    if isinstance(generator, str):
        generator = Generator.parse(generator)
    token = _MUTATION.set(generator)
    try:
        yield
    finally:
        _MUTATION.reset(token)


def apply_shift(f: FunctionHandle, spec: ShiftSpec, q) -> FunctionHandle:
    """``(T_z^alpha T_t^beta f)(z, t) = f(q^alpha z, q^beta t)``."""
    q = as_qparam(q)
    if spec.alpha == 0 and spec.beta == 0:
        return f
    sz = q.pow(spec.alpha)
    st = q.pow(spec.beta)
    inner = f.fn
    return FunctionHandle(lambda z, t: inner(sz * z, st * t),
                          f"T[{spec.alpha},{spec.beta}]{f.label}")


def basis(idx: BasisIndex, q) -> FunctionHandle:
    """``f_n^m(z, t) = t^m H_n(x; q^{m/2} | q)``, defined for every ``z != 0``."""
    q = as_qparam(q)
    n, m, qv = idx.n, idx.m, q.q
    value = kernels.basis_value
    return FunctionHandle(lambda z, t: value(n, m, z, t, qv), f"f_{n}^{m}")


def polynomial_handle(fn: Callable[[complex, complex], complex], label: str) -> FunctionHandle:
    """Wrap ``fn(x, t)`` as a handle of ``(z, t)``."""
    return FunctionHandle(lambda z, t: fn(0.5 * (z + 1.0 / z), t), label)


def _guarded(z: complex, t: complex, guard: float):
    if abs(z * z - 1.0) < guard:
        raise SingularityError(f"operator evaluated at z={z}, within guard of z = +-1", point=(z, t))


def gen_apply(g: Generator, f: FunctionHandle, q, guard: float = DEFAULT_GUARD) -> FunctionHandle:
    """Apply one generator of the realization to ``f``."""
    q = as_qparam(q)
    qv = q.q
    s = q.half_root
    fn = f.fn
    if g is Generator.A_PLUS:
        def out(z, t):
            _guarded(z, t, guard)
            return t / (z - 1.0 / z) * (fn(s * z, t) - fn(z / s, t))
    elif g is Generator.A_MINUS:
        def out(z, t):
            _guarded(z, t, guard)
            up = fn(s * z, t) - z / s * fn(s * z, s * t)
            down = fn(z / s, t) - 1.0 / (s * z) * fn(z / s, s * t)
            return (up / (z * z) - z * z * down) / (s * t * (z - 1.0 / z))
    elif g is Generator.B_PLUS:
        def out(z, t):
            _guarded(z, t, guard)
            return t / (z - 1.0 / z) * (z * fn(z / s, t) - fn(s * z, t) / z)
    elif g is Generator.B_MINUS:
        def out(z, t):
            _guarded(z, t, guard)
            down = fn(z / s, t) - 1.0 / (s * z) * fn(z / s, s * t)
            up = fn(s * z, t) - z / s * fn(s * z, s * t)
            return (z * down - up / z) / (t * (z - 1.0 / z))
    elif g is Generator.K:
        def out(z, t):
            return fn(z, qv * t)
    elif g is Generator.K_HALF:
        def out(z, t):
            return fn(z, s * t)
    elif g is Generator.P:
        def out(z, t):
            return (z + 1.0 / z) * fn(z, t)
    elif g is Generator.Q:
        def out(z, t):
            return t * t * fn(z, t)
    elif g is Generator.ID:
        return f
    else:  # pragma: no cover
        raise ParameterError(f"unknown generator {g!r}")
    if _MUTATION.get() is g:
        clean = out

        def out(z, t):
            return MUTATION_SCALE * clean(z, t)
    return FunctionHandle(out, f"{g.value}({f.label})")


def tau_apply(f: FunctionHandle, q, guard: float = DEFAULT_GUARD) -> FunctionHandle:
    """Divided difference ``(f(q^{1/2} z) - f(q^{-1/2} z)) / (z - 1/z)``."""
    s = as_qparam(q).half_root
    fn = f.fn

    def out(z, t):
        _guarded(z, t, guard)
        return (fn(s * z, t) - fn(z / s, t)) / (z - 1.0 / z)
    return FunctionHandle(out, f"tau({f.label})")


Word = Tuple[Generator, ...]


@dataclass(frozen=True)
class OperatorExpr:
    """A linear combination of words in the generators."""

    terms: Tuple[Tuple[complex, Word], ...] = field(default_factory=tuple)

    @classmethod
    def gen(cls, g: Generator) -> "OperatorExpr":
        return cls(((1.0 + 0j, () if g is Generator.ID else (g,)),))

    @classmethod
    def scalar(cls, c: complex) -> "OperatorExpr":
        return cls(((complex(c), ()),))

    def __add__(self, other):
        other = _coerce(other)
        return OperatorExpr(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return OperatorExpr(tuple((-c, w) for c, w in self.terms))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, c):
        if isinstance(c, OperatorExpr):
            return self @ c
        return OperatorExpr(tuple((complex(c) * k, w) for k, w in self.terms))

    __rmul__ = __mul__

    def __matmul__(self, other):
        other = _coerce(other)
        return OperatorExpr(tuple(
            (c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms
        ))

    @property
    def word_length(self) -> int:
        return max((len(w) for _, w in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, w in self.terms:
            word = "".join(g.value for g in w) or "Id"
            parts.append(f"({c.real:.6g}{c.imag:+.6g}j)*{word}")
        return " + ".join(parts)


def _coerce(x) -> OperatorExpr:
    if isinstance(x, OperatorExpr):
        return x
    if isinstance(x, Generator):
        return OperatorExpr.gen(x)
    return OperatorExpr.scalar(x)


AP = OperatorExpr.gen(Generator.A_PLUS)
AM = OperatorExpr.gen(Generator.A_MINUS)
BP = OperatorExpr.gen(Generator.B_PLUS)
BM = OperatorExpr.gen(Generator.B_MINUS)
K = OperatorExpr.gen(Generator.K)
KH = OperatorExpr.gen(Generator.K_HALF)
P = OperatorExpr.gen(Generator.P)
Q = OperatorExpr.gen(Generator.Q)
ID = OperatorExpr.gen(Generator.ID)


def apply_word(word: Word, f: FunctionHandle, q, guard: float = DEFAULT_GUARD) -> FunctionHandle:
    if len(word) > WORD_MAX:
        raise ParameterError(f"word of length {len(word)} exceeds WORD_MAX={WORD_MAX}")
    for g in reversed(word):
        f = gen_apply(g, f, q, guard)
    return f


def term_handles(e: OperatorExpr, f: FunctionHandle, q, guard: float = DEFAULT_GUARD):
    """``[(coefficient, word applied to f), ...]`` for each term of ``e``."""
    return [(c, apply_word(w, f, q, guard)) for c, w in e.terms]


def expr_apply(e: OperatorExpr, f: FunctionHandle, q, guard: float = DEFAULT_GUARD) -> FunctionHandle:
    parts = term_handles(e, f, q, guard)

    def out(z, t):
        return sum((c * h.fn(z, t) for c, h in parts), 0j)
    return FunctionHandle(out, f"[{e}]({f.label})")


# -- actions on the basis ---------------------------------------------------

ACTION_IDS = ("12a", "12b", "12c", "12d", "12e", "14", "16")

_ACTION_GENERATOR = {
    "12a": Generator.A_PLUS, "12b": Generator.A_MINUS, "12c": Generator.B_PLUS,
    "12d": Generator.B_MINUS, "12e": Generator.K, "14": Generator.P, "16": Generator.Q,
}


def action_rhs(action_id: str, idx: BasisIndex, q) -> List[Tuple[float, BasisIndex]]:
    """The stated image of ``f_n^m`` as ``[(coefficient, index), ...]``.

    Terms with index ``n - 1`` are dropped at ``n = 0``, where their
    coefficient ``1 - q^0`` vanishes.
    """
    q = as_qparam(q)
    qv = q.q
    n, m = idx.n, idx.m
    lower = n >= 1
    if action_id == "12a":
        return [(-qv ** (-n / 2) * (1 - qv ** n), BasisIndex(n - 1, m + 1))] if lower else []
    if action_id == "12b":
        return [(-qv ** (-(n + 1) / 2), BasisIndex(n + 1, m - 1))]
    if action_id == "12c":
        return [(qv ** (-n / 2), BasisIndex(n, m + 1))]
    if action_id == "12d":
        return [(qv ** (-n / 2), BasisIndex(n, m - 1))]
    if action_id == "12e":
        return [(qv ** m, idx)]
    if action_id == "14":
        out = [(1.0, BasisIndex(n + 1, m)), (qv ** (n + m / 2), idx)]
        if lower:
            out.append((1 - qv ** n, BasisIndex(n - 1, m)))
        return out
    if action_id == "16":
        out = [(1.0, BasisIndex(n, m + 2))]
        if lower:
            out.append((-qv ** (m / 2) * (1 - qv ** n), BasisIndex(n - 1, m + 2)))
        return out
    raise ParameterError(f"unknown action {action_id!r}; expected one of {ACTION_IDS}")


def action_residual(action_id: str, idx: BasisIndex, grid: PointGrid, q) -> float:
    """Sup over the grid of ``|LHS - RHS| / (1 + |LHS|)`` for one basis action."""
    q = as_qparam(q)
    rhs_terms = [(c, basis(j, q)) for c, j in action_rhs(action_id, idx, q)]
    lhs = gen_apply(_ACTION_GENERATOR[action_id], basis(idx, q), q, grid.guard)
    worst = 0.0
    for z, t in grid:
        left = lhs.fn(z, t)
        right = sum((c * h.fn(z, t) for c, h in rhs_terms), 0j)
        worst = max(worst, abs(left - right) / (1.0 + abs(left)))
    return worst


# -- the relation table ------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    rel_id: int
    text: str
    lhs: OperatorExpr
    rhs: OperatorExpr


def relations(q) -> List[Relation]:
    """The twenty relations, left column (1-10) then right column (11-20)."""
    q = as_qparam(q)
    qv, s = q.q, q.half_root
    zero = OperatorExpr()
    table = [
        ("A-A+ - q A+A- = -(1-q)", AM @ AP - qv * (AP @ AM), -(1 - qv) * ID),
        ("B+A+ - q^1/2 A+B+ = 0", BP @ AP - s * (AP @ BP), zero),
        ("A-B+ - q^1/2 B+A- = 0", AM @ BP - s * (BP @ AM), zero),
        ("A+P - q^1/2 PA+ = -q^-1/2 (1-q) B+", AP @ P - s * (P @ AP), -(1 - qv) / s * BP),
        ("q^1/2 B+P - PB+ = (1-q) A+", s * (BP @ P) - P @ BP, (1 - qv) * AP),
        ("A+Q - QA+ = 0", AP @ Q - Q @ AP, zero),
        ("B+Q - QB+ = 0", BP @ Q - Q @ BP, zero),
        ("KA+ - q A+K = 0", K @ AP - qv * (AP @ K), zero),
        ("KB+ - q B+K = 0", K @ BP - qv * (BP @ K), zero),
        ("KP - PK = 0", K @ P - P @ K, zero),
        ("B+B- - B-B+ = 0", BP @ BM - BM @ BP, zero),
        ("B-A+ - q^1/2 A+B- = 0", BM @ AP - s * (AP @ BM), zero),
        ("A-B- - q^1/2 B-A- = 0", AM @ BM - s * (BM @ AM), zero),
        ("A-P - q^-1/2 PA- = q^-1 (1-q) B-", AM @ P - (1 / s) * (P @ AM), (1 - qv) / qv * BM),
        ("B-P - q^1/2 PB- = -(1-q) A-", BM @ P - s * (P @ BM), -(1 - qv) * AM),
        ("QA- - A-Q = q^-1 (1-q) B+K^1/2", Q @ AM - AM @ Q, (1 - qv) / qv * (BP @ KH)),
        ("B-Q - q QB- = (1-q) B+", BM @ Q - qv * (Q @ BM), (1 - qv) * BP),
        ("KA- - q^-1 A-K = 0", K @ AM - (1 / qv) * (AM @ K), zero),
        ("KB- - q^-1 B-K = 0", K @ BM - (1 / qv) * (BM @ K), zero),
        ("KQ - q^2 QK = 0", K @ Q - qv * qv * (Q @ K), zero),
    ]
    return [Relation(i, text, lhs, rhs) for i, (text, lhs, rhs) in enumerate(table, 1)]


def relation(rel_id: int, q) -> Relation:
    if not 1 <= rel_id <= 20:
        raise ParameterError(f"relation id must be in 1..20, got {rel_id}")
    return relations(q)[rel_id - 1]


def expression_residual(e: OperatorExpr, f: FunctionHandle, grid: PointGrid, q) -> float:
    """Sup of ``|sum of terms| / (1 + max |term|)`` over the grid, for ``e f`` expected to vanish."""
    parts = term_handles(e, f, q, grid.guard)
    worst = 0.0
    for z, t in grid:
        values = [c * h.fn(z, t) for c, h in parts]
        total = sum(values, 0j)
        scale = max((abs(v) for v in values), default=0.0)
        worst = max(worst, abs(total) / (1.0 + scale))
    return worst


def relation_residual(rel_id: int, idx: BasisIndex, grid: PointGrid, q) -> float:
    """Normalised residual of ``(LHS - RHS) f_n^m`` for relation ``rel_id``."""
    q = as_qparam(q)
    rel = relation(rel_id, q)
    return expression_residual(rel.lhs - rel.rhs, basis(idx, q), grid, q)


# -- q -> 1 limits -------------------------------------------------------------

def _z_for_x(x: complex, near: complex) -> complex:
    root = cmath.sqrt(x * x - 1.0)
    a, b = x + root, x - root
    return a if abs(a - near) <= abs(b - near) else b


def d_dx(f: FunctionHandle, z: complex, t: complex, h: float) -> complex:
    """Central difference in ``x = (z + 1/z)/2`` at fixed ``t``."""
    x = 0.5 * (z + 1.0 / z)
    return (f.fn(_z_for_x(x + h, z), t) - f.fn(_z_for_x(x - h, z), t)) / (2.0 * h)


def d_dt(f: FunctionHandle, z: complex, t: complex, h: float) -> complex:
    return (f.fn(z, t + h) - f.fn(z, t - h)) / (2.0 * h)


LIMIT_NAMES = ("A+", "A-", "B+", "B-", "K")


def classical_limit_residual_gens(
    q_list: Sequence[float],
    f: Union[FunctionHandle, Callable[[QParam], FunctionHandle]],
    grid: PointGrid,
    h: float = 1e-5,
) -> Dict[str, List[float]]:
    """Distance of each generator from its ``q -> 1`` limit, per ``q``.

    Limits: ``A+/(1-q) -> -(t/2) d/dx``, ``A- -> -(2x-1)/t``, ``B+ -> t``,
    ``B- -> 1/t`` and ``(1-K)/(1-q) -> t d/dt``; derivatives use central
    differences with step ``h``.  ``f`` may be a handle or a callable
    building one from ``q`` (for basis functions).  Each residual is the
    grid sup of ``|op f - limit f| / (1 + |limit f|)``.
    """
    report: Dict[str, List[float]] = {name: [] for name in LIMIT_NAMES}
    for qv in q_list:
        q = as_qparam(qv)
        fq = f if isinstance(f, FunctionHandle) else f(q)
        ap = gen_apply(Generator.A_PLUS, fq, q, grid.guard)
        am = gen_apply(Generator.A_MINUS, fq, q, grid.guard)
        bp = gen_apply(Generator.B_PLUS, fq, q, grid.guard)
        bm = gen_apply(Generator.B_MINUS, fq, q, grid.guard)
        kk = gen_apply(Generator.K, fq, q, grid.guard)
        worst = dict.fromkeys(LIMIT_NAMES, 0.0)
        for z, t in grid:
            x = 0.5 * (z + 1.0 / z)
            fv = fq.fn(z, t)
            pairs = {
                "A+": (ap.fn(z, t) / (1 - q.q), -0.5 * t * d_dx(fq, z, t, h)),
                "A-": (am.fn(z, t), -(2 * x - 1) / t * fv),
                "B+": (bp.fn(z, t), t * fv),
                "B-": (bm.fn(z, t), fv / t),
                "K": ((fv - kk.fn(z, t)) / (1 - q.q), t * d_dt(fq, z, t, h)),
            }
            for name, (got, want) in pairs.items():
                worst[name] = max(worst[name], abs(got - want) / (1.0 + abs(want)))
        for name in LIMIT_NAMES:
            report[name].append(worst[name])
    return report
