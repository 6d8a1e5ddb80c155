"""Continuous big q-Hermite polynomials, the q-exponential E_q and a q-oscillator realization.

Numerical evaluation plus residual checks of the identities that tie them
together.  Hot loops run in a compiled extension when it is available; set
``QLAB_PURE_PYTHON=1`` to force the pure-Python kernels.
"""
from ._backend import BACKEND
from .errors import (
    DomainError,
    ParameterError,
    PoleError,
    QLabError,
    SingularityError,
    TailBoundError,
    TruncationError,
)
from .qcore import (
    DEFAULT_CONTROL,
    HyperSeriesSpec,
    QParam,
    SeriesControl,
    qhyper,
    qpoch_finite,
    qpoch_general,
    qpoch_infinite,
)
from .polys import (
    BigQHermiteSpec,
    EvalPointZT,
    big_qhermite,
    compare_routes,
    hermite_2phi0,
    hermite_3phi2,
    hermite_recurrence,
    qhermite,
    weight,
)
from .qexp import QExpParams, g, qexp_z
from .expansion import expansion_residual, u_n, w_coeff, y
from .quad import chebyshev_rule, gram_matrix, orthogonality_entry

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    "QLabError", "ParameterError", "DomainError", "PoleError", "TruncationError", "SingularityError",
    "TailBoundError",
    "QParam", "SeriesControl", "DEFAULT_CONTROL", "HyperSeriesSpec",
    "qpoch_finite", "qpoch_infinite", "qpoch_general", "qhyper",
    "EvalPointZT", "BigQHermiteSpec", "big_qhermite", "hermite_recurrence", "hermite_3phi2", "hermite_2phi0",
    "qhermite", "compare_routes", "weight",
    "QExpParams", "qexp_z", "g",
    "u_n", "y", "w_coeff", "expansion_residual",
    "chebyshev_rule", "gram_matrix", "orthogonality_entry",
]
