"""The compiled and pure-Python kernels must agree call for call."""
import cmath
import os
import subprocess
import sys

import pytest

from qlab import _pykernels as py

c = pytest.importorskip("qlab._ckernels")


def same(u, v, tol=1e-14):
    if isinstance(u, (list, tuple)):
        assert len(u) == len(v)
        for a, b in zip(u, v):
            same(a, b, tol)
        return
    if u == v:
        return
    assert not isinstance(u, int)
    assert abs(complex(u) - complex(v)) <= tol * (1 + abs(complex(u)))


CASES = [
    ("qpoch_finite", (0.3 + 0.4j, 0.6, 17)),
    ("qpoch_infinite", (0.5 - 0.2j, 0.8, 1e-15, 3, 10000)),
    ("qpoch_infinite", (0.5, 0.999, 1e-15, 3, 50)),
    ("hyper_sum", ((0.5 ** -6, 0.3 + 0.1j, 0.2), (0.0, 0.1), 0.5, 0.5, 6, 1e-12, 1e-15, 3, 10000)),
    ("hyper_sum", ((0.3,), (), 0.7j, 0.4, -1, 1e-12, 1e-15, 3, 10000)),
    ("hyper_sum", ((0.3,), (0.5 ** -2,), 0.1, 0.5, -1, 1e-12, 1e-15, 3, 10000)),
    ("hermite_ladder", (0.3 + 0.1j, 0.9j, 0.7, 25)),
    ("basis_value", (5, -2, 1.5 + 0.2j, 0.7, 0.5)),
    ("basis_value", (3, 3, cmath.exp(0.4j), 2.0, 0.25)),
    ("qexp_sum", (cmath.exp(1.1j), -1j, 0.4, 0.5, 1e-12, 1e-15, 3, 10000)),
    ("qexp_sum", (1.4 + 0.3j, 0.5j, 0.3, 0.8, 1e-12, 1e-15, 3, 10000)),
    ("qexp_sum", (cmath.exp(0.5j), 1.8, 1.0, 0.5, 1e-12, 1e-15, 3, 10000)),
    ("g_sum", (7, 0.6 - 0.3j, 0.8, 1e-12, 1e-15, 3, 10000)),
    ("g_sum", (-3, 0.9, 0.3, 1e-12, 1e-15, 3, 10000)),
    ("gram_sums", ([0.9, 0.1, -0.5], [1.0, 2.5, 0.3], 0.4, 0.5, 4)),
]


@pytest.mark.parametrize("name,args", CASES, ids=[f"{n}-{i}" for i, (n, _) in enumerate(CASES)])
def test_backends_agree(name, args):
    same(getattr(py, name)(*args), getattr(c, name)(*args))


def test_status_codes_match():
    assert (py.OK, py.NO_CONVERGENCE, py.POLE) == (0, 1, 2)
    assert c.qexp_sum(cmath.exp(0.5j), 1.8, 1.0, 0.5, 1e-12, 1e-15, 3, 10000)[2] == py.NO_CONVERGENCE


@pytest.mark.parametrize("flag,expected", [("1", "python"), ("", "cython")])
def test_backend_selection(flag, expected):
    env = dict(os.environ, QLAB_PURE_PYTHON=flag)
    out = subprocess.run([sys.executable, "-c", "import qlab; print(qlab.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
