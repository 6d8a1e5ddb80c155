import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import EQ_COS1_A05_B04_Q03, EQ_X05_AMI_B04_Q05, G2_B05_Q05, G5_BM07_Q08, g_oracle, qexp_mp_oracle, rel_err
from qlab.errors import ParameterError, TruncationError
from qlab.expansion import qhermite_expansion_sum
from qlab.polys import EvalPointZT
from qlab.qexp import (
    QExpParams,
    classical_limit_residual_qexp,
    g,
    g_recurrence_residual,
    g_via_qexp,
    qexp,
    qexp_eigen_residual,
    qexp_terms_direct,
    qexp_z,
)

GRID8 = tuple((k - 0.5) * math.pi / 8 for k in range(1, 9))


class TestQExp:
    def test_b_zero(self):
        assert qexp(EvalPointZT.from_theta(0.7), QExpParams(0.4 - 0.2j, 0), 0.5) == 1

    def test_a_zero_is_g0(self):
        v = qexp(EvalPointZT.from_theta(1.3), QExpParams(0, 0.3), 0.5)
        assert abs(v - g(0, 0.3, 0.5)) <= 1e-15

    def test_frozen(self):
        p = EvalPointZT.from_x(0.5)
        assert rel_err(qexp(p, QExpParams(-1j, 0.4), 0.5), EQ_X05_AMI_B04_Q05) <= 1e-13
        p = EvalPointZT.from_theta(1.0)
        assert rel_err(qexp(p, QExpParams(0.5, 0.4), 0.3), EQ_COS1_A05_B04_Q03) <= 1e-13

    def test_matches_expansion_series(self):
        # E_q(x; -i, b/2) against its continuous q-Hermite expansion
        p = EvalPointZT.from_x(0.5)
        want = qhermite_expansion_sum(p, 0.8, 0.5, N=40)
        assert abs(qexp(p, QExpParams(-1j, 0.4), 0.5) - want) <= 1e-9

    @settings(max_examples=12)
    @given(st.complex_numbers(max_magnitude=0.9, allow_nan=False), st.complex_numbers(max_magnitude=0.9,
           allow_nan=False), st.floats(0.2, 0.8), st.floats(0.1, 3.0))
    def test_chain_matches_definition(self, a, b, q, theta):
        # terms decay like |ab|^n; the stop rule bounds the last terms by rel_tol |sum|, so the
        # omitted tail is at most a geometric multiple 1 / (1 - |ab|) of that
        z = cmath.exp(1j * theta)
        want = qexp_mp_oracle(z, a, b, q)
        bound = 1e-12 * 3 / (1 - abs(a * b)) * (1 + abs(want))
        assert abs(qexp_z(z, QExpParams(a, b), q) - want) <= bound

    def test_direct_terms_short(self):
        z = cmath.exp(0.9j)
        head = sum(qexp_terms_direct(z, QExpParams(0.3, 0.2), 0.5, 25))
        assert abs(head - qexp_mp_oracle(z, 0.3, 0.2, 0.5)) <= 1e-14

    def test_off_circle(self):
        z = 1.4 + 0.3j
        direct = sum(qexp_terms_direct(z, QExpParams(0.5j, 0.3), 0.5, 50))
        assert abs(qexp_z(z, QExpParams(0.5j, 0.3), 0.5) - direct) <= 1e-13

    def test_guard(self):
        with pytest.raises(ParameterError):
            qexp_z(1j, QExpParams(0.1, 2.5), 0.5)
        with pytest.raises(ParameterError):
            qexp_z(1j, QExpParams(3.0, 1.0), 0.5)
        with pytest.raises(ParameterError):
            qexp_z(0, QExpParams(0.1, 0.1), 0.5)

    @pytest.mark.parametrize("a", [1.2, 1.8, -1.5j])
    def test_divergence_inside_guard(self, a):
        with pytest.raises(TruncationError):
            qexp_z(0.3 + 0.95j, QExpParams(a, 1.0), 0.5)


class TestG:
    def test_zero(self):
        assert all(g(n, 0, 0.5) == 1 for n in range(-3, 8))

    def test_frozen(self):
        assert abs(g(2, 0.5, 0.5) - G2_B05_Q05) <= 1e-13
        assert abs(g(5, -0.7, 0.8) - G5_BM07_Q08) <= 1e-13

    @given(st.integers(-4, 10), st.complex_numbers(max_magnitude=1.0, allow_nan=False), st.floats(0.2, 0.85))
    def test_partial_sums(self, n, b, q):
        assert abs(g(n, b, q) - g_oracle(n, b, q)) <= 1e-12 * (1 + abs(g_oracle(n, b, q)))

    @given(st.integers(0, 10), st.complex_numbers(max_magnitude=1.0, allow_nan=False), st.floats(0.3, 0.8))
    def test_two_paths(self, n, b, q):
        assert abs(g(n, b, q) - g_via_qexp(n, b, q)) <= 1e-12 * (1 + abs(g(n, b, q)))

    def test_recurrence(self):
        assert g_recurrence_residual(3, 0, 0.5) == 0
        assert g_recurrence_residual(1, 0.3, 0.5) <= 1e-12
        assert g_recurrence_residual(5, -0.7, 0.8) <= 1e-12
        with pytest.raises(ParameterError):
            g_recurrence_residual(0, 0.3, 0.5)


class TestEigen:
    def test_trivial(self):
        assert qexp_eigen_residual(QExpParams(0.5, 0), 0.5, GRID8) == 0
        assert qexp_eigen_residual(QExpParams(0, 0.7), 0.5, GRID8) <= 1e-12

    def test_example(self):
        assert qexp_eigen_residual(QExpParams(-1j, 0.4), 0.5, (0.4, 1.0, 2.2)) <= 1e-9

    @pytest.mark.parametrize("a", [0.5 + 0.5j, -0.8, 0.3j])
    def test_other_parameters(self, a):
        assert qexp_eigen_residual(QExpParams(a, 0.6), 0.4, GRID8) <= 1e-9


class TestLimits:
    QL = (0.9, 0.99, 0.999)

    def test_b_zero(self):
        assert classical_limit_residual_qexp(0.5, 0.0, self.QL) == [0, 0, 0]

    def test_decreasing(self):
        r = classical_limit_residual_qexp(0.5, 1.0, self.QL)
        assert r[0] > r[1] > r[2]
        r = classical_limit_residual_qexp(0.5, 1.0, self.QL, a=0.3)
        assert r[0] > r[1] > r[2]
