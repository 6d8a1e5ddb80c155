import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import NORM_N3_Q05, QP_HALF_HALF, chebyshev_moment, qpoch_inf_oracle
from qlab.errors import DomainError, ParameterError
from qlab.quad import chebyshev_rule, expected_entry, gram_matrix, gram_values, orthogonality_entry


class TestRule:
    def test_small(self):
        r1 = chebyshev_rule(1)
        assert r1.nodes[0] == pytest.approx(0, abs=1e-16) and r1.weight == pytest.approx(math.pi)
        r2 = chebyshev_rule(2)
        assert sorted(r2.nodes) == pytest.approx([-math.sqrt(2) / 2, math.sqrt(2) / 2])
        assert r2.weights.tolist() == pytest.approx([math.pi / 2] * 2)

    def test_second_moment(self):
        r = chebyshev_rule(8)
        assert abs(float(np.sum(r.weights * r.nodes ** 2)) - math.pi / 2) <= 1e-14

    @given(st.integers(1, 40))
    def test_invariants(self, n):
        r = chebyshev_rule(n)
        assert np.all(np.abs(r.nodes) < 1)
        assert np.allclose(np.sort(r.nodes), -np.sort(r.nodes)[::-1], atol=1e-15)
        assert abs(float(r.weights.sum()) - math.pi) <= 1e-13

    @given(st.integers(1, 12), st.data())
    def test_exactness(self, n, data):
        k = data.draw(st.integers(0, 2 * n - 1))
        r = chebyshev_rule(n)
        assert abs(float(np.sum(r.weights * r.nodes ** k)) - chebyshev_moment(k)) <= 1e-13

    def test_bad_n(self):
        with pytest.raises(ParameterError):
            chebyshev_rule(0)


class TestOrthogonality:
    def test_examples(self):
        r256 = chebyshev_rule(256)
        off = orthogonality_entry(0, 1, 0.4, 0.5, r256)
        assert abs(off.computed) <= 1e-8 and off.expected == 0
        diag = orthogonality_entry(0, 0, 0.4, 0.5, r256)
        assert abs(diag.expected - 1 / QP_HALF_HALF) <= 1e-13
        assert diag.abs_err <= 1e-8
        e3 = orthogonality_entry(3, 3, 0.0, 0.5, chebyshev_rule(512))
        assert abs(e3.expected - NORM_N3_Q05) <= 1e-13
        assert e3.abs_err <= 1e-8

    def test_expected_oracle(self):
        for n in range(6):
            assert abs(expected_entry(n, n, 0.3) - 1 / qpoch_inf_oracle(0.3 ** (n + 1), 0.3).real) <= 1e-13
        assert expected_entry(2, 4, 0.3) == 0

    def test_gram_shapes(self):
        g0 = gram_matrix(0, 0.4, 0.5)
        assert len(g0) == 1 and len(g0[0]) == 1 and (g0[0][0].m, g0[0][0].n) == (0, 0)

    @pytest.mark.parametrize("a", [0.0, 0.4, -0.4, 0.7, -0.7])
    def test_norm_independent_of_a(self, a):
        g = gram_matrix(4, a, 0.5, chebyshev_rule(512))
        assert max(r.abs_err for row in g for r in row if r.m == r.n) <= 1e-7
        assert max(abs(r.computed) for row in g for r in row if r.m != r.n) <= 1e-8

    @pytest.mark.parametrize("a,q", [(0.0, 0.3), (0.4, 0.5), (-0.7, 0.3)])
    def test_convergence_in_nodes(self, a, q):
        coarse = gram_values(gram_matrix(8, a, q, chebyshev_rule(256)))
        fine = gram_values(gram_matrix(8, a, q, chebyshev_rule(512)))
        assert np.max(np.abs(coarse - fine)) <= 1e-9

    def test_symmetry(self):
        v = gram_values(gram_matrix(8, -0.7, 0.5, chebyshev_rule(512)))
        assert np.max(np.abs(v - v.T)) <= 1e-13

    def test_odd_entries_vanish_at_zero_a(self):
        v = gram_values(gram_matrix(8, 0.0, 0.5, chebyshev_rule(512)))
        odd = [abs(v[m, n]) for m in range(9) for n in range(9) if (m + n) % 2]
        assert max(odd) <= 1e-12

    @pytest.mark.parametrize("a", [1.0, -1.3, 0.2j])
    def test_domain(self, a):
        with pytest.raises(DomainError):
            orthogonality_entry(1, 1, a, 0.5)

    def test_negative_degree(self):
        with pytest.raises(ParameterError):
            orthogonality_entry(-1, 1, 0.2, 0.5)
