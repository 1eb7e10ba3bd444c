import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aimsolve.specfun import (ClosedFormShape, HypergeometricParameterError,
                              confluent_limit_check, gamma_ratio, hyp1f1_terminating,
                              hyp1f1_terminating_stable, hyp2f1_terminating,
                              hyp2f1_terminating_reflected, hyp2f1_terminating_stable,
                              pochhammer)


def poch_exact(x, n):
    out = Fraction(1)
    for j in range(n):
        out *= x + j
    return out


def f21_exact(n, b, c, z):
    b, c, z = Fraction(b), Fraction(c), Fraction(z)
    return sum(poch_exact(Fraction(-n), j) * poch_exact(b, j) / (poch_exact(c, j) * math.factorial(j))
               * z**j for j in range(n + 1))


def f11_exact(n, c, z):
    c, z = Fraction(c), Fraction(z)
    return sum(poch_exact(Fraction(-n), j) / (poch_exact(c, j) * math.factorial(j)) * z**j
               for j in range(n + 1))


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(3.7, 0) == 1
        assert pochhammer(2, 3) == 24
        assert pochhammer(0.5, 2) == 0.75

    def test_zero_factor_allowed(self):
        assert pochhammer(-2, 4) == 0

    @given(st.floats(min_value=-20, max_value=20), st.integers(min_value=0, max_value=25))
    def test_recursion(self, s, n):
        lhs = pochhammer(s, n + 1)
        rhs = pochhammer(s, n) * (s + n)
        assert lhs == pytest.approx(rhs, rel=4 * (n + 1) * np.finfo(float).eps, abs=1e-300)

    def test_gamma_ratio(self):
        eps, n = 2.25, 4
        ref = (-1) ** n * math.gamma(2 * eps + n + 1) / math.gamma(2 * eps + 1)
        assert gamma_ratio(eps, n) == pytest.approx(ref, rel=1e-13)

    def test_negative_n(self):
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)


class TestHypergeometric:
    def test_n_zero(self):
        assert hyp2f1_terminating(0, 3.3, -0.5, 12.0) == 1.0
        assert hyp1f1_terminating(0, 2.0, 7.0) == 1.0

    def test_two_term(self):
        assert hyp2f1_terminating(1, 2, 3, 0.5) == pytest.approx(2 / 3, rel=1e-15)
        assert hyp1f1_terminating(1, 2, 4) == pytest.approx(-1.0, rel=1e-15)

    def test_fraction_oracle_examples(self):
        ref = f21_exact(2, Fraction(3, 2), Fraction(5, 2), Fraction(3, 10))
        assert hyp2f1_terminating(2, 1.5, 2.5, 0.3) == pytest.approx(float(ref), rel=1e-14)
        ref = f11_exact(3, 5, Fraction(6, 5))
        assert hyp1f1_terminating(3, 5, 1.2) == pytest.approx(float(ref), rel=1e-14)

    @pytest.mark.parametrize("n", range(9))
    def test_fraction_oracle_grid(self, n):
        for b in (Fraction(1, 2), Fraction(7, 3), Fraction(-5, 4)):
            for c in (Fraction(3, 2), Fraction(11, 4), Fraction(9, 1)):
                for z in (Fraction(-1, 3), Fraction(1, 5), Fraction(7, 8)):
                    ref = f21_exact(n, b, c, z)
                    got = hyp2f1_terminating(n, float(b), float(c), float(z))
                    assert got == pytest.approx(float(ref), rel=1e-12, abs=1e-12)
                    ref1 = f11_exact(n, c, z * 4)
                    got1 = hyp1f1_terminating(n, float(c), float(z * 4))
                    assert got1 == pytest.approx(float(ref1), rel=1e-12, abs=1e-12)

    def test_forbidden_lower_parameter(self):
        with pytest.raises(HypergeometricParameterError, match="term index 3"):
            hyp2f1_terminating(4, 1.0, -2.0, 0.5)
        with pytest.raises(HypergeometricParameterError):
            hyp1f1_terminating(2, 0.0, 1.0)

    def test_lower_parameter_past_termination_is_fine(self):
        # c = -3 only vanishes at term index 4, beyond n = 3
        ref = f21_exact(3, 2, -3, Fraction(1, 2))
        assert hyp2f1_terminating(3, 2.0, -3.0, 0.5) == pytest.approx(float(ref), rel=1e-14)

    @given(st.integers(0, 8), st.floats(-5, 5), st.floats(0.5, 10))
    def test_value_at_zero(self, n, b, c):
        assert hyp2f1_terminating(n, b, c, 0.0) == 1.0
        assert hyp1f1_terminating(n, c, 0.0) == 1.0

    @settings(max_examples=200)
    @given(st.integers(0, 5), st.floats(-3, 3), st.floats(1.5, 6), st.floats(-0.9, 0.9))
    def test_contiguous_relation_in_c(self, n, b, c, z):
        a = -n
        f = lambda cc: hyp2f1_terminating(n, b, cc, z)
        terms = [c * (c - 1) * (z - 1) * f(c - 1),
                 c * (c - 1 - (2 * c - a - b - 1) * z) * f(c),
                 (c - a) * (c - b) * z * f(c + 1)]
        assert abs(sum(terms)) <= 1e-12 * max(1.0, max(abs(t) for t in terms))

    def test_array_argument(self):
        z = np.array([0.1, 0.2, 0.3])
        vals = hyp2f1_terminating(3, 1.5, 2.5, z)
        assert np.allclose(vals, [hyp2f1_terminating(3, 1.5, 2.5, zz) for zz in z], rtol=1e-15)

    @pytest.mark.parametrize("n", [3, 8, 15])
    def test_reflected_and_stable_agree_with_oracle(self, n):
        b, c = Fraction(2 * n + 5, 1) + Fraction(1, 3), Fraction(7, 3)
        for z in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)):
            ref = float(f21_exact(n, b, c, z))
            for fn in (hyp2f1_terminating_reflected, hyp2f1_terminating_stable):
                got = fn(n, float(b), float(c), float(z))
                assert got == pytest.approx(ref, rel=1e-9, abs=1e-12 * abs(float(poch_exact(b, n))))

    @pytest.mark.parametrize("n", [2, 7, 16])
    def test_laguerre_form_agrees(self, n):
        c = Fraction(29, 3)
        for z in (Fraction(1, 2), Fraction(5), Fraction(30)):
            ref = float(f11_exact(n, c, z))
            got = hyp1f1_terminating_stable(n, float(c), float(z))
            assert got == pytest.approx(ref, rel=1e-10, abs=1e-10)


class TestShape:
    def test_sigma_rho(self):
        s = ClosedFormShape(Nexp=-1, b=1.0, a_coef=1.0, m_param=2.0)
        assert s.sigma == (2 * 2.0 - 1 + 3) / 1
        assert s.rho == (5 * 1.0 + 2 * 1.0) / 1.0

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            ClosedFormShape(Nexp=-2, b=1.0, a_coef=0.0, m_param=0.0)

    def test_rho_needs_b(self):
        with pytest.raises(ValueError):
            ClosedFormShape(Nexp=0, b=0.0, a_coef=1.0, m_param=0.0).rho

    @pytest.mark.parametrize("nexp", [-1, 0, 1, 2])
    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_polynomial_solves_family(self, nexp, n):
        # y'' = 2(a x^{N+1}/(1 - b x^{N+2}) - (m+1)/x) y' - w x^N/(1 - b x^{N+2}) y
        shape = ClosedFormShape(nexp, b=0.3, a_coef=0.7, m_param=0.4)
        w = shape.w_n(n)
        x = np.linspace(0.3, 1.1, 9)
        h = 1e-4
        y = lambda t: shape.solution(n, t)
        yp = (y(x + h) - y(x - h)) / (2 * h)
        ypp = (y(x + h) - 2 * y(x) + y(x - h)) / h**2
        den = 1 - shape.b * x ** (nexp + 2)
        rhs = 2 * (shape.a_coef * x ** (nexp + 1) / den - (shape.m_param + 1) / x) * yp \
            - w * x**nexp / den * y(x)
        scale = 1 + np.max(np.abs(ypp)) + np.max(np.abs(rhs))
        assert np.max(np.abs(ypp - rhs)) < 1e-5 * scale


class TestConfluentLimit:
    def test_n1_closed_form(self):
        for a_coef in (-2.0, 0.5, 3.0):
            devs = confluent_limit_check(1, a_coef, 3.0, 0.6, [1e-1, 1e-2, 1e-3])
            expected = [abs(a_coef) * 0.6 * b / 3.0 for b in (1e-1, 1e-2, 1e-3)]
            assert devs == pytest.approx(expected, rel=1e-6)

    def test_n2_decreases_by_hundred(self):
        devs = confluent_limit_check(2, 1.0, 2.5, 0.4, [1e-2, 1e-4, 1e-6])
        assert devs[0] > devs[1] > devs[2]
        assert devs[0] / devs[1] == pytest.approx(100, rel=0.05)
        assert devs[1] / devs[2] == pytest.approx(100, rel=0.05)

    def test_n0_zero(self):
        assert confluent_limit_check(0, 1.0, 2.0, 0.3, [1e-2, 1e-4]) == [0.0, 0.0]

    @pytest.mark.parametrize("bseq", [[1e-4, 1e-2], [1e-2, 0.0], [1e-2, 1e-2]])
    def test_bad_sequence(self, bseq):
        with pytest.raises(ValueError):
            confluent_limit_check(2, 1.0, 2.0, 0.3, bseq)
