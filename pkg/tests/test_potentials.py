import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aimsolve.potentials import (H2_MORSE, DomainError, HulthenParams, MorseParams,
                                 PotentialError, SingularityError, closed_form_spectrum,
                                 energy_n, epsilon_n, hulthen_energy_n, hulthen_epsilon_n,
                                 hulthen_potential, make_aim_problem_hulthen,
                                 make_aim_problem_morse, morse_energy_n, morse_epsilon_n,
                                 morse_potential, n_max_bound)

HUL = HulthenParams(delta=0.05)


class TestParams:
    def test_beta2(self):
        assert HUL.beta2 == pytest.approx(40.0)

    def test_q_zero_rejected(self):
        with pytest.raises(PotentialError, match="q must be nonzero"):
            HulthenParams(delta=0.05, q=0)

    def test_q_above_one_rejected(self):
        with pytest.raises(PotentialError):
            HulthenParams(delta=0.05, q=1.5)

    def test_negative_q_needs_flag(self):
        with pytest.raises(PotentialError):
            HulthenParams(delta=0.05, q=-1)
        HulthenParams(delta=0.05, q=-1, allow_nonpositive_q=True)

    @pytest.mark.parametrize("delta", [0.0, -0.1, math.nan])
    def test_bad_delta(self, delta):
        with pytest.raises(PotentialError):
            HulthenParams(delta=delta)

    @pytest.mark.parametrize("field", ["De", "a", "re", "mu"])
    def test_morse_positive(self, field):
        kw = dict(De=4.7446, a=1.9425, re=0.7416, mu=0.50391)
        kw[field] = 0.0
        with pytest.raises(PotentialError):
            MorseParams(**kw)

    def test_morse_derived(self):
        assert H2_MORSE.alpha == pytest.approx(1.44056, abs=1e-5)
        assert H2_MORSE.beta == pytest.approx(25.0819, abs=1e-4)


class TestPotentials:
    def test_hulthen_coulomb_like_near_origin(self):
        r = np.array([1e-6, 1e-5])
        assert np.allclose(hulthen_potential(HUL, r) * r, -1.0, rtol=1e-4)

    def test_hulthen_closed_arithmetic(self):
        assert hulthen_potential(HulthenParams(delta=1.0), math.log(2)) == pytest.approx(-1.0)

    def test_q_zero_is_exponential(self):
        p = HulthenParams(delta=0.05, q=0, allow_nonpositive_q=True)
        r = np.linspace(0.5, 30, 7)
        assert np.allclose(hulthen_potential(p, r), -0.05 * np.exp(-0.05 * r))

    def test_q_minus_one_is_wood_saxon(self):
        p = HulthenParams(delta=0.05, q=-1, allow_nonpositive_q=True)
        r = np.linspace(0.5, 30, 7)
        e = np.exp(-0.05 * r)
        assert np.allclose(hulthen_potential(p, r), -0.05 * e / (1 + e))

    def test_singularity_reports_radius(self):
        p = HulthenParams(delta=0.5, q=1.0)
        with pytest.raises(SingularityError) as info:
            hulthen_potential(p, 0.0)
        assert info.value.radius == 0.0

    def test_nonpositive_radius(self):
        with pytest.raises(PotentialError):
            hulthen_potential(HulthenParams(delta=0.5, q=0.5), 0.0)
        with pytest.raises(PotentialError):
            morse_potential(H2_MORSE, -1.0)

    def test_morse_minimum(self):
        assert morse_potential(H2_MORSE, H2_MORSE.re) == pytest.approx(-H2_MORSE.De)

    def test_morse_tail(self):
        v = morse_potential(H2_MORSE, 50.0)
        assert -1e-12 < v < 0

    def test_morse_half_point(self):
        r = H2_MORSE.re * (1 + math.log(2) / H2_MORSE.alpha)
        assert morse_potential(H2_MORSE, r) == pytest.approx(-3.55845, abs=1e-5)


class TestClosedForms:
    def test_hulthen_ground(self):
        assert hulthen_epsilon_n(HUL, 0) == 19.5
        assert hulthen_energy_n(HUL, 0).physical

    def test_hulthen_unphysical(self):
        p = HulthenParams(delta=0.2)
        assert hulthen_epsilon_n(p, 3) == pytest.approx(-0.75)
        assert not hulthen_energy_n(p, 3).physical

    def test_threshold_state(self):
        p = HulthenParams(delta=2.0 / 9.0)     # beta^2 = 9 = (n+1)^2 at n = 2
        assert hulthen_epsilon_n(p, 2) == pytest.approx(0.0, abs=1e-12)
        assert not hulthen_energy_n(p, 2).physical

    @pytest.mark.parametrize("delta, nbar, minus_e", [(0.002, 1, 0.4990005), (0.05, 2, 0.1012500),
                                                     (0.2, 2, 0.0450000)])
    def test_hulthen_energies(self, delta, nbar, minus_e):
        rec = hulthen_energy_n(HulthenParams(delta=delta), nbar - 1)
        assert -rec.energy == pytest.approx(minus_e, abs=5e-8)
        assert rec.method == "closed_form"

    def test_morse_epsilons(self):
        assert morse_epsilon_n(H2_MORSE, 0) == pytest.approx(24.3616, abs=2e-4)
        assert morse_epsilon_n(H2_MORSE, 5) == pytest.approx(17.159, abs=2e-4)

    @pytest.mark.parametrize("n, e", [(0, -4.47601), (5, -2.22052), (7, -1.53744)])
    def test_morse_energies(self, n, e):
        assert morse_energy_n(H2_MORSE, n).energy == pytest.approx(e, abs=1e-3)

    def test_morse_threshold(self):
        # choose De so that beta/alpha - 1/2 = 3 exactly
        base = H2_MORSE
        beta = 3.5 * base.alpha
        de = beta**2 * base.hbar_c**2 / (2 * base.mu * base.amu_to_ev * base.re**2)
        p = MorseParams(De=de, a=base.a, re=base.re, mu=base.mu)
        assert morse_epsilon_n(p, 3) == pytest.approx(0.0, abs=1e-9)
        assert n_max_bound(p) == 2

    def test_n_max_bound(self):
        assert n_max_bound(HUL) == 5
        assert n_max_bound(HulthenParams(delta=4.0)) == -1    # beta^2 = 0.5
        assert n_max_bound(H2_MORSE) == 16

    @pytest.mark.parametrize("params", [HUL, HulthenParams(delta=0.002), H2_MORSE])
    def test_spectrum_increasing(self, params):
        energies = [r.energy for r in closed_form_spectrum(params)]
        assert all(b > a for a, b in zip(energies, energies[1:]))

    def test_spectrum_excludes_unphysical_by_default(self):
        p = HulthenParams(delta=0.2)
        assert len(closed_form_spectrum(p, n_count=5)) == 3
        recs = closed_form_spectrum(p, include_unphysical=True, n_count=5)
        assert [r.physical for r in recs] == [True, True, True, False, False]

    @pytest.mark.parametrize("nbar", [1, 2, 3])
    def test_hydrogenic_limit(self, nbar):
        e = hulthen_energy_n(HulthenParams(delta=1e-6), nbar - 1).energy
        assert e == pytest.approx(-1 / (2 * nbar**2), rel=1e-5)

    @given(st.floats(min_value=0.1, max_value=10.0))
    def test_morse_depends_on_physical_combination(self, scale):
        p = H2_MORSE
        q = MorseParams(p.De, p.a, p.re, p.mu, hbar_c=p.hbar_c * scale,
                        amu_to_ev=p.amu_to_ev * scale**2)
        for n in (0, 5, 7):
            assert morse_energy_n(q, n).energy == pytest.approx(morse_energy_n(p, n).energy,
                                                                 rel=1e-12)

    def test_dispatch(self):
        assert epsilon_n(H2_MORSE, 2) == morse_epsilon_n(H2_MORSE, 2)
        assert energy_n(HUL, 1).energy == hulthen_energy_n(HUL, 1).energy

    def test_negative_index(self):
        with pytest.raises(PotentialError):
            epsilon_n(HUL, -1)


class TestAimProblems:
    def test_hulthen_s0_vanishes_at_ground_state(self):
        _, s0 = make_aim_problem_hulthen(HUL, 0.5).series(19.5)
        assert np.all(s0.coeffs == 0)

    @pytest.mark.parametrize("y0", [0.2, 0.5, 0.8])
    def test_hulthen_lambda0_constant(self, y0):
        eps, q = 3.7, 1.0
        l0, _ = make_aim_problem_hulthen(HUL, y0).series(eps)
        ref = (2 * eps * q * y0 + 3 * q * y0 - 2 * eps - 1) / (y0 * (1 - q * y0))
        assert l0.eval_at_center() == pytest.approx(ref, rel=1e-14)

    @pytest.mark.parametrize("y0", [1.0, 0.0, -0.2, 1.3])
    def test_hulthen_domain(self, y0):
        with pytest.raises(DomainError):
            make_aim_problem_hulthen(HUL, y0)

    def test_morse_s0_vanishes_at_ground_state(self):
        eps = H2_MORSE.beta - H2_MORSE.alpha / 2
        y0 = 0.5
        _, s0 = make_aim_problem_morse(H2_MORSE, y0).series(eps)
        # coefficients of 1/y about y0 grow like y0^-(j+1)
        bound = 1e-12 * H2_MORSE.beta2 / H2_MORSE.alpha**2 * y0 ** -np.arange(1.0, s0.order + 2)
        assert np.all(np.abs(s0.coeffs) <= bound)

    def test_morse_lambda0_constant(self):
        a, b, eps, y0 = H2_MORSE.alpha, H2_MORSE.beta, 12.0, 0.7
        l0, _ = make_aim_problem_morse(H2_MORSE, y0).series(eps)
        assert l0.eval_at_center() == pytest.approx((2 * b * y0 - 2 * eps - a) / (a * y0), rel=1e-14)

    @pytest.mark.parametrize("y0", [0.0, -1.0])
    def test_morse_domain(self, y0):
        with pytest.raises(DomainError):
            make_aim_problem_morse(H2_MORSE, y0)

    def test_series_expansion_matches_function(self):
        # λ0 series about y0 reproduces the rational function nearby
        y0, eps, q = 0.5, 4.0, 1.0
        l0, _ = make_aim_problem_hulthen(HUL, y0).series(eps)
        y = 0.55
        ref = (2 * eps * q * y + 3 * q * y - 2 * eps - 1) / (y * (1 - q * y))
        assert l0(y) == pytest.approx(ref, rel=1e-10)
