import math
from dataclasses import replace

import numpy as np
import pytest

from aimsolve.potentials import H2_MORSE, HulthenParams, n_max_bound
from aimsolve.wavefunctions import (TAIL_RATIO, WavefunctionError, count_nodes, eval_R,
                                    export_wavefunction, integrate, interior_grid,
                                    make_wavefunction, norm_integral, normalize,
                                    ode_residual, orthogonality, overlap_matrix,
                                    read_wavefunction)

HUL = HulthenParams(delta=0.05)


@pytest.fixture(scope="module")
def hul_states():
    return [normalize(make_wavefunction(HUL, n)) for n in range(6)]


@pytest.fixture(scope="module")
def morse_states():
    return {n: normalize(make_wavefunction(H2_MORSE, n)) for n in (0, 1, 5, 7)}


class TestResidual:
    @pytest.mark.parametrize("n", range(4))
    def test_hulthen(self, hul_states, n):
        assert ode_residual(hul_states[n]) < 1e-8

    @pytest.mark.parametrize("n", [0, 5, 7])
    def test_morse(self, morse_states, n):
        assert ode_residual(morse_states[n]) < 1e-8

    @pytest.mark.parametrize("params,n", [(HUL, 0), (HUL, 3), (H2_MORSE, 0), (H2_MORSE, 5)])
    def test_perturbed_epsilon_is_detected(self, params, n):
        spec = make_wavefunction(params, n)
        base = ode_residual(spec)
        bumped = ode_residual(replace(spec, epsilon=spec.epsilon + 1e-3))
        assert bumped >= 1e3 * max(base, 1e-16)
        assert bumped > 1e-8

    def test_all_physical_hulthen(self):
        params = HulthenParams(delta=0.2)
        for n in range(n_max_bound(params) + 1):
            try:
                spec = make_wavefunction(params, n)
            except WavefunctionError:
                continue
            assert ode_residual(spec) < 1e-8


class TestShape:
    def test_hulthen_ground_state_formula(self, hul_states):
        spec = make_wavefunction(HUL, 0)
        r = np.linspace(0.1, 200, 50)
        x = HUL.delta * r
        expected = np.exp(-19.5 * x) * (1 - np.exp(-x))
        got = np.asarray(eval_R(spec, r))
        ratio = got / expected
        assert np.allclose(ratio, ratio[0], rtol=1e-12)

    def test_hulthen_origin(self, hul_states):
        for spec in hul_states:
            assert eval_R(spec, 0.0) == 0.0

    def test_morse_origin_small(self, morse_states):
        for spec in morse_states.values():
            peak = np.max(np.abs(eval_R(spec, np.linspace(1e-3, spec.r_max, 20001))))
            assert abs(eval_R(spec, 1e-12)) < 1e-6 * peak

    @pytest.mark.parametrize("n", range(6))
    def test_hulthen_nodes(self, hul_states, n):
        assert count_nodes(hul_states[n]) == n

    @pytest.mark.parametrize("n", [0, 1, 5, 7])
    def test_morse_nodes(self, morse_states, n):
        assert count_nodes(morse_states[n]) == n

    def test_morse_n1_node_location(self, morse_states):
        spec = morse_states[1]
        p = H2_MORSE
        y_node = p.alpha * (2 * spec.epsilon / p.alpha + 1) / (2 * p.beta)
        r_node = p.re * (1 - math.log(y_node) / p.alpha)
        assert np.sign(eval_R(spec, r_node * (1 - 1e-6))) != np.sign(eval_R(spec, r_node * (1 + 1e-6)))
        assert abs(eval_R(spec, r_node)) < 1e-8

    @pytest.mark.parametrize("params,n", [(HUL, 0), (HUL, 5), (H2_MORSE, 0), (H2_MORSE, 7)])
    def test_tail(self, params, n):
        spec = make_wavefunction(params, n)
        r = np.linspace(0, spec.r_max, 4001)[1:]
        R = np.abs(np.asarray(eval_R(spec, r)))
        assert R[-1] < TAIL_RATIO * R.max() * 10

    def test_unbound_state_rejected(self):
        with pytest.raises(WavefunctionError):
            make_wavefunction(HulthenParams(delta=0.2), 4)


class TestNormalization:
    def test_reintegrate(self, hul_states, morse_states):
        for spec in hul_states + list(morse_states.values()):
            assert norm_integral(spec) == pytest.approx(1.0, abs=1e-8)

    def test_scaling_invariance(self):
        spec = make_wavefunction(HUL, 2)
        a = normalize(spec)
        b = normalize(replace(spec, norm=7.0))
        r = np.linspace(0.5, 100, 40)
        assert np.allclose(eval_R(a, r), eval_R(b, r), rtol=0, atol=1e-12)

    def test_hulthen_ground_analytic(self):
        spec = make_wavefunction(HUL, 0)
        e = spec.epsilon
        exact = (1 / (2 * e) - 2 / (2 * e + 1) + 1 / (2 * e + 2)) / HUL.delta
        assert norm_integral(spec) == pytest.approx(exact, rel=1e-8)

    def test_invalid_norm(self):
        spec = make_wavefunction(HUL, 0)
        with pytest.raises(WavefunctionError):
            replace(spec, norm=-1.0)

    def test_integrate_polynomial(self):
        assert integrate(lambda x: x**3, 0.0, 2.0) == pytest.approx(4.0, rel=1e-14)


class TestOrthogonality:
    def test_hulthen_pair(self, hul_states):
        assert abs(orthogonality(hul_states[0], hul_states[1])) < 1e-8

    def test_same_state(self, hul_states):
        assert orthogonality(hul_states[3], hul_states[3]) == pytest.approx(1.0, abs=1e-8)

    def test_morse_pair(self, morse_states):
        assert abs(orthogonality(morse_states[0], morse_states[5])) < 1e-8

    def test_matrix_identity(self, hul_states):
        m = overlap_matrix(hul_states[:4])
        assert np.max(np.abs(m - np.eye(4))) < 1e-8

    def test_mismatch(self, hul_states):
        other = normalize(make_wavefunction(HulthenParams(delta=0.01), 0))
        with pytest.raises(WavefunctionError):
            orthogonality(hul_states[0], other)
        with pytest.raises(WavefunctionError):
            orthogonality(hul_states[0], make_wavefunction(H2_MORSE, 0))


def test_export_round_trip(tmp_path, hul_states):
    spec = hul_states[1]
    r = np.linspace(0, spec.r_max, 301)
    path = export_wavefunction(spec, tmp_path / "R1.dat", r)
    assert path.read_text().startswith("#")
    r2, R2 = read_wavefunction(path)
    assert np.array_equal(r2, r)
    assert np.allclose(R2, eval_R(spec, r), rtol=1e-15, atol=0)


def test_interior_grid_excludes_ends(hul_states):
    g = interior_grid(hul_states[0], 500)
    assert len(g) == 500 and g[0] > 0 and g[-1] < hul_states[0].r_max
