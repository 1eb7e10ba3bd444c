"""Exact s-state radial wavefunctions R_n(r) for the Hulthén and Morse wells.

Hulthén, with y = e^{-δr}:

    R_n = N C_n y^ε (1 - q y) ₂F₁(-n, 2ε + n + 2; 2ε + 1; q y)

Morse, with y = e^{-αx}, x = (r - re)/re, s = ε/α and b = β/α:

    R_n = N y^s e^{-b y} ₁F₁(-n; 2s + 1; 2 b y)

Norms follow the s-state convention ∫ R² dr = 1 over [0, r_max].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Tuple, Union

import numpy as np

from .potentials import (HulthenParams, MorseParams, hulthen_potential, morse_potential,
                         epsilon_n)
from .specfun import (ClosedFormShape, gamma_ratio, hyp1f1_terminating_stable,
                      hyp2f1_terminating_stable)

Params = Union[HulthenParams, MorseParams]

# decay exponent kept at the truncation radius: the envelope falls like e^{-DECAY}
HULTHEN_DECAY = 40.0
MORSE_DECAY = 60.0
R_MAX_CAP = 1e6


class WavefunctionError(ValueError):
    """Unphysical state, degenerate norm or mismatched comparison."""


@dataclass(frozen=True)
class WavefunctionSpec:
    """A closed-form eigenstate ready for evaluation.

    ``norm`` multiplies the unnormalised closed form (1 until
    :func:`normalize` sets it).
    """

    potential: str
    params: Params
    n: int
    epsilon: float
    r_max: float
    norm: float = 1.0

    def __post_init__(self):
        if self.potential not in ("hulthen", "morse"):
            raise WavefunctionError(f"unknown potential {self.potential!r}")
        if not self.epsilon > 0:
            raise WavefunctionError(f"state n={self.n} is unphysical (epsilon={self.epsilon:.6g})")
        if not self.norm > 0:
            raise WavefunctionError("norm must be positive")


TAIL_RATIO = 1e-13


def _envelope_radius(params: Params, eps: float) -> float:
    if isinstance(params, HulthenParams):
        return min(HULTHEN_DECAY / (params.delta * eps), R_MAX_CAP)
    return params.re * (1.0 + MORSE_DECAY / eps)


def default_r_max(params: Params, n: int, eps: float) -> float:
    """Truncation radius where |R| has fallen below TAIL_RATIO of its peak.

    Starts from the envelope decay estimate and grows it for excited
    states whose polynomial factor delays the decay.
    """
    r_max = _envelope_radius(params, eps)
    kind = "hulthen" if isinstance(params, HulthenParams) else "morse"
    while r_max < R_MAX_CAP:
        probe = WavefunctionSpec(kind, params, n, eps, r_max)
        R = np.abs(np.asarray(eval_R(probe, np.linspace(0.0, r_max, 4001))))
        if R[-1] < TAIL_RATIO * R.max():
            break
        r_max *= 1.25
    return min(r_max, R_MAX_CAP)


def make_wavefunction(params: Params, n: int, r_max: float | None = None) -> WavefunctionSpec:
    """Unnormalised spec for state ``n`` using the closed-form eigenvalue."""
    eps = epsilon_n(params, n)
    if not eps > 0:
        raise WavefunctionError(f"state n={n} is not bound (epsilon={eps:.6g})")
    kind = "hulthen" if isinstance(params, HulthenParams) else "morse"
    return WavefunctionSpec(kind, params, int(n), eps, r_max or default_r_max(params, int(n), eps))


def hulthen_shape(params: HulthenParams, eps: float) -> ClosedFormShape:
    """The Hulthén polynomial equation as an instance of the solvable family."""
    return ClosedFormShape(Nexp=-1, b=params.q, a_coef=params.q, m_param=eps - 0.5)


# --------------------------------------------------------------------------
# evaluation with analytic derivatives

def _hulthen_parts(spec: WavefunctionSpec, r):
    """R, R'' (before the norm) on ``r``."""
    p = spec.params
    n, eps, q = spec.n, spec.epsilon, p.q
    y = np.exp(-p.delta * np.asarray(r, dtype=float))
    shape = hulthen_shape(p, eps)
    a, b, c = -n, shape.rho + n, shape.sigma
    z = q * y
    F = np.asarray(hyp2f1_terminating_stable(n, b, c, z))
    if n >= 1:
        F1 = a * b / c * np.asarray(hyp2f1_terminating_stable(n - 1, b + 1, c + 1, z))
    else:
        F1 = np.zeros_like(z)
    if n >= 2:
        F2 = (a * (a + 1) * b * (b + 1) / (c * (c + 1))
              * np.asarray(hyp2f1_terminating_stable(n - 2, b + 2, c + 2, z)))
    else:
        F2 = np.zeros_like(z)
    g = (1 - z) * F
    g1 = -q * F + (1 - z) * q * F1
    g2 = -2 * q * q * F1 + (1 - z) * q * q * F2
    env = gamma_ratio(eps, n) * y**eps
    R = env * g
    # (y d/dy)^2 [y^ε g] = y^ε [ε² g + (2ε + 1) y g' + y² g'']
    R2 = p.delta**2 * env * (eps * eps * g + (2 * eps + 1) * y * g1 + y * y * g2)
    return R, R2


def _morse_parts(spec: WavefunctionSpec, r):
    p = spec.params
    n, eps = spec.n, spec.epsilon
    al, be = p.alpha, p.beta
    s, b = eps / al, be / al
    x = (np.asarray(r, dtype=float) - p.re) / p.re
    y = np.exp(-al * x)
    c = 2 * s + 1
    z = 2 * b * y
    P = np.asarray(hyp1f1_terminating_stable(n, c, z))
    P1 = -n / c * np.asarray(hyp1f1_terminating_stable(n - 1, c + 1, z)) if n >= 1 else np.zeros_like(z)
    P2 = (n * (n - 1) / (c * (c + 1)) * np.asarray(hyp1f1_terminating_stable(n - 2, c + 2, z))
          if n >= 2 else np.zeros_like(z))
    # h = e^{-by} P(2by), env = y^s e^{-by} evaluated in log form
    env = np.exp(-s * al * x - b * y)
    h = P
    h1 = -b * P + 2 * b * P1
    h2 = b * b * P - 4 * b * b * P1 + 4 * b * b * P2
    R = env * h
    R2 = (al / p.re) ** 2 * env * (s * s * h + (2 * s + 1) * y * h1 + y * y * h2)
    return R, R2


def _parts(spec: WavefunctionSpec, r):
    return _hulthen_parts(spec, r) if spec.potential == "hulthen" else _morse_parts(spec, r)


def _out(v):
    v = np.asarray(v)
    return v if v.ndim else float(v)


def eval_hulthen_R(spec: WavefunctionSpec, r):
    if spec.potential != "hulthen":
        raise WavefunctionError("spec is not a Hulthén state")
    return _out(spec.norm * _hulthen_parts(spec, r)[0])


def eval_morse_R(spec: WavefunctionSpec, r):
    if spec.potential != "morse":
        raise WavefunctionError("spec is not a Morse state")
    return _out(spec.norm * _morse_parts(spec, r)[0])


def eval_R(spec: WavefunctionSpec, r):
    return _out(spec.norm * _parts(spec, r)[0])


def eval_R_second_derivative(spec: WavefunctionSpec, r):
    return _out(spec.norm * _parts(spec, r)[1])


# --------------------------------------------------------------------------
# quadrature

@lru_cache(maxsize=None)
def _gauss(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def integrate(fun, a: float, b: float, order: int = 20, rtol: float = 1e-13,
              max_panels: int = 1 << 14) -> float:
    """Composite Gauss-Legendre, doubling the panel count until it settles."""
    x, w = _gauss(order)
    panels = 8
    prev = None
    while True:
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        vals = np.asarray(fun(nodes)).reshape(panels, order)
        total = float(np.sum((vals * w[None, :]).sum(axis=1) * half))
        if prev is not None and abs(total - prev) <= rtol * max(abs(total), 1e-300):
            return total
        if panels >= max_panels:
            return total
        prev = total
        panels *= 2


def normalize(spec: WavefunctionSpec) -> WavefunctionSpec:
    """Return ``spec`` with ``norm`` chosen so that ∫₀^{r_max} R² dr = 1."""
    raw = replace(spec, norm=1.0)
    integral = integrate(lambda r: eval_R(raw, r) ** 2, 0.0, spec.r_max)
    if not (math.isfinite(integral) and integral > 1e-300):
        raise WavefunctionError(f"degenerate norm integral {integral!r}")
    return replace(spec, norm=1.0 / math.sqrt(integral))


def norm_integral(spec: WavefunctionSpec) -> float:
    return integrate(lambda r: eval_R(spec, r) ** 2, 0.0, spec.r_max)


def orthogonality(spec_a: WavefunctionSpec, spec_b: WavefunctionSpec) -> float:
    """Overlap ∫ R_a R_b dr over the larger of the two truncation radii."""
    if spec_a.potential != spec_b.potential or spec_a.params != spec_b.params:
        raise WavefunctionError("overlap needs two states of the same potential and parameters")
    r_max = max(spec_a.r_max, spec_b.r_max)
    return integrate(lambda r: eval_R(spec_a, r) * eval_R(spec_b, r), 0.0, r_max)


def overlap_matrix(specs) -> np.ndarray:
    specs = list(specs)
    m = np.empty((len(specs), len(specs)))
    for i, a in enumerate(specs):
        for j, b in enumerate(specs[i:], start=i):
            m[i, j] = m[j, i] = orthogonality(a, b)
    return m


# --------------------------------------------------------------------------
# checks

def potential_value(spec: WavefunctionSpec, r):
    if spec.potential == "hulthen":
        return hulthen_potential(spec.params, r)
    return morse_potential(spec.params, r)


def interior_grid(spec: WavefunctionSpec, n_points: int = 500) -> np.ndarray:
    """``n_points`` equally spaced radii strictly inside (0, r_max)."""
    return np.linspace(0.0, spec.r_max, n_points + 2)[1:-1]


def ode_residual(spec: WavefunctionSpec, grid: Iterable[float] | None = None) -> float:
    """Scaled residual max|R'' + k(E - V) R| / (k |E| max|R|), k = 2m/ħ².

    ``R''`` comes from the analytic chain rule through y, so the residual
    tests the formula rather than a difference scheme.
    """
    r = interior_grid(spec) if grid is None else np.asarray(list(grid), dtype=float)
    R, R2 = _parts(spec, r)
    kin = spec.params.kinetic_factor
    E = -spec.params.energy_scale * spec.epsilon**2
    res = R2 + kin * (E - potential_value(spec, r)) * R
    scale = kin * abs(E) * np.max(np.abs(R))
    return float(np.max(np.abs(res)) / scale)


def count_nodes(spec: WavefunctionSpec, n_samples: int = 20001) -> int:
    """Sign changes of R on (0, r_max), ignoring values at rounding level."""
    r = np.linspace(0.0, spec.r_max, n_samples)[1:]
    R = np.asarray(eval_R(spec, r))
    keep = np.abs(R) > 1e-14 * np.max(np.abs(R))
    s = np.sign(R[keep])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def format_wavefunction(spec: WavefunctionSpec, r_grid: Iterable[float]) -> str:
    """Two columns (r, R_n(r)) preceded by '#' header lines."""
    r = np.asarray(list(r_grid), dtype=float)
    R = np.atleast_1d(np.asarray(eval_R(spec, r)))
    header = [
        f"potential={spec.potential}",
        f"n={spec.n}",
        f"epsilon={spec.epsilon:.16g}",
        f"norm={spec.norm:.16g}",
        f"params={spec.params!r}",
        "columns: r R_n(r)",
    ]
    lines = [f"# {h}" for h in header]
    lines += [f"{ri:.16e} {Ri:.16e}" for ri, Ri in zip(r, R)]
    return "\n".join(lines) + "\n"


def export_wavefunction(spec: WavefunctionSpec, path, r_grid: Iterable[float]) -> Path:
    """Write :func:`format_wavefunction` output to ``path``."""
    path = Path(path)
    path.write_text(format_wavefunction(spec, r_grid))
    return path


def read_wavefunction(path) -> Tuple[np.ndarray, np.ndarray]:
    data = np.loadtxt(path, comments="#")
    return data[:, 0], data[:, 1]
