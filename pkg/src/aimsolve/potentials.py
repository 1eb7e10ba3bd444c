"""Deformed Hulthén and Morse potentials: parameters, closed-form spectra and
the corresponding AIM problems.

Hulthén quantities are in atomic units; Morse quantities use eV, Å and amu.
Both spectra are written through a dimensionless eigenvalue ε with
E = -scale·ε², so a bound state is one with ε > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .aim import AimProblem, EigenstateRecord
from .series import DEFAULT_ORDER, TaylorSeries

HBAR_C_EV_A = 1973.29
AMU_TO_EV = 931.494e6

X0Choice = Union[float, str]


class PotentialError(ValueError):
    """Invalid parameters or an operation outside the supported domain."""


class SingularityError(PotentialError):
    """The potential denominator vanishes at the requested radius."""

    def __init__(self, radius: float):
        super().__init__(f"Hulthén potential is singular at r = {radius:.12g}")
        self.radius = radius


class DomainError(PotentialError):
    """Expansion point outside the transformed variable's domain."""


@dataclass(frozen=True)
class HulthenParams:
    """Deformed Hulthén potential V(r) = -Z e² δ e^{-δr} / (1 - q e^{-δr}).

    ``q`` must lie in (0, 1] unless ``allow_nonpositive_q`` is set, which
    admits q <= 0 (Wood-Saxon-like shapes and the q = 0 exponential) for
    potential evaluation and opens closed-form spectra for q < 0.
    """

    delta: float
    q: float = 1.0
    Z: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0
    e_charge: float = 1.0
    allow_nonpositive_q: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name in ("delta", "q", "Z", "mass", "hbar", "e_charge"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise PotentialError(f"{name} must be finite, got {v!r}")
        if self.delta <= 0:
            raise PotentialError(f"delta must be positive, got {self.delta}")
        if self.mass <= 0 or self.hbar <= 0:
            raise PotentialError("mass and hbar must be positive")
        if self.q > 1:
            raise PotentialError(f"q > 1 puts a pole inside the domain (q={self.q})")
        if self.q <= 0 and not self.allow_nonpositive_q:
            if self.q == 0:
                raise PotentialError("q must be nonzero")
            raise PotentialError(f"q <= 0 requires allow_nonpositive_q (q={self.q})")
        if self.beta2 <= 0:
            raise PotentialError("Z e² must be positive for a binding potential")

    @property
    def beta2(self) -> float:
        """β² = 2 m e² Z / (ħ² δ)."""
        return 2.0 * self.mass * self.e_charge**2 * self.Z / (self.hbar**2 * self.delta)

    @property
    def energy_scale(self) -> float:
        """ħ²δ²/2m, so that E = -energy_scale · ε²."""
        return self.hbar**2 * self.delta**2 / (2.0 * self.mass)

    @property
    def kinetic_factor(self) -> float:
        """2m/ħ² in the radial equation."""
        return 2.0 * self.mass / self.hbar**2


@dataclass(frozen=True)
class MorseParams:
    """Morse potential V(r) = De (e^{-2αx} - 2 e^{-αx}), x = (r - re)/re."""

    De: float
    a: float
    re: float
    mu: float
    hbar_c: float = HBAR_C_EV_A
    amu_to_ev: float = AMU_TO_EV

    def __post_init__(self):
        for name in ("De", "a", "re", "mu", "hbar_c", "amu_to_ev"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise PotentialError(f"{name} must be finite and positive, got {v!r}")

    @property
    def alpha(self) -> float:
        return self.a * self.re

    @property
    def beta2(self) -> float:
        return 2.0 * self.mu * self.amu_to_ev * self.re**2 * self.De / self.hbar_c**2

    @property
    def beta(self) -> float:
        return math.sqrt(self.beta2)

    @property
    def energy_scale(self) -> float:
        """ħ²/(2 μ re²) in eV."""
        return self.hbar_c**2 / (2.0 * self.mu * self.amu_to_ev * self.re**2)

    @property
    def kinetic_factor(self) -> float:
        """2μ/ħ² in eV⁻¹ Å⁻²."""
        return 2.0 * self.mu * self.amu_to_ev / self.hbar_c**2


H2_MORSE = MorseParams(De=4.7446, a=1.9425, re=0.7416, mu=0.50391)


# --------------------------------------------------------------------------
# potentials

def hulthen_potential(params: HulthenParams, r):
    """Potential in hartree; raises :class:`SingularityError` at a pole."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise PotentialError("r must be positive")
    y = np.exp(-params.delta * r)
    den = 1.0 - params.q * y
    if np.any(den == 0):
        raise SingularityError(math.log(params.q) / params.delta)
    if np.any(r == 0):
        raise PotentialError("r must be positive")
    v = -params.Z * params.e_charge**2 * params.delta * y / den
    return v if v.ndim else float(v)


def morse_potential(params: MorseParams, r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise PotentialError("r must be positive")
    ex = np.exp(-params.alpha * (r - params.re) / params.re)
    v = params.De * (ex * ex - 2.0 * ex)
    return v if v.ndim else float(v)


# --------------------------------------------------------------------------
# closed-form spectra

def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise PotentialError(f"state index must be a non-negative integer, got {n!r}")
    return int(n)


def _closed_form_q(params: HulthenParams) -> float:
    if params.q == 0:
        raise PotentialError("closed-form spectrum divides by q; q = 0 is excluded")
    if params.q < 0 and not params.allow_nonpositive_q:
        raise PotentialError("closed-form spectra for q < 0 require allow_nonpositive_q")
    return params.q


def hulthen_epsilon_n(params: HulthenParams, n: int) -> float:
    """ε_n = (β² - q n̄²) / (2 n̄ q) with n̄ = n + 1."""
    n = _check_n(n)
    q = _closed_form_q(params)
    nb = n + 1
    return (params.beta2 - q * nb * nb) / (2.0 * nb * q)


def hulthen_is_bound(params: HulthenParams, n: int) -> bool:
    return hulthen_epsilon_n(params, n) > 0


def hulthen_energy_n(params: HulthenParams, n: int) -> EigenstateRecord:
    """Closed-form record; E_n = -(ħ²/2m)[m Z e²/(ħ² n̄ q) - n̄ δ/2]²."""
    eps = hulthen_epsilon_n(params, n)
    nb = n + 1
    p = params
    bracket = p.mass * p.Z * p.e_charge**2 / (p.hbar**2 * nb * p.q) - nb * p.delta / 2.0
    energy = -(p.hbar**2 / (2.0 * p.mass)) * bracket * bracket
    return EigenstateRecord(n=int(n), epsilon=eps, energy=energy,
                            method="closed_form", physical=eps > 0)


def morse_epsilon_n(params: MorseParams, n: int) -> float:
    """ε_n = β - (n + 1/2) α."""
    n = _check_n(n)
    return params.beta - (n + 0.5) * params.alpha


def morse_energy_n(params: MorseParams, n: int) -> EigenstateRecord:
    eps = morse_epsilon_n(params, n)
    return EigenstateRecord(n=int(n), epsilon=eps, energy=-params.energy_scale * eps * eps,
                            method="closed_form", physical=eps > 0)


def epsilon_n(params, n: int) -> float:
    if isinstance(params, HulthenParams):
        return hulthen_epsilon_n(params, n)
    return morse_epsilon_n(params, n)


def energy_n(params, n: int) -> EigenstateRecord:
    if isinstance(params, HulthenParams):
        return hulthen_energy_n(params, n)
    return morse_energy_n(params, n)


def energy_from_epsilon(params, eps: float) -> float:
    return -params.energy_scale * eps * eps


def n_max_bound(params) -> int:
    """Largest n with ε_n > 0, or -1 when nothing is bound."""
    if isinstance(params, HulthenParams):
        q = _closed_form_q(params)
        if q < 0:
            return -1
        guess = max(int(math.ceil(math.sqrt(params.beta2 / q))) - 2, -1)
    else:
        guess = max(int(math.ceil(params.beta / params.alpha - 0.5)) - 1, -1)
    # floating guard around the exact threshold
    while guess >= 0 and epsilon_n(params, guess) <= 0:
        guess -= 1
    while epsilon_n(params, guess + 1) > 0:
        guess += 1
    return guess


def closed_form_spectrum(params, include_unphysical: bool = False, n_count: int | None = None):
    """Closed-form records for n = 0..n_max (or ``n_count`` states)."""
    if n_count is None:
        n_count = n_max_bound(params) + 1
    out = [energy_n(params, n) for n in range(n_count)]
    return out if include_unphysical else [rec for rec in out if rec.physical]


# --------------------------------------------------------------------------
# AIM problems

def _inv_y(y0: float, order: int) -> np.ndarray:
    j = np.arange(order + 1)
    return (-1.0) ** j / y0 ** (j + 1)


def _hulthen_weight(q: float, y0: float, order: int) -> np.ndarray:
    """Coefficients of 1/(y(1 - q y)) = 1/y + q/(1 - q y) about y0."""
    j = np.arange(order + 1)
    return _inv_y(y0, order) + q * (q / (1.0 - q * y0)) ** j / (1.0 - q * y0)


def hulthen_x0_heuristic(params: HulthenParams) -> float:
    """Peak of the ground-state asymptotic factor y^ε (1 - q y)."""
    eps = max(hulthen_epsilon_n(params, 0), 1e-3)
    return eps / (params.q * (eps + 1.0)) if params.q > 0 else 0.5


def hulthen_state_index(params: HulthenParams, eps: float) -> int:
    """Index n whose closed-form ε_n is ``eps`` (or -1 when none fits)."""
    q = params.q
    disc = eps * eps + params.beta2 / q
    if disc < 0:
        return -1
    nb = -eps + math.sqrt(disc)
    n = round(nb - 1.0)
    return n if n >= 0 and abs(nb - 1.0 - n) < 1e-4 else -1


def make_aim_problem_hulthen(params: HulthenParams, x0: X0Choice = 0.5,
                             order: int = DEFAULT_ORDER) -> AimProblem:
    """AIM problem in y = e^{-δr} for f(y) with R = y^ε (1 - q y) f(y).

    λ0 = (2εqy + 3qy - 2ε - 1)/(y(1 - qy)),  s0 = (2εq + q - β²)/(y(1 - qy)).

    ``x0`` is the expansion point y0 or ``"heuristic"``.
    """
    q = _closed_form_q(params)
    y0 = hulthen_x0_heuristic(params) if x0 == "heuristic" else float(x0)
    upper = min(1.0, 1.0 / q) if q > 0 else 1.0
    if not (0.0 < y0 < upper):
        raise DomainError(f"y0 must lie in (0, {upper:g}), got {y0}")
    w = _hulthen_weight(q, y0, order)
    b2 = params.beta2

    def lambda0(eps: float) -> TaylorSeries:
        num = np.zeros(order + 1)
        num[0] = 2 * eps * q * y0 + 3 * q * y0 - 2 * eps - 1
        num[1] = 2 * eps * q + 3 * q
        return TaylorSeries(y0, np.convolve(num, w)[: order + 1])

    def s0(eps: float) -> TaylorSeries:
        return TaylorSeries(y0, (2 * eps * q + q - b2) * w)

    return AimProblem(lambda0=lambda0, s0=s0, x0=y0, parameter_name="epsilon",
                      energy=lambda e: energy_from_epsilon(params, e),
                      state_index=lambda e: hulthen_state_index(params, e))


def morse_state_index(params: MorseParams, eps: float) -> int:
    x = (params.beta - eps) / params.alpha - 0.5
    n = round(x)
    return n if n >= 0 and abs(x - n) < 1e-4 else -1


def make_aim_problem_morse(params: MorseParams, x0: X0Choice = 0.5,
                           order: int = DEFAULT_ORDER) -> AimProblem:
    """AIM problem in y = e^{-αx} for f(y) with R = y^{ε/α} e^{-(β/α) y} f(y).

    λ0 = (2βy - 2ε - α)/(αy),  s0 = (2εβ + αβ - 2β²)/(α² y).

    ``x0`` is y0 or ``"heuristic"`` (the potential minimum, y = 1).
    """
    y0 = 1.0 if x0 == "heuristic" else float(x0)
    if not (y0 > 0 and math.isfinite(y0)):
        raise DomainError(f"y0 must be positive, got {y0}")
    al, be = params.alpha, params.beta
    w = _inv_y(y0, order)

    def lambda0(eps: float) -> TaylorSeries:
        c = -(2 * eps + al) / al * w
        c[0] += 2 * be / al
        return TaylorSeries(y0, c)

    def s0(eps: float) -> TaylorSeries:
        return TaylorSeries(y0, (2 * eps * be + al * be - 2 * be * be) / al**2 * w)

    return AimProblem(lambda0=lambda0, s0=s0, x0=y0, parameter_name="epsilon",
                      energy=lambda e: energy_from_epsilon(params, e),
                      state_index=lambda e: morse_state_index(params, e))


def make_aim_problem(params, x0: X0Choice = 0.5, order: int = DEFAULT_ORDER) -> AimProblem:
    if isinstance(params, HulthenParams):
        return make_aim_problem_hulthen(params, x0, order)
    return make_aim_problem_morse(params, x0, order)
