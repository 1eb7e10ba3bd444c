"""Numerov shooting solver for s-state radial equations.

Solves R'' + kin·(E - V(r)) R = 0 on a uniform grid, where ``kin`` is
2m/ħ² in the units of the potential.  The solver only sees sampled
potential values; it is used to cross-check the other methods.

Eigenvalues are located in two stages: bisection on the node count of the
outward solution brackets the n-th state, then a root of the Casoratian of
the outward and inward solutions at the outer classical turning point is
polished with Brent's method.  For the Numerov recurrence written in
u_i = (1 + h²f_i/12) y_i the Casoratian u_i v_{i+1} - u_{i+1} v_i is
independent of i, so its sign does not depend on the matching index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .aim import EigenstateRecord
from .potentials import HulthenParams, MorseParams, hulthen_potential, morse_potential

MIN_POINTS = 1000
DEFAULT_POINTS = 20001
DEFAULT_R_MIN = 1e-6
# decay lengths 1/κ kept beyond the turning point
DECAY_LENGTHS = 50.0
_BIG = 1e200
_SHRINK = 1e-200

Potential = Callable[[np.ndarray], np.ndarray]


class OracleError(RuntimeError):
    """Base class for shooting-solver failures."""


class UnboundEnergyError(OracleError, ValueError):
    """Inward integration needs a decaying start, i.e. E < 0."""


class NumerovOverflowError(OracleError):
    """The recursion overflowed even after rescaling."""


class NodeCountError(OracleError):
    """A converged state does not have the node count it was bracketed for."""


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid r_min, r_min + h, ..., r_max.

    Grids coarser than ``MIN_POINTS`` points are rejected unless
    ``allow_coarse`` is set, which exists to probe discretisation error.
    """

    r_min: float = DEFAULT_R_MIN
    r_max: float = 100.0
    n_points: int = DEFAULT_POINTS
    allow_coarse: bool = False

    def __post_init__(self):
        if not self.r_min > 0:
            raise ValueError("r_min must be positive (the grid must avoid r = 0)")
        if not self.r_max > self.r_min:
            raise ValueError("r_max must exceed r_min")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ValueError("n_points must be an integer >= 3")
        if self.n_points < MIN_POINTS and not self.allow_coarse:
            raise ValueError(f"n_points must be >= {MIN_POINTS}, got {self.n_points}")
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def r(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)

    def refined(self) -> "RadialGrid":
        """Same interval with the spacing halved."""
        return RadialGrid(self.r_min, self.r_max, 2 * self.n_points - 1, self.allow_coarse)

    @classmethod
    def for_energy(cls, V: Potential, E_top: float, kin: float = 2.0,
                   h_max: float = 0.01, r_min: float = DEFAULT_R_MIN,
                   n_points: Optional[int] = None, allow_coarse: bool = False) -> "RadialGrid":
        """Grid long enough for every state below ``E_top`` to decay.

        r_max is the outer turning point of ``E_top`` plus ``DECAY_LENGTHS``
        decay lengths.  Unless ``n_points`` is given, the point count is
        the larger of ``DEFAULT_POINTS`` and what the spacing ``h_max`` needs.
        """
        if not E_top < 0:
            raise UnboundEnergyError(f"E_top must be negative, got {E_top}")
        probe = np.geomspace(r_min, 1e8, 4000)
        inside = np.flatnonzero(np.asarray(V(probe)) < E_top)
        r_turn = probe[inside[-1]] if inside.size else r_min
        r_max = r_turn + DECAY_LENGTHS / math.sqrt(-kin * E_top)
        if n_points is None:
            n_points = max(DEFAULT_POINTS, int(math.ceil((r_max - r_min) / h_max)) + 1)
        return cls(r_min, r_max, n_points, allow_coarse)


# --------------------------------------------------------------------------
# kernels

@njit(cache=True)
def _outward_array(V, E, kin, h, y0, y1):
    n = V.shape[0]
    c = h * h / 12.0
    y = np.empty(n)
    y[0] = y0
    y[1] = y1
    wm = 1.0 + c * kin * (E - V[0])
    w = 1.0 + c * kin * (E - V[1])
    for i in range(1, n - 1):
        wp = 1.0 + c * kin * (E - V[i + 1])
        y[i + 1] = (2.0 * y[i] * (1.0 - 5.0 * c * kin * (E - V[i])) - y[i - 1] * wm) / wp
        wm = w
        w = wp
        if abs(y[i + 1]) > _BIG:
            for j in range(i + 2):
                y[j] *= _SHRINK
    return y


@njit(cache=True)
def _inward_array(V, E, kin, h, kappa):
    n = V.shape[0]
    c = h * h / 12.0
    y = np.empty(n)
    y[n - 1] = 1.0
    y[n - 2] = math.exp(kappa * h)
    wp = 1.0 + c * kin * (E - V[n - 1])
    w = 1.0 + c * kin * (E - V[n - 2])
    for i in range(n - 2, 0, -1):
        wm = 1.0 + c * kin * (E - V[i - 1])
        y[i - 1] = (2.0 * y[i] * (1.0 - 5.0 * c * kin * (E - V[i])) - y[i + 1] * wp) / wm
        wp = w
        w = wm
        if abs(y[i - 1]) > _BIG:
            for j in range(i - 1, n):
                y[j] *= _SHRINK
    return y


@njit(cache=True)
def _last_below(V, E):
    for i in range(V.shape[0] - 1, -1, -1):
        if V[i] < E:
            return i
    return -1


@njit(cache=True)
def _shoot_out(V, E, kin, h, y0, y1, n_end, m):
    """Nodes of the outward solution on [0, n_end) and (u_m, u_{m+1})."""
    c = h * h / 12.0
    ym = y0
    y = y1
    wm = 1.0 + c * kin * (E - V[0])
    w = 1.0 + c * kin * (E - V[1])
    nodes = 0
    um = 0.0
    up = 0.0
    if m == 0:
        um = wm * ym
        up = w * y
    for i in range(1, n_end - 1):
        wp = 1.0 + c * kin * (E - V[i + 1])
        yp = (2.0 * y * (1.0 - 5.0 * c * kin * (E - V[i])) - ym * wm) / wp
        if y != 0.0 and (yp == 0.0 or (yp < 0.0) != (y < 0.0)):
            nodes += 1
        ym = y
        y = yp
        wm = w
        w = wp
        if i == m:
            um = wm * ym
            up = w * y
        if abs(y) > _BIG:
            y *= _SHRINK
            ym *= _SHRINK
    return nodes, um, up


@njit(cache=True)
def _shoot_in(V, E, kin, h, kappa, n_end, m):
    """(u_m, u_{m+1}) of the decaying solution started at n_end - 1."""
    c = h * h / 12.0
    yp = 1.0
    y = math.exp(kappa * h)
    wp = 1.0 + c * kin * (E - V[n_end - 1])
    w = 1.0 + c * kin * (E - V[n_end - 2])
    if m == n_end - 2:
        return w * y, wp * yp
    for i in range(n_end - 2, m, -1):
        wm = 1.0 + c * kin * (E - V[i - 1])
        ym = (2.0 * y * (1.0 - 5.0 * c * kin * (E - V[i])) - yp * wp) / wm
        yp = y
        y = ym
        wp = w
        w = wm
        if abs(y) > _BIG:
            y *= _SHRINK
            yp *= _SHRINK
    return w * y, wp * yp


# --------------------------------------------------------------------------
# integration

def _start_values(r0: float, r1: float, f0: float) -> Tuple[float, float]:
    # regular solution R ≈ r + b r², with b fixed by a Coulomb-like f ~ 1/r
    b = -0.5 * r0 * f0
    return r0 + b * r0 * r0, r1 + b * r1 * r1


def _sample(V: Potential, grid: RadialGrid) -> np.ndarray:
    v = np.asarray(V(grid.r), dtype=float)
    bad = np.flatnonzero(~np.isfinite(v))
    if bad.size:
        raise ValueError(f"potential is not finite at r={grid.r[bad[0]]:.6g}")
    return v


def integrate_numerov(V: Potential, E: float, grid: RadialGrid,
                      direction: str = "outward", kin: float = 2.0) -> np.ndarray:
    """Sampled solution of R'' + kin (E - V) R = 0 on ``grid``.

    Parameters
    ----------
    V : callable
        Potential evaluated on the grid array; must be finite there.
    E : float
        Trial energy.
    direction : {"outward", "inward"}
        Outward starts from the regular behaviour R ∝ r at r_min.  Inward
        starts from the decay e^{-κr} at r_max and needs E < 0.
    kin : float
        2m/ħ² in the units of ``V`` and ``E``.

    Returns
    -------
    numpy.ndarray
        R at each grid point, defined up to an overall factor.  Values may
        be rescaled downward during the sweep to avoid overflow.
    """
    v = _sample(V, grid)
    h = grid.h
    if direction == "outward":
        r0, r1 = grid.r_min, grid.r_min + h
        y0, y1 = _start_values(r0, r1, kin * (E - v[0]))
        y = _outward_array(v, float(E), float(kin), h, y0, y1)
    elif direction == "inward":
        if not E < 0:
            raise UnboundEnergyError(f"inward integration needs E < 0, got E={E}")
        y = _inward_array(v, float(E), float(kin), h, math.sqrt(-kin * E))
    else:
        raise ValueError(f"direction must be 'outward' or 'inward', got {direction!r}")
    if not np.all(np.isfinite(y)):
        raise NumerovOverflowError(f"Numerov sweep overflowed at E={E}")
    return y


def count_sign_changes(y: np.ndarray) -> int:
    s = np.sign(y[1:])
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


# --------------------------------------------------------------------------
# bound states

class _Shooter:
    """Trial-energy evaluations on a fixed sampled potential."""

    def __init__(self, v: np.ndarray, grid: RadialGrid, kin: float):
        self.v = v
        self.grid = grid
        self.kin = float(kin)
        self.h = grid.h
        self.n = v.size

    def layout(self, E: float) -> Tuple[int, int]:
        """(matching index, end index) for trial energy E."""
        m = int(_last_below(self.v, float(E)))
        if m < 0:
            return -1, self.n
        kappa = math.sqrt(-self.kin * E) if E < 0 else 0.0
        if kappa > 0:
            span = int(math.ceil(DECAY_LENGTHS / (kappa * self.h)))
            n_end = min(self.n, m + span + 2)
        else:
            n_end = self.n
        m = min(max(m, 1), n_end - 3)
        return m, n_end

    def _start(self, E: float):
        r0 = self.grid.r_min
        return _start_values(r0, r0 + self.h, self.kin * (E - self.v[0]))

    def nodes(self, E: float) -> int:
        m, n_end = self.layout(E)
        if m < 0:
            return 0
        y0, y1 = self._start(E)
        nodes, _, _ = _shoot_out(self.v, float(E), self.kin, self.h, y0, y1, n_end, m)
        return int(nodes)

    def mismatch(self, E: float, m: int, n_end: int) -> float:
        """Normalised Casoratian of the outward and inward solutions."""
        y0, y1 = self._start(E)
        _, a0, a1 = _shoot_out(self.v, float(E), self.kin, self.h, y0, y1, n_end, m)
        b0, b1 = _shoot_in(self.v, float(E), self.kin, self.h,
                           math.sqrt(-self.kin * E), n_end, m)
        norm = math.hypot(a0, a1) * math.hypot(b0, b1)
        if not (norm > 0 and math.isfinite(norm)):
            raise NumerovOverflowError(f"degenerate shooting solutions at E={E}")
        return (a0 * b1 - a1 * b0) / norm

    def solution(self, E: float, m: int, n_end: int) -> np.ndarray:
        """Outward branch up to m joined to the scaled inward branch."""
        v = self.v[:n_end]
        y0, y1 = self._start(E)
        out = _outward_array(v, float(E), self.kin, self.h, y0, y1)
        inn = _inward_array(v, float(E), self.kin, self.h, math.sqrt(-self.kin * E))
        if out[m] == 0 or inn[m] == 0:
            return out
        joined = out.copy()
        joined[m:] = inn[m:] * (out[m] / inn[m])
        return joined


def _bracket_state(sh: _Shooter, j: int, lo: float, hi: float, rtol: float) -> Tuple[float, float]:
    """Shrink [lo, hi] until nodes(lo) == j, nodes(hi) == j + 1 and it is narrow."""
    n_lo, n_hi = sh.nodes(lo), sh.nodes(hi)
    for _ in range(200):
        if n_lo == j and n_hi == j + 1 and hi - lo <= rtol * abs(hi):
            break
        mid = 0.5 * (lo + hi)
        n_mid = sh.nodes(mid)
        if n_mid > j:
            hi, n_hi = mid, n_mid
        else:
            lo, n_lo = mid, n_mid
        if hi - lo <= 4 * np.finfo(float).eps * abs(hi):
            break
    return lo, hi


def find_bound_states(V: Potential, grid: RadialGrid, E_range: Tuple[float, float],
                      n_states: int, kin: float = 2.0,
                      energy_scale: Optional[float] = None,
                      rtol: float = 1e-13) -> List[EigenstateRecord]:
    """Bound states with energies in ``E_range``, ordered by node count.

    Parameters
    ----------
    V : callable
        Potential on the grid array.
    grid : RadialGrid
        Must extend far enough for the highest wanted state to decay.
    E_range : (float, float)
        Search window, both ends negative.
    n_states : int
        Maximum number of states returned, starting from the lowest in range.
    kin : float
        2m/ħ².
    energy_scale : float, optional
        If given, records carry epsilon = sqrt(-E / energy_scale); otherwise NaN.
    rtol : float
        Relative tolerance of the final energies.

    Returns
    -------
    list of EigenstateRecord
        ``n`` is the node count; ``method`` is ``"oracle"``.  An empty list
        means no state lies in range.

    Raises
    ------
    NodeCountError
        If a converged solution has a different number of nodes than the
        state it was bracketed as.
    """
    lo, hi = map(float, E_range)
    if not lo < hi < 0:
        raise ValueError(f"E_range must satisfy lo < hi < 0, got {E_range}")
    sh = _Shooter(_sample(V, grid), grid, kin)
    n_lo, n_hi = sh.nodes(lo), sh.nodes(hi)
    records: List[EigenstateRecord] = []
    for j in range(n_lo, min(n_hi, n_lo + int(n_states))):
        a, b = _bracket_state(sh, j, lo, hi, 1e-4)
        lo = b
        m, n_end = sh.layout(b)
        fa, fb = sh.mismatch(a, m, n_end), sh.mismatch(b, m, n_end)
        if fa == 0.0:
            E = a
        elif fb == 0.0:
            E = b
        elif (fa < 0) != (fb < 0):
            E = brentq(sh.mismatch, a, b, args=(m, n_end), xtol=1e-300, rtol=max(rtol, 4e-16))
        else:
            a, b = _bracket_state(sh, j, a, b, rtol)
            E = 0.5 * (a + b)
        y = sh.solution(E, m, n_end)
        found = count_sign_changes(y)
        if found != j:
            raise NodeCountError(f"state bracketed as n={j} at E={E:.12g} has {found} nodes")
        eps = math.sqrt(-E / energy_scale) if energy_scale else float("nan")
        records.append(EigenstateRecord(j, eps, E, "oracle", True))
    return records


def richardson_deltas(V: Potential, grid: RadialGrid, E_range: Tuple[float, float],
                      n_states: int, kin: float = 2.0) -> np.ndarray:
    """|E(h) - E(h/2)| for each state found on both grids."""
    coarse = find_bound_states(V, grid, E_range, n_states, kin)
    fine = find_bound_states(V, grid.refined(), E_range, n_states, kin)
    pairs = {r.n: r.energy for r in coarse}
    return np.array([abs(pairs[r.n] - r.energy) for r in fine if r.n in pairs])


# --------------------------------------------------------------------------
# drivers for the bundled potentials

def potential_setup(params) -> Tuple[Potential, float, float, float]:
    """(V, kin, energy floor, spacing target) for a parameter set."""
    if isinstance(params, HulthenParams):
        V = lambda r: hulthen_potential(params, r)
        kin = params.kinetic_factor
        coupling = params.Z * params.e_charge ** 2
        # V ≥ -coupling/r bounds the spectrum by the Coulomb ground state
        floor = -1.05 * coupling ** 2 * params.mass / (2 * params.hbar ** 2)
        bohr = params.hbar ** 2 / (params.mass * coupling)
        return V, kin, floor, 0.01 * bohr
    if isinstance(params, MorseParams):
        V = lambda r: morse_potential(params, r)
        return V, params.kinetic_factor, -params.De, 0.002 / params.alpha
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def solve_potential(params, n_states: int, E_top: float,
                    n_points: Optional[int] = None,
                    allow_coarse: bool = False) -> List[EigenstateRecord]:
    """Lowest ``n_states`` states below ``E_top`` for Hulthén or Morse params."""
    V, kin, floor, h_max = potential_setup(params)
    grid = RadialGrid.for_energy(V, E_top, kin, h_max, n_points=n_points,
                                 allow_coarse=allow_coarse)
    return find_bound_states(V, grid, (floor, E_top), n_states, kin,
                             energy_scale=params.energy_scale)
