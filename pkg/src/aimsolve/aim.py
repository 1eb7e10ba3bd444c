"""Asymptotic iteration engine.

For ``f'' = λ0 f' + s0 f`` the iteration

    λ_k = λ'_{k-1} + s_{k-1} + λ0 λ_{k-1},    s_k = s'_{k-1} + s0 λ_{k-1}

terminates when Δ_k = λ_k s_{k-1} - λ_{k-1} s_k vanishes; its roots in the
energy parameter ε are the eigenvalues.  Δ_k is evaluated at the expansion
point x0 from truncated Taylor series.

Two evaluation routes give the same zero set:

``direct``
    Runs the recurrence above and forms Δ_k from constant terms.
``riccati``
    Tracks α_k = s_k/λ_k through its Riccati defect
    ρ(α) = α² - α' + λ0 α - s0, using Δ_k = λ_{k-1}² ρ_{k-1}.  This avoids
    the cancellation in Δ_k at the cost of poles where λ_k(x0) = 0.

Both report Δ_k divided by max(|λ_k λ_{k-1}|, |λ_k s_{k-1}|, |λ_{k-1} s_k|).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .series import (TaylorSeries, add, diff_coeffs, differentiate, mul,
                     reciprocal_coeffs)

ROUTES = ("direct", "riccati")
_TINY = 1e-300
_U = np.finfo(float).eps / 2
# safety margin on the running rounding bound; observed errors stay below 1·u·B
NOISE_FACTOR = 4.0


class AimError(RuntimeError):
    """Base class for engine failures."""


class DegenerateProblemError(AimError):
    """λ0(x0) vanishes, which the iteration cannot tolerate."""


class IterationOverflowError(AimError):
    def __init__(self, k: int):
        super().__init__(f"non-finite coefficient at iteration k={k}")
        self.k = k


class BracketError(AimError):
    """Δ_k shows no sign change over the bracket."""


class ConvergenceError(AimError):
    """The root did not stabilise within the iteration budget."""

    def __init__(self, message: str, estimates: Sequence[float] = ()):
        super().__init__(message)
        self.estimates = tuple(estimates)


@dataclass(frozen=True)
class AimProblem:
    """λ0 and s0 as functions of the eigenvalue parameter.

    Attributes
    ----------
    lambda0, s0 : callable
        ``eps -> TaylorSeries`` about ``x0``, all of one order.
    x0 : float
        Expansion point.
    parameter_name : str
        Label for ε, used in messages only.
    energy : callable, optional
        ``eps -> E`` used to fill records.
    state_index : callable, optional
        ``eps -> n`` labelling a root with its quantum number (-1 if unknown).
    """

    lambda0: Callable[[float], TaylorSeries]
    s0: Callable[[float], TaylorSeries]
    x0: float
    parameter_name: str = "epsilon"
    energy: Optional[Callable[[float], float]] = None
    state_index: Optional[Callable[[float], int]] = None

    def series(self, eps: float) -> Tuple[TaylorSeries, TaylorSeries]:
        lam, s = self.lambda0(eps), self.s0(eps)
        if lam.center != self.x0 or s.center != self.x0:
            raise AimError("generated series are not centred on x0")
        if lam.order != s.order:
            raise AimError("lambda0 and s0 have different orders")
        if lam.coeffs[0] == 0.0:
            raise DegenerateProblemError(
                f"lambda0(x0) = 0 at {self.parameter_name} = {eps!r}")
        return lam, s

    @property
    def order(self) -> int:
        return self.lambda0(1.0).order


@dataclass(frozen=True)
class AimConfig:
    """Iteration and tolerance controls.

    ``route`` is ``"auto"`` (direct, then riccati as fallback), ``"direct"``
    or ``"riccati"``.  ``patience`` bounds how many iterations past a root's
    first appearance are spent waiting for it to stabilise; rounding noise
    in Δ_k grows with k so waiting longer rarely helps.
    """

    k_max: int = 50
    eps_tol: float = 1e-9
    delta_tol: float = 1e-6
    bracket_grid: int = 200
    route: str = "auto"
    patience: int = 12
    k_scan: Optional[int] = None

    def __post_init__(self):
        if self.k_max < 2:
            raise ValueError("k_max must be >= 2")
        if not (self.eps_tol > 0 and self.delta_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.bracket_grid < 2:
            raise ValueError("bracket_grid must be >= 2")
        if self.route not in ROUTES + ("auto",):
            raise ValueError(f"unknown route {self.route!r}")
        if self.patience < 2:
            raise ValueError("patience must be >= 2")

    def validate_for(self, problem: AimProblem) -> None:
        if self.k_max > problem.order:
            raise ValueError(f"k_max={self.k_max} exceeds series order {problem.order}")


@dataclass(frozen=True)
class EigenstateRecord:
    """One eigenstate; ``method`` is closed_form, aim or oracle."""

    n: int
    epsilon: float
    energy: float
    method: str
    physical: bool
    iterations: int = 0


# --------------------------------------------------------------------------
# recurrence

def aim_sequence(problem: AimProblem, eps: float, k_max: int) -> List[Tuple[TaylorSeries, TaylorSeries]]:
    """Return ``[(λ_0, s_0), ..., (λ_kmax, s_kmax)]`` in series arithmetic."""
    lam0, s0 = problem.series(eps)
    if k_max > lam0.order:
        raise ValueError(f"k_max={k_max} exceeds series order {lam0.order}")
    out = [(lam0, s0)]
    lam, s = lam0, s0
    for k in range(1, k_max + 1):
        try:
            lam, s = (add(add(differentiate(lam), s), mul(lam0, lam)),
                      add(differentiate(s), mul(s0, lam)))
        except ValueError as exc:
            raise IterationOverflowError(k) from exc
        out.append((lam, s))
    return out


def _direct_terms(l0: np.ndarray, s0: np.ndarray, k: int):
    """Constant terms of λ_k, s_k, λ_{k-1}, s_{k-1} plus a rounding bound.

    The constant term of λ_k only involves coefficients 0..k of λ0 and s0,
    and every derivative drops one usable coefficient, so the arrays are
    shortened as the iteration proceeds.  The same recurrence run on
    absolute values gives B = |λ|_k |s|_{k-1} + |λ|_{k-1} |s|_k, and the
    rounding error of Δ_k stays below a small multiple of u·B.
    """
    l0 = l0[: k + 1]
    s0 = s0[: k + 1]
    al0, as0 = np.abs(l0), np.abs(s0)
    lam, s, la, sa = l0, s0, al0, as0
    prev = (lam[0], s[0], la[0], sa[0])
    for j in range(1, k + 1):
        m = k + 1 - j
        ar = np.arange(1, m + 1)
        lam_n = lam[1: m + 1] * ar + s[:m] + np.convolve(l0[:m], lam[:m])[:m]
        s_n = s[1: m + 1] * ar + np.convolve(s0[:m], lam[:m])[:m]
        la_n = la[1: m + 1] * ar + sa[:m] + np.convolve(al0[:m], la[:m])[:m]
        sa_n = sa[1: m + 1] * ar + np.convolve(as0[:m], la[:m])[:m]
        prev = (lam[0], s[0], la[0], sa[0])
        lam, s, la, sa = lam_n, s_n, la_n, sa_n
        if not (np.all(np.isfinite(la)) and np.all(np.isfinite(sa))):
            raise IterationOverflowError(j)
    bound = la[0] * prev[3] + prev[2] * sa[0]
    return lam[0], s[0], prev[0], prev[1], bound


def _riccati_terms(l0: np.ndarray, s0: np.ndarray, k: int):
    """Constant terms of ρ_{k-1}, D_{k-1} = λ_k/λ_{k-1}, α_{k-1}."""
    n = k + 1
    l0 = l0[:n]
    s0 = s0[:n]
    inv = reciprocal_coeffs(l0)
    al = np.convolve(s0, inv)[:n]
    mu = np.convolve(diff_coeffs(l0), inv)[:n]
    rho = (np.convolve(al, al)[:n] + np.convolve(l0, al)[:n] - s0 - diff_coeffs(al))[: n - 1]
    for _ in range(1, k):
        m = rho.size
        D = mu[: m] + al[: m] + l0[: m]
        with np.errstate(all="ignore"):
            invD = reciprocal_coeffs(D) if D[0] != 0 else np.full(m, np.nan)
        d = -np.convolve(rho, invD)[:m]
        al_new = al[:m] + d
        mu_new = (mu[:m] + np.convolve(diff_coeffs(D), invD)[:m])[: m - 1]
        rho = (np.convolve(d, al_new - mu[:m])[:m] - diff_coeffs(d))[: m - 1]
        al, mu = al_new[: m - 1], mu_new
        l0 = l0[: m - 1]
        if not np.all(np.isfinite(rho)):
            return np.nan, np.nan, np.nan
    D0 = mu[0] + al[0] + l0[0]
    return rho[0], D0, al[0]


def delta_k(problem: AimProblem, eps: float, k: int) -> float:
    """Raw Δ_k(x0; ε) = λ_k s_{k-1} - λ_{k-1} s_k.

    Evaluated as ρ_{k-1} λ_{k-1}², which keeps relative accuracy after the
    two products agree to working precision; the direct difference is the
    fallback when the Riccati form breaks down.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    lam0, s0 = problem.series(eps)
    if k > lam0.order:
        raise ValueError(f"k={k} exceeds series order {lam0.order}")
    lk, sk, lp, sp, _ = _direct_terms(lam0.coeffs, s0.coeffs, k)
    rho, _, _ = _riccati_terms(lam0.coeffs, s0.coeffs, k)
    if np.isfinite(rho):
        return float(rho * lp * lp)
    return float(lk * sp - lp * sk)


def _scale(lk, sk, lp, sp) -> float:
    return max(abs(lk * lp), abs(lk * sp), abs(lp * sk), _TINY)


def scaled_delta_with_noise(problem: AimProblem, eps: float, k: int) -> Tuple[float, float]:
    """Scaled Δ_k from the direct route and a bound on its rounding error."""
    lam0, s0 = problem.series(eps)
    if k > lam0.order:
        raise ValueError(f"k={k} exceeds series order {lam0.order}")
    lk, sk, lp, sp, bound = _direct_terms(lam0.coeffs, s0.coeffs, k)
    scale = _scale(lk, sk, lp, sp)
    return float((lk * sp - lp * sk) / scale), float(NOISE_FACTOR * _U * bound / scale)


def scaled_delta(problem: AimProblem, eps: float, k: int, route: str = "direct") -> float:
    """Δ_k divided by max(|λ_k λ_{k-1}|, |λ_k s_{k-1}|, |λ_{k-1} s_k|).

    The riccati route returns the same quantity computed through ρ_{k-1};
    it may be NaN near poles of α_k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if route == "direct":
        return scaled_delta_with_noise(problem, eps, k)[0]
    if route == "riccati":
        lam0, s0 = problem.series(eps)
        if k > lam0.order:
            raise ValueError(f"k={k} exceeds series order {lam0.order}")
        with np.errstate(all="ignore"):
            rho, D, al = _riccati_terms(lam0.coeffs, s0.coeffs, k)
            al_next = al - rho / D
            return float(rho / (abs(D) * max(1.0, abs(al), abs(al_next))))
    raise ValueError(f"unknown route {route!r}")


# --------------------------------------------------------------------------
# root finding

def _bisect(fun, a: float, b: float, fa: float, xtol: float) -> Tuple[float, float]:
    """Plain sign bisection; returns (root, final bracket width).

    An exact zero is usually a cancellation plateau rather than a root, so
    it is treated as lying on the upper side.
    """
    lo, hi, flo = a, b, fa
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = fun(mid)
        if not np.isfinite(fm):
            return float("nan"), float("inf")
        if fm != 0.0 and (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi), hi - lo


def _usable(est, unc, i, tol) -> bool:
    return est[i] is not None and unc[i] < tol


def _stable_at(est, unc, res, j: int, tol: float, delta_tol: float) -> bool:
    """Three consecutive estimates ending at ``j`` agree within ``tol``."""
    if j < 2 or not all(_usable(est, unc, i, tol) for i in (j - 2, j - 1, j)):
        return False
    e0, e1, e2 = est[j - 2], est[j - 1], est[j]
    return abs(e2 - e1) < tol and abs(e1 - e0) < tol and res[j] < delta_tol


def _pair_at(est, unc, res, j: int, tol: float, delta_tol: float) -> bool:
    """Estimates at ``j - 1`` and ``j`` agree within ``tol``."""
    if j < 1 or not (_usable(est, unc, j - 1, tol) and _usable(est, unc, j, tol)):
        return False
    return abs(est[j] - est[j - 1]) < tol and res[j] < delta_tol


def _significant_change(fa: Tuple[float, float], fb: Tuple[float, float]) -> bool:
    (va, na), (vb, nb) = fa, fb
    return (np.isfinite(va) and np.isfinite(vb) and abs(va) > na and abs(vb) > nb
            and (va > 0) != (vb > 0))


def _root_estimates(problem, a, b, config, route):
    """Per-k bisection estimates on one route.

    Returns (estimates, uncertainties, residuals, index of strict
    acceptance or None, number of k with a significant sign change).  Only k where the direct
    route shows a sign change above rounding noise are bisected.
    """
    est: List[Optional[float]] = []
    unc: List[float] = []
    res: List[float] = []
    xtol = max(1e-3 * config.eps_tol, 4e-16 * max(abs(a), abs(b)))
    first = None
    changes = 0
    for k in range(1, config.k_max + 1):
        direct = lambda e, k=k: scaled_delta_with_noise(problem, e, k)
        fun = lambda e, k=k: scaled_delta(problem, e, k, route)
        try:
            with np.errstate(all="ignore"):
                ends = direct(a), direct(b)
        except IterationOverflowError:
            break
        root, width = None, np.inf
        if _significant_change(*ends):
            changes += 1
            try:
                with np.errstate(all="ignore"):
                    fa = fun(a)
                    if np.isfinite(fa) and fa != 0.0:
                        root, width = _bisect(fun, a, b, fa, xtol)
            except IterationOverflowError:
                root = None
            # a root pinned to an end point is a sign jump, not a zero
            if root is not None and not (np.isfinite(root) and a + 2 * xtol < root < b - 2 * xtol):
                root = None
        est.append(root)
        unc.append(width)
        if root is None:
            res.append(np.inf)
        else:
            if first is None:
                first = k
            try:
                with np.errstate(all="ignore"):
                    r = abs(scaled_delta(problem, root, k, route))
            except IterationOverflowError:
                r = np.inf
            res.append(r if np.isfinite(r) else np.inf)
        j = len(est) - 1
        if _stable_at(est, unc, res, j, config.eps_tol, config.delta_tol):
            return est, unc, res, j, changes
        if first is not None and k - first >= config.patience:
            break
    return est, unc, res, None, changes


def _record(problem: AimProblem, eps: float, k: int, n: Optional[int]) -> EigenstateRecord:
    if n is None:
        n = problem.state_index(eps) if problem.state_index else -1
    energy = problem.energy(eps) if problem.energy else float("nan")
    return EigenstateRecord(n=int(n), epsilon=float(eps), energy=float(energy),
                            method="aim", physical=bool(eps > 0), iterations=k)


def find_eigenvalue(problem: AimProblem, bracket: Tuple[float, float],
                    config: AimConfig = AimConfig(), n: Optional[int] = None) -> EigenstateRecord:
    """Locate the eigenvalue inside ``bracket`` by bisection on Δ_k.

    For k = 1, 2, ... a sign change of Δ_k over the bracket (above rounding
    noise) is bisected.  The root is accepted once three consecutive
    estimates agree within ``eps_tol`` and the scaled residual is below
    ``delta_tol``.  When no route reaches that, the earliest pair of
    consecutive estimates agreeing within 10·eps_tol is accepted instead.

    Raises
    ------
    BracketError
        If Δ_k never changes sign over the bracket.
    ConvergenceError
        If a sign change exists but the root never stabilises.
    """
    a, b = sorted(map(float, bracket))
    if not a < b:
        raise BracketError("bracket has zero width")
    config.validate_for(problem)
    routes = ROUTES if config.route == "auto" else (config.route,)
    runs = []
    for route in routes:
        est, unc, res, j, changes = _root_estimates(problem, a, b, config, route)
        if changes == 0:
            raise BracketError(f"Delta_k has no sign change on [{a}, {b}] for k <= {config.k_max}")
        if j is not None:
            return _record(problem, est[j], j + 1, n)
        runs.append((est, unc, res))
    # fallback: the root persists at k and k+1 within 10·eps_tol
    for est, unc, res in runs:
        for j in range(1, len(est)):
            if _pair_at(est, unc, res, j, 10 * config.eps_tol, config.delta_tol):
                return _record(problem, est[j], j + 1, n)
    last = [e for e in runs[0][0] if e is not None][-2:]
    raise ConvergenceError(f"root in [{a}, {b}] did not stabilise within k_max={config.k_max}", last)


def find_spectrum(problem: AimProblem, eps_range: Tuple[float, float], n_max: int,
                  config: AimConfig = AimConfig()) -> List[EigenstateRecord]:
    """Scan ``eps_range`` for sign changes of Δ_k and refine each bracket.

    Sign changes are collected at every k up to ``config.k_scan`` (default
    ``min(k_max, n_max + 2)``), skipping grid values inside rounding noise,
    so low-lying roots are bracketed before noise swamps them.  Candidates that do not
    stabilise are discarded as truncation artefacts.  Returns at most
    ``n_max`` records, largest ε first.
    """
    lo, hi = map(float, eps_range)
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise ValueError("eps_range must be finite with lo < hi")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    config.validate_for(problem)
    k_top = min(config.k_scan or n_max + 2, config.k_max)
    grid = np.linspace(lo, hi, config.bracket_grid)
    found: List[EigenstateRecord] = []
    for k in range(1, k_top + 1):
        signs = np.zeros(grid.size, dtype=int)
        for i, e in enumerate(grid):
            try:
                v, noise = scaled_delta_with_noise(problem, e, k)
            except (DegenerateProblemError, IterationOverflowError):
                continue
            if np.isfinite(v) and abs(v) > noise:
                signs[i] = 1 if v > 0 else -1
        idx = np.flatnonzero(signs)
        for i, j in zip(idx[:-1], idx[1:]):
            if signs[i] == signs[j]:
                continue
            a, b = grid[i], grid[j]
            if any(a <= rec.epsilon <= b for rec in found):
                continue
            try:
                found.append(find_eigenvalue(problem, (a, b), config))
            except (BracketError, ConvergenceError, DegenerateProblemError):
                continue
    found.sort(key=lambda rec: -rec.epsilon)
    merged: List[EigenstateRecord] = []
    for rec in found:
        if not merged or abs(merged[-1].epsilon - rec.epsilon) >= 10 * config.eps_tol:
            merged.append(rec)
    return merged[:n_max]
