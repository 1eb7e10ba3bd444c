"""Pochhammer symbols and terminating hypergeometric polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy.special import eval_genlaguerre

# above this many terms the sums use exactly rounded summation
_COMPENSATE_ABOVE = 10


class HypergeometricParameterError(ValueError):
    """A lower parameter hits a non-positive integer before termination."""


@dataclass(frozen=True)
class ClosedFormShape:
    """Parameters (N, b, a, m) of the solvable family

        y'' = 2 (a x^{N+1}/(1 - b x^{N+2}) - (m + 1)/x) y' - w x^N/(1 - b x^{N+2}) y,

    whose polynomial solutions are
    y_n ∝ (-1)^n (N + 2)^n (σ)_n ₂F₁(-n, ρ + n; σ; b x^{N+2}).
    """

    Nexp: int
    b: float
    a_coef: float
    m_param: float

    def __post_init__(self):
        if self.Nexp + 2 == 0:
            raise ValueError("N + 2 must be nonzero")

    @property
    def sigma(self) -> float:
        return (2 * self.m_param + self.Nexp + 3) / (self.Nexp + 2)

    @property
    def rho(self) -> float:
        if self.b == 0:
            raise ValueError("rho is undefined for b = 0; use the confluent limit")
        return ((2 * self.m_param + 1) * self.b + 2 * self.a_coef) / ((self.Nexp + 2) * self.b)

    def w_n(self, n: int) -> float:
        """Value of w for which the degree-n polynomial solves the equation."""
        return (self.Nexp + 2) ** 2 * self.b * n * (n + self.rho)

    def solution(self, n: int, x):
        """y_n(x) with the free constant set to 1."""
        x = np.asarray(x, dtype=float)
        pre = (-1.0) ** n * (self.Nexp + 2.0) ** n * pochhammer(self.sigma, n)
        return pre * hyp2f1_terminating(n, self.rho + n, self.sigma, self.b * x ** (self.Nexp + 2))


def pochhammer(sigma: float, n: int) -> float:
    """Rising factorial (σ)_n = σ(σ+1)...(σ+n-1), with (σ)_0 = 1."""
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    out = 1.0
    for j in range(int(n)):
        out *= sigma + j
    return out


def gamma_ratio(eps: float, n: int) -> float:
    """C_n = (-1)^n Γ(2ε + n + 1)/Γ(2ε + 1) = (-1)^n (2ε + 1)_n."""
    return (-1.0) ** n * pochhammer(2.0 * eps + 1.0, n)


def _check_lower(n: int, c: float) -> None:
    for j in range(n):
        if c + j == 0:
            raise HypergeometricParameterError(
                f"lower parameter c={c!r} vanishes at term index {j + 1}")


def _terms(n: int, upper: Sequence[float], c: float, z) -> np.ndarray:
    """Rows j = 0..n of (-n)_j (upper)_j / ((c)_j j!) z^j."""
    z = np.asarray(z, dtype=float)
    rows = np.empty((n + 1,) + z.shape)
    t = np.ones_like(z)
    rows[0] = t
    for j in range(n):
        f = (-n + j) / ((c + j) * (j + 1))
        for b in upper:
            f *= b + j
        t = t * f * z
        rows[j + 1] = t
    return rows


def _sum_rows(rows: np.ndarray):
    if rows.shape[0] - 1 > _COMPENSATE_ABOVE:
        flat = rows.reshape(rows.shape[0], -1)
        out = np.array([math.fsum(flat[:, i]) for i in range(flat.shape[1])])
        out = out.reshape(rows.shape[1:])
    else:
        out = rows.sum(axis=0)
    return out if out.ndim else float(out)


def _check_n(n) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return int(n)


def hyp2f1_terminating(n: int, bpar: float, c: float, z):
    """₂F₁(-n, bpar; c; z) as an exact (n + 1)-term sum; ``z`` may be an array."""
    n = _check_n(n)
    _check_lower(n, c)
    return _sum_rows(_terms(n, (bpar,), c, z))


def hyp2f1_terminating_reflected(n: int, bpar: float, c: float, z):
    """₂F₁(-n, bpar; c; z) summed about z = 1.

    Uses (c - bpar)_n/(c)_n · ₂F₁(-n, bpar; bpar - c - n + 1; 1 - z), which
    avoids the cancellation of the direct sum when z is close to 1.
    """
    n = _check_n(n)
    _check_lower(n, c)
    c2 = bpar - c - n + 1
    _check_lower(n, c2)
    pre = pochhammer(c - bpar, n) / pochhammer(c, n)
    z = np.asarray(z, dtype=float)
    return _out(pre * np.asarray(_sum_rows(_terms(n, (bpar,), c2, 1.0 - z))))


def hyp2f1_terminating_stable(n: int, bpar: float, c: float, z):
    """Direct sum for z < 1/2, reflected sum otherwise."""
    z = np.asarray(z, dtype=float)
    near_one = z >= 0.5
    if not np.any(near_one):
        return hyp2f1_terminating(n, bpar, c, z)
    out = np.asarray(hyp2f1_terminating_reflected(n, bpar, c, z), dtype=float)
    if not np.all(near_one):
        direct = np.asarray(hyp2f1_terminating(n, bpar, c, z))
        out = np.where(near_one, out, direct)
    return _out(out)


def _out(v):
    v = np.asarray(v)
    return v if v.ndim else float(v)


def hyp1f1_terminating(n: int, c: float, z):
    """₁F₁(-n; c; z) as an exact (n + 1)-term sum; ``z`` may be an array."""
    n = _check_n(n)
    _check_lower(n, c)
    return _sum_rows(_terms(n, (), c, z))


def hyp1f1_terminating_stable(n: int, c: float, z):
    """₁F₁(-n; c; z) through the Laguerre recurrence, for c > 0.

    ₁F₁(-n; c; z) = n!/(c)_n · L_n^{(c-1)}(z); the three-term recurrence
    avoids the cancellation of the monomial sum at large z.
    """
    n = _check_n(n)
    if not c > 0:
        return hyp1f1_terminating(n, c, z)
    scale = math.factorial(n) / pochhammer(c, n)
    return _out(scale * eval_genlaguerre(n, c - 1.0, np.asarray(z, dtype=float)))


def confluent_limit_check(n: int, a_coef: float, c: float, z: float,
                          b_seq: Sequence[float]) -> List[float]:
    """Deviations |₂F₁(-n, 1/b + a; c; z b) - ₁F₁(-n; c; z)| for each b."""
    b_seq = list(b_seq)
    if any(b == 0 for b in b_seq):
        raise ValueError("b values must be nonzero")
    if any(abs(b1) >= abs(b0) for b0, b1 in zip(b_seq, b_seq[1:])):
        raise ValueError("b values must decrease strictly toward 0")
    target = hyp1f1_terminating(n, c, z)
    return [abs(hyp2f1_terminating(n, 1.0 / b + a_coef, c, z * b) - target) for b in b_seq]
