"""Truncated Taylor-series (jet) arithmetic about a fixed expansion point.

A :class:`TaylorSeries` stores ``c_0 .. c_M`` for ``sum_j c_j (x - x0)^j``.
Every operation keeps the centre and order of its operands; degrees above
``M`` are silently dropped.  Coefficient ``j`` of a series that has been
differentiated ``k`` times is only trustworthy while ``k + j <= M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

import numpy as np

DEFAULT_ORDER = 60

Generator = Union[Callable[[int], float], Iterable[float], np.ndarray]


class SeriesError(ValueError):
    """Raised for malformed series or structurally incompatible operands."""


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Truncated power series about ``center``.

    Attributes
    ----------
    center : float
        Expansion point x0.
    coeffs : numpy.ndarray
        Read-only array of ``order + 1`` coefficients.
    """

    center: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size < 2:
            raise SeriesError("a series needs at least two coefficients (order >= 1)")
        bad = np.flatnonzero(~np.isfinite(c))
        if bad.size:
            raise SeriesError(f"non-finite coefficient at index {int(bad[0])}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "center", float(self.center))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def eval_at_center(self) -> float:
        return float(self.coeffs[0])

    def __call__(self, x):
        """Evaluate the truncated polynomial at ``x`` (Horner)."""
        t = np.asarray(x, dtype=float) - self.center
        acc = np.zeros_like(t)
        for c in self.coeffs[::-1]:
            acc = acc * t + c
        return acc if acc.ndim else float(acc)

    def _like(self, coeffs: np.ndarray) -> "TaylorSeries":
        return TaylorSeries(self.center, coeffs)

    def __add__(self, other):
        if isinstance(other, TaylorSeries):
            return add(self, other)
        c = self.coeffs.copy()
        c[0] += other
        return self._like(c)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return mul(self, other)
        return self._like(self.coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TaylorSeries):
            return divide(self, other)
        return self._like(self.coeffs / float(other))

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        more = ", ..." if self.order > 3 else ""
        return f"TaylorSeries(center={self.center:g}, order={self.order}, [{head}{more}])"


def make_series(center: float, order: int, generator: Generator) -> TaylorSeries:
    """Build a series from a coefficient rule.

    Parameters
    ----------
    center : float
        Expansion point.
    order : int
        Maximum retained degree M (>= 1).
    generator : callable or sequence
        Either ``j -> c_j`` or a sequence holding at least ``order + 1`` values.

    Raises
    ------
    SeriesError
        If ``order < 1`` or a coefficient is not finite.
    """
    if int(order) != order or order < 1:
        raise SeriesError(f"order must be an integer >= 1, got {order!r}")
    order = int(order)
    if callable(generator):
        coeffs = np.array([generator(j) for j in range(order + 1)], dtype=float)
    else:
        coeffs = np.asarray(generator, dtype=float)[: order + 1]
        if coeffs.size != order + 1:
            raise SeriesError(f"generator supplied {coeffs.size} coefficients, need {order + 1}")
    return TaylorSeries(center, coeffs)


def constant(center: float, order: int, value: float) -> TaylorSeries:
    c = np.zeros(order + 1)
    c[0] = value
    return TaylorSeries(center, c)


def variable(center: float, order: int) -> TaylorSeries:
    """The identity function x expanded about ``center``."""
    c = np.zeros(order + 1)
    c[0], c[1] = center, 1.0
    return TaylorSeries(center, c)


def _check(a: TaylorSeries, b: TaylorSeries) -> None:
    if a.center != b.center:
        raise SeriesError(f"center mismatch: {a.center} vs {b.center}")
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} vs {b.order}")


def add(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    _check(a, b)
    return TaylorSeries(a.center, a.coeffs + b.coeffs)


def mul(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    """Cauchy product truncated at degree M."""
    _check(a, b)
    return TaylorSeries(a.center, np.convolve(a.coeffs, b.coeffs)[: a.order + 1])


def differentiate(a: TaylorSeries) -> TaylorSeries:
    """Term-wise derivative, padded with a trailing zero so the order is kept."""
    return TaylorSeries(a.center, diff_coeffs(a.coeffs))


def reciprocal(a: TaylorSeries) -> TaylorSeries:
    """Series of 1/a; requires a nonzero constant term."""
    return TaylorSeries(a.center, reciprocal_coeffs(a.coeffs))


def divide(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    _check(a, b)
    return mul(a, reciprocal(b))


# Raw-array kernels shared with the iteration engine, which works on plain
# arrays inside its hot loop.

def diff_coeffs(c: np.ndarray) -> np.ndarray:
    out = np.zeros_like(c)
    out[:-1] = c[1:] * np.arange(1, c.size)
    return out


def reciprocal_coeffs(c: np.ndarray) -> np.ndarray:
    """Newton iteration r <- r (2 - c r), doubling the number of exact terms."""
    if c[0] == 0.0:
        raise SeriesError("reciprocal of a series with zero constant term")
    n = c.size
    r = np.array([1.0 / c[0]])
    m = 1
    while m < n:
        m = min(2 * m, n)
        cr = np.convolve(c[:m], r)[:m]
        cr = -cr
        cr[0] += 2.0
        r = np.convolve(r, cr)[:m]
    return r
