"""Closed intervals with outward-inflated scalar arithmetic.

Each operation widens its result by a relative ``INFLATION`` on both ends.
That stands in for directed rounding; it is far larger than the rounding
error of a handful of flops and far smaller than any check tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import singular_values
from .norms import NormSpec, gauge_batch
from .radius import RadiusEstimate

INFLATION = 1e-12
_EPS = np.finfo(float).eps


def _out(lo: float, hi: float) -> "Enclosure":
    return Enclosure(lo - INFLATION * abs(lo), hi + INFLATION * abs(hi))


@dataclass(frozen=True)
class Enclosure:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: float) -> "Enclosure":
        return _out(float(value), float(value))

    @classmethod
    def of(cls, est: RadiusEstimate) -> "Enclosure":
        return cls(float(est.lo), float(est.hi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __add__(self, other):
        other = _coerce(other)
        return _out(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return _out(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other):
        other = _coerce(other)
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return _out(min(prods), max(prods))

    __rmul__ = __mul__

    def __pow__(self, p: float):
        """Power of a nonnegative enclosure (``x**0 == 1``)."""
        if p == 0:
            return Enclosure(1.0, 1.0)
        if self.lo < 0:
            raise ValueError("power of an enclosure reaching below zero")
        return _out(self.lo**p, self.hi**p)

    def to_json(self) -> list[float]:
        return [self.lo, self.hi]


def _coerce(x) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    x = float(x)
    return Enclosure(x, x)


def norm_enclosure(spec: NormSpec, M) -> Enclosure:
    """Enclosure of ``N(M)`` from singular values computed as
    ``sqrt(eig(M* M))``.

    An eigenvalue error of ``d = 4 n eps sigma_1^2`` on ``M* M`` moves each
    singular value by at most ``min(sqrt(d), d / sigma_i)``; the gauge is
    monotone, so evaluating it on the shifted vectors brackets the norm.
    """
    sv = singular_values(M)
    n = sv.size
    top = float(sv[0]) if n else 0.0
    d = 4.0 * n * _EPS * top * top
    err = np.minimum(math.sqrt(d), d / np.where(sv > 0, sv, np.inf))
    err = np.where(sv > 0, err, math.sqrt(d))
    lower = np.sort(np.maximum(sv - err, 0.0))[::-1]
    upper = np.sort(sv + err)[::-1]
    return _out(float(gauge_batch(spec, lower)), float(gauge_batch(spec, upper)))
