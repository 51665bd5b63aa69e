"""Interval type-2 fuzzy set primitives: trapezoids, alpha-cuts, FOU shapes.

Every engine in the package is built on the same three value types: a plain
``Interval``, a ``Trapezoid`` membership function with an explicit height,
and an ``IT2Word`` pairing an upper and a lower trapezoid.  All of them are
immutable; every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Optional

import numpy as np

if TYPE_CHECKING:
    from .similarity import Centroid

#: comparison tolerance used when classifying shapes against scale endpoints
TOL = 1e-9


class LingoptError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LingoptError, ValueError):
    """An argument is outside the domain an operation is defined on."""


@dataclass(frozen=True)
class Interval:
    """A closed real interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise DomainError(f"interval requires lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float, tol: float = TOL) -> bool:
        return self.lo - tol <= x <= self.hi + tol


@dataclass(frozen=True)
class Trapezoid:
    """Trapezoidal membership function with vertices a <= b <= c <= d and height h.

    Membership is 0 outside [a, d], rises linearly on [a, b] to h, equals h
    on [b, c] and falls linearly back to 0 on [c, d].  Degenerate edges
    (a == b or c == d) are legal and denote vertical sides.
    """

    a: float
    b: float
    c: float
    d: float
    h: float = 1.0

    def __post_init__(self):
        if not (self.a <= self.b <= self.c <= self.d):
            raise DomainError(
                f"trapezoid vertices must be ordered, got ({self.a}, {self.b}, {self.c}, {self.d})"
            )
        if not 0.0 < self.h <= 1.0:
            raise DomainError(f"trapezoid height must be in (0, 1], got {self.h}")

    @property
    def support(self) -> Interval:
        return Interval(self.a, self.d)

    @property
    def vertices(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def membership(self, x: float) -> float:
        if x < self.a or x > self.d:
            return 0.0
        if self.b <= x <= self.c:
            return self.h
        if x < self.b:
            return self.h * (x - self.a) / (self.b - self.a)
        return self.h * (self.d - x) / (self.d - self.c)

    def membership_grid(self, xs: np.ndarray) -> np.ndarray:
        """Vectorised membership; handles vertical edges exactly."""
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        out[(xs >= self.b) & (xs <= self.c)] = self.h
        if self.b > self.a:
            rise = (xs >= self.a) & (xs < self.b)
            out[rise] = self.h * (xs[rise] - self.a) / (self.b - self.a)
        if self.d > self.c:
            fall = (xs > self.c) & (xs <= self.d)
            out[fall] = self.h * (self.d - xs[fall]) / (self.d - self.c)
        return out

    def translate(self, offset: float) -> "Trapezoid":
        return Trapezoid(self.a + offset, self.b + offset, self.c + offset, self.d + offset, self.h)


def alpha_cut(t: Trapezoid, alpha: float) -> Interval:
    """Horizontal cut of ``t`` at level ``alpha``.

    Returns [a + (alpha/h)(b - a), d - (alpha/h)(d - c)].  At alpha = 0 this
    is the support, at alpha = h the core [b, c].
    """
    if alpha < 0.0 or alpha > t.h + TOL:
        raise DomainError(f"alpha={alpha} outside [0, {t.h}] for cut of height-{t.h} trapezoid")
    alpha = min(alpha, t.h)
    frac = alpha / t.h
    return Interval(t.a + frac * (t.b - t.a), t.d - frac * (t.d - t.c))


class FouShape(Enum):
    INTERIOR = "interior"
    LEFT_SHOULDER = "left-shoulder"
    RIGHT_SHOULDER = "right-shoulder"


@dataclass(frozen=True)
class IT2Word:
    """An interval type-2 fuzzy set given by an upper and a lower trapezoid.

    The UMF must be normal (height 1) and must contain the LMF pointwise.
    ``centroid`` is a cache filled in by the codebook loader; anonymous
    inference outputs may carry one as well.
    """

    name: str
    umf: Trapezoid
    lmf: Trapezoid
    centroid: Optional["Centroid"] = None

    def membership(self, x: float) -> Interval:
        return Interval(self.lmf.membership(x), self.umf.membership(x))

    def with_centroid(self, centroid: "Centroid") -> "IT2Word":
        return replace(self, centroid=centroid)

    def validate(self) -> None:
        """Raise DomainError if the word breaks an IT2 invariant."""
        if abs(self.umf.h - 1.0) > TOL:
            raise DomainError(f"word {self.name!r}: umf height must be 1, got {self.umf.h}")
        if self.lmf.h > 1.0 + TOL:
            raise DomainError(f"word {self.name!r}: lmf height must be <= 1, got {self.lmf.h}")
        if self.lmf.a < self.umf.a - TOL or self.lmf.d > self.umf.d + TOL:
            raise DomainError(f"word {self.name!r}: lmf support exceeds umf support")
        # piecewise-linear containment only needs checking at the kinks of both curves
        for x in set(self.umf.vertices) | set(self.lmf.vertices):
            lo, hi = self.lmf.membership(x), self.umf.membership(x)
            if lo > hi + 1e-7:
                raise DomainError(
                    f"word {self.name!r}: lmf membership {lo:.6f} exceeds umf {hi:.6f} at x={x}"
                )


def membership_envelope(w: IT2Word, x: float) -> Interval:
    """Pointwise [LMF(x), UMF(x)] band of the word's footprint of uncertainty."""
    return w.membership(x)


def classify_fou(w: IT2Word, scale: Interval) -> FouShape:
    """Classify the word's FOU as interior, left shoulder or right shoulder.

    A shoulder has both trapezoids flat against the corresponding scale end
    and a lower membership function of full height.
    """
    full_height = abs(w.lmf.h - 1.0) <= TOL
    left = all(abs(v - scale.lo) <= TOL for v in (w.umf.a, w.umf.b, w.lmf.a, w.lmf.b))
    if left and full_height:
        return FouShape.LEFT_SHOULDER
    right = all(abs(v - scale.hi) <= TOL for v in (w.umf.c, w.umf.d, w.lmf.c, w.lmf.d))
    if right and full_height:
        return FouShape.RIGHT_SHOULDER
    return FouShape.INTERIOR
