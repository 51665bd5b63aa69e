"""Tsukamoto-inference baseline: crisp rule outputs and grid optimization.

Each rule fires at the product t-norm of its antecedent memberships; the
consequent membership functions are strictly monotone, so the rule output is
the consequent inverse at the firing level, and objectives are the
firing-weighted average of those inverses.  Optimization is a deliberate
exhaustive grid search along the equality-constraint line; this module is a
verification baseline, not a solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .fuzzy import DomainError, Interval, LingoptError


class NoRuleFiredError(LingoptError):
    """All rule firings are zero at the evaluation point."""


class MonotoneMf:
    """Strictly monotone membership function on a domain, invertible by design.

    Built-in kinds: "increasing" (mu = x) and "decreasing" (mu = 1 - x) on
    [0, 1].  Custom monotone samples are interpolated piecewise-linearly.
    """

    def __init__(
        self,
        kind: str = "increasing",
        domain: Interval = Interval(0.0, 1.0),
        samples: Optional[tuple[Sequence[float], Sequence[float]]] = None,
    ):
        self.kind = kind
        self.domain = domain
        if kind in ("increasing", "decreasing"):
            if samples is not None:
                raise DomainError("samples are only for kind='custom'")
            self._xs = None
        elif kind == "custom":
            if samples is None:
                raise DomainError("kind='custom' needs (xs, mus) samples")
            xs = np.asarray(samples[0], dtype=float)
            mus = np.asarray(samples[1], dtype=float)
            if xs.size < 2 or xs.size != mus.size:
                raise DomainError("custom samples need matching xs/mus of length >= 2")
            if not np.all(np.diff(xs) > 0):
                raise DomainError("custom sample xs must be strictly increasing")
            d = np.diff(mus)
            if not (np.all(d > 0) or np.all(d < 0)):
                raise DomainError("custom samples must be strictly monotone (invertible)")
            self._xs, self._mus = xs, mus
        else:
            raise DomainError(f"unknown membership kind {kind!r}")

    def __call__(self, x):
        x = np.clip(np.asarray(x, dtype=float), self.domain.lo, self.domain.hi)
        if self.kind == "increasing":
            return (x - self.domain.lo) / self.domain.width
        if self.kind == "decreasing":
            return (self.domain.hi - x) / self.domain.width
        return np.interp(x, self._xs, self._mus)

    def inverse(self, alpha):
        alpha = np.asarray(alpha, dtype=float)
        if self.kind == "increasing":
            return self.domain.lo + alpha * self.domain.width
        if self.kind == "decreasing":
            return self.domain.hi - alpha * self.domain.width
        if self._mus[0] < self._mus[-1]:
            return np.interp(alpha, self._mus, self._xs)
        return np.interp(alpha, self._mus[::-1], self._xs[::-1])


@dataclass(frozen=True)
class TsukamotoRule:
    antecedents: tuple[MonotoneMf, ...]
    consequents: tuple[MonotoneMf, ...]  # one per objective


def _check_rules(rules: Sequence[TsukamotoRule]) -> tuple[int, int]:
    if not rules:
        raise DomainError("need at least one rule")
    n = len(rules[0].antecedents)
    q = len(rules[0].consequents)
    for r in rules:
        if len(r.antecedents) != n or len(r.consequents) != q:
            raise DomainError("all rules must share antecedent and consequent counts")
    return n, q


def crisp_output(rules: Sequence[TsukamotoRule], y: Sequence[float]) -> list[float]:
    """Objective values at point y: alpha-weighted mean of consequent inverses."""
    n, q = _check_rules(rules)
    if len(y) != n:
        raise DomainError(f"expected {n} decision values, got {len(y)}")
    firings = []
    for r in rules:
        alpha = 1.0
        for mf, yi in zip(r.antecedents, y):
            alpha *= float(mf(yi))
        firings.append(alpha)
    total = sum(firings)
    if total == 0.0:
        raise NoRuleFiredError(f"all rules fire at zero at y={list(y)}")
    out = []
    for k in range(q):
        num = sum(a * float(r.consequents[k].inverse(a)) for a, r in zip(firings, rules))
        out.append(num / total)
    return out


@dataclass(frozen=True)
class EqualityConstraint:
    """sum(y_i) = total with box bounds lo <= y_i <= hi."""

    total: float
    lo: float = 0.0
    hi: float = 1.0


@dataclass(frozen=True)
class OptimizeResult:
    points: tuple[tuple[float, ...], ...]  # all grid optima within tie_tol of best
    values: tuple[tuple[float, ...], ...]  # objective values at those points
    best_score: float


def _feasible_grid(c: EqualityConstraint, dims: int, step: float):
    """Grid over the constraint manifold; the last coordinate is eliminated."""
    if dims < 2:
        raise DomainError("need at least two decision variables")

    def rec(prefix, remaining):
        if remaining == 1:
            last = c.total - sum(prefix)
            if c.lo - 1e-12 <= last <= c.hi + 1e-12:
                yield (*prefix, min(max(last, c.lo), c.hi))
            return
        lo = max(c.lo, c.total - sum(prefix) - c.hi * (remaining - 1))
        hi = min(c.hi, c.total - sum(prefix) - c.lo * (remaining - 1))
        if hi < lo:
            return
        count = int(round((hi - lo) / step)) + 1
        for v in np.linspace(lo, hi, count):
            yield from rec((*prefix, float(v)), remaining - 1)

    return rec((), dims)


def optimize(
    rules: Sequence[TsukamotoRule],
    constraint: EqualityConstraint,
    directions: Sequence[str],
    step: float = 1e-3,
    tie_tol: float = 1e-9,
    normalize: bool = False,
) -> OptimizeResult:
    """Exhaustive grid optimization of the crisp objectives on the constraint.

    Single objective: optimize it in its stated direction.  Multiple
    objectives: maximize the minimum of the direction-adjusted values (the
    max-min compromise); with ``normalize`` each objective is first rescaled
    to [0, 1] over the feasible grid.  Returns every grid point within
    ``tie_tol`` of the best score, in grid order.
    """
    n, q = _check_rules(rules)
    if len(directions) != q:
        raise DomainError(f"expected {q} directions, got {len(directions)}")
    for dr in directions:
        if dr not in ("max", "min"):
            raise DomainError(f"direction must be max or min, got {dr!r}")

    points = list(_feasible_grid(constraint, n, step))
    if not points:
        raise DomainError("constraint set contains no feasible grid points")
    values = [crisp_output(rules, p) for p in points]

    adjusted = np.array(values)
    for k, dr in enumerate(directions):
        if dr == "min":
            adjusted[:, k] = -adjusted[:, k]
    if normalize and q > 1:
        lo = adjusted.min(axis=0)
        span = adjusted.max(axis=0) - lo
        span[span == 0.0] = 1.0
        adjusted = (adjusted - lo) / span
    scores = adjusted.min(axis=1) if q > 1 else adjusted[:, 0]

    best = float(scores.max())
    keep = np.flatnonzero(scores >= best - tie_tol)
    return OptimizeResult(
        points=tuple(tuple(points[i]) for i in keep),
        values=tuple(tuple(values[i]) for i in keep),
        best_score=best,
    )


# ---------------------------------------------------------------------------
# Worked fixture systems


def fixture(name: str):
    """Return (rules, constraint, directions) for a named fixture system.

    "sm-solop": one decreasing/one mixed rule, objective minimized on the
    line y1 + y2 = 1/2; its crisp objective has the closed form
    y1 + y2 - 2*y1*y2 with optimum 3/8 at (1/4, 1/4).

    "sm-molop": the two-objective complement system (f2 = 1 - f1) maximized
    max-min on y1 + y2 = 3/4; optima (1/2, 1/2) at (1/2, 1/4) and (1/4, 1/2).
    """
    dec = MonotoneMf("decreasing")
    inc = MonotoneMf("increasing")
    if name == "sm-solop":
        rules = (
            TsukamotoRule((dec, dec), (dec,)),
            TsukamotoRule((dec, inc), (inc,)),
        )
        return rules, EqualityConstraint(0.5), ("min",)
    if name == "sm-molop":
        rules = (
            TsukamotoRule((dec, dec), (dec, inc)),
            TsukamotoRule((dec, inc), (inc, dec)),
        )
        return rules, EqualityConstraint(0.75), ("max", "max")
    raise DomainError(f"unknown fixture {name!r}; have 'sm-solop', 'sm-molop'")
