"""Majorization and submajorization verdicts.

Two independent routes decide the same relation: :func:`submajorizes` walks
the prefix sums of expanded vectors, :func:`submajorizes_spectra` works on
run-length compressed spectra and never expands them.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate

import numpy as np

from .vecspace import (DEFAULT_TOL, EXACT, ProbVector, WeightedSpectrum, aligned, entry_mass,
                       lp_norm, p_max, sort_desc)

DEFAULT_P_GRID = (1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 16.0, 32.0, math.inf)


@dataclass(frozen=True)
class MajorizationVerdict:
    holds: bool
    first_violation: int | None = None
    gap: float | Fraction | None = None
    mass_equal: bool = True

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "firstViolation": self.first_violation,
            "gap": None if self.gap is None else float(self.gap),
            "massEqual": self.mass_equal,
        }


def _exceeds(a, b, tol: float, exact: bool) -> bool:
    """Whether ``a > b`` beyond tolerance. Ties count as satisfied."""
    if exact:
        return a > b
    return a - b > tol * max(abs(a), abs(b))


def _mass_equal(mx, my, tol: float, exact: bool) -> bool:
    return not _exceeds(mx, my, tol, exact) and not _exceeds(my, mx, tol, exact)


def submajorizes(x: ProbVector, y: ProbVector, *, mode: str | None = None,
                 tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Is ``x`` weakly submajorized by ``y``? Compares every prefix sum of the sorted vectors."""
    x, y = aligned(x, y, mode)
    exact = x.exact
    xs, ys = sort_desc(x).coords, sort_desc(y).coords
    if exact:
        cx = list(accumulate(xs, initial=Fraction(0)))[1:]
        cy = list(accumulate(ys, initial=Fraction(0)))[1:]
    else:
        cx, cy = np.cumsum(xs), np.cumsum(ys)
    me = _mass_equal(x.mass, y.mass, tol, exact)
    for k in range(len(cx)):
        if _exceeds(cx[k], cy[k], tol, exact):
            gap = cx[k] - cy[k]
            return MajorizationVerdict(False, k + 1, gap if exact else float(gap), me)
    return MajorizationVerdict(True, None, None, me)


def majorizes(x: ProbVector, y: ProbVector, *, mode: str | None = None,
              tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Is ``x`` majorized by ``y``: submajorization plus equal total mass."""
    v = submajorizes(x, y, mode=mode, tol=tol)
    return MajorizationVerdict(v.holds and v.mass_equal, v.first_violation, v.gap, v.mass_equal)


class _Cumulative:
    """Cumulative mass as a function of count for one spectrum.

    The function is piecewise linear with a kink at every run end and
    constant past the total count.
    """

    def __init__(self, s: WeightedSpectrum):
        self.exact = s.exact
        self.s = s
        self.ends = list(accumulate(s.counts))
        if self.exact:
            masses = (v * c for v, c in zip(s.exact_values, s.counts))
            self.masses = list(accumulate(masses, initial=Fraction(0)))
        else:
            masses = [entry_mass(lv, c) for lv, c in zip(s.log_values, s.counts)]
            self.masses = list(accumulate(masses, initial=0.0))

    def at(self, k: int):
        j = bisect_left(self.ends, k)
        if j >= len(self.ends):
            return self.masses[-1]
        span = k - (self.ends[j - 1] if j else 0)
        if self.exact:
            return self.masses[j] + span * self.s.exact_values[j]
        if span == 0:
            return self.masses[j]
        return self.masses[j] + entry_mass(self.s.log_values[j], span)

    def slope(self, k: int):
        """Value of the coordinate at 1-based position ``k``; zero past the end."""
        j = bisect_left(self.ends, k)
        if j >= len(self.ends):
            return Fraction(0) if self.exact else 0.0
        return self.s.exact_values[j] if self.exact else math.exp(self.s.log_values[j])


def submajorizes_spectra(X: WeightedSpectrum, Y: WeightedSpectrum, *,
                         tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Submajorization between the vectors two spectra compress.

    Both cumulative functions are concave and piecewise linear in the count
    ``k``, with kinks only at run ends. Their difference is therefore linear
    between consecutive points of the union of kinks, so it exceeds zero
    somewhere iff it does at one of those points; the first violating
    integer inside the offending interval is then found by solving the
    linear equation.
    """
    if X.exact != Y.exact:
        raise ValueError("spectra must share an arithmetic mode")
    exact = X.exact
    fx, fy = _Cumulative(X), _Cumulative(Y)
    me = _mass_equal(fx.masses[-1], fy.masses[-1], tol, exact)

    def bad(k: int) -> bool:
        return _exceeds(fx.at(k), fy.at(k), tol, exact)

    prev = 0
    for b in sorted(set(fx.ends) | set(fy.ends)):
        if bad(b):
            k = _first_violation(fx, fy, prev, b, bad, tol, exact)
            g = fx.at(k) - fy.at(k)
            return MajorizationVerdict(False, k, g if exact else float(g), me)
        prev = b
    return MajorizationVerdict(True, None, None, me)


def _first_violation(fx, fy, a: int, b: int, bad, tol: float, exact: bool) -> int:
    """Smallest integer in ``(a, b]`` where the prefix inequality fails; linear on ``[a, b]``."""
    slope = fx.slope(b) - fy.slope(b)
    da = fx.at(a) - fy.at(a)
    if slope <= 0:
        k = b
    elif exact:
        k = a + math.floor(-da / slope) + 1
    else:
        thr = tol * max(abs(fx.at(b)), abs(fy.at(b)))
        k = a + math.floor((thr - da) / slope) + 1
    k = min(max(k, a + 1), b)
    if not exact:
        # the relative threshold is not linear; settle the last few steps directly
        while k < b and not bad(k):
            k += 1
        while k > a + 1 and bad(k - 1):
            k -= 1
    return k


def tail_dominates(x: ProbVector, y: ProbVector, *, mode: str | None = None,
                   tol: float = DEFAULT_TOL) -> bool:
    """Tail-measure criterion: every upper tail of ``x`` is lighter than that of ``y``.

    Checks ``sum(x_i for x_i >= u) <= sum(y_i for y_i >= u)`` for all ``u > 0``.
    Both sides are step functions of ``u`` that only change at coordinate
    values, so the union of those values is an exhaustive set of thresholds.
    A true result implies ``submajorizes(x, y)``; repeated values need no
    special treatment because equal coordinates enter a tail together.
    """
    x, y = aligned(x, y, mode)
    exact = x.exact
    xs = sorted((c for c in x.coords if c > 0), reverse=True)
    ys = sorted((c for c in y.coords if c > 0), reverse=True)
    thresholds = sorted(set(xs) | set(ys), reverse=True)
    zero = Fraction(0) if exact else 0.0
    i = j = 0
    tx = ty = zero
    for u in thresholds:
        while i < len(xs) and xs[i] >= u:
            tx += xs[i]
            i += 1
        while j < len(ys) and ys[j] >= u:
            ty += ys[j]
            j += 1
        if _exceeds(tx, ty, tol, exact):
            return False
    return True


@dataclass(frozen=True)
class SchurRow:
    p: float
    norm_x: float
    norm_y: float
    ok: bool


@dataclass(frozen=True)
class SchurReport:
    rows: tuple = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> list[SchurRow]:
        return [r for r in self.rows if not r.ok]

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "rows": [{"p": r.p, "normX": r.norm_x, "normY": r.norm_y, "ok": r.ok}
                     for r in self.rows],
        }


def canonical_p_grid(x: ProbVector, y: ProbVector, base=DEFAULT_P_GRID) -> tuple[float, ...]:
    """The default exponent grid with ``p_max(x, y)`` inserted when finite."""
    grid = set(base)
    pm = p_max(x, y)
    if not pm.degenerate:
        grid.add(pm.value)
    return tuple(sorted(grid))


def schur_test(x: ProbVector, y: ProbVector, p_grid=None, *,
               tol: float = DEFAULT_TOL) -> SchurReport:
    """Compare ``||x||_p`` and ``||y||_p`` over a grid of exponents ``p >= 1``.

    A necessary condition for majorization, trumping and multi-copy
    dominance alike, and cheap; searches run it first.
    """
    grid = canonical_p_grid(x, y) if p_grid is None else tuple(p_grid)
    if not grid:
        raise ValueError("p grid must be nonempty")
    if any(p < 1 for p in grid):
        raise ValueError("schur_test exponents must be >= 1")
    rows = []
    for p in grid:
        nx, ny = lp_norm(x, p), lp_norm(y, p)
        rows.append(SchurRow(float(p), nx, ny, nx <= ny * (1 + tol)))
    return SchurReport(tuple(rows))


def majorizes_exact_oracle(x: ProbVector, y: ProbVector, weak: bool = False) -> MajorizationVerdict:
    """Exact-rational re-check used to confirm float verdicts."""
    f = submajorizes if weak else majorizes
    return f(x, y, mode=EXACT)
