"""Large-deviation view of tensor powers.

A positive vector ``x`` is read as the law of a random variable ``X`` taking
the value ``log x_i`` with probability ``x_i``; missing mass sits at
``-inf``. Tensor powers then become sums of i.i.d. copies, and tails of
those sums are governed by the cumulant generating function and its
Legendre transform.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from .majorize import majorizes, submajorizes
from .multicopy import SPECTRUM_CAP, is_deficient, power_spectrum
from .vecspace import (DEFAULT_TOL, CapExceeded, PreconditionError, ProbVector, TrumpkitError,
                       WeightedSpectrum, aligned, entry_mass)

LAMBDA_CAP = 256.0
LAMBDA_XTOL = 1e-10
T_GRID_POINTS = 129
# slack, in log units, when deciding whether a coordinate lies on a tail threshold
LOG_TIE = 1e-12


class CramerPoint(NamedTuple):
    value: float
    argmax: float


@dataclass(frozen=True)
class LogMeasure:
    """Atoms ``mass_i`` at ``location_i`` plus ``deficiency`` at ``-inf``."""

    locations: np.ndarray
    masses: np.ndarray
    deficiency: float = 0.0

    @classmethod
    def of(cls, x: ProbVector) -> "LogMeasure":
        vals = x.as_floats()
        pos = vals[vals > 0]
        if len(pos) == 0:
            raise TrumpkitError("vector has no positive coordinate")
        return cls(np.log(pos), pos, 1.0 - float(np.sum(pos)))

    @property
    def finite_mass(self) -> float:
        return float(np.sum(self.masses))

    @property
    def esssup(self) -> float:
        return float(np.max(self.locations))

    @property
    def mean(self) -> float:
        """Mean of the variable conditioned to be finite."""
        return self.derivative(0.0)

    def cumulant(self, lam: float) -> float:
        """``log E exp(lam X)``; for ``lam > 0`` the atom at ``-inf`` contributes nothing.

        Negative ``lam`` is only meaningful without that atom and is not checked here.
        """
        return float(logsumexp(np.log(self.masses) + lam * self.locations))

    def derivative(self, lam: float) -> float:
        """Derivative of the cumulant: the mean location under the tilted weights."""
        w = np.log(self.masses) + lam * self.locations
        w = np.exp(w - np.max(w))
        return float(np.dot(w, self.locations) / np.sum(w))

    def cramer(self, t: float, *, lam_cap: float = LAMBDA_CAP,
               xtol: float = LAMBDA_XTOL) -> CramerPoint:
        """``sup_lam lam t - cumulant(lam)`` together with its maximizer.

        The objective is concave, so the maximizer solves
        ``derivative(lam) = t``; the root is bracketed by doubling ``lam``
        (starting from ``lam_cap``) until the derivative passes ``t``. For
        ``t >= mean`` the maximizer is nonnegative. Below the mean it is
        negative for unit-mass measures; with mass at ``-inf`` the cumulant
        is infinite for ``lam < 0`` and the supremum sits at ``lam = 0``. At
        ``t = esssup`` (or ``t`` equal to the lowest atom) the supremum is
        only approached as ``|lam| -> inf`` and equals minus the log of that
        atom's mass.
        """
        mean, top, bottom = self.mean, self.esssup, float(np.min(self.locations))
        slack = 1e-12 * max(1.0, abs(t))
        deficient = self.deficiency > 1e-12
        low_end = -math.inf if deficient else bottom
        if t > top + slack or t < low_end - slack:
            raise PreconditionError(f"t={t!r} outside [{low_end!r}, {top!r}]")
        if abs(t - mean) <= slack or (deficient and t < mean):
            return CramerPoint(0.0 - self.cumulant(0.0), 0.0)
        if t >= top - slack or t <= bottom + slack:
            edge = top if t > mean else bottom
            mass = float(np.sum(self.masses[np.abs(self.locations - edge) <= slack]))
            return CramerPoint(-math.log(mass), math.copysign(math.inf, t - mean))
        sign = 1.0 if t > mean else -1.0
        end = sign * lam_cap
        while sign * (self.derivative(end) - t) < 0:
            end *= 2
            if abs(end) > 1e12:
                raise PreconditionError(f"t={t!r} too close to the edge of the support")
        lo, hi = sorted((0.0, end))
        lam = brentq(lambda s: self.derivative(s) - t, lo, hi, xtol=xtol)
        return CramerPoint(lam * t - self.cumulant(lam), lam)

    def conditioned(self) -> "LogMeasure":
        """The law conditioned to be finite (atoms rescaled by ``1 / (1 - deficiency)``)."""
        return LogMeasure(self.locations, self.masses / self.finite_mass, 0.0)


def cumulant(x: ProbVector, lam: float) -> float:
    """``log sum x_i**(lam + 1)``."""
    if lam < 0:
        raise TrumpkitError("lambda must be nonnegative")
    return LogMeasure.of(x).cumulant(lam)


def cramer_transform(x: ProbVector, t: float) -> CramerPoint:
    return LogMeasure.of(x).cramer(t)


class ConditionedView(NamedTuple):
    measure: LogMeasure
    conditioned: LogMeasure
    log_finite_mass: float

    def shifted_cumulant(self, lam: float) -> float:
        """Cumulant of the conditioned variable, via the shift by ``log(1 - p)``."""
        return self.measure.cumulant(lam) - self.log_finite_mass

    def shifted_cramer(self, t: float) -> float:
        return self.measure.cramer(t).value + self.log_finite_mass


def conditioned_view(x: ProbVector) -> ConditionedView:
    m = LogMeasure.of(x)
    return ConditionedView(m, m.conditioned(), math.log(m.finite_mass))


class _Tail:
    """Upper-tail mass of a spectrum as a function of a log threshold."""

    def __init__(self, s: WeightedSpectrum):
        self.neg_logs = [-lv for lv in s.log_values]
        if s.exact:
            masses = [v * c for v, c in zip(s.exact_values, s.counts)]
            zero = Fraction(0)
        else:
            masses = [entry_mass(lv, c) for lv, c in zip(s.log_values, s.counts)]
            zero = 0.0
        self.cum = [zero]
        for m in masses:
            self.cum.append(self.cum[-1] + m)

    def __call__(self, level: float):
        """Mass of all coordinates with log value ``>= level`` (ties within ``LOG_TIE``)."""
        cut = -(level - LOG_TIE * max(1.0, abs(level)))
        return self.cum[bisect_right(self.neg_logs, cut)]


def finite_tail(x: ProbVector, n: int, t: float, *, cap: int = SPECTRUM_CAP):
    """``P(X_1 + ... + X_n >= n t)``: mass of the coordinates of ``x^{(x)n}`` that are ``>= e^{nt}``.

    Exact vectors give an exact rational.
    """
    return _Tail(power_spectrum(x, n, cap=cap).spectrum)(n * t)


def finite_tails(x: ProbVector, n: int, t_grid: Sequence[float], *,
                 cap: int = SPECTRUM_CAP) -> list:
    tail = _Tail(power_spectrum(x, n, cap=cap).spectrum)
    return [tail(n * t) for t in t_grid]


def default_t_grid(x: ProbVector, y: ProbVector, points: int = T_GRID_POINTS) -> np.ndarray:
    logs = [math.log(float(c)) for c in list(x.coords) + list(y.coords) if c > 0]
    hi = math.log(float(y.max)) + 0.1
    return np.linspace(min(logs) - 1.0, hi, points)


DEFAULT_LAMBDA_GRID = tuple(np.concatenate([np.linspace(0, 4, 17), [6, 8, 12, 16, 24, 32, 64]]))


def limit_value(m: LogMeasure, t: float) -> float:
    """Limit of ``P(sum of n copies >= n t) ** (1/n)`` as ``n -> inf``."""
    if t <= m.mean:
        return m.finite_mass
    if t > m.esssup:
        return 0.0
    return math.exp(-m.cramer(t).value)


@dataclass(frozen=True)
class LdpProfile:
    t_grid: np.ndarray
    f_values: np.ndarray
    g_values: np.ndarray
    mean_x: float
    mean_y: float
    max_x: float
    max_y: float
    strict: bool

    @property
    def dominated(self) -> bool:
        """``f <= g`` on the whole grid."""
        return bool(np.all(self.f_values <= self.g_values * (1 + 1e-12)))


def limit_profiles(x: ProbVector, y: ProbVector, t_grid=None, *,
                   lambda_grid=DEFAULT_LAMBDA_GRID) -> LdpProfile:
    """Tabulate the limit tail profiles ``f`` (for ``x``) and ``g`` (for ``y``).

    ``strict`` records whether ``cumulant(x) < cumulant(y)`` held at every
    sampled ``lam >= 0``; in that case ``f < g`` below ``esssup(Y)``.
    """
    if abs(float(y.mass) - 1.0) > DEFAULT_TOL:
        raise PreconditionError("y must have unit mass")
    mx, my = LogMeasure.of(x), LogMeasure.of(y)
    grid = default_t_grid(x, y) if t_grid is None else np.asarray(t_grid, dtype=float)
    f = np.array([limit_value(mx, t) for t in grid])
    g = np.array([limit_value(my, t) for t in grid])
    strict = all(mx.cumulant(lam) < my.cumulant(lam) for lam in lambda_grid)
    return LdpProfile(grid, f, g, mx.mean, my.mean, mx.esssup, my.esssup, strict)


def predict_copies(x: ProbVector, y: ProbVector, n_grid: Sequence[int] = (1, 2, 4, 8, 16, 32),
                   t_grid=None, *, tol: float = DEFAULT_TOL,
                   cap: int = SPECTRUM_CAP) -> int | None:
    """Heuristic copy count: smallest ``n`` in the grid whose finite tails of
    ``x`` stay below those of ``y`` at every sampled threshold.

    A direct single-copy check comes first. The result is a hint only; tails
    sampled on a grid certify nothing between grid points.
    """
    x, y = aligned(x, y)
    weak = is_deficient(x, tol)
    if (submajorizes if weak else majorizes)(x, y, tol=tol).holds:
        return 1
    grid = default_t_grid(x, y) if t_grid is None else np.asarray(t_grid, dtype=float)
    for n in sorted(set(n_grid)):
        try:
            tx = finite_tails(x, n, grid, cap=cap)
            ty = finite_tails(y, n, grid, cap=cap)
        except CapExceeded:
            return None
        if all(float(a) <= float(b) * (1 + tol) for a, b in zip(tx, ty)):
            return n
    return None


def profile_table(x: ProbVector, y: ProbVector, t_grid=None, ns: Sequence[int] = (), *,
                  cap: int = SPECTRUM_CAP) -> tuple[list[str], list[list[float]]]:
    """Columns ``t, f, g`` and ``fn@n`` (finite-``n`` profile of ``x``) for each requested ``n``."""
    prof = limit_profiles(x, y, t_grid)
    header = ["t", "f", "g"] + [f"fn@{n}" for n in ns]
    cols = [prof.t_grid, prof.f_values, prof.g_values]
    for n in ns:
        tails = finite_tails(x, n, prof.t_grid, cap=cap)
        cols.append(np.array([float(v) ** (1.0 / n) for v in tails]))
    rows = [[float(c[i]) for c in cols] for i in range(len(prof.t_grid))]
    return header, rows
