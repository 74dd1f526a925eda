"""Constructive approximation: from norm dominance to a multi-copy witness.

Given ``||x||_p <= ||y||_p`` for every ``p >= 1``, :func:`approximate`
produces a vector within l1 distance ``eps`` of ``x`` whose ``n``-th tensor
power is majorized by that of ``y``. The recipe: shave ``eps/2`` off the
support of ``x`` (making every norm inequality strict), find ``n`` for the
shaved vector, then restore the lost mass as ``D`` equal grains of dust,
each small enough to sit below every coordinate that matters.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .majorize import MajorizationVerdict, canonical_p_grid, schur_test, submajorizes_spectra
from .multicopy import SPECTRUM_CAP, CopySearch, count_compositions, power_spectrum, search_min_copies
from .vecspace import (DEFAULT_TOL, EXACT, PreconditionError, ProbVector, TrumpkitError,
                       WeightedSpectrum, aligned, to_fraction)

log = logging.getLogger(__name__)

# exact re-verification is attempted up to this many exponent multisets per power
EXACT_CHECK_CAP = 20_000


class SearchExhausted(TrumpkitError):
    """No copy count up to ``n_max`` worked; ``hint`` carries a predicted count, if any."""

    def __init__(self, message: str, hint: int | None = None, search: CopySearch | None = None):
        super().__init__(message)
        self.hint = hint
        self.search = search


def shave(x: ProbVector, eps) -> ProbVector:
    """Remove ``eps / (2 d_x)`` from each positive coordinate (``d_x`` the support size).

    Requires ``0 < eps < 2 d_x min_positive(x)`` so the result stays positive.
    """
    d = x.support_size
    if d == 0:
        raise PreconditionError("x has no positive coordinate")
    xmin = x.min_positive
    if x.exact:
        e = to_fraction(eps)
        if not 0 < e < 2 * d * xmin:
            raise PreconditionError(f"eps must lie in (0, {2 * d * xmin})")
        cut = e / (2 * d)
        coords = [c - cut if c > 0 else c for c in x.coords]
        return ProbVector.of(coords, EXACT)
    e = float(eps)
    if not 0 < e < 2 * d * float(xmin):
        raise PreconditionError(f"eps must lie in (0, {2 * d * float(xmin)!r})")
    cut = e / (2 * d)
    return ProbVector(np.where(x.coords > 0, x.coords - cut, x.coords), False)


@dataclass(frozen=True)
class DustPadding:
    """``x_eps = x' (+) delta^(+D)`` stored as a spectrum (``D`` may be huge)."""

    delta: Fraction
    D: int
    x_eps: WeightedSpectrum
    top_block_preserved: bool
    verdict: MajorizationVerdict

    @property
    def log_delta(self) -> float:
        return math.log(self.delta.numerator) - math.log(self.delta.denominator)


def _as_fraction(c, exact: bool) -> Fraction:
    # float coordinates are taken at their exact binary value, matching the float spectra
    return c if exact else Fraction(float(c))


def dust_bound(x_prime: ProbVector, y: ProbVector, n: int) -> Fraction:
    """Largest admissible grain: ``min(x'_min**n, y_min**n) / x'_max**(n-1)``."""
    xmax = _as_fraction(x_prime.max, x_prime.exact)
    xmin = _as_fraction(x_prime.min_positive, x_prime.exact)
    ymin = _as_fraction(y.min_positive, y.exact)
    return min(xmin**n, ymin**n) / xmax ** (n - 1)


def pad_with_dust(x_prime: ProbVector, y: ProbVector, n: int, eps, *,
                  tol: float = DEFAULT_TOL, cap: int = SPECTRUM_CAP) -> DustPadding:
    """Restore mass ``eps / 2`` as ``D`` grains of size ``delta`` and re-check the power.

    ``delta`` is the largest value ``(eps/2)/D`` under :func:`dust_bound`,
    i.e. ``D`` is as small as possible. The grains make the top ``d_x**n``
    coordinates of the new power coincide with those of ``x'**n``, and each
    later coordinate is no larger than its counterpart in ``y**n``; the
    resulting majorization is checked directly on compressed spectra.
    """
    x_prime, y = aligned(x_prime, y)
    exact = x_prime.exact
    Xp = power_spectrum(x_prime, n, cap=cap).spectrum
    Y = power_spectrum(y, n, cap=cap).spectrum
    pre = submajorizes_spectra(Xp, Y, tol=tol)
    if not pre.holds:
        raise PreconditionError(f"x'^(x){n} is not submajorized by y^(x){n}")
    half = to_fraction(eps) / 2
    D = math.ceil(half / dust_bound(x_prime, y, n))
    delta = half / D
    pos = [c for c in x_prime.coords if c > 0]
    if exact:
        base = WeightedSpectrum.from_exact_pairs([(c, 1) for c in pos] + [(delta, D)])
    else:
        log_delta = math.log(delta.numerator) - math.log(delta.denominator)
        base = WeightedSpectrum.from_log_pairs([(math.log(c), 1) for c in pos] + [(log_delta, D)])
    Xe = power_spectrum(base, n, cap=cap).spectrum
    top = Xe.head(Xp.total_count).same_entries(Xp)
    v = submajorizes_spectra(Xe, Y, tol=tol)
    verdict = MajorizationVerdict(v.holds and v.mass_equal, v.first_violation, v.gap,
                                  v.mass_equal)
    return DustPadding(delta, D, base, top, verdict)


@dataclass(frozen=True)
class ApproximationResult:
    eps: float
    x_prime: ProbVector
    n: int
    delta: Fraction
    D: int
    x_eps: WeightedSpectrum
    l1_error: float
    verdict: MajorizationVerdict
    top_block_preserved: bool
    exact_verified: bool | None
    search: CopySearch

    @property
    def verified(self) -> bool:
        return self.verdict.holds and self.exact_verified is not False

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "n": self.n,
            "delta": float(self.delta),
            "logDelta": math.log(self.delta.numerator) - math.log(self.delta.denominator),
            "D": str(self.D),
            "l1Error": self.l1_error,
            "xPrime": [float(c) for c in self.x_prime.coords],
            "xPrimeMass": float(self.x_prime.mass),
            "verdict": self.verdict.to_dict(),
            "topBlockPreserved": self.top_block_preserved,
            "exactVerified": self.exact_verified,
            "verified": self.verified,
            "violations": {str(k): v for k, v in sorted(self.search.violations.items())},
        }


def approximate(x: ProbVector, y: ProbVector, eps, n_max: int = 64, *, p_grid=None,
                tol: float = DEFAULT_TOL, cap: int = SPECTRUM_CAP, workers: int = 1,
                exact_check: bool = True, exact_cap: int = EXACT_CHECK_CAP,
                hint: bool = True) -> ApproximationResult:
    """Find ``x_eps`` with ``||x - x_eps||_1 <= eps`` and a copy count ``n`` witnessing
    ``x_eps^{(x)n}`` majorized by ``y^{(x)n}``.

    Raises :class:`PreconditionError` when the norm condition fails on the
    exponent grid, and :class:`SearchExhausted` when no ``n <= n_max`` works.
    """
    x, y = aligned(x, y)
    grid = canonical_p_grid(x, y) if p_grid is None else tuple(p_grid)
    report = schur_test(x, y, grid, tol=tol)
    if not report.holds:
        bad = report.failures[0]
        raise PreconditionError(
            f"norm condition fails at p={bad.p!r}: {bad.norm_x!r} > {bad.norm_y!r}")
    xp = shave(x, eps)
    search = search_min_copies(xp, y, n_max, weak=True, tol=tol, cap=cap, workers=workers,
                               p_grid=grid)
    if search.n is None:
        predicted = None
        if hint:
            from .ldp import predict_copies
            predicted = predict_copies(xp, y, n_grid=_hint_grid(n_max, xp, y, cap))
        raise SearchExhausted(f"no copy count up to {n_max} ({search.reason})", predicted, search)
    n = search.n
    pad = pad_with_dust(xp, y, n, eps, tol=tol, cap=cap)
    dust = float(pad.delta * pad.D)
    l1 = float(np.sum(np.abs(x.as_floats() - xp.as_floats()))) + dust
    exact_ok = None
    if exact_check and not x.exact:
        s = len(WeightedSpectrum.from_vector(xp)) + 1
        if count_compositions(n, s) <= exact_cap:
            exact_ok = _exact_recheck(x, y, eps, n, tol)
    elif exact_check:
        exact_ok = pad.verdict.holds
    return ApproximationResult(float(eps), xp, n, pad.delta, pad.D, pad.x_eps, l1, pad.verdict,
                               pad.top_block_preserved, exact_ok, search)


def _hint_grid(n_max: int, xp: ProbVector, y: ProbVector, cap: int) -> list[int]:
    s = max(len(WeightedSpectrum.from_vector(xp)), len(WeightedSpectrum.from_vector(y)))
    grid, n = [], n_max + 1
    while count_compositions(n, s) <= min(cap, 50_000) and len(grid) < 6:
        grid.append(n)
        n *= 2
    return grid


def _unit(v: ProbVector, tol: float) -> ProbVector:
    # decimal readings of a float unit vector can miss mass 1 by an ulp; snap them back
    m = v.mass
    return v.scaled(1 / m) if m != 1 and abs(float(m) - 1.0) <= tol else v


def _exact_recheck(x: ProbVector, y: ProbVector, eps, n: int, tol: float) -> bool:
    """Rebuild the witness in rational arithmetic for the same ``n`` and check it.

    Floats are read as decimals, and vectors whose mass is within ``tol`` of
    one are rescaled to exact unit mass. The grain count is recomputed from
    the rational bound, and every prefix inequality is decided exactly.
    """
    xe, ye = aligned(x, y, EXACT)
    xe, ye = _unit(xe, tol), _unit(ye, tol)
    xp = shave(xe, to_fraction(eps))
    half = to_fraction(eps) / 2
    D = math.ceil(half / dust_bound(xp, ye, n))
    pos = [c for c in xp.coords if c > 0]
    base = WeightedSpectrum.from_exact_pairs([(c, 1) for c in pos] + [(half / D, D)])
    if base.total_mass != xe.mass:
        return False
    Xe = power_spectrum(base, n).spectrum
    Y = power_spectrum(ye, n).spectrum
    return submajorizes_spectra(Xe, Y).holds


__all__ = [
    "ApproximationResult", "DustPadding", "SearchExhausted", "approximate", "dust_bound",
    "pad_with_dust", "shave",
]
