"""Trumping: checking catalysts, building them from multi-copy witnesses,
and the truncated geometric catalysts that approximate an infinite one."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .majorize import MajorizationVerdict, majorizes, schur_test
from .multicopy import mlocc_check
from .vecspace import (DEFAULT_TOL, DIMENSION_CAP, EXACT, PreconditionError, ProbVector,
                       TrumpkitError, aligned, common_mode, direct_sum, sort_desc, tensor,
                       tensor_power)


@dataclass(frozen=True)
class CatalystWitness:
    """A catalyst ``z`` for ``x`` trumped by ``y``, with its verdict.

    ``z`` is left unnormalized (its mass equals ``n`` for unit-mass inputs).
    It keeps the zero coordinates inherited from zero-padded inputs;
    ``z.support()`` gives the strictly positive part.
    """

    n: int
    z: ProbVector
    verdict: MajorizationVerdict
    w_identity: bool | None = None

    @property
    def normalized(self) -> bool:
        return abs(float(self.z.mass) - 1.0) <= DEFAULT_TOL

    def to_dict(self, inline_z: bool = True) -> dict:
        out = {
            "n": self.n,
            "zDimension": len(self.z),
            "zSupport": self.z.support_size,
            "zMass": float(self.z.mass),
            "normalized": self.normalized,
            "verdict": self.verdict.to_dict(),
            "wIdentity": self.w_identity,
        }
        if inline_z:
            out["z"] = [float(c) for c in self.z.coords]
        return out


def verify_catalysis(x: ProbVector, y: ProbVector, z: ProbVector, *, mode: str | None = None,
                     tol: float = DEFAULT_TOL, cap: int = DIMENSION_CAP) -> MajorizationVerdict:
    """Verdict of ``x (x) z`` majorized by ``y (x) z``; the scale of ``z`` is irrelevant."""
    if not any(c > 0 for c in z.coords):
        raise TrumpkitError("catalyst must have a positive coordinate")
    m = common_mode(x, y, z, mode=mode)
    x, y = aligned(x, y, m)
    z = z.to_mode(m)
    return majorizes(tensor(x, z, cap=cap), tensor(y, z, cap=cap), tol=tol)


def catalyst_blocks(x: ProbVector, y: ProbVector, n: int, *, cap: int = DIMENSION_CAP):
    """The summands ``x^{(x)(n-1-k)} (x) y^{(x)k}`` for ``k = 0 .. n-1``."""
    return [tensor(tensor_power(x, n - 1 - k, cap=cap), tensor_power(y, k, cap=cap), cap=cap)
            for k in range(n)]


def build_catalyst(x: ProbVector, y: ProbVector, n: int, *, mode: str | None = None,
                   tol: float = DEFAULT_TOL, cap: int = DIMENSION_CAP,
                   check_identity: bool = True) -> CatalystWitness:
    """Turn an ``n``-copy witness into a catalyst.

    With ``z`` the direct sum of ``x^{(x)(n-1-k)} (x) y^{(x)k}``, both
    ``x (x) z`` and ``y (x) z`` split as the ``n``-th power of ``x`` (resp.
    ``y``) plus one shared remainder, so the multi-copy relation carries
    over to ``x (x) z`` versus ``y (x) z``.
    """
    if n < 1:
        raise TrumpkitError("copy count must be at least 1")
    m = common_mode(x, y, mode=mode)
    x, y = aligned(x, y, m)
    if not mlocc_check(x, y, n, weak=False, tol=tol).holds:
        raise PreconditionError(f"x^(x){n} is not majorized by y^(x){n}")
    z = direct_sum(*catalyst_blocks(x, y, n, cap=cap))
    verdict = verify_catalysis(x, y, z, tol=tol, cap=cap)
    ident = w_identity_holds(x, y, n, cap=cap) if check_identity else None
    return CatalystWitness(n, z, verdict, ident)


def w_identity_holds(x: ProbVector, y: ProbVector, n: int, *, cap: int = DIMENSION_CAP) -> bool:
    """Check, by exact multiset subtraction, that ``x (x) z`` minus ``x^{(x)n}``
    equals ``y (x) z`` minus ``y^{(x)n}``."""
    x, y = aligned(x, y, EXACT)
    z = direct_sum(*catalyst_blocks(x, y, n, cap=cap))
    xz = Counter(tensor(x, z, cap=cap, sort=False).coords)
    yz = Counter(tensor(y, z, cap=cap, sort=False).coords)
    xn = Counter(tensor_power(x, n, cap=cap).coords)
    yn = Counter(tensor_power(y, n, cap=cap).coords)
    if any(xz[v] < c for v, c in xn.items()) or any(yz[v] < c for v, c in yn.items()):
        return False
    return xz - xn == yz - yn


def geometric_catalyst(alpha: float, k: int) -> ProbVector:
    """First ``k`` terms of the geometric vector ``(1 - alpha) alpha**i``, renormalized."""
    if not 0 < alpha < 1:
        raise TrumpkitError("alpha must lie in (0, 1)")
    if k < 1:
        raise TrumpkitError("truncation length must be positive")
    terms = alpha ** np.arange(k)
    return ProbVector(terms / terms.sum(), False)


def max_prefix_gap(a: ProbVector, b: ProbVector) -> float:
    """Largest excess of a prefix sum of ``a`` over the matching one of ``b``, floored at 0."""
    a, b = aligned(a, b, "float")
    ca = np.cumsum(sort_desc(a).coords)
    cb = np.cumsum(sort_desc(b).coords)
    return float(max(0.0, np.max(ca - cb)))


def geometric_gap(x: ProbVector, y: ProbVector, alpha: float, k: int) -> float:
    """:func:`max_prefix_gap` of ``x (x) z_k`` against ``y (x) z_k`` for a truncated geometric catalyst."""
    z = geometric_catalyst(alpha, k)
    return max_prefix_gap(tensor(x, z), tensor(y, z))


@dataclass(frozen=True)
class ObstructionReport:
    x_min: float
    y_min: float
    x_max: float
    y_max: float
    norm_filter: object

    @property
    def min_condition(self) -> bool:
        """``x_min >= y_min``: necessary for membership in the closure of same-dimension trumping."""
        return self.x_min >= self.y_min

    @property
    def max_condition(self) -> bool:
        return self.x_max <= self.y_max

    @property
    def finite_dimension_excluded(self) -> bool:
        return not self.min_condition

    @property
    def trumping_closure_excluded(self) -> bool:
        """Failure of the norm filter rules out the closure of trumping with any finite catalyst."""
        return not self.norm_filter.holds or not self.max_condition

    @property
    def obstructed(self) -> bool:
        return self.finite_dimension_excluded or self.trumping_closure_excluded

    def to_dict(self) -> dict:
        return {
            "xMin": self.x_min,
            "yMin": self.y_min,
            "xMax": self.x_max,
            "yMax": self.y_max,
            "minCondition": self.min_condition,
            "maxCondition": self.max_condition,
            "finiteDimensionClosureExcluded": self.finite_dimension_excluded,
            "trumpingClosureExcluded": self.trumping_closure_excluded,
            "normFilter": self.norm_filter.to_dict(),
        }


def catalysis_obstructions(x: ProbVector, y: ProbVector, p_grid=None, *,
                           tol: float = DEFAULT_TOL) -> ObstructionReport:
    """Necessary conditions whose failure certifies that ``y`` cannot trump ``x``.

    Minima are taken over the common zero-padded dimension.
    """
    xa, ya = aligned(x, y, "float")
    return ObstructionReport(float(xa.min), float(ya.min), float(xa.max), float(ya.max),
                             schur_test(xa, ya, p_grid, tol=tol))
