"""Multi-copy dominance: compressed tensor powers and the search for a copy count."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .majorize import (DEFAULT_P_GRID, MajorizationVerdict, majorizes, schur_test,
                       submajorizes_spectra)
from .vecspace import (DEFAULT_TOL, CapExceeded, ProbVector, TrumpkitError, WeightedSpectrum,
                       aligned, common_mode)

log = logging.getLogger(__name__)

SPECTRUM_CAP = 5 * 10**6
DEFAULT_N_MAX = 12


@dataclass(frozen=True)
class PowerSpectrum:
    base: WeightedSpectrum
    n: int
    spectrum: WeightedSpectrum


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of length ``parts`` summing to ``n``, reverse-lexicographic."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _factorial(k: int) -> int:
    return math.factorial(k)


def count_compositions(n: int, parts: int) -> int:
    return math.comb(n + parts - 1, parts - 1)


def power_spectrum(x: ProbVector | WeightedSpectrum, n: int, *,
                   cap: int = SPECTRUM_CAP) -> PowerSpectrum:
    """Spectrum of the ``n``-fold tensor power of ``x``.

    Each exponent vector ``k`` over the distinct positive values ``v_j``
    (with run lengths ``m_j``) contributes the value ``prod v_j**k_j`` with
    multiplicity ``n! / prod k_j! * prod m_j**k_j``. Values are formed as
    sums of logs (float mode) or exact products (exact mode), then merged.
    ``x`` may already be a spectrum, which lets bases with astronomically
    long runs be powered without expansion.
    """
    if n < 1:
        raise TrumpkitError("copy count must be at least 1")
    base = x if isinstance(x, WeightedSpectrum) else WeightedSpectrum.from_vector(x)
    s = len(base)
    if s == 0:
        raise TrumpkitError("vector has no positive coordinate")
    size = count_compositions(n, s)
    if size > cap:
        raise CapExceeded(f"{size} exponent multisets at n={n} exceed cap {cap}")
    nfact = _factorial(n)
    # powers of run lengths, shared across exponent vectors
    mpow = [[m**k for k in range(n + 1)] for m in base.counts]
    if base.exact:
        vpow = [[v**k for k in range(n + 1)] for v in base.exact_values]
        pairs = []
        for k in compositions(n, s):
            value = Fraction(1)
            mult = nfact
            for j, kj in enumerate(k):
                if kj:
                    value *= vpow[j][kj]
                    mult = mult * mpow[j][kj] // _factorial(kj)
            pairs.append((value, mult))
        spec = WeightedSpectrum.from_exact_pairs(pairs)
    else:
        logs = base.log_values
        pairs = []
        for k in compositions(n, s):
            lv = 0.0
            mult = nfact
            for j, kj in enumerate(k):
                if kj:
                    lv += kj * logs[j]
                    mult = mult * mpow[j][kj] // _factorial(kj)
            pairs.append((lv, mult))
        spec = WeightedSpectrum.from_log_pairs(pairs)
    return PowerSpectrum(base, n, spec)


def mlocc_check(x: ProbVector, y: ProbVector, n: int, *, weak: bool | None = None,
                mode: str | None = None, tol: float = DEFAULT_TOL,
                cap: int = SPECTRUM_CAP) -> MajorizationVerdict:
    """Verdict of ``x^{(x)n}`` against ``y^{(x)n}`` through compressed spectra.

    ``weak`` selects submajorization; by default it is used exactly when
    ``x`` is deficient (mass below 1), which is the form multi-copy
    dominance takes for deficient vectors.
    """
    x, y = aligned(x, y, common_mode(x, y, mode=mode))
    if weak is None:
        weak = is_deficient(x, tol)
    X = power_spectrum(x, n, cap=cap).spectrum
    Y = power_spectrum(y, n, cap=cap).spectrum
    v = submajorizes_spectra(X, Y, tol=tol)
    if weak:
        return v
    return MajorizationVerdict(v.holds and v.mass_equal, v.first_violation, v.gap, v.mass_equal)


def is_deficient(x: ProbVector, tol: float = DEFAULT_TOL) -> bool:
    if x.exact:
        return x.mass < 1
    return x.mass < 1 - tol


@dataclass
class CopySearch:
    """Outcome of a copy-count sweep.

    ``n`` is the least successful copy count, or ``None``. ``reason`` says why
    the sweep stopped; ``violations`` maps each failed ``n`` to the first
    violating prefix count.
    """

    n: int | None
    reason: str
    weak: bool
    n_reached: int = 0
    violations: dict = field(default_factory=dict)
    verdict: MajorizationVerdict | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "found": self.n is not None,
            "reason": self.reason,
            "relation": "submajorization" if self.weak else "majorization",
            "nReached": self.n_reached,
            "violations": {str(k): v for k, v in sorted(self.violations.items())},
        }


def search_min_copies(x: ProbVector, y: ProbVector, n_max: int = DEFAULT_N_MAX, *,
                      weak: bool | None = None, mode: str | None = None,
                      tol: float = DEFAULT_TOL, cap: int = SPECTRUM_CAP,
                      p_grid=None, workers: int = 1, n_min: int = 1) -> CopySearch:
    """Sweep ``n = n_min .. n_max`` for the least ``n`` with a positive multi-copy verdict.

    The exponent-norm filter runs first: if some ``||x||_p > ||y||_p`` with
    ``p >= 1`` no copy count can work. With ``workers > 1`` several ``n`` are
    checked at once; the smallest success is reported either way.
    """
    if n_max < 1:
        raise TrumpkitError("n_max must be at least 1")
    x, y = aligned(x, y, common_mode(x, y, mode=mode))
    if weak is None:
        weak = is_deficient(x, tol)
    report = schur_test(x, y, p_grid, tol=tol)
    if not report.holds:
        bad = report.failures[0]
        return CopySearch(None, f"norm filter fails at p={bad.p!r}", weak)

    def check(n: int):
        return n, mlocc_check(x, y, n, weak=weak, tol=tol, cap=cap)

    result = CopySearch(None, f"no success up to n={n_max}", weak)
    ns = list(range(n_min, n_max + 1))
    batch = max(1, workers)
    pool = ThreadPoolExecutor(max_workers=batch) if batch > 1 else None
    try:
        for i in range(0, len(ns), batch):
            chunk = ns[i:i + batch]
            try:
                outcomes = list(pool.map(check, chunk)) if pool else [check(n) for n in chunk]
            except CapExceeded as err:
                result.reason = f"cap exceeded: {err}"
                raise CapExceeded(f"{err} (sweep reached n={result.n_reached})") from err
            for n, v in outcomes:
                result.n_reached = n
                if v.holds:
                    result.n, result.verdict = n, v
                    result.reason = "found"
                    return result
                result.violations[n] = v.first_violation
                log.debug("n=%d fails at prefix count %s", n, v.first_violation)
    finally:
        if pool:
            pool.shutdown()
    return result


def find_min_copies(x: ProbVector, y: ProbVector, n_max: int = DEFAULT_N_MAX,
                    **kwargs) -> int | None:
    """Least ``n <= n_max`` with ``x^{(x)n}`` (sub)majorized by ``y^{(x)n}``, else ``None``.

    ``None`` never proves that no copy count works.
    """
    return search_min_copies(x, y, n_max, **kwargs).n


def naive_mlocc_check(x: ProbVector, y: ProbVector, n: int, *, weak: bool = False,
                      mode: str | None = None, tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Expanded-vector oracle for :func:`mlocc_check`."""
    from .majorize import submajorizes
    from .vecspace import tensor_power

    x, y = aligned(x, y, common_mode(x, y, mode=mode))
    f = submajorizes if weak else majorizes
    return f(tensor_power(x, n), tensor_power(y, n), tol=tol)


__all__ = [
    "DEFAULT_N_MAX", "DEFAULT_P_GRID", "SPECTRUM_CAP", "CopySearch", "PowerSpectrum",
    "compositions", "count_compositions", "find_min_copies", "is_deficient", "mlocc_check",
    "naive_mlocc_check", "power_spectrum", "search_min_copies",
]
