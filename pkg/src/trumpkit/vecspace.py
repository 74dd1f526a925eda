"""Finitely supported nonnegative vectors and their algebra.

Two arithmetic backends share one type: float vectors hold a float64 numpy
array, exact vectors hold an object array of :class:`fractions.Fraction`.
Trailing zeros never change the meaning of a vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9
DIMENSION_CAP = 10**7
# relative tolerance used when grouping equal coordinate values in float mode
MERGE_RTOL = 1e-12

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


class TrumpkitError(ValueError):
    """Base class for input and precondition errors."""


class CapExceeded(TrumpkitError):
    """A configured size cap would be exceeded."""


class PreconditionError(TrumpkitError):
    """An operation was called outside its domain."""


def to_fraction(value) -> Fraction:
    """Read a number as a rational.

    Floats are read through their shortest decimal repr, so ``0.4`` becomes
    ``2/5`` rather than the binary double nearest to it.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise TrumpkitError(f"non-finite coordinate {value!r}")
        return Fraction(repr(float(value)))
    raise TrumpkitError(f"cannot read {value!r} as a number")


def _to_float(value) -> float:
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


@dataclass(frozen=True, eq=False)
class ProbVector:
    """Nonnegative finitely supported vector.

    ``coords`` is a read-only numpy array (float64, or object dtype holding
    Fractions when ``exact`` is set). Mass may be below 1 (deficient vectors)
    and, for catalysts and singular-value vectors, above it.
    """

    coords: np.ndarray
    exact: bool = False

    def __post_init__(self):
        arr = self.coords
        if arr.ndim != 1:
            raise TrumpkitError("vectors must be one-dimensional")
        if len(arr) and min(arr) < 0:
            raise TrumpkitError("coordinates must be nonnegative")
        arr.setflags(write=False)

    @classmethod
    def of(cls, values: Iterable, mode: str = FLOAT, *, max_mass: float | None = None,
           tol: float = DEFAULT_TOL) -> "ProbVector":
        """Build a vector from numbers (or rational strings in exact mode).

        With ``max_mass`` set, reject vectors whose total exceeds it by more
        than ``tol``.
        """
        if mode not in MODES:
            raise TrumpkitError(f"unknown mode {mode!r}")
        values = list(values)
        if mode == EXACT:
            arr = np.empty(len(values), dtype=object)
            arr[:] = [to_fraction(v) for v in values]
        else:
            arr = np.array([_to_float(v) for v in values], dtype=float)
            if not np.all(np.isfinite(arr)):
                raise TrumpkitError("non-finite coordinate")
        vec = cls(arr, exact=(mode == EXACT))
        if max_mass is not None and float(vec.mass) > max_mass + tol:
            raise TrumpkitError(f"total mass {float(vec.mass)!r} exceeds {max_mass}")
        return vec

    @property
    def mode(self) -> str:
        return EXACT if self.exact else FLOAT

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def mass(self):
        if self.exact:
            return sum(self.coords, Fraction(0))
        return float(np.sum(self.coords))

    def support(self) -> "ProbVector":
        """The strictly positive coordinates, order preserved."""
        return ProbVector(self.coords[self.coords > 0] if not self.exact
                          else _obj([c for c in self.coords if c > 0]), self.exact)

    @property
    def support_size(self) -> int:
        return sum(1 for c in self.coords if c > 0)

    @property
    def max(self):
        return max(self.coords) if len(self.coords) else 0

    @property
    def min(self):
        """Smallest coordinate, zeros included."""
        return min(self.coords) if len(self.coords) else 0

    @property
    def min_positive(self):
        pos = [c for c in self.coords if c > 0]
        return min(pos) if pos else 0

    def to_mode(self, mode: str) -> "ProbVector":
        if mode == self.mode:
            return self
        if mode == EXACT:
            return ProbVector.of(list(self.coords), EXACT)
        return ProbVector(np.array([float(c) for c in self.coords], dtype=float), False)

    def as_floats(self) -> np.ndarray:
        if self.exact:
            return np.array([float(c) for c in self.coords], dtype=float)
        return self.coords

    def padded(self, d: int) -> "ProbVector":
        if d <= len(self):
            return self
        zero = Fraction(0) if self.exact else 0.0
        extra = _obj([zero] * (d - len(self))) if self.exact else np.zeros(d - len(self))
        return ProbVector(np.concatenate([self.coords, extra]), self.exact)

    def scaled(self, c) -> "ProbVector":
        if self.exact:
            c = to_fraction(c)
            return ProbVector(_obj([v * c for v in self.coords]), True)
        return ProbVector(self.coords * float(c), False)

    def _key(self) -> tuple:
        vals = list(self.coords)
        while vals and vals[-1] == 0:
            vals.pop()
        return tuple(vals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbVector):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coords)
        return f"ProbVector([{body}], mode={self.mode!r})"

    def tolist(self) -> list:
        return list(self.coords)


def _obj(values: Sequence) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    arr[:] = list(values)
    return arr


def common_mode(*vectors: ProbVector, mode: str | None = None) -> str:
    """Mode a binary operation runs in: exact only if every input is exact."""
    if mode is not None:
        if mode not in MODES:
            raise TrumpkitError(f"unknown mode {mode!r}")
        return mode
    return EXACT if all(v.exact for v in vectors) else FLOAT


def aligned(x: ProbVector, y: ProbVector, mode: str | None = None
            ) -> tuple[ProbVector, ProbVector]:
    """Convert both vectors to a shared mode and pad them to equal length."""
    m = common_mode(x, y, mode=mode)
    x, y = x.to_mode(m), y.to_mode(m)
    d = max(len(x), len(y))
    return x.padded(d), y.padded(d)


def sort_desc(v: ProbVector) -> ProbVector:
    if v.exact:
        return ProbVector(_obj(sorted(v.coords, reverse=True)), True)
    return ProbVector(np.sort(v.coords)[::-1].copy(), False)


def tensor(a: ProbVector, b: ProbVector, *, cap: int = DIMENSION_CAP,
           sort: bool = True) -> ProbVector:
    """All pairwise products ``a_i * b_j``, sorted descending by default."""
    if len(a) * len(b) > cap:
        raise CapExceeded(f"tensor product of dimension {len(a) * len(b)} exceeds cap {cap}")
    m = common_mode(a, b)
    a, b = a.to_mode(m), b.to_mode(m)
    prod = np.multiply.outer(a.coords, b.coords).ravel()
    out = ProbVector(prod, a.exact)
    return sort_desc(out) if sort else out


def tensor_power(a: ProbVector, n: int, *, cap: int = DIMENSION_CAP) -> ProbVector:
    """``a`` tensored with itself ``n`` times; ``n = 0`` gives the unit vector (1)."""
    if n < 0:
        raise TrumpkitError("tensor power must be nonnegative")
    if len(a) ** n > cap:
        raise CapExceeded(f"tensor power of dimension {len(a) ** n} exceeds cap {cap}")
    out = ProbVector.of([1], a.mode)
    for _ in range(n):
        out = tensor(out, a, cap=cap, sort=False)
    return sort_desc(out)


def direct_sum(*parts: ProbVector) -> ProbVector:
    """Concatenation of the given vectors."""
    parts = [p for p in parts if len(p)]
    if not parts:
        return ProbVector(np.zeros(0), False)
    m = common_mode(*parts)
    parts = [p.to_mode(m) for p in parts]
    return ProbVector(np.concatenate([p.coords for p in parts]), m == EXACT)


def _log_sum_pow(vals: np.ndarray, p: float) -> float:
    """``log(sum(vals ** p))`` for strictly positive ``vals``, overflow-safe."""
    logs = p * np.log(vals)
    top = np.max(logs)
    return float(top + np.log(np.sum(np.exp(logs - top))))


def lp_norm(v: ProbVector, p: float) -> float:
    """``(sum v_i**p) ** (1/p)``; ``p = inf`` gives the max coordinate.

    For ``p < 1`` only strictly positive coordinates enter the sum
    (see :func:`lp_norm_support` to also get the support size).
    """
    return lp_norm_support(v, p)[0]


def lp_norm_support(v: ProbVector, p: float) -> tuple[float, int]:
    """``lp_norm`` together with the number of coordinates summed over."""
    if p == 0:
        raise TrumpkitError("p = 0 is not allowed")
    vals = v.as_floats()
    pos = vals[vals > 0]
    if math.isinf(p):
        if p < 0:
            return (float(np.min(pos)) if len(pos) else 0.0), len(pos)
        return (float(np.max(vals)) if len(vals) else 0.0), len(vals)
    if len(pos) == 0:
        return (0.0 if p > 0 else math.inf), 0
    if p == 1:
        return float(np.sum(pos)), len(vals)
    lse = _log_sum_pow(pos, p)
    used = len(vals) if p >= 1 else len(pos)
    return math.exp(lse / p), used


def log_lp_norm(v: ProbVector, p: float) -> float:
    """``log lp_norm(v, p)`` without the round trip through ``exp``."""
    if p == 0:
        raise TrumpkitError("p = 0 is not allowed")
    vals = v.as_floats()
    pos = vals[vals > 0]
    if len(pos) == 0:
        return -math.inf if p > 0 else math.inf
    if math.isinf(p):
        return float(np.log(np.max(pos) if p > 0 else np.min(pos)))
    return _log_sum_pow(pos, p) / p


@dataclass(frozen=True)
class PMax:
    value: float
    degenerate: bool


def p_max(x: ProbVector, y: ProbVector) -> PMax:
    """Exponent beyond which ``||x||_p <= ||y||_p`` follows from lower exponents.

    Equals ``log d / (log y_max - log x_max)`` with ``d`` the common padded
    dimension; infinite (and flagged degenerate) unless ``x_max < y_max``.
    """
    x, y = aligned(x, y, FLOAT)
    d = len(x)
    xm, ym = float(x.max), float(y.max)
    if not xm < ym or d <= 1:
        return PMax(math.inf, True)
    return PMax(math.log(d) / (math.log(ym) - math.log(xm)), False)


@dataclass(frozen=True, eq=False)
class WeightedSpectrum:
    """Run-length compressed decreasing rearrangement of a positive vector.

    Entry ``i`` stands for ``counts[i]`` copies of the value
    ``exp(log_values[i])``. Values are stored as logs because tensor powers
    reach magnitudes far below the float range; in exact mode
    ``exact_values`` carries the same values as Fractions and is what
    comparisons use. Counts are Python ints and may be astronomically large.
    """

    log_values: tuple
    counts: tuple
    exact_values: tuple | None = None

    def __post_init__(self):
        if len(self.log_values) != len(self.counts):
            raise TrumpkitError("values and counts differ in length")
        if any(c < 1 for c in self.counts):
            raise TrumpkitError("multiplicities must be positive")
        if any(a <= b for a, b in zip(self.log_values, self.log_values[1:])):
            if self.exact_values is None or any(
                    a <= b for a, b in zip(self.exact_values, self.exact_values[1:])):
                raise TrumpkitError("spectrum values must be strictly decreasing")

    @property
    def exact(self) -> bool:
        return self.exact_values is not None

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def values(self) -> tuple:
        if self.exact:
            return self.exact_values
        return tuple(math.exp(v) for v in self.log_values)

    @property
    def entries(self) -> list[tuple]:
        return list(zip(self.values, self.counts))

    @property
    def total_count(self) -> int:
        return sum(self.counts)

    @property
    def total_mass(self):
        if self.exact:
            return sum((v * c for v, c in zip(self.exact_values, self.counts)), Fraction(0))
        return math.fsum(entry_mass(lv, c) for lv, c in zip(self.log_values, self.counts))

    @classmethod
    def from_vector(cls, v: ProbVector) -> "WeightedSpectrum":
        """Group the positive coordinates of ``v`` into runs of equal value."""
        pos = [c for c in v.coords if c > 0]
        if v.exact:
            groups: dict = {}
            for c in pos:
                groups[c] = groups.get(c, 0) + 1
            vals = sorted(groups, reverse=True)
            return cls(tuple(math.log(c) for c in vals),
                       tuple(groups[c] for c in vals), tuple(vals))
        logs = sorted((math.log(c) for c in pos), reverse=True)
        return cls.from_log_pairs([(lv, 1) for lv in logs])

    @classmethod
    def from_log_pairs(cls, pairs: Iterable[tuple[float, int]],
                       rtol: float = MERGE_RTOL) -> "WeightedSpectrum":
        """Sort ``(log value, count)`` pairs and merge values equal within ``rtol``."""
        pairs = sorted(pairs, key=lambda p: -p[0])
        logs: list[float] = []
        counts: list[int] = []
        head = None
        for lv, c in pairs:
            if c == 0:
                continue
            if head is not None and head - lv <= rtol:
                counts[-1] += c
            else:
                logs.append(lv)
                counts.append(c)
                head = lv
        return cls(tuple(logs), tuple(counts))

    @classmethod
    def from_exact_pairs(cls, pairs: Iterable[tuple[Fraction, int]]) -> "WeightedSpectrum":
        groups: dict = {}
        for v, c in pairs:
            if c and v > 0:
                groups[v] = groups.get(v, 0) + c
        vals = sorted(groups, reverse=True)
        return cls(tuple(_frac_log(v) for v in vals), tuple(groups[v] for v in vals), tuple(vals))

    def to_exact(self) -> "WeightedSpectrum":
        if self.exact:
            return self
        raise TrumpkitError("float spectra cannot be promoted to exact; rebuild from exact inputs")

    def head(self, count: int) -> "WeightedSpectrum":
        """The largest ``count`` coordinates as a spectrum."""
        logs, counts, exact = [], [], []
        left = count
        for i, c in enumerate(self.counts):
            if left <= 0:
                break
            take = min(c, left)
            logs.append(self.log_values[i])
            counts.append(take)
            if self.exact:
                exact.append(self.exact_values[i])
            left -= take
        return WeightedSpectrum(tuple(logs), tuple(counts), tuple(exact) if self.exact else None)

    def expand(self, cap: int = DIMENSION_CAP) -> ProbVector:
        """The decreasing vector this spectrum compresses."""
        total = self.total_count
        if total > cap:
            raise CapExceeded(f"expanding {total} coordinates exceeds cap {cap}")
        if self.exact:
            out = []
            for v, c in zip(self.exact_values, self.counts):
                out.extend([v] * c)
            return ProbVector(_obj(out), True)
        return ProbVector(np.repeat(np.exp(np.array(self.log_values, dtype=float)),
                                    np.array(self.counts, dtype=np.int64)), False)

    def same_entries(self, other: "WeightedSpectrum", rtol: float = MERGE_RTOL) -> bool:
        if self.counts != other.counts:
            return False
        if self.exact and other.exact:
            return self.exact_values == other.exact_values
        return all(abs(a - b) <= rtol * max(1.0, abs(a))
                   for a, b in zip(self.log_values, other.log_values))


def entry_mass(log_value: float, count: int) -> float:
    """``exp(log_value) * count`` for counts beyond float range."""
    return math.exp(log_value + math.log(count))


def _frac_log(v: Fraction) -> float:
    # math.log handles big ints; the quotient of two logs keeps tiny values finite
    return math.log(v.numerator) - math.log(v.denominator)
