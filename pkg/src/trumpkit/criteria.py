"""Norm-family condition reports, Rényi entropies and Ky Fan norms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .majorize import DEFAULT_P_GRID, MajorizationVerdict, submajorizes
from .vecspace import DEFAULT_TOL, ProbVector, TrumpkitError, aligned, lp_norm_support, sort_desc

GRID_GE1 = DEFAULT_P_GRID
GRID_01 = (0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)
GRID_NEG = (-0.1, -0.25, -0.5, -1.0, -2.0, -4.0, -8.0)


class VerdictClass(str, Enum):
    PASSES_ALL = "passes-all"
    FAILS_1 = "fails-1"
    FAILS_2_OR_3 = "fails-2-or-3"
    DEGENERATE_SUPPORT = "degenerate-support"


@dataclass(frozen=True)
class ConditionRow:
    p: float
    norm_x: float
    norm_y: float
    ok: bool


def _rows(x, y, grid, want_le: bool, tol: float) -> list[ConditionRow]:
    rows = []
    for p in grid:
        nx, _ = lp_norm_support(x, p)
        ny, _ = lp_norm_support(y, p)
        if want_le:
            ok = nx <= ny * (1 + tol)
        else:
            ok = nx * (1 + tol) >= ny
        rows.append(ConditionRow(float(p), nx, ny, ok))
    return rows


@dataclass(frozen=True)
class ConjectureReport:
    """The three norm-family conditions.

    Condition 1 (``p >= 1``: ``||x||_p <= ||y||_p``) is equivalent to ``x``
    lying in the closure of vectors trumped by ``y`` with finite catalysts
    of any size. Conditions 2 (``0 < p <= 1``) and 3 (``p < 0``) reverse
    the inequality; they are computed over positive supports, so when the
    support sizes differ the report is marked support-sensitive.
    """

    cond1: tuple
    cond2: tuple
    cond3: tuple
    support_sizes: tuple[int, int]

    @property
    def cond1_holds(self) -> bool:
        return all(r.ok for r in self.cond1)

    @property
    def cond2_holds(self) -> bool:
        return all(r.ok for r in self.cond2)

    @property
    def cond3_holds(self) -> bool:
        return all(r.ok for r in self.cond3)

    @property
    def support_sensitive(self) -> bool:
        return self.support_sizes[0] != self.support_sizes[1]

    @property
    def verdict_class(self) -> VerdictClass:
        if not self.cond1_holds:
            return VerdictClass.FAILS_1
        if self.support_sensitive:
            return VerdictClass.DEGENERATE_SUPPORT
        if not (self.cond2_holds and self.cond3_holds):
            return VerdictClass.FAILS_2_OR_3
        return VerdictClass.PASSES_ALL

    def to_dict(self) -> dict:
        def table(rows):
            return [{"p": r.p, "normX": r.norm_x, "normY": r.norm_y, "ok": r.ok} for r in rows]

        return {
            "verdictClass": self.verdict_class.value,
            "cond1": self.cond1_holds,
            "cond2": self.cond2_holds,
            "cond3": self.cond3_holds,
            "supportSizes": list(self.support_sizes),
            "supportSensitive": self.support_sensitive,
            "zeroConvention": "norms with p < 1 sum over strictly positive coordinates only",
            "tables": {"cond1": table(self.cond1), "cond2": table(self.cond2),
                       "cond3": table(self.cond3)},
        }


def conjecture_report(x: ProbVector, y: ProbVector, grid_ge1=GRID_GE1, grid_01=GRID_01,
                      grid_neg=GRID_NEG, *, tol: float = DEFAULT_TOL) -> ConjectureReport:
    if any(p < 1 for p in grid_ge1) or any(not 0 < p <= 1 for p in grid_01) or any(
            p >= 0 for p in grid_neg):
        raise TrumpkitError("grid values outside their condition's range")
    x, y = aligned(x, y, "float")
    return ConjectureReport(
        tuple(_rows(x, y, grid_ge1, True, tol)),
        tuple(_rows(x, y, grid_01, False, tol)),
        tuple(_rows(x, y, grid_neg, False, tol)),
        (x.support_size, y.support_size),
    )


def renyi_entropy(x: ProbVector, p: float) -> float:
    """Rényi entropy in bits, ``log2(sum x_i**p) / (1 - p)``.

    ``p = 1`` is the Shannon entropy and ``p = inf`` the min-entropy. For
    ``p < 0`` only positive coordinates are summed.
    """
    if p == 0:
        raise TrumpkitError("p = 0 is not allowed")
    vals = x.as_floats()
    pos = vals[vals > 0]
    if len(pos) == 0:
        raise TrumpkitError("vector has no positive coordinate")
    if p == 1:
        return float(-np.sum(pos * np.log2(pos)))
    if math.isinf(p):
        return float(-np.log2(np.max(pos) if p > 0 else np.min(pos)))
    logs = p * np.log2(pos)
    top = np.max(logs)
    return float((top + np.log2(np.sum(np.exp2(logs - top)))) / (1 - p))


def oriented_renyi(x: ProbVector, p: float) -> float:
    """``-sign(p) * renyi_entropy(x, p)``.

    With this orientation the three norm conditions read as the single
    family ``oriented_renyi(x, p) <= oriented_renyi(y, p)``.
    """
    return -math.copysign(1.0, p) * renyi_entropy(x, p)


def entropy_form_agrees(report: ConjectureReport, x: ProbVector, y: ProbVector, *,
                        tol: float = DEFAULT_TOL) -> list[tuple[float, bool, bool]]:
    """For each grid point, the norm verdict next to the oriented-entropy verdict.

    ``p = 1`` is skipped: both norms equal the total mass there, a case the
    entropy form does not encode.
    """
    out = []
    for row in report.cond1 + report.cond2 + report.cond3:
        if row.p == 1:
            continue
        hx, hy = oriented_renyi(x, row.p), oriented_renyi(y, row.p)
        out.append((row.p, row.ok, hx <= hy + tol * max(1.0, abs(hy))))
    return out


def kyfan_norm(s: ProbVector, k: int) -> float:
    """Sum of the ``k`` largest entries."""
    if k < 1:
        raise TrumpkitError("k must be positive")
    vals = sort_desc(s).as_floats()
    if k > len(vals):
        vals = np.concatenate([vals, np.zeros(k - len(vals))])
    return float(np.sum(vals[:k]))


def kyfan_dominates(s_a: ProbVector, s_b: ProbVector, *, mode: str | None = None,
                    tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Every Ky Fan norm of ``s_a`` is at most that of ``s_b``."""
    return submajorizes(s_a, s_b, mode=mode, tol=tol)
