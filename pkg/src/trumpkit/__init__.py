"""Majorization, multi-copy dominance and catalysis for finitely supported probability vectors."""

from .catalysis import (CatalystWitness, build_catalyst, catalysis_obstructions,
                        geometric_catalyst, verify_catalysis)
from .closure import ApproximationResult, SearchExhausted, approximate, pad_with_dust, shave
from .criteria import (conjecture_report, kyfan_dominates, kyfan_norm, oriented_renyi,
                       renyi_entropy)
from .ldp import (conditioned_view, cramer_transform, cumulant, finite_tail, limit_profiles,
                  predict_copies)
from .majorize import (MajorizationVerdict, majorizes, schur_test, submajorizes,
                       submajorizes_spectra, tail_dominates)
from .multicopy import find_min_copies, mlocc_check, power_spectrum, search_min_copies
from .vecspace import (CapExceeded, PreconditionError, ProbVector, TrumpkitError,
                       WeightedSpectrum, direct_sum, lp_norm, p_max, sort_desc, tensor)

__version__ = "0.1.0"

__all__ = [
    "ApproximationResult", "CapExceeded", "CatalystWitness", "MajorizationVerdict",
    "PreconditionError", "ProbVector", "SearchExhausted", "TrumpkitError", "WeightedSpectrum",
    "approximate", "build_catalyst", "catalysis_obstructions", "conditioned_view",
    "conjecture_report", "cramer_transform", "cumulant", "direct_sum", "find_min_copies",
    "finite_tail", "geometric_catalyst", "kyfan_dominates", "kyfan_norm", "limit_profiles",
    "lp_norm", "majorizes", "mlocc_check", "oriented_renyi", "p_max", "pad_with_dust",
    "power_spectrum", "predict_copies", "renyi_entropy", "schur_test", "search_min_copies",
    "shave", "sort_desc", "submajorizes", "submajorizes_spectra", "tail_dominates", "tensor",
    "verify_catalysis",
]
