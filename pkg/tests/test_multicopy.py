import math
from fractions import Fraction

import numpy as np
import pytest

from trumpkit import ProbVector, find_min_copies, majorizes, mlocc_check, power_spectrum
from trumpkit.multicopy import (compositions, count_compositions, naive_mlocc_check,
                                search_min_copies)
from trumpkit.vecspace import CapExceeded, sort_desc, tensor_power

from conftest import random_rational


def vec(*vals, mode="float"):
    return ProbVector.of(vals, mode)


def test_compositions_count():
    for n in range(5):
        for parts in range(1, 4):
            got = list(compositions(n, parts))
            assert len(got) == len(set(got)) == count_compositions(n, parts)
            assert all(sum(c) == n for c in got)


def test_uniform_power():
    s = power_spectrum(vec(0.5, 0.5, mode="exact"), 3).spectrum
    assert s.entries == [(Fraction(1, 8), 8)]


def test_binomial_power():
    s = power_spectrum(vec(0.6, 0.4, mode="exact"), 2).spectrum
    assert s.entries == [(Fraction(9, 25), 1), (Fraction(6, 25), 2), (Fraction(4, 25), 1)]
    f = power_spectrum(vec(0.6, 0.4), 2).spectrum
    assert f.counts == (1, 2, 1)
    np.testing.assert_allclose(f.values, [0.36, 0.24, 0.16], rtol=1e-14)


def test_spectrum_matches_expanded_power():
    rng = np.random.default_rng(5)
    for _ in range(40):
        x = random_rational(rng, int(rng.integers(1, 5)))
        n = int(rng.integers(1, 5))
        assert power_spectrum(x, n).spectrum.expand() == sort_desc(tensor_power(x, n))


def test_power_spectrum_cap():
    with pytest.raises(CapExceeded):
        power_spectrum(vec(0.1, 0.2, 0.3, 0.4), 50, cap=100)


def test_jp_copies(quad, quad_exact):
    v2 = mlocc_check(*quad_exact, 2)
    assert not v2.holds and v2.first_violation == 4 and v2.gap == Fraction(3, 200)
    assert mlocc_check(*quad_exact, 3).holds
    assert naive_mlocc_check(*quad_exact, 3).holds
    assert not naive_mlocc_check(*quad_exact, 2).holds
    assert find_min_copies(*quad, 5) == 3
    assert find_min_copies(*quad_exact, 5) == 3


def test_single_copy_reduces_to_majorizes(quad, triple):
    for x, y in (quad, triple, (vec(0.5, 0.5), vec(0.7, 0.3))):
        assert mlocc_check(x, y, 1).holds == majorizes(x, y).holds


def test_already_majorized_needs_one_copy():
    assert find_min_copies(vec(0.5, 0.5), vec(0.7, 0.3)) == 1


def test_triple_never_within_eight(triple):
    s = search_min_copies(*triple, 8)
    assert s.n is None
    assert sorted(s.violations) == list(range(1, 9))


def test_norm_filter_short_circuits():
    s = search_min_copies(vec(0.6, 0.4), vec(0.5, 0.5), 10)
    assert s.n is None and "norm filter" in s.reason and s.n_reached == 0


def test_workers_do_not_change_answer(quad):
    a = search_min_copies(*quad, 6, workers=1)
    b = search_min_copies(*quad, 6, workers=4)
    assert (a.n, a.violations) == (b.n, b.violations)


def test_compressed_matches_naive_random():
    rng = np.random.default_rng(6)
    for _ in range(60):
        d = int(rng.integers(2, 4))
        x, y = random_rational(rng, d), random_rational(rng, d)
        n = int(rng.integers(1, 4))
        for weak in (True, False):
            assert mlocc_check(x, y, n, weak=weak).holds == \
                naive_mlocc_check(x, y, n, weak=weak).holds


def test_weak_monotone_in_n_on_strict_instances():
    from trumpkit.closure import shave
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(200):
        x = ProbVector.of(rng.dirichlet(np.ones(3)))
        y = ProbVector.of(rng.dirichlet(np.ones(3)))
        xp = shave(x, float(x.min_positive) / 2)
        n = find_min_copies(xp, y, 8, weak=True)
        if n is None or n > 6:
            continue
        checked += 1
        for m in (n + 1, n + 2):
            assert mlocc_check(xp, y, m, weak=True).holds
    assert checked > 20


def test_deficient_defaults_to_weak():
    x = vec(0.5, 0.3)
    assert mlocc_check(x, vec(0.6, 0.4), 2).holds
    assert not mlocc_check(x, vec(0.6, 0.4), 2, weak=False).holds


def test_one_copy_iff_majorized():
    rng = np.random.default_rng(14)
    for _ in range(100):
        x, y = random_rational(rng, 3), random_rational(rng, 3)
        assert (find_min_copies(x, y, 2) == 1) == majorizes(x, y).holds
