import math
from fractions import Fraction

import numpy as np
import pytest

from trumpkit import ProbVector, SearchExhausted, approximate, mlocc_check, pad_with_dust, shave
from trumpkit.closure import dust_bound
from trumpkit.multicopy import power_spectrum
from trumpkit.vecspace import PreconditionError


def vec(*vals, mode="float"):
    return ProbVector.of(vals, mode)


def test_shave_triple(triple, triple_exact):
    xp = shave(triple[0], 0.02)
    np.testing.assert_allclose(xp.coords, [0.4 - 0.02 / 6, 0.4 - 0.02 / 6, 0.2 - 0.02 / 6])
    assert float(xp.mass) == pytest.approx(0.99)
    xe = shave(triple_exact[0], "0.02")
    assert xe.mass == Fraction(99, 100)
    assert xe[0] == Fraction(119, 300)


def test_shave_bounds():
    x = vec(0.4, 0.4, 0.2)
    with pytest.raises(PreconditionError):
        shave(x, 2 * 3 * 0.2)
    with pytest.raises(PreconditionError):
        shave(x, 0)
    np.testing.assert_allclose(shave(x, 1e-12).coords, x.coords, atol=1e-12)


def test_shave_leaves_zeros():
    xp = shave(vec(0.5, 0.5, 0), 0.1)
    assert xp[2] == 0 and xp[0] == pytest.approx(0.475)


def test_dust_bound_formula(triple_exact):
    x, y = triple_exact
    xp = shave(x, "0.02")
    n = 3
    expected = min(xp.min_positive ** n, y.min_positive ** n) / xp.max ** (n - 1)
    assert dust_bound(xp, y, n) == expected


def test_padding_triple(triple_exact):
    x, y = triple_exact
    xp = shave(x, "0.02")
    pad = pad_with_dust(xp, y, 3, "0.02")
    assert pad.delta * pad.D == Fraction(1, 100)
    assert pad.delta <= dust_bound(xp, y, 3)
    assert pad.D == math.ceil(Fraction(1, 100) / dust_bound(xp, y, 3))
    assert pad.top_block_preserved
    assert pad.verdict.holds
    assert pad.x_eps.total_mass == 1


def test_padding_requires_weak_witness(triple):
    xp = shave(triple[0], 0.02)
    with pytest.raises(PreconditionError):
        pad_with_dust(xp, triple[1], 1, 0.02)


def test_approximate_triple(triple):
    r = approximate(*triple, 0.02, 64)
    assert r.verified and r.exact_verified
    assert r.n == 3
    assert r.l1_error <= 0.02 + 1e-9
    assert r.top_block_preserved
    # witness re-checked independently
    X = power_spectrum(r.x_eps, r.n).spectrum
    Y = power_spectrum(triple[1], r.n).spectrum
    from trumpkit import submajorizes_spectra
    assert submajorizes_spectra(X, Y).holds


def test_approximate_exact_mode(triple_exact):
    r = approximate(*triple_exact, "0.02", 16)
    assert r.verified and r.n == 3
    assert r.delta * r.D == Fraction(1, 100)


def test_smaller_eps_needs_more_copies(triple):
    ns = [approximate(*triple, eps, 64, exact_check=False).n for eps in (0.1, 0.02, 0.005)]
    assert ns == sorted(ns) and ns[0] < ns[-1]


def test_already_majorized_takes_one_copy():
    r = approximate(vec(0.5, 0.5), vec(0.7, 0.3), 0.01)
    assert r.n == 1 and r.verified


def test_rejects_failing_norm_condition():
    with pytest.raises(PreconditionError):
        approximate(vec(0.6, 0.4), vec(0.5, 0.5), 0.01)


def test_search_exhausted_carries_hint(triple):
    with pytest.raises(SearchExhausted) as info:
        approximate(*triple, 0.001, 3)
    assert info.value.search is not None
    assert info.value.search.n is None


def test_large_grain_count_stays_exact():
    x = vec(0.664, 0.242, 0.085, 0.009)
    y = vec(0.736, 0.142, 0.103, 0.019)
    r = approximate(x, y, 0.008, 16)
    assert r.n == 5 and r.D > 10**6
    assert r.verified and r.exact_verified
    assert r.to_dict()["D"] == str(r.D)


def test_random_instances_verify():
    rng = np.random.default_rng(10)
    done = 0
    while done < 40:
        d = int(rng.integers(2, 5))
        x = ProbVector.of(rng.dirichlet(np.ones(d)))
        y = ProbVector.of(rng.dirichlet(np.ones(d)))
        eps = float(x.min_positive) * rng.uniform(0.1, 1)
        try:
            r = approximate(x, y, eps, 16, hint=False)
        except (PreconditionError, SearchExhausted):
            continue
        done += 1
        assert r.verified and r.exact_verified is not False
        assert r.l1_error <= eps * (1 + 1e-9)
        assert mlocc_check(r.x_prime, y, r.n, weak=True).holds


@pytest.mark.parametrize("eps", [0.1, 0.05, 0.02, 0.01])
def test_l1_error_equals_eps(triple, eps):
    r = approximate(*triple, eps, 64, exact_check=False)
    assert r.l1_error == pytest.approx(eps, rel=1e-9)
