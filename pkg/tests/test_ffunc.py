import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobispec.errors import LengthExceededError, NonConvergenceError
from jacobispec.ffunc import (
    BRUTEFORCE_CAP,
    BilateralSeq,
    TailSeq,
    cross_product_gap,
    f_bilateral,
    f_bruteforce,
    f_finite,
    f_generalized_split,
    f_slice,
    f_suffixes,
    f_tail,
    f_tail_extrapolated,
    f_tail_suffixes,
    pair_sum,
)
from jacobispec.specfun import poch_q_inf

from oracle_values import BESSEL_TAIL, GEOMETRIC_TAIL

disc = st.builds(
    lambda r, t: cmath.rect(r, t),
    st.floats(0.0, 1.0),
    st.floats(0.0, 2 * math.pi),
)
seqs = st.lists(disc, min_size=0, max_size=14)


def close(a, b, tol, *scales):
    scale = max([abs(b)] + [abs(s) for s in scales] + [1e-300])
    return abs(a - b) <= tol * scale


# ---- fixed values

def test_empty_is_one():
    assert f_finite([]) == 1
    assert f_bruteforce([]) == 1


def test_single_pair():
    assert f_finite([2, 3]) == -5
    assert f_bruteforce([1j, 1j]) == 2


def test_four_ones():
    assert f_finite([1, 1, 1, 1]) == -1
    assert f_bruteforce([1, 1, 1, 1]) == -1


def test_single_entry_is_one():
    assert f_finite([7.5]) == 1


def test_slice_conventions():
    xs = [0.3, 0.4, 0.5]
    assert f_slice(xs, 2, 1) == 1
    assert f_slice(xs, 1, -1) == 0
    assert f_slice(xs, 1, 3) == f_finite(xs)
    with pytest.raises(ValueError):
        f_slice(xs, 5, 1)


def test_suffixes_match_finite():
    xs = [0.2, -0.7j, 0.5 + 0.1j, 0.9, -0.3]
    suf = f_suffixes(xs)
    assert len(suf) == 6
    for j in range(6):
        assert close(suf[j], f_finite(xs[j:]), 1e-15)


def test_bruteforce_cap():
    f_bruteforce([0.1] * BRUTEFORCE_CAP)
    with pytest.raises(LengthExceededError):
        f_bruteforce([0.1] * (BRUTEFORCE_CAP + 1))


def test_pair_sum_values():
    assert pair_sum([1, 1, 1, 1]) == 3
    assert pair_sum([]) == 0
    t, w = 0.4, 1.5
    seq = TailSeq(lambda k: t ** (k - 1) * w)
    exact = w * w * t / (1 - t * t)
    assert math.isclose(pair_sum(seq, horizon=200), exact, rel_tol=1e-14)
    with pytest.raises(ValueError):
        pair_sum(seq, horizon=-1)


# ---- tails

def test_zero_tail_is_one():
    assert f_tail(TailSeq(lambda k: 0.0)) == 1
    assert f_bilateral(BilateralSeq(lambda k: 0.0)) == 1


@pytest.mark.parametrize("tw,expected", GEOMETRIC_TAIL)
def test_geometric_tail_against_series(tw, expected):
    t, w = tw
    val = f_tail(TailSeq(lambda k: t ** (k - 1) * w))
    assert close(val, expected, 1e-13)


@pytest.mark.parametrize("nuw,expected", BESSEL_TAIL)
def test_bessel_tail_against_series(nuw, expected):
    nu, w = nuw
    val = f_tail_extrapolated(TailSeq(lambda k: w / (nu + k)))
    assert close(val, expected, 1e-12)


def test_plain_tail_rejects_slow_decay():
    # pair sum of 1/k decays like 1/N, far too slow for the exponential bound
    with pytest.raises(NonConvergenceError):
        f_tail(TailSeq(lambda k: 0.5 / k), max_horizon=1 << 12)


def test_infinite_declared_pair_sum_is_rejected():
    with pytest.raises(NonConvergenceError):
        f_tail(TailSeq(lambda k: 1.0, pair_sum_bound=math.inf))


def test_tail_suffixes_consistent_with_shifted_tail():
    t, w = 0.6, 0.9 + 0.4j
    gen = lambda k: t ** (k - 1) * w
    suf = f_tail_suffixes(TailSeq(gen), count=3)
    for j in range(4):
        assert close(suf[j], f_tail(TailSeq(gen, k0=1 + j)), 1e-14)


def test_bilateral_finite_support():
    seq = BilateralSeq(lambda k: 1.0 if 1 <= k <= 4 else 0.0)
    assert f_bilateral(seq) == -1


def test_bilateral_wronskian_sequence():
    q, nu, w = 0.5, 0.3, 0.8
    seq = BilateralSeq(lambda k: w * q ** ((nu + k) / 2) / (1 - q ** (nu + k)))
    assert close(f_bilateral(seq), poch_q_inf(-math.sqrt(q) * w * w, q), 1e-12)


def test_bilateral_growing_sequence_fails():
    with pytest.raises(NonConvergenceError):
        f_bilateral(BilateralSeq(lambda k: 1.0), max_horizon=1 << 10)


# ---- properties

@settings(max_examples=300, deadline=None)
@given(seqs)
def test_recurrence_matches_bruteforce(xs):
    assert close(f_finite(xs), f_bruteforce(xs), 1e-12, 1.0)


@settings(max_examples=200, deadline=None)
@given(st.lists(disc, min_size=2, max_size=30))
def test_recurrence_rule(xs):
    rhs = f_finite(xs[1:]) - xs[0] * xs[1] * f_finite(xs[2:])
    assert close(f_finite(xs), rhs, 1e-13, f_finite(xs[1:]), xs[0] * xs[1] * f_finite(xs[2:]))


@settings(max_examples=200, deadline=None)
@given(st.lists(disc, min_size=0, max_size=30))
def test_reversal_symmetry(xs):
    assert close(f_finite(xs), f_finite(xs[::-1]), 1e-13, 1.0)


@settings(max_examples=200, deadline=None)
@given(st.lists(disc, min_size=2, max_size=25), st.data())
def test_generalized_split(xs, data):
    n = data.draw(st.integers(1, len(xs) - 1))
    assert close(f_finite(xs), f_generalized_split(xs, n), 1e-12, 1.0)


@settings(max_examples=200, deadline=None)
@given(st.lists(disc, min_size=2, max_size=20))
def test_cross_product_identity(xs):
    lhs, rhs = cross_product_gap(xs)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(-3.0, 3.0), st.floats(0.0, 2.0))
def test_tail_approaches_one(t_abs, phase, w_abs):
    # F of the tail starting at n tends to 1 as n grows
    t = cmath.rect(t_abs * 0.9, phase)
    gen = lambda k: t ** (k - 1) * w_abs
    far = f_tail(TailSeq(gen, k0=60))
    assert abs(far - 1) <= max(1e-12, math.expm1(pair_sum(TailSeq(gen, k0=60), 400)) * 1.01)
