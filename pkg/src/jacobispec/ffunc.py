"""The characteristic functional F on finite, one-sided and two-sided sequences.

For a sequence x, F(x) is the alternating sum over all sets of disjoint
adjacent pairs (k, k+1) of the products x_k x_{k+1}.  Everything here is
computed with the backward three-term recurrence

    F_j = F_{j+1} - x_j x_{j+1} F_{j+2},   F_{n+1} = F_{n+2} = 1,

except :func:`f_bruteforce`, which enumerates the index tuples literally and
serves as an independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .errors import LengthExceededError, NonConvergenceError

BRUTEFORCE_CAP = 20
DEFAULT_TOL = 1e-14
DEFAULT_MAX_HORIZON = 1 << 20
_EPS = 2.0 ** -52


@dataclass(frozen=True)
class TailSeq:
    """Lazily generated sequence ``x_k`` for ``k >= k0``.

    ``pair_sum_bound`` is an optional precomputed value of the full pair sum
    ``sum_{k>=k0} |x_k x_{k+1}|``; an infinite value is rejected up front.
    ``tail_bound(N)``, when given, must bound ``sum_{k>=N} |x_k x_{k+1}|`` and
    replaces the look-ahead estimate used for truncation.
    """

    generator: Callable[[int], complex]
    k0: int = 1
    pair_sum_bound: Optional[float] = None
    tail_bound: Optional[Callable[[int], float]] = None


@dataclass(frozen=True)
class BilateralSeq:
    """Sequence ``x_k`` indexed by all integers."""

    generator: Callable[[int], complex]
    tail_bound: Optional[Callable[[int, int], float]] = None


def f_suffixes(xs: Sequence[complex]) -> list[complex]:
    """Return ``[F(x_1..x_n), F(x_2..x_n), ..., F(x_n), F(empty)]``."""
    n = len(xs)
    out = [1.0 + 0j] * (n + 1)
    f1, f2 = 1.0 + 0j, 1.0 + 0j  # F_{j+1}, F_{j+2}
    for j in range(n - 1, -1, -1):
        nxt = xs[j + 1] if j + 1 < n else 0.0
        fj = f1 - xs[j] * nxt * f2
        out[j] = fj
        f1, f2 = fj, f1
    return out


def f_finite(xs: Sequence[complex]) -> complex:
    """F(x_1, ..., x_n) in O(n); the empty sequence gives 1."""
    f1, f2 = 1.0 + 0j, 1.0 + 0j
    n = len(xs)
    for j in range(n - 1, -1, -1):
        nxt = xs[j + 1] if j + 1 < n else 0.0
        f1, f2 = f1 - xs[j] * nxt * f2, f1
    return f1


def f_slice(xs: Sequence[complex], lo: int, hi: int) -> complex:
    """F({x_k}_{k=lo}^{hi}) with 1-based inclusive bounds.

    An empty range (``lo == hi + 1``) gives 1 and ``lo == hi + 2`` gives 0,
    the value forced by extending the generalized recurrence.
    """
    if lo == hi + 2:
        return 0.0 + 0j
    if lo > hi + 2:
        raise ValueError(f"invalid range {lo}..{hi}")
    return f_finite(xs[lo - 1:hi])


def _admissible_tuples(n: int):
    # literal nested loops: k_1 >= 0, k_{j+1} >= k_j + 2, k_m + 1 <= n - 1
    def rec(start: int, prefix: tuple[int, ...]):
        yield prefix
        for k in range(start, n - 1):
            yield from rec(k + 2, prefix + (k,))

    return rec(0, ())


def f_bruteforce(xs: Sequence[complex], cap: int = BRUTEFORCE_CAP) -> complex:
    """F by direct enumeration of the defining nested sum.

    Cost grows like the Fibonacci numbers, so inputs are capped at ``cap``.
    """
    n = len(xs)
    if n > cap:
        raise LengthExceededError(f"length {n} exceeds brute-force cap {cap}")
    re_terms, im_terms = [], []
    for tup in _admissible_tuples(n):
        term = complex((-1) ** len(tup))
        for k in tup:
            term *= xs[k] * xs[k + 1]
        re_terms.append(term.real)
        im_terms.append(term.imag)
    return complex(math.fsum(re_terms), math.fsum(im_terms))


def pair_sum(xs: Union[Sequence[complex], TailSeq], horizon: int = 0) -> float:
    """Sum of ``|x_k x_{k+1}|`` over a finite list, or over k0..k0+horizon of a tail."""
    if isinstance(xs, TailSeq):
        if horizon < 0:
            raise ValueError("horizon must be nonnegative")
        vals = [xs.generator(k) for k in range(xs.k0, xs.k0 + horizon + 2)]
    else:
        vals = list(xs)
    return math.fsum(abs(vals[k] * vals[k + 1]) for k in range(len(vals) - 1))


class _Cache:
    """Memoized generator restricted to a contiguous index range."""

    def __init__(self, gen: Callable[[int], complex], start: int):
        self.gen = gen
        self.start = start
        self.vals: list[complex] = []

    def upto(self, stop: int) -> list[complex]:
        while self.start + len(self.vals) < stop:
            self.vals.append(complex(self.gen(self.start + len(self.vals))))
        return self.vals[: stop - self.start]


def _check_bound(seq: TailSeq) -> None:
    if seq.pair_sum_bound is not None and not math.isfinite(seq.pair_sum_bound):
        raise NonConvergenceError("pair sum of the tail is infinite")


def _tail_window(seq: TailSeq, tol: float, max_horizon: int, min_len: int = 0) -> list[complex]:
    """Values x_{k0}..x_{k0+M-1} with the pair sum beyond the window below tol.

    Without ``tail_bound`` the pair sum beyond ``k0 + 2n`` is estimated by the
    pair sum over the preceding block ``[k0 + n, k0 + 2n)``; that block is at
    least as large as the remainder for any tail decaying like ``1/k^2`` or
    faster.
    """
    _check_bound(seq)
    cache = _Cache(seq.generator, seq.k0)
    n = max(32, min_len)
    while True:
        vals = cache.upto(seq.k0 + 2 * n + 1)
        if seq.tail_bound is not None:
            rem = seq.tail_bound(seq.k0 + 2 * n)
        else:
            rem = math.fsum(abs(vals[k] * vals[k + 1]) for k in range(n, 2 * n))
        if math.isfinite(rem) and math.expm1(rem) < tol:
            return vals[: 2 * n]
        if 2 * n >= max_horizon:
            raise NonConvergenceError(
                f"tail pair sum still {rem:.3e} after {2 * n} terms (tol {tol:g})"
            )
        n *= 2


def f_tail(seq: TailSeq, tol: float = DEFAULT_TOL, max_horizon: int = DEFAULT_MAX_HORIZON) -> complex:
    """F({x_k}_{k>=k0}) truncated once exp(tail pair sum) - 1 < tol."""
    return f_finite(_tail_window(seq, tol, max_horizon))


def f_tail_suffixes(
    seq: TailSeq, count: int, tol: float = DEFAULT_TOL, max_horizon: int = DEFAULT_MAX_HORIZON
) -> list[complex]:
    """``[F({x_k}_{k>=k0+j}) for j in range(count + 1)]`` from one backward sweep."""
    vals = _tail_window(seq, tol, max_horizon, min_len=count + 1)
    return f_suffixes(vals)[: count + 1]


def f_tail_suffixes_extrapolated(
    seq: TailSeq, count: int = 0, tol: float = DEFAULT_TOL,
    max_horizon: int = DEFAULT_MAX_HORIZON, depth: int = 8,
) -> list[complex]:
    """Tail suffixes like :func:`f_tail_suffixes`, accelerated for slowly decaying tails.

    Truncations at doubling lengths N are combined by Richardson
    extrapolation in 1/N, which removes the O(1/N^m) truncation errors left
    by tails whose pair products expand in inverse powers of k (for example
    rational or Gamma-ratio sequences).  Tails that already meet the
    exponential bound are returned unextrapolated.
    """
    _check_bound(seq)
    cache = _Cache(seq.generator, seq.k0)
    n = max(32, count + 1)
    prev_row: list = []
    while True:
        vals = cache.upto(seq.k0 + 2 * n + 1)
        if seq.tail_bound is not None:
            rem = seq.tail_bound(seq.k0 + 2 * n)
        else:
            rem = math.fsum(abs(vals[k] * vals[k + 1]) for k in range(n, 2 * n))
        base = f_suffixes(vals[: 2 * n])[: count + 1]
        if math.isfinite(rem) and math.expm1(rem) < tol:
            return base
        row = [base]
        for m in range(1, min(len(prev_row), depth - 1) + 1):
            f = 2.0 ** m
            row.append([(f * a - b) / (f - 1.0) for a, b in zip(row[m - 1], prev_row[m - 1])])
        if prev_row:
            best, last = row[-1], prev_row[min(len(prev_row), len(row)) - 1]
            scale = max(1.0, max(abs(v) for v in best))
            # rounding in a sweep of length N leaves noise of order N eps
            floor = max(tol, 4.0 * _EPS * 2 * n)
            if max(abs(a - b) for a, b in zip(best, last)) < floor * scale:
                return best
        if 2 * n >= max_horizon:
            raise NonConvergenceError(
                f"extrapolated tail not settled after {2 * n} terms (tol {tol:g})"
            )
        prev_row = row
        n *= 2


def f_tail_extrapolated(seq: TailSeq, tol: float = DEFAULT_TOL,
                        max_horizon: int = DEFAULT_MAX_HORIZON) -> complex:
    """F of a one-sided tail with Richardson acceleration in the truncation length."""
    return f_tail_suffixes_extrapolated(seq, 0, tol, max_horizon)[0]


def bilateral_window(
    seq: BilateralSeq, tol: float = DEFAULT_TOL, max_horizon: int = DEFAULT_MAX_HORIZON
) -> tuple[int, list[complex]]:
    """Symmetric window ``[-M, M]`` whose two outer remainders sum below tol.

    Returns the first index and the values on the window.
    """
    n = 32
    while True:
        idx = range(-2 * n, 2 * n + 1)
        vals = [complex(seq.generator(k)) for k in idx]
        if seq.tail_bound is not None:
            rem = seq.tail_bound(-2 * n, 2 * n)
        else:
            # right block [n, 2n) and left block [-2n, -n)
            right = math.fsum(abs(vals[k + 2 * n] * vals[k + 2 * n + 1]) for k in range(n, 2 * n))
            left = math.fsum(abs(vals[k + 2 * n] * vals[k + 2 * n + 1]) for k in range(-2 * n, -n))
            rem = right + left
        if math.isfinite(rem) and math.expm1(rem) < tol:
            return -2 * n, vals
        if 4 * n >= max_horizon:
            raise NonConvergenceError(
                f"bilateral pair sum still {rem:.3e} on window of {4 * n + 1} terms"
            )
        n *= 2


def f_bilateral(
    seq: BilateralSeq, tol: float = DEFAULT_TOL, max_horizon: int = DEFAULT_MAX_HORIZON
) -> complex:
    """F({x_k}_{k in Z}) by symmetric-window truncation."""
    _, vals = bilateral_window(seq, tol, max_horizon)
    return f_finite(vals)


def f_generalized_split(xs: Sequence[complex], n: int) -> complex:
    """Right-hand side of the split rule at position n (1-based, 1 <= n < len)."""
    N2 = len(xs)
    if not 1 <= n < N2:
        raise ValueError("split position out of range")
    return f_slice(xs, 1, n) * f_slice(xs, n + 1, N2) - xs[n - 1] * xs[n] * f_slice(
        xs, 1, n - 1
    ) * f_slice(xs, n + 2, N2)


def cross_product_gap(xs: Sequence[complex]) -> tuple[complex, complex]:
    """Both sides of F(1..n)F(2..n+1) - F(1..n+1)F(2..n) = prod x_k x_{k+1}.

    ``xs`` holds x_1..x_{n+1}.
    """
    n = len(xs) - 1
    lhs = f_slice(xs, 1, n) * f_slice(xs, 2, n + 1) - f_slice(xs, 1, n + 1) * f_slice(xs, 2, n)
    rhs = complex(1.0)
    for k in range(n):
        rhs *= xs[k] * xs[k + 1]
    return lhs, rhs


__all__ = [
    "TailSeq",
    "BilateralSeq",
    "f_finite",
    "f_suffixes",
    "f_slice",
    "f_bruteforce",
    "pair_sum",
    "f_tail",
    "f_tail_suffixes",
    "f_tail_suffixes_extrapolated",
    "f_tail_extrapolated",
    "bilateral_window",
    "f_bilateral",
    "f_generalized_split",
    "cross_product_gap",
]
