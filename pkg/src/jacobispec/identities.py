"""Numerical identity suites.

Each check draws seeded random parameters, evaluates two independent routes
to the same quantity and reports the largest discrepancy.  Suites are plain
lists of checks, grouped by subject, and are what ``jacobispec verify`` runs.
"""
from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import ffunc as ff
from . import models as M
from . import specfun as sf
from . import spectral as S


@dataclass
class CheckRecord:
    name: str
    max_error: float
    tol: float
    cases: int
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _gap(lhs: complex, rhs: complex, *scales: complex) -> float:
    """|lhs - rhs| relative to the largest of |rhs| and the supplied magnitudes."""
    scale = max([abs(rhs)] + [abs(s) for s in scales])
    diff = abs(lhs - rhs)
    if scale == 0.0:
        return diff
    return diff / scale


def _disc(rng: np.random.Generator, radius: float = 1.0) -> complex:
    r = radius * math.sqrt(rng.random())
    return complex(cmath.rect(r, 2 * math.pi * rng.random()))


def _record(name: str, errors: list[float], tol: float, detail: str = "") -> CheckRecord:
    worst = max(errors) if errors else 0.0
    if any(not math.isfinite(e) for e in errors):
        worst = math.inf
    return CheckRecord(name, float(worst), tol, len(errors), bool(worst <= tol), detail)


# ---------------------------------------------------------------- F functional

def check_oracle_equivalence(rng, cases: int = 1000, max_len: int = 14) -> CheckRecord:
    errs = []
    for i in range(cases):
        n = i % (max_len + 1)
        xs = [_disc(rng) for _ in range(n)]
        errs.append(_gap(ff.f_finite(xs), ff.f_bruteforce(xs)))
    return _record("oracle_equivalence", errs, 1e-12)


def check_recurrence_rule(rng, cases: int = 300) -> CheckRecord:
    errs = []
    for _ in range(cases):
        xs = [_disc(rng, 1.5) for _ in range(int(rng.integers(2, 40)))]
        a, b, c = ff.f_finite(xs), ff.f_finite(xs[1:]), ff.f_finite(xs[2:])
        errs.append(_gap(a, b - xs[0] * xs[1] * c, b, xs[0] * xs[1] * c))
    return _record("recurrence_rule", errs, 1e-13)


def check_reversal(rng, cases: int = 300) -> CheckRecord:
    errs = []
    for _ in range(cases):
        xs = [_disc(rng, 1.5) for _ in range(int(rng.integers(0, 40)))]
        sfx = ff.f_suffixes(xs)
        scale = max(abs(v) for v in sfx)
        errs.append(_gap(ff.f_finite(xs), ff.f_finite(xs[::-1]), scale))
    return _record("reversal_symmetry", errs, 1e-13)


def check_generalized_split(rng, cases: int = 300) -> CheckRecord:
    errs = []
    for _ in range(cases):
        xs = [_disc(rng, 1.5) for _ in range(int(rng.integers(2, 30)))]
        n = int(rng.integers(1, len(xs)))
        whole = ff.f_finite(xs)
        left = ff.f_slice(xs, 1, n) * ff.f_slice(xs, n + 1, len(xs))
        errs.append(_gap(ff.f_generalized_split(xs, n), whole, left))
    return _record("generalized_split", errs, 1e-12)


def check_product_identity(rng, cases: int = 300) -> CheckRecord:
    """Four-block product identity, finite form and one-sided infinite form."""
    errs = []
    for i in range(cases):
        ell = int(rng.integers(2, 25))
        p = int(rng.integers(2, ell + 1))
        r = int(rng.integers(p - 1, ell))
        if i % 2 == 0:
            xs = [_disc(rng) for _ in range(ell)]
            fs = lambda lo, hi: ff.f_slice(xs, lo, hi)  # noqa: E731
            a = fs(1, r) * fs(p, ell)
            b = fs(1, ell) * fs(p, r)
            prod = complex(1.0)
            for j in range(p - 1, r + 1):
                prod *= xs[j - 1] * xs[j]
            rhs = prod * fs(1, p - 2) * fs(r + 2, ell)
        else:
            head = [_disc(rng) for _ in range(ell + 1)]

            def gen(k: int, head=head) -> complex:
                return head[k - 1] if k <= len(head) else head[-1] * 0.6 ** (k - len(head))

            def tail(k0: int) -> complex:
                return ff.f_tail(ff.TailSeq(gen, k0=k0), tol=1e-16)

            xs = [gen(k) for k in range(1, r + 3)]
            a = ff.f_slice(xs, 1, r) * tail(p)
            b = ff.f_slice(xs, p, r) * tail(1)
            prod = complex(1.0)
            for j in range(p - 1, r + 1):
                prod *= gen(j) * gen(j + 1)
            rhs = prod * ff.f_slice(xs, 1, p - 2) * tail(r + 2)
        errs.append(_gap(a - b, rhs, a, b))
    return _record("four_block_product", errs, 1e-12)


def check_cross_product(rng, cases: int = 300) -> CheckRecord:
    errs = []
    for _ in range(cases):
        xs = [_disc(rng, 1.2) for _ in range(int(rng.integers(2, 30)))]
        lhs, rhs = ff.cross_product_gap(xs)
        n = len(xs) - 1
        t1 = ff.f_slice(xs, 1, n) * ff.f_slice(xs, 2, n + 1)
        errs.append(_gap(lhs, rhs, t1))
    return _record("cross_product", errs, 1e-12)


def check_geometric_tail(rng, cases: int = 200) -> CheckRecord:
    """F(t^{k-1} w) equals 0phi1(-; 0; t^2, -t w^2)."""
    errs = []
    for _ in range(cases):
        t = _disc(rng, 0.9)
        w = _disc(rng, 2.0)
        lhs = ff.f_tail(ff.TailSeq(lambda k: t ** (k - 1) * w), tol=1e-16)
        rhs = sf.phi01(0.0, t * t, -t * w * w)
        errs.append(_gap(lhs, rhs))
    return _record("geometric_tail", errs, 1e-10)


def check_bessel_tail(rng, cases: int = 100) -> CheckRecord:
    """F(w/(nu+k)) equals Gamma(nu+1) w^{-nu} J_nu(2w)."""
    errs = []
    for _ in range(cases):
        nu = complex(rng.uniform(-0.9, 3.0), rng.uniform(-1, 1))
        w = _disc(rng, 2.0)
        lhs = ff.f_tail_extrapolated(ff.TailSeq(lambda k: w / (nu + k)), tol=1e-14)
        rhs = sf.gamma(nu + 1) * sf.cpow(w, -nu) * sf.bessel_j(nu, 2 * w)
        errs.append(_gap(lhs, rhs))
    return _record("bessel_tail", errs, 1e-10)


# ---------------------------------------------------------------- confluent identities

def _calf_weights(alpha: complex, gam: complex, x: complex, n: int) -> list[complex]:
    root = cmath.sqrt(2 * x)
    lg = sf.log_gamma
    return [root * cmath.exp(lg((gam - alpha + k + 1) / 2) - lg((gam - alpha + k) / 2))
            / (x + gam + k - 1) for k in range(1, n + 1)]


def check_kummer_exponential(rng, cases: int = 200) -> CheckRecord:
    """The n = 0 two-product Kummer identity equals e^x."""
    errs = []
    H = sf.hyp1f1
    for _ in range(cases):
        a, g, x = _disc(rng), _disc(rng), _disc(rng)
        t1 = H(a, g, x) * H(a - g, 1 - g, x)
        t2 = (g - a) * x / (g * (g - 1)) * H(a, g + 1, x) * H(a - g + 1, 2 - g, x)
        errs.append(_gap(t1 - t2, cmath.exp(x)))
    return _record("kummer_exponential", errs, 1e-10)


def check_kummer_finite_sums(rng, cases: int = 60) -> CheckRecord:
    """F windows at alpha = 0 and alpha = -1 against the finite Gamma sums."""
    errs = []
    for _ in range(cases):
        g = 1.0 + _disc(rng, 0.8)
        x = _disc(rng)
        for n in range(0, 9):
            pre = sf.gamma_ratio([x + g], [x + g + n])
            s0 = sum(sf.gamma_ratio([g + n - j], [g]) * x ** j for j in range(n + 1))
            s1 = sum(sf.gamma_ratio([g + n - j], [g + 1]) * (g - j * (n - j)) * x ** j
                     for j in range(n + 1))
            errs.append(_gap(ff.f_finite(_calf_weights(0.0, g, x, n)), pre * s0))
            errs.append(_gap(ff.f_finite(_calf_weights(-1.0, g, x, n)), pre * s1))
    return _record("kummer_finite_sums", errs, 1e-12)


def check_kummer_window(rng, cases: int = 100) -> CheckRecord:
    """Finite F windows against the two-product Kummer expression, n = 0..6."""
    errs = []
    H = sf.hyp1f1
    for _ in range(cases):
        a, g, x = _disc(rng), _disc(rng), _disc(rng)
        for n in range(0, 7):
            lhs = sf.gamma_ratio([x + g + n], [x + g]) * cmath.exp(x) * ff.f_finite(
                _calf_weights(a, g, x, n))
            r1 = sf.gamma_ratio([g + n], [g]) * H(a, g, x) * H(a - g - n, 1 - g - n, x)
            r2 = (sf.gamma_ratio([g - 1, g - a + n + 1], [g - a, g + n + 1]) * x ** (n + 1)
                  * H(a - g + 1, 2 - g, x) * H(a, g + n + 1, x))
            errs.append(_gap(lhs, r1 - r2))
    return _record("kummer_window", errs, 1e-9)


def check_tricomi_relations(rng, cases: int = 100) -> CheckRecord:
    """1F1/U cross relation and the contiguous U recurrence."""
    errs = []
    H, U = sf.hyp1f1, sf.tricomi_u
    for _ in range(cases):
        a = complex(rng.uniform(-1.5, 1.5), rng.uniform(-0.5, 0.5))
        b = complex(rng.uniform(0.1, 2.9), rng.uniform(-0.5, 0.5))
        x = complex(rng.uniform(0.2, 2.0), rng.uniform(-0.5, 0.5))
        t1 = (a - b) * H(a, b + 1, x) * U(a, b, x)
        t2 = b * H(a, b, x) * U(a, b + 1, x)
        rhs = sf.gamma_ratio([b + 1], [a]) * sf.cpow(x, -b) * cmath.exp(x)
        errs.append(_gap(t1 + t2, rhs, t1, t2))
        u0, u1, u2 = U(a, b - 1, x), U(a, b, x), U(a, b + 1, x)
        parts = [(b - a - 1) * u0, (1 - b - x) * u1, x * u2]
        errs.append(_gap(sum(parts), 0.0, *parts))
    return _record("tricomi_relations", errs, 1e-10)


def check_confluent_finite_charpoly(rng, cases: int = 40) -> CheckRecord:
    errs = []
    for _ in range(cases):
        p = M.ConfluentParams(rng.uniform(-0.4, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0))
        model = M.confluent_model(p)
        z = complex(rng.uniform(-2, 6), rng.uniform(0.1, 1.0))
        n = int(rng.integers(1, 7))
        errs.append(_gap(M.confluent_finite_charpoly(p, n, z), S.charpoly(model, n, z)))
    return _record("confluent_finite_charpoly", errs, 1e-9)


# ---------------------------------------------------------------- q identities

def _rand_q(rng, lo: float = 0.2, hi: float = 0.8) -> float:
    return float(rng.uniform(lo, hi))


def _qnu(rng, q: float) -> complex:
    # the phase of q^nu stays in [0.3, 2.5] rad, keeping q^{nu+k} away from 1
    return complex(rng.uniform(-2, 2), rng.uniform(0.3, 2.5) / abs(math.log(q)))


def check_shifted_qsum(rng, cases: int = 60) -> CheckRecord:
    """sum_k q^{sk}/(q^{nu+k};q)_{s+1} = 1/((1-q^s)(q^nu;q)_s)."""
    errs = []
    for i in range(cases):
        q = (0.3, 0.5, 0.8)[i % 3]
        nu = _qnu(rng, q)
        for s in range(1, 6):
            terms, k = [], 0
            while True:
                t = q ** (s * k) / sf.poch_q(sf.cpow(q, nu + k), q, s + 1)
                terms.append(t)
                if abs(t) < 1e-18 * abs(terms[0]) and k > 5:
                    break
                k += 1
            lhs = math.fsum(v.real for v in terms) + 1j * math.fsum(v.imag for v in terms)
            rhs = 1.0 / ((1 - q ** s) * sf.poch_q(sf.cpow(q, nu), q, s))
            errs.append(_gap(lhs, rhs))
    return _record("q_shifted_sum", errs, 1e-11)


def check_euler_identity(rng, cases: int = 100) -> CheckRecord:
    errs = []
    for _ in range(cases):
        q = _rand_q(rng, 0.1, 0.9)
        z = _disc(rng, 3.0)
        terms, k, t = [], 0, 1.0 + 0j
        while True:
            terms.append(t)
            if abs(t) < 1e-18 and k > 5:
                break
            t = t * q ** k * z / (1 - q ** (k + 1))
            k += 1
        errs.append(_gap(sum(terms), sf.poch_q_inf(-z, q), *terms))
    return _record("euler_identity", errs, 1e-12)


def check_qbessel_tail(rng, cases: int = 100) -> CheckRecord:
    """F(w/(q^{-(nu+k)/2} - q^{(nu+k)/2}))_{k>=0} = 0phi1(-; q^nu; q, -q^{nu+1/2} w^2)."""
    errs = []
    for _ in range(cases):
        q = _rand_q(rng)
        nu, w = _qnu(rng, q), _disc(rng, 1.5)

        def gen(k: int) -> complex:
            e = nu + k
            return w / (sf.cpow(q, -e / 2) - sf.cpow(q, e / 2))

        lhs = ff.f_tail(ff.TailSeq(gen, k0=0), tol=1e-16)
        rhs = sf.phi01(sf.cpow(q, nu), q, -sf.cpow(q, nu + 0.5) * w * w)
        errs.append(_gap(lhs, rhs))
    return _record("qbessel_tail", errs, 1e-10)


def check_phi01_recurrence(rng, cases: int = 100) -> CheckRecord:
    errs = []
    for _ in range(cases):
        q = _rand_q(rng)
        nu, z = _qnu(rng, q), _disc(rng, 3.0)
        b = sf.cpow(q, nu)
        parts = [sf.phi01(b, q, z), -sf.phi01(b * q, q, q * z),
                 -z / ((1 - b) * (1 - b * q)) * sf.phi01(b * q * q, q, q * q * z)]
        errs.append(_gap(sum(parts), 0.0, *parts))
    return _record("phi01_recurrence", errs, 1e-11)


def check_jfrak_reflection(rng, cases: int = 40) -> list[CheckRecord]:
    """Negative integer orders: reflection rule and the limit of the generic formula."""
    refl, lim = [], []
    delta = 1e-7
    for _ in range(cases):
        q, x = _rand_q(rng), _disc(rng, 3.0)
        for n in range(1, 6):
            pos = sf.jfrak(n, x, q)
            refl.append(_gap(sf.jfrak(-n, x, q), (-1) ** n * pos))

            side = {d: sf.jfrak(-n + d, x, q) for d in (delta, -delta, 2 * delta, -2 * delta)}

            def sym(d: float) -> complex:
                return 0.5 * (side[d] + side[-d])

            # symmetric offsets cancel odd orders, one Richardson step the d^2 term;
            # the average cancels against the sampled values, so they set the scale
            near = (4.0 * sym(delta) - sym(2 * delta)) / 3.0
            lim.append(_gap(near, (-1) ** n * pos, *side.values()))
    return [_record("jfrak_reflection", refl, 1e-13),
            _record("jfrak_negative_order_limit", lim, 1e-8, f"order offset {delta:g}")]


def check_jfrak_products(rng, cases: int = 60) -> CheckRecord:
    """Product identities for jfrak pairs and the matching 0phi1 pairs."""
    errs = []
    for _ in range(cases):
        q = _rand_q(rng)
        nu, w = _qnu(rng, q), _disc(rng, 1.5)
        P = lambda a: sf.poch_q_inf(a, q)  # noqa: E731
        j = lambda v: sf.jfrak(v, 2 * w, q)  # noqa: E731
        t1, t2 = j(nu) * j(-nu - 1), j(nu + 1) * j(-nu)
        rhs = (sf.cpow(q, nu * (nu + 1) / 2) * P(sf.cpow(q, nu + 1)) * P(sf.cpow(q, -nu))
               * P(-math.sqrt(q) * w * w) / (P(q) ** 2 * w))
        errs.append(_gap(t1 + t2, rhs, t1, t2))
        z = _disc(rng, 2.0)
        qn = sf.cpow(q, nu)
        a1 = sf.phi01(qn * q, q, -qn * q * z) * sf.phi01(1 / qn, q, -z / qn)
        a2 = (qn * z / ((1 - qn) * (1 - qn * q)) * sf.phi01(qn * q * q, q, -qn * q * q * z)
              * sf.phi01(q / qn, q, -q * z / qn))
        errs.append(_gap(a1 - a2, P(-z), a1, a2))
    return _record("jfrak_products", errs, 1e-10)


def check_jfrak_square_sum(rng, cases: int = 50) -> CheckRecord:
    """jfrak_0^2 + sum_k (q^{k/2} + q^{-k/2}) jfrak_k^2 = (-q^{1/2} w^2; q)_inf."""
    errs = []
    for _ in range(cases):
        q, w = _rand_q(rng), _disc(rng, 1.5)
        terms = [sf.jfrak(0, 2 * w, q) ** 2]
        k = 1
        while True:
            t = (q ** (k / 2) + q ** (-k / 2)) * sf.jfrak(k, 2 * w, q) ** 2
            terms.append(t)
            if abs(t) < 1e-18 * max(abs(v) for v in terms) and k > 3:
                break
            k += 1
        errs.append(_gap(sum(terms), sf.poch_q_inf(-math.sqrt(q) * w * w, q), *terms))
    return _record("jfrak_square_sum", errs, 1e-10)


def check_qbessel_wronskian(rng, cases: int = 100) -> CheckRecord:
    """Wronskian of the two q-Bessel solutions, the two-sided F value and the product."""
    errs = []
    for _ in range(cases):
        q = _rand_q(rng)
        nu, w = _qnu(rng, q), _disc(rng, 1.5)
        qh = math.sqrt(q)

        def gen(k: int) -> complex:
            e = sf.cpow(q, nu + k)
            return w * sf.cpow(q, (nu + k) / 2) / (1 - e)

        _, window = ff.bilateral_window(ff.BilateralSeq(gen), 1e-16, ff.DEFAULT_MAX_HORIZON)
        suffixes = ff.f_suffixes(window)
        bil = suffixes[0]
        prod = sf.poch_q_inf(-qh * w * w, q)
        P = lambda a: sf.poch_q_inf(a, q)  # noqa: E731
        c = sf.cpow(q, -nu * (nu + 1) / 4) * P(q)

        def f(n: int) -> complex:
            return c / P(sf.cpow(q, nu + 1)) * sf.cpow(w, -nu) * sf.jfrak(nu + n, 2 * w, q)

        def g(n: int) -> complex:
            return ((-1) ** (n + 1) * c / P(sf.cpow(q, -nu)) * sf.cpow(w, nu)
                    * sf.jfrak(-nu - n, 2 * w, q))

        n = int(rng.integers(-3, 4))
        t1, t2 = w * f(n) * g(n + 1), w * f(n + 1) * g(n)
        # near a zero of the product the recurrence cancels; scale by its largest suffix
        errs.append(_gap(bil, prod, max(abs(v) for v in suffixes)))
        errs.append(_gap(t1 - t2, prod, t1, t2))
    return _record("qbessel_wronskian", errs, 1e-10)


def _qc_params(rng):
    q = _rand_q(rng, 0.3, 0.7)
    al = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
    ga = complex(rng.uniform(-1, 1), rng.uniform(0.2, 0.8))
    z = _disc(rng, 1.0)
    return q, al, ga, z


def check_phi11_recurrence(rng, cases: int = 100) -> CheckRecord:
    errs = []
    for _ in range(cases):
        q, al, ga, z = _qc_params(rng)
        Q = lambda e: sf.cpow(q, e)  # noqa: E731
        p11 = lambda b, arg: sf.phi11(Q(al), b, q, arg)  # noqa: E731
        parts = [-Q(al + ga) * (1 - Q(ga - al + 1)) / ((1 - Q(ga)) * (1 - Q(ga + 1))) * z
                 * p11(Q(ga + 2), Q(ga + 2) * z),
                 -(1 - Q(ga) * z / (1 - Q(ga))) * p11(Q(ga + 1), Q(ga + 1) * z),
                 p11(Q(ga), Q(ga) * z)]
        errs.append(_gap(sum(parts), 0.0, *parts))
    return _record("phi11_recurrence", errs, 1e-11)


def check_qconfluent_wronskian(rng, cases: int = 100) -> CheckRecord:
    """Wronskian of the two q-confluent solutions and its 1phi1 product form."""
    errs = []
    for _ in range(cases):
        q, al, ga, z = _qc_params(rng)
        Q = lambda e: sf.cpow(q, e)  # noqa: E731
        P = lambda a: sf.poch_q_inf(a, q)  # noqa: E731

        def phi(n: int) -> complex:
            return sf.phi11_regularized(Q(al), Q(n + ga), q, -Q(n + ga) * z)

        def psi(n: int) -> complex:
            e = n + ga
            return (Q(-al * e - (e - 1) * (e - 2) / 2) * P(Q(e - al)) / P(Q(e - 1))
                    * sf.cpow(z, 1 - e) * sf.phi11(Q(al - e + 1), Q(2 - e), q, -q * z))

        t1, t2 = phi(0) * psi(1), phi(1) * psi(0)
        rhs = Q(-al * (ga + 1) - ga * (ga - 1) / 2) * P(Q(ga - al + 1)) * P(-Q(al) * z) * sf.cpow(z, -ga)
        errs.append(_gap(t1 - t2, rhs, t1, t2))
        a1 = sf.phi11(Q(al), Q(ga), q, Q(ga - al) * z) * sf.phi11(Q(al - ga), Q(1 - ga), q, Q(1 - al) * z)
        a2 = (Q(ga - 1) * (1 - Q(ga - al)) * z / ((1 - Q(ga - 1)) * (1 - Q(ga)))
              * sf.phi11(Q(al), Q(ga + 1), q, Q(ga - al + 1) * z)
              * sf.phi11(Q(al - ga + 1), Q(2 - ga), q, Q(1 - al) * z))
        errs.append(_gap(a1 + a2, P(z), a1, a2))
    return _record("qconfluent_wronskian", errs, 1e-10)


def check_qconfluent_tail(rng, cases: int = 60) -> CheckRecord:
    """F of the q-confluent weight sequence against the 1phi1 closed form."""
    errs = []
    for _ in range(cases):
        q, al, ga, z = _qc_params(rng)
        z = 0.5 * z
        Q = lambda e: sf.cpow(q, e)  # noqa: E731
        q2 = q * q
        rz = cmath.sqrt(z)

        def gen(k: int) -> complex:
            return (Q((al + ga + k) / 2 - 0.75) * sf.poch_q_inf(Q(ga - al + k), q2) * rz
                    / (sf.poch_q_inf(Q(ga - al + k + 1), q2) * (1 - (1 - z) * Q(ga + k - 1))))

        lhs = ff.f_tail(ff.TailSeq(gen), tol=1e-16)
        rhs = (sf.phi11_regularized(Q(al), Q(ga), q, -Q(ga) * z)
               / sf.poch_q_inf((1 - z) * Q(ga), q))
        errs.append(_gap(lhs, rhs))
    return _record("qconfluent_tail", errs, 1e-10)


# ---------------------------------------------------------------- spectra

def _spectrum_errors(found, exact) -> tuple[list[float], str]:
    pairs, la, lb = S.match_spectra(found, exact)
    errs = [abs(a - b) for a, b in pairs]
    if la or lb:
        errs.append(math.inf)
    return errs, f"{len(pairs)} matched, {len(la)}+{len(lb)} unmatched"


def coulomb_spectrum_checks(rng=None, cfg: S.ToleranceConfig | None = None) -> list[CheckRecord]:
    cfg = cfg or S.ToleranceConfig()
    model = M.coulomb_model(M.CoulombParams(1.0, 0.5))
    zeros, res = [], []
    for lo, hi in ((-1.0, -0.05), (0.05, 1.0)):
        r = S.find_real_eigenvalues(model, lo, hi, cfg)
        zeros += [e.z for e in r.eigenvalues]
        res += [e.residual if e.residual is not None else math.inf for e in r.eigenvalues]
    orc = [z for z in S.oracle_eigenvalues(model, 200, -1.0, 1.0) if abs(z) >= 0.05]
    errs, detail = _spectrum_errors(zeros, orc)
    return [_record("coulomb_zeros_vs_truncation", errs, 1e-8, detail),
            _record("coulomb_eigvec_residual", res, 1e-8)]


def confluent_spectrum_checks(rng=None, cfg: S.ToleranceConfig | None = None) -> list[CheckRecord]:
    cfg = cfg or S.ToleranceConfig()
    errs, res, details = [], [], []
    for be, ga in ((1.0, 1.0), (2.0, 0.5)):
        model = M.confluent_model(M.ConfluentParams(0.0, be, ga))
        lo, hi = -be / ga + ga - 0.4, -be / ga + 10 * ga + 0.4
        r = S.find_real_eigenvalues(model, lo, hi, cfg)
        exact = [-be / ga + ga * j for j in range(1, 11)]
        e, d = _spectrum_errors(r.values().tolist(), exact)
        errs += e
        details.append(d)
        res += [v.residual if v.residual is not None else math.inf for v in r.eigenvalues]
    return [_record("confluent_exact_spectrum", errs, 1e-8, "; ".join(details)),
            _record("confluent_eigvec_residual", res, 1e-8)]


def qbessel_spectrum_checks(rng=None, cfg: S.ToleranceConfig | None = None) -> list[CheckRecord]:
    cfg = cfg or S.ToleranceConfig()
    p = M.QBesselParams(0.8, 0.5)
    model = M.qbessel_model(p)
    lo, hi = -0.7, 1.1
    exact = M.qbessel_spectrum(p, lo, hi, min_abs=1e-6)
    orc = [z for z in S.oracle_eigenvalues(model, 60, lo, hi, tol=1e-14) if abs(z) > 1e-6]
    errs, detail = _spectrum_errors(orc, exact)
    out = [_record("qbessel_formula_vs_truncation", errs, 1e-8, detail)]
    orc2 = [z for z in S.oracle_eigenvalues(model, 120, lo, hi, tol=1e-14) if abs(z) > 1e-6]
    e2, d2 = _spectrum_errors(orc, orc2)
    out.append(_record("qbessel_window_stability", e2, cfg.root_tol, d2))
    r = S.find_real_eigenvalues(model, lo, hi, cfg, residual_count=60)
    zeros = [e.z for e in r.eigenvalues if abs(e.z) > 1e-6]
    e3, d3 = _spectrum_errors(zeros, exact)
    out.append(_record("qbessel_zeros_vs_formula", e3, 1e-8, d3))
    out.append(_record("qbessel_eigvec_residual",
                       [e.residual if e.residual is not None else math.inf for e in r.eigenvalues],
                       1e-8))
    # v+ normalization
    nerr = []
    for m in (-3, 0, 2, 5):
        ks = range(m - 80, m + 81)
        v = M.qbessel_vplus(p, m, ks)
        nrm = float(np.sum(np.abs(v) ** 2))
        nerr.append(_gap(nrm, sf.poch_q_inf(-(0.5 ** -m) * 0.64, 0.5)))
    out.append(_record("qbessel_vplus_norm", nerr, 1e-10))
    # positive spectrum independent of beta
    pos = []
    for be in (0.1, 0.5, 1.0):
        mdl = M.qbessel_model(M.QBesselParams(be, 0.5))
        pos.append(S.oracle_eigenvalues(mdl, 60, 1e-4, 1.1, tol=1e-14))
    serr = []
    for other in pos[1:]:
        e, _ = _spectrum_errors(pos[0].tolist(), other.tolist())
        serr += e
    out.append(_record("qbessel_positive_beta_independence", serr, cfg.root_tol,
                       f"{len(pos[0])} positive eigenvalues"))
    return out


def qconfluent_spectrum_checks(rng=None, cfg: S.ToleranceConfig | None = None) -> list[CheckRecord]:
    cfg = cfg or S.ToleranceConfig()
    p = M.QConfluentParams(1.0, 0.0, 0.5)
    model = M.qconfluent_model(p)
    lo, hi = -0.5, 1.5
    exact = M.qconfluent_spectrum(p, lo, hi, min_abs=1e-6)
    orc = [z for z in S.oracle_eigenvalues(model, 80, lo, hi, tol=1e-14) if abs(z) > 1e-6]
    errs, detail = _spectrum_errors(orc, exact)
    return [_record("qconfluent_formula_vs_truncation", errs, 1e-8, detail)]


def norm_identity_checks(rng=None, cfg: S.ToleranceConfig | None = None) -> list[CheckRecord]:
    cfg = cfg or S.ToleranceConfig()
    out = []
    cm = M.coulomb_model(M.CoulombParams(1.0, 0.5))
    zs = sorted(S.oracle_eigenvalues(cm, 200, -1.0, 1.0), key=lambda z: -abs(z))[:5]
    errs = []
    for z in zs:
        n2, d = S.norm_identity_check(cm, float(z), 1e-5, 200, cfg)
        errs.append(_gap(d, n2))
    out.append(_record("coulomb_norm_identity", errs, 1e-5))
    fm = M.confluent_model(M.ConfluentParams(0.5, 1.0, 1.0))
    zs = S.oracle_eigenvalues(fm, 200, -1.0, 6.0)[:5]
    errs = []
    for z in zs:
        n2, d = S.norm_identity_check(fm, float(z), 1e-5, 200, cfg)
        errs.append(_gap(d, n2))
    out.append(_record("confluent_norm_identity", errs, 1e-5))
    return out


def _generic(model: S.JacobiModel) -> S.JacobiModel:
    return dataclasses.replace(model, closed_char=None, closed_xi=None, closed_eigvec=None)


def check_char_routes(rng, cases: int = 8) -> list[CheckRecord]:
    """Closed-form characteristic data against the generic F constructions."""
    cfg = S.ToleranceConfig()
    out = []
    errs = []
    for _ in range(cases):
        p = M.CoulombParams(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0))
        model = M.coulomb_model(p)
        z = complex(rng.uniform(-1, 1), rng.uniform(0.1, 1.0)) if rng.random() < 0.5 else \
            float(rng.choice([-1, 1]) * rng.uniform(0.15, 1.0))
        gen = S.xi(_generic(model), z, 5, cfg)
        ref = model.closed_xi(z, 5)
        errs += [_gap(a, b) for a, b in zip(gen, ref)]
    out.append(_record("coulomb_xi_routes", errs, 1e-10))
    errs = []
    for _ in range(cases):
        p = M.ConfluentParams(rng.uniform(-0.4, 2.0), rng.uniform(0.3, 2.0), rng.uniform(0.5, 2.0))
        z1 = complex(rng.uniform(-2, 6), rng.uniform(0.1, 1.0))
        z2 = complex(rng.uniform(-2, 6), rng.uniform(-1.0, -0.1))
        g1, g2 = (M.confluent_char_from_sections(p, z) for z in (z1, z2))
        c1, c2 = (M.confluent_char(p, z) for z in (z1, z2))
        errs += [_gap(g1, c1), _gap(g1 / g2, c1 / c2)]
    out.append(_record("confluent_char_routes", errs, 1e-10))
    errs = []
    for _ in range(cases):
        q, be = _rand_q(rng, 0.3, 0.7), rng.uniform(0.1, 1.5)
        model = M.qbessel_model(M.QBesselParams(be, q))
        z = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.05, 1.0))
        bil = S.char_function(_generic(model), z, cfg)
        closed = model.closed_char(z)
        strip = sf.poch_q_inf(1 / z, q) * sf.poch_q_inf(q * z, q)
        errs += [_gap(bil, sf.poch_q_inf(-be * be / z, q)), _gap(bil * strip, closed)]
    out.append(_record("qbessel_char_routes", errs, 1e-10))
    errs = []
    for _ in range(cases):
        p = M.QConfluentParams(rng.uniform(-2, 2), rng.uniform(-0.9, 2.0), _rand_q(rng, 0.3, 0.7))
        model = M.qconfluent_model(p)
        z = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.05, 1.0))
        gen = S.xi(_generic(model), z, 5, cfg)
        ref = model.closed_xi(z, 5)
        errs += [_gap(a, b) for a, b in zip(gen, ref)]
    out.append(_record("qconfluent_xi_routes", errs, 1e-10))
    return out


# ---------------------------------------------------------------- registry

Check = Callable[..., "CheckRecord | list[CheckRecord]"]

SUITES: dict[str, list[Check]] = {
    "ffunc": [check_oracle_equivalence, check_recurrence_rule, check_reversal,
              check_generalized_split, check_product_identity, check_cross_product,
              check_geometric_tail, check_bessel_tail],
    "confluent": [check_kummer_exponential, check_kummer_finite_sums, check_kummer_window,
                  check_tricomi_relations, check_confluent_finite_charpoly],
    "qseries": [check_shifted_qsum, check_euler_identity, check_qbessel_tail,
                check_phi01_recurrence, check_jfrak_reflection, check_jfrak_products,
                check_jfrak_square_sum, check_phi11_recurrence, check_qconfluent_tail],
    "wronskian": [check_qbessel_wronskian, check_qconfluent_wronskian],
    "spectra": [check_char_routes, coulomb_spectrum_checks, confluent_spectrum_checks, qbessel_spectrum_checks,
                qconfluent_spectrum_checks],
    "norm": [norm_identity_checks],
}


def run_check(check: Check, seed: int = 0, **kw) -> list[CheckRecord]:
    out = check(np.random.default_rng(seed), **kw)
    return out if isinstance(out, list) else [out]


def run_suite(name: str, seed: int = 0) -> list[CheckRecord]:
    if name == "all":
        return [r for n in SUITES for r in run_suite(n, seed)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    out: list[CheckRecord] = []
    for check in SUITES[name]:
        out += run_check(check, seed)
    return out
