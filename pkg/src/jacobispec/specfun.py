"""Special functions: confluent hypergeometric, Bessel, Coulomb and basic q-series.

All series are summed directly in double precision with a relative stopping
rule; the gamma function itself comes from :mod:`scipy.special`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

from scipy import special as _sp

from .errors import NonConvergenceError, ParameterError, PoleError

Number = Union[int, float, complex]

Q_MAX = 0.999
_INT_EPS = 1e-13


@dataclass(frozen=True)
class SeriesControl:
    """Stop once ``|term| < tol * |partial sum|`` on 3 consecutive terms
    while the term ratio is below one."""

    tol: float = 2.0 ** -53
    max_terms: int = 1_000_000
    consecutive: int = 3


DEFAULT_SERIES = SeriesControl()


@dataclass(frozen=True)
class QParam:
    """Nome of a q-series; requires 0 < |q| <= Q_MAX."""

    q: complex

    def __post_init__(self) -> None:
        mod = abs(self.q)
        if not 0.0 < mod < 1.0:
            raise ParameterError(f"|q| must lie in (0, 1), got {self.q!r}")
        if mod > Q_MAX:
            raise ParameterError(f"|q| = {mod} exceeds the accuracy guard {Q_MAX}")


def check_q(q: Number) -> Number:
    QParam(q)
    return q


def _nonpos_int(b: Number) -> int | None:
    """Return -n if b is (numerically) the nonpositive integer -n, else None."""
    b = complex(b)
    if abs(b.imag) > _INT_EPS * max(1.0, abs(b.real)):
        return None
    r = round(b.real)
    if r <= 0 and abs(b.real - r) <= _INT_EPS * max(1.0, abs(b.real)):
        return int(r)
    return None


def _sum_series(first: complex, ratio, ctl: SeriesControl, what: str) -> complex:
    """Sum ``t_0 + t_1 + ...`` with ``t_{k+1} = t_k * ratio(k)``."""
    term = complex(first)
    total = term
    quiet = 0
    for k in range(ctl.max_terms):
        r = ratio(k)
        term = term * r
        total += term
        if term == 0 or (abs(term) < ctl.tol * abs(total) and abs(r) < 1.0):
            quiet += 1
            if quiet >= ctl.consecutive:
                return total
        else:
            quiet = 0
        if not cmath.isfinite(total):
            raise NonConvergenceError(f"{what}: overflow after {k + 1} terms")
    raise NonConvergenceError(f"{what}: no convergence in {ctl.max_terms} terms")


# ---------------------------------------------------------------- gamma

def log_gamma(z: Number) -> complex:
    """Principal branch of log Gamma(z)."""
    if _nonpos_int(z) is not None:
        raise PoleError(f"log_gamma pole at {z!r}")
    return complex(_sp.loggamma(complex(z)))


def gamma(z: Number) -> complex:
    if _nonpos_int(z) is not None:
        raise PoleError(f"gamma pole at {z!r}")
    return complex(_sp.gamma(complex(z)))


def rgamma(z: Number) -> complex:
    """1/Gamma(z), entire."""
    return complex(_sp.rgamma(complex(z)))


def gamma_ratio(num: list[Number], den: list[Number]) -> complex:
    """prod Gamma(num) / prod Gamma(den), evaluated through log Gamma.

    Denominator arguments at poles contribute a zero factor.
    """
    for d in den:
        if _nonpos_int(d) is not None:
            return 0j
    s = sum(log_gamma(a) for a in num) - sum(log_gamma(b) for b in den)
    return cmath.exp(s)


# ---------------------------------------------------------------- 1F1 and U

def hyp1f1(a: Number, b: Number, z: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Kummer's function sum_k (a)_k / (b)_k z^k / k!."""
    if _nonpos_int(b) is not None:
        raise PoleError(f"hyp1f1: b = {b!r} is a nonpositive integer")
    a, b, z = complex(a), complex(b), complex(z)
    return _sum_series(1.0, lambda k: (a + k) * z / ((b + k) * (k + 1)), ctl, "hyp1f1")


def hyp1f1_regularized(a: Number, b: Number, z: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """1F1(a; b; z) / Gamma(b), entire in b.

    The first terms, where b + k may sit on a pole of Gamma, are formed
    directly from 1/Gamma(b + k); the rest follow the term ratio.
    """
    a, b, z = complex(a), complex(b), complex(z)
    k0 = max(0, math.ceil(1.0 - b.real))
    total = 0j
    # (a)_k z^k / k! carried separately from 1/Gamma(b+k)
    head = 1.0 + 0j
    for k in range(k0):
        total += head * rgamma(b + k)
        head *= (a + k) * z / (k + 1)
    first = head * rgamma(b + k0)
    if first == 0:
        return total
    bk = b + k0
    tail = _sum_series(first, lambda j: (a + k0 + j) * z / ((bk + j) * (k0 + j + 1)), ctl,
                       "hyp1f1_regularized")
    return total + tail


def tricomi_u(a: Number, b: Number, z: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Tricomi's U through the connection with two Kummer functions (b non-integer)."""
    b = complex(b)
    if abs(b.imag) < _INT_EPS and abs(b.real - round(b.real)) < 1e-9:
        raise ParameterError("tricomi_u: integer b needs the limiting form, which is not provided")
    a, z = complex(a), complex(z)
    t1 = gamma(1 - b) * rgamma(a - b + 1) * hyp1f1(a, b, z, ctl)
    t2 = gamma(b - 1) * rgamma(a) * cmath.exp((1 - b) * cmath.log(z)) * hyp1f1(a - b + 1, 2 - b, z, ctl)
    return t1 + t2


# ---------------------------------------------------------------- Coulomb

def _coulomb_phi_series(L: float, eta: float, rho: complex, ctl: SeriesControl) -> complex:
    # real Taylor coefficients: a_0 = 1, a_1 = eta/(L+1),
    # a_j = (2 eta a_{j-1} - a_{j-2}) / (j (j + 2L + 1))
    a_prev, a_cur = 1.0, eta / (L + 1.0)
    total = 1.0 + a_cur * rho
    p = rho
    quiet = 0
    j = 1
    while j < ctl.max_terms:
        j += 1
        a_prev, a_cur = a_cur, (2.0 * eta * a_cur - a_prev) / (j * (j + 2.0 * L + 1.0))
        p *= rho
        term = a_cur * p
        total += term
        small = abs(term) < ctl.tol * abs(total) and j > abs(rho) + abs(eta)
        quiet = quiet + 1 if small else 0
        if quiet >= ctl.consecutive:
            return total
    raise NonConvergenceError("coulomb_phi: no convergence")


def coulomb_phi_ladder(L: float, eta: float, rho: Number, count: int,
                       ctl: SeriesControl = DEFAULT_SERIES) -> list[complex]:
    """``[Phi_{L+j}(eta, rho) for j in range(count + 1)]`` where
    Phi_L = exp(-i rho) 1F1(L+1-i eta; 2L+2; 2i rho).

    For |rho| small next to L the Taylor series is used directly.  Otherwise
    the series is taken at an order well above |rho|, where its terms do not
    cancel, and the angular-momentum recurrence is run downward; the regular
    solution is the minimal one, so this direction is stable.
    """
    if L <= -1:
        raise ValueError("coulomb_phi requires L > -1")
    rho = complex(rho)
    top = L + count
    if abs(rho) <= 2.0 + 0.25 * (L + 1):
        return [_coulomb_phi_series(L + j, eta, rho, ctl) for j in range(count + 1)]
    anchor = max(top + 1, L + math.ceil(1.5 * abs(rho) + abs(eta)) + 12)
    hi = _coulomb_phi_series(anchor + 1, eta, rho, ctl)
    cur = _coulomb_phi_series(anchor, eta, rho, ctl)
    out = {}
    ell = anchor
    r2 = rho * rho
    while ell > L:
        # Phi_{l-1} from Phi_l and Phi_{l+1}
        lo = ((2 * ell + 1) * (eta * rho + ell * (ell + 1)) * cur
              - ell * ((ell + 1) ** 2 + eta * eta) * r2 * hi / ((ell + 1) * (2 * ell + 3))) / (
                  ell * (ell + 1) * (2 * ell + 1))
        hi, cur = cur, lo
        ell -= 1
        if ell <= top + 1e-9:
            out[round(ell - L)] = cur
    return [out[j] for j in range(count + 1)]


def coulomb_phi(L: float, eta: float, rho: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """exp(-i rho) 1F1(L+1-i eta; 2L+2; 2i rho), real for real eta and rho."""
    return coulomb_phi_ladder(L, eta, rho, 0, ctl)[0]


def coulomb_f(L: float, eta: float, rho: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Regular Coulomb wave function F_L(eta, rho)."""
    logc = (L * math.log(2.0) - math.pi * eta / 2.0 + log_gamma(L + 1 + 1j * eta).real
            - log_gamma(2 * L + 2).real)
    rho = complex(rho)
    return cmath.exp(logc + (L + 1) * cmath.log(rho)) * coulomb_phi(L, eta, rho, ctl)


# ---------------------------------------------------------------- Bessel

def bessel_j(nu: Number, x: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """J_nu(x) by its ascending series (principal branch of (x/2)^nu)."""
    if _nonpos_int(nu) is not None and _nonpos_int(nu) != 0:
        raise PoleError("bessel_j: negative integer order is not supported by the series")
    nu, x = complex(nu), complex(x)
    half = x / 2.0
    if x == 0:
        return 1.0 + 0j if nu == 0 else 0j
    lead = cpow(half, nu) * rgamma(nu + 1)
    h2 = -half * half
    return _sum_series(lead, lambda k: h2 / ((k + 1) * (nu + k + 1)), ctl, "bessel_j")


def cpow(base: Number, exponent: Number) -> complex:
    """base**exponent on the principal branch, exact for integer exponents."""
    e = complex(exponent)
    if e.imag == 0 and e.real == round(e.real) and abs(e.real) < 1e6:
        return complex(base) ** int(round(e.real))
    if base == 0:
        return 0j
    return cmath.exp(e * cmath.log(complex(base)))


# ---------------------------------------------------------------- q-Pochhammer

def poch_q(a: Number, q: Number, k: int) -> complex:
    """(a; q)_k for integer k, including negative k."""
    check_q(q)
    a = complex(a)
    out = 1.0 + 0j
    if k >= 0:
        f = a
        for _ in range(k):
            out *= 1.0 - f
            f *= q
        return out
    # (a;q)_{-n} = 1 / (a q^{-n}; q)_n
    f = a
    for _ in range(-k):
        f /= q
        den = 1.0 - f
        if den == 0:
            raise PoleError("poch_q: zero denominator")
        out /= den
    return out


def poch_q_inf(a: Number, q: Number, tol: float = 2.0 ** -53) -> complex:
    """(a; q)_inf, truncated once |a| |q|^J < tol (1 - |q|)."""
    check_q(q)
    a = complex(a)
    qa = abs(q)
    out = 1.0 + 0j
    f = a
    limit = tol * (1.0 - qa)
    while abs(f) >= limit:
        out *= 1.0 - f
        f *= q
        if out == 0:
            return out
    return out


def _regularized_qsum(b: complex, q: Number, coef_ratio, ctl: SeriesControl, what: str) -> complex:
    """sum_k c_k (b q^k; q)_inf with c_0 = 1 and c_{k+1} = c_k coef_ratio(k).

    The shifted products are divided down one factor at a time, and recomputed
    from scratch whenever the factor being removed is small, so that b on a
    pole of the unregularized series causes no trouble.
    """
    tail = poch_q_inf(b, q)
    c = 1.0 + 0j
    total = c * tail
    quiet = 0
    bq = b
    for k in range(ctl.max_terms):
        fac = 1.0 - bq
        bq = bq * q
        if abs(fac) < 0.5:
            tail = poch_q_inf(bq, q)
        else:
            tail = tail / fac
        c = c * coef_ratio(k)
        term = c * tail
        total += term
        if (term == 0 and c == 0) or (abs(term) < ctl.tol * abs(total) and abs(c * q) < abs(c)
                                      and abs(coef_ratio(k + 1)) < 1.0):
            quiet += 1
            if quiet >= ctl.consecutive:
                return total
        else:
            quiet = 0
        if not cmath.isfinite(total):
            raise NonConvergenceError(f"{what}: overflow after {k + 1} terms")
    raise NonConvergenceError(f"{what}: no convergence in {ctl.max_terms} terms")


def phi01(b: Number, q: Number, z: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """0phi1(-; b; q, z) = sum q^{k(k-1)} z^k / ((q;q)_k (b;q)_k)."""
    check_q(q)
    b, z = complex(b), complex(z)

    def ratio(k: int) -> complex:
        den = (1.0 - q ** (k + 1)) * (1.0 - b * q ** k)
        if den == 0:
            raise PoleError("phi01: b = q^{-n}")
        return q ** (2 * k) * z / den

    return _sum_series(1.0, ratio, ctl, "phi01")


def phi01_regularized(b: Number, q: Number, z: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """(b; q)_inf 0phi1(-; b; q, z), entire in b."""
    check_q(q)
    b, z = complex(b), complex(z)
    return _regularized_qsum(b, q, lambda k: q ** (2 * k) * z / (1.0 - q ** (k + 1)), ctl,
                             "phi01_regularized")


def phi11(a: Number, b: Number, q: Number, z: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """1phi1(a; b; q, z) = sum (-1)^k q^{k(k-1)/2} (a;q)_k z^k / ((b;q)_k (q;q)_k)."""
    check_q(q)
    a, b, z = complex(a), complex(b), complex(z)

    def ratio(k: int) -> complex:
        den = (1.0 - b * q ** k) * (1.0 - q ** (k + 1))
        if den == 0:
            raise PoleError("phi11: b = q^{-n}")
        return -(q ** k) * (1.0 - a * q ** k) * z / den

    return _sum_series(1.0, ratio, ctl, "phi11")


def phi11_regularized(a: Number, b: Number, q: Number, z: Number,
                      ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """(b; q)_inf 1phi1(a; b; q, z), entire in b."""
    check_q(q)
    a, b, z = complex(a), complex(b), complex(z)
    return _regularized_qsum(
        b, q, lambda k: -(q ** k) * (1.0 - a * q ** k) * z / (1.0 - q ** (k + 1)), ctl,
        "phi11_regularized")


# ---------------------------------------------------------------- q-Bessel

def jfrak(nu: Number, x: Number, q: Number, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Normalized q-Bessel function of order nu.

    q^{nu(nu+1)/4} / (q;q)_inf (x/2)^nu (q^{nu+1};q)_inf 0phi1(-; q^{nu+1}; q, -q^{nu+3/2} x^2/4);
    negative integer orders use the reflection jfrak_{-n} = (-1)^n jfrak_n.
    """
    check_q(q)
    n = _nonpos_int(nu)
    if n is not None and n < 0:
        return (-1) ** (-n) * jfrak(-n, x, q, ctl)
    nu, x = complex(nu), complex(x)
    if x == 0:
        return 1.0 + 0j if nu == 0 else 0j
    qnu1 = cpow(q, nu + 1)
    if nu.imag == 0 and nu.real == round(nu.real) and x.imag == 0 and complex(q).imag == 0:
        # integer order: join the two powers in logs, each alone may over/underflow
        m = int(round(nu.real))
        logmag = m * (m + 1) / 4.0 * math.log(q) + m * math.log(abs(x.real) / 2.0)
        if logmag > 700.0:
            raise OverflowError("q-Bessel prefactor overflows")
        powers = (-1.0 if (x.real < 0 and m % 2) else 1.0) * math.exp(logmag)
    else:
        powers = cpow(q, nu * (nu + 1) / 4.0) * cpow(x / 2.0, nu)
    arg = -qnu1 * cpow(q, 0.5) * x * x / 4.0
    if _near_q_pole(qnu1, q):
        return powers / poch_q_inf(q, q) * phi01_regularized(qnu1, q, arg, ctl)
    # (q^{nu+1};q)_inf / (q;q)_inf as one product: each factor underflows as q -> 1
    return powers * _poch_inf_ratio(qnu1, q, q) * phi01(qnu1, q, arg, ctl)


def _near_q_pole(b: complex, q: Number, radius: float = 0.25) -> bool:
    """True if some factor 1 - b q^k of (b;q)_inf is within radius*(1 - |q|) of zero."""
    f = complex(b)
    eps = radius * (1.0 - abs(q))
    while abs(f) >= 1.0 - eps:
        if abs(1.0 - f) < eps:
            return True
        f *= q
    return False


def _poch_inf_ratio(a: Number, b: Number, q: Number, tol: float = 2.0 ** -53) -> complex:
    """(a;q)_inf / (b;q)_inf."""
    a, b = complex(a), complex(b)
    out = 1.0 + 0j
    limit = tol * (1.0 - abs(q))
    while abs(a) >= limit or abs(b) >= limit:
        out *= (1.0 - a) / (1.0 - b)
        a *= q
        b *= q
    return out



__all__ = [
    "SeriesControl",
    "QParam",
    "log_gamma",
    "gamma",
    "rgamma",
    "gamma_ratio",
    "hyp1f1",
    "hyp1f1_regularized",
    "tricomi_u",
    "coulomb_phi",
    "coulomb_phi_ladder",
    "coulomb_f",
    "bessel_j",
    "cpow",
    "poch_q",
    "poch_q_inf",
    "phi01",
    "phi01_regularized",
    "phi11",
    "phi11_regularized",
    "jfrak",
]
