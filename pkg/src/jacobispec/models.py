"""Four solvable Jacobi matrix families with closed-form spectral data."""
from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import specfun as sf
from .errors import DegenerateError, NonConvergenceError, ParameterError, PoleError
from .ffunc import f_finite
from .spectral import BILATERAL, UNILATERAL, JacobiModel


def _real(x: complex) -> float:
    return float(np.real(x))


# ---------------------------------------------------------------- Coulomb

@dataclass(frozen=True)
class CoulombParams:
    mu: float
    nu: float

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise ParameterError("Coulomb model needs mu > 0")


def coulomb_lambda(x: float, y: float) -> float:
    return y / ((x - 1.0) * x)


def coulomb_w(x: float, y: float) -> float:
    return math.sqrt((x * x + y * y) / (4.0 * x * x - 1.0)) / x


def coulomb_gamma(x: float, y: float) -> float:
    """A solution of gamma(x) gamma(x+1) = w(x) built from gamma-function ratios."""
    lg = sf.log_gamma
    val = (lg(x / 2.0) - lg((x + 1.0) / 2.0)
           + (lg((x + 1j * y + 1.0) / 2.0) - lg((x + 1j * y) / 2.0)).real).real
    return math.exp(val) / math.sqrt(2.0 * x - 1.0)


def coulomb_gamma_prefactor(m: float, nu: float, zeta: complex) -> complex:
    """Gamma(1/2+m-s/2) Gamma(1/2+m+s/2) / (Gamma(m) Gamma(m+1)), s = sqrt(1+4 nu zeta).

    Equal to prod_{k>=0} 1/(1 - nu zeta/((m+k)(m+k+1))); even in s, so the
    branch of the root does not matter.
    """
    s = cmath.sqrt(1.0 + 4.0 * nu * complex(zeta))
    return sf.gamma_ratio([0.5 + m - 0.5 * s, 0.5 + m + 0.5 * s], [m, m + 1.0])


def coulomb_model(p: CoulombParams) -> JacobiModel:
    mu, nu = p.mu, p.nu
    eta = -nu

    def char(z: complex) -> complex:
        zeta = 1.0 / complex(z)
        return coulomb_gamma_prefactor(mu, nu, zeta) * sf.coulomb_phi(mu - 1.0, eta, zeta)

    def xi(z: complex, count: int) -> list:
        # xi_k = zeta^k (w_1 ... w_{k-1}) G(mu) Phi_{mu+k}
        zeta = 1.0 / complex(z)
        g0 = coulomb_gamma_prefactor(mu, nu, zeta)
        phis = sf.coulomb_phi_ladder(mu - 1.0, eta, zeta, count)
        out = [g0 * phis[0]]
        pref = 1.0 + 0j
        for k in range(1, count + 1):
            if k > 1:
                pref *= coulomb_w(mu + k - 1, nu)
            out.append(g0 * zeta ** k * pref * phis[k])
        return out

    def eigvec(z: complex, count: int) -> np.ndarray:
        zeta = 1.0 / complex(z)
        phis = sf.coulomb_phi_ladder(mu, eta, zeta, count - 1)
        tz = 2.0 * zeta
        out = np.empty(count, dtype=complex)
        for n in range(1, count + 1):
            logc = (0.5 * math.log(2 * mu + 2 * n - 1) + sf.log_gamma(mu + n + 1j * nu).real
                    - sf.log_gamma(2 * mu + 2 * n).real + (n - 1) * math.log(abs(tz)))
            sign = (tz / abs(tz)) ** (n - 1)
            out[n - 1] = math.exp(logc) * sign * phis[n - 1] if logc > -745 else 0.0
        return out

    return JacobiModel(
        name="coulomb",
        lam=lambda k: coulomb_lambda(mu + k, nu),
        w=lambda k: coulomb_w(mu + k, nu),
        gamma_sq=lambda k: coulomb_gamma(mu + k, nu) ** 2,
        side=UNILATERAL,
        closed_char=char,
        closed_eigvec=eigvec,
        closed_xi=xi,
        accumulation=(0.0,),
        params=asdict(p),
    )


# ---------------------------------------------------------------- confluent

@dataclass(frozen=True)
class ConfluentParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not (self.beta > 0 and self.gamma > 0 and self.alpha + self.beta > 0):
            raise ParameterError("confluent model needs beta > 0, gamma > 0, alpha + beta > 0")


def confluent_char(p: ConfluentParams, z: complex) -> complex:
    """1F1(1 - a/b - b/g^2 - z/g; 1 - b/g^2 - z/g; b/g^2) / Gamma(1 - b/g^2 - z/g)."""
    al, be, ga = p.alpha, p.beta, p.gamma
    c = 1.0 - be / ga ** 2 - complex(z) / ga
    return sf.hyp1f1_regularized(c - al / be, c, be / ga ** 2)


def _confluent_component(p: ConfluentParams, k: int, z: complex) -> complex:
    al, be, ga = p.alpha, p.beta, p.gamma
    A = al / be
    x = be / ga ** 2
    c = 1.0 - x - complex(z) / ga
    a = c - A
    sign = -1.0 if k % 2 else 1.0
    if (c + k).real > 1.0:
        # log-space prefactor, then the unregularized series
        lg = (0.5 * k * math.log(be) - k * math.log(ga) + 0.5 * sf.log_gamma(A + k).real
              - sf.log_gamma(c + k))
        return sign * cmath.exp(lg) * sf.hyp1f1(a, c + k, x)
    pref = be ** (0.5 * k) * ga ** (-k) * math.exp(0.5 * sf.log_gamma(A + k).real)
    return sign * pref * sf.hyp1f1_regularized(a, c + k, x)


def confluent_model(p: ConfluentParams) -> JacobiModel:
    al, be, ga = p.alpha, p.beta, p.gamma
    A = al / be

    def gsq(k: int) -> float:
        return math.sqrt(2 * be) * math.exp((sf.log_gamma(0.5 * (A + k + 1)) - sf.log_gamma(0.5 * (A + k))).real)

    def eigvec(z: complex, count: int) -> np.ndarray:
        return np.array([_confluent_component(p, k, z) for k in range(1, count + 1)])

    def xi(z: complex, count: int) -> list:
        xi0 = math.sqrt(be * math.exp(sf.log_gamma(A + 1).real)) * confluent_char(p, z)
        return [xi0] + [_confluent_component(p, k, z) for k in range(1, count + 1)]

    spectrum = None
    if al == 0:
        def spectrum(lo: float, hi: float) -> list:
            j0 = max(1, math.ceil((lo + be / ga) / ga))
            out = []
            j = j0
            while -be / ga + ga * j <= hi:
                out.append(-be / ga + ga * j)
                j += 1
            return [e for e in out if e >= lo]

    return JacobiModel(
        name="confluent",
        lam=lambda k: ga * k,
        w=lambda k: math.sqrt(al + be * k),
        gamma_sq=gsq,
        side=UNILATERAL,
        closed_char=lambda z: confluent_char(p, z),
        closed_eigvec=eigvec,
        closed_xi=xi,
        closed_spectrum=spectrum,
        params=asdict(p),
    )


def confluent_finite_charpoly(p: ConfluentParams, n: int, z: complex) -> complex:
    """det(J_n - z) of the n x n section through two products of Kummer functions."""
    al, be, ga = p.alpha, p.beta, p.gamma
    A = al / be
    x = be / ga ** 2
    cp = x + complex(z) / ga  # b/g^2 + z/g
    lg = sf.log_gamma
    t1 = (cmath.exp(lg(n + 1 - cp) - lg(1 - cp)) * sf.hyp1f1(1 - A - cp, 1 - cp, x)
          * sf.hyp1f1(-n - A, -n + cp, x))
    if A == 0:
        t2 = 0j  # 1/Gamma(A) vanishes
    else:
        t2 = (x ** (n + 1) * cmath.exp(lg(n + 1 + A) + lg(-cp) - lg(n + 2 - cp)) * sf.rgamma(A)
              * sf.hyp1f1(1 - A, 1 + cp, x) * sf.hyp1f1(1 - A - cp, n + 2 - cp, x))
    return ga ** n * math.exp(-x) * (t1 - t2)


def confluent_char_from_sections(p: ConfluentParams, z: complex, tol: float = 1e-12,
                                 max_n: int = 1 << 16) -> complex:
    """Characteristic function as the limit of normalized section determinants.

    det(J_n - z) = prod(lam_k - z) F(gamma_k^2/(lam_k - z))_{k<=n} grows like
    gamma^n Gamma(n + 1 - b/g^2 - z/g); dividing that out leaves a sequence
    converging like 1/n, which is Richardson-extrapolated over doubling n.
    Only the F functional and the matrix entries are used.
    """
    al, be, ga = p.alpha, p.beta, p.gamma
    model = confluent_model(p)
    z = complex(z)
    s = z / ga
    cp = be / ga ** 2 + s
    xs: list = []
    # Gamma(n+1-s) / (Gamma(1-s) Gamma(n+1-cp)) as a running product; log-gamma
    # differences at large n lose too many digits
    norm = [sf.rgamma(1 - cp)]
    n, prev = 64, []
    while True:
        while len(xs) < n:
            k = len(xs) + 1
            xs.append(model.gamma_squared(k) / (ga * k - z))
            norm.append(norm[-1] * (k - s) / (k - cp))
        g = norm[n] * f_finite(xs[:n])
        row = [g]
        for m in range(1, min(len(prev), 7) + 1):
            f = 2.0 ** m
            row.append((f * row[m - 1] - prev[m - 1]) / (f - 1.0))
        if prev and abs(row[-1] - prev[-1]) <= max(tol, 4 * 2.0 ** -52 * n) * abs(row[-1]):
            return row[-1]
        if n >= max_n:
            raise NonConvergenceError("section determinants did not settle")
        prev = row
        n *= 2


def confluent_finite_eigvec(p: ConfluentParams, n: int, z: float, k_max: int | None = None) -> np.ndarray:
    """Components v_1..v_{k_max} (default n) of an eigenvector of the n x n section.

    Asking for k_max = n + 1 exposes the vanishing extra component.
    """
    al, be, ga = p.alpha, p.beta, p.gamma
    A = al / be
    x = be / ga ** 2
    cp = x + complex(z) / ga
    lg = sf.log_gamma
    k_max = n if k_max is None else k_max
    tail_a = sf.hyp1f1(-A - n, cp - n, x)
    tail_b = sf.hyp1f1(1 - A - cp, 2 - cp + n, x)
    out = []
    for k in range(1, k_max + 1):
        t1 = (cmath.exp(lg(A + k) + lg(1 - cp + n) - lg(1 - cp + k))
              * sf.hyp1f1(1 - A - cp, 1 - cp + k, x) * tail_a)
        t2 = (x ** (n - k + 1) * cmath.exp(lg(1 + A + n) + lg(-cp + k) - lg(2 - cp + n))
              * sf.hyp1f1(1 - A - k, 1 + cp - k, x) * tail_b)
        pref = (-1) ** k * be ** (k / 2) * ga ** (-k) * math.exp(-0.5 * lg(A + k).real)
        out.append(pref * (t1 - t2))
    v = np.array(out)
    if not np.all(np.isfinite(v)) or np.linalg.norm(v[:n]) == 0:
        raise DegenerateError("finite eigenvector is numerically null")
    return v


# ---------------------------------------------------------------- q-Bessel

@dataclass(frozen=True)
class QBesselParams:
    beta: float
    q: float

    def __post_init__(self) -> None:
        _check_real_q(self.q)
        if self.beta < 0:
            raise ParameterError("use beta >= 0 (the sign of beta is a unitary equivalence)")


def _check_real_q(q: float) -> None:
    if not isinstance(q, (int, float)) or not 0 < q < 1:
        raise ParameterError(f"q must be real in (0, 1), got {q!r}")
    sf.check_q(q)


def _widen(lo: float, hi: float, ulps: float = 8.0) -> tuple[float, float]:
    # window edges that are themselves eigenvalues must not fall out to rounding
    slack = ulps * 2.0 ** -52 * max(abs(lo), abs(hi))
    return lo - slack, hi + slack


def qbessel_spectrum(p: QBesselParams, lo: float, hi: float, min_abs: float = 0.0) -> list:
    q, be = p.q, p.beta
    lo, hi = _widen(lo, hi)
    out = []
    if hi > 0:
        m = math.floor(math.log(hi) / math.log(q)) if hi < math.inf else None
        m = max(m, -1000) if m is not None else -1000
        while True:
            v = q ** m
            if v < max(lo, min_abs, 1e-300):
                break
            if v <= hi:
                out.append(v)
            m += 1
    if lo < 0 and be > 0:
        m = 0
        while True:
            v = -be * be * q ** m
            if -v < max(min_abs, 1e-300):
                break
            if lo <= v <= hi:
                out.append(v)
            m += 1
    return sorted(out)


def _classify_qbessel(p: QBesselParams, z: float) -> tuple[str, int]:
    q, be = p.q, p.beta
    if z > 0:
        m = round(math.log(z) / math.log(q))
        if abs(z - q ** m) <= 1e-6 * abs(z):
            return "+", m
    elif z < 0 and be > 0:
        m = round(math.log(-z / be ** 2) / math.log(q))
        if m >= 0 and abs(z + be * be * q ** m) <= 1e-6 * abs(z):
            return "-", m
    raise ValueError(f"{z!r} is not an eigenvalue of the q-Bessel model")


def qbessel_vplus(p: QBesselParams, m: int, ks) -> np.ndarray:
    q, be = p.q, p.beta
    arg = 2.0 * q ** (-(2 * m + 1) / 4.0) * be
    return np.array([q ** ((m - k) / 4.0) * sf.jfrak(k - m, arg, q) for k in ks], dtype=complex)


def qbessel_vminus_formula(p: QBesselParams, m: int, k: int) -> tuple[complex, float]:
    """One component of the negative-eigenvalue eigenvector and the conditioning of its series."""
    q, be = p.q, p.beta
    b = -q ** (-m + k + 1) / be ** 2
    arg = -q ** (-2 * m + k + 1) / be ** 2
    val, cond = _phi01_reg_with_condition(b, q, arg)
    logpref = (k * (k - 4 * m - 1) / 4.0) * math.log(q) - k * math.log(be)
    pref = (-1) ** k * math.exp(logpref) / sf.poch_q_inf(q, q)
    return pref * val, cond


def _phi01_reg_with_condition(b: complex, q: float, z: complex) -> tuple[complex, float]:
    # same series as specfun.phi01_regularized, also returning sum|terms| / |sum|
    tail = sf.poch_q_inf(b, q)
    c = 1.0 + 0j
    total = c * tail
    absum = abs(total)
    quiet = 0
    bq = b
    k = 0
    while k < 100000:
        fac = 1.0 - bq
        bq *= q
        tail = sf.poch_q_inf(bq, q) if abs(fac) < 0.5 else tail / fac
        c *= q ** (2 * k) * z / (1.0 - q ** (k + 1))
        term = c * tail
        total += term
        absum += abs(term)
        k += 1
        if not cmath.isfinite(total):
            return total, math.inf
        if abs(term) < 1e-17 * abs(total) and abs(q ** (2 * k) * z) < 1.0:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    return total, absum / abs(total) if total != 0 else math.inf


def qbessel_vminus(p: QBesselParams, m: int, ks, cond_limit: float = 1e3) -> np.ndarray:
    """Negative-eigenvalue eigenvector on the index list ``ks`` (consecutive).

    The closed formula is used where its series is well conditioned; to the
    left of the first such index the minimal solution of the eigenvalue
    recurrence is continued by Miller's upward recurrence and matched there.
    """
    q, be = p.q, p.beta
    z = -be * be * q ** m
    ks = list(ks)
    vals = {}
    start = None
    for k in reversed(ks):
        val, cond = qbessel_vminus_formula(p, m, k)
        if cond > cond_limit:
            break
        vals[k] = val
        start = k
    if start is None:
        raise DegenerateError("no well-conditioned component of the negative eigenvector")
    if start > ks[0]:
        # Miller continuation on [ks[0], start], matched at the first trusted index
        left = _miller_left(p, z, ks[0], start)
        scale = vals[start] / left[-1] if left[-1] != 0 else 0.0
        for i, k in enumerate(range(ks[0], start)):
            vals[k] = scale * left[i]
    return np.array([vals[k] for k in ks], dtype=complex)


def _miller_left(p: QBesselParams, z: float, lo: int, hi: int, extra: int = 60) -> list:
    """Solution on [lo, hi] that decays as k -> -infinity, up to a constant."""
    q, be = p.q, p.beta
    start = lo - extra
    prev, cur = 0.0, 1.0
    out = {}
    for n in range(start, hi):
        # q^{(n-1)/2} b v_{n-1} + (q^n - z) v_n + q^{n/2} b v_{n+1} = 0
        nxt = -(q ** ((n - 1) / 2.0) * be * prev + (q ** n - z) * cur) / (q ** (n / 2.0) * be)
        prev, cur = cur, nxt
        if abs(cur) > 1e200:
            prev /= 1e200
            cur /= 1e200
            for key in out:
                out[key] /= 1e200
        if lo <= n + 1 <= hi:
            out[n + 1] = cur
    return [out[k] for k in range(lo, hi + 1)]


def qbessel_model(p: QBesselParams) -> JacobiModel:
    q, be = p.q, p.beta

    def gsq(n: int) -> float:
        if n % 2:  # n = 2k - 1
            return q ** ((n - 1) // 2)
        return q ** (n // 2) * be * be

    def char(z: complex) -> complex:
        z = complex(z)
        return sf.poch_q_inf(1.0 / z, q) * sf.poch_q_inf(q * z, q) * sf.poch_q_inf(-be * be / z, q)

    def eigvec(z: complex, count: int) -> np.ndarray:
        kind, m = _classify_qbessel(p, _real(z))
        ks = range(-count, count + 1)
        if kind == "+":
            return qbessel_vplus(p, m, ks)
        return qbessel_vminus(p, m, ks)

    return JacobiModel(
        name="qbessel",
        lam=lambda n: q ** n,
        w=lambda n: q ** (n / 2.0) * be,
        gamma_sq=gsq,
        side=BILATERAL,
        closed_char=char,
        closed_eigvec=eigvec,
        closed_spectrum=lambda lo, hi: qbessel_spectrum(p, lo, hi),
        accumulation=(0.0,),
        params=asdict(p),
    )


# ---------------------------------------------------------------- q-confluent

SIGMA_MAX = 20.0


@dataclass(frozen=True)
class QConfluentParams:
    sigma: float
    gamma: float
    q: float

    def __post_init__(self) -> None:
        _check_real_q(self.q)
        if not self.gamma > -1:
            raise ParameterError("q-confluent model needs gamma > -1")
        if abs(self.sigma) > SIGMA_MAX:
            raise ParameterError(f"|sigma| > {SIGMA_MAX} overflows cosh^2")


def qconfluent_char(p: QConfluentParams, z: complex) -> complex:
    if z == 0:
        raise PoleError("z = 0 is excluded")
    q, gm, sg = p.q, p.gamma, p.sigma
    c, s = math.cosh(sg / 2) ** 2, math.sinh(sg / 2) ** 2
    iz = 1.0 / complex(z)
    return sf.phi11_regularized(q ** (-gm) * c * iz, c * iz, q, -s * iz)


def qconfluent_eigvec_component(p: QConfluentParams, n: int, z: complex) -> complex:
    q, gm, sg = p.q, p.gamma, p.sigma
    c, s = math.cosh(sg / 2) ** 2, math.sinh(sg / 2) ** 2
    iz = 1.0 / complex(z)
    tz = 2.0 * complex(z)
    logmag = ((-0.5 * gm * n + 0.25 * n * (n - 3)) * math.log(q) + n * math.log(abs(math.sinh(sg)))
              - n * math.log(abs(tz)) - 0.5 * math.log(abs(sf.poch_q_inf(q ** (gm + n), q))))
    phase = (math.copysign(1.0, sg) ** n) * (abs(tz) / tz) ** n
    series = sf.phi11_regularized(q ** (-gm) * c * iz, q ** n * c * iz, q, -(q ** n) * s * iz)
    if logmag < -745:
        return 0j
    return math.exp(logmag) * phase * series


def qconfluent_spectrum(p: QConfluentParams, lo: float, hi: float, min_abs: float = 0.0) -> list:
    if p.gamma != 0:
        raise ValueError("explicit spectrum is known only for gamma = 0")
    q = p.q
    lo, hi = _widen(lo, hi)
    c, s = math.cosh(p.sigma / 2) ** 2, math.sinh(p.sigma / 2) ** 2
    if p.sigma == 0:
        s = 0.0
    out = []
    floor = max(min_abs, 1e-300)
    for base, sign in ((c, 1.0), (s, -1.0)):
        if base == 0:
            continue
        k = 0
        while base * q ** k >= floor:
            v = sign * base * q ** k
            if lo <= v <= hi:
                out.append(v)
            k += 1
    return sorted(out)


def qconfluent_model(p: QConfluentParams) -> JacobiModel:
    q, gm, sg = p.q, p.gamma, p.sigma
    shs = math.sinh(sg)

    def w(n: int) -> float:
        return 0.5 * shs * q ** ((n - gm - 1) / 2.0) * math.sqrt(1.0 - q ** (n + gm))

    def gsq(k: int) -> float:
        return (q ** ((k - gm) / 2.0 - 0.75) * shs * _real(sf.poch_q_inf(q ** (gm + k), q * q))
                / (2.0 * _real(sf.poch_q_inf(q ** (gm + k + 1), q * q))))

    def eigvec(z: complex, count: int) -> np.ndarray:
        if sg == 0:
            # diagonal matrix: eigenvalue q^{n-1} has the unit vector e_n
            n = round(math.log(_real(z)) / math.log(q)) + 1
            v = np.zeros(count, dtype=complex)
            if 1 <= n <= count:
                v[n - 1] = 1.0
            return v
        return np.array([qconfluent_eigvec_component(p, n, z) for n in range(1, count + 1)])

    def xi(z: complex, count: int) -> list:
        inv_poch = sf.poch_q_inf(1.0 / complex(z), q)
        scale = 2.0 * q ** ((gm + 1) / 2.0) * math.sqrt(_real(sf.poch_q_inf(q ** (gm + 1), q))) / (
            shs * inv_poch)
        out = [qconfluent_char(p, z) / inv_poch]
        out += [scale * qconfluent_eigvec_component(p, n, z) for n in range(1, count + 1)]
        return out

    return JacobiModel(
        name="qconfluent",
        lam=lambda n: q ** (n - 1),
        w=w,
        gamma_sq=gsq if sg != 0 else None,
        side=UNILATERAL,
        closed_char=lambda z: qconfluent_char(p, z),
        closed_eigvec=eigvec,
        closed_xi=xi if sg != 0 else None,
        closed_spectrum=(lambda lo, hi: qconfluent_spectrum(p, lo, hi)) if gm == 0 else None,
        accumulation=(0.0,),
        params=asdict(p),
    )


MODEL_BUILDERS = {
    "coulomb": (CoulombParams, coulomb_model),
    "confluent": (ConfluentParams, confluent_model),
    "qbessel": (QBesselParams, qbessel_model),
    "qconfluent": (QConfluentParams, qconfluent_model),
}


def build_model(name: str, params: dict) -> JacobiModel:
    """Construct a model from its name and a dict of float parameters."""
    try:
        cls, builder = MODEL_BUILDERS[name]
    except KeyError:
        raise ParameterError(f"unknown model {name!r}") from None
    try:
        p = cls(**params)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {name}: {exc}") from None
    return builder(p)


__all__ = [
    "CoulombParams",
    "ConfluentParams",
    "QBesselParams",
    "QConfluentParams",
    "coulomb_model",
    "confluent_model",
    "qbessel_model",
    "qconfluent_model",
    "coulomb_lambda",
    "coulomb_w",
    "coulomb_gamma",
    "coulomb_gamma_prefactor",
    "confluent_char",
    "confluent_finite_charpoly",
    "confluent_finite_eigvec",
    "qbessel_spectrum",
    "qbessel_vplus",
    "qbessel_vminus",
    "qconfluent_char",
    "qconfluent_spectrum",
    "build_model",
    "MODEL_BUILDERS",
]
