"""Jacobi matrices: characteristic functions, eigenvalue search and a Sturm oracle."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateError, JacobiSpecError, NonConvergenceError, PoleError
from .ffunc import BilateralSeq, TailSeq, f_bilateral, f_finite, f_tail_suffixes_extrapolated

log = logging.getLogger(__name__)

UNILATERAL = "unilateral"
BILATERAL = "bilateral"


@dataclass(frozen=True)
class ToleranceConfig:
    work_tol: float = 1e-14
    root_tol: float = 1e-12
    scan_points: int = 2000
    truncation_N: int = 200
    accumulation_margin: float = 1e-6
    points_per_gap: int = 64

    def __post_init__(self) -> None:
        if not (0 < self.work_tol < 1 and 0 < self.root_tol < 1):
            raise ValueError("tolerances must lie in (0, 1)")
        if self.scan_points < 2 or self.truncation_N < 1:
            raise ValueError("scan_points >= 2 and truncation_N >= 1 required")
        if self.accumulation_margin < 10 * self.root_tol:
            raise ValueError("accumulation_margin must be at least 10 * root_tol")


@dataclass
class JacobiModel:
    """A Jacobi matrix given by its diagonal ``lam(k)`` and off-diagonal ``w(k)``.

    Off-diagonal ``w(k)`` couples rows k and k+1.  Unilateral models are
    indexed from 1, bilateral ones by all integers.  The ``closed_*``
    callables supply model-specific formulas:

    * ``closed_char(z)``: characteristic function whose zeros are the spectrum;
    * ``closed_eigvec(z, count)``: components 1..count (unilateral) or
      -count..count (bilateral) of an eigenvector at an eigenvalue z;
    * ``closed_xi(z, count)``: ``[xi_0, ..., xi_count]`` of the solution with
      ``(J - z) xi = -xi_0 e_1``, so that xi_0 is the characteristic function;
    * ``closed_spectrum(lo, hi)``: exact eigenvalues inside a window.
    """

    name: str
    lam: Callable[[int], float]
    w: Callable[[int], float]
    gamma_sq: Optional[Callable[[int], complex]] = None
    side: str = UNILATERAL
    closed_char: Optional[Callable[[complex], complex]] = None
    closed_eigvec: Optional[Callable[[complex, int], np.ndarray]] = None
    closed_xi: Optional[Callable[[complex, int], list]] = None
    closed_spectrum: Optional[Callable[[float, float], list]] = None
    accumulation: tuple = ()
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.side not in (UNILATERAL, BILATERAL):
            raise ValueError(f"side must be {UNILATERAL!r} or {BILATERAL!r}")

    def first_index(self, count: int) -> int:
        return -count if self.side == BILATERAL else 1

    def gamma_squared(self, k: int) -> complex:
        if self.gamma_sq is not None:
            return self.gamma_sq(k)
        return _default_gamma_sq(self, k)


def _default_gamma_sq(model: JacobiModel, k: int) -> complex:
    # gamma_1^2 = w_1, then gamma_{k+1}^2 = w_k^2 / gamma_k^2 (and downward for
    # bilateral models); only the products gamma_k^2 gamma_{k+1}^2 = w_k^2 matter
    cache = model.__dict__.setdefault("_gsq_cache", {1: complex(model.w(1))})
    if k in cache:
        return cache[k]
    if k > 1:
        j = max(i for i in cache if i < k)
        while j < k:
            cache[j + 1] = model.w(j) ** 2 / cache[j]
            j += 1
    else:
        j = min(i for i in cache if i > k)
        while j > k:
            cache[j - 1] = model.w(j - 1) ** 2 / cache[j]
            j -= 1
    return cache[k]


@dataclass
class Eigenvalue:
    z: float
    bracket: Optional[tuple]
    residual: Optional[float]

    def to_dict(self) -> dict:
        return {"z": self.z, "bracket": list(self.bracket) if self.bracket else None,
                "residual": self.residual}

    @classmethod
    def from_dict(cls, d: dict) -> "Eigenvalue":
        br = d.get("bracket")
        return cls(d["z"], tuple(br) if br is not None else None, d.get("residual"))


@dataclass
class SpectralResult:
    eigenvalues: list
    method: str
    params: dict
    errors: list = field(default_factory=list)
    poles: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "params": dict(self.params),
            "eigenvalues": [e.to_dict() for e in self.eigenvalues],
            "errors": list(self.errors),
            "poles": list(self.poles),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SpectralResult":
        return cls([Eigenvalue.from_dict(e) for e in d["eigenvalues"]], d["method"],
                   dict(d["params"]), list(d.get("errors", [])), list(d.get("poles", [])))

    def values(self) -> np.ndarray:
        return np.array([e.z for e in self.eigenvalues])


# ---------------------------------------------------------------- determinants

def det_recurrence(diag: Sequence[complex], off: Sequence[complex], z: complex) -> complex:
    """det(J_n - z) from D_k = (a_k - z) D_{k-1} - b_{k-1}^2 D_{k-2}."""
    d_prev, d_cur = 1.0 + 0j, 1.0 + 0j
    for k, a in enumerate(diag):
        if k == 0:
            d_prev, d_cur = d_cur, (a - z) * d_cur
        else:
            d_prev, d_cur = d_cur, (a - z) * d_cur - off[k - 1] ** 2 * d_prev
    return d_cur


def charpoly(model: JacobiModel, n: int, z: complex, cfg: ToleranceConfig = ToleranceConfig()) -> complex:
    """det(J_n - z) of the leading n x n block through the F functional.

    Falls back on the determinant recurrence when z hits a diagonal entry.
    """
    lam = [complex(model.lam(k)) for k in range(1, n + 1)]
    scale = max(1.0, abs(z))
    if any(abs(l - z) <= cfg.work_tol * scale for l in lam):
        return det_recurrence(lam, [complex(model.w(k)) for k in range(1, n)], z)
    xs = [model.gamma_squared(k) / (lam[k - 1] - z) for k in range(1, n + 1)]
    prod = 1.0 + 0j
    for l in lam:
        prod *= l - z
    return prod * f_finite(xs)


# ---------------------------------------------------------------- xi solution

def xi(model: JacobiModel, z: complex, count: int, cfg: ToleranceConfig = ToleranceConfig()) -> list:
    """``[xi_0, ..., xi_count]`` from the generic F-tail construction.

    xi_k = prod_{l<=k} w_{l-1}/(z - lam_l) * F({gamma_l^2/(lam_l - z)}_{l>k}),
    with w_0 = 1.
    """
    if model.side != UNILATERAL:
        raise ValueError("xi is defined for unilateral models")
    z = complex(z)
    scale = max(1.0, abs(z))

    def x(k: int) -> complex:
        d = complex(model.lam(k)) - z
        if abs(d) <= cfg.work_tol * scale:
            raise PoleError(f"z = {z} coincides with diagonal entry {k}")
        return model.gamma_squared(k) / d

    tails = f_tail_suffixes_extrapolated(TailSeq(x, k0=1), count, tol=cfg.work_tol)
    out = [tails[0]]
    pref = 1.0 + 0j
    for k in range(1, count + 1):
        wprev = 1.0 if k == 1 else complex(model.w(k - 1))
        pref *= wprev / (z - complex(model.lam(k)))
        out.append(pref * tails[k])
    return out


def exact_xi(model: JacobiModel, z: complex, count: int, cfg: ToleranceConfig = ToleranceConfig()) -> list:
    if model.closed_xi is not None:
        return list(model.closed_xi(z, count))
    return xi(model, z, count, cfg)


def char_function(model: JacobiModel, z: complex, cfg: ToleranceConfig = ToleranceConfig()) -> complex:
    """Characteristic function: the closed form when known, else xi_0 or the bilateral F."""
    if model.closed_char is not None:
        return complex(model.closed_char(complex(z)))
    z = complex(z)
    if model.side == UNILATERAL:
        return xi(model, z, 0, cfg)[0]
    scale = max(1.0, abs(z))

    def x(k: int) -> complex:
        d = complex(model.lam(k)) - z
        if abs(d) <= cfg.work_tol * scale:
            raise PoleError(f"z = {z} coincides with diagonal entry {k}")
        return model.gamma_squared(k) / d

    return f_bilateral(BilateralSeq(x), tol=cfg.work_tol)


# ---------------------------------------------------------------- truncation and oracle

def truncate(model: JacobiModel, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the finite section: rows 1..N, or -N..N if bilateral."""
    if model.side == BILATERAL:
        idx = range(-N, N + 1)
    else:
        idx = range(1, N + 1)
    diag = np.array([float(np.real(model.lam(k))) for k in idx])
    off = np.array([float(np.real(model.w(k))) for k in list(idx)[:-1]])
    return diag, off


def sturm_count(diag: np.ndarray, off: np.ndarray, x) -> np.ndarray:
    """Number of eigenvalues strictly below each x, from the LDL^T inertia."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    off2 = np.asarray(off, dtype=float) ** 2
    pivmin = np.finfo(float).tiny * max(1.0, float(off2.max()) if off2.size else 1.0)
    d = diag[0] - x
    d = np.where(np.abs(d) < pivmin, -pivmin, d)
    cnt = (d < 0).astype(int)
    for k in range(1, len(diag)):
        d = (diag[k] - x) - off2[k - 1] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        cnt += d < 0
    return cnt


def sym_tridiag_eigen(diag, off, lo: Optional[float] = None, hi: Optional[float] = None,
                      tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of a real symmetric tridiagonal matrix by Sturm bisection.

    Only eigenvalues in ``[lo, hi)`` are returned when a window is given.
    The interval for each eigenvalue is bisected until it is below ``tol`` or
    a few ulps of the eigenvalue, whichever is larger.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = len(diag)
    if n == 0:
        return np.empty(0)
    rad = np.zeros(n)
    if n > 1:
        rad[:-1] += np.abs(off)
        rad[1:] += np.abs(off)
    g_lo = float(np.min(diag - rad))
    g_hi = float(np.max(diag + rad))
    spread = max(abs(g_lo), abs(g_hi), 1.0)
    g_lo -= 1e-12 * spread
    g_hi += 1e-12 * spread
    a_lo = g_lo if lo is None else max(g_lo, lo)
    a_hi = g_hi if hi is None else min(g_hi, hi)
    if a_lo >= a_hi:
        return np.empty(0)
    c_lo, c_hi = sturm_count(diag, off, [a_lo, a_hi])
    idx = np.arange(c_lo, c_hi)
    if idx.size == 0:
        return np.empty(0)
    a = np.full(idx.size, a_lo)
    b = np.full(idx.size, a_hi)
    eps = np.finfo(float).eps
    for _ in range(400):
        width_ok = (b - a) <= np.maximum(tol, 4 * eps * np.maximum(np.abs(a), np.abs(b)))
        if width_ok.all():
            break
        mid = 0.5 * (a + b)
        c = sturm_count(diag, off, mid)
        upper = c > idx
        b = np.where(upper & ~width_ok, mid, b)
        a = np.where(~upper & ~width_ok, mid, a)
    return 0.5 * (a + b)


def oracle_eigenvalues(model: JacobiModel, N: int, lo: float, hi: float, tol: float = 1e-12) -> np.ndarray:
    diag, off = truncate(model, N)
    return sym_tridiag_eigen(diag, off, lo, hi, tol)


# ---------------------------------------------------------------- eigenvectors

def eigenvector(model: JacobiModel, z: complex, count: Optional[int] = None,
                cfg: ToleranceConfig = ToleranceConfig()) -> np.ndarray:
    """Unit eigenvector components at an (approximate) eigenvalue z.

    Unilateral: indices 1..count; bilateral: -count..count.
    """
    count = cfg.truncation_N if count is None else count
    if model.closed_eigvec is not None:
        v = np.asarray(model.closed_eigvec(z, count), dtype=complex)
    elif model.side == UNILATERAL:
        v = np.asarray(xi(model, z, count, cfg)[1:], dtype=complex)
    else:
        raise JacobiSpecError("no eigenvector construction for this bilateral model")
    if not np.all(np.isfinite(v)):
        raise DegenerateError("eigenvector has non-finite components")
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0 or not math.isfinite(nrm) or nrm < 1e-300:
        raise DegenerateError("eigenvector is numerically null")
    return v / nrm


def apply_shifted(model: JacobiModel, z: complex, v: np.ndarray, first: int) -> np.ndarray:
    """Rows of (J - z) v whose neighbours all lie inside the index window."""
    n = len(v)
    rows = []
    for i in range(1, n - 1) if model.side == BILATERAL else range(0, n - 1):
        k = first + i
        acc = (complex(model.lam(k)) - z) * v[i] + complex(model.w(k)) * v[i + 1]
        if i > 0:
            acc += complex(model.w(k - 1)) * v[i - 1]
        rows.append(acc)
    return np.array(rows)


def eigen_residual(model: JacobiModel, z: complex, v: np.ndarray) -> float:
    """||(J - z) v|| / ||v|| over the interior rows of the window."""
    count = (len(v) - 1) // 2 if model.side == BILATERAL else len(v)
    first = model.first_index(count)
    r = apply_shifted(model, z, v, first)
    return float(np.linalg.norm(r) / np.linalg.norm(v))


def norm_identity_check(model: JacobiModel, z: float, h: float = 1e-5, count: Optional[int] = None,
                        cfg: ToleranceConfig = ToleranceConfig()) -> tuple[float, float]:
    """Return (sum_k xi_k^2, xi_0'(z) xi_1(z)) with a central difference for xi_0'."""
    count = cfg.truncation_N if count is None else count
    vals = exact_xi(model, z, count, cfg)
    norm2 = sum(complex(v) ** 2 for v in vals[1:])
    d0 = (exact_xi(model, z + h, 0, cfg)[0] - exact_xi(model, z - h, 0, cfg)[0]) / (2 * h)
    return float(np.real(norm2)), float(np.real(d0 * vals[1]))


# ---------------------------------------------------------------- root search

def _scan_grid(model: JacobiModel, lo: float, hi: float, cfg: ToleranceConfig) -> np.ndarray:
    pts = [np.linspace(lo, hi, cfg.scan_points)]
    # extra density between neighbouring eigenvalues of a coarse section
    try:
        coarse = oracle_eigenvalues(model, min(cfg.truncation_N, 100), lo, hi, tol=1e-9)
    except JacobiSpecError:
        coarse = np.empty(0)
    marks = np.concatenate(([lo], np.sort(coarse), [hi]))
    for a, b in zip(marks[:-1], marks[1:]):
        if b > a:
            pts.append(np.linspace(a, b, cfg.points_per_gap + 2)[1:-1])
    grid = np.unique(np.concatenate(pts))
    for acc in model.accumulation:
        grid = grid[np.abs(grid - acc) >= cfg.accumulation_margin]
    return grid


def _segments(grid: np.ndarray, model: JacobiModel, cfg: ToleranceConfig) -> list:
    """Split the grid so that no interval straddles an excluded accumulation zone."""
    segs = [grid]
    for acc in model.accumulation:
        new = []
        for s in segs:
            left, right = s[s < acc], s[s > acc]
            new += [p for p in (left, right) if p.size]
        segs = new
    return segs


def _safe_eval(f: Callable[[float], float], x: float) -> float:
    try:
        v = f(x)
    except (PoleError, ZeroDivisionError, OverflowError):
        return math.nan
    return v if math.isfinite(v) else math.nan


def find_real_eigenvalues(model: JacobiModel, lo: float, hi: float,
                          cfg: ToleranceConfig = ToleranceConfig(),
                          with_residuals: bool = True,
                          residual_count: Optional[int] = None) -> SpectralResult:
    """Real zeros of the characteristic function inside ``[lo, hi]``.

    Sign changes on a scan grid are refined by bisection to ``root_tol``.
    Brackets whose values grow under refinement are poles and are dropped.  Roots closer than ``5 root_tol`` are
    merged and eigenvector residuals are attached when a construction exists.
    """
    if not hi > lo:
        raise ValueError("window must satisfy lo < hi")
    errors: list = []
    poles: list = []

    def f(x: float) -> float:
        return char_function(model, x, cfg).real

    grid = _scan_grid(model, lo, hi, cfg)
    roots: list = []
    for seg in _segments(grid, model, cfg):
        vals = np.array([_safe_eval(f, x) for x in seg])
        for i in range(len(seg)):
            if vals[i] == 0.0:
                roots.append((float(seg[i]), (float(seg[i]), float(seg[i]))))
        for i in range(len(seg) - 1):
            fa, fb = vals[i], vals[i + 1]
            if not (math.isfinite(fa) and math.isfinite(fb)) or fa * fb >= 0:
                continue
            a, b = float(seg[i]), float(seg[i + 1])
            start = max(abs(fa), abs(fb))
            try:
                ra, rb, ga, gb = _bisect(f, a, b, fa, fb, cfg.root_tol)
            except JacobiSpecError as exc:
                errors.append({"bracket": [a, b], "error": str(exc)})
                continue
            end = max(abs(ga), abs(gb))
            # a zero shrinks |f| under refinement, a pole inflates it
            if end > start:
                poles.append(0.5 * (ra + rb))
                continue
            roots.append((0.5 * (ra + rb), (a, b)))
    roots.sort(key=lambda r: r[0])
    merged: list = []
    for r in roots:
        if merged and abs(r[0] - merged[-1][0]) <= 5 * cfg.root_tol:
            continue
        merged.append(r)
    eigs = []
    for z, br in merged:
        if any(abs(z - acc) < cfg.accumulation_margin for acc in model.accumulation):
            continue
        res = None
        if with_residuals:
            try:
                v = eigenvector(model, z, residual_count, cfg)
                res = eigen_residual(model, z, v)
            except (JacobiSpecError, ValueError, ZeroDivisionError, OverflowError) as exc:
                errors.append({"z": z, "error": f"residual: {exc}"})
        eigs.append(Eigenvalue(z, br, res))
    return SpectralResult(eigs, "char_zero", dict(model.params), errors, poles)


def _bisect(f, a: float, b: float, fa: float, fb: float, tol: float):
    for _ in range(300):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if not math.isfinite(fm):
            raise NonConvergenceError(f"characteristic function not finite at {m}")
        if fm == 0.0:
            return m, m, 0.0, 0.0
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return a, b, fa, fb


def oracle_result(model: JacobiModel, N: int, lo: float, hi: float,
                  cfg: ToleranceConfig = ToleranceConfig()) -> SpectralResult:
    eigs = oracle_eigenvalues(model, N, lo, hi, tol=min(cfg.root_tol, 1e-12))
    keep = [Eigenvalue(float(z), None, None) for z in eigs
            if all(abs(z - acc) >= cfg.accumulation_margin for acc in model.accumulation)]
    return SpectralResult(keep, "oracle", dict(model.params, N=N))


def match_spectra(a: Sequence[float], b: Sequence[float]) -> tuple[list, list, list]:
    """Greedy nearest pairing of two sorted spectra.

    Returns matched pairs and the unmatched leftovers of each input.
    """
    a = sorted(a)
    b = sorted(b)
    pairs, used = [], set()
    left_a = []
    for x in a:
        best, bj = None, None
        for j, y in enumerate(b):
            if j in used:
                continue
            d = abs(x - y)
            if best is None or d < best:
                best, bj = d, j
        if bj is None:
            left_a.append(x)
            continue
        # only accept when x is also the nearest a-value to b[bj]
        y = b[bj]
        nearest_a = min(a, key=lambda t: abs(t - y))
        if nearest_a == x:
            pairs.append((x, y))
            used.add(bj)
        else:
            left_a.append(x)
    left_b = [y for j, y in enumerate(b) if j not in used]
    return pairs, left_a, left_b


__all__ = [
    "ToleranceConfig",
    "JacobiModel",
    "Eigenvalue",
    "SpectralResult",
    "UNILATERAL",
    "BILATERAL",
    "det_recurrence",
    "charpoly",
    "xi",
    "exact_xi",
    "char_function",
    "truncate",
    "sturm_count",
    "sym_tridiag_eigen",
    "oracle_eigenvalues",
    "oracle_result",
    "eigenvector",
    "eigen_residual",
    "norm_identity_check",
    "find_real_eigenvalues",
    "match_spectra",
]
