import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobispec import spectral as S
from jacobispec.errors import DegenerateError, PoleError
from jacobispec.models import (
    ConfluentParams,
    CoulombParams,
    QBesselParams,
    QConfluentParams,
    confluent_model,
    coulomb_model,
    qbessel_model,
    qconfluent_model,
)


def random_model(rng, n=12):
    lam = rng.uniform(-2, 2, n + 2)
    w = rng.uniform(0.2, 1.5, n + 2)
    return S.JacobiModel("random", lam=lambda k: lam[k - 1], w=lambda k: w[k - 1])


def dense(model, n):
    diag, off = S.truncate(model, n)
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


# ---- determinants

def test_charpoly_small_sizes():
    m = S.JacobiModel("m", lam=lambda k: 0.5 * k, w=lambda k: 0.3 + k)
    z = 0.37 - 0.2j
    assert abs(S.charpoly(m, 1, z) - (0.5 - z)) < 1e-15
    expected = (0.5 - z) * (1.0 - z) - 1.3 ** 2
    assert abs(S.charpoly(m, 2, z) - expected) < 1e-14


def test_charpoly_matches_dense_determinant():
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = random_model(rng)
        z = complex(rng.normal(), rng.normal())
        ref = np.linalg.det(dense(m, 6) - z * np.eye(6))
        assert abs(S.charpoly(m, 6, z) - ref) <= 1e-11 * abs(ref)


def test_charpoly_falls_back_on_diagonal_hit():
    m = S.JacobiModel("m", lam=lambda k: float(k), w=lambda k: 0.5)
    z = 2.0
    ref = np.linalg.det(dense(m, 4) - z * np.eye(4))
    assert abs(S.charpoly(m, 4, z) - ref) < 1e-12
    assert S.det_recurrence([1.0, 2.0], [0.5], z) == pytest.approx((1 - z) * (2 - z) - 0.25)


def test_gamma_products_reproduce_offdiagonal():
    for model in (coulomb_model(CoulombParams(1.0, 0.5)), confluent_model(ConfluentParams(0.3, 1.2, 0.8)),
                  qconfluent_model(QConfluentParams(0.7, 0.4, 0.5))):
        for k in range(1, 30):
            prod = model.gamma_squared(k) * model.gamma_squared(k + 1)
            assert abs(prod - model.w(k) ** 2) <= 1e-13 * abs(model.w(k)) ** 2


def test_default_gamma_construction():
    m = S.JacobiModel("m", lam=lambda k: 1.0 / k, w=lambda k: 1.0 / (k + 1))
    for k in range(1, 15):
        assert abs(m.gamma_squared(k) * m.gamma_squared(k + 1) - m.w(k) ** 2) < 1e-15


# ---- oracle

def test_sturm_oracle_small_cases():
    assert list(S.sym_tridiag_eigen(np.array([1.0, 1.0]), np.array([0.0]))) == pytest.approx([1.0, 1.0], abs=1e-12)
    assert list(S.sym_tridiag_eigen(np.array([0.0, 0.0]), np.array([1.0]))) == pytest.approx([-1.0, 1.0], abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2 ** 31))
def test_sturm_oracle_matches_lapack(n, seed):
    rng = np.random.default_rng(seed)
    diag = rng.normal(size=n)
    off = rng.normal(size=n - 1)
    ours = S.sym_tridiag_eigen(diag, off)
    ref = np.linalg.eigvalsh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1))
    assert np.max(np.abs(np.sort(ours) - ref)) < 1e-11


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 20), st.integers(0, 2 ** 31), st.floats(-4, 4))
def test_sturm_count_is_number_below(n, seed, t):
    rng = np.random.default_rng(seed)
    diag = rng.normal(size=n)
    off = rng.uniform(0.1, 1.0, size=n - 1)
    ev = np.linalg.eigvalsh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1))
    if np.min(np.abs(ev - t)) < 1e-9:
        return
    assert int(S.sturm_count(diag, off, np.array([t]))[0]) == int(np.sum(ev < t))


def test_oracle_matches_charpoly_roots():
    rng = np.random.default_rng(11)
    m = random_model(rng, 8)
    ev = S.oracle_eigenvalues(m, 8, -10, 10)
    for z in ev:
        # the 8x8 determinant changes sign across each oracle eigenvalue
        lo, hi = S.det_recurrence(*S.truncate(m, 8), z - 1e-8), S.det_recurrence(*S.truncate(m, 8), z + 1e-8)
        assert lo.real * hi.real < 0


def test_truncation_entries():
    a, b, g = 0.3, 1.2, 0.8
    diag, off = S.truncate(confluent_model(ConfluentParams(a, b, g)), 3)
    assert diag == pytest.approx([g, 2 * g, 3 * g])
    assert off == pytest.approx([math.sqrt(a + b), math.sqrt(a + 2 * b)])
    q, be = 0.5, 0.8
    diag, off = S.truncate(qbessel_model(QBesselParams(be, q)), 1)
    assert diag == pytest.approx([1 / q, 1, q])
    assert off == pytest.approx([q ** -0.5 * be, be])


# ---- xi and the characteristic function

def assert_three_term(m, z, vals, count, tol=1e-10):
    for k in range(2, count):
        r = m.w(k - 1) * vals[k - 1] + (m.lam(k) - z) * vals[k] + m.w(k) * vals[k + 1]
        scale = max(abs(m.w(k - 1) * vals[k - 1]), abs((m.lam(k) - z) * vals[k]))
        assert abs(r) <= tol * scale
    r1 = (m.lam(1) - z) * vals[1] + m.w(1) * vals[2]
    assert abs(r1 + vals[0]) <= tol * max(abs(vals[0]), abs(r1))


@pytest.mark.parametrize("z", [2.37 + 0.2j, -1.3 + 0.0j, 0.75 - 1j])
def test_generic_xi_satisfies_three_term_recurrence(z):
    m = coulomb_model(CoulombParams(1.0, 0.5))
    assert_three_term(m, z, S.xi(m, z, 12), 12)


@pytest.mark.parametrize("z", [0.37 + 0.2j, -1.3 + 0.0j, 2.75 - 1j])
def test_closed_xi_satisfies_three_term_recurrence(z):
    m = confluent_model(ConfluentParams(0.4, 1.0, 1.0))
    assert_three_term(m, z, S.exact_xi(m, z, 12), 12)


def test_xi_pole_on_diagonal():
    m = coulomb_model(CoulombParams(1.0, 0.5))
    with pytest.raises(PoleError):
        S.xi(m, m.lam(3), 4)


def test_xi_first_row_vanishes_at_eigenvalue():
    m = confluent_model(ConfluentParams(0.0, 1.0, 1.0))
    z = 4.0  # -beta/gamma + 5 gamma
    vals = S.exact_xi(m, z, 3)
    assert abs((m.lam(1) - z) * vals[1] + m.w(1) * vals[2]) <= 1e-12 * abs(vals[1])


def test_char_function_nonzero_off_spectrum():
    m = confluent_model(ConfluentParams(0.0, 1.0, 1.0))
    for z in (0.5, 2.5, -3.3, 1 + 1j):
        assert abs(S.char_function(m, z)) > 1e-3


def test_generic_char_route_for_unilateral_model():
    # without a closed form xi_0 comes from the F tail
    p = QConfluentParams(0.7, 0.0, 0.5)
    full = qconfluent_model(p)
    generic = S.JacobiModel("g", lam=full.lam, w=full.w, gamma_sq=full.gamma_sq)
    for z in (0.9 + 0.3j, -0.7 + 0j, 2.5 + 0j):
        assert abs(S.char_function(generic, z) - full.closed_xi(z, 0)[0]) < 1e-12 * max(1.0, abs(S.char_function(generic, z)))


# ---- root search

def test_confluent_eigenvalues_in_window():
    m = confluent_model(ConfluentParams(0.0, 1.0, 1.0))
    res = S.find_real_eigenvalues(m, 0.5, 10.5)
    assert res.values() == pytest.approx(np.arange(1.0, 11.0), abs=1e-8)
    assert res.method == "char_zero"
    assert all(e.residual <= 1e-8 for e in res.eigenvalues)
    assert np.all(np.diff(res.values()) > 0)


def test_qbessel_positive_eigenvalues():
    q, be = 0.5, 0.8
    m = qbessel_model(QBesselParams(be, q))
    res = S.find_real_eigenvalues(m, q ** 5 * 0.5, 2.0, residual_count=60)
    assert res.values() == pytest.approx([q ** k for k in range(6, -2, -1)], rel=1e-9)
    assert not res.errors


def test_qconfluent_gamma_zero_spectrum():
    q, sg = 0.5, 1.0
    m = qconfluent_model(QConfluentParams(sg, 0.0, q))
    res = S.find_real_eigenvalues(m, -0.3, 1.7)
    c, s = math.cosh(sg / 2) ** 2, math.sinh(sg / 2) ** 2
    exact = sorted([c * q ** k for k in range(40) if c * q ** k > 1e-6]
                   + [-s * q ** k for k in range(40) if s * q ** k > 1e-6])
    assert res.values() == pytest.approx(exact, abs=1e-8)


def test_accumulation_point_never_reported():
    m = qbessel_model(QBesselParams(0.8, 0.5))
    res = S.find_real_eigenvalues(m, -0.05, 0.05, with_residuals=False)
    assert all(abs(z) >= S.ToleranceConfig().accumulation_margin for z in res.values())


def test_zeros_are_sign_changes():
    m = coulomb_model(CoulombParams(1.0, 0.5))
    res = S.find_real_eigenvalues(m, 0.05, 1.0, with_residuals=False)
    for z in res.values():
        d = 1e-9 * max(1.0, abs(z))
        assert S.char_function(m, z - d).real * S.char_function(m, z + d).real < 0


def test_window_must_be_ordered():
    m = confluent_model(ConfluentParams(0.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        S.find_real_eigenvalues(m, 2.0, 1.0)


def test_pole_brackets_dropped():
    # 1/(z - 1) changes sign at 1 without vanishing
    m = S.JacobiModel("p", lam=lambda k: 1.0, w=lambda k: 1.0, closed_char=lambda z: 1.0 / (z - 1.0 + 1e-7))
    res = S.find_real_eigenvalues(m, 0.0, 2.0, with_residuals=False)
    assert len(res.eigenvalues) == 0
    assert len(res.poles) == 1


def test_zero_duality_with_truncation():
    m = coulomb_model(CoulombParams(1.0, 0.5))
    res = S.find_real_eigenvalues(m, 0.05, 1.0, with_residuals=False)
    orc = S.oracle_eigenvalues(m, 200, 0.05, 1.0)
    pairs, left_a, left_b = S.match_spectra(res.values(), orc)
    assert not left_a and not left_b
    assert max(abs(a - b) for a, b in pairs) < 1e-8


# ---- eigenvectors

def test_eigenvector_is_minimal_solution():
    m = confluent_model(ConfluentParams(0.0, 1.0, 1.0))
    z = 3.0
    v = S.eigenvector(m, z, 40)
    tail = np.abs(v[20:30])
    assert np.all(tail[1:] < tail[:-1])
    # start the forward recurrence from slightly wrong initial data: it blows up
    x = [v[0] * (1 + 1e-8), v[1]]
    for k in range(2, 40):
        x.append(-(m.w(k - 1) * x[k - 2] + (m.lam(k) - z) * x[k - 1]) / m.w(k))
    assert abs(x[-1]) > 1e3 * abs(v[39]) + 1e-6


def test_eigenvector_normalized_and_residual_small():
    m = coulomb_model(CoulombParams(1.0, 0.5))
    z = S.find_real_eigenvalues(m, 0.05, 1.0, with_residuals=False).values()[-1]
    v = S.eigenvector(m, z, 200)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert S.eigen_residual(m, z, v) < 1e-8


def test_null_eigenvector_rejected():
    m = S.JacobiModel("z", lam=lambda k: 1.0, w=lambda k: 1.0, closed_eigvec=lambda z, n: np.zeros(n))
    with pytest.raises(DegenerateError):
        S.eigenvector(m, 0.5, 5)


def test_norm_identity_confluent():
    m = confluent_model(ConfluentParams(0.5, 1.0, 1.0))
    z = S.find_real_eigenvalues(m, -1.0, 3.0, with_residuals=False).values()[0]
    lhs, rhs = S.norm_identity_check(m, z)
    assert abs(lhs - rhs) <= 1e-5 * abs(lhs)


# ---- results

def test_spectral_result_round_trip():
    res = S.SpectralResult([S.Eigenvalue(1.5, (1.0, 2.0), 1e-13), S.Eigenvalue(2.5, None, None)],
                           "char_zero", {"alpha": 0.0}, [{"error": "x"}], [3.25])
    assert S.SpectralResult.from_dict(res.to_dict()) == res


def test_tolerance_config_validation():
    with pytest.raises(ValueError):
        S.ToleranceConfig(work_tol=0)
    with pytest.raises(ValueError):
        S.ToleranceConfig(scan_points=1)
    with pytest.raises(ValueError):
        S.ToleranceConfig(accumulation_margin=1e-13)


def test_match_spectra_pairs_nearest():
    pairs, la, lb = S.match_spectra([1.0, 2.0, 5.0], [1.0001, 2.0002])
    assert pairs == [(1.0, 1.0001), (2.0, 2.0002)]
    assert la == [5.0] and lb == []
