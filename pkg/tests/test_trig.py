import math

import numpy as np
import pytest
from scipy.linalg import cosm, expm, sinm

from conftest import SIGMA1, SIGMA2, SIGMA3, nilpotent_pair, scaled_random, taylor_exp_nilpotent
from zastrig.lie import zassenhaus_terms
from zastrig.matrix import DimensionError, eval_lie_expr, mat_cos_sin, mat_exp
from zastrig.trig import (factor_chain, generalized_identity_eval, left_oriented_psi,
                          numeric_c_terms, psi_recursive, psi_sequence, psi_via_factored_z,
                          symmetrized_cos, zassenhaus_truncated_product)


def norm2(a):
    return np.linalg.norm(a, 2)


def commuting_pair():
    return np.diag([0.3, -0.7, 1.1]), np.diag([0.5, 0.2, -0.4])


def real_pair(seed, dim, nx, ny):
    r = np.random.default_rng(seed)
    return scaled_random(r, dim, nx), scaled_random(r, dim, ny)


# -- numeric C-terms ---------------------------------------------------------

def test_c2_on_paulis():
    assert np.abs(numeric_c_terms(SIGMA1, SIGMA3, 2)[0] - 1j * SIGMA2).max() < 1e-15


def test_commuting_terms_vanish():
    x, y = commuting_pair()
    assert all(norm2(c) <= 1e-14 for c in numeric_c_terms(x, y, 10))


@pytest.mark.parametrize("seed", range(3))
def test_numeric_matches_symbolic(seed):
    x, y = real_pair(seed, 4, 0.5, 0.5)
    sym = zassenhaus_terms(8)
    num = numeric_c_terms(x, y, 8)
    for n, (s, c) in enumerate(zip(sym, num), start=2):
        assert norm2(eval_lie_expr(s, x, y) - c) <= 1e-12 * 0.5 ** n * 10


def test_numeric_terms_input_checks():
    with pytest.raises(DimensionError):
        numeric_c_terms(np.eye(2), np.eye(3), 3)
    with pytest.raises(ValueError):
        numeric_c_terms(np.eye(2), np.eye(2), 1)


# -- truncated product -------------------------------------------------------

def test_product_commuting_order_one():
    x, y = commuting_pair()
    assert np.abs(zassenhaus_truncated_product(x, y, 1) - expm(x + y)).max() < 1e-13


def test_product_nilpotent_exact_at_two():
    x, y = nilpotent_pair()
    exact = taylor_exp_nilpotent(x + y)
    assert np.abs(zassenhaus_truncated_product(x, y, 2) - exact).max() < 1e-15


@pytest.mark.parametrize("seed", range(4))
def test_product_converges(seed):
    x, y = real_pair(seed, 4, 0.5, 0.5)
    ref = expm(x + y)
    e4 = norm2(zassenhaus_truncated_product(x, y, 4) - ref)
    e10 = norm2(zassenhaus_truncated_product(x, y, 10) - ref)
    assert e10 < e4


# -- recursion ----------------------------------------------------------------

def test_psi1_commuting_is_exact():
    x, y = commuting_pair()
    ap = psi_recursive(x, y, 1)
    assert np.abs(ap.psi_c - cosm(x + y)).max() < 1e-15
    assert np.abs(ap.psi_s - sinm(x + y)).max() < 1e-15


def test_psi2_nilpotent_is_exact():
    x, y = nilpotent_pair()
    ap = psi_recursive(x, y, 2)
    z = x + y
    z2 = z @ z
    exact_c = np.eye(3) - z2 / 2
    exact_s = z
    assert not (z2 @ z).any()
    assert np.abs(ap.psi_c - exact_c).max() < 1e-15
    assert np.abs(ap.psi_s - exact_s).max() < 1e-15


def closed_form_order4(x, y):
    """cos/sin(X+Y) through C_4 written out as explicit products."""
    c2, c3, c4 = (eval_lie_expr(c, x, y) for c in zassenhaus_terms(4))
    cx, sx = cosm(x), sinm(x)
    cy, sy = cosm(y), sinm(y)
    e_m2, e4 = expm(-c2), expm(c4)
    cc3, sc3 = cosm(c3), sinm(c3)
    cos4 = ((cx @ cy - sx @ sy) @ e_m2 @ cc3 + (cx @ sy + sx @ cy) @ e_m2 @ sc3) @ e4
    sin4 = ((sx @ sy - cx @ cy) @ e_m2 @ sc3 + (cx @ sy + sx @ cy) @ e_m2 @ cc3) @ e4
    return cos4, sin4


@pytest.mark.parametrize("seed", range(5))
def test_psi4_matches_closed_form(seed):
    x, y = real_pair(seed, 4, 0.5, 0.4)
    ap = psi_recursive(x, y, 4)
    c4, s4 = closed_form_order4(x, y)
    assert np.abs(ap.psi_c - c4).max() < 1e-13
    assert np.abs(ap.psi_s - s4).max() < 1e-13


def test_psi_rejects_bad_order():
    with pytest.raises(ValueError):
        psi_recursive(np.eye(2), np.eye(2), 0)


def test_sequence_consistent_with_single_calls():
    x, y = real_pair(7, 3, 0.6, 0.3)
    seq = psi_sequence(x, y, 6)
    for ap in seq:
        single = psi_recursive(x, y, ap.order)
        assert np.array_equal(single.psi_c, ap.psi_c)
        assert len(ap.c_terms_used) == ap.order - 1


# -- factored chains ------------------------------------------------------------

@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 10])
def test_recursive_equals_factored(seed, n):
    x, y = real_pair(seed, 6, 0.5, 0.5)
    a = psi_recursive(x, y, n)
    b = psi_via_factored_z(x, y, n)
    tol = 1e-12 * math.exp(2 * (norm2(x) + norm2(y)))
    assert norm2(a.psi_c - b.psi_c) <= tol
    assert norm2(a.psi_s - b.psi_s) <= tol


@pytest.mark.parametrize("n", [1, 4, 7])
def test_chains_are_conjugate_for_real_input(n):
    x, y = real_pair(11, 5, 0.6, 0.4)
    ch = factor_chain(x, y, n)
    assert np.abs(ch.z2 - ch.z1.conj()).max() < 1e-12


@pytest.mark.parametrize("n", [1, 3, 6])
def test_real_inputs_give_real_psi(n):
    x, y = real_pair(12, 5, 0.6, 0.4)
    ap = psi_recursive(x, y, n)
    assert np.abs(ap.psi_c.imag).max() <= 1e-12
    assert np.abs(ap.psi_s.imag).max() <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 5])
def test_zero_inputs(n):
    z = np.zeros((3, 3))
    for build in (psi_via_factored_z, psi_recursive, left_oriented_psi):
        ap = build(z, z, n)
        assert np.array_equal(ap.psi_c, np.eye(3)) and not ap.psi_s.any()


def test_complex_inputs_factored_converges():
    r = np.random.default_rng(5)
    x = scaled_random(r, 4, 0.3, complex_=True)
    y = scaled_random(r, 4, 0.3, complex_=True)
    ref = cosm(x + y)
    e2 = norm2(psi_via_factored_z(x, y, 2).psi_c - ref)
    e8 = norm2(psi_via_factored_z(x, y, 8).psi_c - ref)
    assert e8 < 1e-3 * e2
    # the explicit product formulas keep the recursion valid for complex inputs
    assert norm2(psi_recursive(x, y, 8).psi_c - psi_via_factored_z(x, y, 8).psi_c) < 1e-12


# -- left-oriented --------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 3, 6])
def test_left_commuting(n):
    x, y = commuting_pair()
    a, b = left_oriented_psi(x, y, n), psi_recursive(x, y, n)
    assert np.abs(a.psi_c - b.psi_c).max() < 1e-14
    assert np.abs(a.psi_s - b.psi_s).max() < 1e-14


@pytest.mark.parametrize("seed", range(3))
def test_left_converges(seed):
    x, y = real_pair(seed, 4, 0.4, 0.4)
    rc, rs = cosm(x + y), sinm(x + y)
    errs = []
    for n in (2, 8):
        ap = left_oriented_psi(x, y, n)
        errs.append(max(norm2(ap.psi_c - rc), norm2(ap.psi_s - rs)))
    assert errs[1] < errs[0]


def test_left_nilpotent_exact():
    x, y = nilpotent_pair()
    ap = left_oriented_psi(x, y, 2)
    z = x + y
    assert np.abs(ap.psi_c - (np.eye(3) - z @ z / 2)).max() < 1e-15
    assert np.abs(ap.psi_s - z).max() < 1e-15


def test_left_commutators_on_the_left():
    # order-2 left cosine is exp(1/2[x,y]) placed before cos y cos x - sin y sin x
    x, y = real_pair(3, 3, 0.3, 0.3)
    ap = left_oriented_psi(x, y, 2)
    cx, sx = mat_cos_sin(x)
    cy, sy = mat_cos_sin(y)
    expected = mat_exp(-0.5 * (x @ y - y @ x)) @ (cy @ cx - sy @ sx)
    assert np.abs(ap.psi_c - expected).max() < 1e-14


# -- generalised identities ---------------------------------------------------

def test_identities_commuting():
    x, y = commuting_pair()
    sx, cy, sy = sinm(x), cosm(y), sinm(y)
    assert np.abs(generalized_identity_eval(x, y, 1, "cos_diff") - 2 * sx @ sy).max() < 1e-13
    assert np.abs(generalized_identity_eval(x, y, 1, "sin_sum") - 2 * sx @ cy).max() < 1e-13


def test_identities_y_zero():
    x = real_pair(1, 3, 0.8, 0.1)[0]
    z = np.zeros_like(x)
    assert np.abs(generalized_identity_eval(x, z, 3, "cos_diff")).max() < 1e-15
    assert np.abs(generalized_identity_eval(x, z, 3, "sin_sum") - 2 * sinm(x)).max() < 1e-14


@pytest.mark.parametrize("seed", range(4))
def test_identities_truncation_error(seed):
    x, y = real_pair(seed, 4, 0.3, 0.3)
    bound = 10 * (norm2(x) + norm2(y)) ** 5
    direct_cd = cosm(x - y) - cosm(x + y)
    direct_ss = sinm(x - y) + sinm(x + y)
    assert norm2(generalized_identity_eval(x, y, 4, "cos_diff") - direct_cd) <= bound
    assert norm2(generalized_identity_eval(x, y, 4, "sin_sum") - direct_ss) <= bound


def test_identity_name_checked():
    with pytest.raises(ValueError):
        generalized_identity_eval(np.eye(2), np.eye(2), 2, "tan_sum")


def test_symmetrized_commuting():
    x, y = commuting_pair()
    assert np.abs(symmetrized_cos(x, y) - cosm(x + y)).max() < 1e-14


def test_symmetrized_swap_invariant():
    x, y = real_pair(9, 5, 0.7, 0.5)
    assert np.abs(symmetrized_cos(x, y) - symmetrized_cos(y, x)).max() <= 1e-15


def test_symmetrized_nilpotent():
    x, y = nilpotent_pair()
    z = x + y
    assert np.abs(symmetrized_cos(x, y) - (np.eye(3) - z @ z / 2)).max() < 1e-15
    assert np.abs(symmetrized_cos(y, x) - (np.eye(3) - z @ z / 2)).max() < 1e-15


# -- convergence ----------------------------------------------------------------

def loglinear_r2(ns, errs):
    v = np.log10(errs)
    slope, icpt = np.polyfit(ns, v, 1)
    fit = slope * np.asarray(ns) + icpt
    return slope, 1 - np.sum((v - fit) ** 2) / np.sum((v - v.mean()) ** 2)


@pytest.mark.parametrize("dim,seed", [(4, 0), (6, 1), (10, 2)])
def test_error_decays_log_linearly(dim, seed):
    r = np.random.default_rng(seed)
    x, y = scaled_random(r, dim, 0.5), scaled_random(r, dim, 0.5)
    rc, rs = cosm(x + y), sinm(x + y)
    seq = psi_sequence(x, y, 12)
    ns = [ap.order for ap in seq]
    for ref, attr in ((rc, "psi_c"), (rs, "psi_s")):
        errs = [max(norm2(getattr(ap, attr) - ref), 1e-300) for ap in seq]
        slope, r2 = loglinear_r2(ns, errs)
        assert slope < 0 and r2 >= 0.9
