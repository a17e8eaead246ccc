import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpc, mpf

from regulab.errors import DegenerateInput
from regulab.polylog import (
    Holo,
    HoloN,
    alpha_form,
    bernoulli,
    beta,
    beta_table,
    bloch_wigner,
    bloch_wigner_array,
    dl2_residual,
    d_sv_identity_residual,
    five_term_numeric,
    li_n,
    li_n_flagged,
    r3_form,
    r3_property_a_residual,
    rn_form,
    step_halving_slope,
    sv_polylog,
    sv_polylog_hat,
)

BITS = 128
coord = st.floats(-3, 3, allow_nan=False).filter(lambda x: abs(x) > 1e-3)


def near(a, b, tol):
    return abs(mpc(a) - mpc(b)) <= tol


# ---------------------------------------------------------- coefficients

def test_bernoulli_values():
    assert [bernoulli(k) for k in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]


def test_beta_first_values():
    assert [beta(k) for k in range(4)] == [1, -1, Fraction(1, 3), 0]


def test_beta_generating_function():
    x = sympy.Symbol("x")
    series = sympy.series(2 * x / (sympy.exp(2 * x) - 1), x, 0, 13).removeO()
    expected = {k: Fraction(str(series.coeff(x, k))) for k in range(13)}
    assert beta_table(12) == expected


def test_beta_odd_vanish():
    assert all(beta(k) == 0 for k in range(3, 30, 2))


# ------------------------------------------------------------------ Li_n

@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
@pytest.mark.parametrize(
    "z",
    [mpc(0.3, 0.1), mpc(-0.4, 0), mpc(0.7, 0.6), mpc(-1.2, 0.8), mpc(1.1, -0.3), mpc(5, 2), mpc(-30, 0.5), mpc(0.2, -3)],
)
def test_li_n_against_mpmath(z, n):
    with mpmath.workprec(BITS + 20):
        ref = mpmath.polylog(n, z)
        assert near(li_n(z, n, BITS), ref, mpf(2) ** (-BITS + 8) * max(1, abs(ref)))


def test_li1_at_minus_one():
    with mpmath.workprec(BITS):
        assert near(li_n(-1, 1, BITS), -mpmath.log(2), mpf(2) ** -120)


def test_li2_at_one():
    with mpmath.workprec(BITS):
        assert near(li_n(1, 2, BITS), mpmath.pi**2 / 6, mpf(2) ** -120)


def test_li0():
    assert near(li_n(mpc(0.5, 0.5), 0), mpc(0.5, 0.5) / (1 - mpc(0.5, 0.5)), 1e-30)
    with pytest.raises(DegenerateInput):
        li_n(1, 0)


@pytest.mark.parametrize("x", [1.5, 3.0, 10.0])
def test_cut_limit_from_below(x):
    v, flagged = li_n_flagged(x, 2, BITS)
    assert flagged
    with mpmath.workprec(BITS):
        below = li_n(mpc(x, -mpf(10) ** -30), 2, BITS)
        above = li_n(mpc(x, mpf(10) ** -30), 2, BITS)
        assert near(v, below, 1e-25)
        assert near(above - below, 2j * mpmath.pi * mpmath.log(x), 1e-25)
    assert not li_n_flagged(mpc(x, 0.1), 2)[1]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_regime_boundaries_continuous(n):
    # the three regimes switch at |z| = 1/2 and |z| = 2
    for r in (0.5, 2.0):
        for th in (0.3, 2.0):
            z = mpmath.mpc(r * math.cos(th), r * math.sin(th))
            with mpmath.workprec(BITS + 20):
                assert near(li_n(z, n, BITS), mpmath.polylog(n, z), mpf(2) ** -110)


@settings(max_examples=40, deadline=None)
@given(coord, coord, st.integers(2, 5))
def test_conjugation_symmetry(a, b, n):
    z = mpc(a, b)
    if abs(z - 1) < 1e-3:
        return
    assert near(li_n(z.conjugate(), n, 96), li_n(z, n, 96).conjugate(), 1e-20)


# --------------------------------------------------- single-valued L_n

def test_bloch_wigner_catalan():
    with mpmath.workprec(BITS):
        assert near(bloch_wigner(1j, BITS), mpmath.catalan, mpf(2) ** -120)


@pytest.mark.parametrize("z", [mpc(0.3, 0.4), mpc(-2, 1), mpc(3, -0.5)])
def test_bloch_wigner_matches_sv_l2(z):
    assert near(bloch_wigner(z), sv_polylog(z, 2), 1e-30)


@pytest.mark.parametrize("z", [mpc(0.3, 0.4), mpc(-2, 1), mpc(3, -0.5), mpc(0.9, 0.01)])
def test_bloch_wigner_inversion_and_reflection(z):
    with mpmath.workprec(BITS):
        d = bloch_wigner(z)
        assert near(bloch_wigner(1 / z), -d, 1e-30)
        assert near(bloch_wigner(1 - z), -d, 1e-30)
        assert near(bloch_wigner(z.conjugate()), -d, 1e-30)


def test_l2_vanishes_on_real_line():
    for x in (0.2, 0.5, 0.9, -1.5, 4.0):
        assert abs(sv_polylog(x, 2)) < 1e-35


def test_l3_values():
    with mpmath.workprec(BITS):
        assert near(sv_polylog(-1, 3, BITS), -mpf(3) / 4 * mpmath.zeta(3), mpf(2) ** -120)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sv_polylog_single_valued_across_cut(n):
    x = mpf(3)
    eps = mpf(10) ** -25
    assert near(sv_polylog(mpc(x, eps), n), sv_polylog(mpc(x, -eps), n), 1e-20)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sv_polylog_inversion_symmetry(n):
    # L_n(1/z) = (-1)^(n-1) L_n(z)
    z = mpc(0.4, 1.3)
    assert near(sv_polylog(1 / z, n), (-1) ** (n - 1) * sv_polylog(z, n), 1e-30)


def test_sv_polylog_at_zero():
    with pytest.raises(DegenerateInput):
        sv_polylog(0, 3)
    assert sv_polylog(0, 3, limit=True) == 0
    with pytest.raises(DegenerateInput):
        sv_polylog(1, 2)


def test_hat_values():
    z = mpc(0.3, 0.7)
    assert sv_polylog_hat(z, 3) == mpc(sv_polylog(z, 3))
    assert sv_polylog_hat(z, 2) == mpc(0, sv_polylog(z, 2))


def test_dps_argument():
    z = mpc(0.3, 0.7)
    assert near(sv_polylog(z, 3, dps=40), sv_polylog(z, 3, 200), mpf(10) ** -38)


def test_bloch_wigner_array_matches():
    zs = np.array([0.5 + 0.5j, 3 + 1j, -2 - 0.3j, 0.1 + 0.01j, 1j, -0.7 + 2j])
    got = bloch_wigner_array(zs)
    ref = np.array([float(bloch_wigner(complex(z))) for z in zs])
    assert np.max(np.abs(got - ref)) < 1e-13


# ------------------------------------------------- differential identities

@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("z,w", [(mpc(0.3, 0.4), mpc(1, 0)), (mpc(-1.5, 0.7), mpc(0.3, -1)), (mpc(2.5, -1.2), mpc(0, 1))])
def test_d_sv_identity(z, w, n):
    r = d_sv_identity_residual(z, n, w, h=mpf("1e-12"), prec=192)
    assert r < 1e-18


def test_d_sv_identity_second_order():
    z, w = mpc(0.3, 0.4), mpc(1, 0)
    slope, _ = step_halving_slope(lambda h: d_sv_identity_residual(z, 4, w, h, 128), mpf("1e-2"), 3)
    assert 1.9 <= slope <= 2.1


def test_d2_identity():
    f = Holo.polynomial([1, -1, 0.5j])  # z^2 - z + i/2
    z, w = mpc(0.4, 0.9), mpc(1, 0.5)
    assert dl2_residual(f, z, w, h=mpf("1e-12"), prec=192) < 1e-18
    slope, _ = step_halving_slope(lambda h: dl2_residual(f, z, w, h, 128))
    assert 1.9 <= slope <= 2.1


def test_alpha_antisymmetric_and_alternating():
    f, g = Holo.polynomial([1, 2]), Holo.polynomial([1, 0, -3j])
    z, w = mpc(0.3, 0.8), mpc(0.6, -1)
    assert near(alpha_form(f, g, z, w), -alpha_form(g, f, z, w), 1e-35)
    assert abs(alpha_form(f, f, z, w)) < 1e-35


def test_alpha_real_linear_in_tangent():
    f, g = Holo.polynomial([1, 2]), Holo.polynomial([1, 0, -3j])
    z = mpc(0.3, 0.8)
    w1, w2 = mpc(1, 0), mpc(0, 1)
    combo = alpha_form(f, g, z, 2 * w1 - 3 * w2)
    assert near(combo, 2 * alpha_form(f, g, z, w1) - 3 * alpha_form(f, g, z, w2), 1e-30)


def test_r3_parts():
    f = Holo.polynomial([1, 0.5])
    z = mpc(0.2, 0.6)
    assert near(r3_form(1, f, z, None), sv_polylog(f.f(z), 3), 1e-35)
    # the 2-form part is alternating in its tangents
    fs = [Holo.polynomial([1, 2]), Holo.polynomial([1, -1]), Holo.polynomial([2, 0, 1])]
    a = r3_form(3, fs, z, (mpc(1, 0), mpc(0.3, 1)))
    b = r3_form(3, fs, z, (mpc(0.3, 1), mpc(1, 0)))
    assert near(a, -b, 1e-30)


def test_rn_form_n3_matches_r3_part_two():
    # i L_2 times i d arg g collapses to the real weight-3 one-form
    f, g = Holo.polynomial([1, 0.5]), Holo.polynomial([2, -1j])
    z, w = mpc(0.2, 0.6), mpc(1, 0.4)
    assert near(rn_form(3, f, g, z, w), r3_form(2, (f, g), z, w), 1e-30)


def _linear(c0, c):
    return HoloN(lambda z: c0 + sum(ci * zi for ci, zi in zip(c, z)), lambda z: c)


def test_r3_property_a_three_variables():
    fs = [_linear(1, (2, 0.5j, 0)), _linear(-1, (0.3, 1, 1j)), _linear(2, (0, -1, 0.7))]
    z = (mpc(0.2, 0.1), mpc(-0.3, 0.4), mpc(0.5, -0.2))
    tangents = ((mpc(1), mpc(0), mpc(0)), (mpc(0), mpc(0, 1), mpc(0)), (mpc(0.3), mpc(0.2), mpc(1, 1)))
    assert r3_property_a_residual(fs, z, tangents, h=mpf("1e-15"), prec=192) < 1e-20


# ------------------------------------------------------------ five-term

@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=5, max_size=5))
def test_five_term_numeric_vanishes(pts):
    zs = [mpc(a, b) for a, b in pts]
    try:
        v = five_term_numeric(zs, 128)
    except DegenerateInput:
        return
    assert v < 1e-25


def test_five_term_real_points():
    assert five_term_numeric([0.5, 2, -1, 3, 7]) < 1e-35


def test_five_term_mobius_invariance():
    zs = [mpc(0.3, 1), mpc(2), mpc(-1, 0.5), mpc(0, 4), mpc(1.5, -2)]
    a, b, c, d = mpc(1, 1), mpc(2), mpc(0, -1), mpc(3, 0.5)
    from regulab.polylog import cross_ratio_c

    with mpmath.workprec(BITS):
        moved = [(a * z + b) / (c * z + d) for z in zs]
        assert near(cross_ratio_c(*zs[:4]), cross_ratio_c(*moved[:4]), 1e-30)
        assert five_term_numeric(moved) < 1e-30


def test_five_term_repeated():
    with pytest.raises(DegenerateInput):
        five_term_numeric([1, 2, 3, 2, 5])
