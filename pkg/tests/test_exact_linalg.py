from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regulab.errors import DegenerateInput
from regulab.exact_linalg import (
    ProjectivePoint,
    alt,
    basis,
    boundary,
    collinear_cross_ratio,
    cross,
    cross_ratio,
    det3,
    cross_det_defect,
    cross_det_sides,
    incidence_configuration,
    is_generic,
    line_through,
    meet,
    pair,
    project_config,
    projected_cross_ratio,
    r_prime3,
    cyclic_det_defect,
    vec,
    vscale,
)
from regulab.formal import FormalSum

e1, e2, e3 = (basis(3, i) for i in range(3))
ints = st.integers(-20, 20)
vec3 = st.tuples(ints, ints, ints).map(lambda t: vec(*t))


# -------------------------------------------------------------- det3 / cross

def test_det3_examples():
    assert det3(e1, e2, e3) == 1
    assert det3(e1, e2, e1) == 0
    assert det3(vec(1, 0, 0), vec(0, 0, 1), vec(1, 2, 3)) == -2


@given(vec3, vec3, vec3)
def test_det3_alternating(a, b, c):
    d = det3(a, b, c)
    assert det3(b, a, c) == -d
    assert det3(a, c, b) == -d
    assert det3(c, b, a) == -d


@given(vec3, vec3, vec3, vec3, ints)
def test_det3_multilinear(a, a2, b, c, k):
    lhs = det3(tuple(x + k * y for x, y in zip(a, a2)), b, c)
    assert lhs == det3(a, b, c) + k * det3(a2, b, c)


def test_cross_examples():
    assert cross(e1, e2) == e3
    assert cross(vec(1, 2, 3), vec(1, 2, 3)) == (0, 0, 0)
    assert cross(vec(1, 2, 3), vec(4, 5, 6)) == (-3, 6, -3)


@given(vec3, vec3, vec3)
def test_cross_pairs_to_det(a, b, c):
    assert pair(cross(a, b), c) == det3(a, b, c)
    assert cross(a, b) == tuple(-x for x in cross(b, a))


# ------------------------------------------------------------- is_generic

def test_is_generic_examples():
    assert is_generic((e1, e2, e3), 3)
    assert not is_generic((e1, e2, vec(1, 1, 0)), 3)
    assert is_generic((e1, e2, e3, vec(1, 2, 3), vec(1, 1, 7)), 3)


def test_is_generic_matches_subset_enumeration():
    import itertools

    c = (e1, e2, e3, vec(1, 2, 3), vec(1, 1, 7), vec(2, 4, 6))
    expected = all(det3(*s) != 0 for s in itertools.combinations(c, 3))
    assert is_generic(c, 3) == expected is False


# ------------------------------------------------------------ alt/boundary

def test_alt_examples():
    assert alt(lambda a, b: 1, (1, 2)) == 0
    t = (vec(1, 2, 0), vec(0, 1, 5), vec(3, 0, 1))
    assert alt(det3, t) == 6 * det3(*t)
    assert alt(lambda a, b, c: det3(a, b, c) ** 2, t) == 0


def test_boundary_examples():
    assert boundary(FormalSum.gen(("a", "b"))) == FormalSum({("b",): 1, ("a",): -1})
    d = boundary(FormalSum.gen(tuple("abcde")))
    assert len(d) == 5
    assert d.coeff(tuple("bcde")) == 1 and d.coeff(tuple("acde")) == -1 and d.coeff(tuple("abcd")) == 1


@given(st.lists(st.tuples(st.lists(st.integers(0, 6), min_size=2, max_size=5).map(tuple), st.integers(-3, 3)), max_size=6))
def test_boundary_squared_is_zero(terms):
    chain = FormalSum(dict(terms))
    assert boundary(boundary(chain)).is_zero()


# ------------------------------------------------------------ cross-ratio

def test_cross_ratio_normal_form():
    for x in (Fraction(2), Fraction(-3, 7), Fraction(5, 2)):
        assert cross_ratio(ProjectivePoint.infinity(), 0, 1, x) == x


def test_cross_ratio_repeated_points():
    with pytest.raises(DegenerateInput):
        cross_ratio(0, 1, 1, 3)


@settings(max_examples=60)
@given(st.lists(st.integers(-12, 12), min_size=4, max_size=4, unique=True), st.tuples(ints, ints, ints, ints))
def test_cross_ratio_gl2_invariance(xs, m):
    a, b, c, d = m
    if a * d - b * c == 0:
        return
    pts = [ProjectivePoint(x) for x in xs]
    moved = [p.transform(((a, b), (c, d))) for p in pts]
    assert cross_ratio(*pts) == cross_ratio(*moved)


def test_harmonic_quadruple_on_incidence_configuration():
    # hat b3 = b1b2 meet a1a3 and c3 = a2x meet a1a3 (x = a1b2 meet a3b1) are harmonic w.r.t. a1, a3
    a1, a2, a3 = vec(1, 0, 2), vec(0, 3, 1), vec(2, 1, -1)
    _, _, _, b1, b2, b3 = incidence_configuration(a1, a2, a3, ((2, 3), (1, -4), (5, 2)))
    x = meet(line_through(a1, b2), line_through(a3, b1))
    a13 = line_through(a1, a3)
    c3 = meet(line_through(a2, x), a13)
    hat_b3 = meet(line_through(b1, b2), a13)
    assert collinear_cross_ratio(a1, a3, hat_b3, c3) == -1
    # with b3 in place of c3 the quadruple is not harmonic
    assert collinear_cross_ratio(a1, a3, hat_b3, b3) != -1


# ---------------------------------------------------------- projection

def test_projection_mixed_apex_plane():
    # apex e3, the rest in the e1 e2-plane: coordinates survive unchanged
    rest = [vec(1, 2, 0), vec(3, -1, 0)]
    assert project_config(e3, rest, (e1, e2)) == ((1, 2), (3, -1))


def test_projected_cross_ratio_complement_independent():
    apex = vec(1, 1, 2)
    rest = [vec(1, 0, 0), vec(0, 1, 0), vec(1, 2, 5), vec(3, -1, 1)]
    from regulab.exact_linalg import cross_ratio_pairs

    r1 = cross_ratio_pairs(*project_config(apex, rest, (e1, e2)))
    r2 = cross_ratio_pairs(*project_config(apex, rest, (vec(1, 2, 0), vec(0, 1, 3))))
    assert r1 == r2 == projected_cross_ratio(apex, *rest)


def test_projection_collinear_vector_rejected():
    with pytest.raises(DegenerateInput):
        project_config(e3, [vec(0, 0, 5)])


# --------------------------------------------------- determinant identity

def test_cross_det_special_anchor_symbolic():
    from regulab.suites import special_configuration_anchor

    r = special_configuration_anchor()
    assert r["lhs_matches"] and r["defect"] == "0"


def test_cross_det_collinear_pairs():
    a = (vec(1, 2, 3), vec(0, 1, 4), vec(5, 6, 0))
    assert cross_det_sides(*a, *a) == (0, 0)


@settings(max_examples=200)
@given(st.lists(vec3, min_size=6, max_size=6))
def test_cross_det_defect_zero(vs):
    assert cross_det_defect(*vs) == 0


def test_cross_det_sign_convention():
    # the product difference is minus det(a) det(a_i x b_i) with <a x b, c> = det(a, b, c)
    vs = [vec(1, 2, 0), vec(0, 1, 3), vec(4, 0, 1), vec(1, 1, 1), vec(2, -1, 0), vec(0, 5, 2)]
    lhs, rhs = cross_det_sides(*vs)
    assert lhs == -rhs != 0


@settings(max_examples=50)
@given(st.lists(st.tuples(ints, ints, ints, ints).map(lambda t: vec(*t)), min_size=8, max_size=8))
def test_cyclic_det_defect_zero_n4(vs):
    assert cyclic_det_defect(vs[:4], vs[4:]) == 0


def test_cyclic_det_defect_zero_n3_n5():
    import random

    rng = random.Random(7)
    for n in (3, 5):
        for _ in range(5):
            a = [vec(*[rng.randint(-5, 5) for _ in range(n)]) for _ in range(n)]
            b = [vec(*[rng.randint(-5, 5) for _ in range(n)]) for _ in range(n)]
            assert cyclic_det_defect(a, b) == 0


# ------------------------------------------------------------- r_prime3

def _incidence(seed):
    import random

    rng = random.Random(seed)
    while True:
        a = [vec(*[rng.randint(-9, 9) for _ in range(3)]) for _ in range(3)]
        s = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(3)]
        c = incidence_configuration(*a, s)
        try:
            r_prime3(*c)
            projected_cross_ratio(c[3], c[1], c[2], c[4], c[5])
        except DegenerateInput:
            continue
        if is_generic(c[:3], 3):
            return c


@pytest.mark.parametrize("seed", range(8))
def test_r_prime3_matches_projected_cross_ratio(seed):
    a1, a2, a3, b1, b2, b3 = _incidence(seed)
    assert r_prime3(a1, a2, a3, b1, b2, b3) == -projected_cross_ratio(b1, a2, a3, b2, b3)


@pytest.mark.parametrize("seed", range(4))
def test_r_prime3_scale_invariant(seed):
    c = list(_incidence(seed))
    base = r_prime3(*c)
    for i in range(6):
        scaled = list(c)
        scaled[i] = vscale(Fraction(-7, 3), c[i])
        assert r_prime3(*scaled) == base
