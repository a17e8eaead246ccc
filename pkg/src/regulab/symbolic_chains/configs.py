"""Maps from configurations of vectors in 3-space to the weight-3 complex."""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..errors import DegenerateInput, NonIntegralCoefficient, OddCoefficient
from ..exact_linalg import det2, det3, is_generic, projected_cross_ratio, signed_permutations
from ..formal import FormalSum, accumulate
from .fields import FactoredElement, Q
from .groups import b2_tensor, symbol, wedge, wedge_many
from .maps import delta2, delta32, delta_n_formal, delta_otimes_id


@lru_cache(maxsize=1)
def calibration() -> dict:
    """Frozen proportionality constants (see ``calibrate_kappa_45``)."""
    with resources.files("regulab.data").joinpath("constants.json").open() as fh:
        return json.load(fh)


class _Dets:
    """Signed 3x3 determinants of a fixed configuration, cached by index triple."""

    def __init__(self, vectors: Sequence):
        self.v = tuple(vectors)
        self._vals: dict = {}
        self._facs: dict = {}

    def __call__(self, i: int, j: int, k: int):
        key = (i, j, k)
        val = self._vals.get(key)
        if val is None:
            val = det3(self.v[i], self.v[j], self.v[k])
            self._vals[key] = val
        return val

    def fac(self, i: int, j: int, k: int) -> FactoredElement:
        """Factored |det| up to sign (signs are torsion)."""
        key = tuple(sorted((i, j, k)))
        fe = self._facs.get(key)
        if fe is None:
            val = self(*key)
            if val == 0:
                raise DegenerateInput("configuration is not in generic position")
            fe = Q(abs(val))
            self._facs[key] = fe
        return fe


def _require_generic(c: Sequence, n: int) -> None:
    if len(c) != n:
        raise ValueError(f"expected a configuration of {n} vectors")
    if not is_generic(c, 3):
        raise DegenerateInput("configuration is not in generic position")


def f4_3(c: Sequence) -> FormalSum:
    """Alt_4 D(1,2,3) ^ D(1,2,4) ^ D(1,3,4) in wedge^3 Q*."""
    _require_generic(c, 4)
    d = _Dets(c)

    def terms():
        for p, s in signed_permutations(4):
            a, b, cc, e = p
            yield (d.fac(a, b, cc), d.fac(a, b, e), d.fac(a, cc, e)), s

    return wedge_many(terms())


def f4_3_expanded(c: Sequence) -> FormalSum:
    """Independent route: sum of wedge() over the 24 reorderings without caching."""
    out = FormalSum()
    for p in itertools.permutations(range(4)):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
        v = [c[i] for i in p]
        w = wedge(Q(det3(v[0], v[1], v[2])), Q(det3(v[0], v[1], v[3])), Q(det3(v[0], v[2], v[3])))
        out = out + (w if inv % 2 == 0 else -w)
    return out


def f5_3_raw(c: Sequence) -> FormalSum:
    """Alt_5 {r(v1 | v2, .., v5)}_2 (x) D(1,2,3) before halving."""
    _require_generic(c, 5)
    d = _Dets(c)
    acc: dict = {}
    for p, s in signed_permutations(5):
        a, b, cc, e, f = p
        r = (d(a, b, e) * d(a, cc, f)) / (d(a, b, f) * d(a, cc, e))
        x = Q(r)
        if x.is_one():
            continue
        for atom, k in d.fac(a, b, cc).exps:
            key = (x, atom)
            acc[key] = acc.get(key, 0) + s * k
    return FormalSum(acc)


def f5_3(c: Sequence) -> FormalSum:
    """1/2 Alt_5 {r(v1 | v2, .., v5)}_2 (x) D(v1, v2, v3); raises OddCoefficient if 1/2 does not clear."""
    raw = f5_3_raw(c)
    half = raw.divide_exact(2)
    if half is None:
        raise OddCoefficient("the halved alternation has an odd coefficient")
    return half


def f5_3_via_projection(c: Sequence) -> FormalSum:
    """Same as f5_3 but with cross-ratios computed from explicit projected coordinates."""
    from ..exact_linalg import cross_ratio_pairs, project_config

    _require_generic(c, 5)
    out = FormalSum()
    for p, s in signed_permutations(5):
        v = [c[i] for i in p]
        pts = project_config(v[0], v[1:])
        x = Q(cross_ratio_pairs(*pts))
        out = out + b2_tensor(x, Q(abs(det3(v[0], v[1], v[2]))), s)
    half = out.divide_exact(2)
    if half is None:
        raise OddCoefficient("the halved alternation has an odd coefficient")
    return half


def triple_ratio(d, i, j, k, l, m, n):
    """D(i,j,l) D(j,k,m) D(k,i,n) / (D(i,j,m) D(j,k,n) D(k,i,l)) with signed determinants."""
    num = d(i, j, l) * d(j, k, m) * d(k, i, n)
    den = d(i, j, m) * d(j, k, n) * d(k, i, l)
    return num / den


def f6_3_raw(c: Sequence) -> FormalSum:
    """Alt_6 of the triple ratio, before division by 15; terms equal to 1 are dropped."""
    _require_generic(c, 6)
    d = _Dets(c)
    acc: dict = {}
    for p, s in signed_permutations(6):
        x = triple_ratio(d, *p)
        if x == 1:
            continue
        acc[x] = acc.get(x, 0) + s
    return FormalSum({Q(x): k for x, k in acc.items() if k})


def f6_3(c: Sequence) -> FormalSum:
    """1/15 Alt_6 {triple ratio}_3; raises NonIntegralCoefficient if 15 does not divide."""
    raw = f6_3_raw(c)
    out = raw.divide_exact(15)
    if out is None:
        raise NonIntegralCoefficient("the alternation is not divisible by 15")
    return out


def f6_3_rational(c: Sequence) -> FormalSum:
    """1/15 Alt_6 {triple ratio}_3 with rational coefficients (never raises on generic input)."""
    return f6_3_raw(c) * Fraction(1, 15)


def f6_3_expanded(c: Sequence) -> FormalSum:
    """Brute-force oracle for f6_3_raw: recompute every determinant for every reordering."""
    out = FormalSum()
    for p in itertools.permutations(range(6)):
        inv = sum(1 for i in range(6) for j in range(i + 1, 6) if p[i] > p[j])
        v = [c[i] for i in p]
        num = det3(v[0], v[1], v[3]) * det3(v[1], v[2], v[4]) * det3(v[2], v[0], v[5])
        den = det3(v[0], v[1], v[4]) * det3(v[1], v[2], v[5]) * det3(v[2], v[0], v[3])
        out = out + symbol(Q(num / den), -1 if inv % 2 else 1)
    return out


def config_boundary(c: Sequence) -> list[tuple[int, tuple]]:
    """d(v_1..v_m) as (sign, face) pairs."""
    return [(1 if i % 2 == 0 else -1, tuple(c[:i]) + tuple(c[i + 1:])) for i in range(len(c))]


def calibrate_kappa_45(c: Sequence) -> int:
    """Constant k with f4_3(d c) = k * delta32(f5_3(c)) on a reference configuration."""
    lhs = FormalSum()
    for s, face in config_boundary(c):
        lhs = lhs + f4_3(face) * s
    rhs = delta32(f5_3(c))
    if rhs.is_zero():
        raise DegenerateInput("reference configuration gives a zero image")
    key, val = next(iter(rhs.items()))
    num = lhs.coeff(key)
    if num % val:
        raise ArithmeticError("calibration ratio is not an integer")
    k = num // val
    if lhs != rhs * k:
        raise ArithmeticError("images are not proportional on the reference configuration")
    return k


def chain_map_defect_45(c: Sequence, kappa: int | None = None) -> FormalSum:
    """f4_3(d c) - kappa * delta32(f5_3(c)) in wedge^3 Q*; zero modulo torsion."""
    if kappa is None:
        kappa = calibration()["kappa_45"]
    _require_generic(c, 5)
    lhs = FormalSum()
    for s, face in config_boundary(c):
        lhs = lhs + f4_3(face) * s
    return lhs - delta32(f5_3(c)) * kappa


def f5_of_boundary(c: Sequence) -> FormalSum:
    _require_generic(c, 6)
    out = FormalSum()
    for s, face in config_boundary(c):
        out = out + f5_3(face) * s
    return out


def chain_map_defect_56(c: Sequence) -> FormalSum:
    """(delta (x) id)(f5_3(d c) - delta(f6_3(c))) in wedge^2 Q* (x) Q*.

    The 1/15 is applied to the image of the raw alternation; it does not clear
    on individual B_3 generators, whose multiplicities are only divisible by 3.
    """
    image = delta_otimes_id(delta_n_formal(f6_3_raw(c), 3))
    return delta_otimes_id(f5_of_boundary(c)) - image * Fraction(1, 15)


def alt6_reference_term(c: Sequence, order: str = "124^145") -> FormalSum:
    """Alt_6 { D(1,2,4) ^ D(1,4,5) (x) D(1,2,3) } in wedge^2 Q* (x) Q*.

    ``order="145^124"`` takes the wedge factors the other way round.
    """
    if order not in ("124^145", "145^124"):
        raise ValueError("order must be '124^145' or '145^124'")
    _require_generic(c, 6)
    d = _Dets(c)
    acc: dict = {}
    for p, s in signed_permutations(6):
        a, b, cc, e, f, _ = p
        first, second = d.fac(a, b, e), d.fac(a, e, f)
        if order == "145^124":
            first, second = second, first
        for pair, k in wedge(first, second).items():
            for atom, m in d.fac(a, b, cc).exps:
                key = (pair, atom)
                acc[key] = acc.get(key, 0) + s * k * m
    return FormalSum(acc)


def f6_image_unnormalized(c: Sequence) -> FormalSum:
    """(delta (x) id)(delta(Alt_6 {triple ratio})) before the 1/15."""
    return delta_otimes_id(delta_n_formal(f6_3_raw(c), 3))


def planar_delta_formula(v1, v2, v3, v4) -> FormalSum:
    """1/2 Alt_4 { D(v1, v2) ^ D(v1, v3) } for four vectors in the plane."""
    vs = (v1, v2, v3, v4)
    acc = FormalSum()
    for p, s in signed_permutations(4):
        a, b, cc = vs[p[0]], vs[p[1]], vs[p[2]]
        acc = acc + wedge(Q(abs(det2(a, b))), Q(abs(det2(a, cc)))) * s
    half = acc.divide_exact(2)
    if half is None:
        raise OddCoefficient("planar alternation is odd")
    return half


def planar_cross_ratio_delta(v1, v2, v3, v4) -> FormalSum:
    """delta2 {r(v1, v2, v3, v4)} for four vectors in the plane."""
    from ..exact_linalg import cross_ratio_pairs

    return delta2(symbol(Q(cross_ratio_pairs(v1, v2, v3, v4))))


def proj_ratio(c: Sequence, apex: int, i: int, j: int, k: int, l: int) -> FactoredElement:
    return Q(projected_cross_ratio(c[apex], c[i], c[j], c[k], c[l]))
