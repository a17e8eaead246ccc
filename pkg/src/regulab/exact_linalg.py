"""Exact rational vectors, determinants, cross products and configuration tools."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegenerateInput
from .formal import FormalSum, accumulate

Rational = Fraction
Vec = tuple  # tuple of Fractions
Config = tuple  # tuple of Vec


def vec(*coords) -> Vec:
    """Immutable exact vector from ints, Fractions or strings like '1/3'."""
    if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
        coords = tuple(coords[0])
    return tuple(Fraction(c) for c in coords)


def config(*vectors) -> Config:
    return tuple(vec(v) for v in vectors)


def basis(dim: int, i: int) -> Vec:
    return tuple(Fraction(int(k == i)) for k in range(dim))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vscale(k, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def pair(f: Vec, v: Vec) -> Fraction:
    """Evaluate a dual vector on a vector."""
    return sum((x * y for x, y in zip(f, v)), Fraction(0))


def det2(a: Sequence, b: Sequence) -> Fraction:
    return Fraction(a[0]) * b[1] - Fraction(a[1]) * b[0]


def det3(v1: Vec, v2: Vec, v3: Vec) -> Fraction:
    """Determinant of the matrix whose columns are v1, v2, v3."""
    return (
        v1[0] * (v2[1] * v3[2] - v3[1] * v2[2])
        - v2[0] * (v1[1] * v3[2] - v3[1] * v1[2])
        + v3[0] * (v1[1] * v2[2] - v2[1] * v1[2])
    )


def det(vectors: Sequence[Vec]) -> Fraction:
    """Determinant of n column vectors in dimension n (fraction-exact elimination)."""
    n = len(vectors)
    if n == 0:
        return Fraction(1)
    if any(len(v) != n for v in vectors):
        raise ValueError("det needs n vectors of length n")
    if n == 2:
        return det2(vectors[0], vectors[1])
    if n == 3:
        return det3(*vectors)
    # rows of the transpose; determinant is unchanged
    m = [[Fraction(x) for x in v] for v in vectors]
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        out *= p
        for r in range(col + 1, n):
            if m[r][col]:
                k = m[r][col] / p
                m[r] = [x - k * y for x, y in zip(m[r], m[col])]
    return sign * out


def cross(a: Vec, b: Vec) -> Vec:
    """Dual vector a x b with <a x b, c> = det3(a, b, c)."""
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def generalized_cross(ws: Sequence[Vec]) -> Vec:
    """Dual vector c -> det(w_1, ..., w_{n-1}, c) for n-1 vectors in dimension n."""
    n = len(ws) + 1
    if any(len(w) != n for w in ws):
        raise ValueError("generalized_cross needs n-1 vectors of dimension n")
    return tuple(det(list(ws) + [basis(n, k)]) for k in range(n))


def is_generic(c: Sequence[Vec], dim: int) -> bool:
    """True iff every min(dim, arity)-subset is linearly independent."""
    if any(len(v) != dim for v in c):
        raise ValueError("all vectors must have the stated dimension")
    k = min(dim, len(c))
    if k == 0:
        return True
    for sub in itertools.combinations(c, k):
        if k == dim:
            if det(sub) == 0:
                return False
        elif _rank(sub) < k:
            return False
    return True


def _rank(vs: Sequence[Vec]) -> int:
    m = [list(v) for v in vs]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                k = m[r][col] / m[rank][col]
                m[r] = [x - k * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def signed_permutations(n: int) -> list[tuple[tuple[int, ...], int]]:
    """All permutations of range(n) with their signs, in lexicographic order."""
    return [(p, permutation_sign(p)) for p in itertools.permutations(range(n))]


def alt(f: Callable, t: Sequence, zero=0):
    """Signed sum of f over all reorderings of t."""
    total = zero
    for perm, s in signed_permutations(len(t)):
        val = f(*[t[i] for i in perm])
        total = total + (val if s > 0 else -val)
    return total


def boundary(chain: FormalSum) -> FormalSum:
    """Simplicial boundary: (x_1..x_{m+1}) -> sum (-1)^(i-1) (.. x_i omitted ..)."""

    def faces():
        for simplex, c in chain.items():
            for i in range(len(simplex)):
                yield simplex[:i] + simplex[i + 1:], c if i % 2 == 0 else -c

    return accumulate(faces())


class ProjectivePoint:
    """Point (a : b) of the projective line over Q, normalized to (x : 1) or (1 : 0)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=1):
        a, b = Fraction(a), Fraction(b)
        if a == 0 and b == 0:
            raise DegenerateInput("(0 : 0) is not a projective point")
        if b != 0:
            self.a, self.b = a / b, Fraction(1)
        else:
            self.a, self.b = Fraction(1), Fraction(0)

    @classmethod
    def infinity(cls) -> "ProjectivePoint":
        return cls(1, 0)

    @property
    def is_infinite(self) -> bool:
        return self.b == 0

    def homogeneous(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def affine(self) -> Fraction:
        if self.is_infinite:
            raise DegenerateInput("point at infinity has no affine coordinate")
        return self.a

    def transform(self, m: Sequence[Sequence]) -> "ProjectivePoint":
        """Apply the matrix [[p, q], [r, s]] to homogeneous coordinates."""
        (p, q), (r, s) = m
        return ProjectivePoint(p * self.a + q * self.b, r * self.a + s * self.b)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return "ProjectivePoint(inf)" if self.is_infinite else f"ProjectivePoint({self.a})"


def as_point(p) -> ProjectivePoint:
    if isinstance(p, ProjectivePoint):
        return p
    if isinstance(p, (tuple, list)) and len(p) == 2:
        return ProjectivePoint(p[0], p[1])
    return ProjectivePoint(p)


def cross_ratio(p1, p2, p3, p4) -> Fraction:
    """r = (x1-x3)(x2-x4) / ((x1-x4)(x2-x3)), computed on homogeneous pairs."""
    pts = [as_point(p).homogeneous() for p in (p1, p2, p3, p4)]
    return cross_ratio_pairs(*pts)


def cross_ratio_pairs(w1, w2, w3, w4) -> Fraction:
    """Cross-ratio of four nonzero 2-vectors viewed as points of the projective line."""
    d13, d24 = det2(w1, w3), det2(w2, w4)
    d14, d23 = det2(w1, w4), det2(w2, w3)
    if 0 in (d13, d24, d14, d23) or det2(w1, w2) == 0 or det2(w3, w4) == 0:
        raise DegenerateInput("cross-ratio needs four distinct points")
    return (d13 * d24) / (d14 * d23)


def _complement(apex: Vec) -> tuple[Vec, Vec]:
    for i, j in itertools.combinations(range(3), 2):
        e, e2 = basis(3, i), basis(3, j)
        if det3(apex, e, e2) != 0:
            return e, e2
    raise DegenerateInput("apex must be nonzero")


def project_config(apex: Vec, rest: Sequence[Vec], complement: tuple[Vec, Vec] | None = None) -> tuple:
    """Coordinates of each vector of ``rest`` in V/<apex> with respect to a complement basis."""
    apex = vec(apex)
    if all(x == 0 for x in apex):
        raise DegenerateInput("apex must be nonzero")
    e, e2 = complement if complement is not None else _complement(apex)
    vol = det3(apex, e, e2)
    if vol == 0:
        raise DegenerateInput("complement does not span a complement of the apex")
    out = []
    for v in rest:
        x = det3(apex, v, e2) / vol
        y = det3(apex, e, v) / vol
        if x == 0 and y == 0:
            raise DegenerateInput("vector collinear with the apex")
        out.append((x, y))
    return tuple(out)


def projected_cross_ratio(apex: Vec, v1: Vec, v2: Vec, v3: Vec, v4: Vec) -> Fraction:
    """r(apex | v1, v2, v3, v4) via determinants with the apex."""
    d13, d24 = det3(apex, v1, v3), det3(apex, v2, v4)
    d14, d23 = det3(apex, v1, v4), det3(apex, v2, v3)
    if 0 in (d13, d24, d14, d23):
        raise DegenerateInput("projected points are not distinct")
    return (d13 * d24) / (d14 * d23)


def cross_det_sides(a1: Vec, a2: Vec, a3: Vec, b1: Vec, b2: Vec, b3: Vec) -> tuple[Fraction, Fraction]:
    """Return (left product difference, det(a) * det(a1 x b1, a2 x b2, a3 x b3))."""
    lhs = det3(a1, a2, b1) * det3(a2, a3, b2) * det3(a3, a1, b3) - det3(a1, a2, b2) * det3(
        a2, a3, b3
    ) * det3(a3, a1, b1)
    rhs = det3(a1, a2, a3) * det3(cross(a1, b1), cross(a2, b2), cross(a3, b3))
    return lhs, rhs


def cross_det_defect(a1: Vec, a2: Vec, a3: Vec, b1: Vec, b2: Vec, b3: Vec) -> Fraction:
    """LHS minus RHS of the six-vector determinant identity; identically zero.

    With the cross product fixed by <a x b, c> = det3(a, b, c) the product
    difference equals minus det(a) * det(a_i x b_i), so the right side carries
    that sign.
    """
    lhs, rhs = cross_det_sides(a1, a2, a3, b1, b2, b3)
    return lhs + rhs


def _omit_det(a: Sequence[Vec], omit: int, b: Vec) -> Fraction:
    n = len(a)
    return det([a[(omit + 1 + k) % n] for k in range(n - 1)] + [b])


def cyclic_det_sides(a: Sequence[Vec], b: Sequence[Vec]) -> tuple[Fraction, Fraction]:
    """Both sides of the n-dimensional analogue for n vectors a and n vectors b.

    Omitting a_i keeps the remaining a's in cyclic order a_{i+1}, ..., a_{i-1}.
    The right side pairs a_j x ... x a_{j+n-3} with b_{j-1}.
    """
    n = len(a)
    if len(b) != n or any(len(v) != n for v in list(a) + list(b)):
        raise ValueError("need n vectors a and n vectors b in dimension n")
    p1 = Fraction(1)
    p2 = Fraction(1)
    for j in range(n):
        p1 *= _omit_det(a, j, b[j])
        p2 *= _omit_det(a, (j - 1) % n, b[j])
    xs = [generalized_cross([a[(j + k) % n] for k in range(n - 2)] + [b[(j - 1) % n]]) for j in range(n)]
    return p1 - p2, det(list(a)) * det(xs)


def cyclic_det_defect(a: Sequence[Vec], b: Sequence[Vec]) -> Fraction:
    """Defect of the n-dimensional identity; the right side carries the sign (-1)^n."""
    lhs, rhs = cyclic_det_sides(a, b)
    return lhs - (-1) ** len(a) * rhs


def r_prime3(a1: Vec, a2: Vec, a3: Vec, b1: Vec, b2: Vec, b3: Vec) -> Fraction:
    """Triple ratio f1(b2) f2(b3) f3(b1) / (f1(b3) f2(b1) f3(b2)) with f_i vanishing on a_i, a_{i+1}."""
    f1, f2, f3 = cross(a1, a2), cross(a2, a3), cross(a3, a1)
    num = pair(f1, b2) * pair(f2, b3) * pair(f3, b1)
    den = pair(f1, b3) * pair(f2, b1) * pair(f3, b2)
    if num == 0 or den == 0:
        raise DegenerateInput("triple ratio is 0 or infinite on this configuration")
    return num / den


def incidence_configuration(a1: Vec, a2: Vec, a3: Vec, s: Sequence) -> tuple:
    """(a1, a2, a3, b1, b2, b3) with b1 on a1a2, b2 on a2a3, b3 on a3a1.

    ``s`` holds three pairs (p, q); b1 = p a1 + q a2 and so on.
    """
    (p1, q1), (p2, q2), (p3, q3) = s
    b1 = vadd(vscale(Fraction(p1), a1), vscale(Fraction(q1), a2))
    b2 = vadd(vscale(Fraction(p2), a2), vscale(Fraction(q2), a3))
    b3 = vadd(vscale(Fraction(p3), a3), vscale(Fraction(q3), a1))
    return (a1, a2, a3, b1, b2, b3)


def line_through(p: Vec, q: Vec) -> Vec:
    """Projective line through two points of P^2, as a dual vector."""
    return cross(p, q)


def meet(l1: Vec, l2: Vec) -> Vec:
    """Intersection point of two projective lines."""
    return cross(l1, l2)


def collinear_cross_ratio(p1: Vec, p2: Vec, p3: Vec, p4: Vec) -> Fraction:
    """Cross-ratio of four collinear points of P^2, read off by projecting from an outside point."""
    for k in range(3):
        o = basis(3, k)
        if det3(o, p1, p2) != 0:
            return projected_cross_ratio(o, p1, p2, p3, p4)
    for o in (vec(1, 1, 0), vec(0, 1, 1), vec(1, 0, 1), vec(1, 1, 1)):
        if det3(o, p1, p2) != 0:
            return projected_cross_ratio(o, p1, p2, p3, p4)
    raise DegenerateInput("points do not span a line")
