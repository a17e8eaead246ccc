"""Differentials of the weight-2 and weight-3 complexes, tame symbols and residues."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import DegenerateInput, UnfactorableElement
from ..exact_linalg import as_point, cross_ratio
from ..formal import FormalSum, accumulate
from .fields import (
    BACKENDS,
    FactoredElement,
    Q,
    Qt,
    poly_eval,
    poly_mul,
    poly_sub,
)
from .groups import atom_wedge, b2_tensor, sort_wedge, symbol, wedge, wedge_many


def atom_element(backend: str, atom) -> FactoredElement:
    return FactoredElement(backend, BACKENDS[backend].one_unit(), ((atom, 1),))


def _backend_of(e: FormalSum, default: str = "Q") -> str:
    for key in e:
        fe = key if isinstance(key, FactoredElement) else key[0]
        return fe.backend
    return default


# ---------------------------------------------------------------- weight 2

def delta2(e: FormalSum) -> FormalSum:
    """{x} -> (1 - x) ^ x, extended linearly, modulo torsion."""
    return wedge_many(((x.one_minus(), x), c) for x, c in e.items() if not x.is_one())


def five_term_element(*points, backend: str = "Q") -> FormalSum:
    """sum_{i=1..5} (-1)^i {r(x_1, .., x_i omitted, .., x_5)}.

    Over ``Q`` the points are projective points (or rationals / pairs);
    over ``Qt`` they are rational functions given as (numerator, denominator)
    coefficient tuples.
    """
    if len(points) == 1:
        points = tuple(points[0])
    if len(points) != 5:
        raise ValueError("five points are needed")
    if backend == "Q":
        pts = [as_point(p) for p in points]
        if len(set(pts)) < 5:
            raise DegenerateInput("points must be pairwise distinct")
        ratio = lambda q: Q(cross_ratio(*q))  # noqa: E731
    elif backend == "Qt":
        pts = [_rf(p) for p in points]
        ratio = lambda q: Qt(rf_cross_ratio(*q))  # noqa: E731
    else:
        raise ValueError(f"unsupported backend {backend}")
    out = FormalSum()
    for i in range(5):
        rest = pts[:i] + pts[i + 1:]
        sign = -1 if i % 2 == 0 else 1  # (-1)^i with i counted from 1
        out = out + symbol(ratio(rest), sign)
    return out


def _rf(p):
    if isinstance(p, tuple) and len(p) == 2 and all(isinstance(q, tuple) for q in p):
        return tuple(map(Fraction, p[0])), tuple(map(Fraction, p[1]))
    if isinstance(p, tuple):
        return tuple(map(Fraction, p)), (Fraction(1),)
    return (Fraction(p),), (Fraction(1),)


def rf_sub(a, b):
    return poly_sub(poly_mul(a[0], b[1]), poly_mul(b[0], a[1])), poly_mul(a[1], b[1])


def rf_cross_ratio(x1, x2, x3, x4):
    """Cross-ratio of four rational functions, as a (numerator, denominator) pair."""
    d13, d24, d14, d23 = rf_sub(x1, x3), rf_sub(x2, x4), rf_sub(x1, x4), rf_sub(x2, x3)
    for d in (d13, d24, d14, d23):
        if not any(d[0]):
            raise DegenerateInput("points must be pairwise distinct")
    num = poly_mul(poly_mul(d13[0], d24[0]), poly_mul(d14[1], d23[1]))
    den = poly_mul(poly_mul(d14[0], d23[0]), poly_mul(d13[1], d24[1]))
    return num, den


# ---------------------------------------------------------------- weight 3

def delta32(e: FormalSum) -> FormalSum:
    """{x}_2 (x) y -> (1 - x) ^ x ^ y on generators keyed by (x, atom of y)."""
    def terms():
        for (x, a), c in e.items():
            if x.is_one():
                continue
            yield (x.one_minus(), x, atom_element(x.backend, a)), c

    return wedge_many(terms())


def delta_n_formal(e: FormalSum, n: int = 3) -> FormalSum:
    """{x}_n -> {x}_{n-1} (x) x, keyed by (x, atom); no relations are imposed."""
    if n < 3:
        raise ValueError("weight must be at least 3")
    return accumulate(((x, a), c * k) for x, c in e.items() if not x.is_one() for a, k in x.exps)


def delta_otimes_id(e: FormalSum) -> FormalSum:
    """{x}_2 (x) y -> ((1 - x) ^ x) (x) y, keyed by (sorted pair, atom)."""
    acc: dict = {}
    for (x, a), c in e.items():
        if x.is_one():
            continue
        for pair, k in wedge(x.one_minus(), x).items():
            key = (pair, a)
            acc[key] = acc.get(key, 0) + c * k
    return FormalSum(acc)


@dataclass(frozen=True)
class Weight3Chain:
    """Element of B_3 (+) B_2 (x) F* (+) wedge^3 F* in degrees 1, 2, 3."""

    b3: FormalSum = field(default_factory=FormalSum)
    b2f: FormalSum = field(default_factory=FormalSum)
    l3: FormalSum = field(default_factory=FormalSum)

    def __add__(self, other: "Weight3Chain") -> "Weight3Chain":
        return Weight3Chain(self.b3 + other.b3, self.b2f + other.b2f, self.l3 + other.l3)

    def is_zero(self) -> bool:
        return self.b3.is_zero() and self.b2f.is_zero() and self.l3.is_zero()


@dataclass(frozen=True)
class Weight2Chain:
    """Element of B_2 (+) wedge^2 F* in degrees 1, 2."""

    b2: FormalSum = field(default_factory=FormalSum)
    l2: FormalSum = field(default_factory=FormalSum)

    def __add__(self, other: "Weight2Chain") -> "Weight2Chain":
        return Weight2Chain(self.b2 + other.b2, self.l2 + other.l2)

    def is_zero(self) -> bool:
        return self.b2.is_zero() and self.l2.is_zero()


def differential3(c: Weight3Chain) -> Weight3Chain:
    """Total differential of the weight-3 complex."""
    return Weight3Chain(FormalSum(), delta_n_formal(c.b3, 3), delta32(c.b2f))


def differential2(c: Weight2Chain) -> Weight2Chain:
    return Weight2Chain(FormalSum(), delta2(c.b2))


# ------------------------------------------------------------ valuations

_I = (Fraction(0), Fraction(1))


class Valuation:
    """Discrete valuation of Q(t) at a monic irreducible polynomial or at infinity.

    Residue fields: Q at linear places and at infinity; Q(i) at t^2 + 1.
    """

    def __init__(self, place):
        if place == "inf":
            self.place = "inf"
            self.residue_backend = "Q"
            return
        if isinstance(place, FactoredElement):
            if len(place.exps) != 1 or place.exps[0][1] != 1 or place.exps[0][0][0] != "x":
                raise ValueError("a place is a single monic irreducible polynomial")
            place = place.exps[0][0]
        if isinstance(place, tuple) and place and place[0] != "x":
            place = ("x", len(place) - 1, tuple(Fraction(c) for c in place))
        self.place = place
        deg, coeffs = place[1], place[2]
        if coeffs[0] != 1:
            raise ValueError("place polynomial must be monic")
        if deg == 1:
            self.residue_backend = "Q"
            self.root = -coeffs[1]
        elif coeffs == (1, 0, 1):
            self.residue_backend = "Qi"
            self.root = _I
        else:
            raise UnfactorableElement("only linear places, t^2 + 1 and infinity have residue backends")

    @classmethod
    def at(cls, *coeffs) -> "Valuation":
        """Valuation at the monic polynomial with the given coefficients, highest degree first."""
        return cls(("x", len(coeffs) - 1, tuple(Fraction(c) for c in coeffs)))

    def __repr__(self) -> str:
        from .fields import atom_str

        return "Valuation(inf)" if self.place == "inf" else f"Valuation{atom_str(self.place)}"

    def ord(self, fe: FactoredElement) -> int:
        if fe.backend != "Qt":
            raise TypeError("valuations act on Q(t)")
        if self.place == "inf":
            return -sum(e * (a[1] if a[0] == "x" else 0) for a, e in fe.exps)
        return dict(fe.exps).get(self.place, 0)

    def _one(self) -> FactoredElement:
        be = BACKENDS[self.residue_backend]
        return FactoredElement(self.residue_backend, be.one_unit(), ())

    def atom_residue(self, atom) -> tuple[int, FactoredElement]:
        """(order at v, residue of atom / pi^order) for the canonical uniformizer."""
        be = BACKENDS[self.residue_backend]
        if atom[0] == "p":
            return 0, be.factor(Fraction(atom[1]))
        if self.place == "inf":
            return -atom[1], self._one()
        if atom == self.place:
            return 1, self._one()
        return 0, be.factor(self._evaluate(atom[2]))

    def _evaluate(self, coeffs):
        if self.residue_backend == "Q":
            return poly_eval(coeffs, self.root)
        re, im = Fraction(0), Fraction(0)
        for c in coeffs:  # Horner in Q(i) at the root i
            re, im = -im + c, re
        return (re, im)

    def residue(self, fe: FactoredElement) -> FactoredElement:
        """Image of a unit at v in the residue field (roots of unity dropped)."""
        if self.ord(fe) != 0:
            raise DegenerateInput("residue of a non-unit")
        out = self._one()
        for a, e in fe.exps:
            k, u = self.atom_residue(a)
            out = out * u ** e
        if self.place == "inf":
            return out
        # sign of the rational unit maps to a root of unity; keep it for exact values
        be = BACKENDS[self.residue_backend]
        sign = be.factor(Fraction(fe.unit[0]))
        return out * sign

    def residue_value(self, fe: FactoredElement):
        """Exact value of the residue of fe including the factors pi^ord cancelled."""
        return BACKENDS[self.residue_backend].value(self.residue(fe))


def tame_theta(w: FormalSum, v: Valuation) -> FormalSum:
    """Tame symbol on an atom wedge: theta(pi ^ u_2 ^ ...) = u_2-bar ^ ..., units only -> 0."""
    acc: dict = {}
    for atoms, c in w.items():
        data = [v.atom_residue(a) for a in atoms]
        for j, (k, _) in enumerate(data):
            if k == 0:
                continue
            rest = [u for i, (_, u) in enumerate(data) if i != j]
            sign = -1 if j % 2 else 1
            for key, coeff in wedge(*rest).items():
                acc[key] = acc.get(key, 0) + c * k * sign * coeff
    return FormalSum(acc)


def tame_symbol(elements: Sequence[FactoredElement], v: Valuation, uniformizer: FactoredElement | None = None) -> FormalSum:
    """theta_n(f_1 ^ ... ^ f_n) from the elements themselves, for an explicit uniformizer.

    Writes f_i = pi^{a_i} u_i and expands; only terms with a single pi survive.
    """
    if uniformizer is None:
        uniformizer = atom_element("Qt", v.place) if v.place != "inf" else Qt(((1,), (1, 0)))
    if v.ord(uniformizer) != 1:
        raise ValueError("uniformizer must have order 1")
    ords = [v.ord(f) for f in elements]
    units = [v.residue(f / uniformizer ** k) for f, k in zip(elements, ords)]
    acc = FormalSum()
    for j, k in enumerate(ords):
        if k:
            sign = -1 if j % 2 else 1
            acc = acc + wedge(*(units[:j] + units[j + 1:])) * (k * sign)
    return acc


def specialize_sv(e: FormalSum, v: Valuation) -> FormalSum:
    """{x} -> {x-bar} when x is a unit at v, else 0."""
    acc = FormalSum()
    for x, c in e.items():
        if v.ord(x) == 0:
            acc = acc + symbol(v.residue(x), c)
    return acc


def residue_weight3(c: Weight3Chain, v: Valuation) -> Weight2Chain:
    """Residue map into the shifted weight-2 complex of the residue field."""
    b2 = FormalSum()
    for (x, a), k in c.b2f.items():
        order = v.atom_residue(a)[0]
        if order and v.ord(x) == 0:
            b2 = b2 + symbol(v.residue(x), k * order)
    return Weight2Chain(b2, tame_theta(c.l3, v))


def residue_commutator(c: Weight3Chain, v: Valuation) -> Weight2Chain:
    """residue(d c) - d(residue c); zero for a chain map."""
    lhs = residue_weight3(differential3(c), v)
    rhs = differential2(residue_weight3(c, v))
    return Weight2Chain(lhs.b2 - rhs.b2, lhs.l2 - rhs.l2)


__all__ = [
    "Valuation",
    "Weight2Chain",
    "Weight3Chain",
    "atom_element",
    "atom_wedge",
    "b2_tensor",
    "delta2",
    "delta32",
    "delta_n_formal",
    "delta_otimes_id",
    "differential2",
    "differential3",
    "five_term_element",
    "residue_commutator",
    "residue_weight3",
    "rf_cross_ratio",
    "sort_wedge",
    "specialize_sv",
    "tame_symbol",
    "tame_theta",
]
