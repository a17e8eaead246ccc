"""Lattices, torus points, divisors, truncation plans and the U(1) pairing.

A point z = s v + r u and a lattice vector gamma = m v + n u pair to
(z, gamma) = exp(A^{-1}(z conj(gamma) - conj(z) gamma)) = exp(2 pi i (s n - r m)).
The second form is what the kernels use; for rational (s, r) the phase is an
exact rational number modulo 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import mpmath
import numpy as np

from ..errors import DegenerateInput

Coord = Fraction | float


def _coord(x) -> Coord:
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return float(x)


def _frac_part(x: Coord) -> Coord:
    if isinstance(x, Fraction):
        return x - math.floor(x)
    return x - math.floor(x)


@dataclass(frozen=True)
class Lattice:
    """Gamma = Z u + Z v with Im(u / v) > 0."""

    u: complex
    v: complex

    def __post_init__(self):
        u, v = complex(self.u), complex(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if v == 0 or (u / v).imag <= 0:
            raise DegenerateInput("periods must satisfy Im(u/v) > 0")

    @classmethod
    def square(cls) -> "Lattice":
        return cls(1j, 1)

    @property
    def tau(self) -> complex:
        return self.u / self.v

    @property
    def area(self) -> float:
        return lattice_area(self)

    @property
    def covolume(self) -> float:
        """Euclidean area of the fundamental parallelogram, |Im(conj(u) v)| = pi |A|."""
        return abs((self.u.conjugate() * self.v).imag)

    def area_mp(self):
        u, v = mpmath.mpc(self.u), mpmath.mpc(self.v)
        return ((mpmath.conj(u) * v - u * mpmath.conj(v)) / (2j * mpmath.pi)).real

    def vector(self, m: int, n: int) -> complex:
        """gamma = m v + n u."""
        return m * self.v + n * self.u

    def coords(self, z: complex) -> tuple[float, float]:
        """Real (s, r) with z = s v + r u."""
        z = complex(z)
        det = (self.v.conjugate() * self.u).imag
        s = (z.conjugate() * self.u).imag / det
        r = (self.v.conjugate() * z).imag / det
        return s, r

    def point(self, s, r) -> "TorusPoint":
        return TorusPoint(self, _coord(s), _coord(r))

    def point_at(self, z: complex) -> "TorusPoint":
        s, r = self.coords(z)
        return TorusPoint(self, s, r)

    def to_json(self) -> dict:
        return {"u": [self.u.real, self.u.imag], "v": [self.v.real, self.v.imag]}


def lattice_area(L: Lattice) -> float:
    """A(Gamma) = (conj(u) v - u conj(v)) / (2 pi i), a nonzero real number."""
    u, v = L.u, L.v
    return ((u.conjugate() * v - u * v.conjugate()) / (2j * math.pi)).real


@dataclass(frozen=True)
class TorusPoint:
    """A point of C / Gamma in lattice coordinates, reduced to [0, 1)^2."""

    lattice: Lattice
    s: Coord
    r: Coord

    def __post_init__(self):
        object.__setattr__(self, "s", _frac_part(_coord(self.s)))
        object.__setattr__(self, "r", _frac_part(_coord(self.r)))

    @property
    def z(self) -> complex:
        return float(self.s) * self.lattice.v + float(self.r) * self.lattice.u

    @property
    def is_rational(self) -> bool:
        return isinstance(self.s, Fraction) and isinstance(self.r, Fraction)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(self.lattice, -self.s, -self.r)

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.lattice, self.s + other.s, self.r + other.r)

    def __sub__(self, other: "TorusPoint") -> "TorusPoint":
        return self + (-other)

    def is_zero(self) -> bool:
        return self.s == 0 and self.r == 0

    def to_json(self) -> list:
        return [str(self.s), str(self.r)] if self.is_rational else [float(self.s), float(self.r)]


@dataclass(frozen=True)
class Divisor:
    """Integer combination of torus points."""

    lattice: Lattice
    terms: tuple[tuple[TorusPoint, int], ...] = field(default=())

    @classmethod
    def from_pairs(cls, lattice: Lattice, pairs: Iterable[tuple[TorusPoint, int]]) -> "Divisor":
        acc: dict = {}
        for p, k in pairs:
            if p.lattice != lattice:
                raise ValueError("point on a different lattice")
            if k:
                acc[(p.s, p.r)] = acc.get((p.s, p.r), 0) + int(k)
        terms = tuple(
            (TorusPoint(lattice, s, r), k) for (s, r), k in sorted(acc.items(), key=lambda t: (float(t[0][0]), float(t[0][1]))) if k
        )
        return cls(lattice, terms)

    @classmethod
    def from_coords(cls, lattice: Lattice, items: Iterable[tuple]) -> "Divisor":
        """items: (s, r, multiplicity) triples in lattice coordinates."""
        return cls.from_pairs(lattice, ((lattice.point(s, r), k) for s, r, k in items))

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.terms)

    def weighted_sum(self) -> tuple[Coord, Coord]:
        """Sum of multiplicity times lattice coordinates (not reduced)."""
        s = sum((k * p.s for p, k in self.terms), Fraction(0) if self.is_rational else 0.0)
        r = sum((k * p.r for p, k in self.terms), Fraction(0) if self.is_rational else 0.0)
        return s, r

    @property
    def is_rational(self) -> bool:
        return all(p.is_rational for p, _ in self.terms)

    def is_principal(self, tol: float = 1e-12) -> bool:
        if self.degree != 0:
            return False
        s, r = self.weighted_sum()
        if self.is_rational:
            return s.denominator == 1 and r.denominator == 1
        return abs(s - round(s)) < tol and abs(r - round(r)) < tol

    def scaled(self, k: int) -> "Divisor":
        return Divisor(self.lattice, tuple((p, m * k) for p, m in self.terms))

    def shifted(self, t: TorusPoint) -> "Divisor":
        # translation is injective: keep the term order so sums over the support keep theirs
        return Divisor(self.lattice, tuple((p + t, k) for p, k in self.terms))

    def negated(self) -> "Divisor":
        return Divisor(self.lattice, tuple((-p, k) for p, k in self.terms))

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor.from_pairs(self.lattice, list(self.terms) + list(other.terms))

    def support(self) -> list[TorusPoint]:
        return [p for p, _ in self.terms]

    def to_json(self) -> list:
        return [p.to_json() + [k] for p, k in self.terms]


def point_divisor(lattice: Lattice, p: TorusPoint, k: int = 1) -> Divisor:
    return Divisor.from_pairs(lattice, [(p, k)])


def symmetric_divisor(lattice: Lattice, p: TorusPoint) -> Divisor:
    """(p) + (-p) - 2(0)."""
    o = lattice.point(0, 0)
    return Divisor.from_pairs(lattice, [(p, 1), (-p, 1), (o, -2)])


@dataclass(frozen=True)
class TruncationPlan:
    """Symmetric truncation 0 < |gamma| <= R.

    Vectors are ordered by shells of increasing |gamma|^2, then
    lexicographically in (m, n); gamma is included iff -gamma is.
    """

    radius: float

    def bounds(self, L: Lattice) -> tuple[int, int]:
        # |m v + n u| >= |m| * covol / |u| etc.
        covol = L.covolume
        mmax = int(math.floor(self.radius * abs(L.u) / covol)) + 1
        nmax = int(math.floor(self.radius * abs(L.v) / covol)) + 1
        return mmax, nmax

    def index_arrays(self, L: Lattice) -> tuple[np.ndarray, np.ndarray]:
        """Integer coordinate arrays (m, n) in plan order."""
        return _plan_indices(L.u, L.v, float(self.radius))

    def vectors(self, L: Lattice) -> np.ndarray:
        m, n = self.index_arrays(L)
        return m * L.v + n * L.u

    def __iter__(self) -> Iterator:  # pragma: no cover - convenience
        raise TypeError("iterate over plan.index_arrays(lattice)")

    def to_json(self) -> dict:
        return {"radius": self.radius, "order": "shell-lex", "symmetric": True}


_PLAN_CACHE: dict = {}


def _plan_indices(u: complex, v: complex, radius: float) -> tuple[np.ndarray, np.ndarray]:
    key = (u, v, radius)
    hit = _PLAN_CACHE.get(key)
    if hit is not None:
        return hit
    L = Lattice(u, v)
    mmax, nmax = TruncationPlan(radius).bounds(L)
    mm, nn = np.meshgrid(np.arange(-mmax, mmax + 1), np.arange(-nmax, nmax + 1), indexing="ij")
    mm = mm.ravel()
    nn = nn.ravel()
    g = mm * v + nn * u
    norm2 = g.real**2 + g.imag**2
    keep = (norm2 > 0) & (norm2 <= radius * radius * (1 + 1e-14))
    mm, nn, norm2 = mm[keep], nn[keep], norm2[keep]
    # shells: round |gamma|^2 to absorb representation error, then lex order
    shell = np.round(norm2 * 1e9).astype(np.int64)
    order = np.lexsort((nn, mm, shell))
    out = (mm[order].astype(np.int64), nn[order].astype(np.int64))
    if len(_PLAN_CACHE) > 32:
        _PLAN_CACHE.clear()
    _PLAN_CACHE[key] = out
    return out


# ------------------------------------------------------------------ pairing

def pairing(z: TorusPoint | complex, gamma: complex, lattice: Lattice | None = None, prec: int | None = None):
    """(z, gamma) = exp(A^{-1}(z conj(gamma) - conj(z) gamma)) evaluated from the defining formula in mpmath."""
    if isinstance(z, TorusPoint):
        lattice = z.lattice
        zc = _mp_point(z)
    else:
        if lattice is None:
            raise ValueError("lattice required for a bare complex point")
        zc = mpmath.mpc(z)
    with mpmath.workprec(prec or 144):
        g = mpmath.mpc(gamma)
        a = lattice.area_mp()
        return mpmath.exp((zc * mpmath.conj(g) - mpmath.conj(zc) * g) / a)


def _mp_point(p: TorusPoint):
    L = p.lattice
    s = mpmath.mpf(p.s.numerator) / p.s.denominator if isinstance(p.s, Fraction) else mpmath.mpf(p.s)
    r = mpmath.mpf(p.r.numerator) / p.r.denominator if isinstance(p.r, Fraction) else mpmath.mpf(p.r)
    return s * mpmath.mpc(L.v) + r * mpmath.mpc(L.u)


def pairing_index(p: TorusPoint, m: int, n: int) -> complex:
    """(p, m v + n u) from lattice coordinates; exact phase reduction for rational points."""
    phase = p.s * n - p.r * m
    if isinstance(phase, Fraction):
        phase = phase - math.floor(phase)
        return complex(np.exp(2j * math.pi * float(phase)))
    return complex(np.exp(2j * math.pi * (phase - math.floor(phase))))


def divisor_character(d: Divisor, m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """D(gamma) = sum_i k_i (x_i, gamma) over index arrays."""
    out = np.zeros(m.shape, dtype=np.complex128)
    for p, k in d.terms:
        ph = float(p.s) * n - float(p.r) * m
        out += k * np.exp(2j * np.pi * (ph - np.floor(ph)))
    return out


def common_denominator(divisors: Sequence[Divisor]) -> int | None:
    """LCM of coordinate denominators, or None when some point is not rational."""
    den = 1
    for d in divisors:
        for p, _ in d.terms:
            if not p.is_rational:
                return None
            den = math.lcm(den, p.s.denominator, p.r.denominator)
    return den


def integer_phases(d: Divisor, den: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(S, Rr, k) with s = S / den and r = Rr / den for every support point."""
    S = np.array([int(p.s * den) for p, _ in d.terms], dtype=np.int64)
    R = np.array([int(p.r * den) for p, _ in d.terms], dtype=np.int64)
    K = np.array([k for _, k in d.terms], dtype=np.int64)
    return S, R, K
