"""Elliptic test functions with prescribed divisor, built from the Jacobi theta_1.

With w = z / v, tau = u / v and q = exp(i pi tau),
f(z) = c * exp(-2 pi i k w) * prod_i theta_1(pi (w - a_i) | q)^{n_i}
where a_i are the support points in w-coordinates and
sum n_i a_i = m + k tau.  theta_1 changes by -1 under w -> w + 1 and by
-q^{-1} e^{-2 pi i w} under w -> w + tau; with degree 0 these factors reduce
to exp(2 pi i k tau), which the exponential prefactor cancels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ..errors import DegenerateInput
from .lattice import Divisor, Lattice, TorusPoint


def _theta_terms(q: complex, tol: float = 1e-18, max_abs_im: float = 0.0) -> int:
    """Series length with |q|^{(j+1/2)^2} e^{(2j+1) max|Im x|} < tol for the first omitted j."""
    lq = -math.log(abs(q))
    j = 0
    while (j + 0.5) ** 2 * lq - (2 * j + 1) * max_abs_im < -math.log(tol) or (j + 0.5) * lq < max_abs_im:
        j += 1
    return j + 1


def theta1(x: np.ndarray, q: complex, terms: int) -> tuple[np.ndarray, np.ndarray]:
    """(theta_1(x|q), theta_1'(x|q)) by the q-series, vectorized."""
    x = np.asarray(x, dtype=np.complex128)
    val = np.zeros_like(x)
    der = np.zeros_like(x)
    for j in range(terms):
        c = 2 * (-1) ** j * q ** ((j + 0.5) ** 2)
        k = 2 * j + 1
        val += c * np.sin(k * x)
        der += c * k * np.cos(k * x)
    return val, der


@dataclass
class SigmaQuotient:
    """Meromorphic function on C / Gamma with divisor ``divisor``.

    ``scale`` is the multiplicative normalization constant c (reported,
    never folded in silently).
    """

    divisor: Divisor
    scale: complex = 1.0

    def __post_init__(self):
        d = self.divisor
        if d.degree != 0 or not d.is_principal():
            raise DegenerateInput("divisor must have degree 0 and sum 0 modulo the lattice")
        self.lattice: Lattice = d.lattice
        L = self.lattice
        self.tau = L.tau
        self.q = complex(np.exp(1j * np.pi * self.tau))
        self._pts = [(float(p.s), float(p.r), k) for p, k in d.terms]
        s_sum, r_sum = d.weighted_sum()
        self._k = int(round(float(r_sum)))
        self._m = int(round(float(s_sum)))
        self._terms = _theta_terms(self.q, max_abs_im=math.pi * self.tau.imag)

    # -- evaluation in double precision on arrays of complex z
    def _reduced_w(self, z: np.ndarray) -> np.ndarray:
        L = self.lattice
        z = np.asarray(z, dtype=np.complex128)
        det = (np.conj(L.v) * L.u).imag
        s = (np.conj(z) * L.u).imag / det
        r = (np.conj(L.v) * z).imag / det
        s = s - np.floor(s)
        r = r - np.floor(r)
        return s + r * self.tau

    def _log_parts(self, z):
        w = self._reduced_w(z)
        logabs = np.zeros(w.shape)
        dlog = np.zeros(w.shape, dtype=np.complex128)
        for s, r, k in self._pts:
            a = s + r * self.tau
            th, dth = theta1(np.pi * (w - a), self.q, self._terms)
            logabs += k * np.log(np.abs(th))
            dlog += k * np.pi * dth / th
        logabs += (2 * np.pi * self._k * w).imag + math.log(abs(self.scale))
        dlog += -2j * np.pi * self._k
        return logabs, dlog / self.lattice.v

    def log_abs(self, z) -> np.ndarray:
        return self._log_parts(z)[0]

    def dlog(self, z) -> np.ndarray:
        """f'(z) / f(z)."""
        return self._log_parts(z)[1]

    def value(self, z) -> np.ndarray:
        w = self._reduced_w(z)
        out = np.full(w.shape, complex(self.scale), dtype=np.complex128)
        for s, r, k in self._pts:
            th, _ = theta1(np.pi * (w - (s + r * self.tau)), self.q, self._terms)
            out *= th**k
        return out * np.exp(-2j * np.pi * self._k * w)

    def evaluate(self, z):
        """(log|f|, f'/f) in one pass."""
        return self._log_parts(z)

    # -- multiprecision evaluation (no reduction: tests periodicity directly)
    def value_mp(self, z, prec: int = 128):
        with mpmath.workprec(prec + 16):
            L = self.lattice
            zz = mpmath.mpc(z)
            v = mpmath.mpc(L.v)
            tau = mpmath.mpc(L.u) / v
            q = mpmath.exp(1j * mpmath.pi * tau)
            w = zz / v
            out = mpmath.mpc(self.scale)
            for p, k in self.divisor.terms:
                a = _mp_coord(p.s) + _mp_coord(p.r) * tau
                out *= mpmath.jtheta(1, mpmath.pi * (w - a), q) ** k
            return out * mpmath.exp(-2j * mpmath.pi * self._k * w)

    def log_abs_mp(self, z, prec: int = 128):
        with mpmath.workprec(prec + 16):
            return mpmath.log(abs(self.value_mp(z, prec)))

    def singular_points(self) -> list[complex]:
        return [p.z for p, _ in self.divisor.terms]

    def times(self, other: "SigmaQuotient") -> "SigmaQuotient":
        return SigmaQuotient(self.divisor + other.divisor, self.scale * other.scale)

    def power(self, k: int) -> "SigmaQuotient":
        return SigmaQuotient(self.divisor.scaled(k), self.scale**k)

    def normalized_at(self, z0: complex, target: complex = 1.0) -> "SigmaQuotient":
        """Same divisor, scale chosen so that f(z0) = target."""
        base = SigmaQuotient(self.divisor, 1.0)
        val = complex(base.value(np.array([z0]))[0])
        if val == 0 or not np.isfinite(val):
            raise DegenerateInput("normalization point lies on the divisor")
        return SigmaQuotient(self.divisor, target / val)


def _mp_coord(x):
    from fractions import Fraction

    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def sigma_quotient(d: Divisor, scale: complex = 1.0) -> SigmaQuotient:
    """Evaluators for the function with divisor d and normalization constant ``scale``."""
    return SigmaQuotient(d, scale)


class ConstantFunction:
    """f = c, for the trivial cases of C_f and scaling checks."""

    def __init__(self, c: complex, lattice: Lattice):
        self.c = complex(c)
        self.lattice = lattice
        self.divisor = Divisor(lattice, ())
        self.scale = self.c

    def log_abs(self, z):
        return np.full(np.shape(z), math.log(abs(self.c)))

    def dlog(self, z):
        return np.zeros(np.shape(z), dtype=np.complex128)

    def evaluate(self, z):
        return self.log_abs(z), self.dlog(z)

    def value(self, z):
        return np.full(np.shape(z), self.c, dtype=np.complex128)

    def singular_points(self):
        return []


@dataclass
class UnitPair:
    """f and 1 - f as separate sigma quotients with known divisors.

    f has divisor (a) + (-a) - 2(0) and is scaled so that f(b) = 1; then
    1 - f is even with the same double pole and vanishes at +-b, so its
    divisor is (b) + (-b) - 2(0).  The scale of 1 - f is fixed at one
    auxiliary point and ``consistency`` measures the identity elsewhere.
    """

    f: SigmaQuotient
    one_minus_f: SigmaQuotient

    @classmethod
    def build(cls, L: Lattice, a: TorusPoint, b: TorusPoint, probe: complex | None = None) -> "UnitPair":
        from .lattice import symmetric_divisor

        if a.is_zero() or b.is_zero() or a == b or a == -b:
            raise DegenerateInput("a and b must be distinct nonzero points with a != +-b")
        f = sigma_quotient(symmetric_divisor(L, a)).normalized_at(b.z, 1.0)
        g0 = sigma_quotient(symmetric_divisor(L, b))
        if probe is None:
            probe = 0.1234 * L.v + 0.3779 * L.u
        fz = complex(f.value(np.array([probe]))[0])
        g0z = complex(g0.value(np.array([probe]))[0])
        return cls(f, SigmaQuotient(g0.divisor, (1 - fz) / g0z))

    def consistency(self, zs) -> float:
        zs = np.asarray(zs, dtype=np.complex128)
        return float(np.max(np.abs(self.f.value(zs) + self.one_minus_f.value(zs) - 1)))
