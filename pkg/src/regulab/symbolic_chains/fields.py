"""Nonzero field elements factored over explicit bases.

Three backends share one representation:

* ``Q``  -- rationals; atoms are primes ``('p', q)``.
* ``Qt`` -- rational functions in t; atoms are rational primes (for constant
  content) and monic irreducible polynomials ``('x', deg, coeffs)``.
* ``Qi`` -- Gaussian rationals, the residue field at the place t^2 + 1;
  atoms are Gaussian primes ``('g', a, b)`` normalized to a > 0, b >= 0.

The unit part (a root of unity) is stored but never contributes to wedge or
tensor groups, which are taken modulo torsion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import DegenerateInput, UnfactorableElement

DEFAULT_TRIAL_BOUND = 10**6
_trial_bound = DEFAULT_TRIAL_BOUND


def set_trial_bound(bound: int) -> None:
    """Change the trial-division bound used for rational factorization."""
    global _trial_bound
    if bound < 2:
        raise ValueError("bound must be at least 2")
    _trial_bound = int(bound)
    _factor_int.cache_clear()


def trial_bound() -> int:
    return _trial_bound


# ---------------------------------------------------------------- integers

@lru_cache(maxsize=None)
def _primes_upto(n: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i in range(n + 1) if sieve[i])


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # these bases are deterministic below 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=200_000)
def _factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Factor n > 0 by trial division up to the configured bound."""
    out = []
    bound = _trial_bound
    if n > 1:
        for p in _primes_upto(min(bound, max(2, math.isqrt(n)))):
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
    if n > 1:
        if n > bound * bound and not (n < 3 * 10**24 and _is_probable_prime(n)):
            raise UnfactorableElement(f"cofactor {n} exceeds the trial-division bound {bound}")
        out.append((n, 1))
    return tuple(out)


def factor_int(n: int) -> dict[int, int]:
    if n == 0:
        raise DegenerateInput("0 has no factorization")
    return dict(_factor_int(abs(n)))


# ------------------------------------------------------------ polynomials
# Polynomials are tuples of Fractions, highest degree first; monic when used as atoms.

def poly_eval(p: Sequence, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def poly_str(p: Sequence, var: str = "t") -> str:
    deg = len(p) - 1
    parts = []
    for i, c in enumerate(p):
        k = deg - i
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if k == 0:
            body = str(mag)
        else:
            coef = "" if mag == 1 else f"{mag}*"
            body = coef + (var if k == 1 else f"{var}^{k}")
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return s


# --------------------------------------------------------- gaussian ints

def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdiv_exact(a, b):
    """a / b in Z[i] or None when not exact."""
    n = b[0] * b[0] + b[1] * b[1]
    num = _gmul(a, (b[0], -b[1]))
    if num[0] % n or num[1] % n:
        return None
    return (num[0] // n, num[1] // n)


def _gmod(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    num = _gmul(a, (b[0], -b[1]))
    q = (_round_div(num[0], n), _round_div(num[1], n))
    qb = _gmul(q, b)
    return (a[0] - qb[0], a[1] - qb[1])


def _round_div(a: int, n: int) -> int:
    return (2 * a + n) // (2 * n)


def _ggcd(a, b):
    while b != (0, 0):
        a, b = b, _gmod(a, b)
    return a


_UNITS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _gnormalize(z):
    """Associate of z in the first quadrant (re > 0, im >= 0) and the unit u with z = u * assoc."""
    for u in _UNITS:
        w = _gmul(z, (u[0], -u[1]))  # z * conj(u) = z / u
        if w[0] > 0 and w[1] >= 0:
            return w, u
    raise DegenerateInput("0 has no normalized associate")


@lru_cache(maxsize=None)
def _gaussian_primes_over(p: int) -> tuple[tuple[int, int], ...]:
    if p == 2:
        return ((1, 1),)
    if p % 4 == 3:
        return ((p, 0),)
    # find sqrt(-1) mod p, then gcd(p, x + i)
    for c in range(2, p):
        x = pow(c, (p - 1) // 4, p)
        if x * x % p == p - 1:
            break
    g, _ = _gnormalize(_ggcd((p, 0), (x, 1)))
    h, _ = _gnormalize((g[0], -g[1]))
    return tuple(sorted({g, h}))


def _factor_gaussian_int(z) -> tuple[dict, tuple[int, int]]:
    norm = z[0] * z[0] + z[1] * z[1]
    if norm == 0:
        raise DegenerateInput("0 has no factorization")
    exps: dict = {}
    for p, _ in _factor_int(norm):
        for pi in _gaussian_primes_over(p):
            while True:
                q = _gdiv_exact(z, pi)
                if q is None:
                    break
                z = q
                exps[pi] = exps.get(pi, 0) + 1
    if z not in _UNITS:
        raise UnfactorableElement("gaussian factorization left a non-unit cofactor")
    return exps, z


# ----------------------------------------------------------- the element

@dataclass(frozen=True)
class FactoredElement:
    """unit * prod(atom ** exponent); ``exps`` is a sorted tuple of (atom, exponent)."""

    backend: str
    unit: tuple
    exps: tuple

    # -- construction
    @staticmethod
    def from_exps(backend: str, unit, exps: dict) -> "FactoredElement":
        items = tuple(sorted((a, e) for a, e in exps.items() if e))
        return FactoredElement(backend, unit, items)

    @property
    def exponents(self) -> dict:
        return dict(self.exps)

    def atoms(self) -> tuple:
        return tuple(a for a, _ in self.exps)

    def is_torsion(self) -> bool:
        return not self.exps

    # -- group law
    def __mul__(self, other: "FactoredElement") -> "FactoredElement":
        if self.backend != other.backend:
            raise TypeError("backend mismatch")
        be = BACKENDS[self.backend]
        d = dict(self.exps)
        for a, e in other.exps:
            d[a] = d.get(a, 0) + e
        return FactoredElement.from_exps(self.backend, be.unit_mul(self.unit, other.unit), d)

    def __truediv__(self, other: "FactoredElement") -> "FactoredElement":
        return self * other.inverse()

    def inverse(self) -> "FactoredElement":
        be = BACKENDS[self.backend]
        return FactoredElement(self.backend, be.unit_inv(self.unit), tuple((a, -e) for a, e in self.exps))

    def __pow__(self, k: int) -> "FactoredElement":
        be = BACKENDS[self.backend]
        u = be.one_unit()
        base = self.unit if k >= 0 else be.unit_inv(self.unit)
        for _ in range(abs(k)):
            u = be.unit_mul(u, base)
        return FactoredElement(self.backend, u, tuple((a, k * e) for a, e in self.exps))

    # -- values
    def value(self):
        return BACKENDS[self.backend].value(self)

    def is_one(self) -> bool:
        return not self.exps and self.unit == BACKENDS[self.backend].one_unit()

    def one_minus(self) -> "FactoredElement":
        """Factorization of 1 - self over the (closed) basis."""
        return BACKENDS[self.backend].one_minus(self)

    def __str__(self) -> str:
        return BACKENDS[self.backend].format(self)

    def __repr__(self) -> str:
        return f"FactoredElement[{self.backend}]({self})"


def atom_str(atom) -> str:
    kind = atom[0]
    if kind == "p":
        return str(atom[1])
    if kind == "x":
        return "(" + poly_str(atom[2]) + ")"
    if kind == "g":
        a, b = atom[1], atom[2]
        return f"({a})" if b == 0 else f"({a}+{b}i)"
    return repr(atom)


def _format_generic(fe: FactoredElement, unit_str: str) -> str:
    if not fe.exps:
        return unit_str
    parts = [atom_str(a) + ("" if e == 1 else f"^{e}") for a, e in fe.exps]
    prefix = "" if unit_str == "1" else unit_str + "*"
    return prefix + "*".join(parts)


# --------------------------------------------------------------- backends

class RationalBackend:
    name = "Q"

    @staticmethod
    def one_unit():
        return (1,)

    @staticmethod
    def unit_mul(u, v):
        return (u[0] * v[0],)

    @staticmethod
    def unit_inv(u):
        return u

    def factor(self, x) -> FactoredElement:
        return _factor_fraction(Fraction(x))

    def value(self, fe: FactoredElement) -> Fraction:
        out = Fraction(fe.unit[0])
        for (_, p), e in fe.exps:
            out *= Fraction(p) ** e
        return out

    def one_minus(self, fe: FactoredElement) -> FactoredElement:
        v = 1 - self.value(fe)
        if v == 0:
            raise DegenerateInput("1 - x vanishes")
        return self.factor(v)

    def format(self, fe: FactoredElement) -> str:
        return str(self.value(fe))


@lru_cache(maxsize=500_000)
def _factor_fraction(x: Fraction) -> FactoredElement:
    if x == 0:
        raise DegenerateInput("0 is not a unit of the field")
    exps: dict = {}
    for p, e in _factor_int(abs(x.numerator)):
        exps[("p", p)] = e
    for p, e in _factor_int(x.denominator):
        exps[("p", p)] = exps.get(("p", p), 0) - e
    return FactoredElement.from_exps("Q", (1 if x > 0 else -1,), exps)


class GaussianBackend:
    """Gaussian rationals; values are pairs (re, im) of Fractions."""

    name = "Qi"

    @staticmethod
    def one_unit():
        return (1, 0)

    @staticmethod
    def unit_mul(u, v):
        return _gmul(u, v)

    @staticmethod
    def unit_inv(u):
        return (u[0], -u[1])

    def factor(self, z) -> FactoredElement:
        if isinstance(z, complex):
            raise TypeError("pass exact (re, im) Fractions, not a float complex")
        if not isinstance(z, tuple):
            z = (Fraction(z), Fraction(0))
        return _factor_gaussian(Fraction(z[0]), Fraction(z[1]))

    def value(self, fe: FactoredElement):
        re, im = Fraction(fe.unit[0]), Fraction(fe.unit[1])
        for (_, a, b), e in fe.exps:
            base = (Fraction(a), Fraction(b))
            if e < 0:
                n = a * a + b * b
                base = (Fraction(a, n), Fraction(-b, n))
            for _ in range(abs(e)):
                re, im = re * base[0] - im * base[1], re * base[1] + im * base[0]
        return (re, im)

    def one_minus(self, fe: FactoredElement) -> FactoredElement:
        re, im = self.value(fe)
        if re == 1 and im == 0:
            raise DegenerateInput("1 - x vanishes")
        return self.factor((1 - re, -im))

    def format(self, fe: FactoredElement) -> str:
        re, im = self.value(fe)
        if im == 0:
            return str(re)
        return f"({re}{'+' if im >= 0 else '-'}{abs(im)}i)"


@lru_cache(maxsize=100_000)
def _factor_gaussian(re: Fraction, im: Fraction) -> FactoredElement:
    if re == 0 and im == 0:
        raise DegenerateInput("0 is not a unit of the field")
    d = math.lcm(re.denominator, im.denominator)
    num = (int(re * d), int(im * d))
    exps_num, unit = _factor_gaussian_int(num)
    exps_den, unit_d = _factor_gaussian_int((d, 0))
    exps: dict = {}
    for pi, e in exps_num.items():
        exps[("g",) + pi] = e
    for pi, e in exps_den.items():
        exps[("g",) + pi] = exps.get(("g",) + pi, 0) - e
    u = _gmul(unit, (unit_d[0], -unit_d[1]))
    return FactoredElement.from_exps("Qi", u, exps)


class RationalFunctionBackend:
    """Q(t). Values are pairs (numerator, denominator) of coefficient tuples."""

    name = "Qt"
    max_closure_degree = 2

    @staticmethod
    def one_unit():
        return (1,)

    @staticmethod
    def unit_mul(u, v):
        return (u[0] * v[0],)

    @staticmethod
    def unit_inv(u):
        return u

    def factor(self, x, max_degree: int | None = None) -> FactoredElement:
        """Factor a value given as a polynomial tuple, a (num, den) pair, a Fraction or a sympy expression."""
        num, den = _as_num_den(x)
        fe = _factor_rational_function(num, den, max_degree)
        declare_atoms(a for a in fe.atoms() if a[0] == "x")
        return fe

    def value(self, fe: FactoredElement):
        num: tuple = (Fraction(fe.unit[0]),)
        den: tuple = (Fraction(1),)
        for atom, e in fe.exps:
            p = (Fraction(atom[1]),) if atom[0] == "p" else atom[2]
            for _ in range(abs(e)):
                if e > 0:
                    num = poly_mul(num, p)
                else:
                    den = poly_mul(den, p)
        return (num, den)

    def one_minus(self, fe: FactoredElement) -> FactoredElement:
        num, den = self.value(fe)
        diff = poly_sub(den, num)
        if not any(diff):
            raise DegenerateInput("1 - x vanishes")
        return _factor_rational_function(diff, den, self.max_closure_degree)

    def format(self, fe: FactoredElement) -> str:
        sign = "-" if fe.unit[0] < 0 else ""
        body = _format_generic(FactoredElement(fe.backend, (1,), fe.exps), "1")
        return sign + body


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def poly_sub(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    a = (Fraction(0),) * (n - len(a)) + tuple(a)
    b = (Fraction(0),) * (n - len(b)) + tuple(b)
    out = tuple(x - y for x, y in zip(a, b))
    k = 0
    while k < len(out) - 1 and out[k] == 0:
        k += 1
    return out[k:]


def _as_num_den(x):
    if isinstance(x, tuple) and len(x) == 2 and all(isinstance(p, tuple) for p in x):
        return tuple(Fraction(c) for c in x[0]), tuple(Fraction(c) for c in x[1])
    if isinstance(x, tuple):
        return tuple(Fraction(c) for c in x), (Fraction(1),)
    if isinstance(x, (int, Fraction)):
        return (Fraction(x),), (Fraction(1),)
    # sympy expression in the symbol t
    import sympy as sp

    t = sp.Symbol("t")
    num, den = sp.fraction(sp.together(sp.sympify(x)))
    pn = sp.Poly(num, t, domain="QQ")
    pd = sp.Poly(den, t, domain="QQ")
    conv = lambda c: Fraction(int(c.p), int(c.q))  # noqa: E731
    return tuple(conv(c) for c in pn.all_coeffs()), tuple(conv(c) for c in pd.all_coeffs())


_declared_atoms: set = set()


def declare_atoms(atoms: Iterable[tuple]) -> None:
    """Admit high-degree irreducibles into the basis used when closing under 1 - x."""
    _declared_atoms.update(atoms)


@lru_cache(maxsize=100_000)
def _factor_poly(p: tuple) -> tuple[Fraction, tuple]:
    """(leading rational, ((monic irreducible tuple, exponent), ...))."""
    if len(p) == 1:
        return p[0], ()
    import sympy as sp

    t = sp.Symbol("t")
    poly = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in p], t, domain="QQ")
    lead, facs = sp.factor_list(poly)
    out = []
    lead_f = Fraction(int(sp.Rational(lead).p), int(sp.Rational(lead).q))
    for f, e in facs:
        lc = sp.Rational(f.LC())
        if lc != 1:
            lead_f *= Fraction(int(lc.p), int(lc.q)) ** e
            f = f.monic()
        coeffs = tuple(Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q)) for c in f.all_coeffs())
        out.append((coeffs, e))
    return lead_f, tuple(out)


def _strip(p: tuple) -> tuple:
    k = 0
    while k < len(p) - 1 and p[k] == 0:
        k += 1
    return tuple(p[k:])


def _factor_rational_function(num: tuple, den: tuple, max_degree: int | None) -> FactoredElement:
    num, den = _strip(tuple(num)), _strip(tuple(den))
    if not any(num) or not any(den):
        raise DegenerateInput("0 is not a unit of the field")
    exps: dict = {}
    unit = 1
    lead = Fraction(1)
    for poly, sgn in ((num, 1), (den, -1)):
        c, facs = _factor_poly(tuple(poly))
        lead = lead * c if sgn > 0 else lead / c
        for coeffs, e in facs:
            atom = ("x", len(coeffs) - 1, coeffs)
            if max_degree is not None and atom[1] > max_degree and atom not in _declared_atoms:
                raise UnfactorableElement(
                    f"irreducible factor {poly_str(coeffs)} of degree > {max_degree} is not in the basis"
                )
            exps[atom] = exps.get(atom, 0) + sgn * e
    if lead < 0:
        unit = -1
    for p, e in _factor_int(abs(lead.numerator)):
        exps[("p", p)] = exps.get(("p", p), 0) + e
    for p, e in _factor_int(lead.denominator):
        exps[("p", p)] = exps.get(("p", p), 0) - e
    return FactoredElement.from_exps("Qt", (unit,), exps)


BACKENDS = {
    "Q": RationalBackend(),
    "Qi": GaussianBackend(),
    "Qt": RationalFunctionBackend(),
}


def Q(x) -> FactoredElement:
    """Factored rational number."""
    return BACKENDS["Q"].factor(x)


def Qi(re, im=0) -> FactoredElement:
    """Factored Gaussian rational re + i*im."""
    return BACKENDS["Qi"].factor((Fraction(re), Fraction(im)))


def Qt(x, max_degree: int | None = None) -> FactoredElement:
    """Factored rational function in t."""
    return BACKENDS["Qt"].factor(x, max_degree)


def monic_atom(*coeffs) -> tuple:
    """Atom key for a monic irreducible polynomial given by coefficients (highest first)."""
    c = tuple(Fraction(x) for x in coeffs)
    if c[0] != 1:
        raise ValueError("atom polynomials are monic")
    return ("x", len(c) - 1, c)


def product(elements: Iterable[FactoredElement], backend: str = "Q") -> FactoredElement:
    out = FactoredElement(backend, BACKENDS[backend].one_unit(), ())
    for e in elements:
        out = out * e
    return out
