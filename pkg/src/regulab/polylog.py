"""Classical and single-valued polylogarithms at configurable binary precision.

Li_n uses three regimes: the defining power series for |z| <= 1/2, the
expansion in powers of log z for 1/2 < |z| < 2, and the inversion formula
with a Bernoulli polynomial for |z| >= 2.  Branches are principal: log has
its cut on (-inf, 0] and Li_n on [1, inf).  Points exactly on [1, inf)
return the limit from below and are flagged.
"""
from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath
from mpmath import mpc, mpf

from .errors import DegenerateInput

DEFAULT_PRECISION = 128
GUARD_BITS = 16


def default_precision() -> int:
    """Working precision in bits; overridden by the REGULAB_PRECISION environment variable."""
    env = os.environ.get("REGULAB_PRECISION")
    return int(env) if env else DEFAULT_PRECISION


class _Prec:
    """Context manager setting mpmath precision to prec + guard bits."""

    def __init__(self, prec: int | None):
        self.bits = (prec or default_precision()) + GUARD_BITS

    def __enter__(self):
        self._ctx = mpmath.workprec(max(self.bits, mpmath.mp.prec))
        self._ctx.__enter__()
        return self

    def __exit__(self, *exc):
        return self._ctx.__exit__(*exc)


# ------------------------------------------------------------ coefficients

@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k >= 0")
    table = _bernoulli_table(k)
    return table[k]


@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> tuple[Fraction, ...]:
    b = [Fraction(1)]
    binom = [1]
    for m in range(1, k + 1):
        # binomial row m+1
        row = [1]
        for j in range(1, m + 2):
            row.append(row[-1] * (m + 2 - j) // j)
        s = sum((row[j] * b[j] for j in range(m)), Fraction(0))
        b.append(-s / (m + 1))
        binom = row
    del binom
    return tuple(b)


def beta(k: int) -> Fraction:
    """beta_k = B_k 2^k / k!, the coefficients of 2x / (e^{2x} - 1)."""
    if k < 0:
        raise ValueError("k >= 0")
    f = 1
    for i in range(2, k + 1):
        f *= i
    return bernoulli(k) * 2**k / f


def beta_table(order: int) -> dict[int, Fraction]:
    return {k: beta(k) for k in range(order + 1)}


def _zeta_int(s: int):
    """zeta at an integer s != 1 in the current precision."""
    if s >= 2:
        return mpmath.zeta(s)
    if s == 0:
        return mpf(-1) / 2
    m = -s
    b = bernoulli(m + 1)
    return -mpf(b.numerator) / b.denominator / (m + 1)


# --------------------------------------------------------------- Li_n

def _to_mpc(z) -> mpc:
    if isinstance(z, tuple):
        return mpc(mpmath.mpmathify(z[0]), mpmath.mpmathify(z[1]))
    return mpmath.mpmathify(z) if isinstance(z, (mpc,)) else mpc(z)


def li_n(z, n: int, prec: int | None = None) -> mpc:
    """Principal branch of Li_n(z)."""
    return li_n_flagged(z, n, prec)[0]


def li_n_flagged(z, n: int, prec: int | None = None) -> tuple[mpc, bool]:
    """(Li_n(z), on_cut) where on_cut marks z real in (1, inf) (limit from below)."""
    with _Prec(prec):
        z = _to_mpc(z)
        on_cut = z.imag == 0 and z.real > 1
        if n < 0:
            raise ValueError("n >= 0")
        if n == 0:
            if z == 1:
                raise DegenerateInput("Li_0 has a pole at 1")
            return z / (1 - z), on_cut
        if n == 1:
            if z == 1:
                raise DegenerateInput("Li_1 has a pole at 1")
            return -mpmath.log(1 - z), on_cut
        if z == 0:
            return mpc(0), False
        r = abs(z)
        if r <= 0.5:
            val = _li_series(z, n)
        elif r < 2:
            val = _li_log_series(z, n)
        else:
            val = _li_inversion(z, n)
        return val, on_cut


def _li_series(z: mpc, n: int) -> mpc:
    eps = mpf(2) ** (-mpmath.mp.prec)
    s = mpc(0)
    p = z
    k = 1
    while True:
        term = p / mpf(k) ** n
        s += term
        if abs(term) < eps * abs(s):
            return s
        k += 1
        p *= z


def _li_log_series(z: mpc, n: int) -> mpc:
    if z == 1:
        return mpc(_zeta_int(n))
    mu = mpmath.log(z)
    eps = mpf(2) ** (-mpmath.mp.prec)
    harmonic = mpmath.fsum(mpf(1) / j for j in range(1, n))
    s = mpc(0)
    p = mpc(1)  # mu^k / k!
    k = 0
    small = 0
    while True:
        if k == n - 1:
            term = p * (harmonic - mpmath.log(-mu))
        else:
            zk = n - k
            term = p * _zeta_int(zk) if (zk >= 0 or zk % 2 == 1) else mpc(0)
        s += term
        if k > n + 2 and term != 0:
            # terms grow like (mu / 2 pi)^k; stop after two negligible nonzero ones
            small = small + 1 if abs(term) < eps * max(abs(s), eps) else 0
            if small >= 2:
                return s
        k += 1
        p = p * mu / k


def _li_inversion(z: mpc, n: int) -> mpc:
    w = 1 / z
    inner = _li_series(w, n)
    arg = mpf(1) / 2 + mpmath.log(-z) / (2j * mpmath.pi)
    corr = -((2j * mpmath.pi) ** n) / mpmath.factorial(n) * mpmath.bernpoly(n, arg)
    return corr - (-1) ** n * inner


# ------------------------------------------------ single-valued versions

def sv_polylog(z, n: int, prec: int | None = None, limit: bool = False, dps: int | None = None) -> mpf:
    """Single-valued L_n(z) = Re / Im (n odd / even) of sum_{k<n} beta_k log^k|z| Li_{n-k}(z).

    With ``limit=True`` the point z = 0 returns its limit 0 instead of raising.
    """
    if dps is not None and prec is None:
        prec = int(dps * 3.33) + 1
    if n < 2:
        raise ValueError("n >= 2")
    with _Prec(prec):
        z = _to_mpc(z)
        if z == 0:
            if limit:
                return mpf(0)
            raise DegenerateInput("L_n is evaluated at 0; pass limit=True for the limit value")
        if z == 1:
            raise DegenerateInput("L_n at 1 is outside the contract")
        lg = mpmath.log(abs(z))
        total = mpc(0)
        lgk = mpf(1)
        for k in range(n):
            b = beta(k)
            if b:
                total += mpf(b.numerator) / b.denominator * lgk * li_n(z, n - k, prec)
            lgk *= lg
        return total.real if n % 2 else total.imag


def sv_polylog_hat(z, n: int, prec: int | None = None) -> mpc:
    """L_n for odd n, i L_n for even n."""
    v = sv_polylog(z, n, prec)
    return mpc(v) if n % 2 else mpc(0, v)


def bloch_wigner(z, prec: int | None = None) -> mpf:
    """D(z) = Im Li_2(z) + arg(1 - z) log|z|."""
    with _Prec(prec):
        z = _to_mpc(z)
        return li_n(z, 2, prec).imag + mpmath.arg(1 - z) * mpmath.log(abs(z))


# ------------------------------------------------------------ 1-forms
# A 1-form is evaluated on a tangent vector w at a point z of the plane;
# holomorphic functions are given by value and derivative callables.

class Holo:
    """A holomorphic (meromorphic) function with its derivative."""

    def __init__(self, f: Callable, df: Callable):
        self.f = f
        self.df = df

    @classmethod
    def identity(cls) -> "Holo":
        return cls(lambda z: z, lambda z: mpc(1))

    @classmethod
    def constant(cls, c) -> "Holo":
        return cls(lambda z: mpc(c), lambda z: mpc(0))

    @classmethod
    def polynomial(cls, coeffs) -> "Holo":
        cs = [mpc(c) for c in coeffs]

        def f(z):
            acc = mpc(0)
            for c in cs:
                acc = acc * z + c
            return acc

        def df(z):
            acc = mpc(0)
            deg = len(cs) - 1
            for i, c in enumerate(cs[:-1]):
                acc = acc * z + c * (deg - i)
            return acc

        return cls(f, df)

    def one_minus(self) -> "Holo":
        return Holo(lambda z: 1 - self.f(z), lambda z: -self.df(z))

    def dlog(self, z, w) -> mpc:
        """d log f evaluated on tangent w."""
        fz = self.f(z)
        if fz == 0:
            raise DegenerateInput("zero of the function at the evaluation point")
        return self.df(z) * w / fz

    def log_abs(self, z) -> mpf:
        fz = self.f(z)
        if fz == 0:
            raise DegenerateInput("zero of the function at the evaluation point")
        return mpmath.log(abs(fz))


class HoloN:
    """A holomorphic function of several complex variables with its gradient.

    Points and tangents are tuples of complex numbers of the same length.
    """

    def __init__(self, f: Callable, grad: Callable):
        self.f = f
        self.grad = grad

    def dlog(self, z, w) -> mpc:
        fz = self.f(z)
        if fz == 0:
            raise DegenerateInput("zero of the function at the evaluation point")
        return sum((g * wi for g, wi in zip(self.grad(z), w)), mpc(0)) / fz

    def log_abs(self, z) -> mpf:
        fz = self.f(z)
        if fz == 0:
            raise DegenerateInput("zero of the function at the evaluation point")
        return mpmath.log(abs(fz))


def _holo(h):
    if isinstance(h, (Holo, HoloN)):
        return h
    if isinstance(h, (int, float, complex, mpf, mpc)):
        return Holo.constant(h)
    raise TypeError("expected a Holo function")


def dlog_abs(h: Holo, z, w) -> mpf:
    return _holo(h).dlog(z, w).real


def darg(h: Holo, z, w) -> mpf:
    return _holo(h).dlog(z, w).imag


def alpha_form(f, g, z, w, prec: int | None = None) -> mpf:
    """alpha(f, g) = log|f| d log|g| - log|g| d log|f| on the tangent w."""
    with _Prec(prec):
        f, g = _holo(f), _holo(g)
        z, w = _to_mpc(z), _to_mpc(w)
        return f.log_abs(z) * g.dlog(z, w).real - g.log_abs(z) * f.dlog(z, w).real


def _wedge2(a1, a2, b1, b2):
    """(a ^ b)(w1, w2) from values a(w1), a(w2), b(w1), b(w2)."""
    return a1 * b2 - a2 * b1


def r3_form(part: int, args, z, tangent, prec: int | None = None):
    """Components of the weight-3 regulator: 0-form, 1-form on a tangent, 2-form on a tangent pair.

    part 1: args = f;           value L_3(f(z))
    part 2: args = (f, g);      -L_2(f) d arg g + 1/3 log|g| alpha(1 - f, f)
    part 3: args = (f1, f2, f3); Alt of 1/2 log|f1| d arg f2 ^ d arg f3 - 1/6 log|f1| dlog|f2| ^ dlog|f3|
    """
    with _Prec(prec):
        multi = isinstance(args, (list, tuple)) and any(isinstance(a, HoloN) for a in args)
        if not multi:
            z = _to_mpc(z)
        if part == 1:
            f = _holo(args)
            return sv_polylog(f.f(z), 3, prec)
        if part == 2:
            f, g = map(_holo, args)
            w = _to_mpc(tangent)
            return -sv_polylog(f.f(z), 2, prec) * darg(g, z, w) + g.log_abs(z) * alpha_form(
                f.one_minus(), f, z, w, prec
            ) / 3
        if part == 3:
            fs = [_holo(a) for a in args]
            w1, w2 = tangent
            if not any(isinstance(f, HoloN) for f in fs):
                w1, w2 = _to_mpc(w1), _to_mpc(w2)
            total = mpf(0)
            import itertools

            for perm in itertools.permutations(range(3)):
                inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
                s = -1 if inv % 2 else 1
                a, b, c = (fs[i] for i in perm)
                la = a.log_abs(z)
                db1, db2 = b.dlog(z, w1), b.dlog(z, w2)
                dc1, dc2 = c.dlog(z, w1), c.dlog(z, w2)
                arg_part = _wedge2(db1.imag, db2.imag, dc1.imag, dc2.imag)
                abs_part = _wedge2(db1.real, db2.real, dc1.real, dc2.real)
                total += s * (la * arg_part / 2 - la * abs_part / 6)
            return total
        raise ValueError("part must be 1, 2 or 3")


def rn_form(n: int, f, g, z, w, prec: int | None = None) -> mpc:
    """r_{n+1}(n) on {f}_{n-1} (x) g evaluated on the tangent w.

    hat L_{n-1}(f) d(i arg g) - sum_{k=2}^{n-2} beta_k log^{k-2}|f| log|g| hat L_{n-k}(f) dlog|f|
    + beta_{n-1} log|g| log^{n-3}|f| alpha(1 - f, f)
    """
    if n < 3:
        raise ValueError("n >= 3")
    with _Prec(prec):
        f, g = _holo(f), _holo(g)
        z, w = _to_mpc(z), _to_mpc(w)
        fz = f.f(z)
        lf = f.log_abs(z)
        lg = g.log_abs(z)
        dlf = f.dlog(z, w).real
        out = sv_polylog_hat(fz, n - 1, prec) * mpc(0, darg(g, z, w))
        for k in range(2, n - 1):
            b = beta(k)
            if b:
                out -= _mp(b) * lf ** (k - 2) * lg * sv_polylog_hat(fz, n - k, prec) * dlf
        b = beta(n - 1)
        if b:
            out += _mp(b) * lg * lf ** (n - 3) * alpha_form(f.one_minus(), f, z, w, prec)
        return out


def _mp(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


# ------------------------------------------------ differential identities

def d_sv_rhs(z, n: int, w, prec: int | None = None) -> mpc:
    """Right side of the differential equation for hat L_n on the tangent w (n >= 3)."""
    with _Prec(prec):
        z, w = _to_mpc(z), _to_mpc(w)
        ident = Holo.identity()
        lz = mpmath.log(abs(z))
        dlz = (w / z).real
        out = sv_polylog_hat(z, n - 1, prec) * mpc(0, (w / z).imag)
        for k in range(2, n - 1):
            b = beta(k)
            if b:
                out -= _mp(b) * lz ** (k - 1) * sv_polylog_hat(z, n - k, prec) * dlz
        b = beta(n - 1)
        if b:
            out += _mp(b) * lz ** (n - 2) * alpha_form(ident.one_minus(), ident, z, w, prec)
        return out


def central_difference(F: Callable, z, w, h) -> mpc:
    return (F(z + h * w) - F(z - h * w)) / (2 * h)


def _shift(z, w, t):
    if isinstance(z, tuple):
        return tuple(a + t * b for a, b in zip(z, w))
    return z + t * w


def exterior_derivative_2form(form: Callable, z, tangents, h=mpf("1e-6")) -> mpf:
    """d(form) on three constant tangents by central differences.

    ``form(z, (w1, w2))`` evaluates a 2-form; d form(X, Y, Z) = X form(Y, Z) - Y form(X, Z) + Z form(X, Y).
    """
    X, Y, Zt = tangents
    h = mpf(h)

    def deriv(direction, pair):
        return (form(_shift(z, direction, h), pair) - form(_shift(z, direction, -h), pair)) / (2 * h)

    return deriv(X, (Y, Zt)) - deriv(Y, (X, Zt)) + deriv(Zt, (X, Y))


def re_dlog_wedge3(fs, z, tangents) -> mpf:
    """Re(d log f1 ^ d log f2 ^ d log f3) on three tangents."""
    m = mpmath.matrix(3, 3)
    for i, f in enumerate(fs):
        for j, t in enumerate(tangents):
            m[i, j] = _holo(f).dlog(z, t)
    return mpmath.det(m).real


def r3_property_a_residual(fs, z, tangents, h=mpf("1e-6"), prec: int | None = None) -> mpf:
    """|d r3(3)(f1 ^ f2 ^ f3) + Re(d log f1 ^ d log f2 ^ d log f3)| on three tangents."""
    with _Prec(prec):
        form = lambda p, pair: r3_form(3, fs, p, pair, prec)  # noqa: E731
        return abs(exterior_derivative_2form(form, z, tangents, h) + re_dlog_wedge3(fs, z, tangents))


def d_sv_identity_residual(z, n: int, direction, h=mpf("1e-5"), prec: int | None = None) -> mpf:
    """|central-difference derivative of hat L_n along ``direction`` minus the identity's right side|."""
    with _Prec(prec):
        z, w = _to_mpc(z), _to_mpc(direction)
        h = mpf(h)
        fd = central_difference(lambda p: sv_polylog_hat(p, n, prec), z, w, h)
        return abs(fd - d_sv_rhs(z, n, w, prec))


def dl2_rhs(f: Holo, z, w, prec: int | None = None) -> mpf:
    """-log|1 - f| d arg f + log|f| d arg(1 - f)."""
    with _Prec(prec):
        f = _holo(f)
        omf = f.one_minus()
        return -omf.log_abs(z) * darg(f, z, w) + f.log_abs(z) * darg(omf, z, w)


def dl2_residual(f: Holo, z, w, h=mpf("1e-5"), prec: int | None = None) -> mpf:
    """|d L_2(f) (finite difference) minus the closed form|."""
    with _Prec(prec):
        f = _holo(f)
        z, w = _to_mpc(z), _to_mpc(w)
        h = mpf(h)
        fd = (sv_polylog(f.f(z + h * w), 2, prec) - sv_polylog(f.f(z - h * w), 2, prec)) / (2 * h)
        return abs(fd - dl2_rhs(f, z, w, prec))


def step_halving_slope(residual: Callable[[mpf], mpf], h0=mpf("1e-2"), levels: int = 3) -> tuple[float, list]:
    """Log-log slope of residual(h) over successive halvings of h."""
    hs = [mpf(h0) / 2**k for k in range(levels)]
    rs = [residual(h) for h in hs]
    slopes = [float(mpmath.log(rs[i] / rs[i + 1]) / mpmath.log(2)) for i in range(levels - 1)]
    return sum(slopes) / len(slopes), [float(r) for r in rs]


# ---------------------------------------------------------- five-term

def cross_ratio_c(x1, x2, x3, x4) -> mpc:
    return ((x1 - x3) * (x2 - x4)) / ((x1 - x4) * (x2 - x3))


def five_term_numeric(points, prec: int | None = None) -> mpf:
    """|sum_{i=1..5} (-1)^i L_2(r(x_1, .., x_i omitted, .., x_5))| for five distinct complex points."""
    with _Prec(prec):
        pts = [_to_mpc(p) for p in points]
        if len(pts) != 5:
            raise ValueError("five points are needed")
        for i in range(5):
            for j in range(i + 1, 5):
                if pts[i] == pts[j]:
                    raise DegenerateInput("points must be pairwise distinct")
        total = mpf(0)
        for i in range(5):
            rest = pts[:i] + pts[i + 1:]
            r = cross_ratio_c(*rest)
            if r == 0 or r == 1:
                raise DegenerateInput("cross-ratio hits 0 or 1")
            s = -1 if i % 2 == 0 else 1
            total += s * sv_polylog(r, 2, prec)
        return abs(total)


# ------------------------------------------------ vectorized double precision

def bloch_wigner_array(z):
    """Bloch-Wigner D on a numpy array in double precision.

    Uses D(z) = -D(1/z) outside the unit disk; Li_2(z) = spence(1 - z) from scipy.
    """
    import numpy as np
    from scipy.special import spence

    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros(z.shape)
    inside = np.abs(z) <= 1
    w = np.where(inside, z, 1 / np.where(inside, 1, z))
    with np.errstate(divide="ignore", invalid="ignore"):
        d = spence(1 - w).imag + np.angle(1 - w) * np.log(np.abs(w))
    d = np.where(np.abs(w) == 0, 0.0, d)
    out = np.where(inside, d, -d)
    return out
