"""Green's function and generalized Eisenstein-Kronecker sums under a truncation plan."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from ..errors import DegenerateInput
from . import kernels
from .lattice import (
    Divisor,
    Lattice,
    TorusPoint,
    TruncationPlan,
    common_denominator,
    divisor_character,
    integer_phases,
)

EPS = np.finfo(float).eps


def green_normalization(L: Lattice) -> float:
    """kappa with log|f| = kappa * sum_i a_i G(z - x_i) + C_f for div f = sum_i a_i (x_i).

    From Delta (z, gamma) = -(4 |gamma|^2 / A^2) (z, gamma), the character
    completeness relation and Delta log|z| = 2 pi delta_0: kappa = -|A| / 2.
    """
    return -abs(L.area) / 2


def _sym_coords(p: TorusPoint) -> tuple[float, float]:
    # odd reduction to [-1/2, 1/2] so that G(-z) and G(z) use negated phases
    s, r = float(p.s), float(p.r)
    return s - round(s), r - round(r)


def green(z: TorusPoint, plan: TruncationPlan) -> float:
    """G(z) = sum' (z, gamma) / |gamma|^2 over the plan (real part; see ``green_complex``)."""
    return green_complex(z, plan).real


def green_complex(z: TorusPoint, plan: TruncationPlan) -> complex:
    if z.is_zero():
        raise DegenerateInput("G has a logarithmic singularity on the lattice")
    return complex(green_at(z.lattice, [z], plan)[0])


def green_at(L: Lattice, points, plan: TruncationPlan) -> np.ndarray:
    """Complex partial sums at many torus points (compiled kernel when available)."""
    m, n = plan.index_arrays(L)
    g = m * L.v + n * L.u
    w = 1.0 / (g.real**2 + g.imag**2)
    coords = np.array([_sym_coords(p) for p in points], dtype=np.float64).reshape(-1, 2)
    return kernels.character_sum(
        np.ascontiguousarray(coords[:, 0]), np.ascontiguousarray(coords[:, 1]), m, n, w
    )


def green_grid(L: Lattice, plan: TruncationPlan, size: int, shift: TorusPoint | None = None) -> np.ndarray:
    """G(z - shift) at the cell midpoints s = (j + 1/2)/size, r = (k + 1/2)/size via one 2D FFT.

    Entry [j, k] equals the plan sum at that point up to rounding; the weights
    are folded modulo ``size`` so no truncation beyond the plan occurs.
    """
    m, n = plan.index_arrays(L)
    g = m * L.v + n * L.u
    w = 1.0 / (g.real**2 + g.imag**2)
    if shift is not None:
        w = w * np.exp(-2j * np.pi * (float(shift.s) * n - float(shift.r) * m))
    # phase (s n - r m) with s = (j + 1/2)/N, r = (k + 1/2)/N
    half = np.exp(1j * np.pi * (n - m) / size)
    arr = np.zeros((size, size), dtype=np.complex128)
    np.add.at(arr, (n % size, (-m) % size), w * half)
    return sfft.ifft2(arr).real * size * size


def grid_points(L: Lattice, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Midpoint lattice coordinates (s, r) matching ``green_grid`` entries."""
    t = (np.arange(size) + 0.5) / size
    s, r = np.meshgrid(t, t, indexing="ij")
    return s, r


# -------------------------------------------------------- K_n lattice sums

@dataclass(frozen=True)
class SumResult:
    value: complex
    error: float
    route: str
    terms: int

    def to_json(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "error_estimate": self.error,
            "route": self.route,
            "terms": self.terms,
        }


def _plan_tables(L: Lattice, plan: TruncationPlan):
    m, n = plan.index_arrays(L)
    g = m * L.v + n * L.u
    norm2 = g.real**2 + g.imag**2
    mo, no = int(np.max(np.abs(m))), int(np.max(np.abs(n)))
    lookup = -np.ones((2 * mo + 1, 2 * no + 1), dtype=np.int64)
    lookup[m + mo, n + no] = np.arange(m.size)
    return m, n, norm2, np.conj(g), lookup, mo, no


def ek3_direct(x: Divisor, y: Divisor, z: Divisor, plan: TruncationPlan) -> SumResult:
    """K_3 by the O(R^4) constrained pair loop.

    For rational supports every term's phase is an exact integer modulo the
    common denominator, so shifting all three divisors by one torus point
    leaves each term, and hence the sum, bit-identical.
    """
    L = x.lattice
    m, n, norm2, gbar, lookup, mo, no = _plan_tables(L, plan)
    den = common_denominator([x, y, z])
    if not (x.terms and y.terms and z.terms):
        return SumResult(0j, 0.0, "direct", 0)
    if den is not None and den < 2**20:
        def phases(d):
            S, R, K = integer_phases(d, den)
            ph = (np.outer(S, n) - np.outer(R, m)) % den
            return np.ascontiguousarray(ph, dtype=np.int64), np.ascontiguousarray(K, dtype=np.int64)

        phx, kx = phases(x)
        phy, ky = phases(y)
        phz, kz = phases(z)
        # k / den is correctly rounded, so equal rationals give equal table entries for any den
        table = np.exp(2j * np.pi * (np.arange(den) / den))
        val = kernels.k3_direct_exact(m, n, norm2, gbar, lookup, mo, no, phx, kx, phy, ky, phz, kz, den, table)
        mass = float(np.sum(np.abs(kx))) * float(np.sum(np.abs(ky))) * float(np.sum(np.abs(kz)))
    else:
        dx, dy, dz = (np.ascontiguousarray(divisor_character(d, m, n)) for d in (x, y, z))
        val = kernels.k3_direct_float(m, n, norm2, gbar, lookup, mo, no, dx, dy, dz)
        mass = float(np.max(np.abs(dx)) * np.max(np.abs(dy)) * np.max(np.abs(dz)))
    # rounding bound: one ulp per accumulated term, scaled by the weight mass
    wsum = float(np.sum(1 / norm2))
    gmax = float(np.sqrt(np.max(norm2)))
    err = 4 * EPS * m.size * mass * wsum**2 * 2 * gmax / float(np.min(norm2))
    return SumResult(complex(val), err, "direct", int(m.size) ** 2)


def _fft_size(k: int) -> int:
    return sfft.next_fast_len(k)


def _embed(m, n, vals, shape) -> np.ndarray:
    arr = np.zeros(shape, dtype=np.complex128)
    np.add.at(arr, (m % shape[0], n % shape[1]), vals)
    return arr


def _signed_index(size: int) -> np.ndarray:
    k = np.arange(size)
    return np.where(k <= size // 2, k, k - size)


def ek_sum_fft(n_weight: int, x: Divisor, y: Divisor, z: Divisor, plan: TruncationPlan) -> SumResult:
    """K_n via Fourier series on the torus.

    Each factor is a trigonometric polynomial in the characters; products are
    formed on a grid fine enough that the midpoint rule integrates them
    exactly, so the truncation is identical to the direct sum's (every
    |gamma_i| <= R individually).
    """
    if n_weight < 3:
        raise ValueError("weight n >= 3")
    L = x.lattice
    if not (x.terms and y.terms and z.terms):
        return SumResult(0j, 0.0, "fft", 0)
    m, nn = plan.index_arrays(L)
    g = m * L.v + nn * L.u
    norm2 = g.real**2 + g.imag**2
    W = 1.0 / norm2
    Wg = np.conj(g) / norm2
    mo, no = int(np.max(np.abs(m))), int(np.max(np.abs(nn)))
    # no wrap-around: the middle sum spans 2(n-2) R, the full constraint n R
    span = max(n_weight, 2 * (n_weight - 2))
    shape = (_fft_size(span * mo + 1), _fft_size(span * no + 1))

    def ft(vals):
        return sfft.fft2(_embed(m, nn, vals, shape))

    a = divisor_character(x, m, nn) * W
    c = divisor_character(z, m, nn) * W
    cg = divisor_character(z, m, nn) * Wg
    # middle factor: H = W^{*(n-2)}, H' = W^{*(n-3)} * Wg, then multiplied by D_y at the sum
    fw = ft(W)
    fH = np.ones(shape, dtype=np.complex128)
    for _ in range(n_weight - 3):
        fH = fH * fw
    fHp = fH * ft(Wg)
    fH = fH * fw
    H = sfft.ifft2(fH)
    Hp = sfft.ifft2(fHp)
    sm, sn = np.meshgrid(_signed_index(shape[0]), _signed_index(shape[1]), indexing="ij")
    dy = divisor_character(y, sm, sn)
    Y = dy * H
    Yp = dy * Hp
    # sum over gamma1 + S + gamma_n = 0 of a(gamma1) [Y(S) cg(gamma_n) - Y'(S) c(gamma_n)]
    fa = ft(a)
    t1 = sfft.fft2(Y) * fa * ft(cg)
    t2 = sfft.fft2(Yp) * fa * ft(c)
    # the zero-frequency coefficient of the product is the constrained sum
    total = (t1 - t2).sum() / (shape[0] * shape[1])
    mass = float(np.sum(np.abs(a))) * float(np.sum(np.abs(c))) * float(np.sum(np.abs(Y)) + np.sum(np.abs(Yp)))
    mass *= float(np.sqrt(np.max(norm2)))
    err = 8 * EPS * math.log2(shape[0] * shape[1]) * mass
    return SumResult(complex(total), err, "fft", int(m.size) ** (n_weight - 1))


def ek_sum(n_weight: int, x: Divisor, y: Divisor, z: Divisor, plan: TruncationPlan, route: str = "auto") -> SumResult:
    """Truncated K_n(x, y, z) = sum (x, g1)(y, g2 + .. + g_{n-1})(z, g_n)(conj g_n - conj g_{n-1}) / prod |g_i|^2.

    ``route`` is "direct" (n = 3 only), "fft" or "auto" (direct for n = 3 and
    small plans, fft otherwise).
    """
    if route == "direct" or (route == "auto" and n_weight == 3 and plan.radius <= 24):
        if n_weight != 3:
            raise ValueError("the direct route is implemented for n = 3")
        return ek3_direct(x, y, z, plan)
    return ek_sum_fft(n_weight, x, y, z, plan)


def ek_convergence(n_weight: int, x: Divisor, y: Divisor, z: Divisor, radii) -> list[tuple[float, complex]]:
    """(R, K_n(R)) along a sequence of radii, for empirical convergence logging."""
    return [(float(R), ek_sum_fft(n_weight, x, y, z, TruncationPlan(R)).value) for R in radii]
