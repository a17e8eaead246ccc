"""Regulator integrals on C / Gamma and their lattice-sum counterparts.

Forms are evaluated as coefficients of dx ^ dy.  For a real 1-form
Re(eta dz) and omega = c dz (c = 1 / sqrt(2 covol), so that
i * int omega ^ conj(omega) = 1):

    Re(eta dz) ^ omega       = i c conj(eta) dx ^ dy
    Re(eta dz) ^ conj(omega) = -i conj(c) eta dx ^ dy

alpha(1 - f, f) = Re(eta_a dz) with eta_a = log|1 - f| f'/f - log|f| (1 - f)'/(1 - f),
and d L_2(f) = Re(i eta_a dz).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DegenerateInput
from ..polylog import bloch_wigner_array
from .lattice import Divisor, Lattice, TruncationPlan
from .quadrature import QuadResult, Singularity, midpoint_average, torus_quadrature
from .sigma import SigmaQuotient, UnitPair
from .sums import SumResult, ek_sum, green_normalization


def omega_scale(L: Lattice) -> float:
    """c with omega = c dz and i * int omega ^ conj(omega) = 2 c^2 covol = 1."""
    return 1.0 / math.sqrt(2.0 * L.covolume)


@dataclass
class RegulatorTerm:
    """One summand {f} (x) g with f, 1 - f, g carrying their divisors."""

    pair: UnitPair
    g: object  # SigmaQuotient or ConstantFunction

    @property
    def f(self) -> SigmaQuotient:
        return self.pair.f

    @property
    def one_minus_f(self) -> SigmaQuotient:
        return self.pair.one_minus_f

    def singular_points(self) -> list[Singularity]:
        pts = [Singularity(z, 1.0) for z in self.f.singular_points()]
        pts += [Singularity(z, 1.0) for z in self.one_minus_f.singular_points()]
        pts += [Singularity(z, 1.0) for z in self.g.singular_points()]
        return pts

    def divisors(self) -> tuple[Divisor, Divisor, Divisor]:
        """(div g, div f, div(1 - f)) in the order of the lattice sum."""
        return self.g.divisor, self.f.divisor, self.one_minus_f.divisor


def _eta_alpha(term: RegulatorTerm, z):
    lf, dlf = term.f.evaluate(z)
    l1, dl1 = term.one_minus_f.evaluate(z)
    return l1 * dlf - lf * dl1, lf


def _pair_form(eta, c, pairing: str):
    if pairing == "bar":
        return -1j * np.conj(c) * eta
    if pairing == "holo":
        return 1j * c * np.conj(eta)
    raise ValueError("pairing must be 'bar' or 'holo'")


def regulator_integrand(term: RegulatorTerm, L: Lattice, n: int = 3, pairing: str = "bar"):
    """log|g| log^{n-3}|f| alpha(1 - f, f) ^ omega (or ^ conj(omega)) as a dx ^ dy density."""
    c = omega_scale(L)

    def F(z):
        eta, lf = _eta_alpha(term, z)
        lg = term.g.log_abs(z)
        return lg * lf ** (n - 3) * _pair_form(eta, c, pairing)

    return F


def parts_integrand(term: RegulatorTerm, L: Lattice, pairing: str = "bar"):
    """Integration-by-parts density for n = 3.

    alpha ^ omega = i dL_2 ^ omega and alpha ^ conj(omega) = -i dL_2 ^ conj(omega)
    (d arg g ^ omega = i dlog|g| ^ omega for holomorphic omega and its conjugate
    for conj(omega)); Stokes moves d onto log|g|:
    int log|g| alpha ^ conj(omega) = i int L_2(f) dlog|g| ^ conj(omega), and
    int log|g| alpha ^ omega = -i int L_2(f) dlog|g| ^ omega.
    """
    c = omega_scale(L)
    sign = 1j if pairing == "bar" else -1j

    def F(z):
        d = bloch_wigner_array(term.f.value(z))
        return sign * d * _pair_form(term.g.dlog(z), c, pairing)

    return F


def regulator_integral(
    terms: Sequence[RegulatorTerm],
    L: Lattice,
    n: int = 3,
    mesh: int = 128,
    eps: float | None = None,
    pairing: str = "bar",
    route: str = "direct",
) -> QuadResult:
    """sum_i int log|g_i| log^{n-3}|f_i| alpha(1 - f_i, f_i) ^ omega-bar (default) or ^ omega."""
    if n < 3:
        raise ValueError("n >= 3")
    if route == "parts" and n != 3:
        raise ValueError("the integration-by-parts route is implemented for n = 3")
    total = 0j
    err = 0.0
    levels = []
    for t in terms:
        F = regulator_integrand(t, L, n, pairing) if route == "direct" else parts_integrand(t, L, pairing)
        q = torus_quadrature(F, L, mesh, eps, t.singular_points())
        total += q.value
        err += q.error
        levels.append(q.value)
    return QuadResult(total, err, levels)


# ----------------------------------------------------------- constants C_f

def cf_constant(fn, L: Lattice, size: int = 256, method: str = "grid", mesh: int = 128) -> float:
    """C_f = mean of log|f| over the torus (the Fourier part has zero mean).

    ``method="grid"`` averages over a midpoint grid, skipping grid points on
    the divisor support; ``method="quadrature"`` uses ``torus_quadrature``.
    """
    pts = list(fn.singular_points())
    if method == "grid":
        return midpoint_average(fn.log_abs, L, size, pts)
    if method == "quadrature":
        q = torus_quadrature(fn.log_abs, L, mesh, None, [Singularity(p, 0.0) for p in pts])
        return q.value.real / L.covolume
    raise ValueError("method must be 'grid' or 'quadrature'")


def fourier_residual_grid(fn: SigmaQuotient, plan: TruncationPlan, size: int = 64) -> np.ndarray:
    """log|f| - kappa sum_i a_i G(z - x_i) on the midpoint grid; constant (= C_f) as R grows."""
    from .sums import green_grid, grid_points

    L = fn.lattice
    s, r = grid_points(L, size)
    z = s * L.v + r * L.u
    G = sum(k * green_grid(L, plan, size, shift=p) for p, k in fn.divisor.terms)
    return fn.log_abs(z) - green_normalization(L) * G


# ------------------------------------------------------ lattice-sum side

def lattice_constant(L: Lattice, pairing: str = "bar") -> complex:
    """lambda with (C-free part of) int log|g| alpha(1 - f, f) ^ omega-bar = lambda K_3(div g, div f, div(1 - f)).

    Writing log|h| = kappa sum' D_h(gamma) (z, gamma)^{-1} / |gamma|^2 + C_h,
    differentiating the characters, and using orthogonality
    int (z, g1 + g2 + g3)^{-1} dx dy = covol * [g1 + g2 + g3 = 0]:
    lambda = -2 i conj(c) covol kappa^3 / A.  For omega the integral is the
    complex conjugate, so it pairs with conj(K_3) with constant conj(lambda).
    """
    c = omega_scale(L)
    lam = -2j * c * L.covolume * green_normalization(L) ** 3 / L.area
    return lam if pairing == "bar" else complex(lam).conjugate()


@dataclass
class CorrectedRegulator:
    raw: QuadResult
    corrected: complex
    error: float
    constants: dict
    side_integrals: dict

    def to_json(self) -> dict:
        return {
            "raw": self.raw.to_json(),
            "corrected": [self.corrected.real, self.corrected.imag],
            "error_estimate": self.error,
            "constants": self.constants,
            "side_integrals": {k: [v.real, v.imag] for k, v in self.side_integrals.items()},
        }


def corrected_regulator(
    term: RegulatorTerm, L: Lattice, mesh: int = 128, cf_method: str = "quadrature", pairing: str = "bar"
) -> CorrectedRegulator:
    """int log|g| alpha(1 - f, f) ^ omega-bar with the constant terms removed.

    With log|h| = L_h + C_h, the C_g term integrates an exact form and drops;
    what remains is
    I - C_{1-f} int log|g| dlog|f| ^ omega-bar + C_f int log|g| dlog|1-f| ^ omega-bar.
    """
    c = omega_scale(L)
    raw = regulator_integral([term], L, 3, mesh, pairing=pairing)
    Cf = cf_constant(term.f, L, method=cf_method, mesh=mesh)
    C1 = cf_constant(term.one_minus_f, L, method=cf_method, mesh=mesh)
    Cg = cf_constant(term.g, L, method=cf_method, mesh=mesh)
    sings = term.singular_points()

    def side(h):
        def F(z):
            return term.g.log_abs(z) * _pair_form(h.dlog(z), c, pairing)

        return torus_quadrature(F, L, mesh, None, sings)

    Jf = side(term.f)
    J1 = side(term.one_minus_f)
    corrected = raw.value - C1 * Jf.value + Cf * J1.value
    err = raw.error + abs(C1) * Jf.error + abs(Cf) * J1.error
    return CorrectedRegulator(
        raw,
        complex(corrected),
        float(err),
        {"C_f": Cf, "C_1mf": C1, "C_g": Cg},
        {"J_f": Jf.value, "J_1mf": J1.value},
    )


def lattice_prediction(term: RegulatorTerm, plan: TruncationPlan, pairing: str = "bar", route: str = "auto") -> tuple[complex, SumResult]:
    x, y, z = term.divisors()
    res = ek_sum(3, x, y, z, plan, route=route)
    k = res.value if pairing == "bar" else res.value.conjugate()
    return lattice_constant(term.f.lattice, pairing) * k, res


# ------------------------------------------------------------ Stokes checks

def stokes_dl2(term: RegulatorTerm, L: Lattice, mesh: int = 128) -> QuadResult:
    """int d L_2(f) ^ omega; zero by Stokes."""
    c = omega_scale(L)

    def F(z):
        eta, _ = _eta_alpha(term, z)
        return _pair_form(1j * eta, c, "holo")

    return torus_quadrature(F, L, mesh, None, term.singular_points())


def stokes_alpha_logf(term: RegulatorTerm, L: Lattice, mesh: int = 128) -> QuadResult:
    """int alpha(1 - f, f) log|f| ^ omega; a multiple of int d L_3(f) ^ omega, hence zero."""
    c = omega_scale(L)

    def F(z):
        eta, lf = _eta_alpha(term, z)
        return lf * _pair_form(eta, c, "holo")

    return torus_quadrature(F, L, mesh, None, term.singular_points())


# --------------------------------------------------------------- RHS

def deninger_rhs(
    data: Sequence[tuple[Divisor, Divisor, Divisor]],
    L: Lattice,
    conductor: int,
    period: float,
    n: int,
    plan: TruncationPlan,
) -> complex:
    """(2 pi A / f_E)^{n-1} * Omega * sum_i K_n(x_i, y_i, z_i), the q = 1 value.

    Returned as a complex number; for data coming from a rational element the
    imaginary part is expected to vanish and is left visible for inspection.
    """
    if conductor <= 0:
        raise DegenerateInput("conductor must be a positive integer")
    total = 0j
    for x, y, z in data:
        total += ek_sum(n, x, y, z, plan).value
    return complex((2 * math.pi * L.area / conductor) ** (n - 1) * period * total)
