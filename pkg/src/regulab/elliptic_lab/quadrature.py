"""Integration over C / Gamma of integrands with isolated integrable singularities.

The integrand is split with a smooth partition of unity.  Near each
declared singular point p a C-infinity bump chi_p (1 on |z - p| <= eps/2,
0 beyond eps) carries the singular part, integrated in polar coordinates
p + rho e^{i theta} with rho = eps t^2 and Gauss-Legendre nodes in t; the
remainder F (1 - sum chi_p) is smooth and periodic and goes to the
tensor-product midpoint rule on the fundamental parallelogram.  The
excluded disks are therefore not dropped but integrated on their own
annular grid.  The error estimate compares two resolutions and two
exclusion radii.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DegenerateInput
from .lattice import Lattice

log = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Singularity:
    """A declared singular point with growth |F| ~ rho^{-power} (power 0 means logarithmic)."""

    z: complex
    power: float = 0.0

    def __post_init__(self):
        if self.power >= 2:
            raise DegenerateInput("singularity rho^-%g is not integrable in two dimensions" % self.power)


@dataclass
class QuadResult:
    value: complex
    error: float
    levels: list = field(default_factory=list)

    def to_json(self) -> dict:
        v = complex(self.value)
        return {"value": [v.real, v.imag], "error_estimate": self.error, "levels": [[c.real, c.imag] for c in map(complex, self.levels)]}


def _smoothstep(x: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return a / (a + b)


def bump(rho: np.ndarray, eps: float) -> np.ndarray:
    """1 on rho <= eps/2, 0 on rho >= eps."""
    return _smoothstep(2.0 * (1.0 - rho / eps))


def torus_nearest(L: Lattice, z: np.ndarray, p: complex) -> np.ndarray:
    """z - p - gamma for the lattice vector gamma nearest to z - p."""
    d = np.asarray(z, dtype=np.complex128) - p
    det = (np.conj(L.v) * L.u).imag
    s = (np.conj(d) * L.u).imag / det
    r = (np.conj(L.v) * d).imag / det
    best = None
    best_abs = None
    s0, r0 = np.round(s), np.round(r)
    for ds in (-1, 0, 1):
        for dr in (-1, 0, 1):
            cand = d - (s0 + ds) * L.v - (r0 + dr) * L.u
            a = np.abs(cand)
            if best is None:
                best, best_abs = cand, a
            else:
                better = a < best_abs
                best = np.where(better, cand, best)
                best_abs = np.where(better, a, best_abs)
    return best


def injectivity_radius(L: Lattice) -> float:
    """Half the length of the shortest nonzero lattice vector."""
    best = math.inf
    for m in range(-3, 4):
        for n in range(-3, 4):
            if m or n:
                best = min(best, abs(m * L.v + n * L.u))
    return best / 2


def default_radius(L: Lattice, points: Sequence[complex]) -> float:
    """Exclusion radius: 0.4 times the minimal torus distance between declared points."""
    rad = injectivity_radius(L)
    pts = list(points)
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            d = float(np.abs(torus_nearest(L, np.array([q]), p))[0])
            if d < 1e-12:
                raise DegenerateInput("declared singular points coincide")
            rad = min(rad, d / 2)
    return 0.8 * rad


def _dedupe(L: Lattice, sings: Sequence[Singularity]) -> list[Singularity]:
    out: list[Singularity] = []
    for s in sings:
        hit = None
        for i, t in enumerate(out):
            if float(np.abs(torus_nearest(L, np.array([s.z]), t.z))[0]) < 1e-12:
                hit = i
                break
        if hit is None:
            out.append(s)
        else:
            out[hit] = Singularity(out[hit].z, max(out[hit].power, s.power))
    return out


def _single_level(F: Integrand, L: Lattice, mesh: int, eps: float, sings: list[Singularity], nr: int, nt: int) -> complex:
    t = (np.arange(mesh) + 0.5) / mesh
    s, r = np.meshgrid(t, t, indexing="ij")
    z = s * L.v + r * L.u
    chi = np.zeros(z.shape)
    for sg in sings:
        rho = np.abs(torus_nearest(L, z, sg.z))
        chi += bump(rho, eps)
    keep = chi < 1.0
    vals = np.zeros(z.shape, dtype=np.complex128)
    if np.any(keep):
        vals[keep] = np.asarray(F(z[keep]), dtype=np.complex128) * (1.0 - chi[keep])
    smooth = vals.sum() * L.covolume / mesh**2
    # polar grids around each point
    tn, tw = np.polynomial.legendre.leggauss(nr)
    tn = 0.5 * (tn + 1.0)
    tw = 0.5 * tw
    rho = eps * tn**2
    jac = 2.0 * eps * tn * rho * tw  # d rho = 2 eps t dt, area element rho d rho d theta
    th = 2.0 * np.pi * (np.arange(nt) + 0.5) / nt
    local = 0j
    for sg in sings:
        pts = sg.z + rho[:, None] * np.exp(1j * th)[None, :]
        fv = np.asarray(F(pts.ravel()), dtype=np.complex128).reshape(pts.shape)
        local += np.sum(fv * bump(rho, eps)[:, None] * jac[:, None]) * (2.0 * np.pi / nt)
    return complex(smooth + local)


def torus_quadrature(
    integrand: Integrand,
    L: Lattice,
    mesh: int = 128,
    eps: float | None = None,
    singular: Sequence[Singularity | complex] = (),
    radial_nodes: int = 32,
    angular_nodes: int = 64,
) -> QuadResult:
    """Integral of integrand(z) dx dy over the fundamental parallelogram.

    Three evaluations: (mesh, eps), (2 mesh, eps) with doubled polar grids,
    and (2 mesh, 0.7 eps).  The reported value is the fine one; the error
    estimate is the larger of the two differences.
    """
    sings = _dedupe(L, [s if isinstance(s, Singularity) else Singularity(complex(s)) for s in singular])
    if eps is None:
        eps = default_radius(L, [s.z for s in sings]) if sings else 0.0
    elif sings and eps > default_radius(L, [s.z for s in sings]) / 0.8:
        raise DegenerateInput("exclusion disks overlap")
    q1 = _single_level(integrand, L, mesh, eps, sings, radial_nodes, angular_nodes)
    q2 = _single_level(integrand, L, 2 * mesh, eps, sings, 2 * radial_nodes, 2 * angular_nodes)
    if sings:
        q3 = _single_level(integrand, L, 2 * mesh, 0.7 * eps, sings, 2 * radial_nodes, 2 * angular_nodes)
    else:
        q3 = q2
    err = max(abs(q2 - q1), abs(q2 - q3))
    # floor: rounding of the accumulated sum
    err = max(err, 64 * np.finfo(float).eps * max(abs(q2), 1.0))
    return QuadResult(q2, float(err), [q1, q2, q3])


def midpoint_average(values: Callable[[np.ndarray], np.ndarray], L: Lattice, size: int, avoid: Sequence[complex] = ()) -> float:
    """Plain grid average over the (size x size) midpoint grid; points within 1e-12 of ``avoid`` are skipped."""
    t = (np.arange(size) + 0.5) / size
    s, r = np.meshgrid(t, t, indexing="ij")
    z = (s * L.v + r * L.u).ravel()
    mask = np.ones(z.shape, dtype=bool)
    for p in avoid:
        close = np.abs(torus_nearest(L, z, p)) < 1e-12
        if np.any(close):
            log.info("skipping %d grid points on the divisor support", int(close.sum()))
        mask &= ~close
    return float(np.mean(np.asarray(values(z[mask])).real))
