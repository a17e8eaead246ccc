"""Side conditions on families of functions."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..errors import DegenerateInput
from ..formal import FormalSum
from .fields import BACKENDS, FactoredElement
from .groups import symbol, wedge_many


def check_condition_weight3(pairs: Iterable[tuple[FactoredElement, FactoredElement]]) -> FormalSum:
    """sum (1 - f_i) ^ f_i ^ g_i in wedge^3; the condition holds iff this is zero."""
    return wedge_many(((f.one_minus(), f, g), 1) for f, g in pairs)


def check_divisor_b2_condition(
    data: Sequence[tuple[Callable, Callable]],
    x,
    backend: str = "Q",
    embeddings: Sequence[Callable] | None = None,
    dps: int = 40,
) -> tuple[FormalSum, list[float]]:
    """Formal sum sum_i v_x(g_i) {f_i(x)}_2 and its single-valued dilogarithm proxies.

    ``data`` holds pairs (f, v_g): ``f(x)`` returns an exact field value and
    ``v_g(x)`` the integer order of g_i at x.  Each embedding maps an exact
    value to a complex number; the proxy is sum_i v_x(g_i) L_2(sigma(f_i(x))),
    which vanishes whenever the formal sum is zero in the Bloch group.  It is
    a necessary condition only.
    """
    from ..polylog import sv_polylog

    be = BACKENDS[backend]
    if embeddings is None:
        embeddings = [_default_embedding(backend)]
    out = FormalSum()
    numeric_terms = []
    for f, v_g in data:
        order = int(v_g(x))
        if order == 0:
            continue
        val = f(x)
        fe = be.factor(val)
        if _is_one(backend, val):
            raise DegenerateInput("f_i(x) = 1 where g_i has a zero or pole")
        out = out + symbol(fe, order)
        numeric_terms.append((order, val))
    proxies = []
    for sigma in embeddings:
        total = 0.0
        for order, val in numeric_terms:
            total += order * float(sv_polylog(sigma(val), 2, dps=dps))
        proxies.append(total)
    return out, proxies


def _is_one(backend: str, val) -> bool:
    if backend == "Qi":
        return tuple(map(Fraction, val)) == (1, 0)
    return Fraction(val) == 1 if not isinstance(val, tuple) else False


def _default_embedding(backend: str) -> Callable:
    if backend == "Q":
        return lambda v: complex(Fraction(v))
    if backend == "Qi":
        return lambda v: complex(float(v[0]), float(v[1]))
    raise ValueError("supply embeddings for this backend")


def tensor_coefficients(e: FormalSum) -> dict[tuple, Fraction]:
    """Coefficient tensor over atoms of sum c * (tag (x) leg_1 (x) ... (x) leg_m), tags summed out."""
    acc: dict = {}
    for key, c in e.items():
        legs = key[1:]
        for choice in itertools.product(*[leg.exps for leg in legs]):
            idx = tuple(a for a, _ in choice)
            coeff = Fraction(c)
            for _, k in choice:
                coeff *= k
            acc[idx] = acc.get(idx, 0) + coeff
    return {k: v for k, v in acc.items() if v}


def _symmetrize(t: dict, positions: Sequence[int]) -> dict:
    """Average of t over permutations of the listed leg positions."""
    perms = list(itertools.permutations(positions))
    out: dict = {}
    w = Fraction(1, len(perms))
    for idx, c in t.items():
        for p in perms:
            new = list(idx)
            for src, dst in zip(positions, p):
                new[dst] = idx[src]
            key = tuple(new)
            out[key] = out.get(key, 0) + w * c
    return {k: v for k, v in out.items() if v}


def is_symmetric_in(t: dict, positions: Sequence[int]) -> bool:
    return _symmetrize(t, positions) == t


def sym_power_membership(e: FormalSum, k: int) -> bool:
    """Whether the tensor legs of ``e`` form an element of S^{k+1} V.

    Generators are tuples (tag, f, ..., f, g) with k + 1 FactoredElement legs
    after the tag; V is the Q-span of the atoms.  Membership means the
    coefficient tensor equals its full symmetrization, decided exactly.
    """
    t = tensor_coefficients(e)
    if not t:
        return True
    degree = {len(idx) for idx in t}
    if degree != {k + 1}:
        raise ValueError(f"expected {k + 1} tensor legs, found {sorted(degree)}")
    return is_symmetric_in(t, range(k + 1))


def intersection_hypothesis(e: FormalSum, k: int) -> bool:
    """Whether the tensor lies in S^k V (x) V and in S^{k-1} V (x) S^2 V."""
    t = tensor_coefficients(e)
    if not t:
        return True
    return is_symmetric_in(t, range(k)) and is_symmetric_in(t, (k - 1, k))
