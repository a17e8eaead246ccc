"""Exterior powers and tensor products of multiplicative groups, modulo torsion.

Everything is a :class:`FormalSum` whose generators are built from atoms
(basis irreducibles):

* wedge of rank n: strictly sorted n-tuples of atoms;
* wedge^2 (x) F*: pairs ``(sorted 2-tuple, atom)``;
* B_2 (x) F*: pairs ``(FactoredElement x, atom)`` standing for {x}_2 (x) atom;
* B_n symbols: ``FactoredElement`` keys, with {1} never stored.
"""
from __future__ import annotations

import itertools
from typing import Iterable

from ..formal import FormalSum, accumulate
from .fields import FactoredElement, atom_str


def sort_wedge(atoms: tuple) -> tuple[int, tuple] | None:
    """Sign and sorted tuple for a wedge of atoms; None when an atom repeats."""
    if len(set(atoms)) < len(atoms):
        return None
    order = sorted(range(len(atoms)), key=lambda i: atoms[i])
    sign = 1
    perm = list(order)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign, tuple(atoms[i] for i in order)


def _wedge_terms(elements: Iterable[FactoredElement], coeff: int = 1):
    factors = [fe.exps for fe in elements]
    for choice in itertools.product(*factors):
        atoms = tuple(a for a, _ in choice)
        s = sort_wedge(atoms)
        if s is None:
            continue
        c = coeff * s[0]
        for _, e in choice:
            c *= e
        yield s[1], c


def wedge(*elements: FactoredElement) -> FormalSum:
    """Multilinear expansion of e_1 ^ ... ^ e_n over the atoms."""
    return accumulate(_wedge_terms(elements))


def wedge_many(terms: Iterable[tuple[tuple, int]]) -> FormalSum:
    """Sum of coeff * wedge(*elements) over (elements, coeff) pairs."""

    def stream():
        for elements, coeff in terms:
            if coeff:
                yield from _wedge_terms(elements, coeff)

    return accumulate(stream())


def atom_wedge(atoms: tuple, coeff: int = 1) -> FormalSum:
    s = sort_wedge(atoms)
    if s is None:
        return FormalSum()
    return FormalSum({s[1]: coeff * s[0]})


def tensor_wedge(w: FormalSum, y: FactoredElement) -> FormalSum:
    """w (x) y for a wedge w, expanded over the atoms of y."""
    return accumulate((( key, a), c * e) for key, c in w.items() for a, e in y.exps)


def b2_tensor(x: FactoredElement, y: FactoredElement, coeff: int = 1) -> FormalSum:
    """{x}_2 (x) y with y expanded over atoms; {1} is dropped."""
    if x.is_one():
        return FormalSum()
    return accumulate(((x, a), coeff * e) for a, e in y.exps)


def symbol(x: FactoredElement, coeff: int = 1) -> FormalSum:
    """The generator {x}; {1} maps to zero."""
    if x.is_one():
        return FormalSum()
    return FormalSum({x: coeff})


def to_json(e: FormalSum) -> dict[str, int]:
    """Canonical string form: sorted keys mapping to integer coefficients."""
    out = {}
    for key, c in e.items():
        out[key_str(key)] = c
    return dict(sorted(out.items()))


def key_str(key) -> str:
    if isinstance(key, FactoredElement):
        return "{" + str(key) + "}"
    if isinstance(key, tuple) and key and isinstance(key[0], str):
        return atom_str(key)
    if isinstance(key, tuple) and key and isinstance(key[0], FactoredElement):
        return "{" + str(key[0]) + "}_2 (x) " + key_str(key[1])
    if isinstance(key, tuple) and all(isinstance(a, tuple) and a and isinstance(a[0], str) for a in key):
        return " ^ ".join(atom_str(a) for a in key)
    if isinstance(key, tuple) and len(key) == 2:
        return key_str(key[0]) + " (x) " + key_str(key[1])
    return repr(key)
