"""Finite integer combinations of hashable generators."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping


class FormalSum:
    """Element of the free abelian group on hashable generators.

    Coefficients are integers; Fractions are accepted for rational
    normalizations that only clear after a further map is applied.

    Zero coefficients are never stored, so two sums are equal exactly when
    their term dictionaries are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, int] | Iterable[tuple[Hashable, int]] | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for g, c in items:
                if c:
                    acc[g] = acc.get(g, 0) + c
        self._terms = {g: c for g, c in acc.items() if c}
        self._hash = None

    @classmethod
    def gen(cls, g: Hashable, coeff: int = 1) -> "FormalSum":
        return cls({g: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, g: Hashable) -> int:
        return self._terms.get(g, 0)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self._terms)
        for g, c in other._terms.items():
            out[g] = out.get(g, 0) + c
        return FormalSum(out)

    __radd__ = __add__

    def __neg__(self) -> "FormalSum":
        return FormalSum({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __mul__(self, k) -> "FormalSum":
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return FormalSum({g: k * c for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def map_linear(self, f: Callable[[Hashable], "FormalSum"], zero=None):
        """Extend ``f`` linearly; ``f`` returns a group element for each generator."""
        total = zero if zero is not None else FormalSum()
        for g, c in self._terms.items():
            total = total + c * f(g)
        return total

    def divide_exact(self, k: int) -> "FormalSum | None":
        """Return self / k if every coefficient is divisible by k, else None."""
        if any(c % k for c in self._terms.values()):
            return None
        return FormalSum({g: c // k for g, c in self._terms.items()})

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self._terms.values())

    def sorted_items(self, key=None) -> list:
        return sorted(self._terms.items(), key=key or (lambda kv: repr(kv[0])))

    def __repr__(self) -> str:
        if not self._terms:
            return "FormalSum(0)"
        body = " + ".join(f"{c}*{g!r}" for g, c in self.sorted_items())
        return f"FormalSum({body})"


def accumulate(pairs: Iterable[tuple[Hashable, int]]) -> FormalSum:
    """Build a sum from a stream of (generator, coefficient) pairs in one pass."""
    acc: dict = {}
    for g, c in pairs:
        acc[g] = acc.get(g, 0) + c
    return FormalSum(acc)
