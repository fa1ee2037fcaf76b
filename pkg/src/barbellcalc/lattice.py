"""Integer lattice Z^b standing in for H_1(Y; Z)/torsion.

Lattice vectors are plain tuples of ints. A ``Window`` is the max-norm box of
radius ``bound``; every enumeration over it is lexicographic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

Vec = tuple[int, ...]


class ThetaPair(NamedTuple):
    a: Vec
    b: Vec


def _check_arity(a: Vec, b: Vec) -> None:
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {a} vs {b}")


def is_zero(a: Vec) -> bool:
    return not any(a)


def neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def sub(a: Vec, b: Vec) -> Vec:
    _check_arity(a, b)
    return tuple(x - y for x, y in zip(a, b))


def add(a: Vec, b: Vec) -> Vec:
    _check_arity(a, b)
    return tuple(x + y for x, y in zip(a, b))


def scale(k: int, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def is_admissible(a: Vec, b: Vec) -> bool:
    """True iff a, b and a - b are all nonzero."""
    _check_arity(a, b)
    return not is_zero(a) and not is_zero(b) and a != b


def norm_inf(a: Vec) -> int:
    return max((abs(x) for x in a), default=0)


@dataclass(frozen=True)
class Window:
    rank: int
    bound: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("lattice rank must be >= 1")
        if self.bound < 1:
            raise ValueError("window bound must be >= 1")

    def contains(self, a: Vec) -> bool:
        return len(a) == self.rank and norm_inf(a) <= self.bound

    def contains_pair(self, p: ThetaPair) -> bool:
        return self.contains(p.a) and self.contains(p.b)

    def contains_triple(self, a: Vec, b: Vec) -> bool:
        """a, b and a - b all inside the box (the footprint of a relation)."""
        return self.contains(a) and self.contains(b) and norm_inf(sub(a, b)) <= self.bound

    @cached_property
    def nonzero_vectors(self) -> tuple[Vec, ...]:
        r = range(-self.bound, self.bound + 1)
        return tuple(v for v in itertools.product(r, repeat=self.rank) if any(v))

    @cached_property
    def pairs(self) -> tuple[ThetaPair, ...]:
        vs = self.nonzero_vectors
        return tuple(ThetaPair(a, b) for a in vs for b in vs if a != b)


def enumerate_pairs(w: Window) -> list[ThetaPair]:
    """All admissible pairs inside the window, lexicographically sorted."""
    return list(w.pairs)
