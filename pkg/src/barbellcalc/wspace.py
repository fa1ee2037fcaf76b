"""Truncated model of W(Y): rational span of theta-hat symbols modulo the
four-term relations, restricted to a max-norm window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lattice import ThetaPair, Vec, Window, enumerate_pairs, is_admissible, neg, norm_inf, sub
from .linalg import Echelon, QVector, matrix_rank, solve_unique


class WindowError(ValueError):
    """A vector's support falls outside the window it is reduced in."""


class WVector(QVector):
    """Sparse rational combination of theta-hat symbols keyed by ThetaPair."""

    __slots__ = ()

    @classmethod
    def theta(cls, a, b, coeff=1) -> "WVector":
        a, b = tuple(a), tuple(b)
        if not is_admissible(a, b):
            raise ValueError(f"inadmissible index pair ({a}, {b})")
        return cls({ThetaPair(a, b): coeff})

    @classmethod
    def from_terms(cls, terms) -> "WVector":
        out = cls((ThetaPair(tuple(a), tuple(b)), c) for (a, b), c in terms)
        for p in out.keys():
            if not is_admissible(p.a, p.b):
                raise ValueError(f"inadmissible index pair {p}")
        return out


def relation(a: Vec, b: Vec) -> WVector:
    """theta(a-b,-b) - theta(b-a,-a) - theta(a,a-b) + theta(b,b-a)."""
    a, b = tuple(a), tuple(b)
    if not is_admissible(a, b):
        raise ValueError(f"inadmissible relation indices ({a}, {b})")
    amb, bma = sub(a, b), sub(b, a)
    return WVector(
        [
            (ThetaPair(amb, neg(b)), 1),
            (ThetaPair(bma, neg(a)), -1),
            (ThetaPair(a, amb), -1),
            (ThetaPair(b, bma), 1),
        ]
    )


def relation_in_window(a: Vec, b: Vec, w: Window) -> bool:
    return w.contains_triple(a, b)


@dataclass(frozen=True)
class RelationBasis:
    window: Window
    rows: tuple[WVector, ...]
    _ech: Echelon = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.rows)


@lru_cache(maxsize=None)
def build_relation_basis(w: Window) -> RelationBasis:
    """Echelon basis of the window-internal four-term relations."""
    ech = Echelon()
    for a, b in enumerate_pairs(w):
        if relation_in_window(a, b, w):
            ech.add(relation(a, b))
    rows = tuple(WVector._raw(dict(r.items())) for r in ech.rows())
    return RelationBasis(w, rows, ech)


def check_support(v: WVector, w: Window) -> None:
    outside = [p for p in v.keys() if not w.contains_pair(p)]
    if outside:
        raise WindowError(
            f"support {sorted(outside)[:3]} lies outside window rank={w.rank} bound={w.bound}"
        )


def required_bound(v: WVector) -> int:
    return max((max(norm_inf(p.a), norm_inf(p.b)) for p in v.keys()), default=1)


def reduce(v: WVector, rb: RelationBasis) -> WVector:
    """Canonical coset representative of v modulo the relation span."""
    check_support(v, rb.window)
    return WVector._raw(dict(rb._ech.reduce(v).items()))


def quotient_rank(w: Window) -> int:
    return len(enumerate_pairs(w)) - build_relation_basis(w).rank


def _check_injective(inj) -> tuple[tuple[int, ...], ...]:
    m = tuple(tuple(int(x) for x in row) for row in inj)
    if not m or not m[0]:
        raise ValueError("empty lattice map")
    if any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged lattice map")
    if matrix_rank(m) != len(m[0]):
        raise ValueError("lattice map is not injective")
    return m


def _apply(m, a: Vec) -> Vec:
    if len(a) != len(m[0]):
        raise ValueError(f"vector {a} does not match map domain rank {len(m[0])}")
    return tuple(sum(r * x for r, x in zip(row, a)) for row in m)


def _preimage(m, a: Vec) -> Vec | None:
    if len(a) != len(m):
        raise ValueError(f"vector {a} does not match map codomain rank {len(m)}")
    x = solve_unique(m, a)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return tuple(int(c) for c in x)


def pushforward(inj, v: WVector) -> WVector:
    """theta(a,b) -> theta(inj a, inj b) for an injective integer matrix."""
    m = _check_injective(inj)
    return v.map_keys(lambda p: ThetaPair(_apply(m, p.a), _apply(m, p.b)))


def retract(inj, v: WVector) -> WVector:
    """Left inverse of pushforward: pulls back symbols lying over the image lattice."""
    m = _check_injective(inj)

    def back(p):
        a = _preimage(m, p.a)
        if a is None:
            return None
        b = _preimage(m, p.b)
        if b is None:
            return None
        return ThetaPair(a, b)

    return v.map_keys(back)


def iota_star(v: WVector) -> WVector:
    """Action of -id on H_1: theta(a,b) -> theta(-a,-b)."""
    return v.map_keys(lambda p: ThetaPair(neg(p.a), neg(p.b)))


def format_wvector(v: WVector) -> list[dict]:
    return [{"a": list(p.a), "b": list(p.b), "coeff": _fstr(v[p])} for p in v]


def _fstr(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
