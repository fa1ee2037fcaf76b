"""Whitehead-bracket classes in the rational pi_5 of the two- and three-point
configuration spaces, the coface maps delta_2^k, the pairing Theta, and the
image spans that are quotiented out to obtain W(Y).

A generator ``Gen(i, j, alpha)`` is the rotation class t_i^alpha w_ij with
``alpha`` already pushed to the lattice (alpha = 0 classes vanish).

Pairing convention: the table is taken with every sign equal to +1, in the
(a, b) indices of the table itself (the subscript negation in the linking
number definition is absorbed). Only two bracket shapes are evaluated by the
table directly: [t_i w_ij, t_i w_ij] (zeta) and [t_1 w_12, t_2 w_23] (theta).
The remaining mixed shapes are rewritten first through the labelled
three-term relations of pi_3 of the orbit configuration space

    [t_1^x w_12, t_1^y w_13 + t_2^(y-x) w_23] = 0
    [t_2^y w_23, t_1^(x-y) w_12 + t_1^x w_13] = 0

which is what makes Theta o delta_2^1 and Theta o delta_2^2 carry theta terms.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from typing import NamedTuple

from .lattice import ThetaPair, Vec, Window, enumerate_pairs, is_admissible, is_zero, neg, sub
from .linalg import Echelon, QVector
from .wspace import WVector, build_relation_basis, quotient_rank

PAIRS = ((1, 2), (1, 3), (2, 3))


class Gen(NamedTuple):
    i: int
    j: int
    alpha: Vec


def gen(i: int, j: int, alpha) -> Gen:
    alpha = tuple(alpha)
    if not (1 <= i < j <= 3):
        raise ValueError(f"bad point indices ({i}, {j})")
    if is_zero(alpha):
        raise ValueError("t_i^alpha w_ij with alpha in ker(tau) is zero")
    return Gen(i, j, alpha)


class BracketClass(QVector):
    """Rational combination of Whitehead brackets [g, h], stored with g < h."""

    __slots__ = ()

    @classmethod
    def bracket(cls, g: Gen, h: Gen, coeff=1) -> "BracketClass":
        if g == h:
            return cls()
        if g < h:
            return cls({(g, h): coeff})
        return cls({(h, g): -coeff})

    @classmethod
    def from_brackets(cls, items) -> "BracketClass":
        out = cls()
        for g, h, c in items:
            out = out + cls.bracket(g, h, c)
        return out


def _zeta_key(i: int, j: int, a: Vec, b: Vec) -> tuple[tuple, int]:
    """Storage key and sign: zeta_{a,b} = -zeta_{b,a}, keep the smaller order."""
    if (a, b) <= (b, a):
        return (i, j, ThetaPair(a, b)), 1
    return (i, j, ThetaPair(b, a)), -1


@dataclass(frozen=True)
class PairingVector:
    theta: WVector
    zeta: QVector

    @classmethod
    def zero(cls) -> "PairingVector":
        return cls(WVector(), QVector())

    @classmethod
    def theta_hat(cls, a, b, coeff=1) -> "PairingVector":
        a, b = tuple(a), tuple(b)
        if not is_admissible(a, b):
            return cls.zero()
        return cls(WVector({ThetaPair(a, b): coeff}), QVector())

    @classmethod
    def zeta_diff(cls, i: int, j: int, a, b, coeff=1) -> "PairingVector":
        """coeff * (zeta-hat^{ij}_{a,b} - zeta-hat^{ij}_{b,a})."""
        a, b = tuple(a), tuple(b)
        if not is_admissible(a, b):
            return cls.zero()
        key, sign = _zeta_key(i, j, a, b)
        return cls(WVector(), QVector({key: sign * coeff}))

    def __add__(self, other: "PairingVector") -> "PairingVector":
        return PairingVector(self.theta + other.theta, self.zeta + other.zeta)

    def __neg__(self) -> "PairingVector":
        return PairingVector(-self.theta, -self.zeta)

    def __sub__(self, other: "PairingVector") -> "PairingVector":
        return self + (-other)

    def __mul__(self, c) -> "PairingVector":
        return PairingVector(self.theta * c, self.zeta * c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.theta) or bool(self.zeta)

    def flat(self) -> QVector:
        """Single vector with zeta coordinates ordered before theta ones."""
        items = [((0,) + (k[0], k[1], k[2]), c) for k, c in self.zeta.items()]
        items += [((1, p), c) for p, c in self.theta.items()]
        return QVector(items)

    def keys_in_window(self, w: Window) -> bool:
        return all(w.contains_pair(p) for p in self.theta.keys()) and all(
            w.contains_triple(k[2].a, k[2].b) for k in self.zeta.keys()
        )


# coface formulas on t_1^alpha w_12, as (i, j) lists
COFACE_TABLE = {
    0: ((2, 3),),
    1: ((1, 3), (2, 3)),
    2: ((1, 2), (1, 3)),
    3: ((1, 2),),
}


def coface(k: int, c: BracketClass) -> BracketClass:
    """delta_2^k applied to each bracket argument, expanded bilinearly."""
    if k not in COFACE_TABLE:
        raise ValueError(f"coface index must be 0..3, got {k}")
    out = BracketClass()
    for (g, h), coeff in c.items():
        for s in (g, h):
            if (s.i, s.j) != (1, 2):
                raise ValueError(f"symbol {s} is not a C_2 class t_1 w_12")
        for ig, jg in COFACE_TABLE[k]:
            for ih, jh in COFACE_TABLE[k]:
                out = out + BracketClass.bracket(
                    Gen(ig, jg, g.alpha), Gen(ih, jh, h.alpha), coeff
                )
    return out


_THETA_SIGN = 1


@contextlib.contextmanager
def corrupted_table():
    """Flip the sign of the theta table entry; negative control for selftest."""
    global _THETA_SIGN
    old = _THETA_SIGN
    _THETA_SIGN = -old
    try:
        yield
    finally:
        _THETA_SIGN = old


def _theta_12_23(x: Vec, y: Vec) -> PairingVector:
    # theta_{a,b}([t_1^x w_12, t_2^y w_23]) = 1 iff a = x, b = -y
    return PairingVector.theta_hat(x, neg(y), _THETA_SIGN)


def _pair_value(g: Gen, h: Gen) -> PairingVector:
    """Theta of a single bracket [g, h] with g < h."""
    ij_g, ij_h = (g.i, g.j), (h.i, h.j)
    x, y = g.alpha, h.alpha
    if ij_g == ij_h:
        return PairingVector.zeta_diff(g.i, g.j, x, y)
    if ij_g == (1, 2) and ij_h == (2, 3):
        return _theta_12_23(x, y)
    if ij_g == (1, 3) and ij_h == (2, 3):
        # [t_1^x w_13, t_2^y w_23] = -[t_1^(x-y) w_12, t_2^y w_23]
        d = sub(x, y)
        if is_zero(d):
            return PairingVector.zero()
        return -_theta_12_23(d, y)
    if ij_g == (1, 2) and ij_h == (1, 3):
        # [t_1^x w_12, t_1^y w_13] = -[t_1^x w_12, t_2^(y-x) w_23]
        d = sub(y, x)
        if is_zero(d):
            return PairingVector.zero()
        return -_theta_12_23(x, d)
    raise AssertionError(f"unexpected bracket order {g}, {h}")


def theta_map(c: BracketClass) -> PairingVector:
    out = PairingVector.zero()
    for (g, h), coeff in c.items():
        out = out + _pair_value(g, h) * coeff
    return out


def closed_form_generator(k: int, a: Vec, b: Vec) -> PairingVector:
    """Closed-form generator of Im(Theta o delta_2^k) indexed by (a, b)."""
    a, b = tuple(a), tuple(b)
    if k == 0:
        return PairingVector.zeta_diff(2, 3, a, b)
    if k == 1:
        return (
            PairingVector.zeta_diff(1, 3, a, b)
            + PairingVector.zeta_diff(2, 3, a, b)
            - PairingVector.theta_hat(sub(a, b), neg(b))
            + PairingVector.theta_hat(sub(b, a), neg(a))
        )
    if k == 2:
        return (
            PairingVector.zeta_diff(1, 2, a, b)
            + PairingVector.zeta_diff(1, 3, a, b)
            - PairingVector.theta_hat(a, sub(a, b))
            + PairingVector.theta_hat(b, sub(b, a))
        )
    if k == 3:
        return PairingVector.zeta_diff(1, 2, a, b)
    raise ValueError(f"coface index must be 0..3, got {k}")


def computed_generator(k: int, a: Vec, b: Vec) -> PairingVector:
    """Theta(delta_2^k [t_1^a w_12, t_1^b w_12]) through the bracket calculus."""
    c = BracketClass.bracket(gen(1, 2, a), gen(1, 2, b))
    return theta_map(coface(k, c))


def image_spans(w: Window, route: str = "closed") -> dict[int, list[PairingVector]]:
    """Window-internal generators of Im(Theta o delta_2^k) for k = 0..3."""
    make = {"closed": closed_form_generator, "computed": computed_generator}[route]
    spans: dict[int, list[PairingVector]] = {}
    for k in range(4):
        gens = []
        for a, b in enumerate_pairs(w):
            if not w.contains_triple(a, b):
                continue
            v = make(k, a, b)
            if v.keys_in_window(w):
                gens.append(v)
        spans[k] = gens
    return spans


def coface_mismatches(w: Window) -> list[tuple[int, ThetaPair]]:
    """(k, (a, b)) where the bracket calculus and the closed form disagree."""
    bad = []
    for a, b in enumerate_pairs(w):
        for k in range(4):
            if computed_generator(k, a, b) != closed_form_generator(k, a, b):
                bad.append((k, ThetaPair(a, b)))
    return bad


@dataclass(frozen=True)
class BKReport:
    window: Window
    rank_bk: int
    rank_w: int
    injective: bool
    surjective: bool

    @property
    def basis_bijection(self) -> bool:
        return self.injective and self.surjective and self.rank_bk == self.rank_w

    @property
    def ranks_agree(self) -> bool:
        return self.rank_bk == self.rank_w


def bk_coordinates(w: Window) -> list:
    """Flat coordinate keys of span{theta-hat, zeta-hat differences} in the window."""
    coords = [(1, p) for p in enumerate_pairs(w)]
    for i, j in PAIRS:
        for a, b in enumerate_pairs(w):
            if (a, b) < (b, a) and w.contains_triple(a, b):
                coords.append((0, i, j, ThetaPair(a, b)))
    return coords


def bk_quotient_check(w: Window) -> BKReport:
    """Compare span{theta, zeta diffs}/sum Im(delta) with the four-term quotient."""
    coords = bk_coordinates(w)
    ech = Echelon()
    for gens in image_spans(w).values():
        for v in gens:
            ech.add(v.flat())
    rank_bk = len(coords) - ech.rank
    rank_w = quotient_rank(w)

    # rows pivoting on theta coordinates span (image) ∩ span(theta)
    theta_rows = [
        WVector((k[1], c) for k, c in row.items())
        for row in ech.rows()
        if row.leading_key()[0] == 1
    ]
    rb = build_relation_basis(w)
    injective = Echelon(theta_rows).rows() == Echelon(rb.rows).rows()
    pivots = set(ech.pivots)
    surjective = all(c in pivots for c in coords if c[0] == 0)
    return BKReport(w, rank_bk, rank_w, injective, surjective)
