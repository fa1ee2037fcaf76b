"""Semidirect product model Z[G - {1}] x| G of pi_1 of the arc embedding
space, with the pi_2 summand projected away.

Multiplication: (x1, y1)(x2, y2) = (x1 + C_{y1} x2, y1 y2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .groupring import (
    Obstruction,
    RingElement,
    Solvable,
    conj_action,
    minus_conj_solvable,
)
from .groupword import GroupPresentation, Word, multiply


@dataclass(frozen=True)
class SemidirectElement:
    ring_part: RingElement
    group_part: Word

    @classmethod
    def identity(cls, pres: GroupPresentation) -> "SemidirectElement":
        return cls(RingElement(), pres.identity())

    @classmethod
    def of_group(cls, y: Word) -> "SemidirectElement":
        return cls(RingElement(), y)

    @classmethod
    def of_ring(cls, x: RingElement, pres: GroupPresentation) -> "SemidirectElement":
        return cls(x, pres.identity())

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return sd_multiply(self, other)

    def inverse(self) -> "SemidirectElement":
        yi = self.group_part.inverse()
        return SemidirectElement(-conj_action(yi, self.ring_part), yi)


def _check_pres(u: SemidirectElement, v: SemidirectElement) -> None:
    for x in (u.ring_part, v.ring_part):
        p = x.pres()
        if p is not None and p != u.group_part.pres:
            raise ValueError("presentation mismatch inside semidirect element")
    if u.group_part.pres != v.group_part.pres:
        raise ValueError(f"presentation mismatch: {u.group_part.pres} vs {v.group_part.pres}")


def sd_multiply(u: SemidirectElement, v: SemidirectElement) -> SemidirectElement:
    _check_pres(u, v)
    return SemidirectElement(
        u.ring_part + conj_action(u.group_part, v.ring_part),
        multiply(u.group_part, v.group_part),
    )


def sd_conjugate(w: SemidirectElement, z: SemidirectElement) -> SemidirectElement:
    return w * z * w.inverse()


def _nontrivial(*words: Word) -> None:
    for w in words:
        if w.is_identity:
            raise ValueError("loop classes need nontrivial alpha_1 and alpha_2")


def loop_class_standard(a1: Word, a2: Word) -> SemidirectElement:
    """Class of the unperturbed loop: I(a1) I(a2) = (0, a1 a2)."""
    _nontrivial(a1, a2)
    return SemidirectElement.of_group(a1) * SemidirectElement.of_group(a2)


def loop_class_twisted(a1: Word, a2: Word, beta0: RingElement) -> SemidirectElement:
    """I(a1) . beta . I(a2) . beta^-1 with beta = (beta0, 1)."""
    _nontrivial(a1, a2)
    pres = a1.pres
    beta = SemidirectElement.of_ring(beta0, pres)
    return (
        SemidirectElement.of_group(a1)
        * beta
        * SemidirectElement.of_group(a2)
        * SemidirectElement.of_ring(-beta0, pres)
    )


def loop_class_twisted_closed_form(a1: Word, a2: Word, beta0: RingElement) -> SemidirectElement:
    _nontrivial(a1, a2)
    a = multiply(a1, a2)
    return SemidirectElement(conj_action(a1, beta0) - conj_action(a, beta0), a)


@dataclass(frozen=True)
class Conjugate:
    witness: SemidirectElement


@dataclass(frozen=True)
class NotConjugate:
    obstructions: tuple[Obstruction, ...]


ConjugacyVerdict = Union[Conjugate, NotConjugate]


def are_conjugate_same_group_part(v: RingElement, alpha: Word) -> ConjugacyVerdict:
    """Is (v, alpha) conjugate to (0, alpha)?

    Any conjugator (x, y) has y centralizing alpha and sends (0, alpha) to
    (x - C_alpha x, alpha), so the question is whether v is in Im(id - C_alpha).
    """
    if alpha.is_identity:
        raise ValueError("alpha must be nontrivial")
    verdict = minus_conj_solvable(alpha, v)
    if isinstance(verdict, Solvable):
        w = SemidirectElement.of_ring(verdict.witness, alpha.pres)
        target = SemidirectElement(v, alpha)
        if sd_conjugate(w, SemidirectElement.of_group(alpha)) != target:
            raise AssertionError("conjugating element failed semidirect check")
        return Conjugate(w)
    return NotConjugate(verdict.obstructions)


def brute_force_conjugator(
    v: RingElement,
    alpha: Word,
    ring_words: list[Word],
    group_words: list[Word] | None = None,
    coeff_range: range = range(-2, 3),
    max_support: int = 4,
) -> SemidirectElement | None:
    """Exhaustive conjugator search, an oracle for small test instances.

    Tries every (x, y) with x supported on at most ``max_support`` of
    ``ring_words`` (coefficients from ``coeff_range``) and y in
    ``group_words`` (default: identity only).
    """
    target = SemidirectElement(v, alpha)
    base = SemidirectElement.of_group(alpha)
    pres = alpha.pres
    if group_words is None:
        group_words = [pres.identity()]
    # the group component of w base w^-1 is y alpha y^-1; filter on it first
    ys = [y for y in dict.fromkeys(group_words) if multiply(multiply(y, alpha), y.inverse()) == alpha]
    words = sorted(set(ring_words), key=Word.sort_key)
    nz = [c for c in coeff_range if c]
    for size in range(0, min(max_support, len(words)) + 1):
        for chosen in itertools.combinations(words, size):
            for coeffs in itertools.product(nz, repeat=size):
                x = RingElement(zip(chosen, coeffs))
                for y in ys:
                    w = SemidirectElement(x, y)
                    if sd_conjugate(w, base) == target:
                        return w
    return None
