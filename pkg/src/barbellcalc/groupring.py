"""The group ring Z[G - {1}] over a free product of cyclic groups.

The central routine decides whether y lies in the image of id - C_g. The
image of id - (cyclic shift) on the span of one <C_g>-orbit is exactly the
sum-zero sublattice, for finite and infinite orbits alike, so y is in the
image iff every orbit meeting supp(y) carries coefficient sum zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .groupword import (
    GroupPresentation,
    Word,
    _finite_orbit,
    conjugate,
    orbit_canonical,
    order,
)


class RingElement(Mapping):
    """Finitely supported integer combination of non-identity words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, int] = {}
        for w, c in items:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"group ring coefficients are integers, got {c!r}")
            if w.is_identity:
                continue
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, w: Word, c: int = 1) -> "RingElement":
        return cls({w: c})

    def __getitem__(self, w: Word) -> int:
        return self._terms.get(w, 0)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self._terms, key=Word.sort_key))

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, w) -> bool:
        return w in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElement):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "RingElement":
        return RingElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, k: int) -> "RingElement":
        return RingElement({w: k * c for w, c in self._terms.items()})

    __rmul__ = __mul__

    def support(self) -> list[Word]:
        return list(self)

    def pres(self) -> GroupPresentation | None:
        for w in self._terms:
            return w.pres
        return None

    def to_literal(self) -> list[dict]:
        return [{"word": w.to_literal(), "coeff": str(self[w])} for w in self]

    def __repr__(self) -> str:
        if not self._terms:
            return "RingElement(0)"
        return "RingElement(" + " + ".join(f"{self[w]}*{w}" for w in self) + ")"


def conj_action(g: Word, x: RingElement) -> RingElement:
    """C_g: each basis word w goes to g w g^-1."""
    return RingElement((conjugate(g, w), c) for w, c in x.items())


def dax_composite(c: Iterable[int], g: Word) -> RingElement:
    """sum_k c_k (g^k + g^-k), k = 1..n."""
    c = list(c)
    if g.is_identity:
        raise ValueError("dax_composite needs g != 1")
    if order(g) != 0:
        raise ValueError(f"dax_composite needs g of infinite order, {g} has order {order(g)}")
    if not c:
        raise ValueError("empty coefficient list")
    terms = []
    for k, ck in enumerate(c, start=1):
        terms += [(g ** k, ck), (g ** (-k), ck)]
    return RingElement(terms)


@dataclass(frozen=True)
class Obstruction:
    """A <C_g>-orbit meeting supp(y) whose coefficient sum is nonzero."""

    representative: Word
    members: tuple[Word, ...]
    total: int


@dataclass(frozen=True)
class Solvable:
    witness: RingElement


@dataclass(frozen=True)
class Unsolvable:
    obstructions: tuple[Obstruction, ...]

    @property
    def obstruction(self) -> Obstruction:
        return self.obstructions[0]


SolveVerdict = Union[Solvable, Unsolvable]


@dataclass
class _Orbit:
    rep: Word
    finite: tuple[Word, ...] | None
    steps: dict[Word, int]


def orbit_partition(g: Word, words: Iterable[Word]) -> list[_Orbit]:
    """Group words into <C_g>-orbits, recording each word's step from the rep.

    The rep is the first word of the orbit in sort order; steps of finite
    orbits are taken mod the orbit length.
    """
    by_key: dict[Word, tuple[_Orbit, int]] = {}
    orbits: list[_Orbit] = []
    for w in sorted(words, key=Word.sort_key):
        m, n = orbit_canonical(g, w)
        if m not in by_key:
            orb = _Orbit(w, _finite_orbit(g, w), {w: 0})
            by_key[m] = (orb, n)
            orbits.append(orb)
            continue
        orb, n_rep = by_key[m]
        step = n_rep - n
        if orb.finite is not None:
            step %= len(orb.finite)
        orb.steps[w] = step
    return orbits


def minus_id_minus_conj(g: Word, beta: RingElement) -> RingElement:
    return beta - conj_action(g, beta)


def minus_conj_solvable(g: Word, y: RingElement) -> SolveVerdict:
    """Decide whether beta - C_g(beta) = y has a finitely supported solution."""
    if not y:
        return Solvable(RingElement())
    pres = y.pres()
    if g.pres != pres:
        raise ValueError(f"presentation mismatch: {g.pres} vs {pres}")
    orbits = orbit_partition(g, y.keys())
    bad = []
    for orb in orbits:
        total = sum(y[w] for w in orb.steps)
        if total:
            members = tuple(sorted(orb.steps, key=Word.sort_key))
            bad.append(Obstruction(orb.rep, members, total))
    if bad:
        return Unsolvable(tuple(bad))

    terms = []
    for orb in orbits:
        by_step = sorted((n, y[w]) for w, n in orb.steps.items())
        lo, hi = by_step[0][0], by_step[-1][0]
        if orb.finite is not None:
            lo, hi = 0, len(orb.finite)
        word = orb.rep if orb.finite is not None else _step_word(g, orb.rep, lo)
        running, idx = 0, 0
        for p in range(lo, hi):
            while idx < len(by_step) and by_step[idx][0] <= p:
                running += by_step[idx][1]
                idx += 1
            if running:
                terms.append((word, running))
            word = conjugate(g, word)
    witness = RingElement(terms)
    if minus_id_minus_conj(g, witness) != y:
        raise AssertionError("telescoping witness failed substitution check")
    return Solvable(witness)


def _step_word(g: Word, w: Word, n: int) -> Word:
    h = g if n >= 0 else g.inverse()
    for _ in range(abs(n)):
        w = conjugate(h, w)
    return w


def brute_force_solvable(g: Word, y: RingElement, depth: int = 4) -> SolveVerdict:
    """Oracle: exact linear solve for beta supported on C_g^j(supp y), |j| <= depth.

    The constraint matrix is a directed-graph incidence matrix, hence totally
    unimodular, so a basic rational solution is integral.
    """
    import sympy

    if not y:
        return Solvable(RingElement())
    unknowns: list[Word] = []
    seen = set()
    for w in y.support():
        for j in range(-depth, depth + 1):
            s = _step_word(g, w, j)
            if s not in seen:
                seen.add(s)
                unknowns.append(s)
    rows_idx: dict[Word, int] = {}
    for s in list(unknowns) + [conjugate(g, s) for s in unknowns] + y.support():
        rows_idx.setdefault(s, len(rows_idx))
    A = sympy.zeros(len(rows_idx), len(unknowns))
    for col, s in enumerate(unknowns):
        A[rows_idx[s], col] += 1
        A[rows_idx[conjugate(g, s)], col] -= 1
    rhs = sympy.zeros(len(rows_idx), 1)
    for w, c in y.items():
        rhs[rows_idx[w], 0] = c
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError:
        return Unsolvable(())
    sol = sol.subs({p: 0 for p in params})
    terms = []
    for s, v in zip(unknowns, sol):
        if not v.is_integer:
            raise AssertionError("non-integral basic solution")
        terms.append((s, int(v)))
    witness = RingElement(terms)
    if minus_id_minus_conj(g, witness) != y:
        raise AssertionError("oracle witness failed substitution check")
    return Solvable(witness)


def fixed_vectors(gens: Iterable[Word], support: Iterable[Word]) -> list[RingElement]:
    """Basis of the joint fixed space of {C_g} on span(support).

    The support must be closed under every C_g; each C_g then permutes it and
    the fixed vectors are the orbit sums.
    """
    gens = list(gens)
    support = sorted(set(support), key=Word.sort_key)
    if any(w.is_identity for w in support):
        raise ValueError("the identity word is not a group ring basis element")
    sset = set(support)
    parent = {w: w for w in support}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for g in gens:
        for w in support:
            v = conjugate(g, w)
            if v not in sset:
                raise ValueError(f"support not closed: C_{g}({w}) = {v} missing")
            rw, rv = find(w), find(v)
            if rw != rv:
                lo, hi = sorted((rw, rv), key=Word.sort_key)
                parent[hi] = lo
    classes: dict[Word, list[Word]] = {}
    for w in support:
        classes.setdefault(find(w), []).append(w)
    return [RingElement((w, 1) for w in ws) for _, ws in sorted(classes.items(), key=lambda kv: kv[0].sort_key())]
