"""Words in free products of cyclic groups.

A presentation is a tuple of factor orders (0 for Z, m >= 2 for Z/m). A word
is a tuple of syllables ``(factor, exponent)`` in normal form: adjacent
syllables lie in distinct factors and exponents of finite factors are reduced
into [1, m - 1].

Conjugation orbits are classified exactly. Writing g = c g0 c^-1 with g0
cyclically reduced, either g0 is a single syllable (elliptic: finite orbits
for a finite factor, explicit exponent bookkeeping for a Z factor) or g0 is
hyperbolic, where a word is fixed iff it commutes with g0 and every other
orbit is infinite with word length growing linearly in the step count.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union


@dataclass(frozen=True)
class GroupPresentation:
    factor_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(m) for m in self.factor_orders)
        object.__setattr__(self, "factor_orders", orders)
        if not orders:
            raise ValueError("a presentation needs at least one factor")
        if any(m < 0 or m == 1 for m in orders):
            raise ValueError(f"factor orders must be 0 or >= 2, got {orders}")

    @property
    def is_abelian(self) -> bool:
        return len(self.factor_orders) == 1

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, factor: int, exponent: int = 1) -> "Word":
        return self.word([(factor, exponent)])

    def word(self, syllables: Iterable) -> "Word":
        return Word(self, _normalize(self, syllables))

    def __str__(self) -> str:
        return " * ".join("Z" if m == 0 else f"Z/{m}" for m in self.factor_orders)


def _reduce_exp(pres: GroupPresentation, factor: int, e: int) -> int:
    m = pres.factor_orders[factor]
    return e % m if m else e


def _normalize(pres: GroupPresentation, syllables: Iterable) -> tuple:
    stack: list[tuple[int, int]] = []
    for f, e in syllables:
        f, e = int(f), int(e)
        if not 0 <= f < len(pres.factor_orders):
            raise ValueError(f"factor index {f} out of range for {pres}")
        e = _reduce_exp(pres, f, e)
        if e == 0:
            continue
        if stack and stack[-1][0] == f:
            e = _reduce_exp(pres, f, stack.pop()[1] + e)
            if e == 0:
                continue
        stack.append((f, e))
    return tuple(stack)


def _join(pres: GroupPresentation, a: tuple, b: tuple) -> tuple:
    """Product of two normal-form syllable tuples; only the junction can reduce."""
    a = list(a)
    i = 0
    while a and i < len(b) and a[-1][0] == b[i][0]:
        f, e = a.pop()
        e = _reduce_exp(pres, f, e + b[i][1])
        i += 1
        if e:
            a.append((f, e))
            break
    return tuple(a) + b[i:]


def is_normal_form(pres: GroupPresentation, syllables: tuple) -> bool:
    for k, (f, e) in enumerate(syllables):
        if not 0 <= f < len(pres.factor_orders) or e == 0:
            return False
        m = pres.factor_orders[f]
        if m and not 1 <= e <= m - 1:
            return False
        if k and syllables[k - 1][0] == f:
            return False
    return True


@dataclass(frozen=True)
class Word:
    pres: GroupPresentation
    syllables: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def sort_key(self) -> tuple:
        return (len(self.syllables), self.syllables)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def inverse(self) -> "Word":
        return Word(
            self.pres,
            tuple((f, _reduce_exp(self.pres, f, -e)) for f, e in reversed(self.syllables)),
        )

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = self.pres.identity()
        for _ in range(abs(n)):
            out = out * base
        return out

    @property
    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def to_literal(self) -> list[list[int]]:
        return [[f, e] for f, e in self.syllables]

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        names = "stuvxyzabcdefghijklmnopqrw"
        return "".join(
            names[f % len(names)] + ("" if e == 1 else f"^{e}") for f, e in self.syllables
        )


def _check_same(u: Word, v: Word) -> None:
    if u.pres != v.pres:
        raise ValueError(f"presentation mismatch: {u.pres} vs {v.pres}")


def multiply(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word(u.pres, _join(u.pres, u.syllables, v.syllables))


def conjugate(g: Word, x: Word) -> Word:
    """g x g^-1."""
    _check_same(g, x)
    pres = g.pres
    return Word(pres, _join(pres, _join(pres, g.syllables, x.syllables), g.inverse().syllables))


def cyclic_reduce(x: Word) -> tuple[Word, Word]:
    """Return (core, conjugator) with x = conjugator * core * conjugator^-1."""
    pres = x.pres
    core = x.syllables
    conj: list[tuple[int, int]] = []
    while len(core) >= 2 and core[0][0] == core[-1][0]:
        first, last = core[0], core[-1]
        conj.append(first)
        # x = first * (mid * last * first) * first^-1
        core = _normalize(pres, core[1:-1] + (last, first))
    return Word(pres, core), Word(pres, _normalize(pres, conj))


def is_two_torsion(x: Word) -> bool:
    """True iff x^2 = 1 (also true for the identity)."""
    return multiply(x, x).is_identity


def order(x: Word) -> int:
    """Element order, 0 for infinite order."""
    if x.is_identity:
        return 1
    core, _ = cyclic_reduce(x)
    if len(core) == 1:
        f, e = core.syllables[0]
        m = x.pres.factor_orders[f]
        if m:
            return m // gcd(m, e)
    return 0


@dataclass(frozen=True)
class Finite:
    orbit: tuple[Word, ...]


@dataclass(frozen=True)
class Infinite:
    prefix: tuple[Word, ...]


OrbitVerdict = Union[Finite, Infinite]


def _finite_orbit(g: Word, x: Word) -> tuple[Word, ...] | None:
    """The full orbit of x under C_g when it is finite, else None."""
    if g.is_identity or x.pres.is_abelian:
        return (x,)
    core, c = cyclic_reduce(g)
    xc = conjugate(c.inverse(), x)
    if len(core) == 1:
        f, _ = core.syllables[0]
        if x.pres.factor_orders[f]:
            orbit = [x]
            y = conjugate(g, x)
            while y != x:
                orbit.append(y)
                y = conjugate(g, y)
            return tuple(orbit)
        if all(s[0] == f for s in xc.syllables):
            return (x,)
        return None
    if multiply(core, xc) == multiply(xc, core):
        return (x,)
    return None


def conjugation_orbit(g: Word, x: Word, length_bound: int) -> OrbitVerdict:
    """Orbit of x under x -> g x g^-1.

    Finite orbits are returned in full. For infinite orbits the prefix holds
    the forward iterates of letter length at most ``length_bound``, capped at
    ``length_bound`` steps (always at least x itself).
    """
    _check_same(g, x)
    if x.is_identity:
        raise ValueError("orbit of the identity is not defined here")
    fin = _finite_orbit(g, x)
    if fin is not None:
        return Finite(fin)
    prefix = [x]
    y = conjugate(g, x)
    while y.letter_length <= length_bound and len(prefix) <= length_bound:
        prefix.append(y)
        y = conjugate(g, y)
    return Infinite(tuple(prefix))


def _split_factor(xc: Word, f: int) -> tuple[int, tuple, int]:
    """xc = f^p * mid * f^q with mid not starting or ending in factor f."""
    s = xc.syllables
    p = q = 0
    if s and s[0][0] == f:
        p, s = s[0][1], s[1:]
    if s and s[-1][0] == f:
        q, s = s[-1][1], s[:-1]
    return p, s, q


def _hyperbolic_window(x: Word) -> int:
    # |g0^n x g0^-n| grows like 2|n||g0| - O(|x|) with |g0| >= 2, so every orbit
    # element no longer than x sits within this many steps of x
    return 2 * len(x) + 4


def orbit_canonical(g: Word, x: Word) -> tuple[Word, int]:
    """(m, n) with C_g^n(x) = m, where m depends only on the <C_g>-orbit of x.

    m is the sort-least orbit element for finite and hyperbolic orbits, and the
    element with leading exponent reduced mod |e| when g is conjugate to f^e
    in a Z factor f.
    """
    _check_same(g, x)
    fin = _finite_orbit(g, x)
    if fin is not None:
        m = min(fin, key=Word.sort_key)
        return m, fin.index(m)
    core, c = cyclic_reduce(g)
    xc = conjugate(c.inverse(), x)
    if len(core) == 1:
        f, e = core.syllables[0]
        p, mid, q = _split_factor(xc, f)
        n = ((p % abs(e)) - p) // e
        p2 = p + e * n
        mc = Word(x.pres, _normalize(x.pres, ((f, p2),) + mid + ((f, q - e * n),)))
        return conjugate(c, mc), n
    best, best_n = xc, 0
    fwd = bwd = xc
    ginv = core.inverse()
    for n in range(1, _hyperbolic_window(xc) + 1):
        fwd = conjugate(core, fwd)
        bwd = conjugate(ginv, bwd)
        for cand, k in ((fwd, n), (bwd, -n)):
            if cand.sort_key() < best.sort_key():
                best, best_n = cand, k
    return conjugate(c, best), best_n


def orbit_step(g: Word, u: Word, w: Word) -> int | None:
    """An integer n with C_g^n(u) = w, or None when w is not in u's orbit.

    For finite orbits n is the least nonnegative such step.
    """
    _check_same(g, u)
    _check_same(g, w)
    if u == w:
        return 0
    fin = _finite_orbit(g, u)
    if fin is not None:
        return fin.index(w) if w in fin else None
    mu, nu = orbit_canonical(g, u)
    mw, nw = orbit_canonical(g, w)
    if mu != mw:
        return None
    return nu - nw


def conjugate_power(g: Word, x: Word, n: int) -> Word:
    """C_g^n(x)."""
    return conjugate(g ** n, x) if n >= 0 else conjugate(g.inverse() ** (-n), x)
