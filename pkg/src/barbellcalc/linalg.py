"""Sparse exact linear algebra over the rationals.

Vectors are finitely supported maps from sortable keys to ``Fraction``.
``Echelon`` keeps a reduced row echelon form whose pivot of each row is its
smallest key, so the stored basis depends only on the spanned subspace and
the key order, never on insertion order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"inexact coefficient {x!r}; use int, str or Fraction")


class QVector(Mapping):
    """Immutable sparse vector with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict = {}
        for key, coeff in items:
            c = as_fraction(coeff)
            if c:
                acc[key] = acc.get(key, 0) + c
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "QVector":
        v = object.__new__(cls)
        v._terms = terms
        v._hash = None
        return v

    @classmethod
    def basis(cls, key) -> "QVector":
        return cls._raw({key: Fraction(1)})

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, QVector):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "QVector") -> "QVector":
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return type(self)._raw(out)

    def __neg__(self) -> "QVector":
        return type(self)._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "QVector") -> "QVector":
        return self + (-other)

    def __mul__(self, scalar) -> "QVector":
        c = as_fraction(scalar)
        if not c:
            return type(self)._raw({})
        return type(self)._raw({k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, fn) -> "QVector":
        """Linear extension of a key map; keys sent to ``None`` are dropped."""
        out: dict = {}
        for k, v in self._terms.items():
            nk = fn(k)
            if nk is None:
                continue
            s = out.get(nk, 0) + v
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
        return type(self)._raw(out)

    def support(self) -> list:
        return sorted(self._terms)

    def leading_key(self):
        return min(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{self._terms[k]}*{k}" for k in self)
        return f"{type(self).__name__}({body})"


class Echelon:
    """Reduced row echelon basis of a subspace, pivot = smallest key of a row."""

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self._rows: dict[Hashable, dict] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    def rows(self) -> list[QVector]:
        return [QVector._raw(dict(self._rows[p])) for p in sorted(self._rows)]

    def _reduce_dict(self, vec: Mapping) -> dict:
        out = {k: as_fraction(c) for k, c in vec.items() if c}
        # rows are fully reduced, so one pass over the original pivots suffices
        for p in [k for k in out if k in self._rows]:
            c = out.get(p)
            if not c:
                continue
            for k, rv in self._rows[p].items():
                s = out.get(k, 0) - c * rv
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def reduce(self, vec: Mapping) -> QVector:
        return QVector._raw(self._reduce_dict(vec))

    def contains(self, vec: Mapping) -> bool:
        return not self._reduce_dict(vec)

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when the rank grew."""
        r = self._reduce_dict(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        for q, row in self._rows.items():
            c = row.get(p)
            if c:
                for k, v in r.items():
                    s = row.get(k, 0) - c * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        self._rows[p] = r
        return True


def rank(vectors: Iterable[Mapping]) -> int:
    return Echelon(vectors).rank


def matrix_rank(matrix) -> int:
    """Exact rank of an integer/rational matrix given as a list of rows."""
    return rank(QVector(enumerate(row)) for row in matrix)


def solve_unique(matrix, target) -> list[Fraction] | None:
    """Solve ``matrix @ x == target`` for a matrix of full column rank.

    Returns the unique rational solution or None if the system is inconsistent.
    """
    m = [list(map(as_fraction, row)) + [as_fraction(t)] for row, t in zip(matrix, target)]
    ncols = len(matrix[0]) if matrix else 0
    r = 0
    piv_cols = []
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(col)
        r += 1
    if any(row[-1] for row in m[r:]):
        return None
    if r != ncols:
        raise ValueError("matrix does not have full column rank")
    x = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        x[col] = m[i][-1]
    return x
