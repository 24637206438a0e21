"""Exact sparse elimination over Q or F_p.

Vectors are dicts ``key -> scalar``.  Every space carries a total order on
keys; a row's pivot is its largest key.  Over Q rows are kept as primitive
integer vectors (fraction-free elimination with content removal), over F_p
pivots are normalised to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Hashable, Sequence

from .liealg import FieldSpec, add_term


def _clear_denominators(vec: dict) -> tuple[dict, int]:
    den = 1
    for c in vec.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    if den == 1:
        return {k: int(c) for k, c in vec.items()}, 1
    return {k: int(c * den) for k, c in vec.items()}, den


def _primitive(vec: dict, *others: dict) -> None:
    """Divide integer vectors in place by the gcd of all their entries."""
    g = 0
    for v in (vec, *others):
        for c in v.values():
            g = gcd(g, c)
            if g == 1:
                return
    if g > 1:
        for v in (vec, *others):
            for k in v:
                v[k] //= g


class EchelonSpace:
    """Incrementally maintained row-echelon basis of a subspace.

    ``order`` maps keys to sortable values.  With an order compatible with
    a filtration degree, the rows whose pivot has degree <= k span the
    intersection of the subspace with the degree-<= k piece.
    """

    def __init__(self, field: FieldSpec, order: Callable[[Hashable], object] = lambda k: k):
        self.field = field
        self.order = order
        self.rows: dict = {}  # pivot key -> row (dict)
        self.tags: dict = {}  # pivot key -> tracked combination (dict)

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _pivot(self, vec: dict):
        return max(vec, key=self.order)

    def _prepare(self, vec: dict, tag: dict | None = None):
        vec = {k: c for k, c in vec.items() if c}
        p = self.field.p
        if p is None:
            vec, den = _clear_denominators(vec)
            if tag is not None:
                tag, tden = _clear_denominators({k: c * den for k, c in tag.items() if c})
                if tden != 1:
                    vec = {k: c * tden for k, c in vec.items()}
            return vec, tag
        vec = {k: c % p for k, c in vec.items() if c % p}
        if tag is not None:
            tag = {k: c % p for k, c in tag.items() if c % p}
        return vec, tag

    def _eliminate(self, vec: dict, tag: dict | None, key) -> None:
        row, rtag = self.rows[key], self.tags[key]
        p = self.field.p
        c = vec[key]
        if p is None:
            a = row[key]
            # vec <- a*vec - c*row
            if a != 1:
                for k in vec:
                    vec[k] *= a
                if tag is not None:
                    for k in tag:
                        tag[k] *= a
            for k, r in row.items():
                v = vec.get(k, 0) - c * r
                if v:
                    vec[k] = v
                else:
                    vec.pop(k, None)
            if tag is not None:
                for k, r in rtag.items():
                    v = tag.get(k, 0) - c * r
                    if v:
                        tag[k] = v
                    else:
                        tag.pop(k, None)
                _primitive(vec, tag)
            else:
                _primitive(vec)
        else:
            for k, r in row.items():
                v = (vec.get(k, 0) - c * r) % p
                if v:
                    vec[k] = v
                else:
                    vec.pop(k, None)
            if tag is not None:
                for k, r in rtag.items():
                    v = (tag.get(k, 0) - c * r) % p
                    if v:
                        tag[k] = v
                    else:
                        tag.pop(k, None)

    def _reduce(self, vec: dict, tag: dict | None = None, full: bool = True) -> None:
        """Eliminate pivot keys from ``vec`` (all of them when ``full``,
        else just until the leading key is not a pivot)."""
        rows = self.rows
        if not full:
            while vec:
                key = self._pivot(vec)
                if key not in rows:
                    return
                self._eliminate(vec, tag, key)
            return
        while True:
            hits = [k for k in vec if k in rows]
            if not hits:
                return
            self._eliminate(vec, tag, max(hits, key=self.order))

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` modulo the space, up to a nonzero scalar over Q."""
        vec, _ = self._prepare(vec)
        self._reduce(vec)
        return vec

    def contains(self, vec: dict) -> bool:
        vec, _ = self._prepare(vec)
        self._reduce(vec, full=False)
        return not vec

    def add(self, vec: dict, tag: dict | None = None) -> dict | None:
        """Insert ``vec``.  Returns None if it was independent, else the
        tracked combination (of ``tag`` and earlier tags) that reduced to zero."""
        vec, tag = self._prepare(vec, tag)
        self._reduce(vec, tag, full=False)
        if not vec:
            return tag if tag is not None else {}
        key = self._pivot(vec)
        if self.field.p is not None:
            inv = pow(vec[key], -1, self.field.p)
            vec = {k: c * inv % self.field.p for k, c in vec.items()}
            if tag is not None:
                tag = {k: c * inv % self.field.p for k, c in tag.items()}
        elif vec[key] < 0:
            vec = {k: -c for k, c in vec.items()}
            if tag is not None:
                tag = {k: -c for k, c in tag.items()}
        self.rows[key] = vec
        self.tags[key] = tag if tag is not None else {}
        return None

    def pivots(self) -> list:
        return sorted(self.rows, key=self.order, reverse=True)

    def reduced_rows(self) -> list[dict]:
        """Reduced echelon rows (pivot coefficient 1, pivot keys cleared
        from all other rows), ordered by decreasing pivot."""
        F = self.field
        out: dict = {}
        for key in sorted(self.rows, key=self.order):
            row = dict(self.rows[key])
            lead = row[key]
            row = {k: F.div(F.coerce(c), F.coerce(lead)) for k, c in row.items()}
            for k in [k for k in row if k != key and k in out]:
                c = row[k]
                for kk, r in out[k].items():
                    add_term(row, kk, -c * r, F)
            out[key] = row
        return [out[k] for k in sorted(out, key=self.order, reverse=True)]


def kernel(images: Sequence[dict], field: FieldSpec, order: Callable = lambda k: k) -> list[dict]:
    """Basis of ``{c : sum_i c_i images[i] = 0}`` as dicts ``index -> scalar``."""
    space = EchelonSpace(field, order)
    relations = []
    for i, img in enumerate(images):
        rel = space.add(img, {i: 1})
        if rel is not None:
            relations.append({k: field.coerce(c) for k, c in rel.items()})
    return relations


@dataclass
class SubspaceBasis:
    """A subspace of the span of ``ambient``, stored in reduced echelon form.

    Rows are dicts over ambient indices; the pivot of a row is its largest
    index, so with a degree-sorted ambient the rows with small pivots are the
    low-filtration part.
    """

    field: FieldSpec
    ambient: list
    rows: list

    @classmethod
    def span(cls, field: FieldSpec, ambient: Sequence, vectors: Sequence[dict]) -> SubspaceBasis:
        space = EchelonSpace(field)
        for v in vectors:
            space.add(v)
        return cls(field, list(ambient), space.reduced_rows())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vec: dict) -> bool:
        space = EchelonSpace(self.field)
        for r in self.rows:
            space.add(r)
        return space.contains(vec)

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (self.field == other.field and self.ambient == other.ambient
                and self.rows == other.rows)

    def __le__(self, other: SubspaceBasis) -> bool:
        return all(other.contains(r) for r in self.rows)

    def vectors(self) -> list[list[tuple]]:
        """Rows as lists of ``(ambient item, coefficient)`` pairs."""
        return [[(self.ambient[i], c) for i, c in sorted(r.items())] for r in self.rows]
