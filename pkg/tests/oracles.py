"""Independent reference computations used to cross-check the engine.

None of these reuse the straightening, coproduct or elimination code of the
package: they work directly on words in the free associative algebra, on
binomial formulas, or by brute-force enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb


# -- scalars ------------------------------------------------------------------

def _norm(c, p):
    if p is None:
        return Fraction(c)
    return int(c) % p


def _inv(c, p):
    if p is None:
        return 1 / Fraction(c)
    return pow(int(c), -1, p)


def _axpy(target: dict, source: dict, scale, p) -> None:
    for k, v in source.items():
        c = _norm(target.get(k, 0) + scale * v, p)
        if c:
            target[k] = c
        else:
            target.pop(k, None)


# -- free-associative ideal reduction -----------------------------------------

class IdealReductionOracle:
    """Normal forms in T(L)/I by linear algebra on the truncated ideal.

    I is spanned by u r v for words u, v and relators
    r = e_j e_i - e_i e_j - [e_j, e_i] (j > i), plus e_i^p - e_i^[p] in
    restricted mode.  Every element of I of degree <= D is such a
    combination of degree <= D, so eliminating non-sorted words (ranked above
    every sorted word) leaves the normal form in sorted words.
    """

    def __init__(self, P, max_degree: int, restricted: bool = False):
        self.P = P
        self.n = P.dim
        self.p = P.field.p
        self.restricted = restricted
        self.D = max_degree
        self.rows: dict = {}  # pivot word -> row
        relators = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                r = {(j, i): 1, (i, j): -1}
                for k, c in enumerate(P.structure(j, i)):
                    if c:
                        _axpy(r, {(k,): 1}, -c, self.p)
                relators.append(r)
        if restricted:
            for i in range(self.n):
                r = {(i,) * self.p: 1}
                for k, c in enumerate(P.pmap_value(i)):
                    if c:
                        _axpy(r, {(k,): 1}, -c, self.p)
                relators.append(r)
        for r in relators:
            top = max(len(w) for w in r)
            for a in range(self.D - top + 1):
                for b in range(self.D - top - a + 1):
                    for u in product(range(self.n), repeat=a):
                        for v in product(range(self.n), repeat=b):
                            self._insert({u + w + v: c for w, c in r.items()})

    def _standard(self, w: tuple) -> bool:
        if any(a > b for a, b in zip(w, w[1:])):
            return False
        if self.restricted:
            return all(w.count(i) < self.p for i in set(w))
        return True

    def _key(self, w: tuple):
        return (0 if self._standard(w) else 1, len(w), w)

    def _reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        while True:
            pivots = [w for w in vec if w in self.rows]
            if not pivots:
                return vec
            w = max(pivots, key=self._key)
            row = self.rows[w]
            _axpy(vec, row, -vec[w] * _inv(row[w], self.p), self.p)

    def _insert(self, vec: dict) -> None:
        vec = {w: _norm(c, self.p) for w, c in vec.items() if _norm(c, self.p)}
        vec = self._reduce(vec)
        if vec:
            self.rows[max(vec, key=self._key)] = vec

    def normal_form(self, word: tuple) -> dict:
        """{exponent vector: coefficient} for the class of ``word``."""
        if len(word) > self.D:
            raise ValueError("word longer than the truncation degree")
        out = {}
        for w, c in self._reduce({tuple(word): 1}).items():
            if not self._standard(w):
                raise AssertionError(f"non-sorted word {w} survived reduction")
            m = tuple(w.count(i) for i in range(self.n))
            out[m] = c
        return out

    def multiply_monomials(self, a: tuple, b: tuple) -> dict:
        word = tuple(i for i, k in enumerate(a) for _ in range(k))
        word += tuple(i for i, k in enumerate(b) for _ in range(k))
        return self.normal_form(word)


# -- coproduct ----------------------------------------------------------------

def binomial_letter_coproduct(letter, p=None) -> dict:
    """Closed form of Delta on a PBW monomial or x power as {(left, right): c},
    words in the free product's alternating form."""
    kind, v = letter
    out = {}
    if kind == 1:
        for k in range(v + 1):
            left = ((1, k),) if k else ()
            right = ((1, v - k),) if v - k else ()
            c = _norm(comb(v, k), p)
            if c:
                out[(left, right)] = c
        return out
    for j in product(*(range(k + 1) for k in v)):
        c = 1
        for a, b in zip(v, j):
            c *= comb(a, b)
        c = _norm(c, p)
        if not c:
            continue
        rest = tuple(a - b for a, b in zip(v, j))
        left = ((0, tuple(j)),) if any(j) else ()
        right = ((0, rest),) if any(rest) else ()
        out[(left, right)] = c
    return out


# -- free Lie algebras --------------------------------------------------------

def _is_lyndon_brute(w: tuple) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_count_brute(alphabet: int, degree: int) -> int:
    return sum(1 for w in product(range(alphabet), repeat=degree) if _is_lyndon_brute(w))


def witt_brute(alphabet: int, degree: int) -> int:
    """Primitive necklaces, counted by orbit enumeration."""
    seen = set()
    count = 0
    for w in product(range(alphabet), repeat=degree):
        if w in seen:
            continue
        orbit = {w[i:] + w[:i] for i in range(degree)}
        seen |= orbit
        if len(orbit) == degree:
            count += 1
    return count


# -- Jacobi ----------------------------------------------------------------

def jacobi_defects(P) -> list:
    """All (i, j, k) with [[e_i,e_j],e_k] + cyclic != 0, from raw structure constants."""
    n, F = P.dim, P.field
    out = []
    for i, j, k in product(range(n), repeat=3):
        total = [0] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = P.structure(a, b)
            for l, cl in enumerate(inner):
                if cl:
                    for m, cm in enumerate(P.structure(l, c)):
                        total[m] += cl * cm
        if any(F.norm(t) for t in total):
            out.append((i, j, k))
    return out
