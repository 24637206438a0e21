"""The free product A = Q(L) * k[x] on alternating words.

A letter is ``(ENV, m)`` for a non-identity PBW monomial ``m`` or
``(XPOW, n)`` for ``x^n`` with ``n >= 1``.  A word is a tuple of letters
alternating between the two factors; the empty word is the unit.
"""

from __future__ import annotations

from itertools import product as iproduct

from .envelope import EnvElement, Envelope, ModeError, SparseElement, monomial_order
from .liealg import LieElement, add_term

ENV = 0
XPOW = 1


def letter_degree(letter) -> int:
    kind, v = letter
    return sum(v) if kind == ENV else v


def word_degree(word: tuple) -> int:
    return sum(letter_degree(l) for l in word)


def letter_order(letter):
    kind, v = letter
    if kind == ENV:
        return (0, monomial_order(v))
    return (1, v)


def word_order(word: tuple):
    """Graded, then by length, then lexicographic on letters."""
    return (word_degree(word), len(word), tuple(letter_order(l) for l in word))


def is_alternating(word: tuple) -> bool:
    for a, b in zip(word, word[1:]):
        if a[0] == b[0]:
            return False
    for kind, v in word:
        if kind == XPOW and v < 1:
            return False
        if kind == ENV and not any(v):
            return False
    return True


class FPElement(SparseElement):
    __slots__ = ()

    @property
    def degree(self) -> int:
        return max((word_degree(w) for w in self.terms), default=-1)


class FreeProduct:
    """Q(L) * k[x] over a given enveloping algebra."""

    def __init__(self, env: Envelope):
        self.env = env
        self.field = env.field
        self.P = env.P
        self._word_cache: dict = {}

    @classmethod
    def of(cls, P, mode: str | None = None) -> FreeProduct:
        return cls(Envelope(P, mode))

    @property
    def mode(self) -> str:
        return self.env.mode

    def __repr__(self):
        return f"<FreeProduct {self.mode} of {self.P!r} with x>"

    def __getstate__(self):
        return {"env": self.env, "field": self.field, "P": self.P, "_word_cache": {}}

    # -- construction ---------------------------------------------------

    def element(self, terms: dict) -> FPElement:
        out: dict = {}
        for w, c in terms.items():
            w = tuple(w)
            if not is_alternating(w):
                raise ValueError(f"word {w!r} is not in alternating normal form")
            add_term(out, w, self.field.coerce(c), self.field)
        return FPElement(self, out)

    def zero(self) -> FPElement:
        return FPElement(self, {})

    def one(self) -> FPElement:
        return FPElement(self, {(): 1})

    def scalar(self, c) -> FPElement:
        c = self.field.coerce(c)
        return FPElement(self, {(): c} if c else {})

    def word(self, w: tuple) -> FPElement:
        return self.element({tuple(w): 1})

    def x_gen(self) -> FPElement:
        return FPElement(self, {((XPOW, 1),): 1})

    def inject_env(self, a: EnvElement) -> FPElement:
        if a.algebra is not self.env:
            raise ModeError("element does not belong to this free product's Q(L)")
        terms = {}
        for m, c in a.terms.items():
            terms[((ENV, m),) if any(m) else ()] = c
        return FPElement(self, terms)

    def inject_lie(self, u: LieElement) -> FPElement:
        return self.inject_env(self.env.embed_lie(u))

    def generator(self, i: int) -> FPElement:
        return self.inject_env(self.env.generator(i))

    # -- multiplication ---------------------------------------------------

    def word_multiply(self, u: tuple, v: tuple) -> dict:
        """Normal form of the concatenation uv as ``{word: coeff}``."""
        if not u:
            return {v: 1}
        if not v:
            return {u: 1}
        key = (u, v)
        cached = self._word_cache.get(key)
        if cached is not None:
            return cached
        a, b = u[-1], v[0]
        if a[0] != b[0]:
            out = {u + v: 1}
        elif a[0] == XPOW:
            out = {u[:-1] + ((XPOW, a[1] + b[1]),) + v[1:]: 1}
        else:
            F = self.field
            out = {}
            for m, c in self.env._mono_times(a[1], b[1]).items():
                if any(m):
                    add_term(out, u[:-1] + ((ENV, m),) + v[1:], c, F)
                else:
                    # the merged letter collapsed to a scalar: join the neighbours
                    for w, d in self.word_multiply(u[:-1], v[1:]).items():
                        add_term(out, w, c * d, F)
        self._word_cache[key] = out
        return out

    def multiply(self, a: FPElement, b: FPElement) -> FPElement:
        self._check(a, b)
        F = self.field
        out: dict = {}
        for u, cu in a.terms.items():
            for v, cv in b.terms.items():
                for w, c in self.word_multiply(u, v).items():
                    add_term(out, w, cu * cv * c, F)
        return FPElement(self, out)

    def _check(self, *elts):
        for a in elts:
            if not isinstance(a, FPElement) or a.algebra is not self:
                raise ModeError("element does not belong to this free product")

    def power(self, a: FPElement, m: int) -> FPElement:
        if m < 0:
            raise ValueError("negative power")
        result = self.one()
        for _ in range(m):
            result = self.multiply(result, a)
        return result

    def commutator(self, a: FPElement, b: FPElement) -> FPElement:
        return self.multiply(a, b) - self.multiply(b, a)

    def truncate(self, a: FPElement, d: int) -> FPElement:
        return FPElement(self, {w: c for w, c in a.terms.items() if word_degree(w) <= d})

    def counit(self, a: FPElement):
        return a.terms.get((), 0)

    def basis(self, d: int) -> list[tuple]:
        """All alternating words of degree <= d, sorted by ``word_order``."""
        if d < 0:
            raise ValueError("degree must be non-negative")
        env_letters = [(ENV, m) for m in self.env.pbw_basis(d) if any(m)]
        x_letters = [(XPOW, k) for k in range(1, d + 1)]
        words = [()]
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                deg = word_degree(w)
                last = w[-1][0] if w else None
                for pool in (env_letters, x_letters):
                    if pool[0:1] and pool[0][0] == last:
                        continue
                    for l in pool:
                        if deg + letter_degree(l) <= d:
                            nxt.append(w + (l,))
            words.extend(nxt)
            frontier = nxt
        return sorted(words, key=word_order)

    def is_x_free(self, a: FPElement) -> bool:
        return all(kind == ENV for w in a.terms for kind, _ in w)

    # -- output -----------------------------------------------------------

    def format_letter(self, letter) -> str:
        kind, v = letter
        if kind == XPOW:
            return f"x^{v}"
        return self.env.format_monomial(v)

    def format_word(self, w: tuple) -> str:
        return "[" + " | ".join(self.format_letter(l) for l in w) + "]"

    def expression_word(self, w: tuple) -> str:
        return "*".join(self.format_letter(l) for l in w) if w else "1"

    def format(self, a: FPElement) -> str:
        """Re-parseable expression text for ``a``."""
        if not a.terms:
            return "0"
        parts = []
        for w in sorted(a.terms, key=word_order):
            parts.append(f"{self.field.format(a.terms[w])}*{self.expression_word(w)}")
        return " + ".join(parts)

    def serialize(self, a: FPElement) -> list:
        return [{"word": self.format_word(w), "coeff": self.field.format(a.terms[w])}
                for w in sorted(a.terms, key=word_order)]
