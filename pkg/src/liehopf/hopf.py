"""Coproduct, counit and primitivity on the free product A = Q(L) * k[x]."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .envelope import ModeError
from .freeprod import ENV, XPOW, FPElement, FreeProduct, word_degree, word_order
from .liealg import add_term
from .linalg import SubspaceBasis, kernel


def pair_order(key):
    u, v = key
    return (word_degree(u) + word_degree(v), word_order(u), word_order(v))


class TensorElement:
    """Element of A (x) A as a sparse map ``(word, word) -> scalar``."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeProduct, terms: dict | None = None):
        self.algebra = algebra
        self.terms = terms if terms is not None else {}

    def __add__(self, other: TensorElement) -> TensorElement:
        terms = dict(self.terms)
        for k, c in other.terms.items():
            add_term(terms, k, c, self.algebra.field)
        return TensorElement(self.algebra, terms)

    def __neg__(self):
        F = self.algebra.field
        return TensorElement(self.algebra, {k: F.norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list:
        return [(k, self.terms[k]) for k in sorted(self.terms, key=pair_order)]

    def format_term(self, key, coeff) -> str:
        A = self.algebra
        u, v = key
        return f"{A.field.format(coeff)}*({A.expression_word(u)} (x) {A.expression_word(v)})"

    def __repr__(self):
        if not self.terms:
            return "TensorElement(0)"
        return "TensorElement(" + " + ".join(self.format_term(k, c) for k, c in self.sorted_terms()) + ")"

    def serialize(self) -> list:
        A = self.algebra
        return [{"left": A.format_word(u), "right": A.format_word(v), "coeff": A.field.format(c)}
                for (u, v), c in self.sorted_terms()]


def simple_tensor(a: FPElement, b: FPElement) -> TensorElement:
    F = a.algebra.field
    terms: dict = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            add_term(terms, (u, v), cu * cv, F)
    return TensorElement(a.algebra, terms)


def tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    """(a (x) b)(c (x) d) = ac (x) bd, extended bilinearly."""
    A = s.algebra
    if t.algebra is not A:
        raise ModeError("tensors over different algebras")
    F = A.field
    out: dict = {}
    for (u1, u2), c in s.terms.items():
        for (v1, v2), d in t.terms.items():
            left = A.word_multiply(u1, v1)
            right = A.word_multiply(u2, v2)
            cd = c * d
            for w1, a in left.items():
                for w2, b in right.items():
                    add_term(out, (w1, w2), cd * a * b, F)
    return TensorElement(A, out)


def _generator_coproduct(A: FreeProduct, letter) -> TensorElement:
    return TensorElement(A, {((letter,), ()): 1, ((), (letter,)): 1})


def letter_coproduct(A: FreeProduct, letter) -> TensorElement:
    cache = A.__dict__.setdefault("_letter_coproducts", {})
    if letter in cache:
        return cache[letter]
    kind, v = letter
    result = TensorElement(A, {((), ()): 1})
    if kind == XPOW:
        gen = _generator_coproduct(A, (XPOW, 1))
        for _ in range(v):
            result = tensor_multiply(result, gen)
    else:
        n = len(v)
        for i, k in enumerate(v):
            unit = [0] * n
            unit[i] = 1
            gen = _generator_coproduct(A, (ENV, tuple(unit)))
            for _ in range(k):
                result = tensor_multiply(result, gen)
    cache[letter] = result
    return result


def word_coproduct(A: FreeProduct, word: tuple) -> TensorElement:
    cache = A.__dict__.setdefault("_word_coproducts", {})
    if word in cache:
        return cache[word]
    result = TensorElement(A, {((), ()): 1})
    for letter in word:
        result = tensor_multiply(result, letter_coproduct(A, letter))
    cache[word] = result
    return result


def coproduct(a: FPElement, d: int | None = None) -> TensorElement:
    """The algebra morphism with every Lie basis element and x primitive."""
    A = a.algebra
    if d is not None and a.degree > d:
        raise ValueError(f"element of degree {a.degree} exceeds the cap {d}")
    F = A.field
    out: dict = {}
    for w, c in a.terms.items():
        for key, d_ in word_coproduct(A, w).terms.items():
            add_term(out, key, c * d_, F)
    return TensorElement(A, out)


def primitivity_defect(a: FPElement) -> TensorElement:
    """Delta(a) - a (x) 1 - 1 (x) a."""
    A = a.algebra
    one = A.one()
    return coproduct(a) - simple_tensor(a, one) - simple_tensor(one, a)


def is_primitive(a: FPElement) -> tuple[bool, tuple | None]:
    """(True, None), or (False, (left word, right word, coefficient)) for the
    largest surviving defect term."""
    defect = primitivity_defect(a)
    if not defect:
        return True, None
    key = max(defect.terms, key=pair_order)
    return False, (key[0], key[1], defect.terms[key])


def counit_left(t: TensorElement) -> FPElement:
    """(eps (x) id)(t)."""
    A = t.algebra
    terms: dict = {}
    for (u, v), c in t.terms.items():
        if not u:
            add_term(terms, v, c, A.field)
    return FPElement(A, terms)


def counit_right(t: TensorElement) -> FPElement:
    A = t.algebra
    terms: dict = {}
    for (u, v), c in t.terms.items():
        if not v:
            add_term(terms, u, c, A.field)
    return FPElement(A, terms)


def coassociator_sides(a: FPElement) -> tuple[dict, dict]:
    """((Delta (x) id) Delta a, (id (x) Delta) Delta a) as triple-word maps."""
    A = a.algebra
    F = A.field
    left: dict = {}
    right: dict = {}
    for (u, v), c in coproduct(a).terms.items():
        for (u1, u2), d in word_coproduct(A, u).terms.items():
            add_term(left, (u1, u2, v), c * d, F)
        for (v1, v2), d in word_coproduct(A, v).terms.items():
            add_term(right, (u, v1, v2), c * d, F)
    return left, right


def _defect_column(A: FreeProduct, element: FPElement) -> dict:
    element.algebra = A
    return primitivity_defect(element).terms


def defect_columns(elements: list[FPElement], workers: int = 1) -> list[dict]:
    """Defect of each element; with ``workers > 1`` columns are built in a
    process pool and returned in input order."""
    if workers <= 1 or len(elements) < 2:
        return [primitivity_defect(e).terms for e in elements]
    A = elements[0].algebra
    plain = [FPElement(None, e.terms) for e in elements]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(plain) // (4 * workers))
        return list(pool.map(partial(_defect_column, A), plain, chunksize=chunk))


def primitive_subspace(A: FreeProduct, ambient: list[tuple], d: int | None = None,
                       workers: int = 1) -> SubspaceBasis:
    """Kernel of the defect map on the span of the ambient words."""
    if d is not None and any(word_degree(w) > d for w in ambient):
        raise ValueError("ambient word above the degree cap")
    elements = [A.word(w) for w in ambient]
    columns = defect_columns(elements, workers)
    rels = kernel(columns, A.field, pair_order)
    return SubspaceBasis.span(A.field, ambient, rels)


def env_ambient(A: FreeProduct, d: int, constantless: bool = False) -> list[tuple]:
    """PBW monomials of degree <= d as one-letter words of A."""
    words = []
    for m in A.env.pbw_basis(d):
        if any(m):
            words.append(((ENV, m),))
        elif not constantless:
            words.append(())
    return words


def subspace_elements(A: FreeProduct, space: SubspaceBasis) -> list[FPElement]:
    out = []
    for row in space.rows:
        terms: dict = {}
        for i, c in row.items():
            add_term(terms, space.ambient[i], c, A.field)
        out.append(FPElement(A, terms))
    return out
