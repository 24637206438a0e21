"""Enveloping algebras U(L) and U_p(L) on a PBW basis.

Monomials are exponent tuples in the presentation's basis order.  Products
are brought to normal form by straightening: a generator ``e_g`` placed in
front of a sorted monomial whose first letter ``e_i`` has ``i < g`` is moved
past it via ``e_g e_i = e_i e_g + [e_g, e_i]``.  In restricted mode an
exponent reaching ``p`` is replaced at once by ``e_i^[p]``.
"""

from __future__ import annotations

from itertools import product as iproduct
from math import comb

from .liealg import FieldSpec, LieElement, LiePresentation, ValidationReport, add_term, matpow


class ModeError(ValueError):
    """Requested algebra mode is not available for the presentation."""


class PMapError(ValueError):
    """A p-th power left the Lie algebra; the presentation's p-map is invalid."""


class SparseElement:
    """Shared linear structure of sparse algebra elements.

    ``terms`` maps basis keys to nonzero canonical scalars and must not be
    mutated after construction.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = terms if terms is not None else {}

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def _new(self, terms):
        return type(self)(self.algebra, terms)

    def _coerce_other(self, other):
        if isinstance(other, SparseElement):
            if other.algebra is not self.algebra:
                raise ModeError("elements live in different algebras")
            return other
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            add_term(terms, k, c, self.field)
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({k: F.norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        if not c:
            return self._new({})
        return self._new({k: F.norm(c * v) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SparseElement):
            return self.algebra.multiply(self, self._coerce_other(other))
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, m: int):
        return self.algebra.power(self, m)

    def __eq__(self, other):
        if isinstance(other, SparseElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"{type(self).__name__}({self.algebra.format(self)})"

    def coefficient(self, key):
        return self.terms.get(key, 0)


class EnvElement(SparseElement):
    __slots__ = ()

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)


def monomial_order(m: tuple):
    """Graded order; within a degree, e_0 > e_1 > ... lexicographically."""
    return (sum(m), tuple(-a for a in m))


class Envelope:
    """Q(L): the full enveloping algebra, or U_p(L) in restricted mode."""

    def __init__(self, P: LiePresentation, mode: str | None = None):
        if mode is None:
            mode = "restricted" if P.restricted else "full"
        if mode not in ("full", "restricted"):
            raise ModeError(f"unknown mode {mode!r}")
        if mode == "restricted" and (P.field.p is None or P.pmap is None):
            raise ModeError("restricted mode needs a prime field and a p-map")
        self.P = P
        self.mode = mode
        self.field = P.field
        self.n = P.dim
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self.identity_monomial = (0,) * self.n

    @property
    def restricted(self) -> bool:
        return self.mode == "restricted"

    def __repr__(self):
        return f"<Envelope {self.mode} of {self.P!r}>"

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_gen_cache"] = {}
        state["_mono_cache"] = {}
        return state

    # -- construction ---------------------------------------------------

    def element(self, terms: dict) -> EnvElement:
        out: dict = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.n or min(m, default=0) < 0:
                raise ValueError(f"bad exponent vector {m!r}")
            if self.restricted and max(m, default=0) >= self.P.p:
                raise ValueError(f"exponent vector {m!r} is not restricted-normal")
            add_term(out, m, self.field.coerce(c), self.field)
        return EnvElement(self, out)

    def zero(self) -> EnvElement:
        return EnvElement(self, {})

    def one(self) -> EnvElement:
        return EnvElement(self, {self.identity_monomial: 1})

    def scalar(self, c) -> EnvElement:
        c = self.field.coerce(c)
        return EnvElement(self, {self.identity_monomial: c} if c else {})

    def monomial(self, m: tuple) -> EnvElement:
        return self.element({tuple(m): 1})

    def generator(self, i: int) -> EnvElement:
        m = [0] * self.n
        m[i] = 1
        return EnvElement(self, {tuple(m): 1})

    def embed_lie(self, u: LieElement) -> EnvElement:
        """Inclusion L -> Q(L)."""
        if len(u) != self.n:
            raise ValueError("Lie element has the wrong dimension")
        terms = {}
        for i, c in enumerate(u):
            c = self.field.norm(c)
            if c:
                m = [0] * self.n
                m[i] = 1
                terms[tuple(m)] = c
        return EnvElement(self, terms)

    # -- straightening --------------------------------------------------

    def _lie_terms(self, u: LieElement):
        return [(i, c) for i, c in enumerate(u) if c]

    def _gen_times(self, g: int, m: tuple) -> dict:
        """Normal form of e_g * m for a sorted monomial m."""
        key = (g, m)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached
        F = self.field
        first = next((i for i, a in enumerate(m) if a), self.n)
        out: dict = {}
        if g <= first:
            mm = list(m)
            mm[g] += 1
            if self.restricted and mm[g] == self.P.p:
                # e_g^p * rest -> e_g^[p] * rest
                mm[g] = 0
                rest = tuple(mm)
                for l, c in self._lie_terms(self.P.pmap_value(g)):
                    for mono, d in self._gen_times(l, rest).items():
                        add_term(out, mono, c * d, F)
            else:
                out[tuple(mm)] = 1
        else:
            # e_g e_i m' = e_i (e_g m') + [e_g, e_i] m'
            i = first
            mm = list(m)
            mm[i] -= 1
            rest = tuple(mm)
            for mono, c in self._gen_times(g, rest).items():
                for mono2, d in self._gen_times(i, mono).items():
                    add_term(out, mono2, c * d, F)
            for l, c in self._lie_terms(self.P.structure(g, i)):
                for mono, d in self._gen_times(l, rest).items():
                    add_term(out, mono, c * d, F)
        self._gen_cache[key] = out
        return out

    def _mono_times(self, a: tuple, b: tuple) -> dict:
        key = (a, b)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        F = self.field
        current = {b: 1}
        for g in reversed([i for i, k in enumerate(a) for _ in range(k)]):
            nxt: dict = {}
            for mono, c in current.items():
                for mono2, d in self._gen_times(g, mono).items():
                    add_term(nxt, mono2, c * d, F)
            current = nxt
        self._mono_cache[key] = current
        return current

    def multiply(self, a: EnvElement, b: EnvElement) -> EnvElement:
        self._check(a, b)
        F = self.field
        out: dict = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                for m, c in self._mono_times(ma, mb).items():
                    add_term(out, m, ca * cb * c, F)
        return EnvElement(self, out)

    def _check(self, *elts):
        for a in elts:
            if not isinstance(a, EnvElement) or a.algebra is not self:
                raise ModeError("element does not belong to this enveloping algebra")

    def power(self, a: EnvElement, m: int) -> EnvElement:
        if m < 0:
            raise ValueError("negative power")
        result = self.one()
        base = a
        while m:
            if m & 1:
                result = self.multiply(result, base)
            m >>= 1
            if m:
                base = self.multiply(base, base)
        return result

    def counit(self, a: EnvElement):
        return a.terms.get(self.identity_monomial, 0)

    def constantless_part(self, a: EnvElement) -> EnvElement:
        terms = dict(a.terms)
        terms.pop(self.identity_monomial, None)
        return EnvElement(self, terms)

    def pbw_basis(self, d: int) -> list[tuple]:
        """Exponent vectors of total degree <= d, in ``monomial_order``."""
        if d < 0:
            raise ValueError("degree must be non-negative")
        top = d if not self.restricted else min(d, self.P.p - 1)
        out = [m for m in iproduct(range(top + 1), repeat=self.n) if sum(m) <= d]
        return sorted(out, key=monomial_order)

    def to_lie(self, a: EnvElement) -> LieElement:
        """Read an element of degree <= 1 with zero counit back as a Lie element."""
        if a.degree > 1 or self.counit(a):
            raise PMapError(f"{self.format(a)} is not in L")
        v = [0] * self.n
        for m, c in a.terms.items():
            v[m.index(1)] = c
        return tuple(v)

    def pmap_apply(self, u: LieElement) -> LieElement:
        """u^[p], computed as the p-th power of u in U_p(L)."""
        if not self.restricted:
            raise ModeError("pmap_apply needs restricted mode")
        return self.to_lie(self.power(self.embed_lie(u), self.P.p))

    # -- output -----------------------------------------------------------

    def format_monomial(self, m: tuple) -> str:
        parts = [f"{self.P.basis_names[i]}^{k}" for i, k in enumerate(m) if k]
        return "*".join(parts) if parts else "1"

    def format(self, a: EnvElement) -> str:
        if not a.terms:
            return "0"
        parts = []
        for m in sorted(a.terms, key=monomial_order):
            parts.append(f"{self.field.format(a.terms[m])}*{self.format_monomial(m)}")
        return " + ".join(parts)

    def serialize(self, a: EnvElement) -> list:
        """(exponent vector, scalar string) pairs in graded order."""
        return [[list(m), self.field.format(a.terms[m])]
                for m in sorted(a.terms, key=monomial_order)]


def restricted_count(n: int, p: int, d: int) -> int:
    """Number of exponent vectors in [0, p)^n with sum <= d."""
    return sum(1 for m in iproduct(range(min(p, d + 1)), repeat=n) if sum(m) <= d)


def full_count(n: int, d: int) -> int:
    return comb(n + d, d)


def jacobson_extension(P: LiePresentation, u: LieElement) -> LieElement:
    """u^[p] from the basis values via sum c_i^p e_i^[p] + (u^p - sum (c_i e_i)^p),
    the correction term computed in the full enveloping algebra."""
    p = P.field.p
    full = Envelope(P, "full")
    F = P.field
    correction = full.power(full.embed_lie(u), p)
    for i, c in enumerate(u):
        if c:
            correction = correction - full.power(full.generator(i), p).scale(pow(c, p, p))
    out = list(full.to_lie(correction))
    for i, c in enumerate(u):
        if c:
            for k, v in enumerate(P.pmap_value(i)):
                out[k] = F.norm(out[k] + pow(c, p, p) * v)
    return tuple(out)


def validate_pmap(P: LiePresentation) -> ValidationReport:
    """Check the restricted axioms on the presentation's p-map.

    Categories: ``ad`` for ad(e_i^[p]) != (ad e_i)^p; ``scaling`` for a
    declared value on a multiple c*e_i differing from c^p e_i^[p];
    ``additivity`` when (e_i+e_j)^[p] - e_i^[p] - e_j^[p] (from a declared
    value, or else from p-th powers in U_p(L)) differs from
    (e_i+e_j)^p - e_i^p - e_j^p in U(L), and likewise for declared values on
    other vectors.
    """
    if P.field.p is None:
        raise ModeError("p-map validation needs a prime field")
    if P.pmap is None:
        raise ModeError("presentation has no p-map")
    p, F, n = P.field.p, P.field, P.dim
    names = P.basis_names
    violations = []
    info = []
    for i in range(n):
        lhs = P.ad_matrix(P.pmap_value(i))
        rhs = matpow(P.ad_matrix(P.basis_vector(i)), p, F)
        if lhs != rhs:
            violations.append({"kind": "ad", "basis": names[i]})

    declared = {}
    for vector, value in P.pmap_claims:
        declared[vector] = value
        support = [k for k, c in enumerate(vector) if c]
        if len(support) == 1:
            k = support[0]
            c = vector[k]
            expected = P.scale(pow(c, p, p), P.pmap_value(k))
            if value != expected:
                violations.append({"kind": "scaling", "vector": P.format_element(vector),
                                   "declared": P.format_element(value),
                                   "expected": P.format_element(expected)})
    if not any(len([c for c in v if c]) == 1 for v, _ in P.pmap_claims):
        info.append("scaling (c u)^[p] = c^p u^[p] holds by construction from basis values")

    full = Envelope(P, "full")
    restricted = Envelope(P, "restricted")

    def full_defect(u):
        # u^p - sum (c_i e_i)^p in U(L), the Lie-word part of the Jacobson formula
        acc = full.power(full.embed_lie(u), p)
        for k, c in enumerate(u):
            if c:
                acc = acc - full.power(full.generator(k), p).scale(pow(c, p, p))
        return acc

    def base_part(u):
        out = P.zero()
        for k, c in enumerate(u):
            if c:
                out = P.add(out, P.scale(pow(c, p, p), P.pmap_value(k)))
        return out

    checks = []
    for i in range(n):
        for j in range(i + 1, n):
            checks.append(P.add(P.basis_vector(i), P.basis_vector(j)))
    for vector, _ in P.pmap_claims:
        if len([c for c in vector if c]) > 1 and vector not in checks:
            checks.append(vector)
    for u in checks:
        if u in declared:
            value = declared[u]
        else:
            try:
                value = restricted.pmap_apply(u)
            except PMapError as exc:
                violations.append({"kind": "additivity", "vector": P.format_element(u),
                                   "reason": str(exc)})
                continue
        lhs = full.embed_lie(P.sub(value, base_part(u)))
        rhs = full_defect(u)
        if lhs != rhs:
            violations.append({"kind": "additivity", "vector": P.format_element(u),
                               "value": P.format_element(value)})
    return ValidationReport(not violations, violations, info)
