"""Seeded random elements and the algebraic law checks run on them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .envelope import EnvElement, Envelope
from .freeprod import FPElement, FreeProduct, word_degree
from .hopf import coassociator_sides, coproduct, counit_left, counit_right, tensor_multiply


def random_scalar(rng: random.Random, field):
    if field.p is not None:
        return rng.randrange(1, field.p)
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    return field.coerce(Fraction(num, rng.choice([1, 1, 2, 3])))


def random_env(E: Envelope, rng: random.Random, max_degree: int = 3, max_terms: int = 3) -> EnvElement:
    basis = E.pbw_basis(max_degree)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(basis)] = random_scalar(rng, E.field)
    return E.element(terms)


def random_fp(A: FreeProduct, rng: random.Random, max_degree: int = 3, max_terms: int = 3) -> FPElement:
    bases = A.__dict__.setdefault("_bases", {})
    if max_degree not in bases:
        bases[max_degree] = A.basis(max_degree)
    basis = bases[max_degree]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(basis)] = random_scalar(rng, A.field)
    return A.element(terms)


@dataclass
class LawResult:
    name: str
    cases: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_laws(A: FreeProduct, samples: int = 100, seed: int = 0, max_degree: int = 3) -> list[LawResult]:
    """Associativity (Q(L) and A), coproduct multiplicativity and
    coassociativity, counit laws and counit multiplicativity."""
    rng = random.Random(seed)
    E = A.env
    results = {name: LawResult(name) for name in (
        "env_multiply associativity", "fp_multiply associativity", "coproduct multiplicativity",
        "coproduct coassociativity", "counit laws", "counit multiplicativity")}

    def record(name, ok, *witness):
        r = results[name]
        r.cases += 1
        if not ok:
            r.failures.append(tuple(repr(w) for w in witness))

    for _ in range(samples):
        a, b, c = (random_env(E, rng, max_degree) for _ in range(3))
        record("env_multiply associativity", (a * b) * c == a * (b * c), a, b, c)
        record("counit multiplicativity",
               E.counit(a * b) == E.field.norm(E.counit(a) * E.counit(b)), a, b)

        u, v, w = (random_fp(A, rng, max_degree, 2) for _ in range(3))
        record("fp_multiply associativity", (u * v) * w == u * (v * w), u, v, w)
        record("coproduct multiplicativity",
               coproduct(u * v) == tensor_multiply(coproduct(u), coproduct(v)), u, v)
        left, right = coassociator_sides(u)
        record("coproduct coassociativity", left == right, u)
        du = coproduct(u)
        record("counit laws", counit_left(du) == u and counit_right(du) == u, u)
    return list(results.values())


def degree_preserved(a: FPElement) -> bool:
    """Every coproduct term of a word has pair-degree at most the word's degree
    (straightening inside a tensor factor can only lower it)."""
    A = a.algebra
    for w in a.terms:
        d = word_degree(w)
        for (u, v) in coproduct(A.word(w)).terms:
            if word_degree(u) + word_degree(v) > d:
                return False
    return True
