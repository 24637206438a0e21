"""Finite-degree verification that universal derivatives are L and universal endomorphisms are 0 and id.

Everything happens in the free product A = Q(L) * k[x].  An element ``a`` of
Q(L) is a universal derivative when ``[a, x]`` lies in the (restricted) Lie
subalgebra generated by L and x; a pair ``(a, b)`` gives a universal
endomorphism when ``a x b`` does.  Membership is decided two ways: by
primitivity of the coproduct, and by an explicit Lie closure.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct

import numpy as np

from .envelope import EnvElement, ModeError
from .freeprod import FPElement, FreeProduct, word_degree, word_order
from .hopf import defect_columns, env_ambient, is_primitive, pair_order, primitivity_defect
from .linalg import EchelonSpace, SubspaceBasis, kernel


class UnsupportedMode(ModeError):
    """No claim is made for this (field, mode) combination."""


def require_supported(A: FreeProduct) -> None:
    if A.mode == "full" and A.field.p is not None:
        raise UnsupportedMode(
            "plain (non-restricted) Lie algebras in positive characteristic: the "
            "derivative statement is not asserted there; use restricted mode")


@dataclass
class VerificationReport:
    theorem: str
    presentation: dict
    degree: int
    computed: dict = dc_field(default_factory=dict)
    expected: dict = dc_field(default_factory=dict)
    passed: bool = True
    checks: list = dc_field(default_factory=list)
    witnesses: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    wall_time: float = 0.0

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append({"name": name, "passed": bool(ok), "detail": detail})
        if not ok:
            self.passed = False
        return ok

    def to_dict(self, timing: bool = False) -> dict:
        doc = {
            "theorem": self.theorem,
            "presentation": self.presentation,
            "degree": self.degree,
            "passed": self.passed,
            "computed": self.computed,
            "expected": self.expected,
            "checks": self.checks,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }
        if timing:
            doc["wall_time"] = round(self.wall_time, 3)
        return doc

    def to_text(self, timing: bool = False) -> str:
        p = self.presentation
        lines = [
            f"{self.theorem}: {'PASS' if self.passed else 'FAIL'}",
            f"  algebra  {p['name'] or '?'} (dim {p['dim']}) over {p['field']}, {p['mode']} mode, degree {self.degree}",
        ]
        for key in sorted(set(self.computed) | set(self.expected)):
            lines.append(f"  {key:<28} computed {self.computed.get(key, '-')!s:<10} expected {self.expected.get(key, '-')}")
        width = max((len(c["name"]) for c in self.checks), default=0)
        for c in self.checks:
            mark = "ok  " if c["passed"] else "FAIL"
            lines.append(f"  [{mark}] {c['name']:<{width}}  {c['detail']}".rstrip())
        for w in self.witnesses:
            lines.append(f"  witness: {w}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        if timing:
            lines.append(f"  wall time {self.wall_time:.2f}s")
        return "\n".join(lines)


def summary(A: FreeProduct) -> dict:
    P = A.P
    return {"name": P.name, "dim": P.dim, "field": str(P.field), "mode": A.mode,
            "basis": list(P.basis_names)}


def _element(A: FreeProduct, ambient: list, row: dict) -> FPElement:
    return A.element({ambient[i]: c for i, c in row.items()})


def _witness(A: FreeProduct, label: str, element: FPElement, probe: FPElement) -> dict:
    ok, term = is_primitive(probe)
    doc = {"element": A.format(element), "probe": label}
    if not ok:
        u, v, c = term
        doc["defect_term"] = f"{A.field.format(c)}*({A.expression_word(u)} (x) {A.expression_word(v)})"
    return doc


# -- Lie closure oracle -----------------------------------------------------

class LieClosure:
    """Filtered basis of the (restricted) Lie subalgebra of A generated by L and x.

    Built by applying ad of the generators (and p-th powers in restricted
    mode) until nothing new of degree <= d appears.
    """

    def __init__(self, A: FreeProduct, d: int):
        if d < 1:
            raise ValueError("closure degree must be at least 1")
        self.A, self.d = A, d
        self.space = EchelonSpace(A.field, word_order)
        self.elements: list[FPElement] = []
        gens = [A.generator(i) for i in range(A.P.dim)] + [A.x_gen()]
        p = A.field.p if A.mode == "restricted" else None
        queue: deque = deque()

        def offer(el: FPElement):
            if el and el.degree <= d and self.space.add(el.terms) is None:
                self.elements.append(el)
                queue.append(el)

        for g in gens:
            offer(g)
        while queue:
            w = queue.popleft()
            w_free = A.is_x_free(w)
            for g in gens:
                if w.degree + g.degree <= d or (w_free and A.is_x_free(g)):
                    offer(A.commutator(g, w))
            if p is not None and (p * w.degree <= d or w_free):
                offer(A.power(w, p))

    @property
    def dim(self) -> int:
        return self.space.dim

    def degree_profile(self) -> dict[int, int]:
        """Dimension of each graded piece (closure in degree <= k modulo degree <= k-1)."""
        prof = {k: 0 for k in range(1, self.d + 1)}
        for key in self.space.rows:
            prof[word_degree(key)] += 1
        return prof

    def contains(self, a: FPElement) -> bool:
        if a.degree > self.d:
            raise ValueError(f"element of degree {a.degree} is above the closure degree {self.d}")
        return self.space.contains(a.terms)

    def subspace(self) -> SubspaceBasis:
        ambient = self.A.basis(self.d)
        index = {w: i for i, w in enumerate(ambient)}
        vecs = [{index[w]: c for w, c in el.terms.items()} for el in self.elements]
        return SubspaceBasis.span(self.A.field, ambient, vecs)


def adjoin_closure(A: FreeProduct, d: int) -> LieClosure:
    cache = A.__dict__.setdefault("_closures", {})
    if d not in cache:
        cache[d] = LieClosure(A, d)
    return cache[d]


def member_of_adjoin(A: FreeProduct, a: FPElement, d: int) -> bool:
    return adjoin_closure(A, d).contains(a)


# -- derivations --------------------------------------------------------------

def is_universal_derivative(A: FreeProduct, a: EnvElement, d: int | None = None):
    """(bool, witness) for [a, x] being primitive in A."""
    require_supported(A)
    if d is not None and a.degree + 1 > d:
        raise ValueError(f"degree budget {d} too small for an element of degree {a.degree}")
    probe = A.commutator(A.inject_env(a), A.x_gen())
    ok, term = is_primitive(probe)
    return ok, term


def _derivative_elements(A: FreeProduct, ambient: list) -> list[FPElement]:
    x = A.x_gen()
    return [A.commutator(A.word(w), x) for w in ambient]


def _derivative_kernel(A: FreeProduct, d: int, workers: int):
    require_supported(A)
    if d < 1:
        raise ValueError("degree must be at least 1")
    ambient = env_ambient(A, d, constantless=True)
    columns = defect_columns(_derivative_elements(A, ambient), workers)
    space = SubspaceBasis.span(A.field, ambient, kernel(columns, A.field, pair_order))
    lie = SubspaceBasis.span(
        A.field, ambient, [{i: 1} for i, w in enumerate(ambient) if word_degree(w) == 1])
    return space, lie


def universal_derivative_space(A: FreeProduct, d: int, workers: int = 1):
    """Kernel of a -> defect([a, x]) on constant-less PBW monomials of degree <= d.

    Returns ``(subspace, report)``; the report passes iff the kernel is L.
    """
    start = time.perf_counter()
    space, lie = _derivative_kernel(A, d, workers)
    report = VerificationReport("universal-derivatives", summary(A), d)
    report.computed = {"ambient_dim": len(space.ambient), "kernel_dim": space.dim}
    report.expected = {"ambient_dim": len(space.ambient), "kernel_dim": lie.dim}
    report.check("kernel equals L", space == lie, f"kernel dim {space.dim}, L dim {lie.dim}")
    report.wall_time = time.perf_counter() - start
    return space, report


def verify_derivations(A: FreeProduct, d: int, workers: int = 1,
                       expect_extra: list[EnvElement] = ()) -> VerificationReport:
    """Kernel of the derivation condition equals L, cross-checked by the closure oracle.

    ``expect_extra`` adds elements to the expected space; any that are not
    universal derivatives make the check fail with witnesses (negative control).
    """
    start = time.perf_counter()
    space, report = universal_derivative_space(A, d, workers)
    expected = SubspaceBasis.span(
        A.field, space.ambient, [{i: 1} for i, w in enumerate(space.ambient) if word_degree(w) == 1])
    ambient = space.ambient
    x = A.x_gen()
    if expect_extra:
        index = {w: i for i, w in enumerate(ambient)}
        vecs = [dict(r) for r in expected.rows]
        for extra in expect_extra:
            el = A.inject_env(A.env.constantless_part(extra))
            if el.degree > d:
                raise ValueError("expected element above the degree budget")
            vecs.append({index[w]: c for w, c in el.terms.items()})
        expected = SubspaceBasis.span(A.field, ambient, vecs)
        report.checks.clear()
        report.passed = True
        report.expected["kernel_dim"] = expected.dim
        report.check("kernel equals expected space", space == expected,
                     f"kernel dim {space.dim}, expected dim {expected.dim}")
        for row in expected.rows:
            if not space.contains(row):
                el = _element(A, ambient, row)
                report.witnesses.append(_witness(A, "[a, x]", el, A.commutator(el, x)))
    for row in space.rows:
        if not expected.contains(row):
            el = _element(A, ambient, row)
            report.witnesses.append({"element": A.format(el), "probe": "[a, x]",
                                     "reason": "primitive but outside the expected space"})

    closure = adjoin_closure(A, d + 1)
    kernel_members = all(closure.contains(A.commutator(el, x))
                         for el in (_element(A, ambient, r) for r in space.rows))
    report.check("kernel vectors pass the closure oracle", kernel_members)
    disagreements = []
    nonzero_defects = True
    for w in ambient:
        a = A.word(w)
        probe = A.commutator(a, x)
        prim = not primitivity_defect(probe)
        member = closure.contains(probe)
        if prim != member:
            disagreements.append(A.format(a))
        if not space.contains({ambient.index(w): 1}) and prim:
            nonzero_defects = False
    report.check("primitivity agrees with closure membership on the ambient",
                 not disagreements, ", ".join(disagreements))
    report.check("non-kernel ambient vectors have nonzero defect", nonzero_defects)
    report.computed["closure_dim"] = closure.dim
    report.wall_time = time.perf_counter() - start
    return report


verify_q11 = verify_derivations


# -- endomorphisms ----------------------------------------------------------

@dataclass
class EndoSpace:
    subspace: SubspaceBasis
    degenerate: bool
    product_degree: int

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _endo_space(A: FreeProduct, fixed: EnvElement, d: int, side: str, workers: int) -> EndoSpace:
    ambient = env_ambient(A, d)
    fixed_el = A.inject_env(fixed)
    x = A.x_gen()
    if side == "right":
        elements = [A.multiply(A.multiply(fixed_el, x), A.word(w)) for w in ambient]
    else:
        elements = [A.multiply(A.multiply(A.word(w), x), fixed_el) for w in ambient]
    columns = defect_columns(elements, workers)
    space = SubspaceBasis.span(A.field, ambient, kernel(columns, A.field, pair_order))
    return EndoSpace(space, not fixed.terms, max(fixed.degree, 0) + 1 + d)


def endo_right_space(A: FreeProduct, a: EnvElement, d: int, workers: int = 1) -> EndoSpace:
    """All b of degree <= d with a x b primitive, for fixed a."""
    return _endo_space(A, a, d, "right", workers)


def endo_left_space(A: FreeProduct, b: EnvElement, d: int, workers: int = 1) -> EndoSpace:
    """All a of degree <= d with a x b primitive, for fixed b."""
    return _endo_space(A, b, d, "left", workers)


def expected_endo_space(A: FreeProduct, fixed: EnvElement, d: int) -> SubspaceBasis:
    ambient = env_ambient(A, d)
    if not fixed.terms:
        vecs = [{i: 1} for i in range(len(ambient))]
    elif set(fixed.terms) == {A.env.identity_monomial}:
        vecs = [{ambient.index(()): 1}]
    else:
        vecs = []
    return SubspaceBasis.span(A.field, ambient, vecs)


def scalar_pair_scan(A: FreeProduct):
    """Over F_p, test a x b for every pair a, b in the span of 1 and L.

    Returns (mismatches, primitive_scalar_pairs, identity_pairs) where a
    mismatch is a pair whose primitivity disagrees with "a = 0, b = 0, or
    both scalar".
    """
    p = A.field.p
    ambient = env_ambient(A, 1)
    m = len(ambient)
    x = A.x_gen()
    defects = {}
    for i, u in enumerate(ambient):
        for j, v in enumerate(ambient):
            defects[(i, j)] = primitivity_defect(A.multiply(A.multiply(A.word(u), x), A.word(v))).terms
    keys = sorted({k for t in defects.values() for k in t}, key=pair_order)
    kidx = {k: r for r, k in enumerate(keys)}
    T = np.zeros((max(len(keys), 1), m, m), dtype=np.int64)
    for (i, j), t in defects.items():
        for k, c in t.items():
            T[kidx[k], i, j] = c % p
    vectors = np.array(list(iproduct(range(p), repeat=m)), dtype=np.int64)  # (p^m, m)
    one = ambient.index(())
    scalar = np.all(np.delete(vectors, one, axis=1) == 0, axis=1)
    nonzero = np.any(vectors != 0, axis=1)
    # B[k, i, b] = sum_j T[k, i, j] * b_j
    B = np.einsum("kij,bj->kib", T, vectors) % p
    mismatches = []
    prim_scalar = 0
    identity = 0
    for ai, avec in enumerate(vectors):
        image = np.einsum("i,kib->kb", avec, B) % p
        primitive = ~np.any(image != 0, axis=0)
        predicted = ~nonzero[ai] | ~nonzero | (scalar[ai] & scalar)
        bad = np.nonzero(primitive != predicted)[0]
        for bi in bad[:3]:
            mismatches.append((tuple(int(c) for c in avec), tuple(int(c) for c in vectors[bi])))
        if scalar[ai] and nonzero[ai]:
            hits = primitive & scalar & nonzero
            prim_scalar += int(hits.sum())
            lam = int(avec[one])
            identity += int(np.sum(hits & ((lam * vectors[:, one]) % p == 1)))
    return mismatches, prim_scalar, identity, ambient


def verify_endomorphisms(A: FreeProduct, d: int, workers: int = 1, scan: bool = True) -> VerificationReport:
    """Every PBW monomial a of degree 1..d forces b = 0, a = 1 forces b scalar;
    the same with sides swapped; plus an exhaustive pair scan over F_p."""
    start = time.perf_counter()
    if d < 0:
        raise ValueError("degree must be non-negative")
    report = VerificationReport("universal-endomorphisms", summary(A), d)
    if A.mode == "full" and A.field.p is not None:
        report.notes.append(
            "plain Lie algebra in positive characteristic: the expected outcome (only 0 and id) "
            "is taken from the statement made for Lie algebras regardless of characteristic")
    env = A.env
    fails = {"right": [], "left": []}
    for m in env.pbw_basis(d):
        a = env.monomial(m)
        expected = expected_endo_space(A, a, d)
        for side, fn in (("right", endo_right_space), ("left", endo_left_space)):
            got = fn(A, a, d, workers)
            if got.subspace != expected:
                fails[side].append(env.format(a))
                if got.subspace.dim:
                    row = got.subspace.rows[0]
                    other = _element(A, got.subspace.ambient, row)
                    report.witnesses.append({"fixed": env.format(a), "side": side,
                                             "partner": A.format(other)})
    n_monos = len(env.pbw_basis(d))
    report.computed["fixed_monomials"] = n_monos
    report.expected["fixed_monomials"] = n_monos
    report.check("a x b primitive forces b = 0 (or b scalar when a = 1)", not fails["right"],
                 ", ".join(fails["right"]))
    report.check("a x b primitive forces a = 0 (or a scalar when b = 1)", not fails["left"],
                 ", ".join(fails["left"]))
    if scan and A.field.p is not None:
        mismatches, prim_scalar, identity, ambient = scalar_pair_scan(A)
        p = A.field.p
        total = p ** (2 * len(ambient))
        report.computed["scan_pairs"] = total
        report.computed["primitive_nonzero_scalar_pairs"] = prim_scalar
        report.expected["primitive_nonzero_scalar_pairs"] = (p - 1) ** 2
        report.check("exhaustive scan: primitive only for zero or scalar pairs",
                     not mismatches and prim_scalar == (p - 1) ** 2,
                     f"{total} pairs over the span of 1 and L")
        for a, b in mismatches:
            report.witnesses.append({"scan_pair": [list(a), list(b)]})
        report.notes.append(
            f"{identity} of the scalar pairs (lam, mu) have lam*mu = 1 (the identity); the "
            "rest rescale by lam*mu, which is a Lie morphism only for lam*mu in {0, 1}")
    report.wall_time = time.perf_counter() - start
    return report


verify_q13 = verify_endomorphisms
