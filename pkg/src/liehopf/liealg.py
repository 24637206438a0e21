"""Exact scalars, finite-dimensional Lie algebra presentations and Lyndon words."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class PresentationError(ValueError):
    """Malformed presentation input (as opposed to a failed axiom check)."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p.

    Rational scalars are ``int`` or ``Fraction``; residues are ints in [0, p).
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise PresentationError(f"modulus {self.p} is not a prime below 2^31")

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime-field"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    zero = 0
    one = 1

    def coerce(self, value):
        if self.p is None:
            if isinstance(value, Fraction):
                return value.numerator if value.denominator == 1 else value
            if isinstance(value, int):
                return value
            raise TypeError(f"cannot coerce {value!r} to an exact rational")
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} to F_{self.p}")

    def norm(self, value):
        """Canonical form of a sum/product of already canonical scalars."""
        if self.p is None:
            if isinstance(value, Fraction) and value.denominator == 1:
                return value.numerator
            return value
        return value % self.p

    def inv(self, value):
        if self.p is None:
            if value == 0:
                raise ZeroDivisionError("inverse of zero")
            return self.norm(Fraction(1) / value)
        return pow(value, -1, self.p)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def parse(self, text: str):
        text = str(text).strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))

    def format(self, value) -> str:
        return str(value)

    def elements(self) -> range:
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.p)

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> FieldSpec:
        if obj == "Q":
            return cls()
        if isinstance(obj, dict) and set(obj) == {"Fp"}:
            return cls(int(obj["Fp"]))
        raise PresentationError(f"unknown field {obj!r}")


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def add_term(terms: dict, key, coeff, field: FieldSpec) -> None:
    """terms[key] += coeff, pruning zeros."""
    value = field.norm(terms.get(key, 0) + coeff)
    if value:
        terms[key] = value
    else:
        terms.pop(key, None)


@dataclass
class ValidationReport:
    ok: bool
    violations: list = dc_field(default_factory=list)
    info: list = dc_field(default_factory=list)

    def to_dict(self):
        return {"ok": self.ok, "violations": self.violations, "info": self.info}


LieElement = tuple  # length-n tuple of canonical scalars


@dataclass(frozen=True, eq=False)
class LiePresentation:
    """Basis names plus structure constants ``[e_i, e_j]`` stored for ``i < j``.

    ``brackets`` maps ``(i, j)`` to a dense coefficient tuple; absent pairs
    bracket to zero.  ``pmap`` maps a basis index to ``e_i^[p]``; indices left
    out of a present p-map are taken to map to zero.  ``pmap_claims`` holds
    extra declared p-map values on non-basis vectors, which ``validate_pmap``
    audits against the extension determined by the basis values.
    """

    field: FieldSpec
    basis_names: tuple
    brackets: dict
    pmap: dict | None = None
    pmap_claims: tuple = ()
    conflicts: tuple = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.basis_names)
        if n == 0:
            raise PresentationError("presentation needs a non-empty basis")
        if len(set(self.basis_names)) != n:
            raise PresentationError("basis names must be distinct")
        if "x" in self.basis_names:
            raise PresentationError("'x' is reserved for the adjoined variable")
        for (i, j), value in self.brackets.items():
            if not (0 <= i < j < n):
                raise PresentationError(f"bracket index pair ({i}, {j}) out of range")
            if len(value) != n:
                raise PresentationError(f"bracket value for ({i}, {j}) has wrong length")
        if self.pmap is not None:
            if self.field.p is None:
                raise PresentationError("a p-map needs a prime field")
            for i, value in self.pmap.items():
                if not 0 <= i < n:
                    raise PresentationError(f"p-map index {i} out of range")
                if len(value) != n:
                    raise PresentationError(f"p-map value for {i} has wrong length")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def p(self) -> int | None:
        return self.field.p

    @property
    def restricted(self) -> bool:
        return self.pmap is not None

    def __repr__(self):
        label = self.name or "L"
        return f"<LiePresentation {label} dim={self.dim} over {self.field}>"

    # -- elements -------------------------------------------------------

    def zero(self) -> LieElement:
        return (0,) * self.dim

    def basis_vector(self, i: int) -> LieElement:
        v = [0] * self.dim
        v[i] = 1
        return tuple(v)

    def element(self, coeffs: Sequence) -> LieElement:
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return tuple(self.field.coerce(c) for c in coeffs)

    def add(self, u: LieElement, v: LieElement) -> LieElement:
        self._check(u, v)
        return tuple(self.field.norm(a + b) for a, b in zip(u, v))

    def scale(self, c, u: LieElement) -> LieElement:
        return tuple(self.field.norm(c * a) for a in u)

    def sub(self, u: LieElement, v: LieElement) -> LieElement:
        return self.add(u, self.scale(-1, v))

    def _check(self, *elts):
        for u in elts:
            if len(u) != self.dim:
                raise ValueError(f"element of length {len(u)} does not live in a {self.dim}-dim algebra")

    def structure(self, i: int, j: int) -> LieElement:
        """``[e_i, e_j]`` for any ordered pair, by antisymmetry."""
        if i == j:
            return self.zero()
        if i < j:
            return self.brackets.get((i, j), self.zero())
        return self.scale(-1, self.brackets.get((j, i), self.zero()))

    def bracket(self, u: LieElement, v: LieElement) -> LieElement:
        self._check(u, v)
        out = [0] * self.dim
        F = self.field
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b or i == j:
                    continue
                c = self.structure(i, j)
                ab = a * b
                for k, ck in enumerate(c):
                    if ck:
                        out[k] = F.norm(out[k] + ab * ck)
        return tuple(out)

    def ad_matrix(self, u: LieElement) -> list[list]:
        """Matrix of ``ad u``; column ``j`` holds ``[u, e_j]``."""
        cols = [self.bracket(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def pmap_value(self, i: int) -> LieElement:
        if self.pmap is None:
            raise ValueError("presentation has no p-map")
        return self.pmap.get(i, self.zero())

    def format_element(self, u: LieElement) -> str:
        parts = []
        for name, c in zip(self.basis_names, u):
            if c:
                parts.append(f"{self.field.format(c)}*{name}")
        return " + ".join(parts) if parts else "0"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        F = self.field

        def sparse(v):
            return [[k, F.format(c)] for k, c in enumerate(v) if c]

        doc = {
            "field": F.to_json(),
            "basis": list(self.basis_names),
            "brackets": [
                {"i": i, "j": j, "value": sparse(v)}
                for (i, j), v in sorted(self.brackets.items())
                if any(v)
            ],
        }
        if self.name:
            doc["name"] = self.name
        if self.pmap is not None:
            doc["pmap"] = [{"i": i, "value": sparse(v)} for i, v in sorted(self.pmap.items())]
            for vector, value in self.pmap_claims:
                doc["pmap"].append({"vector": sparse(vector), "value": sparse(value)})
        return doc

    @classmethod
    def from_json(cls, doc: dict, name: str = "") -> LiePresentation:
        if not isinstance(doc, dict):
            raise PresentationError("presentation document must be an object")
        try:
            F = FieldSpec.from_json(doc["field"])
            names = tuple(str(b) for b in doc["basis"])
        except KeyError as exc:
            raise PresentationError(f"missing field {exc}") from None
        n = len(names)

        def index(raw):
            if isinstance(raw, str):
                if raw not in names:
                    raise PresentationError(f"unknown basis name {raw!r}")
                return names.index(raw)
            if not isinstance(raw, int) or isinstance(raw, bool) or not 0 <= raw < n:
                raise PresentationError(f"basis index {raw!r} out of range")
            return raw

        def dense(pairs):
            v = [0] * n
            try:
                for k, s in pairs:
                    k = index(k)
                    v[k] = F.norm(v[k] + F.parse(s))
            except (TypeError, ValueError) as exc:
                raise PresentationError(f"bad sparse vector {pairs!r}: {exc}") from None
            return tuple(v)

        brackets: dict = {}
        conflicts = []
        for entry in doc.get("brackets", []):
            i, j = index(entry["i"]), index(entry["j"])
            value = dense(entry.get("value", []))
            if i == j:
                if any(value):
                    conflicts.append({"pair": [names[i], names[j]], "reason": "nonzero self-bracket"})
                continue
            if i > j:
                i, j = j, i
                value = tuple(F.norm(-c) for c in value)
            if (i, j) in brackets and brackets[(i, j)] != value:
                conflicts.append({"pair": [names[i], names[j]], "reason": "inconsistent antisymmetric extension"})
                continue
            brackets[(i, j)] = value

        pmap = None
        claims = []
        if "pmap" in doc and doc["pmap"] is not None:
            if F.p is None:
                raise PresentationError("a p-map needs a prime field")
            pmap = {}
            for entry in doc["pmap"]:
                value = dense(entry.get("value", []))
                if "vector" in entry:
                    claims.append((dense(entry["vector"]), value))
                    continue
                i = index(entry["i"])
                if i in pmap and pmap[i] != value:
                    raise PresentationError(f"p-map given twice for {names[i]}")
                pmap[i] = value
        return cls(F, names, brackets, pmap, tuple(claims), tuple(conflicts),
                   name=str(doc.get("name", name)))

    @classmethod
    def load(cls, path) -> LiePresentation:
        from pathlib import Path

        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise PresentationError(f"{path}: not a JSON document ({exc})") from None
        return cls.from_json(doc, name=path.stem)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def make_presentation(field: FieldSpec, names: Iterable[str], brackets: dict,
                      pmap: dict | None = None, name: str = "") -> LiePresentation:
    """Build a presentation from name-keyed tables.

    ``brackets`` maps ``("h", "e")`` to ``{"e": 2}``; either order of the pair
    is accepted.  ``pmap`` maps ``"h"`` to ``{"h": 1}``.
    """
    names = tuple(names)
    doc = {
        "field": field.to_json(),
        "basis": list(names),
        "brackets": [
            {"i": a, "j": b, "value": [[k, str(c)] for k, c in v.items()]}
            for (a, b), v in brackets.items()
        ],
    }
    if pmap is not None:
        doc["pmap"] = [{"i": a, "value": [[k, str(c)] for k, c in v.items()]} for a, v in pmap.items()]
    if name:
        doc["name"] = name
    return LiePresentation.from_json(doc)


def validate_presentation(P: LiePresentation) -> ValidationReport:
    """Check the Jacobi identity on all basis triples.

    Triples with a repeated index hold automatically once the bracket is
    antisymmetric, so only ``i < j < k`` are tested.
    """
    violations = [dict(c, kind="antisymmetry") for c in P.conflicts]
    n = P.dim
    e = [P.basis_vector(i) for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        total = P.add(P.add(P.bracket(P.bracket(e[i], e[j]), e[k]),
                            P.bracket(P.bracket(e[j], e[k]), e[i])),
                      P.bracket(P.bracket(e[k], e[i]), e[j]))
        if any(total):
            names = P.basis_names
            violations.append({
                "kind": "jacobi",
                "triple": [names[i], names[j], names[k]],
                "value": P.format_element(total),
            })
    return ValidationReport(not violations, violations)


def matmul(A: list[list], B: list[list], field: FieldSpec) -> list[list]:
    n, m, r = len(A), len(B), len(B[0]) if B else 0
    return [[field.norm(sum(A[i][k] * B[k][j] for k in range(m))) for j in range(r)] for i in range(n)]


def matpow(A: list[list], e: int, field: FieldSpec) -> list[list]:
    n = len(A)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = A
    while e:
        if e & 1:
            result = matmul(result, base, field)
        base = matmul(base, base, field)
        e >>= 1
    return result


# -- Lyndon words -----------------------------------------------------------

def lyndon_words(alphabet_size: int, max_degree: int) -> list[tuple]:
    """All Lyndon words of length <= max_degree, in lexicographic order (Duval)."""
    if alphabet_size < 1 or max_degree < 1:
        raise ValueError("alphabet_size and max_degree must be positive")
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_degree:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()
    return out


def standard_bracketing(word: tuple):
    """Nested-pair bracketing from the standard factorization w = uv, v the
    longest proper Lyndon suffix."""
    if len(word) == 1:
        return word[0]
    for k in range(1, len(word)):
        if is_lyndon(word[k:]):
            return (standard_bracketing(word[:k]), standard_bracketing(word[k:]))
    raise ValueError(f"{word!r} is not a Lyndon word")


def is_lyndon(word: Sequence) -> bool:
    word = tuple(word)
    return bool(word) and all(word < word[k:] for k in range(1, len(word)))


def lyndon_basis(alphabet_size: int, max_degree: int) -> dict[int, list]:
    """Lyndon words with their standard bracketings, grouped by degree."""
    groups: dict[int, list] = {d: [] for d in range(1, max_degree + 1)}
    for w in lyndon_words(alphabet_size, max_degree):
        groups[len(w)].append((w, standard_bracketing(w)))
    return groups


def _mobius(n: int) -> int:
    result, q = 1, 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            result = -result
        q += 1
    return -result if n > 1 else result


def witt_dimension(alphabet_size: int, degree: int) -> int:
    """Dimension of the degree-``degree`` part of the free Lie algebra."""
    total = sum(_mobius(k) * alphabet_size ** (degree // k)
                for k in range(1, degree + 1) if degree % k == 0)
    return total // degree
