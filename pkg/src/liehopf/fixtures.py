"""Small presentations used throughout the test corpus and the CLI docs."""

from __future__ import annotations

from .liealg import GF, QQ, FieldSpec, LiePresentation, make_presentation


def sl2(field: FieldSpec = QQ, restricted: bool = False) -> LiePresentation:
    """Basis e, h, f with [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    pmap = None
    if restricted:
        pmap = {"e": {}, "h": {"h": 1}, "f": {}}
    name = "sl2" if field.p is None else f"sl2_F{field.p}"
    return make_presentation(field, "ehf",
                             {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
                             pmap, name=name)


def heisenberg(field: FieldSpec = QQ) -> LiePresentation:
    return make_presentation(field, "efz", {("e", "f"): {"z": 1}}, name="heisenberg")


def abelian(n: int, field: FieldSpec = QQ, names: str | None = None) -> LiePresentation:
    names = names or ("t" if n == 1 else "abcdefgh"[:n])
    return make_presentation(field, names, {}, name=f"abelian{n}")


def solvable2(field: FieldSpec = QQ) -> LiePresentation:
    """Non-abelian two-dimensional algebra: [h,e]=e."""
    return make_presentation(field, "eh", {("h", "e"): {"e": 1}}, name="solvable2")


def toral_f3() -> LiePresentation:
    """k t over F_3 with t^[3] = t."""
    return make_presentation(GF(3), "t", {}, {"t": {"t": 1}}, name="toral_F3")


def restricted_f2() -> LiePresentation:
    """[h,e]=e over F_2 with h^[2]=h, e^[2]=0."""
    return make_presentation(GF(2), "eh", {("h", "e"): {"e": 1}},
                             {"e": {}, "h": {"h": 1}}, name="solvable2_F2")


def sl2_f5() -> LiePresentation:
    return sl2(GF(5), restricted=True)


def char0_presentations() -> list[LiePresentation]:
    return [sl2(), heisenberg(), abelian(2), solvable2()]


def restricted_presentations() -> list[LiePresentation]:
    return [toral_f3(), restricted_f2(), sl2_f5()]
