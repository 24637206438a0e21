from fractions import Fraction

import pytest

from liehopf import fixtures as fx
from liehopf.freeprod import FreeProduct
from liehopf.hopf import env_ambient, primitive_subspace
from liehopf.liealg import GF, witt_dimension
from liehopf.theorems import (UnsupportedMode, adjoin_closure, endo_left_space, endo_right_space,
                              is_universal_derivative, member_of_adjoin, scalar_pair_scan,
                              universal_derivative_space, verify_derivations,
                              verify_endomorphisms, verify_q11, verify_q13)

from conftest import ids, supported_presentations

CASES = supported_presentations()


@pytest.mark.parametrize("P,mode", CASES, ids=ids(CASES))
def test_derivations_small_degree(P, mode):
    A = FreeProduct.of(P, mode)
    report = verify_derivations(A, 2)
    assert report.passed, report.to_text()
    assert report.computed["kernel_dim"] == P.dim


def test_aliases():
    assert verify_q11 is verify_derivations and verify_q13 is verify_endomorphisms


def test_plain_char_p_is_refused():
    A = FreeProduct.of(fx.sl2(GF(5)))
    with pytest.raises(UnsupportedMode):
        verify_derivations(A, 2)
    with pytest.raises(UnsupportedMode):
        is_universal_derivative(A, A.env.generator(0))


def test_plain_char_p_endomorphisms_run_with_note():
    A = FreeProduct.of(fx.sl2(GF(5)))
    report = verify_endomorphisms(A, 1, scan=False)
    assert report.passed and report.notes


def test_negative_controls(sl2_A):
    E = sl2_A.env
    e, h, f = (E.generator(i) for i in range(3))
    ok, term = is_universal_derivative(sl2_A, e * e)
    assert not ok and term[2] != 0
    casimir = e * f + f * e + h * h * Fraction(1, 2)
    ok, term = is_universal_derivative(sl2_A, casimir)
    assert not ok and term[2] != 0
    assert endo_right_space(sl2_A, e, 2).dim == 0


def test_expect_extra_fails_with_witness(sl2_A):
    E = sl2_A.env
    report = verify_derivations(sl2_A, 2, expect_extra=[E.generator(0) * E.generator(0)])
    assert not report.passed
    assert report.witnesses


def test_kernel_contains_only_L(sl2_A):
    space, report = universal_derivative_space(sl2_A, 3)
    assert report.passed and space.dim == 3
    assert len(space.ambient) == 19


@pytest.mark.parametrize("P,mode", CASES, ids=ids(CASES))
def test_closure_equals_primitives(P, mode):
    A = FreeProduct.of(P, mode)
    closure = adjoin_closure(A, 3).subspace()
    prim = primitive_subspace(A, A.basis(3))
    assert closure == prim


def test_abelian_closure_is_free_lie_algebra():
    A = FreeProduct.of(fx.abelian(1))
    profile = adjoin_closure(A, 5).degree_profile()
    assert profile == {k: witt_dimension(2, k) for k in range(1, 6)}
    assert profile == {1: 2, 2: 1, 3: 2, 4: 3, 5: 6}


def test_member_of_adjoin(sl2_A):
    from liehopf.parser import evaluate_text
    assert member_of_adjoin(sl2_A, evaluate_text("[e, x] + [[h, x], x]", sl2_A), 3)
    assert not member_of_adjoin(sl2_A, evaluate_text("e*x", sl2_A), 3)
    with pytest.raises(ValueError):
        member_of_adjoin(sl2_A, evaluate_text("e*x*e*x", sl2_A), 3)


def test_endo_spaces(sl2_A):
    E = sl2_A.env
    one = endo_right_space(sl2_A, E.one(), 2)
    assert one.dim == 1 and one.subspace.rows == [{0: 1}]
    zero = endo_left_space(sl2_A, E.zero(), 1)
    assert zero.degenerate and zero.dim == len(env_ambient(sl2_A, 1))


@pytest.mark.parametrize("P,mode", CASES, ids=ids(CASES))
def test_endomorphisms(P, mode):
    report = verify_endomorphisms(FreeProduct.of(P, mode), 1)
    assert report.passed, report.to_text()


def test_scalar_scan_counts():
    A = FreeProduct.of(fx.toral_f3())
    mismatches, prim_scalar, identity, ambient = scalar_pair_scan(A)
    assert mismatches == []
    assert prim_scalar == 4 and identity == 2
    assert len(ambient) == 2


def test_report_serialization_is_stable(sl2_A):
    r1 = verify_derivations(sl2_A, 2).to_dict()
    r2 = verify_derivations(sl2_A, 2, workers=2).to_dict()
    assert r1 == r2
    assert "wall_time" not in r1
    assert "wall_time" in verify_derivations(sl2_A, 2).to_dict(timing=True)
