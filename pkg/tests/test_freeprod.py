from math import comb

import pytest

from liehopf import fixtures as fx
from liehopf.freeprod import ENV, XPOW, FreeProduct, is_alternating, word_degree
from liehopf.parser import evaluate_text


def alternating_count(env_counts, d):
    """Alternating words of degree <= d by dynamic programming over the last factor."""
    end_env = [0] * (d + 1)
    end_x = [0] * (d + 1)
    for k in range(1, d + 1):
        end_env[k] = env_counts[k] + sum(end_x[k - j] * env_counts[j] for j in range(1, k))
        end_x[k] = 1 + sum(end_env[k - j] for j in range(1, k))
    return 1 + sum(end_env) + sum(end_x)


@pytest.mark.parametrize("P", [fx.abelian(1), fx.sl2(), fx.heisenberg()], ids=lambda P: P.name)
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_basis_size(P, d):
    A = FreeProduct.of(P)
    n = P.dim
    env_counts = [0] + [comb(n + k - 1, k) for k in range(1, d + 1)]
    B = A.basis(d)
    assert len(B) == len(set(B)) == alternating_count(env_counts, d)
    assert all(is_alternating(w) and word_degree(w) <= d for w in B)


def test_known_basis_sizes():
    assert len(FreeProduct.of(fx.abelian(1)).basis(2)) == 7
    assert len(FreeProduct.of(fx.sl2()).basis(2)) == 18


def test_x_powers_merge(sl2_A):
    x = sl2_A.x_gen()
    assert sl2_A.multiply(x, x).terms == {((XPOW, 2),): 1}


def test_env_letters_merge_and_straighten(sl2_A):
    A = sl2_A
    h, e = A.generator(1), A.generator(0)
    assert A.multiply(h, e) == A.multiply(e, h) + 2 * e


def test_collapsing_letter_joins_neighbours():
    A = FreeProduct.of(fx.toral_f3())
    t, x = A.generator(0), A.x_gen()
    # t^2 * t = t in U_p, so x t^2 . t x stays alternating
    lhs = A.multiply(A.multiply(x, A.power(t, 2)), A.multiply(t, x))
    assert lhs == A.multiply(A.multiply(x, t), x)
    B = FreeProduct.of(fx.restricted_f2())
    e, xB = B.generator(0), B.x_gen()
    # e^2 = 0: the product vanishes outright
    assert not B.multiply(B.multiply(xB, e), B.multiply(e, xB))


def test_reject_non_alternating(sl2_A):
    with pytest.raises(ValueError):
        sl2_A.word(((XPOW, 1), (XPOW, 1)))
    with pytest.raises(ValueError):
        sl2_A.word(((ENV, (0, 0, 0)),))


def test_format_is_reparseable(sl2_A):
    A = sl2_A
    for src in ["x*e*x - 2*h", "[e, x]^2", "1/2*h*x*f + 3", "0"]:
        a = evaluate_text(src, A)
        assert evaluate_text(A.format(a), A) == a


def test_counit_and_truncate(sl2_A):
    A = sl2_A
    a = evaluate_text("3 + e*x + h^2*x^2", A)
    assert A.counit(a) == 3
    assert A.truncate(a, 2) == evaluate_text("3 + e*x", A)


def test_is_x_free(sl2_A):
    assert sl2_A.is_x_free(evaluate_text("e*f + 1", sl2_A))
    assert not sl2_A.is_x_free(evaluate_text("e*x", sl2_A))
