import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gradedmorita.errors import ValidationError
from gradedmorita.groups import (FiniteGroup, Permutation, WreathElement, cyclic_group,
                                 direct_product, symmetric_group, trivial_group,
                                 tuple_permute, wreath_decode, wreath_encode,
                                 wreath_group, wreath_mul)


def perms(n):
    return st.permutations(range(1, n + 1)).map(lambda t: Permutation(tuple(t)))


# -- symmetric groups -------------------------------------------------------


def test_symmetric_group_orders():
    assert symmetric_group(1).order == 1
    assert symmetric_group(3).order == 6
    with pytest.raises(ValueError):
        symmetric_group(0)


def test_symmetric_group_identity_is_sorted_one_line():
    s3 = symmetric_group(3)
    assert s3.identity == 0
    assert s3.names[0] == "[1,2,3]"


def test_composition_convention():
    # (sigma tau)(i) = sigma(tau(i)), evaluated pointwise
    sigma, tau = Permutation((2, 1, 3)), Permutation((1, 3, 2))
    expected = tuple(sigma(tau(i)) for i in (1, 2, 3))
    assert expected == (2, 3, 1)
    assert (sigma * tau).images == expected
    s3 = symmetric_group(3)
    i, j = sigma.rank(), tau.rank()
    assert s3.mul(i, j) == Permutation(expected).rank()


def test_rank_unrank_round_trip():
    for n in (1, 2, 3, 4):
        for r, images in enumerate(itertools.permutations(range(1, n + 1))):
            p = Permutation(images)
            assert p.rank() == r
            assert Permutation.from_rank(n, r) == p


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))


# -- tuple_permute ----------------------------------------------------------


def test_tuple_permute_identity():
    assert tuple_permute(Permutation.identity(3), ("x", "y", "z")) == ("x", "y", "z")


def test_tuple_permute_swap():
    # result[i] = xs[sigma^-1(i)]
    assert tuple_permute(Permutation((2, 1, 3)), ("x", "y", "z")) == ("y", "x", "z")


def test_tuple_permute_arity_mismatch():
    with pytest.raises(ValueError):
        tuple_permute(Permutation((2, 1)), ("x", "y", "z"))


@settings(max_examples=80, derandomize=True)
@given(perms(4), perms(4), st.tuples(*[st.integers(0, 9)] * 4))
def test_tuple_permute_is_left_action(sigma, tau, xs):
    lhs = tuple_permute(sigma, tuple_permute(tau, xs))
    rhs = tuple_permute(sigma * tau, xs)
    assert lhs == rhs


# -- direct products --------------------------------------------------------


def test_direct_product_c2_c2_exponent_two():
    g = direct_product([cyclic_group(2), cyclic_group(2)])
    assert g.order == 4
    # table walk oracle: every square is the identity
    assert all(g.mul(x, x) == g.identity for x in g.elements())


def test_direct_product_single_factor_identical_table():
    c3 = cyclic_group(3)
    assert direct_product([c3]).table == c3.table


def test_direct_product_c2_c3_abelian():
    g = direct_product([cyclic_group(2), cyclic_group(3)])
    assert g.order == 6
    assert g.is_abelian()


def test_direct_product_empty_rejected():
    with pytest.raises(ValueError):
        direct_product([])


# -- wreath products --------------------------------------------------------


def test_wreath_order():
    assert wreath_group(cyclic_group(2), 3).order == 48


def test_wreath_hand_product(c2):
    # ((a,e),(1 2)) * ((e,a),id) = ((e,e),(1 2)): the swap moves a to slot 1,
    # where it cancels against the first factor's a
    x = WreathElement((1, 0), Permutation((2, 1)))
    y = WreathElement((0, 1), Permutation((1, 2)))
    z = wreath_mul(c2, x, y)
    assert z.base == (0, 0)
    assert z.perm == Permutation((2, 1))


def test_wreath_inverse_formula(c2):
    w = wreath_group(c2, 2)
    for idx in w.elements():
        e = wreath_decode(2, 2, idx)
        inv_perm = e.perm.inverse()
        permuted = tuple_permute(inv_perm, e.base)
        claimed = WreathElement(tuple(c2.inv(b) for b in permuted), inv_perm)
        assert w.mul(idx, wreath_encode(2, 2, claimed)) == w.identity


def test_wreath_encoding_tuple_major():
    # base tuple mixed-radix (leftmost slowest), then permutation rank
    e = wreath_decode(2, 2, 0)
    assert e.base == (0, 0) and e.perm == Permutation.identity(2)
    e = wreath_decode(2, 2, 1)
    assert e.base == (0, 0) and e.perm == Permutation((2, 1))
    e = wreath_decode(2, 2, 2)
    assert e.base == (0, 1)


def test_wreath_n1_is_base_group(s3):
    assert wreath_group(s3, 1).table == s3.table


def test_wreath_group_axioms_exhaustive():
    # construction re-verifies the axioms; orders here stay below the
    # exhaustive-associativity limit
    for base, n in [(cyclic_group(2), 3), (cyclic_group(3), 2), (symmetric_group(3), 2)]:
        w = wreath_group(base, n)
        assert w.order == base.order**n * (6 if n == 3 else 2)


def test_wreath_left_action_law_exhaustive():
    for n in (2, 3, 4):
        sn = [Permutation.from_rank(n, r) for r in range(symmetric_group(n).order)]
        xs = tuple(range(n))
        for sigma in sn:
            for tau in sn:
                assert tuple_permute(sigma, tuple_permute(tau, xs)) == \
                    tuple_permute(sigma * tau, xs)


# -- table validation -------------------------------------------------------


def test_rejects_non_latin_square():
    with pytest.raises(ValidationError) as exc:
        FiniteGroup([[0, 0], [1, 1]])
    assert exc.value.check == "latin-square"


def test_rejects_non_associative_latin_square():
    # order-5 Latin square that is not a group table
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(ValidationError) as exc:
        FiniteGroup(table)
    assert exc.value.check == "associativity"
    assert len(exc.value.witness) == 3


def test_conjugate(s3):
    for g in s3.elements():
        for h in s3.elements():
            assert s3.conjugate(g, h) == s3.mul(s3.mul(g, h), s3.inv(g))


def test_trivial_group():
    t = trivial_group()
    assert t.order == 1 and t.identity == 0
