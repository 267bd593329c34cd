import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from gradedmorita.exactmath import (Matrix, PrimeField, QQ, field_from_token,
                                    invert, kernel_basis, solve_linear)


def q(n, d=1):
    return QQ.parse(f"{n}/{d}")


def qmat(rows):
    return Matrix(QQ, [[QQ.from_int(x) for x in r] for r in rows])


# -- scalars ----------------------------------------------------------------


def test_gf_requires_prime():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        PrimeField(1)
    PrimeField(2), PrimeField(97)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_gf_field_axioms_exhaustive(p):
    f = PrimeField(p)
    elems = [f.from_int(i) for i in range(p)]
    for a, b in itertools.product(elems, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in elems:
        assert a + f.zero == a
        assert a * f.one == a
        assert a + (-a) == f.zero
        if a:
            assert a * (f.one / a) == f.one


def test_gf_mixed_modulus_rejected():
    with pytest.raises(ValueError):
        PrimeField(3).one + PrimeField(5).one


def test_field_tokens():
    assert field_from_token("Q") == QQ
    assert field_from_token("GF(5)") == PrimeField(5)
    with pytest.raises(ValueError):
        field_from_token("R")


def test_scalar_parse_format_round_trip():
    for s in ["3", "-2", "3/4", "-7/2", "0"]:
        assert QQ.format(QQ.parse(s)) == s
    f5 = PrimeField(5)
    assert f5.format(f5.parse("7")) == "2"


# -- solve_linear -----------------------------------------------------------


def test_solve_identity():
    assert solve_linear(Matrix.identity(QQ, 2), [q(3), q(4)]) == [q(3), q(4)]


def test_solve_inconsistent():
    m = qmat([[1, 1], [0, 0]])
    assert solve_linear(m, [q(1), q(1)]) is None


def test_solve_gf2_against_enumeration():
    f = PrimeField(2)
    m = Matrix(f, [[f.one, f.one], [f.one, f.zero]])
    rhs = [f.zero, f.one]
    # oracle: enumerate all 4 candidate vectors
    matches = [v for v in itertools.product([f.zero, f.one], repeat=2)
               if m.apply(list(v)) == rhs]
    assert matches == [(f.one, f.one)]
    assert solve_linear(m, rhs) == [f.one, f.one]


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        solve_linear(Matrix.identity(QQ, 2), [q(1)])


@settings(max_examples=60, derandomize=True)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6), st.booleans())
def test_solve_reproduces_image_vectors(rows, cols, seed, rational):
    field = QQ if rational else PrimeField(7)
    rng = random.Random(seed)
    m = Matrix(field, [[field.random(rng) for _ in range(cols)] for _ in range(rows)])
    x = [field.random(rng) for _ in range(cols)]
    rhs = m.apply(x)
    sol = solve_linear(m, rhs)
    assert sol is not None
    assert m.apply(sol) == rhs


# -- kernel_basis -----------------------------------------------------------


def test_kernel_of_identity_empty():
    assert kernel_basis(Matrix.identity(QQ, 3)) == []


def test_kernel_of_zero_full():
    basis = kernel_basis(Matrix.zeros(QQ, 2, 3))
    assert len(basis) == 3


def test_kernel_annihilates():
    m = qmat([[1, 2, 3]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert m.apply(v) == [QQ.zero]


# -- invert -----------------------------------------------------------------


def test_invert_identity():
    assert invert(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 3)


def test_invert_involution():
    m = qmat([[0, 1], [1, 0]])
    assert invert(m) == m


def test_invert_rank_one():
    assert invert(qmat([[1, 1], [1, 1]])) is None


def test_invert_rectangular_rejected():
    with pytest.raises(ValueError):
        invert(Matrix.zeros(QQ, 2, 3))


@settings(max_examples=60, derandomize=True)
@given(st.integers(1, 8), st.integers(0, 10**6), st.booleans())
def test_invertible_iff_trivial_kernel(n, seed, rational):
    field = QQ if rational else PrimeField(5)
    rng = random.Random(seed)
    m = Matrix(field, [[field.random(rng) for _ in range(n)] for _ in range(n)])
    inv = invert(m)
    if inv is None:
        assert kernel_basis(m) != []
    else:
        assert kernel_basis(m) == []
        assert (m @ inv).is_identity()
        assert (inv @ m).is_identity()


def test_elimination_deterministic():
    rng = random.Random(3)
    m = Matrix(QQ, [[QQ.random(rng) for _ in range(6)] for _ in range(4)])
    assert kernel_basis(m) == kernel_basis(m)
    rhs = m.apply([QQ.one] * 6)
    assert solve_linear(m, rhs) == solve_linear(m, rhs)
