import pytest

from gradedmorita import (QQ, group_algebra, is_crossed_product, make_bimodule,
                          make_structure_map, regular_bimodule, tensor_acted,
                          tensor_algebras, tensor_bimodules, tensor_structure_maps,
                          tensor_units, verify_morita, wreath_acted, wreath_algebra,
                          wreath_bimodule, wreath_induction, wreath_structure_map,
                          wreath_units)
from gradedmorita.errors import ValidationError
from gradedmorita.exactmath import Matrix, sparsify
from gradedmorita.gacted import trivial_action
from gradedmorita.galgebra import Unit
from gradedmorita.groups import Permutation, WreathElement, wreath_encode

import fixture_lib


def unit_vec(n, i, field=QQ):
    v = [field.zero] * n
    v[i] = field.one
    return v


# -- tensor products of algebras ---------------------------------------------


def test_tensor_dims_and_grading(oc2):
    t = tensor_algebras([oc2, oc2])
    assert t.dim == 4
    assert t.group.order == 4


def test_tensor_componentwise_product(oc2):
    t = tensor_algebras([oc2, oc2])
    # basis order e(x)e, e(x)a, a(x)e, a(x)a; (a(x)e)(a(x)a) = (e(x)a)
    assert t.mul_basis(2, 3) == ((1, QQ.one),)


def test_tensor_single_factor_is_copy(oc3):
    t = tensor_algebras([oc3])
    assert t.mult == oc3.mult
    assert t.degree == oc3.degree


def test_tensor_field_mismatch(oc2):
    from gradedmorita.exactmath import PrimeField
    other = group_algebra(oc2.group, PrimeField(5))
    with pytest.raises(ValueError):
        tensor_algebras([oc2, other])


def test_tensor_units_certified(oc2, oc3):
    t = tensor_algebras([oc2, oc3])
    units = tensor_units(t, [oc2, oc3],
                         [is_crossed_product(oc2).units, is_crossed_product(oc3).units])
    for g, u in units.items():
        assert t.mul(u.element, u.inverse) == t.one
        assert t.homogeneous_degree(u.element) == g


# -- tensor products of actions and structure maps ----------------------------


def test_tensor_trivial_actions_trivial(oc2):
    acted = tensor_acted([trivial_action(oc2)] * 2)
    assert all(m.is_identity() for m in acted.action)


def test_tensor_action_is_kronecker():
    z = fixture_lib.m2_canonical_map()
    acted2 = tensor_acted([z.source, z.source])
    # action of (a, a) is the Kronecker square of the swap
    g = acted2.acting_group
    idx_aa = 1 * 2 + 1
    swap = z.source.action[1]
    expect = [[swap.rows[i // 2][j // 2] * swap.rows[i % 2][j % 2] for j in range(4)]
              for i in range(4)]
    assert acted2.action[idx_aa].rows == expect


def test_tensor_structure_maps_identity_factors(oc2_map):
    z = tensor_structure_maps([oc2_map, oc2_map])
    assert z.target.dim == 4
    assert z.matrix.is_identity()


def test_corrupted_factor_rejected_before_tensoring(oc2):
    # a corrupted factor never reaches the tensor constructor: its own
    # validation rejects it with the factor's diagnostics
    units = is_crossed_product(oc2).units
    bad = Matrix(QQ, [[QQ.one, QQ.zero], [QQ.zero, QQ.from_int(2)]])
    with pytest.raises(ValidationError) as exc:
        make_structure_map(trivial_action(oc2), oc2, bad, units)
    assert exc.value.check == "structure-homomorphism"


def test_scalar_tensor_structure_map():
    a = fixture_lib.m2_graded()
    from gradedmorita.gacted import scalar_structure_map
    z = scalar_structure_map(a, fixture_lib.m2_units(a))
    zz = tensor_structure_maps([z, z])
    assert zz.source.algebra.dim == 1
    assert zz.apply([QQ.one]) == list(zz.target.one)


# -- tensor products of bimodules ---------------------------------------------


def test_tensor_regular_is_regular_of_tensor(regular_oc2, oc2_map):
    t = tensor_bimodules([regular_oc2, regular_oc2])
    reg = regular_bimodule(tensor_structure_maps([oc2_map, oc2_map]))
    assert t.dim == 4
    assert t.lact == reg.lact
    assert t.ract == reg.ract
    assert t.degree == reg.degree


def test_tensor_bimodule_dims_multiply(regular_oc2, row):
    t = tensor_bimodules([regular_oc2, row[0]])
    assert t.dim == 8


def test_tensor_bimodule_twist_on_component(row):
    # on a component of degree (a, e) the twist acts by the degree-a
    # translate in the first slot only
    t = tensor_bimodules([row[0], row[0]])
    c = t.left.source
    for k in range(t.dim):
        x = t.degree[k]
        for ci in range(c.algebra.dim):
            rvec = t.right.apply_sparse({ci: QQ.one})
            lvec = t.left.apply_sparse(c.act_sparse(x, {ci: QQ.one}))
            assert t.act_right_sparse({k: QQ.one}, rvec) == t.act_left_sparse(lvec, {k: QQ.one})


def test_tensor_square_morita_certified(row):
    t = tensor_bimodules([row[0], row[0]])
    assert verify_morita(t, seed=0, trials=64).certified


# -- wreath algebra ------------------------------------------------------------


def test_wreath_algebra_dim(oc2):
    assert wreath_algebra(oc2, 2).dim == 8


def test_wreath_algebra_hand_product(oc2):
    w = wreath_algebra(oc2, 2)
    # basis layout: (tuple rank)*2 + perm rank; tuple (a,e) = 2, (e,a) = 1, (e,e) = 0
    swap = Permutation((2, 1)).rank()
    ident = Permutation.identity(2).rank()
    x = 2 * 2 + swap    # (a (x) e) (x) (1 2)
    y = 1 * 2 + ident   # (e (x) a) (x) id
    assert w.mul_basis(x, y) == ((0 * 2 + swap, QQ.one),)  # (e (x) e) (x) (1 2)


def test_wreath_algebra_grading_matches_group(oc2):
    w = wreath_algebra(oc2, 2)
    wg = w.group
    for (i, j), entry in w.mult.items():
        want = wg.mul(w.degree[i], w.degree[j])
        for k, _ in entry:
            assert w.degree[k] == want


def test_wreath_n1_identical_constants(oc3):
    w = wreath_algebra(oc3, 1)
    assert w.mult == oc3.mult
    assert w.degree == oc3.degree
    assert w.one == oc3.one


def test_wreath_units_formula(oc2):
    w = wreath_algebra(oc2, 2)
    units = wreath_units(w, oc2, is_crossed_product(oc2).units, 2)
    for g, u in units.items():
        assert w.mul(u.element, u.inverse) == w.one
        assert w.mul(u.inverse, u.element) == w.one
        assert w.homogeneous_degree(u.element) == g


def test_wreath_unit_example(oc2):
    # the unit at ((a,e),(1 2)) has inverse the tensor of inverses at the
    # permuted positions with the inverse permutation
    w = wreath_algebra(oc2, 2)
    units = wreath_units(w, oc2, is_crossed_product(oc2).units, 2)
    g = wreath_encode(2, 2, WreathElement((1, 0), Permutation((2, 1))))
    u = units[g]
    prod = w.mul(u.inverse, u.element)
    assert prod == w.one


# -- wreath acted algebras -------------------------------------------------------


def test_wreath_acted_identity_acts_trivially(oc2_map):
    acted = wreath_acted(oc2_map.source, 3)
    assert acted.action[acted.acting_group.identity].is_identity()


def test_wreath_acted_pure_permutation():
    z = fixture_lib.m2_canonical_map()
    acted = wreath_acted(z.source, 2)
    swap_elt = wreath_encode(2, 2, WreathElement((0, 0), Permutation((2, 1))))
    cdim = z.source.algebra.dim
    # pure permutation sends c1 (x) c2 to c2 (x) c1
    for i in range(cdim):
        for j in range(cdim):
            src = i * cdim + j
            col = acted.action[swap_elt].apply_sparse({src: QQ.one})
            assert col == {j * cdim + i: QQ.one}


def test_wreath_acted_composition_law():
    z = fixture_lib.m2_canonical_map()
    acted = wreath_acted(z.source, 2)
    g = acted.acting_group
    for x in g.elements():
        for y in g.elements():
            assert acted.action[x] @ acted.action[y] == acted.action[g.mul(x, y)]


# -- wreath structure maps -------------------------------------------------------


def test_wreath_structure_map_unit_image(oc2_map):
    zwr = wreath_structure_map(oc2_map, 2)
    cdim = zwr.source.algebra.dim
    one_c = [QQ.zero] * cdim
    one_c[0] = QQ.one  # e (x) e is the coefficient unit
    assert zwr.apply(one_c) == list(zwr.target.one)


def test_wreath_structure_map_equivariance_example():
    z = fixture_lib.m2_canonical_map()
    zwr = wreath_structure_map(z, 2)
    cw = zwr.source
    calg = z.source.algebra
    w = wreath_encode(2, 2, WreathElement((1, 0), Permutation((2, 1))))
    for c1 in range(calg.dim):
        for c2 in range(calg.dim):
            src = c1 * calg.dim + c2
            # expected: translate of c2 by a in slot 1, c1 unchanged in slot 2
            moved1 = z.source.act_sparse(1, {c2: QQ.one})
            moved2 = {c1: QQ.one}
            expect = {}
            for i, ci in moved1.items():
                for j, cj in moved2.items():
                    expect[i * calg.dim + j] = ci * cj
            assert cw.act_sparse(w, {src: QQ.one}) == expect
            # and the map intertwines it with unit conjugation
            u = zwr.units[w]
            lhs = zwr.apply_sparse(cw.act_sparse(w, {src: QQ.one}))
            t = zwr.target
            rhs = t.mul_sparse(t.mul_sparse(sparsify(u.element),
                                            zwr.apply_sparse({src: QQ.one})),
                               sparsify(u.inverse))
            assert lhs == rhs


# -- wreath bimodules -------------------------------------------------------------


def test_wreath_regular_is_regular_of_wreath(regular_oc2, oc2):
    wr = wreath_bimodule(regular_oc2, 2)
    wa = wreath_algebra(oc2, 2)
    assert wr.dim == 8
    assert wr.lact == wa.mult
    assert wr.ract == wa.mult
    assert wr.degree == wa.degree


def test_wreath_bimodule_identity_component(row):
    wr = wreath_bimodule(row[0], 2)
    ident = wr.group.identity
    m_dim = sum(1 for d in row[0].degree if d == row[0].group.identity)
    assert len(wr.component_indices(ident)) == m_dim ** 2


def test_wreath_bimodule_left_action_example(regular_oc2):
    wr = wreath_bimodule(regular_oc2, 2)
    m = regular_oc2
    swap = Permutation((2, 1)).rank()
    ident = Permutation.identity(2).rank()
    # ((a (x) e) (x) (1 2)) . ((m1 (x) m2) (x) id) = ((a m2) (x) m1) (x) (1 2)
    a_e_swap = (1 * m.algebra_left.dim + 0) * 2 + swap
    for m1 in range(m.dim):
        for m2 in range(m.dim):
            src = (m1 * m.dim + m2) * 2 + ident
            got = wr.act_left_sparse({a_e_swap: QQ.one}, {src: QQ.one})
            expect = {}
            for k, c in m.act_left_sparse({1: QQ.one}, {m2: QQ.one}).items():
                expect[(k * m.dim + m1) * 2 + swap] = c
            assert got == expect


# -- induced presentations and the explicit isomorphisms -------------------------


def test_induction_regular(regular_induction):
    ind = regular_induction
    assert ind.left_iso.inverse is not None
    assert ind.right_iso.inverse is not None
    assert ind.left_source.dim == ind.wreath.dim == ind.right_source.dim


def test_induction_preimage_regular(regular_induction):
    ind = regular_induction
    for i in range(ind.wreath.dim):
        img = ind.left_iso.matrix.apply(ind.left_preimage(i))
        assert img == unit_vec(ind.wreath.dim, i)


def test_induction_row(row_induction):
    ind = row_induction
    assert ind.wreath.dim == 32
    assert ind.left_source.dim == 32
    assert ind.right_source.dim == 32


def test_induction_preimage_row(row_induction):
    ind = row_induction
    for i in range(ind.wreath.dim):
        img = ind.left_iso.matrix.apply(ind.left_preimage(i))
        assert img == unit_vec(ind.wreath.dim, i)


def test_induction_maps_grade_preserving(row_induction):
    ind = row_induction
    for iso, src in ((ind.left_iso, ind.left_source), (ind.right_iso, ind.right_source)):
        for s in range(src.dim):
            for t, v in sparsify(iso.matrix.column(s)).items():
                assert ind.wreath.degree[t] == src.degree[s]


def test_induction_cross_iso(row_induction):
    ind = row_induction
    prod = ind.cross_iso.matrix @ ind.cross_iso.inverse
    assert prod.is_identity()


def test_induction_iso_exact_inverses(row_induction):
    ind = row_induction
    assert (ind.left_iso.matrix @ ind.left_iso.inverse).is_identity()
    assert (ind.right_iso.matrix @ ind.right_iso.inverse).is_identity()


def test_induced_action_unit_choice_independence(row):
    m, za, za2 = row
    a = za.target
    scaled_units = dict(za.units)
    u = scaled_units[1]
    scaled_units[1] = Unit([s * QQ.from_int(3) for s in u.element],
                           [s / QQ.from_int(3) for s in u.inverse])
    za_scaled = make_structure_map(za.source, a, za.matrix, scaled_units)
    m_scaled = make_bimodule(za_scaled, za2, m.degree, m.lact, m.ract)
    ind1 = wreath_induction(m, 2)
    ind2 = wreath_induction(m_scaled, 2)
    assert ind1.left_source.ract == ind2.left_source.ract
    assert ind1.left_source.lact == ind2.left_source.lact


def test_wreath_square_morita(row_induction):
    result = verify_morita(row_induction.wreath, seed=0, trials=64)
    assert result.certified


def test_wreath_bimodule_triple_product_grading(row_induction):
    # triple products land in the component indexed by the product of the
    # degrees; the triple count here is far below the sampling threshold,
    # so the sweep is exhaustive
    wr = row_induction.wreath
    g = wr.group
    a, a2 = wr.algebra_left, wr.algebra_right
    for i in range(a.dim):
        for k in range(wr.dim):
            mid = wr.act_left_sparse({i: QQ.one}, {k: QQ.one})
            for j in range(a2.dim):
                out = wr.act_right_sparse(mid, {j: QQ.one})
                want = g.mul(g.mul(a.degree[i], wr.degree[k]), a2.degree[j])
                for t in out:
                    assert wr.degree[t] == want


def test_tensor_with_scalar_factor_is_copy(oc2):
    t = tensor_algebras([oc2, fixture_lib.base_field_algebra()])
    assert t.dim == oc2.dim
    assert t.mult == oc2.mult
    assert [t.group.name_of(d) for d in t.degree] == ["(e,e)", "(g,e)"]


def test_left_induction_of_regular_is_identity(regular_induction):
    # with the identity component spanned by the unit, the left presentation
    # has no relations and the induction map sends each class
    # (algebra basis) (x) (unit tensor) to that algebra basis vector
    assert regular_induction.left_iso.matrix.is_identity()


def test_wreath_induction_over_gf5():
    from gradedmorita.exactmath import PrimeField
    row5, _, _ = fixture_lib.row_fixture(PrimeField(5))
    ind = wreath_induction(row5, 2)
    assert (ind.left_iso.matrix @ ind.left_iso.inverse).is_identity()
    assert (ind.right_iso.matrix @ ind.right_iso.inverse).is_identity()
