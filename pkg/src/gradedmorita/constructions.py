"""Composite constructions: tensor products and wreath products.

Tensor products of graded algebras, acted algebras, structure maps and
bimodules use row-major tuple bases (leftmost factor slowest); wreath
products pair a tensor-power tuple with a permutation, ordered tuple first,
then permutation rank.  Every constructor returns a fully validated object.

`wreath_induction` builds the wreath power of a bimodule together with the
two induced presentations (algebra side tensored over the identity-component
power against the identity-component power of the module) and certifies the
explicit isomorphisms between them and the wreath bimodule, including the
closed-form preimage used for the surjectivity check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InternalCheckError
from .exactmath import Matrix, QuotientSpace, densify, sparsify
from .gacted import ActedAlgebra, StructureMap, attach_action, make_structure_map
from .galgebra import (GradedAlgebra, Unit, identity_component_algebra,
                       make_graded_algebra)
from .gbimod import (BimoduleMap, GradedBimodule, _certify_map, make_bimodule)
from .groups import (Permutation, WreathElement, direct_product, product_decode,
                     product_encode, tuple_permute, wreath_decode, wreath_encode,
                     wreath_group)

_FACTORIALS = [1, 1, 2, 6, 24, 120, 720, 5040]


def _factorial(n: int) -> int:
    while len(_FACTORIALS) <= n:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS[n]


# ---------------------------------------------------------------------------
# small tensor helpers


def _expand_factors(field, factors: list) -> list[tuple[tuple[int, ...], object]]:
    """Cross product of per-factor sparse vectors: (index tuple, coefficient)."""
    out = []
    for combo in itertools.product(*factors):
        coeff = field.one
        for _, c in combo:
            coeff = coeff * c
        if coeff:
            out.append((tuple(k for k, _ in combo), coeff))
    return out


def _outer_dense(field, vecs: list[list]) -> dict[int, object]:
    """Outer product of dense vectors, flat over the mixed-radix tuple basis."""
    dims = [len(v) for v in vecs]
    supports = [sparsify(v) for v in vecs]
    out: dict[int, object] = {}
    for combo in itertools.product(*[list(s.items()) for s in supports]):
        coeff = field.one
        for _, c in combo:
            coeff = coeff * c
        if coeff:
            out[product_encode(dims, tuple(k for k, _ in combo))] = coeff
    return out


def _permute_tensor(vec: dict[int, object], dims: list[int], sigma: Permutation) -> dict[int, object]:
    out: dict[int, object] = {}
    for flat, c in vec.items():
        tup = product_decode(dims, flat)
        out[product_encode(dims, tuple_permute(sigma, tup))] = c
    return out


def _tensor_names(algebras: list[GradedAlgebra], tuples) -> list[str]:
    return ["⊗".join(a.name_of(t) for a, t in zip(algebras, tup)) for tup in tuples]


# ---------------------------------------------------------------------------
# tensor products


def tensor_algebras(algebras: list[GradedAlgebra], *, jobs: int = 1) -> GradedAlgebra:
    """Tensor product algebra, graded by the direct product of the grading groups."""
    if not algebras:
        raise ValueError("tensor product needs at least one factor")
    field = algebras[0].field
    for a in algebras[1:]:
        if a.field != field:
            raise ValueError("field mismatch between tensor factors")
    group = direct_product([a.group for a in algebras])
    gorders = [a.group.order for a in algebras]
    dims = [a.dim for a in algebras]
    total = 1
    for d in dims:
        total *= d
    tuples = [product_decode(dims, i) for i in range(total)]
    degree = [product_encode(gorders, tuple(a.degree[t] for a, t in zip(algebras, tup))) for tup in tuples]
    mult: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for i, ti in enumerate(tuples):
        for j, tj in enumerate(tuples):
            factors = [a.mul_basis(x, y) for a, x, y in zip(algebras, ti, tj)]
            if any(not f for f in factors):
                continue
            entry = [(product_encode(dims, tup), c) for tup, c in _expand_factors(field, factors)]
            if entry:
                mult[(i, j)] = entry
    one = densify(_outer_dense(field, [a.one for a in algebras]), total, field)
    names = _tensor_names(algebras, tuples)
    return make_graded_algebra(field, group, degree, mult, one, names, jobs=jobs)


def tensor_units(product: GradedAlgebra, factors: list[GradedAlgebra],
                 units_list: list[dict[int, Unit]]) -> dict[int, Unit]:
    """Units of a tensor product algebra from units of the factors, certified."""
    gorders = [a.group.order for a in factors]
    dims = [a.dim for a in factors]
    field = product.field
    out: dict[int, Unit] = {}
    for g in product.group.elements():
        parts = product_decode(gorders, g)
        element = densify(_outer_dense(field, [units_list[i][p].element for i, p in enumerate(parts)]),
                          product.dim, field)
        inverse = densify(_outer_dense(field, [units_list[i][p].inverse for i, p in enumerate(parts)]),
                          product.dim, field)
        if product.mul(element, inverse) != product.one or product.mul(inverse, element) != product.one:
            raise InternalCheckError("tensor unit and its factorwise inverse do not multiply to 1")
        out[g] = Unit(element, inverse)
    return out


def _kron(field, mats: list[Matrix]) -> Matrix:
    rows = [[field.one]]
    for m in mats:
        new = []
        for r in rows:
            for mr in m.rows:
                new.append([a * b for a in r for b in mr])
        rows = new
    return Matrix(field, rows)


def tensor_acted(cs: list[ActedAlgebra], *, jobs: int = 1) -> ActedAlgebra:
    """Tensor product of acted algebras; the product group acts factorwise."""
    algebra = tensor_algebras([c.algebra for c in cs], jobs=jobs)
    acting = direct_product([c.acting_group for c in cs])
    aorders = [c.acting_group.order for c in cs]
    gorders = [c.algebra.group.order for c in cs]
    matrices = []
    degree_action = []
    for w in acting.elements():
        ws = product_decode(aorders, w)
        matrices.append(_kron(algebra.field, [c.action[wi] for c, wi in zip(cs, ws)]))
        row = []
        for k in algebra.group.elements():
            ks = product_decode(gorders, k)
            row.append(product_encode(gorders, tuple(c.degree_action[wi][ki] for c, wi, ki in zip(cs, ws, ks))))
        degree_action.append(row)
    return attach_action(algebra, matrices, acting, degree_action, jobs=jobs)


def tensor_structure_maps(zs: list[StructureMap], *, jobs: int = 1) -> StructureMap:
    """Tensor product of structure maps, validated over the tensor coefficients."""
    source = tensor_acted([z.source for z in zs], jobs=jobs)
    target = tensor_algebras([z.target for z in zs], jobs=jobs)
    zeta = _kron(target.field, [z.matrix for z in zs])
    units = tensor_units(target, [z.target for z in zs], [z.units for z in zs])
    sorders = [z.source.algebra.group.order for z in zs]
    torders = [z.target.group.order for z in zs]
    embed = []
    for k in source.algebra.group.elements():
        ks = product_decode(sorders, k)
        embed.append(product_encode(torders, tuple(z.degree_embed[ki] for z, ki in zip(zs, ks))))
    return make_structure_map(source, target, zeta, units, embed, jobs=jobs)


def tensor_bimodules(ms: list[GradedBimodule], *, jobs: int = 1) -> GradedBimodule:
    """Outer tensor product of bimodules over the tensor coefficient algebra."""
    left = tensor_structure_maps([m.left for m in ms], jobs=jobs)
    right = tensor_structure_maps([m.right for m in ms], jobs=jobs)
    field = left.target.field
    gorders = [m.group.order for m in ms]
    mdims = [m.dim for m in ms]
    adims = [m.algebra_left.dim for m in ms]
    a2dims = [m.algebra_right.dim for m in ms]
    total = 1
    for d in mdims:
        total *= d
    tuples = [product_decode(mdims, i) for i in range(total)]
    degree = [product_encode(gorders, tuple(m.degree[t] for m, t in zip(ms, tup))) for tup in tuples]
    lact: dict[tuple[int, int], list[tuple[int, object]]] = {}
    atotal = left.target.dim
    for ai in range(atotal):
        atup = product_decode(adims, ai)
        for mj, mtup in enumerate(tuples):
            factors = [m.lact.get((x, y)) for m, x, y in zip(ms, atup, mtup)]
            if any(not f for f in factors):
                continue
            entry = [(product_encode(mdims, tup), c) for tup, c in _expand_factors(field, factors)]
            if entry:
                lact[(ai, mj)] = entry
    ract: dict[tuple[int, int], list[tuple[int, object]]] = {}
    a2total = right.target.dim
    for mj, mtup in enumerate(tuples):
        for ai in range(a2total):
            atup = product_decode(a2dims, ai)
            factors = [m.ract.get((y, x)) for m, x, y in zip(ms, atup, mtup)]
            if any(not f for f in factors):
                continue
            entry = [(product_encode(mdims, tup), c) for tup, c in _expand_factors(field, factors)]
            if entry:
                ract[(mj, ai)] = entry
    names = ["⊗".join(m.name_of(t) for m, t in zip(ms, tup)) for tup in tuples]
    return make_bimodule(left, right, degree, lact, ract, names, jobs=jobs)


# ---------------------------------------------------------------------------
# wreath products


def wreath_algebra(a: GradedAlgebra, n: int, *, jobs: int = 1) -> GradedAlgebra:
    """Wreath product algebra: n-fold tensor power twisted by permutations.

    Basis (tuple, permutation), ordered tuple-major; the product permutes the
    right factor's tuple before multiplying componentwise and composes the
    permutations.  Graded by the wreath product of the grading group.
    """
    if n < 1:
        raise ValueError("wreath product needs n >= 1")
    wg = wreath_group(a.group, n)
    fact = _factorial(n)
    dims = [a.dim] * n
    perms = [Permutation.from_rank(n, r) for r in range(fact)]
    perm_mul = [[(p * q).rank() for q in perms] for p in perms]
    atuples = [product_decode(dims, i) for i in range(a.dim**n)]
    degree = []
    names = []
    for tup in atuples:
        dtup = tuple(a.degree[t] for t in tup)
        base_name = "⊗".join(a.name_of(t) for t in tup)
        for r in range(fact):
            degree.append(wreath_encode(a.group.order, n, WreathElement(dtup, perms[r])))
            names.append(f"({base_name}){perms[r]}")
    field = a.field
    mult: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for xi, xt in enumerate(atuples):
        for r1 in range(fact):
            x = xi * fact + r1
            for yi, yt in enumerate(atuples):
                permuted = tuple_permute(perms[r1], yt)
                factors = [a.mul_basis(u, v) for u, v in zip(xt, permuted)]
                if any(not f for f in factors):
                    continue
                for r2 in range(fact):
                    y = yi * fact + r2
                    rr = perm_mul[r1][r2]
                    entry = [(product_encode(dims, tup) * fact + rr, c)
                             for tup, c in _expand_factors(field, factors)]
                    if entry:
                        mult[(x, y)] = entry
    one_tensor = _outer_dense(field, [a.one] * n)
    one = [field.zero] * (a.dim**n * fact)
    id_rank = Permutation.identity(n).rank()
    for flat, c in one_tensor.items():
        one[flat * fact + id_rank] = c
    return make_graded_algebra(field, wg, degree, mult, one, names, jobs=jobs)


def wreath_units(wa: GradedAlgebra, base: GradedAlgebra, units: dict[int, Unit], n: int) -> dict[int, Unit]:
    """Units of a wreath product algebra from units of the base, certified.

    The unit at ((g_1..g_n), s) is the tensor of the base units at the g_i
    paired with s; its inverse tensors the inverses at the s(i) positions and
    pairs them with the inverse permutation.
    """
    fact = _factorial(n)
    field = wa.field
    out: dict[int, Unit] = {}
    for w in wa.group.elements():
        elt = wreath_decode(base.group.order, n, w)
        element_tensor = _outer_dense(field, [units[g].element for g in elt.base])
        element = [field.zero] * wa.dim
        for flat, c in element_tensor.items():
            element[flat * fact + elt.perm.rank()] = c
        inv_parts = [units[elt.base[elt.perm(i + 1) - 1]].inverse for i in range(n)]
        inverse_tensor = _outer_dense(field, inv_parts)
        inverse = [field.zero] * wa.dim
        inv_rank = elt.perm.inverse().rank()
        for flat, c in inverse_tensor.items():
            inverse[flat * fact + inv_rank] = c
        if wa.mul(element, inverse) != wa.one or wa.mul(inverse, element) != wa.one:
            raise InternalCheckError("wreath unit and its claimed inverse do not multiply to 1")
        out[w] = Unit(element, inverse)
    return out


def wreath_acted(c: ActedAlgebra, n: int, *, jobs: int = 1) -> ActedAlgebra:
    """Tensor power of an acted algebra, acted on by the wreath product.

    The acting group permutes the tensor positions and then acts factorwise;
    the grading stays by the plain n-fold product group, so the acting group
    differs from the grading group.
    """
    if n < 1:
        raise ValueError("wreath product needs n >= 1")
    algebra = tensor_algebras([c.algebra] * n, jobs=jobs)
    acting = wreath_group(c.acting_group, n)
    dims = [c.algebra.dim] * n
    gorders = [c.algebra.group.order] * n
    field = algebra.field
    matrices = []
    degree_action = []
    for w in acting.elements():
        elt = wreath_decode(c.acting_group.order, n, w)
        inv = elt.perm.inverse()
        cols: list[list] = []
        for src in range(algebra.dim):
            stup = product_decode(dims, src)
            vecs = [densify(c.action[elt.base[i]].apply_sparse({stup[inv(i + 1) - 1]: field.one}),
                            c.algebra.dim, field) for i in range(n)]
            cols.append(densify(_outer_dense(field, vecs), algebra.dim, field))
        matrices.append(Matrix(field, [list(row) for row in zip(*cols)], algebra.dim, algebra.dim))
        row = []
        for k in algebra.group.elements():
            ktup = product_decode(gorders, k)
            moved = tuple(c.degree_action[elt.base[i]][ktup[inv(i + 1) - 1]] for i in range(n))
            row.append(product_encode(gorders, moved))
        degree_action.append(row)
    return attach_action(algebra, matrices, acting, degree_action, jobs=jobs)


def wreath_structure_map(z: StructureMap, n: int, *, jobs: int = 1,
                         _source: ActedAlgebra | None = None,
                         _target: GradedAlgebra | None = None,
                         _units: dict[int, Unit] | None = None) -> StructureMap:
    """Wreath power of a structure map: tensor power followed by the
    identity-permutation embedding, equivariant for the wreath action."""
    source = _source if _source is not None else wreath_acted(z.source, n, jobs=jobs)
    target = _target if _target is not None else wreath_algebra(z.target, n, jobs=jobs)
    units = _units if _units is not None else wreath_units(target, z.target, z.units, n)
    fact = _factorial(n)
    field = target.field
    id_rank = Permutation.identity(n).rank()
    zeta = Matrix.zeros(field, target.dim, source.algebra.dim)
    cdims = [z.source.algebra.dim] * n
    for src in range(source.algebra.dim):
        stup = product_decode(cdims, src)
        vecs = [densify(z.matrix.apply_sparse({t: field.one}), z.target.dim, field) for t in stup]
        for flat, cval in _outer_dense(field, vecs).items():
            zeta.rows[flat * fact + id_rank][src] = cval
    sorders = [z.source.algebra.group.order] * n
    embed = []
    for k in source.algebra.group.elements():
        ktup = product_decode(sorders, k)
        etup = tuple(z.degree_embed[ki] for ki in ktup)
        embed.append(wreath_encode(z.target.group.order, n, WreathElement(etup, Permutation.identity(n))))
    return make_structure_map(source, target, zeta, units, embed, jobs=jobs)


def _wreath_parts(m: GradedBimodule, n: int, jobs: int):
    cwr = wreath_acted(m.left.source, n, jobs=jobs)
    awr = wreath_algebra(m.left.target, n, jobs=jobs)
    a2wr = wreath_algebra(m.right.target, n, jobs=jobs)
    units_l = wreath_units(awr, m.left.target, m.left.units, n)
    units_r = wreath_units(a2wr, m.right.target, m.right.units, n)
    left_wr = wreath_structure_map(m.left, n, jobs=jobs, _source=cwr, _target=awr, _units=units_l)
    right_wr = wreath_structure_map(m.right, n, jobs=jobs, _source=cwr, _target=a2wr, _units=units_r)

    fact = _factorial(n)
    mdims = [m.dim] * n
    perms = [Permutation.from_rank(n, r) for r in range(fact)]
    perm_mul = [[(p * q).rank() for q in perms] for p in perms]
    mtuples = [product_decode(mdims, i) for i in range(m.dim**n)]
    field = m.field
    degree = []
    names = []
    for tup in mtuples:
        dtup = tuple(m.degree[t] for t in tup)
        base_name = "⊗".join(m.name_of(t) for t in tup)
        for r in range(fact):
            degree.append(wreath_encode(m.group.order, n, WreathElement(dtup, perms[r])))
            names.append(f"({base_name}){perms[r]}")
    adims = [m.algebra_left.dim] * n
    a2dims = [m.algebra_right.dim] * n
    lact: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for ai in range(m.algebra_left.dim**n):
        atup = product_decode(adims, ai)
        for r1 in range(fact):
            x = ai * fact + r1
            for mi, mtup in enumerate(mtuples):
                permuted = tuple_permute(perms[r1], mtup)
                factors = [m.lact.get((u, v)) for u, v in zip(atup, permuted)]
                if any(not f for f in factors):
                    continue
                for r2 in range(fact):
                    rr = perm_mul[r1][r2]
                    entry = [(product_encode(mdims, tup) * fact + rr, c)
                             for tup, c in _expand_factors(field, factors)]
                    if entry:
                        lact[(x, mi * fact + r2)] = entry
    ract: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for mi, mtup in enumerate(mtuples):
        for r2 in range(fact):
            mm = mi * fact + r2
            for ai in range(m.algebra_right.dim**n):
                atup = product_decode(a2dims, ai)
                permuted = tuple_permute(perms[r2], atup)
                factors = [m.ract.get((u, v)) for u, v in zip(mtup, permuted)]
                if any(not f for f in factors):
                    continue
                for r3 in range(fact):
                    rr = perm_mul[r2][r3]
                    entry = [(product_encode(mdims, tup) * fact + rr, c)
                             for tup, c in _expand_factors(field, factors)]
                    if entry:
                        ract[(mm, ai * fact + r3)] = entry
    wr = make_bimodule(left_wr, right_wr, degree, lact, ract, names, jobs=jobs)
    return cwr, awr, a2wr, units_l, units_r, left_wr, right_wr, wr


def wreath_bimodule(m: GradedBimodule, n: int, *, jobs: int = 1) -> GradedBimodule:
    """Wreath power of a bimodule, validated over the tensor power coefficients."""
    return _wreath_parts(m, n, jobs)[-1]


# ---------------------------------------------------------------------------
# induced presentations of the wreath bimodule and the explicit isomorphisms


@dataclass
class WreathInduction:
    """Wreath power of a bimodule with its two induced presentations.

    `left_source` is the wreath algebra tensored, over the n-th tensor power
    of its identity component, with the n-th power of the module's identity
    component; `right_source` mirrors this on the other side.  `left_iso` and
    `right_iso` are the certified isomorphisms onto the wreath bimodule
    ((a (x) s) (x) m -> (a . s-permuted m) (x) s and m (x) (a' (x) s) ->
    (m a') (x) s), and `cross_iso` is the certified composite between the two
    presentations.
    """

    base: GradedBimodule
    n: int
    wreath: GradedBimodule
    left_source: GradedBimodule
    right_source: GradedBimodule
    left_iso: BimoduleMap
    right_iso: BimoduleMap
    cross_iso: BimoduleMap
    _left_quo: QuotientSpace
    _m_idxs: list[int]

    def left_preimage(self, wreath_index: int) -> list:
        """Closed-form preimage of a wreath basis vector under `left_iso`.

        Tensors the inverses of the units at the inverted degrees on the
        algebra side with the unit-shifted module entries (taken at the
        permuted positions) on the module side, then projects into the
        induced presentation.
        """
        m, n = self.base, self.n
        field = m.field
        g = m.group
        fact = _factorial(n)
        mdims_full = [m.dim] * n
        mpos = {j: p for p, j in enumerate(self._m_idxs)}
        mn_dims = [len(self._m_idxs)] * n
        mndim = len(self._m_idxs) ** n
        tflat, r = divmod(wreath_index, fact)
        ttup = product_decode(mdims_full, tflat)
        sigma = Permutation.from_rank(n, r)
        gdegs = [m.degree[t] for t in ttup]
        apart = _outer_dense(field, [m.left.units[g.inv(d)].inverse for d in gdegs])
        parts = []
        for i in range(n):
            j = sigma(i + 1) - 1
            unit = m.left.units[g.inv(gdegs[j])].element
            parts.append(densify(m.act_left_sparse(sparsify(unit), {ttup[j]: field.one}), m.dim, field))
        mn_full = _outer_dense(field, parts)
        row: dict[int, object] = {}
        for af, c1 in apart.items():
            x = af * fact + r
            for mf, c2 in mn_full.items():
                tup = product_decode(mdims_full, mf)
                try:
                    pos = tuple(mpos[t] for t in tup)
                except KeyError:
                    raise InternalCheckError("unit-shifted module entry left the identity component") from None
                key = x * mndim + product_encode(mn_dims, pos)
                v = row.get(key, field.zero) + c1 * c2
                if v:
                    row[key] = v
                else:
                    row.pop(key, None)
        return densify(self._left_quo.project(row), self.left_source.dim, field)


def _dense_from_cols(field, cols: list[dict[int, object]], nrows: int) -> Matrix:
    mat = Matrix.zeros(field, nrows, len(cols))
    for s, col in enumerate(cols):
        for t, c in col.items():
            mat.rows[t][s] = c
    return mat


def wreath_induction(m: GradedBimodule, n: int, *, jobs: int = 1) -> WreathInduction:
    """Build the wreath bimodule, both induced presentations, and the certified
    isomorphisms between them."""
    from .exactmath import invert_dict_cols
    from .gbimod import _compose_cols

    cwr, awr, a2wr, units_l, units_r, left_wr, right_wr, wr = _wreath_parts(m, n, jobs)
    field = m.field
    g = m.group
    a, a2 = m.algebra_left, m.algebra_right
    fact = _factorial(n)
    perms = [Permutation.from_rank(n, r) for r in range(fact)]
    id_rank = Permutation.identity(n).rank()
    one = field.one
    gorders = [g.order] * n
    adims = [a.dim] * n
    a2dims = [a2.dim] * n
    mdims_full = [m.dim] * n

    m_idxs = [j for j in range(m.dim) if m.degree[j] == g.identity]
    mpos = {j: p for p, j in enumerate(m_idxs)}
    mn_dims = [len(m_idxs)] * n
    mndim = len(m_idxs) ** n

    def mn_tuple(mm: int) -> tuple[int, ...]:
        return tuple(m_idxs[p] for p in product_decode(mn_dims, mm))

    def mn_to_wr(mm: int) -> int:
        return product_encode(mdims_full, mn_tuple(mm)) * fact + id_rank

    def extract_mn(vec: dict[int, object], expect_rank: int) -> dict[int, object]:
        out: dict[int, object] = {}
        for flat, c in vec.items():
            tflat, r = divmod(flat, fact)
            if r != expect_rank:
                raise InternalCheckError("induced action left the expected permutation block")
            tup = product_decode(mdims_full, tflat)
            try:
                pos = tuple(mpos[t] for t in tup)
            except KeyError:
                raise InternalCheckError("induced action left the identity component") from None
            out[product_encode(mn_dims, pos)] = c
        return out

    def unit_table(alg: GradedAlgebra, units: dict[int, Unit]) -> dict[int, tuple[dict, dict]]:
        table = {}
        for gf in range(g.order**n):
            gtup = product_decode(gorders, gf)
            table[gf] = (_outer_dense(field, [units[d].element for d in gtup]),
                         _outer_dense(field, [units[d].inverse for d in gtup]))
        return table

    tu_left = unit_table(a, m.left.units)
    tu_right = unit_table(a2, m.right.units)

    # ---- left presentation: wreath algebra tensored over B^n with M^n ----
    b_alg, b_idxs = identity_component_algebra(a, jobs=jobs)
    bn = tensor_algebras([b_alg] * n, jobs=jobs)
    total_l = awr.dim * mndim
    quo_l = QuotientSpace(total_l, field)
    for bb in bn.generators():
        btup = tuple(b_idxs[p] for p in product_decode([b_alg.dim] * n, bb))
        b_wr = product_encode(adims, btup) * fact + id_rank
        act_cache = []
        for mm in range(mndim):
            factors = [m.lact.get((bi, mi), ()) for bi, mi in zip(btup, mn_tuple(mm))]
            if any(not f for f in factors):
                act_cache.append({})
                continue
            acc: dict[int, object] = {}
            for tup, c in _expand_factors(field, factors):
                try:
                    pos = tuple(mpos[t] for t in tup)
                except KeyError:
                    raise InternalCheckError("identity component action left the identity component") from None
                acc[product_encode(mn_dims, pos)] = c
            act_cache.append(acc)
        for x in range(awr.dim):
            xb = awr.mul_basis(x, b_wr)
            for mm in range(mndim):
                row: dict[int, object] = {}
                for k, c in xb:
                    row[k * mndim + mm] = c
                for mm2, c in act_cache[mm].items():
                    key = x * mndim + mm2
                    v = row.get(key, field.zero) - c
                    if v:
                        row[key] = v
                    else:
                        row.pop(key, None)
                if row:
                    quo_l.add_relation(row)
    quo_l.finalize()
    if quo_l.dim != wr.dim:
        raise InternalCheckError(f"left presentation has dimension {quo_l.dim}, expected {wr.dim}")

    deg_l, names_l = [], []
    for t in range(quo_l.dim):
        x, mm = divmod(quo_l.lift(t), mndim)
        deg_l.append(awr.degree[x])
        names_l.append(f"{awr.name_of(x)}(x)M{mm}")
    lact_l: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for i in range(awr.dim):
        for t in range(quo_l.dim):
            x, mm = divmod(quo_l.lift(t), mndim)
            prod = awr.mul_basis(i, x)
            if not prod:
                continue
            img = quo_l.project({k * mndim + mm: c for k, c in prod})
            if img:
                lact_l[(i, t)] = sorted(img.items())
    ract_l: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for y in range(a2wr.dim):
        yi, r3 = divmod(y, fact)
        a2tup = product_decode(a2dims, yi)
        gflat = product_encode(gorders, tuple(a2.degree[b] for b in a2tup))
        u_el, u_iv = tu_left[gflat]
        u_vec = {af * fact + r3: c for af, c in u_el.items()}
        tau_inv = perms[r3].inverse()
        lf = {af * fact + tau_inv.rank(): c
              for af, c in _permute_tensor(u_iv, adims, tau_inv).items()}
        for t in range(quo_l.dim):
            x, mm = divmod(quo_l.lift(t), mndim)
            s1 = awr.mul_sparse({x: one}, u_vec)
            step = wr.act_left_sparse(lf, {mn_to_wr(mm): one})
            step = wr.act_right_sparse(step, {y: one})
            mn_part = extract_mn(step, id_rank)
            row = {}
            for x2, c1 in s1.items():
                for mm2, c2 in mn_part.items():
                    key = x2 * mndim + mm2
                    v = row.get(key, field.zero) + c1 * c2
                    if v:
                        row[key] = v
                    else:
                        row.pop(key, None)
            img = quo_l.project(row)
            if img:
                ract_l[(t, y)] = sorted(img.items())
    left_source = make_bimodule(left_wr, right_wr, deg_l, lact_l, ract_l, names_l, jobs=jobs)

    cols_f = []
    for t in range(quo_l.dim):
        x, mm = divmod(quo_l.lift(t), mndim)
        cols_f.append(wr.act_left_sparse({x: one}, {mn_to_wr(mm): one}))
    inv_f = invert_dict_cols(cols_f, field)
    if inv_f is None:
        raise InternalCheckError("left induction map is singular")
    _certify_map(left_source, wr, cols_f, inv_f)
    left_iso = BimoduleMap(left_source, wr, _dense_from_cols(field, cols_f, wr.dim),
                           _dense_from_cols(field, inv_f, quo_l.dim))

    # ---- right presentation: M^n tensored over B'^n with the wreath algebra ----
    b2_alg, b2_idxs = identity_component_algebra(a2, jobs=jobs)
    b2n = tensor_algebras([b2_alg] * n, jobs=jobs)
    total_r = mndim * a2wr.dim
    quo_r = QuotientSpace(total_r, field)
    for bb in b2n.generators():
        btup = tuple(b2_idxs[p] for p in product_decode([b2_alg.dim] * n, bb))
        b_wr = product_encode(a2dims, btup) * fact + id_rank
        ract_cache = []
        for mm in range(mndim):
            factors = [m.ract.get((mi, bi), ()) for mi, bi in zip(mn_tuple(mm), btup)]
            if any(not f for f in factors):
                ract_cache.append({})
                continue
            acc = {}
            for tup, c in _expand_factors(field, factors):
                try:
                    pos = tuple(mpos[t] for t in tup)
                except KeyError:
                    raise InternalCheckError("identity component action left the identity component") from None
                acc[product_encode(mn_dims, pos)] = c
            ract_cache.append(acc)
        for mm in range(mndim):
            for y in range(a2wr.dim):
                row = {}
                for mm2, c in ract_cache[mm].items():
                    row[mm2 * a2wr.dim + y] = c
                for k, c in a2wr.mul_basis(b_wr, y):
                    key = mm * a2wr.dim + k
                    v = row.get(key, field.zero) - c
                    if v:
                        row[key] = v
                    else:
                        row.pop(key, None)
                if row:
                    quo_r.add_relation(row)
    quo_r.finalize()
    if quo_r.dim != wr.dim:
        raise InternalCheckError(f"right presentation has dimension {quo_r.dim}, expected {wr.dim}")

    deg_r, names_r = [], []
    for t in range(quo_r.dim):
        mm, y = divmod(quo_r.lift(t), a2wr.dim)
        deg_r.append(a2wr.degree[y])
        names_r.append(f"M{mm}(x){a2wr.name_of(y)}")
    ract_r: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for t in range(quo_r.dim):
        mm, y = divmod(quo_r.lift(t), a2wr.dim)
        for y2 in range(a2wr.dim):
            prod = a2wr.mul_basis(y, y2)
            if not prod:
                continue
            img = quo_r.project({mm * a2wr.dim + k: c for k, c in prod})
            if img:
                ract_r[(t, y2)] = sorted(img.items())
    lact_r: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for x in range(awr.dim):
        xi, r_tau = divmod(x, fact)
        atup = product_decode(adims, xi)
        hflat = product_encode(gorders, tuple(a.degree[b] for b in atup))
        u_el, u_iv = tu_right[hflat]
        u_vec = {af * fact + r_tau: c for af, c in u_el.items()}
        tau_inv = perms[r_tau].inverse()
        rf = {af * fact + id_rank: c
              for af, c in _permute_tensor(u_iv, a2dims, tau_inv).items()}
        for t in range(quo_r.dim):
            mm, y = divmod(quo_r.lift(t), a2wr.dim)
            s3 = a2wr.mul_sparse(u_vec, {y: one})
            step = wr.act_left_sparse({x: one}, {mn_to_wr(mm): one})
            step = wr.act_right_sparse(step, rf)
            mn_part = extract_mn(step, r_tau)
            row = {}
            for mm2, c1 in mn_part.items():
                for y2, c2 in s3.items():
                    key = mm2 * a2wr.dim + y2
                    v = row.get(key, field.zero) + c1 * c2
                    if v:
                        row[key] = v
                    else:
                        row.pop(key, None)
            img = quo_r.project(row)
            if img:
                lact_r[(x, t)] = sorted(img.items())
    right_source = make_bimodule(left_wr, right_wr, deg_r, lact_r, ract_r, names_r, jobs=jobs)

    cols_g = []
    for t in range(quo_r.dim):
        mm, y = divmod(quo_r.lift(t), a2wr.dim)
        cols_g.append(wr.act_right_sparse({mn_to_wr(mm): one}, {y: one}))
    inv_g = invert_dict_cols(cols_g, field)
    if inv_g is None:
        raise InternalCheckError("right induction map is singular")
    _certify_map(right_source, wr, cols_g, inv_g)
    right_iso = BimoduleMap(right_source, wr, _dense_from_cols(field, cols_g, wr.dim),
                            _dense_from_cols(field, inv_g, quo_r.dim))

    cross_cols = _compose_cols(inv_g, cols_f, field)
    cross_inv = _compose_cols(inv_f, cols_g, field)
    _certify_map(left_source, right_source, cross_cols, cross_inv)
    cross_iso = BimoduleMap(left_source, right_source,
                            _dense_from_cols(field, cross_cols, quo_r.dim),
                            _dense_from_cols(field, cross_inv, quo_l.dim))

    return WreathInduction(m, n, wr, left_source, right_source, left_iso, right_iso,
                           cross_iso, quo_l, m_idxs)
