"""Graded bimodules over an acted coefficient algebra, and Morita verification.

A `GradedBimodule` ties together two structure maps with a shared coefficient
algebra, a degree map into the common grading group, and sparse action
constants for both sides.  Validation covers the bimodule axioms, the grading
law (homogeneous actions land in product components) and the coefficient
twist law: acting by a coefficient element on the right of a homogeneous
vector equals acting on the left by its degree-translate.

Axiom sweeps run over all basis triples when the triple count is small, and
over a verified generating set of the acting algebra otherwise; the reduced
sweep is provably equivalent (intertwining with generators of a unital
algebra extends to the whole algebra) and still produces concrete triple
witnesses.

Morita verification is certification, not decision: the dual and the two
tensor quotients are computed exactly, and isomorphisms are searched for as
invertible elements of the graded hom space, first over the hom basis, then
over seeded random combinations.  A failed search never claims
non-equivalence; only a dimension mismatch refutes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InternalCheckError, ValidationError
from .exactmath import (Echelon, Matrix, QuotientSpace, add_scaled,
                        invert_dict_cols, sparsify)
from .gacted import StructureMap
from .galgebra import GradedAlgebra, SparseVec, _canon_sparse
from .sweeps import scan_chunks

FULL_SWEEP_TRIPLES = 1_000_000


class GradedBimodule:
    """Validated graded bimodule; construct via `make_bimodule`."""

    __slots__ = ("left", "right", "dim", "degree", "lact", "ract", "names", "_components")

    def __init__(self, left: StructureMap, right: StructureMap, dim: int, degree: list[int],
                 lact: dict[tuple[int, int], SparseVec], ract: dict[tuple[int, int], SparseVec],
                 names: list[str] | None):
        self.left = left
        self.right = right
        self.dim = dim
        self.degree = degree
        self.lact = lact
        self.ract = ract
        self.names = names
        self._components: dict[int, list[int]] | None = None

    @property
    def algebra_left(self) -> GradedAlgebra:
        return self.left.target

    @property
    def algebra_right(self) -> GradedAlgebra:
        return self.right.target

    @property
    def field(self):
        return self.left.target.field

    @property
    def group(self):
        return self.left.target.group

    def act_left_sparse(self, avec: Mapping[int, object], mvec: Mapping[int, object]) -> dict:
        out: dict[int, object] = {}
        zero = self.field.zero
        for i, ai in avec.items():
            for j, mj in mvec.items():
                entry = self.lact.get((i, j))
                if entry:
                    add_scaled(out, ai * mj, entry, zero)
        return out

    def act_right_sparse(self, mvec: Mapping[int, object], avec: Mapping[int, object]) -> dict:
        out: dict[int, object] = {}
        zero = self.field.zero
        for j, mj in mvec.items():
            for i, ai in avec.items():
                entry = self.ract.get((j, i))
                if entry:
                    add_scaled(out, mj * ai, entry, zero)
        return out

    def component_indices(self, g: int) -> list[int]:
        if self._components is None:
            comp: dict[int, list[int]] = {}
            for i, d in enumerate(self.degree):
                comp.setdefault(d, []).append(i)
            self._components = comp
        return self._components.get(g, [])

    def name_of(self, j: int) -> str:
        return self.names[j] if self.names is not None else f"m{j}"

    def __repr__(self) -> str:
        return (f"GradedBimodule(dim={self.dim}, left={self.algebra_left.dim}, "
                f"right={self.algebra_right.dim})")


@dataclass
class BimoduleMap:
    """A degree-preserving map of bimodules; `inverse` is set on certified isomorphisms."""

    source: GradedBimodule
    target: GradedBimodule
    matrix: Matrix
    inverse: Matrix | None = None


# ---------------------------------------------------------------------------
# construction & validation


def make_bimodule(left: StructureMap, right: StructureMap, degree: list[int],
                  lact: Mapping[tuple[int, int], Iterable[tuple[int, object]]],
                  ract: Mapping[tuple[int, int], Iterable[tuple[int, object]]],
                  names: list[str] | None = None, *, jobs: int = 1) -> GradedBimodule:
    a, a2 = left.target, right.target
    if left.source != right.source:
        raise ValueError("the two structure maps must share the coefficient algebra")
    if left.degree_embed != right.degree_embed:
        raise ValueError("the two structure maps must embed degrees the same way")
    if a.group != a2.group:
        raise ValueError("the two algebras must share the grading group")
    if a.field != a2.field:
        raise ValueError("the two algebras must share the field")
    dim = len(degree)
    for d in degree:
        if not 0 <= d < a.group.order:
            raise ValueError(f"degree index {d} outside the grading group")
    lact_c: dict[tuple[int, int], SparseVec] = {}
    for (i, j), items in lact.items():
        if not (0 <= i < a.dim and 0 <= j < dim):
            raise ValueError(f"left action constant indexed by ({i}, {j}) out of range")
        v = _canon_sparse(items, a.field.zero)
        if any(not 0 <= k < dim for k, _ in v):
            raise ValueError("left action target out of range")
        if v:
            lact_c[(i, j)] = v
    ract_c: dict[tuple[int, int], SparseVec] = {}
    for (j, i), items in ract.items():
        if not (0 <= i < a2.dim and 0 <= j < dim):
            raise ValueError(f"right action constant indexed by ({j}, {i}) out of range")
        v = _canon_sparse(items, a.field.zero)
        if any(not 0 <= k < dim for k, _ in v):
            raise ValueError("right action target out of range")
        if v:
            ract_c[(j, i)] = v
    m = GradedBimodule(left, right, dim, list(degree), lact_c, ract_c, names)
    _check_module_units(m)
    _check_left_associativity(m, jobs)
    _check_right_associativity(m, jobs)
    _check_middle_associativity(m, jobs)
    _check_module_grading(m)
    _check_twist_law(m, jobs)
    return m


def _check_module_units(m: GradedBimodule) -> None:
    one_l = sparsify(m.algebra_left.one)
    one_r = sparsify(m.algebra_right.one)
    for j in range(m.dim):
        ej = {j: m.field.one}
        if m.act_left_sparse(one_l, ej) != ej:
            raise ValidationError("module-unit", f"1 * {m.name_of(j)} != {m.name_of(j)}", (j,))
        if m.act_right_sparse(ej, one_r) != ej:
            raise ValidationError("module-unit", f"{m.name_of(j)} * 1 != {m.name_of(j)}", (j,))


def _left_pairs(m: GradedBimodule) -> list[tuple[int, int]] | None:
    """(i, j) pairs of left-algebra indices to sweep; None means all pairs."""
    a = m.algebra_left
    if a.dim * a.dim * m.dim <= FULL_SWEEP_TRIPLES:
        return None
    return [(g, j) for g in a.generators() for j in range(a.dim)]


def _check_left_associativity(m: GradedBimodule, jobs: int) -> None:
    a = m.algebra_left
    zero = m.field.zero
    pairs = _left_pairs(m)

    def check_pair(i: int, j: int):
        ij = a.mul_basis(i, j)
        for k in range(m.dim):
            lhs: dict[int, object] = {}
            for t, c in ij:
                entry = m.lact.get((t, k))
                if entry:
                    add_scaled(lhs, c, entry, zero)
            inner = m.lact.get((j, k))
            rhs: dict[int, object] = {}
            if inner:
                for s, d in inner:
                    entry = m.lact.get((i, s))
                    if entry:
                        add_scaled(rhs, d, entry, zero)
            if lhs != rhs:
                return k
        return None

    if pairs is None:
        def worker(lo: int, hi: int):
            for pair in range(lo, hi):
                i, j = divmod(pair, a.dim)
                k = check_pair(i, j)
                if k is not None:
                    return (pair, i, j, k)
            return None

        hit = scan_chunks(a.dim * a.dim, worker, jobs)
    else:
        def worker(lo: int, hi: int):
            for pos in range(lo, hi):
                i, j = pairs[pos]
                k = check_pair(i, j)
                if k is not None:
                    return (pos, i, j, k)
            return None

        hit = scan_chunks(len(pairs), worker, jobs)
    if hit is not None:
        _, i, j, k = hit
        raise ValidationError(
            "module-left-associativity",
            f"({a.name_of(i)} {a.name_of(j)}) {m.name_of(k)} != {a.name_of(i)} ({a.name_of(j)} {m.name_of(k)})",
            (i, j, k),
        )


def _check_right_associativity(m: GradedBimodule, jobs: int) -> None:
    a2 = m.algebra_right
    zero = m.field.zero
    full = a2.dim * a2.dim * m.dim <= FULL_SWEEP_TRIPLES
    pairs = ([(x, y) for x in range(a2.dim) for y in range(a2.dim)] if full
             else [(x, g) for x in range(a2.dim) for g in a2.generators()])

    def worker(lo: int, hi: int):
        for pos in range(lo, hi):
            x, y = pairs[pos]
            xy = a2.mul_basis(x, y)
            for k in range(m.dim):
                lhs: dict[int, object] = {}
                for t, c in xy:
                    entry = m.ract.get((k, t))
                    if entry:
                        add_scaled(lhs, c, entry, zero)
                inner = m.ract.get((k, x))
                rhs: dict[int, object] = {}
                if inner:
                    for s, d in inner:
                        entry = m.ract.get((s, y))
                        if entry:
                            add_scaled(rhs, d, entry, zero)
                if lhs != rhs:
                    return (pos, x, y, k)
        return None

    hit = scan_chunks(len(pairs), worker, jobs)
    if hit is not None:
        _, x, y, k = hit
        raise ValidationError(
            "module-right-associativity",
            f"{m.name_of(k)} ({a2.name_of(x)} {a2.name_of(y)}) != ({m.name_of(k)} {a2.name_of(x)}) {a2.name_of(y)}",
            (k, x, y),
        )


def _check_middle_associativity(m: GradedBimodule, jobs: int) -> None:
    a, a2 = m.algebra_left, m.algebra_right
    full = a.dim * m.dim * a2.dim <= FULL_SWEEP_TRIPLES
    lefts = range(a.dim) if full else a.generators()
    rights = range(a2.dim) if full else a2.generators()
    pairs = [(i, x) for i in lefts for x in rights]

    def worker(lo: int, hi: int):
        for pos in range(lo, hi):
            i, x = pairs[pos]
            ei = {i: m.field.one}
            ex = {x: m.field.one}
            for k in range(m.dim):
                ek = {k: m.field.one}
                lhs = m.act_right_sparse(m.act_left_sparse(ei, ek), ex)
                rhs = m.act_left_sparse(ei, m.act_right_sparse(ek, ex))
                if lhs != rhs:
                    return (pos, i, k, x)
        return None

    hit = scan_chunks(len(pairs), worker, jobs)
    if hit is not None:
        _, i, k, x = hit
        raise ValidationError(
            "module-middle-associativity",
            f"({a.name_of(i)} {m.name_of(k)}) {a2.name_of(x)} != {a.name_of(i)} ({m.name_of(k)} {a2.name_of(x)})",
            (i, k, x),
        )


def _check_module_grading(m: GradedBimodule) -> None:
    g = m.group
    a, a2 = m.algebra_left, m.algebra_right
    for (i, j), items in m.lact.items():
        want = g.mul(a.degree[i], m.degree[j])
        for k, _ in items:
            if m.degree[k] != want:
                raise ValidationError(
                    "module-grading",
                    f"{a.name_of(i)} * {m.name_of(j)} hits {m.name_of(k)} outside the product component",
                    (i, j, k),
                )
    for (j, i), items in m.ract.items():
        want = g.mul(m.degree[j], a2.degree[i])
        for k, _ in items:
            if m.degree[k] != want:
                raise ValidationError(
                    "module-grading",
                    f"{m.name_of(j)} * {a2.name_of(i)} hits {m.name_of(k)} outside the product component",
                    (j, i, k),
                )


def _check_twist_law(m: GradedBimodule, jobs: int) -> None:
    """Right action by a coefficient equals left action by its degree-translate."""
    c = m.left.source
    calg = c.algebra

    def worker(lo: int, hi: int):
        for k in range(lo, hi):
            x = m.degree[k]
            ek = {k: m.field.one}
            for ci in range(calg.dim):
                rhs_vec = m.right.apply_sparse({ci: calg.field.one})
                lhs_vec = m.left.apply_sparse(c.act_sparse(x, {ci: calg.field.one}))
                if m.act_right_sparse(ek, rhs_vec) != m.act_left_sparse(lhs_vec, ek):
                    return (k, ci)
        return None

    hit = scan_chunks(m.dim, worker, jobs)
    if hit is not None:
        k, ci = hit
        raise ValidationError(
            "twist-law",
            f"{m.name_of(k)} * coeff {calg.name_of(ci)} != (degree-translate of {calg.name_of(ci)}) * {m.name_of(k)}",
            (k, ci),
        )


def regular_bimodule(z: StructureMap, *, jobs: int = 1) -> GradedBimodule:
    """The algebra of `z` as a bimodule over itself."""
    a = z.target
    return make_bimodule(z, z, list(a.degree), dict(a.mult),
                         dict(a.mult), a.names, jobs=jobs)


# ---------------------------------------------------------------------------
# dual


def dual(m: GradedBimodule, *, jobs: int = 1) -> GradedBimodule:
    """The left-side dual: left-linear maps into the left algebra, sides swapped.

    The dual of an (A, A')-bimodule is the space of left-A-linear maps from
    the bimodule to A, with actions (a' . f . a)(x) = f(x a') a and the degree
    convention that a degree-g functional sends the degree-h component into
    the degree-hg component of A.  Computed per degree; a full ungraded solve
    cross-checks that the graded pieces exhaust the hom space.
    """
    a, a2 = m.algebra_left, m.algebra_right
    g = m.group
    field = m.field
    gens = a.generators()

    def linearity_rows(unknowns: list[tuple[int, int]]) -> Iterable[dict[int, object]]:
        # unknowns are matrix positions (row in A, column in M) of the functional
        by_col: dict[int, list[tuple[int, int]]] = {}
        for uid, (r, x) in enumerate(unknowns):
            by_col.setdefault(x, []).append((r, uid))
        for gen in gens:
            for x in range(m.dim):
                rows: dict[int, dict[int, object]] = {}
                for k, c in m.lact.get((gen, x), ()):
                    for r, uid in by_col.get(k, ()):
                        row = rows.setdefault(r, {})
                        row[uid] = row.get(uid, field.zero) + c
                for s, uid in by_col.get(x, ()):
                    for r, cc in a.mul_basis(gen, s):
                        row = rows.setdefault(r, {})
                        row[uid] = row.get(uid, field.zero) - cc
                for r in sorted(rows):
                    row = {u: v for u, v in rows[r].items() if v}
                    if row:
                        yield row

    functionals: list[dict[tuple[int, int], object]] = []
    piece_degree: list[int] = []
    lead_unknown: list[tuple[int, int]] = []
    for gd in g.elements():
        unknowns: list[tuple[int, int]] = []
        for x in range(m.dim):
            for r in a.component_indices(g.mul(m.degree[x], gd)):
                unknowns.append((r, x))
        if not unknowns:
            continue
        ech = Echelon(len(unknowns), field)
        for row in linearity_rows(unknowns):
            ech.insert(row)
        for f, vec in zip(ech.free_columns(), ech.kernel_basis()):
            functionals.append({unknowns[t]: s for t, s in vec.items()})
            piece_degree.append(gd)
            lead_unknown.append(unknowns[f])

    # completeness: the graded pieces must exhaust the ungraded hom space
    all_unknowns = [(r, x) for x in range(m.dim) for r in range(a.dim)]
    ech_all = Echelon(len(all_unknowns), field)
    for row in linearity_rows(all_unknowns):
        ech_all.insert(row)
    if len(all_unknowns) - ech_all.rank != len(functionals):
        raise InternalCheckError("graded pieces of the dual do not exhaust the hom space")

    ddim = len(functionals)

    def coords_of(fmap: dict[tuple[int, int], object]) -> list:
        # each dual basis functional has coefficient 1 at its own free
        # position and 0 at every other functional's free position
        coords = [fmap.get(lead_unknown[t], field.zero) for t in range(ddim)]
        residue = dict(fmap)
        for t, c in enumerate(coords):
            if c:
                for rx, s in functionals[t].items():
                    v = residue.get(rx, field.zero) - c * s
                    if v:
                        residue[rx] = v
                    else:
                        residue.pop(rx, None)
        if residue:
            raise InternalCheckError("functional outside the span of the dual basis")
        return coords

    lact_d: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for t in range(ddim):
        by_col: dict[int, list[tuple[int, object]]] = {}
        for (r, x), s in functionals[t].items():
            by_col.setdefault(x, []).append((r, s))
        for i in range(a2.dim):
            # (a' . f)(y) = f(y a')
            moved: dict[tuple[int, int], object] = {}
            for y in range(m.dim):
                for k, c in m.ract.get((y, i), ()):
                    for r, s in by_col.get(k, ()):
                        v = moved.get((r, y), field.zero) + c * s
                        if v:
                            moved[(r, y)] = v
                        else:
                            moved.pop((r, y), None)
            coords = coords_of(moved)
            entry = [(k, s) for k, s in enumerate(coords) if s]
            if entry:
                lact_d[(i, t)] = entry
    ract_d: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for t in range(ddim):
        for i in range(a.dim):
            # (f . a)(y) = f(y) a
            moved = {}
            for (s, x), c in functionals[t].items():
                for r, cc in a.mul_basis(s, i):
                    v = moved.get((r, x), field.zero) + c * cc
                    if v:
                        moved[(r, x)] = v
                    else:
                        moved.pop((r, x), None)
            coords = coords_of(moved)
            entry = [(k, s) for k, s in enumerate(coords) if s]
            if entry:
                ract_d[(t, i)] = entry
    names = [f"f{t}" for t in range(ddim)]
    return make_bimodule(m.right, m.left, piece_degree, lact_d, ract_d, names, jobs=jobs)


# ---------------------------------------------------------------------------
# tensor over the shared algebra


def tensor_over(m: GradedBimodule, n: GradedBimodule, *, jobs: int = 1) -> GradedBimodule:
    """Tensor product over the shared middle algebra, as an exact quotient.

    The middle relations are spanned by (x b) @ y - x @ (b y) with b running
    over a verified generating set of the middle algebra; the quotient basis
    is the deterministic echelon choice of free columns.
    """
    if m.right != n.left:
        raise ValueError("tensor_over requires the same middle algebra with the identical structure map")
    mid = m.algebra_right
    field = m.field
    total = m.dim * n.dim
    quo = QuotientSpace(total, field)
    for b in mid.generators():
        for jm in range(m.dim):
            mb = m.ract.get((jm, b), ())
            for jn in range(n.dim):
                row: dict[int, object] = {}
                for k, c in mb:
                    row[k * n.dim + jn] = row.get(k * n.dim + jn, field.zero) + c
                for l, d in n.lact.get((b, jn), ()):
                    key = jm * n.dim + l
                    v = row.get(key, field.zero) - d
                    if v:
                        row[key] = v
                    else:
                        row.pop(key, None)
                if row:
                    quo.add_relation(row)
    quo.finalize()
    qdim = quo.dim
    degree = []
    names = []
    for t in range(qdim):
        jm, jn = divmod(quo.lift(t), n.dim)
        degree.append(m.group.mul(m.degree[jm], n.degree[jn]))
        names.append(f"{m.name_of(jm)}(x){n.name_of(jn)}")
    lact_q: dict[tuple[int, int], list[tuple[int, object]]] = {}
    a = m.algebra_left
    for i in range(a.dim):
        for t in range(qdim):
            jm, jn = divmod(quo.lift(t), n.dim)
            entry = m.lact.get((i, jm))
            if not entry:
                continue
            img = quo.project({k * n.dim + jn: c for k, c in entry})
            if img:
                lact_q[(i, t)] = sorted(img.items())
    ract_q: dict[tuple[int, int], list[tuple[int, object]]] = {}
    a2 = n.algebra_right
    for t in range(qdim):
        jm, jn = divmod(quo.lift(t), n.dim)
        for i in range(a2.dim):
            entry = n.ract.get((jn, i))
            if not entry:
                continue
            img = quo.project({jm * n.dim + l: d for l, d in entry})
            if img:
                ract_q[(t, i)] = sorted(img.items())
    return make_bimodule(m.left, n.right, degree, lact_q, ract_q, names, jobs=jobs)


# ---------------------------------------------------------------------------
# hom spaces and isomorphism search


def hom_space(m: GradedBimodule, n: GradedBimodule, *, jobs: int = 1) -> list[BimoduleMap]:
    """Basis of degree-preserving maps intertwining both actions."""
    maps = _hom_basis(m, n)
    out = []
    for h in maps:
        mat = Matrix.zeros(m.field, n.dim, m.dim)
        for (t, s), c in h.items():
            mat.rows[t][s] = c
        out.append(BimoduleMap(m, n, mat))
    return out


def _hom_basis(m: GradedBimodule, n: GradedBimodule) -> list[dict[tuple[int, int], object]]:
    if m.left != n.left or m.right != n.right:
        raise ValueError("hom_space requires the same pair of structure maps on both sides")
    field = m.field
    unknowns: list[tuple[int, int]] = []
    for s in range(m.dim):
        for t in n.component_indices(m.degree[s]):
            unknowns.append((t, s))
    uid = {ts: k for k, ts in enumerate(unknowns)}
    ech = Echelon(len(unknowns), field)

    def insert_intertwine(act_m, act_n, alg_gens):
        for gen in alg_gens:
            for s in range(m.dim):
                rows: dict[int, dict[int, object]] = {}
                entry = act_m(gen, s)
                if entry:
                    for k, c in entry:
                        for t in n.component_indices(m.degree[k]):
                            u = uid.get((t, k))
                            if u is not None:
                                row = rows.setdefault(t, {})
                                row[u] = row.get(u, field.zero) + c
                for t0 in n.component_indices(m.degree[s]):
                    u = uid.get((t0, s))
                    if u is None:
                        continue
                    for r, cc in act_n(gen, t0):
                        row = rows.setdefault(r, {})
                        row[u] = row.get(u, field.zero) - cc
                for r in sorted(rows):
                    row = {k: v for k, v in rows[r].items() if v}
                    if row:
                        ech.insert(row)

    insert_intertwine(lambda g, s: m.lact.get((g, s), ()),
                      lambda g, t: n.lact.get((g, t), ()),
                      m.algebra_left.generators())
    insert_intertwine(lambda g, s: m.ract.get((s, g), ()),
                      lambda g, t: n.ract.get((t, g), ()),
                      m.algebra_right.generators())
    basis = []
    for vec in ech.kernel_basis():
        basis.append({unknowns[u]: c for u, c in vec.items()})
    return basis


@dataclass
class IsoResult:
    """Outcome of an isomorphism search between two bimodules.

    status is "certified" (map with exact inverse attached), "refuted-dimension"
    (component dimensions differ, definitely non-isomorphic), or
    "not-certified" (no invertible element found; not a non-existence claim).
    """

    status: str
    iso: BimoduleMap | None = None
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def find_isomorphism(m: GradedBimodule, n: GradedBimodule, seed: int = 0,
                     trials: int = 16) -> IsoResult:
    """Search the hom space for a certified isomorphism."""
    if m.dim != n.dim:
        return IsoResult("refuted-dimension", detail=f"dimensions differ: {m.dim} vs {n.dim}")
    for g in m.group.elements():
        dm, dn = len(m.component_indices(g)), len(n.component_indices(g))
        if dm != dn:
            return IsoResult(
                "refuted-dimension",
                detail=f"component {m.group.name_of(g)} dimensions differ: {dm} vs {dn}",
            )
    if m.dim == 0:
        empty = Matrix.zeros(m.field, 0, 0)
        return IsoResult("certified", BimoduleMap(m, n, empty, empty))
    basis = _hom_basis(m, n)
    rng = random.Random(seed)
    field = m.field

    def candidates():
        for h in basis:
            yield h
        for _ in range(trials):
            combo: dict[tuple[int, int], object] = {}
            for h in basis:
                c = field.random(rng)
                if c:
                    for ts, v in h.items():
                        w = combo.get(ts, field.zero) + c * v
                        if w:
                            combo[ts] = w
                        else:
                            combo.pop(ts, None)
            yield combo

    for h in candidates():
        cols: list[dict[int, object]] = [{} for _ in range(m.dim)]
        for (t, s), c in h.items():
            cols[s][t] = c
        inv_cols = invert_dict_cols(cols, field)
        if inv_cols is None:
            continue
        _certify_map(m, n, cols, inv_cols)
        mat = Matrix.zeros(field, n.dim, m.dim)
        for s, col in enumerate(cols):
            for t, c in col.items():
                mat.rows[t][s] = c
        inv = Matrix.zeros(field, m.dim, n.dim)
        for s, col in enumerate(inv_cols):
            for t, c in col.items():
                inv.rows[t][s] = c
        return IsoResult("certified", BimoduleMap(m, n, mat, inv))
    return IsoResult("not-certified",
                     detail=f"no invertible element among {len(basis)} basis maps and {trials} random combinations")


def _compose_cols(f: list[dict[int, object]], g: list[dict[int, object]], field) -> list[dict[int, object]]:
    out: list[dict[int, object]] = []
    for col in g:
        acc: dict[int, object] = {}
        for k, c in col.items():
            add_scaled(acc, c, f[k].items(), field.zero)
        out.append(acc)
    return out


def _certify_map(m: GradedBimodule, n: GradedBimodule, cols: list[dict[int, object]],
                 inv_cols: list[dict[int, object]]) -> None:
    """Post-hoc certification of an isomorphism candidate (construction bug trap)."""
    field = m.field
    comp = _compose_cols(cols, inv_cols, field)
    for t, col in enumerate(comp):
        if col != {t: field.one}:
            raise InternalCheckError("claimed inverse fails on the right")
    comp = _compose_cols(inv_cols, cols, field)
    for s, col in enumerate(comp):
        if col != {s: field.one}:
            raise InternalCheckError("claimed inverse fails on the left")
    for s, col in enumerate(cols):
        for t in col:
            if n.degree[t] != m.degree[s]:
                raise InternalCheckError("isomorphism candidate is not degree preserving")
    a, a2 = m.algebra_left, m.algebra_right
    lefts = range(a.dim) if a.dim * m.dim <= 40_000 else a.generators()
    rights = range(a2.dim) if a2.dim * m.dim <= 40_000 else a2.generators()

    def tmap(vec: dict[int, object]) -> dict[int, object]:
        acc: dict[int, object] = {}
        for s, c in vec.items():
            add_scaled(acc, c, cols[s].items(), field.zero)
        return acc

    for i in lefts:
        ei = {i: field.one}
        for s in range(m.dim):
            if tmap(m.act_left_sparse(ei, {s: field.one})) != n.act_left_sparse(ei, cols[s]):
                raise InternalCheckError("isomorphism candidate fails left intertwining")
    for i in rights:
        ei = {i: field.one}
        for s in range(m.dim):
            if tmap(m.act_right_sparse({s: field.one}, ei)) != n.act_right_sparse(cols[s], ei):
                raise InternalCheckError("isomorphism candidate fails right intertwining")


# ---------------------------------------------------------------------------
# Morita verification


@dataclass
class MoritaResult:
    """Report data for a Morita verification run."""

    module_dim: int
    dual_dim: int
    left_product_dim: int
    right_product_dim: int
    left_algebra_dim: int
    right_algebra_dim: int
    left_iso: IsoResult
    right_iso: IsoResult
    seed: int
    trials: int

    @property
    def certified(self) -> bool:
        return self.left_iso.certified and self.right_iso.certified

    @property
    def refuted(self) -> bool:
        return self.left_iso.status == "refuted-dimension" or self.right_iso.status == "refuted-dimension"


def verify_morita(m: GradedBimodule, seed: int = 0, trials: int = 16, *, jobs: int = 1) -> MoritaResult:
    """Check that a bimodule induces a graded Morita equivalence over the coefficients.

    Computes the dual, both tensor quotients, and searches for certified
    isomorphisms with the two regular bimodules.
    """
    mdual = dual(m, jobs=jobs)
    left_prod = tensor_over(m, mdual, jobs=jobs)
    right_prod = tensor_over(mdual, m, jobs=jobs)
    reg_left = regular_bimodule(m.left, jobs=jobs)
    reg_right = regular_bimodule(m.right, jobs=jobs)
    left_iso = find_isomorphism(left_prod, reg_left, seed, trials)
    right_iso = find_isomorphism(right_prod, reg_right, seed, trials)
    return MoritaResult(
        module_dim=m.dim,
        dual_dim=mdual.dim,
        left_product_dim=left_prod.dim,
        right_product_dim=right_prod.dim,
        left_algebra_dim=m.algebra_left.dim,
        right_algebra_dim=m.algebra_right.dim,
        left_iso=left_iso,
        right_iso=right_iso,
        seed=seed,
        trials=trials,
    )
