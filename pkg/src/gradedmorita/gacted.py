"""Graded algebras with a group action, and structure maps into centralizers.

An `ActedAlgebra` is a validated graded algebra together with a left action of
a finite group by algebra automorphisms, compatible with the grading.  The
acting group usually coincides with the grading group (the action then moves
the degree-h component to the degree-ghg^-1 component), but the two may
differ: the wreath construction acts a wreath product on an algebra graded by
the plain n-fold product.  The `degree_action` table records how acting
elements move grading elements; for the same-group case it is conjugation.

A `StructureMap` makes a graded algebra A an algebra over an acted coefficient
algebra: a unital homomorphism into the centralizer of A's identity
component, degree preserving (through an embedding of grading groups) and
equivariant for the conjugation action induced by a chosen system of
homogeneous units of A.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InternalCheckError, ValidationError
from .exactmath import Matrix, invert, sparsify
from .galgebra import GradedAlgebra, Subspace, Unit, centralizer, component, make_graded_algebra
from .groups import FiniteGroup
from .sweeps import scan_chunks


class ActedAlgebra:
    """Validated acted algebra; construct via `attach_action`."""

    __slots__ = ("algebra", "acting_group", "action", "degree_action")

    def __init__(self, algebra: GradedAlgebra, acting_group: FiniteGroup,
                 action: list[Matrix], degree_action: list[list[int]]):
        self.algebra = algebra
        self.acting_group = acting_group
        self.action = action
        self.degree_action = degree_action

    def act(self, g: int, vec: list) -> list:
        return self.action[g].apply(vec)

    def act_sparse(self, g: int, vec: dict) -> dict:
        return self.action[g].apply_sparse(vec)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ActedAlgebra)
            and self.algebra == other.algebra
            and self.acting_group == other.acting_group
            and self.action == other.action
            and self.degree_action == other.degree_action
        )

    def __repr__(self) -> str:
        return f"ActedAlgebra(dim={self.algebra.dim}, acting_order={self.acting_group.order})"


def conjugation_degree_action(group: FiniteGroup) -> list[list[int]]:
    return [[group.conjugate(g, h) for h in group.elements()] for g in group.elements()]


def attach_action(c: GradedAlgebra, matrices: list[Matrix],
                  acting_group: FiniteGroup | None = None,
                  degree_action: list[list[int]] | None = None, *, jobs: int = 1) -> ActedAlgebra:
    """Validate a group action by automorphisms on a graded algebra.

    With no explicit acting group the grading group acts and degrees move by
    conjugation.  Checks: each matrix invertible, identity acts trivially,
    the left action law, automorphism property (multiplicative and unital),
    and grading compatibility against `degree_action`.
    """
    group = acting_group if acting_group is not None else c.group
    if degree_action is None:
        if group != c.group:
            raise ValueError("a degree_action table is required when the acting group differs from the grading group")
        degree_action = conjugation_degree_action(group)
    if len(matrices) != group.order:
        raise ValueError(f"expected {group.order} action matrices, got {len(matrices)}")
    for g, mat in enumerate(matrices):
        if mat.nrows != c.dim or mat.ncols != c.dim:
            raise ValueError(f"action matrix for element {g} has shape {mat.nrows}x{mat.ncols}")
        if invert(mat) is None:
            raise ValidationError("action-invertible", f"action matrix of {group.name_of(g)} is singular", (g,))
    if not matrices[group.identity].is_identity():
        raise ValidationError("action-identity", "identity element does not act as the identity matrix",
                              (group.identity,))

    order = group.order

    def comp_worker(lo: int, hi: int):
        for pair in range(lo, hi):
            g, h = divmod(pair, order)
            if matrices[g] @ matrices[h] != matrices[group.mul(g, h)]:
                return (pair,)
        return None

    hit = scan_chunks(order * order, comp_worker, jobs)
    if hit is not None:
        g, h = divmod(hit[0], order)
        raise ValidationError("action-composition", f"acting by {group.name_of(g)} then {group.name_of(h)} "
                              "differs from acting by their product", (g, h))

    one_sparse = sparsify(c.one)

    def aut_worker(lo: int, hi: int):
        for g in range(lo, hi):
            mat = matrices[g]
            if mat.apply_sparse(one_sparse) != one_sparse:
                return (g, -1, -1)
            cols = [mat.apply_sparse({i: c.field.one}) for i in range(c.dim)]
            for i in range(c.dim):
                for j in range(c.dim):
                    prod = c.mul_basis(i, j)
                    lhs = mat.apply_sparse(dict(prod)) if prod else {}
                    if lhs != c.mul_sparse(cols[i], cols[j]):
                        return (g, i, j)
        return None

    hit = scan_chunks(order, aut_worker, jobs)
    if hit is not None:
        g, i, j = hit
        if i < 0:
            raise ValidationError("action-unital", f"{group.name_of(g)} does not fix the unit", (g,))
        raise ValidationError(
            "action-automorphism",
            f"acting by {group.name_of(g)} is not multiplicative on {c.name_of(i)} * {c.name_of(j)}",
            (g, i, j),
        )

    for g in range(order):
        mat = matrices[g]
        for k in range(c.dim):
            want = degree_action[g][c.degree[k]]
            col = mat.apply_sparse({k: c.field.one})
            for r in col:
                if c.degree[r] != want:
                    raise ValidationError(
                        "action-grading",
                        f"acting by {group.name_of(g)} moves {c.name_of(k)} outside the expected component",
                        (g, k, r),
                    )
    return ActedAlgebra(c, group, matrices, degree_action)


def trivial_action(c: GradedAlgebra, *, jobs: int = 1) -> ActedAlgebra:
    """The grading group acting trivially (valid when conjugation fixes all degrees)."""
    eye = Matrix.identity(c.field, c.dim)
    return attach_action(c, [eye for _ in c.group.elements()], jobs=jobs)


# ---------------------------------------------------------------------------
# induced action on the centralizer of the identity component


@dataclass
class CentralizerAction:
    """Conjugation action of crossed-product units on the centralizer of the
    identity component, written in the centralizer's echelon basis."""

    subspace: Subspace
    matrices: list[Matrix]


def induced_centralizer_action(a: GradedAlgebra, units: dict[int, Unit]) -> CentralizerAction:
    """Conjugation by the chosen units, restricted to the centralizer basis.

    The result does not depend on the particular unit choice (units differing
    by a unit of the identity component induce the same matrices); conjugation
    leaving the centralizer would indicate corrupted inputs and raises
    InternalCheckError.
    """
    z = centralizer(a, component(a, a.group.identity))
    mats = []
    for g in a.group.elements():
        u = units[g]
        cols = []
        for vec in z.basis:
            conj = a.mul(a.mul(u.element, vec), u.inverse)
            coords = z.coords_of(conj)
            if coords is None:
                raise InternalCheckError(
                    f"conjugation by the degree-{a.group.name_of(g)} unit leaves the centralizer"
                )
            cols.append(coords)
        mats.append(Matrix(a.field, [list(r) for r in zip(*cols)], z.dim, z.dim))
    return CentralizerAction(z, mats)


# ---------------------------------------------------------------------------
# structure maps


@dataclass
class StructureMap:
    """Validated structure map; construct via `make_structure_map`.

    `matrix` maps coefficient-algebra coordinates to coordinates of the target
    algebra; `units` certify the target as a crossed product and induce the
    equivariance action; `degree_embed` sends grading elements of the source
    into the grading group of the target.
    """

    source: ActedAlgebra
    target: GradedAlgebra
    matrix: Matrix
    units: dict[int, Unit]
    degree_embed: list[int] = dc_field(default_factory=list)

    def apply(self, vec: list) -> list:
        return self.matrix.apply(vec)

    def apply_sparse(self, vec: dict) -> dict:
        return self.matrix.apply_sparse(vec)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StructureMap)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
            and self.degree_embed == other.degree_embed
            and self.units == other.units
        )


def make_structure_map(c: ActedAlgebra, a: GradedAlgebra, matrix: Matrix,
                       units: dict[int, Unit], degree_embed: list[int] | None = None,
                       *, jobs: int = 1) -> StructureMap:
    """Validate a structure map from an acted coefficient algebra into `a`."""
    calg = c.algebra
    if matrix.nrows != a.dim or matrix.ncols != calg.dim:
        raise ValueError(f"structure matrix has shape {matrix.nrows}x{matrix.ncols}, "
                         f"expected {a.dim}x{calg.dim}")
    if c.acting_group != a.group:
        raise ValueError("the acting group of the coefficient algebra must be the grading group of the target")
    if degree_embed is None:
        if calg.group != a.group:
            raise ValueError("a degree_embed is required when the grading groups differ")
        degree_embed = list(range(a.group.order))
    if len(degree_embed) != calg.group.order:
        raise ValueError("degree_embed length does not match the source grading group")
    for k1 in calg.group.elements():
        for k2 in calg.group.elements():
            if degree_embed[calg.group.mul(k1, k2)] != a.group.mul(degree_embed[k1], degree_embed[k2]):
                raise ValidationError("degree-embed", "degree embedding is not a group homomorphism", (k1, k2))

    _check_units(a, units)

    cols = [matrix.apply_sparse({i: calg.field.one}) for i in range(calg.dim)]

    one_a = sparsify(a.one)
    if matrix.apply_sparse(sparsify(calg.one)) != one_a:
        raise ValidationError("structure-unital", "structure map does not send 1 to 1", ())
    for i in range(calg.dim):
        for j in range(calg.dim):
            prod = calg.mul_basis(i, j)
            lhs = matrix.apply_sparse(dict(prod)) if prod else {}
            if lhs != a.mul_sparse(cols[i], cols[j]):
                raise ValidationError(
                    "structure-homomorphism",
                    f"map of {calg.name_of(i)} * {calg.name_of(j)} differs from the product of the images",
                    (i, j),
                )

    b_idxs = a.component_indices(a.group.identity)
    for i in range(calg.dim):
        for b in b_idxs:
            eb = {b: a.field.one}
            if a.mul_sparse(cols[i], eb) != a.mul_sparse(eb, cols[i]):
                raise ValidationError(
                    "structure-centralizing",
                    f"image of {calg.name_of(i)} does not commute with {a.name_of(b)}",
                    (i, b),
                )

    for i in range(calg.dim):
        want = degree_embed[calg.degree[i]]
        for r in cols[i]:
            if a.degree[r] != want:
                raise ValidationError(
                    "structure-degree",
                    f"image of {calg.name_of(i)} is not homogeneous of the embedded degree",
                    (i, r),
                )

    order = c.acting_group.order

    def equi_worker(lo: int, hi: int):
        for w in range(lo, hi):
            u = units[w]
            u_sp = sparsify(u.element)
            uinv_sp = sparsify(u.inverse)
            for i in range(calg.dim):
                moved = matrix.apply_sparse(c.act_sparse(w, {i: calg.field.one}))
                conj = a.mul_sparse(a.mul_sparse(u_sp, cols[i]), uinv_sp)
                if moved != conj:
                    return (w, i)
        return None

    hit = scan_chunks(order, equi_worker, jobs)
    if hit is not None:
        w, i = hit
        raise ValidationError(
            "structure-equivariance",
            f"map of the {c.acting_group.name_of(w)}-translate of {calg.name_of(i)} "
            "differs from the unit conjugate of its image",
            (w, i),
        )
    return StructureMap(c, a, matrix, dict(units), degree_embed)


def _check_units(a: GradedAlgebra, units: dict[int, Unit]) -> None:
    for g in a.group.elements():
        if g not in units:
            raise ValidationError("units", f"no unit supplied for degree {a.group.name_of(g)}", (g,))
        u = units[g]
        if a.homogeneous_degree(u.element) != g:
            raise ValidationError("units", f"unit for degree {a.group.name_of(g)} is not homogeneous "
                                  "of that degree", (g,))
        if a.mul(u.element, u.inverse) != a.one or a.mul(u.inverse, u.element) != a.one:
            raise ValidationError("units", f"unit for degree {a.group.name_of(g)} and its claimed inverse "
                                  "do not multiply to 1", (g,))


def canonical_structure_map(a: GradedAlgebra, units: dict[int, Unit], *, jobs: int = 1) -> StructureMap:
    """The centralizer of the identity component as coefficient algebra.

    Materializes C_A(identity component) as a standalone graded algebra with
    the unit-conjugation action, and returns the inclusion as a validated
    structure map.  This is the canonical choice of coefficient algebra for a
    crossed product.
    """
    ca = induced_centralizer_action(a, units)
    z = ca.subspace
    degrees = []
    for vec in z.basis:
        d = a.homogeneous_degree(vec)
        if d is None:
            raise InternalCheckError("centralizer echelon basis vector is not homogeneous")
        degrees.append(d)
    mult: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for i, vi in enumerate(z.basis):
        for j, vj in enumerate(z.basis):
            coords = z.coords_of(a.mul(vi, vj))
            if coords is None:
                raise InternalCheckError("centralizer is not closed under multiplication")
            entry = [(k, s) for k, s in enumerate(coords) if s]
            if entry:
                mult[(i, j)] = entry
    one_coords = z.coords_of(a.one)
    if one_coords is None:
        raise InternalCheckError("the unit is missing from the centralizer")
    calg = make_graded_algebra(a.field, a.group, degrees, mult, one_coords,
                               [f"z{i}" for i in range(z.dim)], jobs=jobs)
    acted = attach_action(calg, ca.matrices, jobs=jobs)
    zeta = Matrix(a.field, [list(r) for r in zip(*z.basis)] if z.basis else [[] for _ in range(a.dim)],
                  a.dim, z.dim)
    return make_structure_map(acted, a, zeta, units, jobs=jobs)


def scalar_structure_map(a: GradedAlgebra, units: dict[int, Unit], *, jobs: int = 1) -> StructureMap:
    """The one-dimensional coefficient algebra spanned by the unit of `a`."""
    calg = make_graded_algebra(a.field, a.group, [a.group.identity],
                               {(0, 0): ((0, a.field.one),)}, [a.field.one], ["1"])
    acted = attach_action(calg, [Matrix.identity(a.field, 1) for _ in a.group.elements()], jobs=jobs)
    zeta = Matrix(a.field, [[s] for s in a.one], a.dim, 1)
    return make_structure_map(acted, a, zeta, units, jobs=jobs)
