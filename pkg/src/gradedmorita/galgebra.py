"""Group-graded algebras given by sparse structure constants.

An algebra here is a finite-dimensional unital algebra over an exact field
with a distinguished homogeneous basis, a degree map into a finite grading
group, and structure constants stored sparsely.  `make_graded_algebra` is the
validating entry point: associativity, the unit laws, the grading law
(products of homogeneous elements land in the product component) and the
degree-one support of the unit are all checked, each with its own diagnostic.

Crossed-product structure is certified, not decided: `is_crossed_product`
searches each component for an invertible homogeneous element and either
returns exact two-sided units or reports where the search stopped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import ValidationError
from .exactmath import Echelon, Matrix, add_scaled, densify, solve_linear, sparsify
from .groups import FiniteGroup, trivial_group
from .sweeps import scan_chunks

SparseVec = tuple  # canonical sparse vector: ((index, scalar), ...) sorted, no zeros


def _canon_sparse(items: Iterable[tuple[int, object]], zero) -> SparseVec:
    acc: dict[int, object] = {}
    for k, s in items:
        v = acc.get(k, zero) + s
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return tuple(sorted(acc.items()))


class GradedAlgebra:
    """Validated graded algebra; construct via `make_graded_algebra`."""

    __slots__ = ("field", "group", "dim", "degree", "mult", "one", "names", "_components", "_gens")

    def __init__(self, field, group: FiniteGroup, dim: int, degree: list[int],
                 mult: dict[tuple[int, int], SparseVec], one: list, names: list[str] | None):
        self.field = field
        self.group = group
        self.dim = dim
        self.degree = degree
        self.mult = mult
        self.one = one
        self.names = names
        self._components: dict[int, list[int]] | None = None
        self._gens: list[int] | None = None

    # -- basic arithmetic -------------------------------------------------

    def mul_basis(self, i: int, j: int) -> SparseVec:
        return self.mult.get((i, j), ())

    def mul_sparse(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        zero = self.field.zero
        for i, xi in x.items():
            for j, yj in y.items():
                prod = self.mult.get((i, j))
                if prod:
                    add_scaled(out, xi * yj, prod, zero)
        return out

    def mul(self, x: list, y: list) -> list:
        return densify(self.mul_sparse(sparsify(x), sparsify(y)), self.dim, self.field)

    def left_mult_matrix(self, vec: list) -> Matrix:
        """Matrix of x -> vec * x in the basis."""
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, s in enumerate(vec):
            if not s:
                continue
            for c in range(self.dim):
                prod = self.mult.get((i, c))
                if prod:
                    for k, t in prod:
                        m.rows[k][c] = m.rows[k][c] + s * t
        return m

    # -- grading ----------------------------------------------------------

    def component_indices(self, g: int) -> list[int]:
        if self._components is None:
            comp: dict[int, list[int]] = {}
            for i, d in enumerate(self.degree):
                comp.setdefault(d, []).append(i)
            self._components = comp
        return self._components.get(g, [])

    def homogeneous_degree(self, vec: Mapping[int, object] | list) -> int | None:
        """Degree of a homogeneous element, or None if mixed or zero."""
        support = [i for i, s in enumerate(vec)] if isinstance(vec, list) else list(vec)
        degs = {self.degree[i] for i in support if (vec[i] if isinstance(vec, list) else vec[i])}
        if len(degs) == 1:
            return degs.pop()
        return None

    def name_of(self, i: int) -> str:
        return self.names[i] if self.names is not None else f"e{i}"

    def generators(self) -> list[int]:
        if self._gens is None:
            self._gens = algebra_generators(self)
        return self._gens

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedAlgebra)
            and self.field == other.field
            and self.group == other.group
            and self.degree == other.degree
            and self.mult == other.mult
            and self.one == other.one
        )

    def __repr__(self) -> str:
        return f"GradedAlgebra(dim={self.dim}, group_order={self.group.order}, field={self.field.name})"


class Subspace:
    """Subspace of an algebra's underlying space, basis kept in echelon form."""

    __slots__ = ("ambient_dim", "field", "basis", "pivots")

    def __init__(self, ambient_dim: int, field, vectors: Iterable[list]):
        self.ambient_dim = ambient_dim
        self.field = field
        ech = Echelon(ambient_dim, field)
        for v in vectors:
            ech.insert(sparsify(v))
        self.pivots = sorted(ech.rows)
        self.basis = [densify(ech.rows[p], ambient_dim, field) for p in self.pivots]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_of(self, vec: list) -> list | None:
        """Coordinates of vec in the echelon basis, or None if outside."""
        coords = [vec[p] for p in self.pivots]
        residue = list(vec)
        for c, b in zip(coords, self.basis):
            if c:
                for j, a in enumerate(b):
                    if a:
                        residue[j] = residue[j] - c * a
        if any(residue):
            return None
        return coords

    def contains(self, vec: list) -> bool:
        return self.coords_of(vec) is not None


class Unit(NamedTuple):
    """An invertible homogeneous element with its exact two-sided inverse."""

    element: list
    inverse: list


@dataclass
class UnitSearch:
    """Outcome of a crossed-product certification.

    `units` maps every grading-group element to a certified Unit when the
    search succeeded.  Otherwise `failed_degree` names the first component
    without a certificate; `definite` is True only when that component is
    zero (which genuinely refutes the crossed-product property).
    """

    units: dict[int, Unit] | None
    failed_degree: int | None = None
    definite: bool = False

    @property
    def certified(self) -> bool:
        return self.units is not None


# ---------------------------------------------------------------------------
# construction & validation


def make_graded_algebra(field, group: FiniteGroup, degree: list[int],
                        mult: Mapping[tuple[int, int], Iterable[tuple[int, object]]],
                        one: list, names: list[str] | None = None, *, jobs: int = 1) -> GradedAlgebra:
    dim = len(degree)
    if dim < 1:
        raise ValueError("algebra dimension must be at least 1")
    if len(one) != dim:
        raise ValueError(f"unit vector has length {len(one)}, expected {dim}")
    if names is not None and len(names) != dim:
        raise ValueError("names length does not match dimension")
    for d in degree:
        if not 0 <= d < group.order:
            raise ValueError(f"degree index {d} outside the grading group")
    canon: dict[tuple[int, int], SparseVec] = {}
    for (i, j), items in mult.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"structure constant indexed by ({i}, {j}) outside basis")
        v = _canon_sparse(items, field.zero)
        for k, _ in v:
            if not 0 <= k < dim:
                raise ValueError(f"structure constant target {k} outside basis")
        if v:
            canon[(i, j)] = v
    a = GradedAlgebra(field, group, dim, list(degree), canon, list(one), names)
    _check_grading(a)
    _check_unit(a)
    _check_associativity(a, jobs)
    return a


def _check_grading(a: GradedAlgebra) -> None:
    for (i, j), items in a.mult.items():
        want = a.group.mul(a.degree[i], a.degree[j])
        for k, _ in items:
            if a.degree[k] != want:
                raise ValidationError(
                    "grading",
                    f"{a.name_of(i)} * {a.name_of(j)} hits {a.name_of(k)} outside the product component",
                    (i, j, k),
                )


def _check_unit(a: GradedAlgebra) -> None:
    e = a.group.identity
    for k, s in enumerate(a.one):
        if s and a.degree[k] != e:
            raise ValidationError("unit-degree", f"unit is supported on {a.name_of(k)} of nonidentity degree", (k,))
    one_sparse = sparsify(a.one)
    for j in range(a.dim):
        ej = {j: a.field.one}
        if a.mul_sparse(one_sparse, ej) != ej:
            raise ValidationError("unit", f"1 * {a.name_of(j)} != {a.name_of(j)}", (j,))
        if a.mul_sparse(ej, one_sparse) != ej:
            raise ValidationError("unit", f"{a.name_of(j)} * 1 != {a.name_of(j)}", (j,))


def _check_associativity(a: GradedAlgebra, jobs: int = 1) -> None:
    dim = a.dim
    zero = a.field.zero

    def worker(lo: int, hi: int):
        for pair in range(lo, hi):
            i, j = divmod(pair, dim)
            ij = a.mul_basis(i, j)
            for k in range(dim):
                lhs: dict[int, object] = {}
                for t, c in ij:
                    prod = a.mult.get((t, k))
                    if prod:
                        add_scaled(lhs, c, prod, zero)
                rhs: dict[int, object] = {}
                for s, d in a.mul_basis(j, k):
                    prod = a.mult.get((i, s))
                    if prod:
                        add_scaled(rhs, d, prod, zero)
                if lhs != rhs:
                    return (pair, k)
        return None

    hit = scan_chunks(dim * dim, worker, jobs)
    if hit is not None:
        pair, k = hit
        i, j = divmod(pair, dim)
        raise ValidationError(
            "associativity",
            f"({a.name_of(i)} {a.name_of(j)}) {a.name_of(k)} != {a.name_of(i)} ({a.name_of(j)} {a.name_of(k)})",
            (i, j, k),
        )


def group_algebra(g: FiniteGroup, field) -> GradedAlgebra:
    """The group algebra of g, graded by g itself with basis the group elements."""
    one = [field.zero] * g.order
    one[g.identity] = field.one
    mult = {(i, j): ((g.mul(i, j), field.one),) for i in range(g.order) for j in range(g.order)}
    names = [g.name_of(i) for i in range(g.order)]
    return make_graded_algebra(field, g, list(range(g.order)), mult, one, names)


def component(a: GradedAlgebra, g: int) -> Subspace:
    """Span of the basis vectors of degree g."""
    if not 0 <= g < a.group.order:
        raise ValueError(f"degree index {g} outside the grading group")
    vecs = []
    for i in a.component_indices(g):
        v = [a.field.zero] * a.dim
        v[i] = a.field.one
        vecs.append(v)
    return Subspace(a.dim, a.field, vecs)


def two_sided_inverse(a: GradedAlgebra, u: list) -> list | None:
    """Exact inverse of u in the whole algebra, or None."""
    x = solve_linear(a.left_mult_matrix(u), a.one)
    if x is None:
        return None
    if a.mul(x, u) != a.one:
        return None
    return x


def is_crossed_product(a: GradedAlgebra, hints: Mapping[int, list] | None = None,
                       trials: int = 8, seed: int = 0) -> UnitSearch:
    """Certify crossed-product structure by finding a unit in every component.

    Search order per degree: the hint if supplied, then each basis vector of
    the component, then `trials` random homogeneous elements drawn from the
    seeded generator.  Failure after the random trials is "not certified";
    only an empty component definitely refutes.
    """
    rng = random.Random(seed)
    units: dict[int, Unit] = {}
    for g in a.group.elements():
        idxs = a.component_indices(g)
        if not idxs:
            return UnitSearch(None, failed_degree=g, definite=True)
        candidates: list[list] = []
        if hints and g in hints:
            hint = hints[g]
            hdeg = a.homogeneous_degree(hint)
            if hdeg != g:
                raise ValueError(f"hint for degree {g} is not homogeneous of that degree")
            candidates.append(list(hint))
        for i in idxs:
            v = [a.field.zero] * a.dim
            v[i] = a.field.one
            candidates.append(v)
        for _ in range(trials):
            v = [a.field.zero] * a.dim
            nonzero = False
            for i in idxs:
                s = a.field.random(rng)
                v[i] = s
                nonzero = nonzero or bool(s)
            if nonzero:
                candidates.append(v)
        found = None
        for u in candidates:
            inv = two_sided_inverse(a, u)
            if inv is not None:
                found = Unit(u, inv)
                break
        if found is None:
            return UnitSearch(None, failed_degree=g, definite=False)
        units[g] = found
    return UnitSearch(units)


def centralizer(a: GradedAlgebra, s: Subspace) -> Subspace:
    """Elements commuting with every vector of s, as an echelon-basis subspace."""
    if s.ambient_dim != a.dim:
        raise ValueError("subspace does not live in the algebra")
    ech = Echelon(a.dim, a.field)
    for b in s.basis:
        b_sparse = sparsify(b)
        rows: dict[int, dict[int, object]] = {}
        for c in range(a.dim):
            ec = {c: a.field.one}
            diff = a.mul_sparse(b_sparse, ec)
            for r, val in a.mul_sparse(ec, b_sparse).items():
                v = diff.get(r, a.field.zero) - val
                if v:
                    diff[r] = v
                else:
                    diff.pop(r, None)
            for r, val in diff.items():
                rows.setdefault(r, {})[c] = val
        for r in sorted(rows):
            ech.insert(rows[r])
    kern = ech.kernel_basis()
    return Subspace(a.dim, a.field, [densify(v, a.dim, a.field) for v in kern])


def opposite(a: GradedAlgebra, *, jobs: int = 1) -> GradedAlgebra:
    """Opposite algebra: reversed products, degrees inverted in the grading group."""
    mult = {(j, i): v for (i, j), v in a.mult.items()}
    degree = [a.group.inv(d) for d in a.degree]
    return make_graded_algebra(a.field, a.group, degree, mult, a.one, a.names, jobs=jobs)


def identity_component_algebra(a: GradedAlgebra, *, jobs: int = 1) -> tuple[GradedAlgebra, list[int]]:
    """The identity component as a standalone trivially graded algebra.

    Returns the algebra together with the list mapping its basis indices to
    basis indices of `a`.
    """
    idxs = a.component_indices(a.group.identity)
    back = {orig: new for new, orig in enumerate(idxs)}
    mult: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for ni, oi in enumerate(idxs):
        for nj, oj in enumerate(idxs):
            prod = a.mul_basis(oi, oj)
            if prod:
                mult[(ni, nj)] = [(back[k], s) for k, s in prod]
    one = [a.one[oi] for oi in idxs]
    names = [a.name_of(oi) for oi in idxs]
    sub = make_graded_algebra(a.field, trivial_group(), [0] * len(idxs), mult, one, names, jobs=jobs)
    return sub, idxs


def algebra_generators(a: GradedAlgebra) -> list[int]:
    """A small generating set of basis indices, greedy in basis order.

    The unital subalgebra generated by the result is the whole algebra; this
    is verified by the closure computation itself.
    """
    gens: list[int] = []
    ech = _unital_closure(a, gens)
    i = 0
    while ech.rank < a.dim:
        while i < a.dim and ech.contains({i: a.field.one}):
            i += 1
        gens.append(i)
        ech = _unital_closure(a, gens)
    return gens


def _unital_closure(a: GradedAlgebra, gens: list[int]) -> Echelon:
    """Echelon span of the unital subalgebra generated by the given basis vectors."""
    ech = Echelon(a.dim, a.field)
    queue: list[dict[int, object]] = []
    start = sparsify(a.one)
    if ech.insert(start) is not None:
        queue.append(start)
    pos = 0
    while pos < len(queue):
        v = queue[pos]
        pos += 1
        for g in gens:
            w = a.mul_sparse({g: a.field.one}, v)
            if w and ech.insert(dict(w)) is not None:
                queue.append(w)
    return ech
