"""Finite groups as multiplication tables.

Constructors: cyclic and symmetric groups, direct products, and the wreath
product of a base group with a symmetric group (base tuples acted on by
coordinate permutation).  Every constructed table is verified: Latin square,
identity, inverses, and associativity (exhaustive up to order 200, seeded
sampling above).

Composition convention for permutations: (s * t)(i) = s(t(i)), i.e. the right
factor acts first.  This is what makes the coordinate action
tuple_permute(s, xs)[i] = xs[s^-1(i)] a left action.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import ValidationError

ASSOC_EXHAUSTIVE_LIMIT = 200
ASSOC_SAMPLES = 100_000


class FiniteGroup:
    """A finite group given by its full multiplication table of element indices."""

    __slots__ = ("order", "table", "names", "identity", "inverse")

    def __init__(self, table: list[list[int]], names: list[str] | None = None, *, _validated: bool = False):
        self.order = len(table)
        self.table = table
        self.names = names
        if names is not None and len(names) != self.order:
            raise ValueError(f"{len(names)} names for a group of order {self.order}")
        if not _validated:
            _check_group_table(table)
        self.identity = _find_identity(table)
        if self.identity is None:
            raise ValidationError("identity", "multiplication table has no two-sided identity")
        self.inverse = _find_inverses(table, self.identity)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def elements(self) -> range:
        return range(self.order)

    def name_of(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return str(i)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(self.order))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def _check_group_table(table: list[list[int]]) -> None:
    n = len(table)
    if n == 0:
        raise ValueError("empty multiplication table")
    full = set(range(n))
    for i, row in enumerate(table):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        if set(row) != full:
            raise ValidationError("latin-square", f"row {i} is not a permutation of 0..{n - 1}", (i,))
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise ValidationError("latin-square", f"column {j} is not a permutation of 0..{n - 1}", (j,))
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(ASSOC_SAMPLES))
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ValidationError("associativity", f"(e{a} e{b}) e{c} != e{a} (e{b} e{c})", (a, b, c))


def _find_identity(table: list[list[int]]) -> int | None:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


def _find_inverses(table: list[list[int]], identity: int) -> list[int]:
    n = len(table)
    inv = [-1] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == identity and table[j][i] == identity:
                inv[i] = j
                break
        if inv[i] < 0:
            raise ValidationError("inverses", f"element {i} has no inverse", (i,))
    return inv


# ---------------------------------------------------------------------------
# permutations (1-based one-line notation, matching external formats)


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"{self.images} is not a bijection of 1..{n}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(tuple(inv))

    def rank(self) -> int:
        """Lexicographic rank of the one-line notation among all degree-n permutations."""
        n = self.degree
        r = 0
        seen: list[int] = []
        fact = _factorial(n - 1)
        for pos, img in enumerate(self.images):
            smaller = img - 1 - sum(1 for s in seen if s < img)
            r += smaller * fact
            if n - 1 - pos > 0:
                fact //= n - 1 - pos
            seen.append(img)
        return r

    @classmethod
    def from_rank(cls, n: int, r: int) -> "Permutation":
        avail = list(range(1, n + 1))
        images = []
        fact = _factorial(n - 1)
        for pos in range(n):
            q, r = divmod(r, fact)
            images.append(avail.pop(q))
            if n - 1 - pos > 0:
                fact //= n - 1 - pos
        return cls(tuple(images))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def tuple_permute(sigma: Permutation, xs: tuple) -> tuple:
    """Left coordinate action: result[i] = xs[sigma^-1(i)] (1-based positions)."""
    if len(xs) != sigma.degree:
        raise ValueError(f"arity mismatch: permutation degree {sigma.degree}, tuple length {len(xs)}")
    inv = sigma.inverse()
    return tuple(xs[inv(i + 1) - 1] for i in range(len(xs)))


# ---------------------------------------------------------------------------
# constructors


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be at least 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["e"] + [f"g{'' if n <= 2 else i}" for i in range(1, n)] if n > 1 else ["e"]
    return FiniteGroup(table, names)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n with elements enumerated by lexicographic one-line notation."""
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    index = {p.images: i for i, p in enumerate(perms)}
    table = [[index[(p * q).images] for q in perms] for p in perms]
    return FiniteGroup(table, [str(p) for p in perms])


def product_encode(orders: list[int], parts: tuple[int, ...]) -> int:
    """Mixed-radix index, leftmost factor slowest."""
    idx = 0
    for o, p in zip(orders, parts):
        idx = idx * o + p
    return idx


def product_decode(orders: list[int], idx: int) -> tuple[int, ...]:
    parts = []
    for o in reversed(orders):
        idx, r = divmod(idx, o)
        parts.append(r)
    return tuple(reversed(parts))


def direct_product(groups: list[FiniteGroup]) -> FiniteGroup:
    if not groups:
        raise ValueError("direct product needs at least one factor")
    orders = [g.order for g in groups]
    total = 1
    for o in orders:
        total *= o
    table = []
    for i in range(total):
        pi = product_decode(orders, i)
        row = []
        for j in range(total):
            pj = product_decode(orders, j)
            row.append(product_encode(orders, tuple(g.mul(a, b) for g, a, b in zip(groups, pi, pj))))
        table.append(row)
    names = [
        "(" + ",".join(g.name_of(p) for g, p in zip(groups, product_decode(orders, i))) + ")"
        for i in range(total)
    ]
    return FiniteGroup(table, names)


@dataclass(frozen=True)
class WreathElement:
    """Element (base tuple, permutation) of a wreath product with the base group."""

    base: tuple[int, ...]
    perm: Permutation

    def __post_init__(self):
        if len(self.base) != self.perm.degree:
            raise ValueError("base tuple length must equal the permutation degree")


def wreath_order(base_order: int, n: int) -> int:
    return base_order**n * _factorial(n)


def wreath_encode(base_order: int, n: int, elt: WreathElement) -> int:
    return product_encode([base_order] * n, elt.base) * _factorial(n) + elt.perm.rank()


def wreath_decode(base_order: int, n: int, idx: int) -> WreathElement:
    tup_idx, perm_rank = divmod(idx, _factorial(n))
    return WreathElement(product_decode([base_order] * n, tup_idx), Permutation.from_rank(n, perm_rank))


def wreath_mul(gbar: FiniteGroup, x: WreathElement, y: WreathElement) -> WreathElement:
    """(g, s)(h, t) = (g * (h permuted by s), s t)."""
    permuted = tuple_permute(x.perm, y.base)
    base = tuple(gbar.mul(a, b) for a, b in zip(x.base, permuted))
    return WreathElement(base, x.perm * y.perm)


def wreath_group(gbar: FiniteGroup, n: int) -> FiniteGroup:
    """Wreath product of `gbar` with S_n: base tuples times coordinate permutations."""
    if n < 1:
        raise ValueError("wreath product needs n >= 1")
    total = wreath_order(gbar.order, n)
    elems = [wreath_decode(gbar.order, n, i) for i in range(total)]
    table = []
    for x in elems:
        row = [wreath_encode(gbar.order, n, wreath_mul(gbar, x, y)) for y in elems]
        table.append(row)
    names = [
        "((" + ",".join(gbar.name_of(b) for b in e.base) + ")," + str(e.perm) + ")"
        for e in elems
    ]
    return FiniteGroup(table, names)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], ["e"])
