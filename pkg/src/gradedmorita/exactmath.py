"""Exact scalar arithmetic and linear algebra.

Two coefficient fields are supported: the rationals (arbitrary precision,
backed by gmpy2.mpq) and prime fields GF(p).  Everything downstream is exact;
no floating point appears anywhere in the package.

Elimination is Gaussian with a fixed pivot rule (first nonzero entry in
column order), so solutions, kernels and inverses are reproducible
bit-for-bit.  The incremental `Echelon` form is the workhorse behind every
large constraint system in the package; rows are sparse dicts column -> scalar.
"""

from __future__ import annotations

from typing import Iterable

from gmpy2 import mpq

Scalar = object  # mpq or GFElement, depending on the ambient field


# ---------------------------------------------------------------------------
# scalars and fields


def _is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any reasonable modulus."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class GFElement:
    """Residue in GF(p).  Supports mixed arithmetic with plain ints."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        self.residue = residue % p
        self.p = p

    def _coerce(self, other) -> "GFElement | None":
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return GFElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GFElement(self.residue + o.residue, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GFElement(self.residue - o.residue, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GFElement(o.residue - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GFElement(self.residue * o.residue, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.residue * pow(o.residue, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(o.residue * pow(self.residue, -1, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.residue, self.p)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, GFElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __repr__(self) -> str:
        return f"GFElement({self.residue}, p={self.p})"


class RationalField:
    """The rational numbers; elements are gmpy2.mpq values."""

    name = "Q"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def from_int(self, n: int):
        return mpq(n)

    def parse(self, text: str):
        try:
            return mpq(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational scalar {text!r}: {exc}") from None

    def format(self, x) -> str:
        return str(x)

    def random(self, rng):
        # small integers keep randomized certificates readable and fast
        return mpq(rng.randint(-4, 4))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """GF(p) for a prime p; construction rejects composite moduli."""

    def __init__(self, p: int):
        if not _is_probable_prime(p):
            raise ValueError(f"GF modulus {p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = GFElement(0, p)
        self.one = GFElement(1, p)

    def from_int(self, n: int) -> GFElement:
        return GFElement(n, self.p)

    def parse(self, text: str) -> GFElement:
        try:
            return GFElement(int(text), self.p)
        except ValueError:
            raise ValueError(f"bad GF({self.p}) scalar {text!r}") from None

    def format(self, x: GFElement) -> str:
        return str(x.residue)

    def random(self, rng) -> GFElement:
        return GFElement(rng.randrange(self.p), self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


QQ = RationalField()


def field_from_token(token: str):
    """Parse a field tag as used in documents: "Q" or "GF(p)"."""
    if token == "Q":
        return QQ
    if token.startswith("GF(") and token.endswith(")"):
        return PrimeField(int(token[3:-1]))
    raise ValueError(f"unknown field token {token!r}")


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Dense exact matrix over a declared field.

    Rows are plain lists.  Sparse data (structure constants, big constraint
    systems) lives in dict-based rows handled by `Echelon`; Matrix is the
    dense carrier for action matrices, structure-map matrices and
    isomorphism certificates.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows: list[list], nrows: int | None = None, ncols: int | None = None):
        self.field = field
        self.rows = rows
        self.nrows = len(rows) if nrows is None else nrows
        self.ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        for r in rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_entries(cls, field, nrows: int, ncols: int, entries: Iterable[tuple[int, int, Scalar]]) -> "Matrix":
        m = cls.zeros(field, nrows, ncols)
        for i, j, s in entries:
            m.rows[i][j] = m.rows[i][j] + s
        return m

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def apply(self, vec: list) -> list:
        if len(vec) != self.ncols:
            raise ValueError(f"shape mismatch: {self.nrows}x{self.ncols} applied to length {len(vec)}")
        out = []
        for r in self.rows:
            acc = self.field.zero
            for a, x in zip(r, vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def apply_sparse(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        out: dict[int, Scalar] = {}
        for j, x in vec.items():
            for i in range(self.nrows):
                a = self.rows[i][j]
                if a:
                    v = out.get(i, self.field.zero) + a * x
                    if v:
                        out[i] = v
                    else:
                        out.pop(i, None)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        z = self.field.zero
        out = []
        bcols = list(zip(*other.rows)) if other.rows else []
        for r in self.rows:
            row = []
            for c in bcols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.field, out, self.nrows, other.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(c) for c in zip(*self.rows)] if self.rows else [], self.ncols, self.nrows)

    def dict_rows(self) -> list[dict[int, Scalar]]:
        return [{j: a for j, a in enumerate(r) if a} for r in self.rows]

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        one, zero = self.field.one, self.field.zero
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a != (one if i == j else zero):
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"


# ---------------------------------------------------------------------------
# sparse reduced echelon form


class Echelon:
    """Incrementally maintained reduced row echelon form with sparse rows.

    Stored rows are keyed by pivot column, normalized to pivot 1, and fully
    reduced against each other, so the row set is the canonical RREF of
    everything inserted; insertion order cannot affect the final state.
    """

    __slots__ = ("ncols", "field", "rows")

    def __init__(self, ncols: int, field):
        self.ncols = ncols
        self.field = field
        self.rows: dict[int, dict[int, Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict[int, Scalar]) -> dict[int, Scalar]:
        """Canonical residue of `row` modulo the current row space."""
        out = dict(row)
        for c in [c for c in out if c in self.rows]:
            coeff = out.get(c)
            if not coeff:
                out.pop(c, None)
                continue
            for j, a in self.rows[c].items():
                v = out.get(j, self.field.zero) - coeff * a
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
        return out

    def insert(self, row: dict[int, Scalar]) -> int | None:
        """Add a row; returns its pivot column, or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        p = min(r)
        inv = self.field.one / r[p]
        if inv != self.field.one:
            r = {j: a * inv for j, a in r.items()}
        for other in self.rows.values():
            coeff = other.get(p)
            if coeff:
                for j, a in r.items():
                    v = other.get(j, self.field.zero) - coeff * a
                    if v:
                        other[j] = v
                    else:
                        other.pop(j, None)
        self.rows[p] = r
        return p

    def contains(self, row: dict[int, Scalar]) -> bool:
        return not self.reduce(row)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.rows]

    def kernel_basis(self) -> list[dict[int, Scalar]]:
        """Basis of the null space of the inserted rows (one vector per free column)."""
        one = self.field.one
        basis = []
        for f in self.free_columns():
            v = {f: one}
            for p, row in self.rows.items():
                a = row.get(f)
                if a:
                    v[p] = -a
            basis.append(v)
        return basis


def densify(vec: dict[int, Scalar], n: int, field) -> list:
    out = [field.zero] * n
    for j, a in vec.items():
        out[j] = a
    return out


def sparsify(vec: list) -> dict[int, Scalar]:
    return {j: a for j, a in enumerate(vec) if a}


def sparse_kernel(rows: Iterable[dict[int, Scalar]], ncols: int, field) -> list[dict[int, Scalar]]:
    """Kernel basis of a sparse constraint system, deterministic RREF form."""
    ech = Echelon(ncols, field)
    for r in rows:
        ech.insert(r)
    return ech.kernel_basis()


class QuotientSpace:
    """Quotient of a based space by the span of inserted relation rows.

    The quotient basis consists of the classes of the standard basis vectors
    at the free columns of the relation echelon, in column order; projection
    reduces a vector modulo the relations and reads off the free coordinates.
    """

    __slots__ = ("total", "field", "relations", "free", "_free_index")

    def __init__(self, total: int, field):
        self.total = total
        self.field = field
        self.relations = Echelon(total, field)
        self.free: list[int] | None = None
        self._free_index: dict[int, int] | None = None

    def add_relation(self, row: dict[int, Scalar]) -> None:
        if self.free is not None:
            raise ValueError("quotient already finalized")
        self.relations.insert(row)

    def finalize(self) -> None:
        self.free = self.relations.free_columns()
        self._free_index = {c: t for t, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        if self.free is None:
            raise ValueError("quotient not finalized")
        return len(self.free)

    def lift(self, t: int) -> int:
        """Flat index of the representative of quotient basis vector t."""
        return self.free[t]

    def project(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        """Quotient coordinates of a vector of the ambient space."""
        residue = self.relations.reduce(vec)
        out = {}
        for c, s in residue.items():
            t = self._free_index.get(c)
            if t is None:
                raise ValueError(f"reduction left support on non-free column {c}")
            out[t] = s
        return out


# ---------------------------------------------------------------------------
# the three public operations on matrices


def solve_linear(m: Matrix, rhs: list) -> list | None:
    """One exact solution of m x = rhs, or None when inconsistent."""
    if m.nrows != len(rhs):
        raise ValueError(f"rhs length {len(rhs)} does not match {m.nrows} rows")
    n = m.ncols
    ech = Echelon(n + 1, m.field)
    for i, row in enumerate(m.dict_rows()):
        if rhs[i]:
            row = dict(row)
            row[n] = rhs[i]
        ech.insert(row)
    if n in ech.rows:
        return None  # a reduced row reads 0 = 1
    x = [m.field.zero] * n
    for p, row in ech.rows.items():
        x[p] = row.get(n, m.field.zero)
    return x


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the null space of m, in reduced echelon form; [] iff injective."""
    ech = Echelon(m.ncols, m.field)
    for row in m.dict_rows():
        ech.insert(row)
    return [densify(v, m.ncols, m.field) for v in ech.kernel_basis()]


def invert(m: Matrix) -> Matrix | None:
    """Exact inverse of a square matrix, or None when singular."""
    if m.nrows != m.ncols:
        raise ValueError(f"cannot invert {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    ech = Echelon(2 * n, m.field)
    for i, row in enumerate(m.dict_rows()):
        row = dict(row)
        row[n + i] = m.field.one
        ech.insert(row)
    if any(p >= n for p in ech.rows) or len(ech.rows) < n:
        return None
    out = Matrix.zeros(m.field, n, n)
    for p, row in ech.rows.items():
        for j, a in row.items():
            if j >= n:
                out.rows[p][j - n] = a
    return out


def invert_dict_cols(cols: list[dict[int, Scalar]], field) -> list[dict[int, Scalar]] | None:
    """Inverse of a square map given by sparse columns, as sparse columns.

    Exploits sparsity; used when probing isomorphism candidates whose hom-space
    basis elements are sparse.
    """
    n = len(cols)
    ech = Echelon(2 * n, field)
    rows: dict[int, dict[int, Scalar]] = {}
    for j, col in enumerate(cols):
        for i, a in col.items():
            rows.setdefault(i, {})[j] = a
    for i in range(n):
        row = rows.get(i, {}).copy()
        row[n + i] = field.one
        ech.insert(row)
    if any(p >= n for p in ech.rows) or len(ech.rows) < n:
        return None
    inv_cols: list[dict[int, Scalar]] = [{} for _ in range(n)]
    for p, row in ech.rows.items():
        for j, a in row.items():
            if j >= n:
                inv_cols[j - n][p] = a
    return inv_cols


# ---------------------------------------------------------------------------
# sparse vector helpers shared by the algebra modules


def add_scaled(acc: dict[int, Scalar], coeff: Scalar, vec: Iterable[tuple[int, Scalar]], zero) -> None:
    """acc += coeff * vec, in place, dropping exact zeros."""
    for j, a in vec:
        v = acc.get(j, zero) + coeff * a
        if v:
            acc[j] = v
        else:
            acc.pop(j, None)


