"""JSON document format for groups, algebras, actions, structure maps, bimodules.

Documents are UTF-8 JSON with a `schema_version` and a `kind` field.  Scalars
are strings ("num/den" or "n" over the rationals, a decimal residue over a
prime field) and the field is declared once per document ("Q" or "GF(p)").
Cross references are either inline sub-documents or string paths relative to
the referencing file.  Serialization is canonical (sorted keys, fixed
separators), so parse-serialize-parse is the identity on parsed content.

Loading a document validates it: the returned objects are the same validated
types the library constructs, and every violated invariant surfaces as a
ValidationError with its witness.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import DocumentError, ValidationError
from .exactmath import Matrix, field_from_token
from .gacted import ActedAlgebra, StructureMap, attach_action, make_structure_map
from .galgebra import GradedAlgebra, Unit, make_graded_algebra, two_sided_inverse
from .gbimod import GradedBimodule, make_bimodule
from .groups import FiniteGroup

SCHEMA_VERSION = 1
KINDS = ("group", "algebra", "action", "structure_map", "bimodule")


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_document(payload: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(payload), encoding="utf-8")


class _Loader:
    """Resolves cross references relative to the referencing document, with a
    per-run cache so shared references load (and validate) once."""

    def __init__(self, jobs: int = 1):
        self.jobs = jobs
        self.cache: dict[tuple[str, str], object] = {}

    def read(self, path: str | Path):
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DocumentError(f"cannot read: {exc}", str(path)) from None
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                                str(path)) from None
        return self.load(payload, path.parent, str(path))

    def load(self, payload, base: Path, where: str):
        if not isinstance(payload, dict):
            raise DocumentError("document payload must be an object", where)
        if payload.get("schema_version") != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {payload.get('schema_version')!r}", where)
        kind = payload.get("kind")
        if kind not in KINDS:
            raise DocumentError(f"unknown document kind {kind!r}", where)
        loader = getattr(self, f"_load_{kind}")
        try:
            return kind, loader(payload, base, where)
        except (KeyError, TypeError, IndexError) as exc:
            raise DocumentError(f"malformed {kind} document: {exc!r}", where) from None
        except ValueError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise DocumentError(f"malformed {kind} document: {exc}", where) from None

    def resolve(self, ref, base: Path, where: str, expected_kind: str):
        if isinstance(ref, str):
            path = (base / ref).resolve()
            key = (expected_kind, str(path))
            if key not in self.cache:
                if not path.exists():
                    raise DocumentError(f"dangling reference to {ref!r}", where)
                kind, obj = self.read(path)
                if kind != expected_kind:
                    raise DocumentError(f"reference {ref!r} is a {kind} document, expected {expected_kind}",
                                        where)
                self.cache[key] = obj
            return self.cache[key]
        kind, obj = self.load(ref, base, where + f" (inline {expected_kind})")
        if kind != expected_kind:
            raise DocumentError(f"inline reference is a {kind} document, expected {expected_kind}", where)
        return obj

    # -- per-kind loaders --------------------------------------------------

    def _load_group(self, payload, base, where) -> FiniteGroup:
        table = payload["table"]
        order = payload["order"]
        if len(table) != order:
            raise DocumentError(f"declared order {order} does not match table size {len(table)}", where)
        names = payload.get("names")
        return FiniteGroup([list(map(int, row)) for row in table], names)

    def _load_algebra(self, payload, base, where) -> GradedAlgebra:
        field = field_from_token(payload["field"])
        group = self.resolve(payload["group"], base, where, "group")
        basis = payload["basis"]
        degree = [int(b["degree"]) for b in basis]
        names = [str(b["name"]) for b in basis]
        mult: dict[tuple[int, int], list[tuple[int, object]]] = {}
        for i, j, k, s in payload["mult"]:
            mult.setdefault((int(i), int(j)), []).append((int(k), field.parse(s)))
        one = [field.parse(s) for s in payload["one"]]
        return make_graded_algebra(field, group, degree, mult, one, names, jobs=self.jobs)

    def _load_action(self, payload, base, where) -> ActedAlgebra:
        algebra = self.resolve(payload["algebra"], base, where, "algebra")
        field = algebra.field
        acting_group = None
        degree_action = None
        if "acting_group" in payload:
            acting_group = self.resolve(payload["acting_group"], base, where, "group")
            degree_action = [list(map(int, row)) for row in payload["degree_action"]]
        entries = {int(g): rows for g, rows in payload["matrices"]}
        order = (acting_group or algebra.group).order
        if sorted(entries) != list(range(order)):
            raise DocumentError("action document must list one matrix per acting group element", where)
        matrices = [Matrix(field, [[field.parse(s) for s in row] for row in entries[g]])
                    for g in range(order)]
        return attach_action(algebra, matrices, acting_group, degree_action, jobs=self.jobs)

    def _load_structure_map(self, payload, base, where) -> StructureMap:
        source = self.resolve(payload["action"], base, where, "action")
        target = self.resolve(payload["target"], base, where, "algebra")
        field = target.field
        matrix = Matrix(field, [[field.parse(s) for s in row] for row in payload["matrix"]])
        units: dict[int, Unit] = {}
        for g, coeffs in payload["units"]:
            element = [field.parse(s) for s in coeffs]
            inverse = two_sided_inverse(target, element)
            if inverse is None:
                raise ValidationError("units", f"declared unit for degree {target.group.name_of(int(g))} "
                                      "is not invertible", (int(g),))
            units[int(g)] = Unit(element, inverse)
        embed = payload.get("degree_embed")
        if embed is not None:
            embed = list(map(int, embed))
        return make_structure_map(source, target, matrix, units, embed, jobs=self.jobs)

    def _load_bimodule(self, payload, base, where) -> GradedBimodule:
        left = self.resolve(payload["left"], base, where, "structure_map")
        right = self.resolve(payload["right"], base, where, "structure_map")
        field = left.target.field
        basis = payload["basis"]
        degree = [int(b["degree"]) for b in basis]
        names = [str(b["name"]) for b in basis]
        lact: dict[tuple[int, int], list[tuple[int, object]]] = {}
        for i, j, k, s in payload["lact"]:
            lact.setdefault((int(i), int(j)), []).append((int(k), field.parse(s)))
        ract: dict[tuple[int, int], list[tuple[int, object]]] = {}
        for j, i, k, s in payload["ract"]:
            ract.setdefault((int(j), int(i)), []).append((int(k), field.parse(s)))
        return make_bimodule(left, right, degree, lact, ract, names, jobs=self.jobs)


def load_document(path: str | Path, *, jobs: int = 1):
    """Load and validate a document; returns (kind, object)."""
    return _Loader(jobs=jobs).read(path)


# ---------------------------------------------------------------------------
# writers (always fully inline, so build outputs are self-contained)


def group_payload(g: FiniteGroup) -> dict:
    payload = {"schema_version": SCHEMA_VERSION, "kind": "group", "order": g.order,
               "table": [list(row) for row in g.table]}
    if g.names is not None:
        payload["names"] = list(g.names)
    return payload


def algebra_payload(a: GradedAlgebra) -> dict:
    fmt = a.field.format
    mult = []
    for (i, j) in sorted(a.mult):
        for k, s in a.mult[(i, j)]:
            mult.append([i, j, k, fmt(s)])
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "algebra",
        "field": a.field.name,
        "group": group_payload(a.group),
        "basis": [{"name": a.name_of(i), "degree": a.degree[i]} for i in range(a.dim)],
        "mult": mult,
        "one": [fmt(s) for s in a.one],
    }


def action_payload(c: ActedAlgebra) -> dict:
    fmt = c.algebra.field.format
    payload = {
        "schema_version": SCHEMA_VERSION,
        "kind": "action",
        "algebra": algebra_payload(c.algebra),
        "matrices": [[g, [[fmt(s) for s in row] for row in c.action[g].rows]]
                     for g in c.acting_group.elements()],
    }
    if c.acting_group != c.algebra.group:
        payload["acting_group"] = group_payload(c.acting_group)
        payload["degree_action"] = [list(row) for row in c.degree_action]
    return payload


def structure_map_payload(z: StructureMap) -> dict:
    fmt = z.target.field.format
    payload = {
        "schema_version": SCHEMA_VERSION,
        "kind": "structure_map",
        "action": action_payload(z.source),
        "target": algebra_payload(z.target),
        "matrix": [[fmt(s) for s in row] for row in z.matrix.rows],
        "units": [[g, [fmt(s) for s in z.units[g].element]] for g in sorted(z.units)],
    }
    if z.degree_embed != list(range(z.target.group.order)) or z.source.algebra.group != z.target.group:
        payload["degree_embed"] = list(z.degree_embed)
    return payload


def bimodule_payload(m: GradedBimodule) -> dict:
    fmt = m.field.format
    lact = []
    for (i, j) in sorted(m.lact):
        for k, s in m.lact[(i, j)]:
            lact.append([i, j, k, fmt(s)])
    ract = []
    for (j, i) in sorted(m.ract):
        for k, s in m.ract[(j, i)]:
            ract.append([j, i, k, fmt(s)])
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "bimodule",
        "left": structure_map_payload(m.left),
        "right": structure_map_payload(m.right),
        "basis": [{"name": m.name_of(j), "degree": m.degree[j]} for j in range(m.dim)],
        "lact": lact,
        "ract": ract,
    }


def payload_for(obj) -> dict:
    if isinstance(obj, FiniteGroup):
        return group_payload(obj)
    if isinstance(obj, GradedAlgebra):
        return algebra_payload(obj)
    if isinstance(obj, ActedAlgebra):
        return action_payload(obj)
    if isinstance(obj, StructureMap):
        return structure_map_payload(obj)
    if isinstance(obj, GradedBimodule):
        return bimodule_payload(obj)
    raise TypeError(f"no document form for {type(obj).__name__}")
