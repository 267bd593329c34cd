"""Command-line surface: check, build, verify-morita, oracle.

Reports are deterministic: given the same inputs and --seed, the emitted text
and JSON are byte-identical across runs and across --jobs values.  Timing is
printed to stderr only, never into the report body.  Exit codes: 0 certified,
1 refuted or not certified, 2 usage, parse or reference errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import documents
from .constructions import tensor_algebras, wreath_algebra
from .errors import DocumentError, ValidationError
from .exactmath import field_from_token
from .galgebra import group_algebra, opposite
from .gbimod import dual, tensor_over, verify_morita
from .groups import wreath_group

_CHECKS = {
    "group": ["latin-square", "associativity", "identity", "inverses"],
    "algebra": ["shape", "grading", "unit-degree", "unit", "associativity"],
    "action": ["action-invertible", "action-identity", "action-composition",
               "action-unital", "action-automorphism", "action-grading"],
    "structure_map": ["degree-embed", "units", "structure-unital", "structure-homomorphism",
                      "structure-centralizing", "structure-degree", "structure-equivariance"],
    "bimodule": ["module-unit", "module-left-associativity", "module-right-associativity",
                 "module-middle-associativity", "module-grading", "twist-law"],
}

_CERT_TEXT_LIMIT = 16  # matrices above this size go to --json only


@dataclass
class Report:
    verdict: str  # certified | refuted | not-certified
    info: list = dc_field(default_factory=list)      # ordered (key, value) pairs
    checks: list = dc_field(default_factory=list)    # (name, status, witness)
    certificates: dict = dc_field(default_factory=dict)

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        for k, v in self.info:
            lines.append(f"{k}: {v}")
        for name, status, witness in self.checks:
            line = f"check {name}: {status}"
            if witness:
                line += f" ({witness})"
            lines.append(line)
        for label, rows in sorted(self.certificates.items()):
            if len(rows) <= _CERT_TEXT_LIMIT:
                lines.append(f"certificate {label}:")
                for row in rows:
                    lines.append("  [" + ", ".join(row) + "]")
            else:
                lines.append(f"certificate {label}: {len(rows)}x{len(rows[0]) if rows else 0} matrix, "
                             "emitted with --json")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "verdict": self.verdict,
            "info": {k: v for k, v in self.info},
            "checks": [{"name": n, "status": s, "witness": w} for n, s, w in self.checks],
            "certificates": self.certificates,
        }
        return json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == "certified" else 1


def _emit(report: Report, as_json: bool) -> int:
    sys.stdout.write(report.to_json() if as_json else report.to_text())
    return report.exit_code


def _refuted_report(exc: ValidationError, seed: int | None = None) -> Report:
    info = [("seed", seed)] if seed is not None else []
    return Report("refuted", info,
                  [(exc.check, "fail", f"witness {exc.witness!r}: {exc.args[0]}")])


def _dim_of(kind: str, obj) -> list:
    if kind == "group":
        return [("order", obj.order)]
    if kind == "algebra":
        return [("dim", obj.dim), ("group-order", obj.group.order), ("field", obj.field.name)]
    if kind == "action":
        return [("dim", obj.algebra.dim), ("acting-order", obj.acting_group.order)]
    if kind == "structure_map":
        return [("source-dim", obj.source.algebra.dim), ("target-dim", obj.target.dim)]
    if kind == "bimodule":
        return [("dim", obj.dim), ("left-dim", obj.algebra_left.dim), ("right-dim", obj.algebra_right.dim)]
    return []


def cmd_check(args) -> int:
    try:
        kind, obj = documents.load_document(args.path, jobs=args.jobs)
    except ValidationError as exc:
        return _emit(_refuted_report(exc), args.json)
    report = Report("certified", [("kind", kind)] + _dim_of(kind, obj),
                    [(name, "ok", "") for name in _CHECKS[kind]])
    return _emit(report, args.json)


def _load_kind(path: str, expected: str, jobs: int):
    kind, obj = documents.load_document(path, jobs=jobs)
    if kind != expected:
        raise DocumentError(f"expected a {expected} document, found {kind}", path)
    return obj


def cmd_build(args) -> int:
    op = args.op
    try:
        if op == "tensor":
            algebras = [_load_kind(p, "algebra", args.jobs) for p in args.inputs]
            result = tensor_algebras(algebras, jobs=args.jobs)
        elif op == "wreath":
            if args.n is None:
                raise ValueError("build wreath requires --n")
            if len(args.inputs) != 1:
                raise ValueError("build wreath takes exactly one algebra document")
            result = wreath_algebra(_load_kind(args.inputs[0], "algebra", args.jobs), args.n, jobs=args.jobs)
        elif op == "opposite":
            if len(args.inputs) != 1:
                raise ValueError("build opposite takes exactly one algebra document")
            result = opposite(_load_kind(args.inputs[0], "algebra", args.jobs), jobs=args.jobs)
        elif op == "dual":
            if len(args.inputs) != 1:
                raise ValueError("build dual takes exactly one bimodule document")
            result = dual(_load_kind(args.inputs[0], "bimodule", args.jobs), jobs=args.jobs)
        elif op == "tensor-over":
            if len(args.inputs) != 2:
                raise ValueError("build tensor-over takes exactly two bimodule documents")
            m1 = _load_kind(args.inputs[0], "bimodule", args.jobs)
            m2 = _load_kind(args.inputs[1], "bimodule", args.jobs)
            result = tensor_over(m1, m2, jobs=args.jobs)
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(f"unknown build op {op}")
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        sys.stderr.write(f"build {op}: {exc}\n")
        return 2
    documents.write_document(documents.payload_for(result), args.output)
    dim = result.dim if hasattr(result, "dim") else result.order
    sys.stdout.write(f"build {op}: wrote {args.output} (dim {dim})\n")
    return 0


def cmd_verify_morita(args) -> int:
    try:
        m = _load_kind(args.path, "bimodule", args.jobs)
    except ValidationError as exc:
        return _emit(_refuted_report(exc, args.seed), args.json)
    result = verify_morita(m, seed=args.seed, trials=args.trials, jobs=args.jobs)
    if result.certified:
        verdict = "certified"
    elif result.refuted:
        verdict = "refuted"
    else:
        verdict = "not-certified"
    info = [
        ("seed", args.seed),
        ("trials", args.trials),
        ("module-dim", result.module_dim),
        ("dual-dim", result.dual_dim),
        ("left-product-dim", result.left_product_dim),
        ("right-product-dim", result.right_product_dim),
        ("left-algebra-dim", result.left_algebra_dim),
        ("right-algebra-dim", result.right_algebra_dim),
    ]
    checks = [("bimodule-validates", "ok", "")]
    certificates = {}
    fmt = m.field.format
    for label, iso in (("left-isomorphism", result.left_iso), ("right-isomorphism", result.right_iso)):
        status = "ok" if iso.certified else "fail"
        checks.append((label, status, iso.detail))
        if iso.certified:
            certificates[label] = [[fmt(s) for s in row] for row in iso.iso.matrix.rows]
            certificates[label + "-inverse"] = [[fmt(s) for s in row] for row in iso.iso.inverse.rows]
    return _emit(Report(verdict, info, checks, certificates), args.json)


def cmd_oracle(args) -> int:
    group = _load_kind(args.group, "group", args.jobs)
    n = args.n
    field = field_from_token(args.field)
    dim = group.order**n
    for k in range(2, n + 1):
        dim *= k
    if dim**3 > args.budget:
        sys.stderr.write(
            f"oracle: refused, the wreath algebra has dimension {dim} and validating it takes "
            f"{dim}^3 = {dim**3} triple checks, over the budget of {args.budget:.0f}; "
            "raise --budget to force\n")
        return 2
    built = wreath_algebra(group_algebra(group, field), n, jobs=args.jobs)
    direct = group_algebra(wreath_group(group, n), field)
    info = [("group-order", group.order), ("n", n), ("field", field.name), ("dim", dim)]
    mismatch = None
    if built.degree != direct.degree:
        first = next(i for i, (x, y) in enumerate(zip(built.degree, direct.degree)) if x != y)
        mismatch = ("degree", f"basis {first}")
    elif built.one != direct.one:
        mismatch = ("unit", "unit vectors differ")
    elif built.mult != direct.mult:
        keys = sorted(set(built.mult) ^ set(direct.mult)) or sorted(
            k for k in built.mult if built.mult[k] != direct.mult.get(k))
        mismatch = ("structure-constants", f"first differing product {keys[0]}")
    if mismatch is None:
        report = Report("certified", info, [("structure-constant-diff", "ok", "")])
    else:
        report = Report("refuted", info, [("structure-constant-diff", "fail",
                                           f"{mismatch[0]}: {mismatch[1]}")])
    return _emit(report, args.json)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedmorita",
        description="Construct and verify group-graded algebras, bimodules, and graded Morita equivalences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--jobs", type=int, default=1, help="worker threads for verification sweeps")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")

    p = sub.add_parser("check", help="validate a document")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", help="run a constructor and write the result document")
    p.add_argument("op", choices=["tensor", "wreath", "dual", "tensor-over", "opposite"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--n", type=int, default=None, help="wreath arity")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify-morita", help="verify a graded Morita equivalence certificate")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=16)
    common(p)
    p.set_defaults(func=cmd_verify_morita)

    p = sub.add_parser("oracle", help="diff the wreath algebra of a group algebra against "
                                      "the group algebra of the wreath group")
    p.add_argument("group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--budget", type=float, default=1e8,
                   help="maximum number of associativity triple checks")
    common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except DocumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValidationError as exc:
        report = _refuted_report(exc)
        sys.stdout.write(report.to_json() if args.json else report.to_text())
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    finally:
        sys.stderr.write(f"elapsed: {time.perf_counter() - started:.3f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
