"""Exception types shared across the package."""

from __future__ import annotations


class ValidationError(Exception):
    """An axiom or invariant check failed on otherwise well-formed data.

    `check` is a short stable name of the violated invariant ("associativity",
    "grading", ...) and `witness` pins down where it failed (basis indices,
    group elements, offending values).  CLI reports turn this into a
    "refuted" verdict with the witness attached.
    """

    def __init__(self, check: str, message: str, witness: tuple = ()):
        self.check = check
        self.witness = witness
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        if self.witness:
            return f"[{self.check}] {base} (witness: {self.witness!r})"
        return f"[{self.check}] {base}"


class DocumentError(Exception):
    """A document could not be parsed or its references resolved (CLI exit 2)."""

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(message if path is None else f"{path}: {message}")


class InternalCheckError(Exception):
    """A consistency condition that should be unreachable failed.

    Raised by post-hoc traps (e.g. a conjugation that leaves the centralizer);
    indicates a bug in a constructor, never bad user input.
    """
