"""Exception types shared across the package."""

from __future__ import annotations


class StarlabError(Exception):
    """Base class for all package errors."""


class AxiomViolation(StarlabError, ValueError):
    """Raised by validation; ``violations`` lists every failed law.

    Each violation is a ``(kind, witness)`` pair where the witness is the
    first tuple of carrier indices (in lexicographic order) breaking the law.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        self.kind, self.witness = self.violations[0]
        msg = "; ".join(f"{k} fails at {w}" for k, w in self.violations)
        super().__init__(msg)


class IndexOutOfRange(StarlabError, ValueError):
    pass


class ParseError(StarlabError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class CapExceeded(StarlabError, RuntimeError):
    pass


class ArithmeticOverflow(StarlabError, ArithmeticError):
    pass


class ForeignElement(StarlabError, ValueError):
    """A subset passed to a lattice operation is not a member of the lattice."""


class OrtholatticeAxiomFailure(StarlabError, AssertionError):
    def __init__(self, axiom: str, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at {witness}")


class HypothesisNotMet(StarlabError):
    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("hypotheses not met: " + ", ".join(self.failed))


class NoCertificateFound(StarlabError, AssertionError):
    pass


class UniquenessViolation(StarlabError, AssertionError):
    def __init__(self, kind: str, candidates):
        self.kind = kind
        self.candidates = list(candidates)
        super().__init__(f"{kind}: expected exactly one candidate, found {len(self.candidates)}")
