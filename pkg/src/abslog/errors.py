"""Exception hierarchy. Every error carries a short machine-readable code."""

from __future__ import annotations


class AbslogError(Exception):
    code = "error"


# -- shapes and terms ---------------------------------------------------------

class ShapeError(AbslogError):
    code = "shape"


class CoverageGap(ShapeError):
    code = "shape-coverage-gap"


class NonPositiveIndex(ShapeError):
    code = "shape-non-positive-index"


class EmptyUnionMismatch(ShapeError):
    code = "shape-empty-union"


class TermError(AbslogError):
    code = "term"


class UnknownAbstraction(TermError):
    code = "unknown-abstraction"


class ArityError(TermError):
    code = "arity"


class UnusedBinder(AbslogError):
    code = "unused-binder"


# -- semantics ----------------------------------------------------------------

class DuplicateName(AbslogError):
    code = "duplicate-name"


class InterpMissing(AbslogError):
    code = "interp-missing"


class EnumerationTooLarge(AbslogError):
    code = "enumeration-too-large"


# -- kernel -------------------------------------------------------------------

class KernelError(AbslogError):
    code = "kernel"


class MalformedRule(KernelError):
    code = "malformed-rule"


class DuplicateRuleName(KernelError):
    code = "duplicate-rule-name"


class UnknownRule(KernelError):
    code = "unknown-rule"


class NameClash(KernelError):
    code = "name-clash"


class SignatureMismatch(KernelError):
    code = "signature-mismatch"


class LogicMismatch(KernelError):
    code = "logic-mismatch"


class BadIndex(KernelError):
    code = "bad-index"


class PremiseMismatch(KernelError):
    code = "premise-mismatch"


class TargetMismatch(KernelError):
    code = "target-mismatch"


class NotAnExtension(KernelError):
    code = "not-an-extension"


# -- frontend -----------------------------------------------------------------

class ParseError(AbslogError):
    """Parse failure with a source position; `code` distinguishes causes."""

    def __init__(self, message, file="<string>", line=0, col=0, code="syntax"):
        super().__init__(message)
        self.file = file
        self.line = line
        self.col = col
        self.code = code


class UnknownTheoremName(AbslogError):
    code = "unknown-theorem"
