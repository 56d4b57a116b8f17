"""Signatures, shaped terms, templates and rules.

A term is either a variable application ``x[t1, ..., tn]`` (a bare ``x`` is the
arity-0 case) or an abstraction application ``(a x1 ... xm. t1 ... tn)``.  The
signature fixes, per abstraction, which of the m binders each argument binds:
argument i of an abstraction with shape ``[p1, ..., pn]`` binds the variables
at the slot positions in ``p_i``, in ascending slot order.  Binders bind only
arity-0 occurrences; a variable's identity is the pair (name, arity).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    ArityError,
    CoverageGap,
    NonPositiveIndex,
    TermError,
    UnknownAbstraction,
)

_NAME_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class VarKey:
    """A variable identity: the same name at different arities is a different
    variable (``x[x]`` is really x-at-arity-1 applied to x-at-arity-0)."""

    name: str
    arity: int


@dataclass(frozen=True)
class Shape:
    """Binder-dependency sets of an abstraction: arity = len(deps), valence =
    largest slot mentioned; the deps must cover {1..valence} exactly."""

    deps: tuple[frozenset[int], ...]

    @property
    def arity(self) -> int:
        return len(self.deps)

    @property
    def valence(self) -> int:
        return max((q for p in self.deps for q in p), default=0)


def validate_shape(deps) -> Shape:
    """Validate dependency sets and build a Shape; rejects non-positive slot
    indices and coverage gaps (the union must be exactly {1..m})."""
    sets = tuple(frozenset(p) for p in deps)
    for p in sets:
        for q in p:
            if not isinstance(q, int) or q < 1:
                raise NonPositiveIndex(f"slot index {q!r} is not a positive integer")
    union = frozenset().union(*sets) if sets else frozenset()
    m = max(union, default=0)
    missing = set(range(1, m + 1)) - union
    if missing:
        raise CoverageGap(f"slots {sorted(missing)} not bound by any argument")
    return Shape(sets)


@dataclass(frozen=True)
class Signature:
    """Ordered map from abstraction name to shape."""

    abstractions: tuple[tuple[str, Shape], ...]

    def __post_init__(self):
        table = {}
        for name, shape in self.abstractions:
            if name in table:
                raise TermError(f"duplicate abstraction {name!r}")
            if not _NAME_RE.match(name):
                raise TermError(f"bad abstraction name {name!r}")
            table[name] = shape
        object.__setattr__(self, "_table", table)

    @staticmethod
    def make(items) -> Signature:
        """Build from an iterable of (name, deps) pairs; deps are validated."""
        return Signature(tuple((name, validate_shape(deps)) for name, deps in items))

    def __contains__(self, name) -> bool:
        return name in self._table

    def shape(self, name) -> Shape:
        try:
            return self._table[name]
        except KeyError:
            raise UnknownAbstraction(f"unknown abstraction {name!r}") from None

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.abstractions)

    def covers(self, other: Signature) -> bool:
        """True if every abstraction of `other` is present with the same shape."""
        return all(
            name in self._table and self._table[name] == shape
            for name, shape in other.abstractions
        )

    def extend(self, additions: Signature) -> Signature:
        return Signature(self.abstractions + additions.abstractions)


@dataclass(frozen=True)
class Var:
    """Variable application; ``args`` empty for a plain variable occurrence."""

    name: str
    args: tuple[Term, ...] = ()

    @property
    def key(self) -> VarKey:
        return VarKey(self.name, len(self.args))


@dataclass(frozen=True)
class Abs:
    """Abstraction application ``(name b1 ... bm. t1 ... tn)``."""

    name: str
    binders: tuple[str, ...] = ()
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if len(set(self.binders)) != len(self.binders):
            raise TermError(f"binders of {self.name!r} not pairwise distinct")


Term = Var | Abs


@dataclass(frozen=True)
class Template:
    """Binder-prefixed term ``[x1 ... xn. body]``; the 0-ary template is
    identified with its body term."""

    binders: tuple[str, ...]
    body: Term

    def __post_init__(self):
        if len(set(self.binders)) != len(self.binders):
            raise TermError("template binders not pairwise distinct")

    @property
    def arity(self) -> int:
        return len(self.binders)


def as_template(value) -> Template:
    """Coerce a term to the 0-ary template it is identified with."""
    if isinstance(value, Template):
        return value
    if isinstance(value, (Var, Abs)):
        return Template((), value)
    raise TermError(f"not a term or template: {value!r}")


@dataclass(frozen=True)
class Rule:
    """Premise set plus conclusion; an axiom is a premise-free rule."""

    premises: tuple[Template, ...]
    conclusion: Term


def validate_term(sig: Signature, term: Term) -> None:
    """Check well-formedness against the signature: known abstractions, binder
    count = valence, argument count = arity, legal names. Raises on failure."""
    if isinstance(term, Var):
        if not _NAME_RE.match(term.name):
            raise TermError(f"bad variable name {term.name!r}")
        if term.name in sig:
            raise TermError(
                f"{term.name!r} is an abstraction of the signature, not a variable"
            )
        for a in term.args:
            validate_term(sig, a)
        return
    if isinstance(term, Abs):
        shape = sig.shape(term.name)
        if len(term.binders) != shape.valence:
            raise ArityError(
                f"abstraction {term.name!r} takes {shape.valence} binders, "
                f"got {len(term.binders)}"
            )
        if len(term.args) != shape.arity:
            raise ArityError(
                f"abstraction {term.name!r} takes {shape.arity} arguments, "
                f"got {len(term.args)}"
            )
        for b in term.binders:
            if not _NAME_RE.match(b):
                raise TermError(f"bad binder name {b!r}")
            if b in sig:
                raise TermError(f"binder {b!r} shadows an abstraction name")
        for a in term.args:
            validate_term(sig, a)
        return
    raise TermError(f"not a term: {term!r}")


def validate_template(sig: Signature, tpl: Template) -> None:
    for b in tpl.binders:
        if not _NAME_RE.match(b):
            raise TermError(f"bad binder name {b!r}")
        if b in sig:
            raise TermError(f"binder {b!r} shadows an abstraction name")
    validate_term(sig, tpl.body)


def free_variables(sig: Signature, term: Term) -> frozenset[VarKey]:
    """The (name, arity) pairs occurring free; binders remove only arity-0
    occurrences within their scope, so any occurrence with arity > 0 is free."""
    out: set[VarKey] = set()
    _free(sig, term, (), out)
    return frozenset(out)


def free_variables_template(sig: Signature, tpl: Template) -> frozenset[VarKey]:
    out: set[VarKey] = set()
    _free(sig, tpl.body, tpl.binders, out)
    return frozenset(out)


def _free(sig, term, bound, out):
    if isinstance(term, Var):
        if not term.args:
            if term.name not in bound:
                out.add(VarKey(term.name, 0))
            return
        out.add(term.key)
        for a in term.args:
            _free(sig, a, bound, out)
        return
    shape = sig.shape(term.name)
    for deps, arg in zip(shape.deps, term.args):
        names = tuple(term.binders[q - 1] for q in sorted(deps))
        _free(sig, arg, bound + names, out)
