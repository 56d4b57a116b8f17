"""Finite abstraction algebras and the brute-force validity oracle.

Carrier elements are indices into a named carrier tuple.  An operation table
is a total map carrier^k -> carrier stored row-major; an operator interprets
an abstraction by mapping argument *tables* to an element.  A valuation gives
every (variable, arity) pair a table; unlisted pairs default to the constant
first-element table, which is harmless because evaluation only reads the free
variables of a term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DuplicateName,
    EnumerationTooLarge,
    InterpMissing,
    TermError,
)
from .substitution import Substitution
from .terms import (
    Rule,
    Signature,
    Template,
    Term,
    Var,
    VarKey,
    free_variables,
    free_variables_template,
    validate_term,
)

DEFAULT_CAP = 2 ** 20


@dataclass(frozen=True)
class OperationTable:
    """Total k-ary operation on a carrier of `size` elements; `values` holds
    the results for all size**k argument tuples in row-major order."""

    size: int
    arity: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.size ** self.arity:
            raise TermError("operation table has wrong number of entries")

    def apply(self, args: tuple[int, ...]) -> int:
        index = 0
        for a in args:
            index = index * self.size + a
        return self.values[index]

    @staticmethod
    def constant(size: int, arity: int, element: int) -> OperationTable:
        return OperationTable(size, arity, (element,) * (size ** arity))

    def is_constant(self, element: int) -> bool:
        return all(v == element for v in self.values)


def _table_sort_key(tables: tuple[OperationTable, ...]):
    return tuple((t.arity, t.values) for t in tables)


@dataclass(frozen=True)
class ConstOp:
    """Operator returning a fixed element regardless of its arguments."""

    element: int

    def apply(self, tables) -> int:
        return self.element


@dataclass(frozen=True)
class PointwiseOp:
    """Operator whose arguments are all values, given directly as a table."""

    table: OperationTable

    def apply(self, tables) -> int:
        return self.table.apply(tuple(t.values[0] for t in tables))


@dataclass(frozen=True)
class ForallOp:
    """Returns `true_element` iff the single argument table is constantly
    `true_element`, else `false_element`."""

    true_element: int
    false_element: int

    def apply(self, tables) -> int:
        (table,) = tables
        return self.true_element if table.is_constant(self.true_element) else self.false_element


@dataclass(frozen=True)
class ExplicitOp:
    """Operator given by an explicit (argument tables) -> element map, made
    total by a default element."""

    mapping: tuple[tuple[tuple[OperationTable, ...], int], ...]
    default: int

    @staticmethod
    def make(mapping: dict, default: int) -> ExplicitOp:
        items = sorted(mapping.items(), key=lambda kv: _table_sort_key(kv[0]))
        return ExplicitOp(tuple(items), default)

    def __post_init__(self):
        object.__setattr__(self, "_dict", dict(self.mapping))

    def apply(self, tables) -> int:
        return self._dict.get(tuple(tables), self.default)


OperatorInterp = ConstOp | PointwiseOp | ForallOp | ExplicitOp


@dataclass(frozen=True)
class FiniteAlgebra:
    carrier: tuple[str, ...]
    signature: Signature
    interp: tuple[tuple[str, OperatorInterp], ...]

    def __post_init__(self):
        if not self.carrier:
            raise TermError("carrier must be non-empty")
        if len(set(self.carrier)) != len(self.carrier):
            raise DuplicateName("carrier element names must be distinct")
        table = dict(self.interp)
        for name, shape in self.signature.abstractions:
            op = table.get(name)
            if op is None:
                continue  # detected at evaluation time as InterpMissing
            if isinstance(op, PointwiseOp):
                if any(p for p in shape.deps) or op.table.arity != shape.arity:
                    raise TermError(f"pointwise interpretation does not fit {name!r}")
                if op.table.size != len(self.carrier):
                    raise TermError(f"table size mismatch for {name!r}")
            elif isinstance(op, ForallOp) and shape.arity != 1:
                raise TermError(f"forall-like interpretation needs arity 1, {name!r}")
        object.__setattr__(self, "_interp_table", table)

    @property
    def size(self) -> int:
        return len(self.carrier)

    def operator(self, name: str) -> OperatorInterp:
        op = self._interp_table.get(name)
        if op is None:
            raise InterpMissing(f"abstraction {name!r} has no interpretation")
        return op

    def element(self, name: str) -> int:
        try:
            return self.carrier.index(name)
        except ValueError:
            raise TermError(f"unknown carrier element {name!r}") from None


@dataclass(frozen=True)
class Model:
    """Finite algebra plus the designated truth element (standard valuation
    space: all valuations)."""

    algebra: FiniteAlgebra
    truth: int

    def __post_init__(self):
        if not 0 <= self.truth < self.algebra.size:
            raise TermError("truth must be a carrier element")

    @property
    def truth_name(self) -> str:
        return self.algebra.carrier[self.truth]


@dataclass(frozen=True)
class Valuation:
    """Total map (variable, arity) -> table as finite overrides over the
    default policy (constant first carrier element)."""

    size: int
    overrides: tuple[tuple[VarKey, OperationTable], ...] = ()

    def __post_init__(self):
        table = {}
        for key, op in self.overrides:
            if op.arity != key.arity:
                raise TermError(f"table arity mismatch for {key}")
            if op.size != self.size:
                raise TermError(f"table size mismatch for {key}")
            table[key] = op
        object.__setattr__(self, "_table", table)

    @staticmethod
    def make(size: int, overrides: dict) -> Valuation:
        items = []
        for key, op in overrides.items():
            if isinstance(key, tuple) and not isinstance(key, VarKey):
                key = VarKey(*key)
            elif isinstance(key, str):
                key = VarKey(key, 0)
            items.append((key, op))
        items.sort(key=lambda kv: (kv[0].name, kv[0].arity))
        return Valuation(size, tuple(items))

    def lookup(self, key: VarKey) -> OperationTable:
        op = self._table.get(key)
        if op is None:
            return OperationTable.constant(self.size, key.arity, 0)
        return op

    def updated(self, updates) -> Valuation:
        """nu[x1 := u1, ..., xk := uk]: arity-0 entries only; later valuations
        built the same way override earlier ones."""
        names = [name for name, _ in updates]
        if len(set(names)) != len(names):
            raise DuplicateName(f"duplicate names in valuation update: {names}")
        table = dict(self._table)
        for name, element in updates:
            table[VarKey(name, 0)] = OperationTable.constant(self.size, 0, element)
        items = sorted(table.items(), key=lambda kv: (kv[0].name, kv[0].arity))
        return Valuation(self.size, tuple(items))


def update_valuation(nu: Valuation, updates) -> Valuation:
    return nu.updated(updates)


# -- evaluation ---------------------------------------------------------------

def eval_term(model: Model, nu: Valuation, term: Term) -> int:
    validate_term(model.algebra.signature, term)
    return _eval(model, nu, term)


def _eval(model, nu, term):
    alg = model.algebra
    if isinstance(term, Var):
        args = tuple(_eval(model, nu, a) for a in term.args)
        return nu.lookup(term.key).apply(args)
    op = alg.operator(term.name)
    shape = alg.signature.shape(term.name)
    tables = []
    for deps, arg in zip(shape.deps, term.args):
        slots = sorted(deps)
        names = [term.binders[q - 1] for q in slots]
        k = len(slots)
        values = tuple(
            _eval(model, nu.updated(tuple(zip(names, tup))), arg)
            for tup in itertools.product(range(alg.size), repeat=k)
        )
        tables.append(OperationTable(alg.size, k, values))
    return op.apply(tuple(tables))


def eval_template(model: Model, nu: Valuation, tpl: Template) -> OperationTable:
    size = model.algebra.size
    n = tpl.arity
    values = tuple(
        eval_term(model, nu.updated(tuple(zip(tpl.binders, tup))), tpl.body)
        for tup in itertools.product(range(size), repeat=n)
    )
    return OperationTable(size, n, values)


def subst_valuation(model: Model, nu: Valuation, subst: Substitution) -> Valuation:
    """nu_sigma: domain keys evaluate their template under nu, others unchanged."""
    table = dict(nu.overrides)
    for key, tpl in subst.entries:
        table[key] = eval_template(model, nu, tpl)
    items = sorted(table.items(), key=lambda kv: (kv[0].name, kv[0].arity))
    return Valuation(nu.size, tuple(items))


def rule_true(model: Model, nu: Valuation, rule: Rule) -> bool:
    """True iff the conclusion is true for nu, or some premise is not
    constantly true for nu."""
    if eval_term(model, nu, rule.conclusion) == model.truth:
        return True
    for tpl in rule.premises:
        if not eval_template(model, nu, tpl).is_constant(model.truth):
            return True
    return False


# -- enumeration and model checking -------------------------------------------

@lru_cache(maxsize=64)
def _op_space(size: int, arity: int) -> tuple[OperationTable, ...]:
    return tuple(
        OperationTable(size, arity, values)
        for values in itertools.product(range(size), repeat=size ** arity)
    )


def enumerate_operations(size: int, arity: int, cap: int = DEFAULT_CAP) -> list[OperationTable]:
    """All size**(size**arity) tables of the given arity, deterministic order."""
    count = size ** (size ** arity)
    if count > cap:
        raise EnumerationTooLarge(
            f"{count} operations of arity {arity} over {size} elements exceeds cap {cap}"
        )
    return list(_op_space(size, arity))


@dataclass(frozen=True)
class RuleCheck:
    valid: bool
    counterexample: Valuation | None
    assignments: int


def rule_free_keys(sig: Signature, rule: Rule) -> tuple[VarKey, ...]:
    keys: set[VarKey] = set(free_variables(sig, rule.conclusion))
    for tpl in rule.premises:
        keys |= free_variables_template(sig, tpl)
    return tuple(sorted(keys, key=lambda k: (k.name, k.arity)))


def check_rule_valid(model: Model, rule: Rule, cap: int = DEFAULT_CAP) -> RuleCheck:
    """Enumerate all assignments of tables to the rule's free variables and
    test rule_true on each; the first failing valuation (enumeration order) is
    reported as counterexample."""
    size = model.algebra.size
    keys = rule_free_keys(model.algebra.signature, rule)
    total = 1
    for key in keys:
        total *= size ** (size ** key.arity)
    if total > cap:
        raise EnumerationTooLarge(
            f"{total} valuation assignments for rule exceeds cap {cap}"
        )
    spaces = [enumerate_operations(size, key.arity, cap) for key in keys]
    for combo in itertools.product(*spaces):
        nu = Valuation.make(size, dict(zip(keys, combo)))
        if not rule_true(model, nu, rule):
            return RuleCheck(False, nu, total)
    return RuleCheck(True, None, total)


@dataclass(frozen=True)
class RuleReport:
    name: str
    valid: bool
    counterexample: Valuation | None


@dataclass(frozen=True)
class ModelReport:
    entries: tuple[RuleReport, ...]

    @property
    def ok(self) -> bool:
        return all(e.valid for e in self.entries)

    @property
    def valid_count(self) -> int:
        return sum(1 for e in self.entries if e.valid)


def check_model(model: Model, logic, cap: int = DEFAULT_CAP) -> ModelReport:
    """Run check_rule_valid on every inference rule of the logic."""
    if not model.algebra.signature.covers(logic.signature):
        raise TermError("model signature does not cover the logic's signature")
    entries = []
    for name, rule in logic.rules:
        check = check_rule_valid(model, rule, cap)
        entries.append(RuleReport(name, check.valid, check.counterexample))
    return ModelReport(tuple(entries))


def degenerate_model(sig: Signature) -> Model:
    """One-element model: every operator returns the single value, which is
    the designated truth; exists for every abstraction logic."""
    interp = tuple((name, ConstOp(0)) for name, _ in sig.abstractions)
    return Model(FiniteAlgebra(("T",), sig, interp), truth=0)


def _all_interps(shape, size: int):
    """Every operator of the given shape over a carrier of `size` elements."""
    arg_spaces = [enumerate_operations(size, len(p)) for p in shape.deps]
    keys = list(itertools.product(*arg_spaces))
    out = []
    for values in itertools.product(range(size), repeat=len(keys)):
        out.append(ExplicitOp.make(dict(zip(keys, values)), default=0))
    return out


def search_models(logic, sizes, cap: int = DEFAULT_CAP) -> list[Model]:
    """Exhaustively enumerate all models of the logic with the given carrier
    sizes: every choice of truth element and operator interpretation is tried
    and checked against every inference rule."""
    found = []
    ordered_rules = sorted(
        logic.rules,
        key=lambda nr: len(rule_free_keys(logic.signature, nr[1])),
    )
    for size in sizes:
        carrier = tuple(f"e{i}" for i in range(size))
        domains = []
        total = size
        for name, shape in logic.signature.abstractions:
            interps = _all_interps(shape, size)
            total *= len(interps)
            domains.append([(name, op) for op in interps])
        if total > cap:
            raise EnumerationTooLarge(
                f"{total} candidate models of size {size} exceeds cap {cap}"
            )
        for combo in itertools.product(*domains):
            algebra = FiniteAlgebra(carrier, logic.signature, tuple(combo))
            for truth in range(size):
                model = Model(algebra, truth)
                if all(
                    check_rule_valid(model, rule, cap).valid
                    for _, rule in ordered_rules
                ):
                    found.append(model)
    return found
