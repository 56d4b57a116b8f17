"""Capture-avoiding, hereditary substitution of templates for variables.

Substitution is performed on the nameless canonical form: bound occurrences
are indices and can never be captured, and names are regenerated afterwards,
so the result is the canonical representative of the substituted alpha-class.
A domain entry (x, n) maps to an n-ary template; applying it to an occurrence
x[a1, ..., an] instantiates the template's binders with the (already
substituted) arguments.  Inserted template bodies are never re-substituted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import (
    CAbs,
    CArg,
    CBound,
    CFree,
    CTemplate,
    CTerm,
    canonical_rule,
    canonical_template,
    from_canonical,
    from_canonical_template,
    fresh_names,
    to_canonical,
)
from .errors import TermError
from .terms import (
    Rule,
    Signature,
    Template,
    Term,
    Var,
    VarKey,
    as_template,
    free_variables,
    validate_template,
)


@dataclass(frozen=True)
class Substitution:
    """Partial map VarKey -> Template; every (x, n) maps to an n-ary template."""

    entries: tuple[tuple[VarKey, Template], ...]

    @staticmethod
    def make(mapping) -> Substitution:
        """Build from a dict or item iterable. Keys may be VarKey, (name, arity)
        pairs, or bare names (arity 0); term values become 0-ary templates."""
        items = mapping.items() if hasattr(mapping, "items") else mapping
        entries = []
        for key, value in items:
            if isinstance(key, str):
                key = VarKey(key, 0)
            elif isinstance(key, tuple):
                key = VarKey(*key)
            tpl = as_template(value)
            if tpl.arity != key.arity:
                raise TermError(
                    f"substitution for {key.name}/{key.arity} must be a "
                    f"{key.arity}-ary template, got arity {tpl.arity}"
                )
            entries.append((key, tpl))
        entries.sort(key=lambda e: (e[0].name, e[0].arity))
        keys = [k for k, _ in entries]
        if len(set(keys)) != len(keys):
            raise TermError("duplicate substitution keys")
        return Substitution(tuple(entries))

    def domain(self) -> frozenset[VarKey]:
        return frozenset(k for k, _ in self.entries)

    def get(self, key: VarKey) -> Template | None:
        for k, tpl in self.entries:
            if k == key:
                return tpl
        return None


EMPTY_SUBSTITUTION = Substitution(())


def validate_substitution(sig: Signature, subst: Substitution) -> None:
    for _, tpl in subst.entries:
        validate_template(sig, tpl)


def _lift(cterm: CTerm, amount: int, depth: int = 0) -> CTerm:
    """Shift dangling indices (>= depth) by `amount`."""
    if amount == 0:
        return cterm
    if isinstance(cterm, CBound):
        return CBound(cterm.index + amount) if cterm.index >= depth else cterm
    if isinstance(cterm, CFree):
        return CFree(cterm.key, tuple(_lift(a, amount, depth) for a in cterm.args))
    return CAbs(
        cterm.name,
        tuple(
            CArg(arg.slots, _lift(arg.body, amount, depth + len(arg.slots)))
            for arg in cterm.args
        ),
    )


def _instantiate(body: CTerm, arity: int, reps: tuple[CTerm, ...], depth: int) -> CTerm:
    """Replace references to the template's own binders with `reps`."""
    if isinstance(body, CBound):
        if body.index < depth:
            return body
        slot = arity - (body.index - depth)  # 1-based binder position
        assert 1 <= slot <= arity, "canonical template body has dangling index"
        return _lift(reps[slot - 1], depth)
    if isinstance(body, CFree):
        return CFree(
            body.key,
            tuple(_instantiate(a, arity, reps, depth) for a in body.args),
        )
    return CAbs(
        body.name,
        tuple(
            CArg(arg.slots, _instantiate(arg.body, arity, reps, depth + len(arg.slots)))
            for arg in body.args
        ),
    )


def _apply(cterm: CTerm, table: dict[VarKey, CTemplate]) -> CTerm:
    if isinstance(cterm, CBound):
        return cterm
    if isinstance(cterm, CFree):
        args = tuple(_apply(a, table) for a in cterm.args)
        ctpl = table.get(cterm.key)
        if ctpl is None:
            return CFree(cterm.key, args)
        return _instantiate(ctpl.body, ctpl.arity, args, 0)
    return CAbs(
        cterm.name,
        tuple(CArg(arg.slots, _apply(arg.body, table)) for arg in cterm.args),
    )


def _canonical_table(sig, subst):
    return {key: canonical_template(sig, tpl) for key, tpl in subst.entries}


def apply_to_term(sig: Signature, subst: Substitution, term: Term) -> Term:
    """The canonical representative of subst/term; free occurrences in the
    domain are replaced, nothing is ever captured."""
    validate_substitution(sig, subst)
    result = _apply(to_canonical(sig, term), _canonical_table(sig, subst))
    return from_canonical(result)


def apply_to_template(sig: Signature, subst: Substitution, tpl: Template) -> Template:
    """Apply under the template's binders (they shadow the domain); arity is
    preserved and binders are renamed as needed to avoid capture."""
    validate_substitution(sig, subst)
    ctpl = canonical_template(sig, tpl)
    body = _apply(ctpl.body, _canonical_table(sig, subst))
    return from_canonical_template(CTemplate(ctpl.arity, body))


def apply_to_rule(sig: Signature, subst: Substitution, rule: Rule) -> Rule:
    """Apply to conclusion and premises, dropping premise binders that are no
    longer used; the result is re-canonicalized."""
    premises = []
    for tpl in rule.premises:
        out = apply_to_template(sig, subst, tpl)
        free = free_variables(sig, out.body)
        kept = tuple(b for b in out.binders if VarKey(b, 0) in free)
        premises.append(Template(kept, out.body))
    conclusion = apply_to_term(sig, subst, rule.conclusion)
    return canonical_rule(sig, Rule(tuple(premises), conclusion))


def canonical_substitution(keys) -> Substitution:
    """kappa: maps each (x, n) to [y1 ... yn. x[y1, ..., yn]]; acts as the
    identity up to alpha-equivalence."""
    entries = {}
    for key in keys:
        if isinstance(key, tuple) and not isinstance(key, VarKey):
            key = VarKey(*key)
        binders = fresh_names(key.arity, {key.name}, base="y")
        body = Var(key.name, tuple(Var(b) for b in binders))
        entries[key] = Template(tuple(binders), body)
    return Substitution.make(entries)
