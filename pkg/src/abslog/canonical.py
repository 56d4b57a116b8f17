"""Nameless canonical forms and alpha-equivalence.

Bound arity-0 occurrences become de Bruijn indices (0 = innermost binder);
free occurrences keep their VarKey.  Abstraction applications drop binder
names; each argument records the binder slots it scopes over, so a canonical
term is self-contained.  Alpha-equivalent inputs map to identical canonical
values, and every canonical value has a stable byte encoding used for premise
ordering, rule identity and logic digests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnusedBinder
from .terms import (
    Abs,
    Rule,
    Signature,
    Template,
    Term,
    Var,
    VarKey,
    validate_template,
    validate_term,
)


@dataclass(frozen=True)
class CBound:
    index: int


@dataclass(frozen=True)
class CFree:
    key: VarKey
    args: tuple[CTerm, ...] = ()


@dataclass(frozen=True)
class CArg:
    slots: tuple[int, ...]
    body: CTerm


@dataclass(frozen=True)
class CAbs:
    name: str
    args: tuple[CArg, ...]


CTerm = CBound | CFree | CAbs


@dataclass(frozen=True)
class CTemplate:
    arity: int
    body: CTerm


# -- named -> nameless --------------------------------------------------------

def to_canonical(sig: Signature, term: Term) -> CTerm:
    validate_term(sig, term)
    return _canon(sig, term, [])


def canonical_template(sig: Signature, tpl: Template) -> CTemplate:
    validate_template(sig, tpl)
    return CTemplate(tpl.arity, _canon(sig, tpl.body, list(tpl.binders)))


def _canon(sig, term, stack):
    if isinstance(term, Var):
        if not term.args:
            for depth, name in enumerate(reversed(stack)):
                if name == term.name:
                    return CBound(depth)
            return CFree(VarKey(term.name, 0))
        return CFree(term.key, tuple(_canon(sig, a, stack) for a in term.args))
    shape = sig.shape(term.name)
    cargs = []
    for deps, arg in zip(shape.deps, term.args):
        slots = tuple(sorted(deps))
        names = [term.binders[q - 1] for q in slots]
        stack.extend(names)
        body = _canon(sig, arg, stack)
        if names:
            del stack[-len(names):]
        cargs.append(CArg(slots, body))
    return CAbs(term.name, tuple(cargs))


# -- nameless -> named --------------------------------------------------------

def collect_free_names(cterm: CTerm, out: set[str]) -> None:
    if isinstance(cterm, CFree):
        out.add(cterm.key.name)
        for a in cterm.args:
            collect_free_names(a, out)
    elif isinstance(cterm, CAbs):
        for arg in cterm.args:
            collect_free_names(arg.body, out)


def fresh_names(count: int, avoid, base: str = "x") -> list[str]:
    """base, base1, base2, ... skipping names in `avoid`; deterministic."""
    names: list[str] = []
    taken = set(avoid)
    i = 0
    while len(names) < count:
        cand = base if i == 0 else f"{base}{i}"
        i += 1
        if cand not in taken:
            names.append(cand)
            taken.add(cand)
    return names


def from_canonical(cterm: CTerm) -> Term:
    """Pick the canonical named representative: binder names are regenerated
    (base x + smallest free suffix), avoiding every free name in scope and all
    enclosing binders, so the output never shadows and is byte-stable."""
    return _named(cterm, [])


def from_canonical_template(ctpl: CTemplate, avoid=frozenset()) -> Template:
    taken: set[str] = set(avoid)
    collect_free_names(ctpl.body, taken)
    binders = fresh_names(ctpl.arity, taken)
    return Template(tuple(binders), _named(ctpl.body, list(binders)))


def _named(cterm, stack):
    if isinstance(cterm, CBound):
        return Var(stack[-1 - cterm.index])
    if isinstance(cterm, CFree):
        return Var(cterm.key.name, tuple(_named(a, stack) for a in cterm.args))
    m = max((q for arg in cterm.args for q in arg.slots), default=0)
    avoid = set(stack)
    collect_free_names(cterm, avoid)
    binders = fresh_names(m, avoid)
    args = []
    for arg in cterm.args:
        names = [binders[q - 1] for q in arg.slots]
        args.append(_named(arg.body, stack + names))
    return Abs(cterm.name, tuple(binders), tuple(args))


# -- stable byte encodings ----------------------------------------------------

def encode_cterm(cterm: CTerm) -> str:
    if isinstance(cterm, CBound):
        return f"b{cterm.index}"
    if isinstance(cterm, CFree):
        inner = ",".join(encode_cterm(a) for a in cterm.args)
        return f"v{cterm.key.name}:{cterm.key.arity}({inner})"
    parts = ",".join(
        ".".join(map(str, arg.slots)) + ":" + encode_cterm(arg.body)
        for arg in cterm.args
    )
    return f"a{cterm.name}({parts})"


def encode_ctemplate(ctpl: CTemplate) -> str:
    return f"t{ctpl.arity}.{encode_cterm(ctpl.body)}"


def term_encoding(sig: Signature, term: Term) -> bytes:
    return encode_cterm(to_canonical(sig, term)).encode()


# -- alpha-equivalence --------------------------------------------------------

def alpha_eq_term(sig: Signature, s: Term, t: Term) -> bool:
    return to_canonical(sig, s) == to_canonical(sig, t)


def alpha_eq_template(sig: Signature, s: Template, t: Template) -> bool:
    return canonical_template(sig, s) == canonical_template(sig, t)


# -- premises and rules -------------------------------------------------------

def canonicalize_premise(sig: Signature, tpl: Template) -> Template:
    """Reorder template binders by the position of their first free arity-0
    occurrence in the body (pre-order). Every binder must occur free."""
    validate_template(sig, tpl)
    c = _canon(sig, tpl.body, [])
    binder_set = set(tpl.binders)
    order: list[str] = []

    def walk(node):
        if isinstance(node, CFree):
            if node.key.arity == 0 and node.key.name in binder_set:
                if node.key.name not in order:
                    order.append(node.key.name)
            for a in node.args:
                walk(a)
        elif isinstance(node, CAbs):
            for arg in node.args:
                walk(arg.body)

    walk(c)
    missing = [b for b in tpl.binders if b not in order]
    if missing:
        raise UnusedBinder(
            f"premise binders {missing} do not occur free in the body"
        )
    return Template(tuple(order), tpl.body)


def canonical_rule(sig: Signature, rule: Rule) -> Rule:
    """The canonical representative of a rule's alpha-class: premises in
    canonical binder order, deduplicated and sorted by encoding, all binder
    names regenerated."""
    encoded: list[tuple[str, CTemplate]] = []
    for tpl in rule.premises:
        ordered = canonicalize_premise(sig, tpl)
        ctpl = canonical_template(sig, ordered)
        encoded.append((encode_ctemplate(ctpl), ctpl))
    encoded.sort(key=lambda pair: pair[0])
    premises = []
    seen = set()
    for enc, ctpl in encoded:
        if enc in seen:
            continue
        seen.add(enc)
        premises.append(from_canonical_template(ctpl))
    conclusion = from_canonical(to_canonical(sig, rule.conclusion))
    return Rule(tuple(premises), conclusion)


def rule_encoding(sig: Signature, rule: Rule) -> bytes:
    encs = sorted(
        {
            encode_ctemplate(canonical_template(sig, canonicalize_premise(sig, tpl)))
            for tpl in rule.premises
        }
    )
    concl = encode_cterm(to_canonical(sig, rule.conclusion))
    return (";".join(encs) + "|-" + concl).encode()


def alpha_eq_rule(sig: Signature, r: Rule, s: Rule) -> bool:
    return rule_encoding(sig, r) == rule_encoding(sig, s)
