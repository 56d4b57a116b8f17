"""The trusted proof checker.

A Logic is a signature plus named inference rules; a Theorem is a rule sealed
against a logic's identity digest and can only be produced by the three
constructors: truism (cite an inference rule), by_subst (apply a substitution
to a proved rule) and infer (discharge one premise of a proved rule with
another proved rule).  check_proof replays a proof tree through exactly those
constructors and verifies any declared targets along the way.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .canonical import (
    alpha_eq_rule,
    alpha_eq_template,
    canonical_rule,
    canonical_template,
    canonicalize_premise,
    from_canonical_template,
    rule_encoding,
    to_canonical,
    CAbs,
    CBound,
    CFree,
)
from .errors import (
    AbslogError,
    BadIndex,
    DuplicateRuleName,
    KernelError,
    LogicMismatch,
    MalformedRule,
    NameClash,
    NotAnExtension,
    PremiseMismatch,
    SignatureMismatch,
    TargetMismatch,
    UnknownRule,
)
from .substitution import Substitution, apply_to_rule, validate_substitution
from .terms import (
    Abs,
    Rule,
    Signature,
    Template,
    Term,
    Var,
    VarKey,
    free_variables,
    validate_term,
)


@dataclass(frozen=True)
class Logic:
    """Signature plus ordered named inference rules, with a stable identity
    digest over the canonical encodings."""

    signature: Signature
    rules: tuple[tuple[str, Rule], ...]
    identity: str

    def __post_init__(self):
        object.__setattr__(self, "_by_name", dict(self.rules))

    def rule(self, name: str) -> Rule:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownRule(f"no inference rule named {name!r}") from None

    def rule_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.rules)


def _digest(sig: Signature, rules) -> str:
    h = hashlib.sha256()
    h.update(b"sig:")
    for name, shape in sig.abstractions:
        deps = ";".join(",".join(map(str, sorted(p))) for p in shape.deps)
        h.update(f"{name}[{deps}]".encode())
    h.update(b"rules:")
    for name, rule in rules:
        h.update(name.encode())
        h.update(rule_encoding(sig, rule))
    return h.hexdigest()


def _validate_rule(sig: Signature, name: str, rule: Rule) -> None:
    if not isinstance(rule, Rule):
        raise MalformedRule(f"rule {name!r} is not a Rule")
    try:
        validate_term(sig, rule.conclusion)
        for tpl in rule.premises:
            canonicalize_premise(sig, tpl)
    except (KernelError,):
        raise
    except AbslogError as exc:
        if exc.code == "unknown-abstraction":
            raise
        raise MalformedRule(f"rule {name!r}: {exc}") from exc


def mk_logic(sig: Signature, rules) -> Logic:
    """Build a logic from (name, Rule) pairs; rules are stored as authored."""
    named = tuple(rules)
    names = [name for name, _ in named]
    if len(set(names)) != len(names):
        raise DuplicateRuleName(f"duplicate rule names in {names}")
    for name, rule in named:
        _validate_rule(sig, name, rule)
    return Logic(sig, named, _digest(sig, named))


def axiomatic_extension(base: Logic, sig_additions: Signature, axioms) -> Logic:
    """Extend a logic by new abstractions and premise-free rules only."""
    for name, _ in sig_additions.abstractions:
        if name in base.signature:
            raise NameClash(f"abstraction {name!r} already in base signature")
    sig = base.signature.extend(sig_additions)
    new_rules = list(base.rules)
    taken = set(base.rule_names())
    for name, term in axioms:
        if name in taken:
            raise NameClash(f"rule name {name!r} already in base logic")
        taken.add(name)
        if not isinstance(term, (Var, Abs)):
            raise MalformedRule(
                f"axiom {name!r} must be a term (extensions add axioms only)"
            )
        rule = Rule((), term)
        _validate_rule(sig, name, rule)
        new_rules.append((name, rule))
    return Logic(sig, tuple(new_rules), _digest(sig, tuple(new_rules)))


_SEAL = object()


@dataclass(frozen=True)
class Theorem:
    """A kernel-certified rule. Only truism/by_subst/infer construct these."""

    rule: Rule
    logic: Logic
    _sealed: object = None

    def __post_init__(self):
        if self._sealed is not _SEAL:
            raise KernelError("theorems can only be built by kernel operations")

    def __repr__(self):
        return f"Theorem({self.rule!r})"


def _theorem(rule: Rule, logic: Logic) -> Theorem:
    return Theorem(rule, logic, _SEAL)


def truism(logic: Logic, rule_name: str) -> Theorem:
    return _theorem(canonical_rule(logic.signature, logic.rule(rule_name)), logic)


def by_subst(thm: Theorem, subst: Substitution) -> Theorem:
    sig = thm.logic.signature
    try:
        validate_substitution(sig, subst)
    except AbslogError as exc:
        raise SignatureMismatch(f"substitution not well-formed here: {exc}") from exc
    return _theorem(apply_to_rule(sig, subst, thm.rule), thm.logic)


def _match_frame(ch, cm, frame: frozenset, mapping: dict) -> bool:
    """Walk the premise body (frame variables free) against a candidate
    conclusion, accumulating an injective renaming of the frame."""
    if isinstance(ch, CFree):
        if not isinstance(cm, CFree):
            return False
        if ch.key.arity == 0 and ch.key.name in frame:
            if cm.key.arity != 0:
                return False
            prev = mapping.get(ch.key.name)
            if prev is not None:
                return prev == cm.key.name
            if cm.key.name in mapping.values():
                return False
            mapping[ch.key.name] = cm.key.name
            return True
        if ch.key != cm.key or len(ch.args) != len(cm.args):
            return False
        return all(
            _match_frame(a, b, frame, mapping) for a, b in zip(ch.args, cm.args)
        )
    if isinstance(ch, CBound):
        return isinstance(cm, CBound) and ch.index == cm.index
    if isinstance(ch, CAbs):
        if not isinstance(cm, CAbs) or ch.name != cm.name:
            return False
        if len(ch.args) != len(cm.args):
            return False
        return all(
            a.slots == b.slots and _match_frame(a.body, b.body, frame, mapping)
            for a, b in zip(ch.args, cm.args)
        )
    return False


def infer(major: Theorem, premise_index: int, minor: Theorem) -> Theorem:
    """Discharge the selected premise [x1..xk. h] of major with minor, whose
    conclusion must be h up to a capture-free renaming of the binder frame;
    minor's premises are carried over with the frame variables they mention
    prefixed as new binders."""
    if major.logic.identity != minor.logic.identity:
        raise LogicMismatch("theorems sealed to different logics")
    sig = major.logic.signature
    premises = major.rule.premises
    if not 0 <= premise_index < len(premises):
        raise BadIndex(
            f"premise index {premise_index} out of range 0..{len(premises) - 1}"
        )
    selected = premises[premise_index]
    frame = selected.binders
    mapping: dict[str, str] = {}
    ok = _match_frame(
        to_canonical(sig, selected.body),
        to_canonical(sig, minor.rule.conclusion),
        frozenset(frame),
        mapping,
    )
    if not ok:
        raise PremiseMismatch(
            "minor conclusion does not match the selected premise body"
        )
    renamed = tuple(mapping[b] for b in frame)
    if not alpha_eq_template(
        sig, selected, Template(renamed, minor.rule.conclusion)
    ):
        raise PremiseMismatch(
            "frame renaming would capture a free variable of the premise"
        )
    new_premises = list(premises[:premise_index] + premises[premise_index + 1:])
    avoid = frozenset(renamed)
    for tpl in minor.rule.premises:
        clean = from_canonical_template(canonical_template(sig, tpl), avoid=avoid)
        body_free = free_variables(sig, clean.body)
        prefix = tuple(z for z in renamed if VarKey(z, 0) in body_free)
        new_premises.append(Template(prefix + clean.binders, clean.body))
    rule = canonical_rule(sig, Rule(tuple(new_premises), major.rule.conclusion))
    return _theorem(rule, major.logic)


# -- proof trees --------------------------------------------------------------

@dataclass(frozen=True)
class Truism:
    rule_name: str
    target: Rule | None = None


@dataclass(frozen=True)
class SubstStep:
    sub: Proof
    subst: Substitution
    target: Rule | None = None


@dataclass(frozen=True)
class InferStep:
    major: Proof
    premise_index: int
    minor: Proof
    target: Rule | None = None


Proof = Truism | SubstStep | InferStep


def check_proof(logic: Logic, proof: Proof, _memo: dict | None = None) -> Theorem:
    """Replay the tree bottom-up through truism/by_subst/infer; any declared
    target must be alpha-equivalent to the computed rule."""
    memo: dict[Proof, Theorem] = {} if _memo is None else _memo

    def go(node):
        thm = memo.get(node)
        if thm is not None:
            return thm
        if isinstance(node, Truism):
            thm = truism(logic, node.rule_name)
        elif isinstance(node, SubstStep):
            thm = by_subst(go(node.sub), node.subst)
        elif isinstance(node, InferStep):
            thm = infer(go(node.major), node.premise_index, go(node.minor))
        else:
            raise KernelError(f"not a proof node: {node!r}")
        if node.target is not None and not alpha_eq_rule(
            logic.signature, node.target, thm.rule
        ):
            from .printer import print_rule

            raise TargetMismatch(
                f"declared: {print_rule(node.target)} ; "
                f"computed: {print_rule(thm.rule)}"
            )
        memo[node] = thm
        return thm

    return go(proof)


# -- explosion ----------------------------------------------------------------

def _probe_universal1(sig, rule: Rule, forall_name: str) -> str | None:
    """Does the canonical rule read (forall x. A[x]) => A[y] for some binary
    abstraction? Returns the abstraction name if so."""
    if rule.premises:
        return None
    c = rule.conclusion
    if not (isinstance(c, Abs) and not c.binders and len(c.args) == 2):
        return None
    if any(p for p in sig.shape(c.name).deps):
        return None
    lhs, rhs = c.args
    if not (
        isinstance(lhs, Abs)
        and lhs.name == forall_name
        and len(lhs.binders) == 1
        and len(lhs.args) == 1
    ):
        return None
    inner = lhs.args[0]
    if not (
        isinstance(inner, Var)
        and len(inner.args) == 1
        and inner.args[0] == Var(lhs.binders[0])
    ):
        return None
    if not (
        isinstance(rhs, Var)
        and rhs.name == inner.name
        and len(rhs.args) == 1
        and isinstance(rhs.args[0], Var)
        and not rhs.args[0].args
    ):
        return None
    return c.name


def _probe_modus_ponens(rule: Rule, imp_name: str) -> bool:
    """Does the canonical rule read ({A => B, A}, B)?"""
    if len(rule.premises) != 2 or any(t.binders for t in rule.premises):
        return False
    bodies = [t.body for t in rule.premises]
    concl = rule.conclusion
    if not (isinstance(concl, Var) and not concl.args):
        return False
    bare = [b for b in bodies if isinstance(b, Var) and not b.args]
    comp = [b for b in bodies if isinstance(b, Abs)]
    if len(bare) != 1 or len(comp) != 1:
        return False
    (ant,) = bare
    (impl,) = comp
    return (
        impl.name == imp_name
        and not impl.binders
        and impl.args == (ant, concl)
        and ant.name != concl.name
    )


def explosion(logic: Logic, absurd: Theorem, term: Term) -> Theorem:
    """From a theorem ({}, forall x. x) in an extension of the deduction
    logic, derive ({}, term) for an arbitrary term."""
    if absurd.logic.identity != logic.identity:
        raise NotAnExtension("theorem is not sealed to this logic")
    if absurd.rule.premises:
        raise NotAnExtension("theorem must be premise-free")
    c = absurd.rule.conclusion
    if not (
        isinstance(c, Abs)
        and len(c.binders) == 1
        and len(c.args) == 1
        and c.args[0] == Var(c.binders[0])
    ):
        raise NotAnExtension("theorem must conclude (forall x. x)")
    forall_name = c.name
    validate_term(logic.signature, term)

    imp_name = None
    u1_name = mp_name = None
    for name, rule in logic.rules:
        cr = canonical_rule(logic.signature, rule)
        probe = _probe_universal1(logic.signature, cr, forall_name)
        if probe is not None:
            candidate = probe
            mp = next(
                (
                    n
                    for n, r in logic.rules
                    if _probe_modus_ponens(canonical_rule(logic.signature, r), candidate)
                ),
                None,
            )
            if mp is not None:
                imp_name, u1_name, mp_name = candidate, name, mp
                break
    if imp_name is None:
        raise NotAnExtension(
            "logic lacks Universal1/ModusPonens-shaped rules over a shared implication"
        )

    u1 = truism(logic, u1_name)
    # conclusion reads (forall b. P[b]) => P[y]; pull out P and y
    pred = u1.rule.conclusion.args[0].args[0]
    trailing = u1.rule.conclusion.args[1].args[0]
    step = by_subst(
        u1, Substitution.make({VarKey(pred.name, 1): Template(("w",), Var("w"))})
    )  # ({}, (forall w. w) => y)
    absurd_term = Abs(forall_name, ("w",), (Var("w"),))
    mp = truism(logic, mp_name)
    ant = next(t.body for t in mp.rule.premises if isinstance(t.body, Var))
    concl = mp.rule.conclusion
    mp_inst = by_subst(
        mp,
        Substitution.make(
            {
                VarKey(ant.name, 0): absurd_term,
                VarKey(concl.name, 0): Var(trailing.name),
            }
        ),
    )  # ({(forall w. w) => y, (forall w. w)}, y)
    imp_premise = next(
        i for i, t in enumerate(mp_inst.rule.premises) if isinstance(t.body, Abs)
        and t.body.name == imp_name
    )
    partial = infer(mp_inst, imp_premise, step)
    derived_var = infer(partial, 0, absurd)  # ({}, y)
    y = derived_var.rule.conclusion
    return by_subst(
        derived_var, Substitution.make({VarKey(y.name, 0): term})
    )
