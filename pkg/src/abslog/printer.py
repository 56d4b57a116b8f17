"""Canonical text for terms, templates, rules, substitutions and the three
file formats.  The parser inverts this exactly; shipped files are rendered by
these functions, so parse -> render round-trips byte-identically.

Operator sugar is fixed: `=>` (right-associative) and `==` (non-associative,
binds tighter) for the abstractions named imp/eq; every other abstraction
prints in the general form `(name binders. args)`, or bare when it is a value.
"""

from __future__ import annotations

import itertools

from .terms import Rule, Shape, Template, Term, Var

_PREC_IMP = 1
_PREC_EQ = 2
_PREC_ATOM = 3


def print_term(term: Term, prec: int = 0) -> str:
    if isinstance(term, Var):
        if not term.args:
            return term.name
        inner = ", ".join(print_term(a) for a in term.args)
        return f"{term.name}[{inner}]"
    if term.name == "imp" and not term.binders and len(term.args) == 2:
        text = (
            f"{print_term(term.args[0], _PREC_EQ)} => "
            f"{print_term(term.args[1], _PREC_IMP)}"
        )
        return f"({text})" if prec > _PREC_IMP else text
    if term.name == "eq" and not term.binders and len(term.args) == 2:
        text = (
            f"{print_term(term.args[0], _PREC_ATOM)} == "
            f"{print_term(term.args[1], _PREC_ATOM)}"
        )
        return f"({text})" if prec > _PREC_EQ else text
    if not term.binders and not term.args:
        return term.name
    head = term.name
    if term.binders:
        head += " " + " ".join(term.binders)
    if len(term.args) == 1:
        return f"({head}. {print_term(term.args[0])})"
    args = " ".join(print_term(a, _PREC_ATOM) for a in term.args)
    return f"({head}. {args})"


def print_template(tpl: Template) -> str:
    if not tpl.binders:
        return print_term(tpl.body)
    return f"[{' '.join(tpl.binders)}. {print_term(tpl.body)}]"


def print_rule(rule: Rule) -> str:
    """File form: `premise <tpl> ; premise <tpl> |- <conclusion>`."""
    parts = [f"premise {print_template(t)}" for t in rule.premises]
    prefix = " ; ".join(parts) + " " if parts else ""
    return f"{prefix}|- {print_term(rule.conclusion)}"


def display_rule(rule: Rule) -> str:
    """Display form with numbered premisses (what `infer` indices refer to)."""
    parts = [f"[{i}] {print_template(t)}" for i, t in enumerate(rule.premises, 1)]
    prefix = " ; ".join(parts) + " " if parts else ""
    return f"{prefix}|- {print_term(rule.conclusion)}"


def print_substitution(subst) -> str:
    if not subst.entries:
        return "{ }"
    parts = []
    for key, tpl in subst.entries:
        if key.arity == 0:
            parts.append(f"{key.name} := {print_term(tpl.body)}")
        else:
            parts.append(f"{key.name}/{key.arity} := {print_template(tpl)}")
    return "{ " + " ; ".join(parts) + " }"


def print_shape(shape: Shape) -> str:
    sets = ", ".join("{" + ", ".join(map(str, sorted(p))) + "}" for p in shape.deps)
    return f"[{sets}]"


# -- theory files ---------------------------------------------------------------

def render_theory(logic) -> str:
    lines = []
    for name, shape in logic.signature.abstractions:
        lines.append(f"abstraction {name} shape {print_shape(shape)}")
    for name, rule in logic.rules:
        lines.append(f"rule {name}: {print_rule(rule)}")
    return "\n".join(lines) + "\n"


# -- model files ----------------------------------------------------------------

def _table_args_literal(carrier, table) -> str:
    if table.arity == 0:
        return carrier[table.values[0]]
    return "(" + ", ".join(carrier[v] for v in table.values) + ")"


def render_model(model) -> str:
    alg = model.algebra
    lines = [
        "carrier " + " ".join(alg.carrier),
        "truth " + model.truth_name,
    ]
    for name, shape in alg.signature.abstractions:
        op = alg.operator(name)
        head = f"op {name} shape {print_shape(shape)}"
        kind = type(op).__name__
        if kind == "ConstOp":
            lines.append(f"{head} builtin const {alg.carrier[op.element]}")
        elif kind == "ForallOp":
            lines.append(f"{head} builtin forall-like")
        elif kind == "PointwiseOp":
            rows = []
            size = alg.size
            arity = op.table.arity
            for i, tup in enumerate(itertools.product(range(size), repeat=arity)):
                args = " ".join(alg.carrier[u] for u in tup)
                result = alg.carrier[op.table.values[i]]
                rows.append(f"{args} -> {result}".strip())
            lines.append(f"{head} table: " + " ; ".join(rows))
        else:  # ExplicitOp
            rows = []
            for tables, result in op.mapping:
                args = " ".join(_table_args_literal(alg.carrier, t) for t in tables)
                rows.append(f"{args} -> {alg.carrier[result]}".strip())
            rows.append(f"default {alg.carrier[op.default]}")
            lines.append(f"{head} table: " + " ; ".join(rows))
    return "\n".join(lines) + "\n"


