"""Shared test machinery: an independent alpha-equivalence oracle, random
generators for terms/templates/substitutions/models, and randomized renaming.

The oracle compares terms by binding depth with two environments and never
touches the canonical-form code it is used to check.
"""

from __future__ import annotations

import itertools

from abslog.canonical import CBound, CFree, CTerm, collect_free_names, to_canonical
from abslog.semantics import (
    ExplicitOp,
    FiniteAlgebra,
    Model,
    OperationTable,
    Valuation,
    enumerate_operations,
)
from abslog.substitution import Substitution
from abslog.terms import Abs, Signature, Template, Term, Var, VarKey

TEST_SIG = Signature.make(
    [
        ("c0", []),
        ("g1", [{}]),
        ("f2", [{}, {}]),
        ("q1", [{1}]),
        ("w2", [{1}, {}]),
        ("z1", [{1, 2}]),
    ]
)

FREE_NAMES = ("u", "v", "w")
BINDER_NAMES = ("p", "q", "r", "s")


def _depth_of(name, env):
    for depth, bound in enumerate(reversed(env)):
        if bound == name:
            return depth
    return None


def alpha_eq_bruteforce(sig: Signature, s: Term, t: Term, env1=(), env2=()) -> bool:
    """Structural comparison carrying binder environments; independent of the
    canonical-form implementation."""
    if isinstance(s, Var) and isinstance(t, Var):
        if len(s.args) != len(t.args):
            return False
        if not s.args:
            d1 = _depth_of(s.name, env1)
            d2 = _depth_of(t.name, env2)
            if (d1 is None) != (d2 is None):
                return False
            if d1 is not None:
                return d1 == d2
            return s.name == t.name
        if s.name != t.name:
            return False
        return all(
            alpha_eq_bruteforce(sig, a, b, env1, env2)
            for a, b in zip(s.args, t.args)
        )
    if isinstance(s, Abs) and isinstance(t, Abs):
        if s.name != t.name:
            return False
        shape = sig.shape(s.name)
        for deps, a, b in zip(shape.deps, s.args, t.args):
            slots = sorted(deps)
            e1 = env1 + tuple(s.binders[q - 1] for q in slots)
            e2 = env2 + tuple(t.binders[q - 1] for q in slots)
            if not alpha_eq_bruteforce(sig, a, b, e1, e2):
                return False
        return True
    return False


# -- random generation ---------------------------------------------------------

def random_term(rng, sig: Signature, depth: int, bound=()) -> Term:
    values = [name for name, shape in sig.abstractions if shape.arity == 0]
    kinds = []
    if bound:
        kinds += ["bound"] * 3
    kinds += ["free0"] * 2
    if values:
        kinds += ["value"]
    if depth > 0:
        kinds += ["varapp"] * 2 + ["abs"] * 4
    kind = rng.choice(kinds)
    if kind == "bound":
        return Var(rng.choice(bound))
    if kind == "free0":
        return Var(rng.choice(FREE_NAMES))
    if kind == "value":
        return Abs(rng.choice(values), (), ())
    if kind == "varapp":
        n = rng.choice([1, 2])
        args = tuple(random_term(rng, sig, depth - 1, bound) for _ in range(n))
        return Var(rng.choice(FREE_NAMES), args)
    name, shape = rng.choice(
        [(n, s) for n, s in sig.abstractions if s.arity > 0 or s.valence > 0]
        or list(sig.abstractions)
    )
    binders = tuple(rng.sample(BINDER_NAMES, shape.valence))
    args = []
    for deps in shape.deps:
        names = tuple(binders[q - 1] for q in sorted(deps))
        args.append(random_term(rng, sig, depth - 1, bound + names))
    return Abs(name, binders, tuple(args))


def random_template(rng, sig: Signature, arity: int, depth: int) -> Template:
    binders = tuple(f"b{i}" for i in range(arity))
    return Template(binders, random_term(rng, sig, depth, bound=binders))


def random_substitution(rng, sig: Signature, depth: int = 2) -> Substitution:
    entries = {}
    for name in FREE_NAMES:
        for arity in (0, 1, 2):
            if rng.random() < 0.4:
                entries[VarKey(name, arity)] = random_template(rng, sig, arity, depth)
    return Substitution.make(entries)


def random_interp(rng, shape, size: int) -> ExplicitOp:
    spaces = [enumerate_operations(size, len(p)) for p in shape.deps]
    keys = list(itertools.product(*spaces))
    return ExplicitOp.make(
        {k: rng.randrange(size) for k in keys}, default=rng.randrange(size)
    )


def random_model(rng, sig: Signature, size: int) -> Model:
    interp = tuple(
        (name, random_interp(rng, shape, size)) for name, shape in sig.abstractions
    )
    carrier = tuple(f"e{i}" for i in range(size))
    return Model(FiniteAlgebra(carrier, sig, interp), truth=rng.randrange(size))


def random_valuation(rng, size: int, max_arity: int = 2) -> Valuation:
    overrides = {}
    for name in FREE_NAMES:
        for arity in range(max_arity + 1):
            values = tuple(rng.randrange(size) for _ in range(size ** arity))
            overrides[VarKey(name, arity)] = OperationTable(size, arity, values)
    return Valuation.make(size, overrides)


# -- randomized alpha-renaming ---------------------------------------------------

def _random_fresh(rng, count, avoid):
    names = []
    taken = set(avoid)
    while len(names) < count:
        cand = rng.choice("abcdefghij") + str(rng.randrange(40))
        if cand not in taken:
            names.append(cand)
            taken.add(cand)
    return names


def _random_named(cterm: CTerm, stack, rng, reserved) -> Term:
    if isinstance(cterm, CBound):
        return Var(stack[-1 - cterm.index])
    if isinstance(cterm, CFree):
        return Var(
            cterm.key.name,
            tuple(_random_named(a, stack, rng, reserved) for a in cterm.args),
        )
    m = max((q for arg in cterm.args for q in arg.slots), default=0)
    avoid = set(stack) | reserved
    collect_free_names(cterm, avoid)
    binders = _random_fresh(rng, m, avoid)
    args = []
    for arg in cterm.args:
        names = [binders[q - 1] for q in arg.slots]
        args.append(_random_named(arg.body, stack + names, rng, reserved))
    return Abs(cterm.name, tuple(binders), tuple(args))


def alpha_variant(rng, sig: Signature, term: Term) -> Term:
    """An alpha-equivalent copy with freshly randomized binder names."""
    reserved = set(sig.names())
    return _random_named(to_canonical(sig, term), [], rng, reserved)
