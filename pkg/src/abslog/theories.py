"""The deduction logic with equality, its Peano extension, and a library of
derived theorems exercising the kernel.

Abstraction names are fixed project-wide: T, imp, eq, forall for the base
logic; N, 0, S, not, forall_N for the arithmetic extension.  Binary operations
are abstractions of shape [{}, {}] (valence 0), quantifiers have shape [{1}].
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import KernelError, PremiseMismatch
from .kernel import (
    InferStep,
    Logic,
    Proof,
    SubstStep,
    Theorem,
    Truism,
    axiomatic_extension,
    by_subst,
    check_proof,
    explosion,
    infer,
    mk_logic,
    truism,
)
from .semantics import (
    ForallOp,
    FiniteAlgebra,
    Model,
    OperationTable,
    PointwiseOp,
    ConstOp,
    search_models,
)
from .substitution import Substitution
from .terms import Abs, Rule, Signature, Template, Term, Var


def _imp(a: Term, b: Term) -> Term:
    return Abs("imp", (), (a, b))


def _eq(a: Term, b: Term) -> Term:
    return Abs("eq", (), (a, b))


def _forall(x: str, body: Term) -> Term:
    return Abs("forall", (x,), (body,))


_T = Abs("T", (), ())


def le_signature() -> Signature:
    return Signature.make(
        [
            ("T", []),
            ("imp", [{}, {}]),
            ("eq", [{}, {}]),
            ("forall", [{1}]),
        ]
    )


def logic_E() -> Logic:
    """Deduction logic with equality: 10 inference rules, 8 of them axioms."""
    A, B, C, x, y = Var("A"), Var("B"), Var("C"), Var("x"), Var("y")
    rules = [
        ("ModusPonens", Rule((Template((), _imp(A, B)), Template((), A)), B)),
        (
            "UniversalIntroduction",
            Rule(
                (Template(("x",), Var("P", (Var("x"),))),),
                _forall("x", Var("P", (Var("x"),))),
            ),
        ),
        ("Truth1", Rule((), _T)),
        ("Truth2", Rule((), _imp(A, _eq(A, _T)))),
        ("Implication1", Rule((), _imp(A, _imp(B, A)))),
        (
            "Implication2",
            Rule((), _imp(_imp(A, _imp(B, C)), _imp(_imp(A, B), _imp(A, C)))),
        ),
        (
            "Universal1",
            Rule(
                (),
                _imp(_forall("x", Var("A", (Var("x"),))), Var("A", (Var("x"),))),
            ),
        ),
        (
            "Universal2",
            Rule(
                (),
                _imp(
                    _forall("x", _imp(A, Var("B", (Var("x"),)))),
                    _imp(A, _forall("x", Var("B", (Var("x"),)))),
                ),
            ),
        ),
        ("Equality1", Rule((), _eq(x, x))),
        (
            "Equality2",
            Rule(
                (),
                _imp(
                    _eq(x, y),
                    _imp(Var("A", (x,)), Var("A", (y,))),
                ),
            ),
        ),
    ]
    return mk_logic(le_signature(), rules)


def peano_signature_additions() -> Signature:
    return Signature.make(
        [
            ("N", [{}]),
            ("0", []),
            ("S", [{}]),
            ("not", [{}]),
            ("forall_N", [{1}]),
        ]
    )


def logic_peano() -> Logic:
    """Axiomatic extension of the deduction logic with the nine arithmetic
    axioms; the induction predicate K is a free arity-1 variable.  The defined
    operators get equational axioms: not x == (x => forall y. y) and
    (forall_N x. A[x]) == (forall x. N(x) => A[x])."""

    def n(t: Term) -> Term:
        return Abs("N", (), (t,))

    def s(t: Term) -> Term:
        return Abs("S", (), (t,))

    def neg(t: Term) -> Term:
        return Abs("not", (), (t,))

    def forall_n(x: str, body: Term) -> Term:
        return Abs("forall_N", (x,), (body,))

    zero = Abs("0", (), ())
    a, b, c, x = Var("a"), Var("b"), Var("c"), Var("x")
    k0 = Var("K", (zero,))

    axioms = [
        ("NotDef", _eq(neg(x), _imp(x, _forall("y", Var("y"))))),
        (
            "ForallNDef",
            _eq(
                forall_n("x", Var("A", (x,))),
                _forall("x", _imp(n(x), Var("A", (x,)))),
            ),
        ),
        ("Peano1", n(zero)),
        ("Peano2", forall_n("a", _eq(a, a))),
        (
            "Peano3",
            forall_n("a", forall_n("b", _imp(_eq(a, b), _eq(b, a)))),
        ),
        (
            "Peano4",
            forall_n(
                "a",
                forall_n(
                    "b",
                    forall_n("c", _imp(_eq(a, b), _imp(_eq(b, c), _eq(a, c)))),
                ),
            ),
        ),
        (
            "Peano5",
            _forall("a", forall_n("b", _imp(_eq(a, b), n(a)))),
        ),
        ("Peano6", forall_n("a", n(s(a)))),
        (
            "Peano7",
            forall_n("a", forall_n("b", _imp(_eq(s(a), s(b)), _eq(a, b)))),
        ),
        ("Peano8", forall_n("a", neg(_eq(s(a), zero)))),
        (
            "Peano9",
            _imp(
                k0,
                _imp(
                    forall_n("x", _imp(Var("K", (x,)), Var("K", (s(x),)))),
                    forall_n("x", Var("K", (x,))),
                ),
            ),
        ),
    ]
    return axiomatic_extension(logic_E(), peano_signature_additions(), axioms)


def standard_two_element_model() -> Model:
    """Two-element model of the deduction logic: carrier {T, F}, truth T,
    material implication, equality of elements, forall as constancy check."""
    sig = le_signature()
    t, f = 0, 1
    imp_table = OperationTable(2, 2, (t, f, t, t))  # rows: TT TF FT FF
    eq_table = OperationTable(2, 2, (t, f, f, t))
    interp = (
        ("T", ConstOp(t)),
        ("imp", PointwiseOp(imp_table)),
        ("eq", PointwiseOp(eq_table)),
        ("forall", ForallOp(t, f)),
    )
    return Model(FiniteAlgebra(("T", "F"), sig, interp), truth=t)


# -- derived theorems -------------------------------------------------------------

@dataclass(frozen=True)
class TheoryBundle:
    logic: Logic
    proofs: tuple[tuple[str, Proof], ...]

    def replay(self) -> dict[str, Theorem]:
        memo: dict[Proof, Theorem] = {}
        return {
            name: check_proof(self.logic, proof, _memo=memo)
            for name, proof in self.proofs
        }


@dataclass(frozen=True)
class _Step:
    proof: Proof
    thm: Theorem


class _Derive:
    """Proof-tree builder that replays every step through the kernel as it
    goes, so premise indices are resolved against real canonical rules."""

    def __init__(self, logic: Logic):
        self.logic = logic

    def rule(self, name: str) -> _Step:
        return _Step(Truism(name), truism(self.logic, name))

    def subst(self, step: _Step, mapping) -> _Step:
        sigma = Substitution.make(mapping)
        return _Step(SubstStep(step.proof, sigma), by_subst(step.thm, sigma))

    def infer(self, major: _Step, minor: _Step) -> _Step:
        for i in range(len(major.thm.rule.premises)):
            try:
                thm = infer(major.thm, i, minor.thm)
            except PremiseMismatch:
                continue
            return _Step(InferStep(major.proof, i, minor.proof), thm)
        raise KernelError("no premise of the major theorem matches the minor")

    def mp(self, imp_step: _Step, ant_step: _Step) -> _Step:
        """From |- X => Y and |- X conclude |- Y."""
        concl = imp_step.thm.rule.conclusion
        assert isinstance(concl, Abs) and concl.name == "imp"
        x, y = concl.args
        inst = self.subst(self.rule("ModusPonens"), {"A": x, "B": y})
        return self.infer(self.infer(inst, imp_step), ant_step)

    def syll(self, ab: _Step, bc: _Step) -> _Step:
        """From |- A => B and |- B => C conclude |- A => C."""
        a, b = ab.thm.rule.conclusion.args
        c = bc.thm.rule.conclusion.args[1]
        lift = self.mp(
            self.subst(self.rule("Implication1"), {"A": _imp(b, c), "B": a}), bc
        )  # |- A => (B => C)
        distributed = self.mp(
            self.subst(self.rule("Implication2"), {"A": a, "B": b, "C": c}), lift
        )  # |- (A => B) => (A => C)
        return self.mp(distributed, ab)

    def absorb(self, pqr: _Step, q: _Step) -> _Step:
        """From |- P => (Q => R) and |- Q conclude |- P => R."""
        p, qr = pqr.thm.rule.conclusion.args
        q_term, r = qr.args
        distributed = self.mp(
            self.subst(self.rule("Implication2"), {"A": p, "B": q_term, "C": r}),
            pqr,
        )  # |- (P => Q) => (P => R)
        pq = self.mp(
            self.subst(self.rule("Implication1"), {"A": q_term, "B": p}), q
        )  # |- P => Q
        return self.mp(distributed, pq)


def derived_proofs_E() -> TheoryBundle:
    """Replayable derivations: implication reflexivity, truth equality,
    quantified truth, equality symmetry/transitivity, and congruence of
    variable applications in one and two arguments."""
    logic = logic_E()
    d = _Derive(logic)
    A, x, y, z = Var("A"), Var("x"), Var("y"), Var("z")
    ax = Var("A", (x,))
    aa = _imp(A, A)

    # imp_refl: classic Hilbert derivation from Implication1/Implication2.
    i2 = d.subst(d.rule("Implication2"), {"B": aa, "C": A})
    i1a = d.subst(d.rule("Implication1"), {"B": aa})
    t1 = d.mp(i2, i1a)
    i1b = d.subst(d.rule("Implication1"), {"B": A})
    imp_refl = d.mp(t1, i1b)

    truth_eq = d.subst(d.rule("Equality1"), {"x": _T})

    ui = d.subst(
        d.rule("UniversalIntroduction"), {("P", 1): Template(("z",), _T)}
    )
    forall_true = d.infer(ui, d.rule("Truth1"))

    # eq_sym: Equality2 with A := [z. z == x], then discharge x == x.
    e2_sym = d.subst(
        d.rule("Equality2"), {("A", 1): Template(("z",), _eq(z, x))}
    )
    eq_sym = d.absorb(e2_sym, d.rule("Equality1"))

    # eq_trans: swap the pair in Equality2, pointing A at [w. w == z].
    e2_swap = d.subst(
        d.rule("Equality2"),
        {"x": y, "y": x, ("A", 1): Template(("w",), _eq(Var("w"), z))},
    )  # |- (y == x) => ((y == z) => (x == z))
    eq_trans = d.syll(eq_sym, e2_swap)

    # congruence1: Equality2 with A := [z. A[x] == A[z]] plus A[x] == A[x].
    e2_cong = d.subst(
        d.rule("Equality2"), {("A", 1): Template(("z",), _eq(ax, Var("A", (z,))))}
    )
    refl_ax = d.subst(d.rule("Equality1"), {"x": ax})
    congruence1 = d.absorb(e2_cong, refl_ax)

    # congruence2: chain two one-argument congruences through eq_trans.
    x1, y1, x2, y2 = Var("x1"), Var("y1"), Var("x2"), Var("y2")
    a_xx = Var("A", (x1, x2))
    a_yx = Var("A", (y1, x2))
    a_yy = Var("A", (y1, y2))
    g1 = d.absorb(
        d.subst(
            d.rule("Equality2"),
            {
                "x": x1,
                "y": y1,
                ("A", 1): Template(("w",), _eq(a_xx, Var("A", (Var("w"), x2)))),
            },
        ),
        d.subst(d.rule("Equality1"), {"x": a_xx}),
    )  # |- (x1 == y1) => (A[x1, x2] == A[y1, x2])
    g2 = d.absorb(
        d.subst(
            d.rule("Equality2"),
            {
                "x": x2,
                "y": y2,
                ("A", 1): Template(("w",), _eq(a_yx, Var("A", (y1, Var("w"))))),
            },
        ),
        d.subst(d.rule("Equality1"), {"x": a_yx}),
    )  # |- (x2 == y2) => (A[y1, x2] == A[y1, y2])
    tr = d.subst(eq_trans, {"x": a_xx, "y": a_yx, "z": a_yy})
    sa = d.syll(g1, tr)
    p2 = _eq(x2, y2)
    yp = _eq(a_yx, a_yy)
    zc = _eq(a_xx, a_yy)
    swap_in = d.syll(
        d.subst(d.rule("Implication1"), {"A": _imp(yp, zc), "B": p2}),
        d.subst(d.rule("Implication2"), {"A": p2, "B": yp, "C": zc}),
    )  # |- (Y => Z) => ((P2 => Y) => (P2 => Z))
    congruence2 = d.absorb(d.syll(sa, swap_in), g2)

    steps = [
        ("imp_refl", imp_refl),
        ("truth_eq", truth_eq),
        ("forall_true", forall_true),
        ("eq_sym", eq_sym),
        ("eq_trans", eq_trans),
        ("congruence1", congruence1),
        ("congruence2", congruence2),
    ]
    return TheoryBundle(logic, tuple((n, s.proof) for n, s in steps))


EXPECTED_DERIVED: dict[str, Rule] = {
    "imp_refl": Rule((), _imp(Var("A"), Var("A"))),
    "truth_eq": Rule((), _eq(_T, _T)),
    "forall_true": Rule((), _forall("x", _T)),
    "eq_sym": Rule((), _imp(_eq(Var("x"), Var("y")), _eq(Var("y"), Var("x")))),
    "eq_trans": Rule(
        (),
        _imp(
            _eq(Var("x"), Var("y")),
            _imp(_eq(Var("y"), Var("z")), _eq(Var("x"), Var("z"))),
        ),
    ),
    "congruence1": Rule(
        (),
        _imp(
            _eq(Var("x"), Var("y")),
            _eq(Var("A", (Var("x"),)), Var("A", (Var("y"),))),
        ),
    ),
    "congruence2": Rule(
        (),
        _imp(
            _eq(Var("x1"), Var("y1")),
            _imp(
                _eq(Var("x2"), Var("y2")),
                _eq(
                    Var("A", (Var("x1"), Var("x2"))),
                    Var("A", (Var("y1"), Var("y2"))),
                ),
            ),
        ),
    ),
}


def inconsistent_logic_demo() -> tuple[Logic, Theorem]:
    """Extend the deduction logic with the axiom (forall x. x), derive the
    free variable x by explosion, and verify that no two-element model exists
    (every model of an inconsistent logic is degenerate)."""
    logic = axiomatic_extension(
        logic_E(), Signature(()), [("Absurd", _forall("x", Var("x")))]
    )
    absurd = truism(logic, "Absurd")
    thm = explosion(logic, absurd, Var("x"))
    models = search_models(logic, sizes=(1, 2))
    non_degenerate = [m for m in models if m.algebra.size > 1]
    if non_degenerate:
        raise KernelError(
            "inconsistent logic admitted a non-degenerate model; kernel unsound"
        )
    return logic, thm


# -- script emission ----------------------------------------------------------------

def script_items_from_bundle(bundle: TheoryBundle):
    """Linearize the bundle's proof trees into script items; shared subtrees
    are emitted once and referenced by name."""
    from .parser import ScriptItem  # local to avoid a module cycle

    theorems = bundle.replay()
    names: dict[Proof, str] = {}
    items = []
    counter = 0

    def emit(proof: Proof, forced: str | None = None) -> str:
        nonlocal counter
        if proof in names:
            return names[proof]
        if isinstance(proof, Truism):
            kind, refs, subst = "rule", (proof.rule_name,), None
        elif isinstance(proof, SubstStep):
            src = emit(proof.sub)
            kind, refs, subst = "subst", (src,), proof.subst
        else:
            major = emit(proof.major)
            minor = emit(proof.minor)
            kind = "infer"
            refs = (major, proof.premise_index + 1, minor)
            subst = None
        if forced is None:
            counter += 1
            name = f"s{counter}"
        else:
            name = forced
        names[proof] = name
        expect = None
        node = proof
        if forced is not None:
            expect = theorems[forced].rule
            node = dataclasses.replace(proof, target=expect)
        items.append(ScriptItem(name, kind, refs, subst, node, expect, 0))
        return name

    for bname, proof in bundle.proofs:
        emit(proof, forced=bname)
    return items
