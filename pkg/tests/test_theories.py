import pytest

from abslog.canonical import alpha_eq_rule, alpha_eq_term
from abslog.parser import parse_term
from abslog.semantics import Valuation, check_model, check_rule_valid, eval_term
from abslog.terms import Abs, Rule, Template, Var
from abslog.theories import (
    EXPECTED_DERIVED,
    derived_proofs_E,
    inconsistent_logic_demo,
    script_items_from_bundle,
    standard_two_element_model,
)


def forall(x, body):
    return Abs("forall", (x,), (body,))


class TestLogicE:
    def test_four_abstractions(self, le):
        assert le.signature.names() == ("T", "imp", "eq", "forall")

    def test_rule_names(self, le):
        assert le.rule_names() == (
            "ModusPonens",
            "UniversalIntroduction",
            "Truth1",
            "Truth2",
            "Implication1",
            "Implication2",
            "Universal1",
            "Universal2",
            "Equality1",
            "Equality2",
        )

    def test_universal2_form(self, le):
        expected = parse_term(
            le.signature, "(forall x. A => B[x]) => (A => (forall x. B[x]))"
        )
        assert alpha_eq_term(le.signature, le.rule("Universal2").conclusion, expected)

    def test_universal_introduction_form(self, le):
        rule = le.rule("UniversalIntroduction")
        assert len(rule.premises) == 1
        assert rule.premises[0].arity == 1
        assert alpha_eq_rule(
            le.signature,
            rule,
            Rule(
                (Template(("y",), Var("P", (Var("y"),))),),
                forall("z", Var("P", (Var("z"),))),
            ),
        )


class TestLogicPeano:
    def test_extends_le(self, le, peano):
        assert peano.signature.covers(le.signature)
        assert set(le.rule_names()) < set(peano.rule_names())

    def test_axiom_2(self, peano):
        expected = parse_term(peano.signature, "(forall_N a. a == a)")
        assert alpha_eq_term(peano.signature, peano.rule("Peano2").conclusion, expected)

    def test_axiom_8(self, peano):
        expected = parse_term(peano.signature, "(forall_N a. (not. (S. a) == 0))")
        assert alpha_eq_term(peano.signature, peano.rule("Peano8").conclusion, expected)

    def test_axiom_9_with_free_induction_variable(self, peano):
        expected = parse_term(
            peano.signature,
            "K[0] => ((forall_N x. K[x] => K[(S. x)]) => (forall_N x. K[x]))",
        )
        rule = peano.rule("Peano9")
        assert rule.premises == ()
        assert alpha_eq_term(peano.signature, rule.conclusion, expected)

    def test_peano_axioms_are_premise_free(self, peano, le):
        base = set(le.rule_names())
        for name, rule in peano.rules:
            if name not in base:
                assert rule.premises == ()


@pytest.fixture(scope="module")
def theorems():
    return derived_proofs_E().replay()


class TestDerivedProofs:

    def test_all_expected_present(self, theorems):
        assert set(theorems) == set(EXPECTED_DERIVED)

    @pytest.mark.parametrize("name", sorted(EXPECTED_DERIVED))
    def test_conclusions_match(self, theorems, name, le):
        assert alpha_eq_rule(le.signature, theorems[name].rule, EXPECTED_DERIVED[name])

    def test_theorems_premise_free(self, theorems):
        for thm in theorems.values():
            assert thm.rule.premises == ()

    def test_sound_in_both_models(self, theorems, bool2, degen_le):
        for thm in theorems.values():
            assert check_rule_valid(bool2, thm.rule).valid
            assert check_rule_valid(degen_le, thm.rule).valid

    def test_script_linearization_replays(self, le):
        bundle = derived_proofs_E()
        items = script_items_from_bundle(bundle)
        names = {item.name for item in items}
        assert set(EXPECTED_DERIVED) <= names


class TestStandardModel:
    def test_implication_false_case(self, bool2, sig_le):
        t = parse_term(sig_le, "T => (forall x. x)")
        assert eval_term(bool2, Valuation.make(2, {}), t) == 1  # F

    def test_equality_reflexive_on_false(self, bool2, sig_le):
        t = parse_term(sig_le, "(forall x. x) == (forall x. x)")
        assert eval_term(bool2, Valuation.make(2, {}), t) == 0  # T

    def test_all_rules_valid(self, bool2, le):
        assert check_model(bool2, le).ok


class TestModelSearch:
    def test_le_has_exactly_the_standard_model_up_to_relabeling(self, le):
        from itertools import product

        from abslog.semantics import enumerate_operations, search_models

        found = search_models(le, sizes=(1, 2))
        # degenerate + standard + its carrier-relabeled mirror: nothing else
        assert len(found) == 3
        assert sorted(m.algebra.size for m in found) == [1, 2, 2]

        def fingerprint(m):
            out = [m.truth]
            for name, shape in m.algebra.signature.abstractions:
                op = m.algebra.operator(name)
                spaces = [
                    enumerate_operations(m.algebra.size, len(p)) for p in shape.deps
                ]
                out.extend(op.apply(combo) for combo in product(*spaces))
            return tuple(out)

        std = standard_two_element_model()
        two_element = [m for m in found if m.algebra.size == 2]
        assert fingerprint(std) in {fingerprint(m) for m in two_element}


class TestInconsistentLogicDemo:
    def test_demo(self, le, degen_le):
        logic, thm = inconsistent_logic_demo()
        assert thm.rule == Rule((), Var("x"))
        # semantically: ({}, x) fails in the two-element model of the BASE logic
        check = check_rule_valid(standard_two_element_model(), thm.rule)
        assert not check.valid
        # and the degenerate model still satisfies the extended logic
        from abslog.semantics import degenerate_model

        assert check_model(degenerate_model(logic.signature), logic).ok
