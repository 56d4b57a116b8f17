"""Abstraction logic: shaped terms with binders, capture-avoiding
substitution, an LCF-style proof kernel, and a finite-model semantic oracle."""

from .canonical import (
    alpha_eq_rule,
    alpha_eq_template,
    alpha_eq_term,
    canonical_rule,
    canonicalize_premise,
    from_canonical,
    term_encoding,
    to_canonical,
)
from .errors import AbslogError
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
from .parser import (
    parse_model,
    parse_proof_script,
    parse_term,
    parse_theory,
    replay_script,
)
from .printer import print_rule, print_template, print_term, render_model, render_theory
from .semantics import (
    FiniteAlgebra,
    Model,
    OperationTable,
    Valuation,
    check_model,
    check_rule_valid,
    degenerate_model,
    enumerate_operations,
    eval_template,
    eval_term,
    rule_true,
    search_models,
    subst_valuation,
    update_valuation,
)
from .substitution import (
    Substitution,
    apply_to_rule,
    apply_to_template,
    apply_to_term,
    canonical_substitution,
)
from .terms import (
    Abs,
    Rule,
    Shape,
    Signature,
    Template,
    Term,
    Var,
    VarKey,
    free_variables,
    validate_shape,
    validate_term,
)
from .theories import (
    TheoryBundle,
    derived_proofs_E,
    inconsistent_logic_demo,
    logic_E,
    logic_peano,
    standard_two_element_model,
)

__all__ = [name for name in dir() if not name.startswith("_")]
