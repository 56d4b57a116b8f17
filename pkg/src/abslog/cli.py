"""Command-line tool: proof checking, model checking, evaluation, and the
soundness oracle.

Errors are reported as machine-readable lines on stderr:

    ERROR <code> <file>:<line>:<col> <message>

Exit status is 0 only when every requested check passes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .canonical import alpha_eq_term
from .errors import AbslogError, ParseError
from .parser import parse_model, parse_proof_script, parse_term, parse_theory, replay_script
from .printer import display_rule
from .semantics import DEFAULT_CAP, Valuation, check_model, check_rule_valid, eval_term


def _data_path(name: str) -> Path:
    return Path(__file__).parent / "data" / name


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc), path, 0, 0, code="io") from exc


def _error_line(exc: AbslogError, file: str = "-") -> str:
    if isinstance(exc, ParseError):
        return f"ERROR {exc.code} {exc.file}:{exc.line}:{exc.col} {exc}"
    return f"ERROR {exc.code} {file}:0:0 {exc}"


def _fail(exc: AbslogError, file: str = "-") -> int:
    print(_error_line(exc, file), file=sys.stderr)
    return 1


def _format_table(carrier, table) -> str:
    if table.arity == 0:
        return carrier[table.values[0]]
    return "(" + ", ".join(carrier[v] for v in table.values) + ")"


def _print_counterexample(model, nu: Valuation) -> None:
    carrier = model.algebra.carrier
    for key, table in nu.overrides:
        print(f"    {key.name}/{key.arity} = {_format_table(carrier, table)}")


def _cmd_check(args) -> int:
    try:
        logic = parse_theory(_read(args.theory), args.theory)
        items = parse_proof_script(logic, _read(args.script), args.script)
        theorems = replay_script(logic, items, args.script)
    except AbslogError as exc:
        return _fail(exc, args.script)
    for name, thm in theorems.items():
        print(f"checked {name}: {display_rule(thm.rule)}")
    print(f"{len(theorems)} proofs checked")
    return 0


def _cmd_model_check(args) -> int:
    try:
        logic = parse_theory(_read(args.theory), args.theory)
        model = parse_model(_read(args.model), args.model)
        report = check_model(model, logic, cap=args.cap)
    except AbslogError as exc:
        return _fail(exc, args.model)
    for entry in report.entries:
        if entry.valid:
            print(f"valid {entry.name}")
        else:
            print(f"INVALID {entry.name}")
            if args.verbose and entry.counterexample is not None:
                _print_counterexample(model, entry.counterexample)
    print(f"{report.valid_count}/{len(report.entries)} rules valid")
    return 0 if report.ok else 1


def _cmd_eval(args) -> int:
    try:
        model = parse_model(_read(args.model), args.model)
        sig = model.algebra.signature
        term = parse_term(sig, args.term, "<term>")
        overrides = {}
        for setting in args.set or []:
            name, _, element = setting.partition("=")
            if not element:
                raise ParseError(f"--set needs var=element, got {setting!r}")
            from .semantics import OperationTable

            overrides[(name, 0)] = OperationTable.constant(
                model.algebra.size, 0, model.algebra.element(element)
            )
        nu = Valuation.make(model.algebra.size, overrides)
        value = eval_term(model, nu, term)
    except AbslogError as exc:
        return _fail(exc, args.model)
    print(model.algebra.carrier[value])
    return 0


def _cmd_alpha(args) -> int:
    try:
        theory = args.theory or str(_data_path("le.th"))
        logic = parse_theory(_read(theory), theory)
        t1 = parse_term(logic.signature, args.term1, "<term1>")
        t2 = parse_term(logic.signature, args.term2, "<term2>")
    except AbslogError as exc:
        return _fail(exc)
    if alpha_eq_term(logic.signature, t1, t2):
        print("alpha-equivalent")
        return 0
    print("not alpha-equivalent")
    return 1


def _cmd_oracle(args) -> int:
    try:
        logic = parse_theory(_read(args.theory), args.theory)
        items = parse_proof_script(logic, _read(args.script), args.script)
        theorems = replay_script(logic, items, args.script)
        model_files = sorted(Path(args.models).glob("*.model"))
        if not model_files:
            raise ParseError(f"no .model files in {args.models}", args.models)
        models = [
            (path.name, parse_model(path.read_text(), str(path)))
            for path in model_files
        ]
    except AbslogError as exc:
        return _fail(exc, args.script)
    failures = 0
    for model_name, model in models:
        for name, thm in theorems.items():
            try:
                check = check_rule_valid(model, thm.rule, cap=args.cap)
            except AbslogError as exc:
                return _fail(exc, model_name)
            if check.valid:
                print(f"ok {name} @ {model_name}")
            else:
                failures += 1
                print(f"COUNTEREXAMPLE {name} @ {model_name}")
                if args.verbose and check.counterexample is not None:
                    _print_counterexample(model, check.counterexample)
    total = len(models) * len(theorems)
    print(
        f"{total - failures}/{total} theorem-model checks passed"
        if failures
        else f"all {total} theorem-model checks passed"
    )
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="abslog",
        description="Proof checker and finite-model oracle for abstraction logic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="replay a proof script against a theory")
    p.add_argument("theory")
    p.add_argument("script")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("model-check", help="validate every rule of a theory in a model")
    p.add_argument("theory")
    p.add_argument("model")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_model_check)

    p = sub.add_parser("eval", help="evaluate a term in a model")
    p.add_argument("model")
    p.add_argument("term")
    p.add_argument("--set", action="append", metavar="VAR=ELEMENT")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("alpha", help="test two terms for alpha-equivalence")
    p.add_argument("term1")
    p.add_argument("term2")
    p.add_argument("--theory", help="theory file fixing the signature (default: bundled le.th)")
    p.set_defaults(func=_cmd_alpha)

    p = sub.add_parser(
        "oracle",
        help="replay a script, then validate every theorem in every model",
    )
    p.add_argument("theory")
    p.add_argument("script")
    p.add_argument("--models", required=True, help="directory of .model files")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
