"""Concrete syntax: terms, theory files, model files and proof scripts.

Grammar (whitespace-insensitive within a line; files are line-oriented):

  term      := imp
  imp       := eq ('=>' imp)?                    right-associative
  eq        := app ('==' app)?                   non-associative
  app       := atom | NAME binders '.' imp       unparenthesized quantifier form
  atom      := NAME | NAME '[' term, ... ']' | '(' NAME binders '.' args ')'
             | '(' term ')'
  template  := '[' NAME* '.' term ']'            a bare term is a 0-ary template

Unicode aliases are accepted on input: => for =>, == for ==, forall for forall
(the glyphs are normalized while tokenizing; ASCII is canonical on output).
`//` starts a comment.  The renderers in printer.py produce exactly this
syntax, so canonical files round-trip byte-identically.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass

from .errors import AbslogError, ParseError
from .kernel import (
    InferStep,
    Logic,
    Proof,
    SubstStep,
    Truism,
    check_proof,
    mk_logic,
)
from .printer import print_rule, print_substitution
from .semantics import (
    ConstOp,
    ExplicitOp,
    FiniteAlgebra,
    ForallOp,
    Model,
    OperationTable,
    PointwiseOp,
)
from .substitution import Substitution
from .terms import (
    Abs,
    Rule,
    Signature,
    Template,
    Term,
    Var,
    validate_shape,
    validate_term,
)

_IDENT_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_'")
_GLYPHS = {"⇒": "=>", "≡": "==", "∀": "forall"}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" or the punctuation itself; "eof"
    text: str
    line: int
    col: int


def tokenize(text: str, file: str = "<string>", line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    col = 1
    n = len(text)

    def err(msg, c):
        raise ParseError(msg, file, line, c)

    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            col += 1
            continue
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        start_col = col
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _GLYPHS:
            repl = _GLYPHS[ch]
            kind = "ident" if repl[0] in _IDENT_CHARS else repl
            tokens.append(Token(kind, repl, line, start_col))
            i += 1
            col += 1
            continue
        if ch in _IDENT_CHARS:
            j = i
            while j < n:
                c = text[j]
                if c in _IDENT_CHARS:
                    j += 1
                elif c == "-" and j + 1 < n and text[j + 1] in _IDENT_CHARS:
                    j += 2
                else:
                    break
            word = text[i:j]
            tokens.append(Token("ident", word, line, start_col))
            col += j - i
            i = j
            continue
        two = text[i:i + 2]
        if two in (":=", "=>", "==", "|-", "->"):
            tokens.append(Token(two, two, line, start_col))
            i += 2
            col += 2
            continue
        if ch in "()[]{}.,;:#/":
            tokens.append(Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        err(f"unexpected character {ch!r}", start_col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Tokens:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.file = file
        self.pos = 0

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.error(f"expected {what or kind}, got {tok.text or 'end of input'!r}", tok)
        return self.next()

    def error(self, msg: str, tok: Token | None = None, code: str = "syntax"):
        tok = tok or self.peek()
        raise ParseError(msg, self.file, tok.line, tok.col, code=code)


# -- terms ----------------------------------------------------------------------

class _TermParser:
    def __init__(self, sig: Signature, ts: _Tokens):
        self.sig = sig
        self.ts = ts

    def term(self) -> Term:
        left = self.eq()
        if self.ts.at("=>"):
            tok = self.ts.next()
            right = self.term()
            return self._sugar("imp", (left, right), tok)
        return left

    def eq(self) -> Term:
        left = self.app()
        if self.ts.at("=="):
            tok = self.ts.next()
            right = self.app()
            if self.ts.at("=="):
                self.ts.error("'==' is not associative; parenthesize")
            return self._sugar("eq", (left, right), tok)
        return left

    def _sugar(self, name: str, args, tok: Token) -> Term:
        if name not in self.sig:
            self.ts.error(
                f"operator sugar needs abstraction {name!r} in the signature",
                tok,
                code="unknown-abstraction",
            )
        shape = self.sig.shape(name)
        if shape.arity != 2 or shape.valence != 0:
            self.ts.error(f"abstraction {name!r} is not a binary operation", tok)
        return Abs(name, (), tuple(args))

    def app(self) -> Term:
        tok = self.ts.peek()
        if tok.kind == "ident" and tok.text in self.sig:
            shape = self.sig.shape(tok.text)
            if shape.valence >= 1 and shape.arity == 1 and self.ts.peek(1).kind in ("ident", "."):
                return self._quantifier()
        return self.atom()

    def _quantifier(self) -> Term:
        head = self.ts.next()
        shape = self.sig.shape(head.text)
        binders = []
        while self.ts.at("ident"):
            binders.append(self.ts.next().text)
        self.ts.expect(".", "'.' after binders")
        if len(binders) != shape.valence:
            self.ts.error(
                f"abstraction {head.text!r} takes {shape.valence} binders, "
                f"got {len(binders)}",
                head,
                code="arity",
            )
        body = self.term()
        return self._mk_abs(head, head.text, binders, [body])

    def atom(self) -> Term:
        tok = self.ts.peek()
        if tok.kind == "ident":
            name = self.ts.next().text
            if name in self.sig:
                shape = self.sig.shape(name)
                if shape.arity == 0:
                    return Abs(name, (), ())
                self.ts.error(
                    f"abstraction {name!r} must be applied: "
                    f"({name} ...binders. ...args)",
                    tok,
                    code="arity",
                )
            if self.ts.at("["):
                self.ts.next()
                args = [self.term()]
                while self.ts.at(","):
                    self.ts.next()
                    args.append(self.term())
                self.ts.expect("]", "']' after variable arguments")
                return Var(name, tuple(args))
            return Var(name)
        if tok.kind == "(":
            return self._paren()
        self.ts.error(f"expected a term, got {tok.text or 'end of input'!r}")

    def _looks_like_absapp(self) -> bool:
        # called with '(' already consumed: ident+ '.'  (head, binders, dot)
        if self.ts.peek().kind != "ident":
            return False
        k = 1
        while self.ts.peek(k).kind == "ident":
            k += 1
        return self.ts.peek(k).kind == "."

    def _paren(self) -> Term:
        lp = self.ts.expect("(")
        if self._looks_like_absapp():
            head = self.ts.next()
            if head.text not in self.sig:
                self.ts.error(
                    f"unknown abstraction {head.text!r}",
                    head,
                    code="unknown-abstraction",
                )
            shape = self.sig.shape(head.text)
            binders = []
            while self.ts.at("ident"):
                binders.append(self.ts.next().text)
            self.ts.expect(".")
            if len(binders) != shape.valence:
                self.ts.error(
                    f"abstraction {head.text!r} takes {shape.valence} binders, "
                    f"got {len(binders)}",
                    head,
                    code="arity",
                )
            args: list[Term] = []
            if shape.arity == 1:
                args.append(self.term())
            else:
                for _ in range(shape.arity):
                    args.append(self.atom())
            self.ts.expect(")", "')' closing abstraction application")
            return self._mk_abs(head, head.text, binders, args)
        inner = self.term()
        self.ts.expect(")", "')'")
        return inner

    def _mk_abs(self, tok: Token, name, binders, args) -> Term:
        try:
            term = Abs(name, tuple(binders), tuple(args))
            validate_term(self.sig, term)
        except AbslogError as exc:
            if isinstance(exc, ParseError):
                raise
            self.ts.error(str(exc), tok, code=exc.code)
        return term

    def template(self) -> Template:
        self.ts.expect("[")
        binders = []
        while self.ts.at("ident"):
            binders.append(self.ts.next().text)
        self.ts.expect(".", "'.' after template binders")
        body = self.term()
        self.ts.expect("]", "']' closing template")
        tok = self.ts.peek()
        try:
            return Template(tuple(binders), body)
        except AbslogError as exc:
            self.ts.error(str(exc), tok, code=exc.code)


def parse_term(sig: Signature, text: str, file: str = "<string>") -> Term:
    ts = _Tokens(tokenize(text, file), file)
    parser = _TermParser(sig, ts)
    term = parser.term()
    if not ts.at("eof"):
        ts.error(f"trailing input {ts.peek().text!r}")
    validate_term(sig, term)
    return term


def parse_template(sig: Signature, text: str, file: str = "<string>") -> Template:
    ts = _Tokens(tokenize(text, file), file)
    parser = _TermParser(sig, ts)
    if ts.at("["):
        tpl = parser.template()
    else:
        tpl = Template((), parser.term())
    if not ts.at("eof"):
        ts.error(f"trailing input {ts.peek().text!r}")
    return tpl


# -- shared pieces ----------------------------------------------------------------

def _parse_shape(ts: _Tokens):
    ts.expect("[", "shape '['")
    deps = []
    if not ts.at("]"):
        while True:
            ts.expect("{", "'{'")
            entries = []
            if not ts.at("}"):
                while True:
                    tok = ts.expect("ident", "slot number")
                    if not tok.text.isdigit():
                        ts.error(f"slot index must be a number, got {tok.text!r}", tok)
                    entries.append(int(tok.text))
                    if ts.at(","):
                        ts.next()
                        continue
                    break
            ts.expect("}", "'}'")
            deps.append(entries)
            if ts.at(","):
                ts.next()
                continue
            break
    tok = ts.peek()
    ts.expect("]", "']' closing shape")
    try:
        return validate_shape(deps)
    except AbslogError as exc:
        ts.error(str(exc), tok, code=exc.code)


def _parse_rule_body(sig: Signature, ts: _Tokens) -> Rule:
    parser = _TermParser(sig, ts)
    premises = []
    while ts.at("ident", "premise"):
        ts.next()
        if ts.at("["):
            premises.append(parser.template())
        else:
            premises.append(Template((), parser.term()))
        if ts.at(";"):
            ts.next()
            continue
        break
    ts.expect("|-", "'|-'")
    conclusion = parser.term()
    return Rule(tuple(premises), conclusion)


def _line_tokens(text: str, file: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = tokenize(line, file, line=lineno)
        if toks[0].kind == "eof":
            continue
        yield lineno, _Tokens(toks, file)


# -- theory files -----------------------------------------------------------------

def parse_theory(text: str, file: str = "<theory>") -> Logic:
    sig_items: list[tuple[str, object]] = []
    rules: list[tuple[str, Rule]] = []
    sig: Signature | None = None
    for lineno, ts in _line_tokens(text, file):
        head = ts.expect("ident", "'abstraction' or 'rule'")
        if head.text == "abstraction":
            if rules:
                ts.error("abstraction lines must precede rule lines", head)
            name = ts.expect("ident", "abstraction name").text
            ts.expect("ident", "'shape'")
            shape = _parse_shape(ts)
            sig_items.append((name, shape))
        elif head.text == "rule":
            if sig is None:
                try:
                    sig = Signature(tuple(sig_items))
                except AbslogError as exc:
                    ts.error(str(exc), head, code=exc.code)
            name = ts.expect("ident", "rule name").text
            ts.expect(":", "':'")
            rule = _parse_rule_body(sig, ts)
            rules.append((name, rule))
        else:
            ts.error(f"unexpected directive {head.text!r}", head)
        if not ts.at("eof"):
            ts.error(f"trailing input {ts.peek().text!r}")
    if sig is None:
        sig = Signature(tuple(sig_items))
    try:
        return mk_logic(sig, rules)
    except AbslogError as exc:
        raise ParseError(str(exc), file, 0, 0, code=exc.code) from exc


# -- model files ------------------------------------------------------------------

def _parse_table_arg(ts: _Tokens, carrier, k: int) -> OperationTable:
    size = len(carrier)
    if k == 0:
        tok = ts.expect("ident", "carrier element")
        return OperationTable(size, 0, (_element(ts, carrier, tok),))
    ts.expect("(", "table literal '('")
    values = []
    while True:
        tok = ts.expect("ident", "carrier element")
        values.append(_element(ts, carrier, tok))
        if ts.at(","):
            ts.next()
            continue
        break
    ts.expect(")", "')' closing table literal")
    if len(values) != size ** k:
        ts.error(
            f"table literal needs {size ** k} entries for arity {k}, "
            f"got {len(values)}",
            tok,
        )
    return OperationTable(size, k, tuple(values))


def _element(ts: _Tokens, carrier, tok: Token) -> int:
    try:
        return carrier.index(tok.text)
    except ValueError:
        ts.error(f"unknown carrier element {tok.text!r}", tok)


def parse_model(text: str, file: str = "<model>") -> Model:
    carrier: tuple[str, ...] | None = None
    truth: int | None = None
    sig_items = []
    interps = []
    for lineno, ts in _line_tokens(text, file):
        head = ts.expect("ident", "'carrier', 'truth' or 'op'")
        if head.text == "carrier":
            names = []
            while ts.at("ident"):
                names.append(ts.next().text)
            if not names:
                ts.error("carrier needs at least one element", head)
            carrier = tuple(names)
        elif head.text == "truth":
            if carrier is None:
                ts.error("carrier must come before truth", head)
            truth = _element(ts, carrier, ts.expect("ident", "carrier element"))
        elif head.text == "op":
            if carrier is None or truth is None:
                ts.error("carrier and truth must come before op lines", head)
            name = ts.expect("ident", "abstraction name").text
            ts.expect("ident", "'shape'")
            shape = _parse_shape(ts)
            sig_items.append((name, shape))
            kind = ts.expect("ident", "'builtin' or 'table'")
            if kind.text == "builtin":
                which = ts.expect("ident", "builtin kind").text
                if which == "const":
                    el = _element(ts, carrier, ts.expect("ident", "carrier element"))
                    interps.append((name, ConstOp(el)))
                elif which == "forall-like":
                    false_el = next(
                        (i for i in range(len(carrier)) if i != truth), truth
                    )
                    interps.append((name, ForallOp(truth, false_el)))
                else:
                    ts.error(f"unknown builtin kind {which!r}", kind)
            elif kind.text == "table":
                ts.expect(":", "':'")
                interps.append(
                    (name, _parse_op_table(ts, carrier, shape))
                )
            else:
                ts.error(f"expected 'builtin' or 'table', got {kind.text!r}", kind)
        else:
            ts.error(f"unexpected directive {head.text!r}", head)
        if not ts.at("eof"):
            ts.error(f"trailing input {ts.peek().text!r}")
    if carrier is None or truth is None:
        raise ParseError("model needs carrier and truth lines", file, 0, 0)
    sig = Signature(tuple(sig_items))
    return Model(FiniteAlgebra(carrier, sig, tuple(interps)), truth)


def _parse_op_table(ts: _Tokens, carrier, shape):
    size = len(carrier)
    ks = [len(p) for p in shape.deps]
    rows: dict[tuple[OperationTable, ...], int] = {}
    default: int | None = None
    while True:
        if ts.at("ident", "default"):
            ts.next()
            default = _element(ts, carrier, ts.expect("ident", "carrier element"))
        else:
            args = tuple(_parse_table_arg(ts, carrier, k) for k in ks)
            arrow = ts.expect("->", "'->'")
            result = _element(ts, carrier, ts.expect("ident", "carrier element"))
            if args in rows:
                ts.error("duplicate table row", arrow)
            rows[args] = result
        if ts.at(";"):
            ts.next()
            continue
        break
    if all(k == 0 for k in ks):
        values = []
        for tup in itertools.product(range(size), repeat=len(ks)):
            key = tuple(OperationTable(size, 0, (u,)) for u in tup)
            if key in rows:
                values.append(rows[key])
            elif default is not None:
                values.append(default)
            else:
                ts.error(
                    "table does not cover all argument tuples and has no default"
                )
        return PointwiseOp(OperationTable(size, len(ks), tuple(values)))
    if default is None:
        total = 1
        for k in ks:
            total *= size ** (size ** k)
        if len(rows) != total:
            ts.error("explicit table needs a default or full coverage")
        default = 0
    return ExplicitOp.make(rows, default)


# -- proof scripts ----------------------------------------------------------------

@dataclass(frozen=True)
class ScriptItem:
    """One `thm` line of a proof script, with its resolved proof tree."""

    name: str
    kind: str  # "rule" | "subst" | "infer"
    refs: tuple
    subst: Substitution | None
    proof: Proof
    expect: Rule | None
    line: int

    def render(self) -> str:
        if self.kind == "rule":
            body = f"rule {self.refs[0]}"
        elif self.kind == "subst":
            body = f"subst {self.refs[0]} {print_substitution(self.subst)}"
        else:
            body = f"infer {self.refs[0]} # {self.refs[1]} {self.refs[2]}"
        text = f"thm {self.name} := {body}"
        if self.expect is not None:
            text += f"\nexpect: {print_rule(self.expect)}"
        return text


def render_script_items(items) -> str:
    return "\n".join(item.render() for item in items) + "\n"


def _parse_subst_entries(sig: Signature, ts: _Tokens) -> Substitution:
    ts.expect("{", "'{'")
    parser = _TermParser(sig, ts)
    entries = []
    if not ts.at("}"):
        while True:
            name = ts.expect("ident", "variable name").text
            arity = 0
            if ts.at("/"):
                ts.next()
                num = ts.expect("ident", "arity")
                if not num.text.isdigit():
                    ts.error(f"arity must be a number, got {num.text!r}", num)
                arity = int(num.text)
            tok = ts.peek()
            ts.expect(":=", "':='")
            if ts.at("["):
                tpl = parser.template()
            else:
                tpl = Template((), parser.term())
            if tpl.arity != arity:
                ts.error(
                    f"substitution for {name}/{arity} must have {arity} binders",
                    tok,
                    code="arity",
                )
            entries.append(((name, arity), tpl))
            if ts.at(";"):
                ts.next()
                continue
            break
    ts.expect("}", "'}' closing substitution")
    try:
        return Substitution.make(entries)
    except AbslogError as exc:
        ts.error(str(exc), code=exc.code)


def parse_proof_script(logic: Logic, text: str, file: str = "<script>") -> list[ScriptItem]:
    items: list[ScriptItem] = []
    by_name: dict[str, ScriptItem] = {}

    def resolve(tok: Token) -> Proof:
        item = by_name.get(tok.text)
        if item is None:
            raise ParseError(
                f"unknown theorem name {tok.text!r}",
                file,
                tok.line,
                tok.col,
                code="unknown-theorem",
            )
        return item.proof

    for lineno, ts in _line_tokens(text, file):
        head = ts.expect("ident", "'thm' or 'expect'")
        if head.text == "thm":
            name = ts.expect("ident", "theorem name").text
            if name in by_name:
                ts.error(f"duplicate theorem name {name!r}", head)
            ts.expect(":=", "':='")
            kind = ts.expect("ident", "'rule', 'subst' or 'infer'")
            if kind.text == "rule":
                rname = ts.expect("ident", "rule name").text
                item = ScriptItem(
                    name, "rule", (rname,), None, Truism(rname), None, lineno
                )
            elif kind.text == "subst":
                src = ts.expect("ident", "theorem name")
                subst = _parse_subst_entries(logic.signature, ts)
                item = ScriptItem(
                    name,
                    "subst",
                    (src.text,),
                    subst,
                    SubstStep(resolve(src), subst),
                    None,
                    lineno,
                )
            elif kind.text == "infer":
                major = ts.expect("ident", "theorem name")
                ts.expect("#", "'#'")
                num = ts.expect("ident", "premise index")
                if not num.text.isdigit() or int(num.text) < 1:
                    ts.error("premise index must be a positive number", num)
                minor = ts.expect("ident", "theorem name")
                item = ScriptItem(
                    name,
                    "infer",
                    (major.text, int(num.text), minor.text),
                    None,
                    InferStep(resolve(major), int(num.text) - 1, resolve(minor)),
                    None,
                    lineno,
                )
            else:
                ts.error(f"unknown proof step kind {kind.text!r}", kind)
            items.append(item)
            by_name[name] = item
        elif head.text == "expect":
            ts.expect(":", "':'")
            if not items:
                ts.error("expect line before any thm line", head)
            rule = _parse_rule_body(logic.signature, ts)
            last = items[-1]
            proof = dataclasses.replace(last.proof, target=rule)
            updated = dataclasses.replace(last, expect=rule, proof=proof)
            items[-1] = updated
            by_name[last.name] = updated
        else:
            ts.error(f"unexpected directive {head.text!r}", head)
        if not ts.at("eof"):
            ts.error(f"trailing input {ts.peek().text!r}")
    return items


def replay_script(logic: Logic, items, file: str = "<script>") -> dict:
    """Replay every item in order; returns an ordered name -> Theorem map.
    Kernel errors are re-raised with the position of the offending line."""
    memo: dict[Proof, object] = {}
    out = {}
    for item in items:
        try:
            out[item.name] = check_proof(logic, item.proof, _memo=memo)
        except ParseError:
            raise
        except AbslogError as exc:
            raise ParseError(
                f"in theorem {item.name!r}: {exc}",
                file,
                item.line,
                1,
                code=exc.code,
            ) from exc
    return out
