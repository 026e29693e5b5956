"""Recursive-descent parser and lexer for the rule language.

Grammar (terminals in quotes, % starts a comment running to end of line):

    program  := (rule ".")*
    rule     := head | head ":-" body | ":-" body
    head     := atom | sumatom | diffatom | inassign
    body     := literal ("," literal)*
    literal  := ["not"] (atom | sumatom | diffatom)
    atom     := SYM ["(" term ("," term)* ")"]
    sumatom  := "&sum" "{" linelem (";" linelem)* "}" CMP INT
    linelem  := [INT "*"] term
    diffatom := "&diff" "{" term "-" term "}" "<=" INT
    inassign := "&in" "{" arith ".." arith "}" "=:" term
    arith    := INT | term
    term     := INT | VAR | SYM ["(" simpleterm ("," simpleterm)* ")"]
    CMP      := "<=" | "=" | "!=" | "<" | ">" | ">="

SYM matches [a-z][A-Za-z0-9_]*, VAR matches [A-Z][A-Za-z0-9_]*, INT is an
optionally negated decimal.  Function terms take only simple arguments;
nesting them is rejected.  parse_program never raises on bad input: it
returns the program or a list of positioned diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FALSITY,
    SYM_PATTERN,
    VAR_PATTERN,
    AspVar,
    AssignmentAtom,
    Atom,
    DiffConstraintAtom,
    FuncTerm,
    IntConst,
    LinearConstraintAtom,
    Literal,
    Program,
    Rule,
    SymConst,
)


@dataclass(frozen=True)
class Diagnostic:
    """Parse failure at a 1-based line and column."""

    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


_PUNCT = {
    ".": "dot",
    ",": "comma",
    ";": "semi",
    "{": "lbrace",
    "}": "rbrace",
    "(": "lparen",
    ")": "rparen",
    "*": "star",
    "-": "minus",
}

_THEORY = {"&sum": "sum", "&diff": "diff", "&in": "in"}


def _lex(src: str):
    tokens: list = []
    diags: list = []
    line, col = 1, 1
    i, n = 0, len(src)

    def push(kind: str, text: str) -> None:
        tokens.append(_Token(kind, text, line, col))

    while i < n:
        c = src[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            push("int", src[i:j])
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            word = src[i:j]
            if word == "not":
                push("not", word)
            elif SYM_PATTERN.match(word):
                push("sym", word)
            elif VAR_PATTERN.match(word):
                push("var", word)
            else:
                diags.append(Diagnostic(line, col, f"invalid name '{word}'"))
            col += j - i
            i = j
            continue
        if c == "&":
            j = i + 1
            while j < n and src[j].isalpha():
                j += 1
            word = src[i:j]
            if word in _THEORY:
                push(_THEORY[word], word)
            else:
                diags.append(Diagnostic(line, col, f"unknown constraint atom '{word}'"))
            col += j - i
            i = j
            continue
        two = src[i : i + 2]
        if two == "..":
            push("dots", two)
        elif two == ":-":
            push("if", two)
        elif two == "=:":
            push("assign", two)
        elif two in ("<=", ">=", "!="):
            push("cmp", two)
        elif c in "<>":
            push("cmp", c)
            i += 1
            col += 1
            continue
        elif c == "=":
            push("cmp", c)
            i += 1
            col += 1
            continue
        elif c in _PUNCT:
            push(_PUNCT[c], c)
            i += 1
            col += 1
            continue
        else:
            diags.append(Diagnostic(line, col, f"unexpected character {c!r}"))
            i += 1
            col += 1
            continue
        i += 2
        col += 2
    tokens.append(_Token("eof", "", line, col))
    return tokens, diags


class _ParseError(Exception):
    def __init__(self, diag: Diagnostic):
        super().__init__(str(diag))
        self.diag = diag


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, tok: _Token, message: str):
        raise _ParseError(Diagnostic(tok.line, tok.column, message))

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(tok, f"expected {what}, found {tok.text!r}" if tok.kind != "eof" else f"expected {what}, found end of input")
        return self.next()

    # terms ---------------------------------------------------------------

    def term(self, depth: int = 0):
        tok = self.peek()
        if tok.kind == "minus":
            self.next()
            num = self.expect("int", "an integer")
            return IntConst(-int(num.text))
        if tok.kind == "int":
            self.next()
            return IntConst(int(tok.text))
        if tok.kind == "var":
            self.next()
            return AspVar(tok.text)
        if tok.kind == "sym":
            self.next()
            if self.peek().kind != "lparen":
                return SymConst(tok.text)
            if depth > 0:
                self.fail(tok, f"nested function term '{tok.text}(...)' is not supported")
            self.next()
            args = [self.term(depth + 1)]
            while self.peek().kind == "comma":
                self.next()
                args.append(self.term(depth + 1))
            self.expect("rparen", "')'")
            return FuncTerm(tok.text, tuple(args))
        self.fail(tok, f"expected a term, found {tok.text!r}" if tok.kind != "eof" else "expected a term, found end of input")

    # constraint atoms ----------------------------------------------------

    def sum_atom(self):
        self.expect("sum", "'&sum'")
        self.expect("lbrace", "'{'")
        terms = [self.lin_elem()]
        while self.peek().kind == "semi":
            self.next()
            terms.append(self.lin_elem())
        self.expect("rbrace", "'}'")
        cmp_tok = self.expect("cmp", "a comparator")
        rhs = self.signed_int()
        return LinearConstraintAtom(tuple(terms), cmp_tok.text, rhs)

    def lin_elem(self):
        # Coefficient forms: INT "*", "-" INT "*", "(" "-" INT ")" "*".
        start = self.pos
        coeff = None
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            if self.peek().kind == "star":
                self.next()
                coeff = int(tok.text)
            else:
                self.pos = start
        elif tok.kind == "minus":
            self.next()
            num = self.peek()
            if num.kind == "int":
                self.next()
                if self.peek().kind == "star":
                    self.next()
                    coeff = -int(num.text)
                else:
                    self.pos = start
            else:
                self.pos = start
        elif tok.kind == "lparen":
            self.next()
            neg = False
            if self.peek().kind == "minus":
                self.next()
                neg = True
            num = self.peek()
            if num.kind == "int":
                self.next()
                if self.peek().kind == "rparen":
                    self.next()
                    if self.peek().kind == "star":
                        self.next()
                        coeff = -int(num.text) if neg else int(num.text)
                    else:
                        self.pos = start
                else:
                    self.pos = start
            else:
                self.pos = start
        if coeff is None:
            return (1, self.term())
        return (coeff, self.term())

    def signed_int(self) -> int:
        tok = self.peek()
        if tok.kind == "minus":
            self.next()
            num = self.expect("int", "an integer")
            return -int(num.text)
        num = self.expect("int", "an integer")
        return int(num.text)

    def diff_atom(self):
        self.expect("diff", "'&diff'")
        self.expect("lbrace", "'{'")
        lhs = self.term()
        self.expect("minus", "'-'")
        rhs = self.term()
        self.expect("rbrace", "'}'")
        cmp_tok = self.peek()
        if cmp_tok.kind != "cmp" or cmp_tok.text != "<=":
            self.fail(cmp_tok, "difference constraints support only '<='")
        self.next()
        bound = self.signed_int()
        return DiffConstraintAtom(lhs, rhs, bound)

    def in_assignment(self):
        self.expect("in", "'&in'")
        self.expect("lbrace", "'{'")
        lo = self.term()
        self.expect("dots", "'..'")
        hi = self.term()
        self.expect("rbrace", "'}'")
        self.expect("assign", "'=:'")
        tgt_tok = self.peek()
        target = self.term()
        if isinstance(target, IntConst):
            self.fail(tgt_tok, "assignment target must be a variable name, not a constant")
        return AssignmentAtom(lo, hi, target)

    # atoms, literals, rules ----------------------------------------------

    def plain_atom(self):
        name = self.expect("sym", "a predicate name")
        if self.peek().kind != "lparen":
            return Atom(name.text)
        self.next()
        args = [self.term()]
        while self.peek().kind == "comma":
            self.next()
            args.append(self.term())
        self.expect("rparen", "')'")
        return Atom(name.text, tuple(args))

    def literal(self):
        positive = True
        if self.peek().kind == "not":
            self.next()
            positive = False
            if self.peek().kind == "not":
                self.fail(self.peek(), "double negation is not supported")
        tok = self.peek()
        if tok.kind == "sym":
            return Literal(positive, self.plain_atom())
        if tok.kind == "sum":
            return Literal(positive, self.sum_atom())
        if tok.kind == "diff":
            return Literal(positive, self.diff_atom())
        if tok.kind == "in":
            self.fail(tok, "assignment atom in rule body")
        self.fail(tok, f"expected a literal, found {tok.text!r}" if tok.kind != "eof" else "expected a literal, found end of input")

    def head(self):
        tok = self.peek()
        if tok.kind == "sym":
            return self.plain_atom()
        if tok.kind == "sum":
            return self.sum_atom()
        if tok.kind == "diff":
            return self.diff_atom()
        if tok.kind == "in":
            return self.in_assignment()
        self.fail(tok, f"expected a rule head, found {tok.text!r}" if tok.kind != "eof" else "expected a rule head, found end of input")

    def body(self):
        lits = [self.literal()]
        while self.peek().kind == "comma":
            self.next()
            lits.append(self.literal())
        return tuple(lits)

    def rule(self):
        if self.peek().kind == "if":
            self.next()
            body = self.body()
            self.expect("dot", "'.'")
            return Rule(FALSITY, body)
        head = self.head()
        if self.peek().kind == "if":
            self.next()
            body = self.body()
            self.expect("dot", "'.'")
            return Rule(head, body)
        self.expect("dot", "'.'")
        return Rule(head, ())

    def skip_past_dot(self) -> None:
        while True:
            tok = self.next()
            if tok.kind in ("dot", "eof"):
                return


def parse_program(src: str):
    """Parse a whole program.  Returns a Program or a list of Diagnostics."""
    tokens, diags = _lex(src)
    if diags:
        return diags
    parser = _Parser(tokens)
    rules: list = []
    errors: list = []
    while parser.peek().kind != "eof":
        try:
            rules.append(parser.rule())
        except _ParseError as exc:
            errors.append(exc.diag)
            parser.skip_past_dot()
    if errors:
        return errors
    return Program(tuple(rules))


def parse_term(src: str):
    """Parse a single term occupying the whole input; Term or one Diagnostic."""
    tokens, diags = _lex(src)
    if diags:
        return diags[0]
    parser = _Parser(tokens)
    try:
        term = parser.term()
    except _ParseError as exc:
        return exc.diag
    trailing = parser.peek()
    if trailing.kind != "eof":
        return Diagnostic(trailing.line, trailing.column, f"trailing input {trailing.text!r} after term")
    return term
