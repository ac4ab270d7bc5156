"""Parser for ``.problem`` files.

Example::

    # modus ponens
    atom A C;
    cond a = A;
    cond c_given_a = C | A;
    assess P(a) = 1;
    assess P(c_given_a) = 0.9;
    extend C?

Statements end with ``;`` and queries with ``?``.  In a ``cond`` declaration
a bar at the top level separates consequent and antecedent; inside
parentheses it is disjunction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsatisfiableAntecedent
from .events import FALSE, TRUE, Atom, ConditionalEvent, Expr, conj, disj

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+/\d+|\d+\.\d*|\.\d+|\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_\-]*)
  | (?P<arrow>=>)
  | (?P<punct>[;=|&~(){},?])
    """,
    re.VERBOSE,
)
_SCI = re.compile(r"(\d+\.?\d*|\.\d+)[eE][+-]?\d")


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, kind: str = "SyntaxError"):
        super().__init__(f"line {line}, col {col}: {kind}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.kind = kind


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        col = pos - line_start + 1
        sci = _SCI.match(text, pos)
        if sci:
            raise ParseError(f"scientific notation {sci.group(0)!r}... is not accepted", line, col, "NonRational")
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(0), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


@dataclass(frozen=True)
class Query:
    kind: str
    args: tuple
    line: int
    col: int
    text: str


@dataclass
class Problem:
    atoms: list[str] = field(default_factory=list)
    conds: dict[str, ConditionalEvent] = field(default_factory=dict)
    assessments: dict[str, Fraction] = field(default_factory=dict)
    queries: list[Query] = field(default_factory=list)

    def resolve(self, name: str) -> ConditionalEvent:
        """A declared conditional, or an atom read as an unconditional event."""
        if name in self.conds:
            return self.conds[name]
        if name in self.atoms:
            return ConditionalEvent(Atom(name))
        raise KeyError(name)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.problem = Problem()

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Token | None = None, kind: str = "SyntaxError") -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col, kind)

    def accept(self, text: str) -> Token | None:
        if self.tok.text == text and self.tok.kind != "eof":
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return t

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    # grammar
    def parse(self) -> Problem:
        while self.tok.kind != "eof":
            self.statement()
        return self.problem

    def statement(self) -> None:
        start = self.tok
        word = self.ident().text
        handler = getattr(self, "stmt_" + word.replace("-", "_"), None)
        if handler is None:
            raise self.error(f"unknown statement {word!r}", start)
        handler(start)

    def stmt_atom(self, start: Token) -> None:
        names = []
        while self.tok.kind == "ident":
            t = self.ident()
            if t.text in ("TRUE", "FALSE"):
                raise self.error(f"{t.text} is reserved", t)
            if t.text in self.problem.atoms:
                raise self.error(f"atom {t.text} declared twice", t)
            names.append(t.text)
        if not names:
            raise self.error("atom declaration needs at least one name")
        self.expect(";")
        self.problem.atoms.extend(names)

    def stmt_cond(self, start: Token) -> None:
        name = self.ident()
        if name.text in self.problem.conds:
            raise self.error(f"conditional {name.text} declared twice", name)
        self.expect("=")
        self.problem.conds[name.text] = self.conditional(start)
        self.expect(";")

    def stmt_assess(self, start: Token) -> None:
        p = self.ident()
        if p.text != "P":
            raise self.error("expected P(name)", p)
        self.expect("(")
        name = self.ident()
        if name.text not in self.problem.conds:
            raise self.error(f"undeclared conditional {name.text}", name, "UndeclaredName")
        self.expect(")")
        self.expect("=")
        value = self.number()
        self.expect(";")
        self.problem.assessments[name.text] = value

    def number(self) -> Fraction:
        t = self.tok
        if t.kind != "number":
            raise self.error(f"expected a rational number, found {t.text or 'end of input'!r}", t, "NonRational")
        self.i += 1
        try:
            value = Fraction(t.text)
        except (ValueError, ZeroDivisionError):
            raise self.error(f"{t.text!r} is not a rational number", t, "NonRational") from None
        if not 0 <= value <= 1:
            raise self.error(f"{t.text} is outside [0, 1]", t, "NonRational")
        return value

    def conditional(self, start: Token) -> ConditionalEvent:
        cons = self.and_expr()
        ante: Expr = TRUE
        bar = self.accept("|")
        if bar:
            ante = self.and_expr()
            if self.tok.text == "|":
                raise self.error("a second top-level '|'; parenthesize disjunctions")
        try:
            return ConditionalEvent(cons, ante)
        except UnsatisfiableAntecedent:
            raise self.error("antecedent is unsatisfiable", bar or start, "UnsatisfiableAntecedent") from None

    def or_expr(self) -> Expr:
        parts = [self.and_expr()]
        while self.accept("|"):
            parts.append(self.and_expr())
        return disj(*parts)

    def and_expr(self) -> Expr:
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return conj(*parts)

    def unary(self) -> Expr:
        if self.accept("~"):
            return ~self.unary()
        if self.accept("("):
            e = self.or_expr()
            self.expect(")")
            return e
        t = self.ident()
        if t.text == "TRUE":
            return TRUE
        if t.text == "FALSE":
            return FALSE
        if t.text not in self.problem.atoms:
            raise self.error(f"undeclared atom {t.text}", t, "UndeclaredName")
        return Atom(t.text)

    def name(self) -> str:
        t = self.ident()
        try:
            self.problem.resolve(t.text)
        except KeyError:
            raise self.error(f"undeclared name {t.text}", t, "UndeclaredName") from None
        return t.text

    def name_set(self) -> tuple[str, ...]:
        self.expect("{")
        names = [self.name()]
        while self.accept(","):
            names.append(self.name())
        self.expect("}")
        return tuple(names)

    def target(self, start: Token) -> ConditionalEvent | str:
        """A declared name or an inline conditional such as ``C | A``."""
        t = self.tok
        nxt = self.toks[self.i + 1]
        if t.kind == "ident" and nxt.text == "?" and t.text in self.problem.conds:
            self.i += 1
            return t.text
        return self.conditional(start)

    def finish_query(self, start: Token, kind: str, args: tuple) -> None:
        end = self.expect("?")
        lines = self.text.splitlines()
        text = lines[start.line - 1][start.col - 1 :].split("?")[0].strip() + "?" if start.line == end.line else kind + "?"
        self.problem.queries.append(Query(kind, args, start.line, start.col, text))

    def stmt_coherent(self, start: Token) -> None:
        self.finish_query(start, "coherent", ())

    def stmt_extend(self, start: Token) -> None:
        self.finish_query(start, "extend", (self.target(start),))

    def stmt_entails(self, start: Token) -> None:
        premises = self.name_set()
        self.expect("=>")
        self.finish_query(start, "entails", (premises, self.target(start)))

    def stmt_iterated(self, start: Token) -> None:
        conclusion = self.name()
        self.expect("|")
        if self.accept("("):
            premises = [self.name()]
            if self.accept("&"):
                premises.append(self.name())
            self.expect(")")
        else:
            premises = [self.name()]
        self.finish_query(start, "iterated", (conclusion, tuple(premises)))

    def stmt_conjunction(self, start: Token) -> None:
        names = [self.name()]
        while self.accept("&"):
            names.append(self.name())
        if len(names) < 2:
            raise self.error("a conjunction needs at least two conditionals")
        self.finish_query(start, "conjunction", tuple(names))

    def stmt_qc(self, start: Token) -> None:
        self.finish_query(start, "qc", (self.name_set(),))

    def stmt_rule(self, start: Token) -> None:
        name = self.ident().text
        self.finish_query(start, "rule", (name,))


def parse_problem(text: str) -> Problem:
    """Parse problem text; raises :class:`ParseError` with line and column."""
    return _Parser(text).parse()
