"""Parsing and canonical printing for the surface syntax.

Expressions use generators x1, x2, ..., rational literals p/q, the binary
operators + - * with * binding tighter and everything left-associative,
unary minus, parentheses, and two-argument brackets [e1, e2].  Whitespace is
insignificant.  Syntax errors carry a line and column.

Endomorphism files hold one `x<k> -> <expr>` mapping per line; tame word
files hold one `sigma(<i>, <alpha>, <expr>)` factor per line with the bottom
factor applied first.  Lines starting with '#' (or trailing '#' comments) are
ignored in both.  Canonical machine output is JSON with sorted keys and no
whitespace, so each value has exactly one byte representation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .poisson import Endomorphism, PoissonElement, poisson_bracket
from .automorphy import ElementaryAut, TameWord


class ExprSyntaxError(ValueError):
    """Parse failure with 1-based position information."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    parts: tuple


@dataclass(frozen=True)
class Product:
    parts: tuple


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


@dataclass(frozen=True)
class Negation:
    child: object


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


_PUNCT = set("+-*()[],")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, column = 1, 1
    pos = 0
    size = len(text)
    while pos < size:
        ch = text[pos]
        if ch == "\n":
            line += 1
            column = 1
            pos += 1
            continue
        if ch.isspace():
            column += 1
            pos += 1
            continue
        start_col = column
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, start_col))
            pos += 1
            column += 1
            continue
        if ch.isdigit():
            m = re.match(r"\d+(?:/\d+)?", text[pos:])
            lit = m.group(0)
            if lit.endswith("/"):
                raise ExprSyntaxError("incomplete rational literal", line, start_col)
            tokens.append(_Token("rational", lit, line, start_col))
            pos += len(lit)
            column += len(lit)
            continue
        if ch == "x":
            m = re.match(r"x(\d+)", text[pos:])
            if not m:
                raise ExprSyntaxError("expected a generator index after 'x'", line, start_col)
            if int(m.group(1)) == 0:
                raise ExprSyntaxError("generator indices start at 1", line, start_col)
            tokens.append(_Token("var", m.group(0), line, start_col))
            pos += len(m.group(0))
            column += len(m.group(0))
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, start_col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], text: str):
        self.tokens = tokens
        self.pos = 0
        lines = text.splitlines() or [""]
        self.end_line = len(lines)
        self.end_column = len(lines[-1]) + 1

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", self.end_line, self.end_column)
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError(f"expected '{kind}'", self.end_line, self.end_column)
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected '{kind}', found {tok.text!r}", tok.line, tok.column)
        self.pos += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return node

    def expr(self):
        parts = [self.term()]
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ("+", "-"):
                break
            self.take()
            rhs = self.term()
            parts.append(Negation(rhs) if tok.kind == "-" else rhs)
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def term(self):
        parts = [self.factor()]
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "*":
                break
            self.take()
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Product(tuple(parts))

    def factor(self):
        tok = self.peek()
        if tok is not None and tok.kind == "-":
            self.take()
            return Negation(self.factor())
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok.kind == "rational":
            return RationalLit(Fraction(tok.text))
        if tok.kind == "var":
            return Var(int(tok.text[1:]))
        if tok.kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "[":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right)
        raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.column)


def parse_expr(text: str):
    """Parse an expression to its syntax tree without fixing an arity."""
    return _Parser(_tokenize(text), text).parse()


def elaborate(node, arity: int) -> PoissonElement:
    """Evaluate a syntax tree in the free Poisson algebra of the given arity."""
    if isinstance(node, Var):
        if node.index > arity:
            raise ValueError(f"generator x{node.index} exceeds arity {arity}")
        return PoissonElement.variable(arity, node.index)
    if isinstance(node, RationalLit):
        return PoissonElement.constant(arity, node.value)
    if isinstance(node, Sum):
        total = PoissonElement.zero(arity)
        for part in node.parts:
            total = total + elaborate(part, arity)
        return total
    if isinstance(node, Product):
        total = PoissonElement.one(arity)
        for part in node.parts:
            total = total * elaborate(part, arity)
        return total
    if isinstance(node, Bracket):
        return poisson_bracket(elaborate(node.left, arity), elaborate(node.right, arity))
    if isinstance(node, Negation):
        return -elaborate(node.child, arity)
    raise TypeError(f"not a syntax node: {node!r}")


def parse_element(text: str, arity: int) -> PoissonElement:
    return elaborate(parse_expr(text), arity)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


_MAPPING_RE = re.compile(r"^x(\d+)\s*->\s*(.+)$")


def parse_endomorphism(text: str) -> Endomorphism:
    """Parse `x<k> -> <expr>` lines; the arity is the number of mappings and
    the mappings must cover x1..xn exactly once."""
    sources: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        m = _MAPPING_RE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'x<k> -> <expression>'")
        k = int(m.group(1))
        if k in sources:
            raise ValueError(f"line {lineno}: duplicate mapping for x{k}")
        sources[k] = m.group(2)
    arity = len(sources)
    if not arity:
        raise ValueError("no mappings found")
    if sorted(sources) != list(range(1, arity + 1)):
        raise ValueError("mappings must cover x1..xn exactly once")
    return Endomorphism(arity, tuple(parse_element(sources[k], arity) for k in range(1, arity + 1)))


def format_endomorphism(phi: Endomorphism) -> str:
    return str(phi)


_SIGMA_RE = re.compile(r"^sigma\(\s*(\d+)\s*,\s*(-?\d+(?:/\d+)?)\s*,(.*)\)$")


def parse_tame_word(text: str, arity: int) -> TameWord:
    """Parse `sigma(<i>, <alpha>, <expr>)` lines, bottom factor applied first."""
    factors: list[ElementaryAut] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        m = _SIGMA_RE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'sigma(<i>, <alpha>, <expression>)'")
        index = int(m.group(1))
        alpha = Fraction(m.group(2))
        shift = parse_element(m.group(3), arity)
        try:
            factors.append(ElementaryAut(index, alpha, shift))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return TameWord(tuple(factors))


def parse_elementary(text: str, arity: int) -> ElementaryAut:
    """Parse a single `sigma(<i>, <alpha>, <expr>)` specification."""
    word = parse_tame_word(text, arity)
    if len(word.factors) != 1:
        raise ValueError("expected exactly one sigma(...) specification")
    return word.factors[0]


def format_tame_word(word: TameWord) -> str:
    return str(word)


def canonical_json(payload) -> str:
    """The one byte representation: sorted keys, no whitespace, one newline."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
