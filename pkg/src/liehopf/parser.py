"""Expression language for elements of Q(L) and Q(L) * k[x].

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := power ("*" power)*
    power   := unary ("^" INT)*
    unary   := "-" unary | primary
    primary := INT ["/" INT] | NAME | "(" expr ")" | "[" expr "," expr "]"

``x`` always denotes the adjoined variable.  ``[a, b]`` is the commutator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .freeprod import FPElement, FreeProduct


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1, expected: tuple = ()):
        self.message, self.line, self.col, self.expected = message, line, col, tuple(expected)
        text = f"{line}:{col}: {message}"
        if expected:
            text += f" (expected {' or '.join(expected)})"
        super().__init__(text)


class UnboundIdentifier(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    line: int
    col: int


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"\d+")
_OPS = set("+-*^/[],()")


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        ch = src[pos]
        if ch == "\n":
            line, line_start = line + 1, pos + 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        col = pos - line_start + 1
        m = _INT.match(src, pos) or _NAME.match(src, pos)
        if m:
            kind = "INT" if ch.isdigit() else "NAME"
            tokens.append(Token(kind, m.group(), line, col))
            pos = m.end()
        elif ch in _OPS:
            tokens.append(Token("OP", ch, line, col))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("END", "", line, len(src) - line_start + 1))
    return tokens


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Commutator:
    left: object
    right: object


class _Parser:
    def __init__(self, src: str, names):
        self.tokens = tokenize(src)
        self.i = 0
        self.names = names

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message, expected=()):
        t = self.tok
        raise ParseError(message, t.line, t.col, expected)

    def accept(self, text):
        if self.tok.kind == "OP" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.fail(f"unexpected {found!r}", (repr(text),))

    def parse(self):
        node = self.expr()
        if self.tok.kind != "END":
            self.fail(f"unexpected {self.tok.text!r}", ("operator", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.power()
        while self.accept("*"):
            node = BinOp("*", node, self.power())
        return node

    def power(self):
        node = self.unary()
        while self.accept("^"):
            if self.tok.kind == "OP" and self.tok.text == "-":
                self.fail("negative exponent", ("non-negative integer",))
            if self.tok.kind != "INT":
                self.fail(f"unexpected {self.tok.text or 'end of input'!r}", ("non-negative integer",))
            node = Pow(node, int(self.tok.text))
            self.i += 1
        return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "INT":
            self.i += 1
            value = Fraction(int(t.text))
            if self.accept("/"):
                if self.tok.kind != "INT":
                    self.fail("bad rational literal", ("integer denominator",))
                den = int(self.tok.text)
                if den == 0:
                    self.fail("zero denominator")
                self.i += 1
                value = value / den
            return Num(value)
        if t.kind == "NAME":
            if self.names is not None and t.text != "x" and t.text not in self.names:
                raise UnboundIdentifier(f"unbound identifier {t.text!r}", t.line, t.col)
            self.i += 1
            return Var(t.text)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("["):
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Commutator(left, right)
        found = t.text or "end of input"
        self.fail(f"unexpected {found!r}", ("number", "identifier", "'('", "'['", "'-'"))


def parse_expression(src: str, names=None):
    """Parse ``src``; if ``names`` is given every identifier other than ``x``
    must be one of them."""
    return _Parser(src, None if names is None else set(names)).parse()


def evaluate(node, A: FreeProduct) -> FPElement:
    names = A.P.basis_names
    if isinstance(node, Num):
        try:
            return A.scalar(A.field.coerce(node.value))
        except ZeroDivisionError as exc:
            raise ParseError(str(exc)) from None
    if isinstance(node, Var):
        if node.name == "x":
            return A.x_gen()
        if node.name not in names:
            raise UnboundIdentifier(f"unbound identifier {node.name!r}")
        return A.generator(names.index(node.name))
    if isinstance(node, Neg):
        return -evaluate(node.arg, A)
    if isinstance(node, BinOp):
        left, right = evaluate(node.left, A), evaluate(node.right, A)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return A.multiply(left, right)
    if isinstance(node, Pow):
        return A.power(evaluate(node.base, A), node.exponent)
    if isinstance(node, Commutator):
        return A.commutator(evaluate(node.left, A), evaluate(node.right, A))
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(src: str, A: FreeProduct) -> FPElement:
    return evaluate(parse_expression(src, A.P.basis_names), A)
