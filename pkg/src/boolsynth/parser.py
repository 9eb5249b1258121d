"""Recursive-descent parser for infix boolean expressions.

Grammar (whitespace insignificant)::

    expr  := iff
    iff   := impl ("<->" impl)*
    impl  := or ("->" or)*            right-associative
    or    := xor ("|" xor)*
    xor   := and ("^" and)*
    and   := unary ("&" unary)*
    unary := "!" unary | atom
    atom  := "true" | "false" | IDENT | "(" expr ")"

Precedence, tightest first: ``!  &  ^  |  ->  <->``.
"""

from __future__ import annotations

import re

from .boolfunc import BoolFunc, VariableSet

__all__ = ["parse_expr", "ExprSyntaxError", "UnknownIdentifierError"]


class ExprSyntaxError(ValueError):
    """Malformed expression text; `position` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownIdentifierError(ValueError):
    """An identifier in the expression is not a variable of the scope."""

    def __init__(self, identifier: str, position: int):
        super().__init__(f"unknown identifier {identifier!r} (at position {position})")
        self.identifier = identifier
        self.position = position


_TOKEN_RE = re.compile(r"(<->|->|[()!&^|])|([A-Za-z_][A-Za-z0-9_]*)")
_WS_RE = re.compile(r"\s*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i = 0
    while i < len(text):
        i = _WS_RE.match(text, i).end()
        if i >= len(text):
            break
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[i]!r}", i)
        if m.group(1) is not None:
            tokens.append(("op", m.group(1), i))
        else:
            tokens.append(("ident", m.group(2), i))
        i = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, scope: VariableSet):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.scope = scope

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def accept(self, value: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "op" and val == value:
            self.pos += 1
            return True
        return False

    def expr(self) -> BoolFunc:
        return self.iff()

    def iff(self) -> BoolFunc:
        f = self.impl()
        while self.accept("<->"):
            f = f.iff(self.impl())
        return f

    def impl(self) -> BoolFunc:
        operands = [self.or_()]
        while self.accept("->"):
            operands.append(self.or_())
        f = operands[-1]
        for g in reversed(operands[:-1]):
            f = g.implies(f)
        return f

    def or_(self) -> BoolFunc:
        f = self.xor()
        while self.accept("|"):
            f = f | self.xor()
        return f

    def xor(self) -> BoolFunc:
        f = self.and_()
        while self.accept("^"):
            f = f ^ self.and_()
        return f

    def and_(self) -> BoolFunc:
        f = self.unary()
        while self.accept("&"):
            f = f & self.unary()
        return f

    def unary(self) -> BoolFunc:
        if self.accept("!"):
            return ~self.unary()
        return self.atom()

    def atom(self) -> BoolFunc:
        kind, val, pos = self.take()
        if kind == "ident":
            if val == "true":
                return BoolFunc.const(VariableSet(), True)
            if val == "false":
                return BoolFunc.const(VariableSet(), False)
            if val not in self.scope:
                raise UnknownIdentifierError(val, pos)
            return BoolFunc.var(val)
        if kind == "op" and val == "(":
            f = self.expr()
            k, v, p = self.take()
            if not (k == "op" and v == ")"):
                raise ExprSyntaxError("expected ')'", p)
            return f
        raise ExprSyntaxError(f"expected an operand, found {val!r}" if val else "unexpected end of expression", pos)


def parse_expr(text: str, scope: VariableSet) -> BoolFunc:
    """Parse `text` into a BoolFunc over exactly the given scope.

    Every identifier must belong to `scope`; the result is cylindrically
    extended so its scope equals `scope` even when some variables are
    unmentioned.
    """
    p = _Parser(text, scope)
    f = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected trailing input {val!r}", pos)
    return f.extend(scope)
