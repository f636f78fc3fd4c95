"""Recursive-descent parser for gross-number expressions.

Grammar (``^`` binds tighter than ``*``/``/``, which bind tighter than
``+``/``-``)::

    expr     := term (('+' | '-') term)*
    term     := ['-' | '+'] factor (('*' | '/') factor)*
    factor   := atom ['^' exponent]
    atom     := INTEGER | 'g' | '(' expr ')'
    exponent := ['-' | '+'] (INTEGER ['/' INTEGER] | 'g' | '(' expr ')')

A bare ``p/q`` after ``^`` is one rational exponent, so ``g^1/2`` is the
square root of g.  ``①`` is accepted in place of ``g``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import LexError, ParseError
from .grossone import G, GrossLinear, GrossValue, const, gv_pow

__all__ = ["TokenKind", "Token", "tokenize", "parse"]


class TokenKind(enum.Enum):
    INTEGER = "Integer"
    SLASH = "Slash"
    PLUS = "Plus"
    MINUS = "Minus"
    STAR = "Star"
    CARET = "Caret"
    LPAREN = "LParen"
    RPAREN = "RParen"
    GROSS = "GrossSymbol"
    END = "End"


_SINGLE = {
    "/": TokenKind.SLASH,
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "^": TokenKind.CARET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "g": TokenKind.GROSS,
    "①": TokenKind.GROSS,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    position: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens (no END sentinel)."""
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "0123456789":
            j = i
            while j < n and text[j] in "0123456789":
                j += 1
            tokens.append(Token(TokenKind.INTEGER, text[i:j], i))
            i = j
        elif ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, i))
            i += 1
        else:
            raise LexError(i, ch)
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.tokens.append(Token(TokenKind.END, "", len(text)))
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: TokenKind, what: str) -> Token:
        if self.tok.kind is not kind:
            raise ParseError(self.tok.position, what, self.tok.lexeme)
        return self.advance()

    def expr(self) -> GrossValue:
        value = self.term()
        while self.tok.kind in (TokenKind.PLUS, TokenKind.MINUS):
            op = self.advance().kind
            rhs = self.term()
            value = value + rhs if op is TokenKind.PLUS else value - rhs
        return value

    def term(self) -> GrossValue:
        negate = False
        if self.tok.kind in (TokenKind.PLUS, TokenKind.MINUS):
            negate = self.advance().kind is TokenKind.MINUS
        value = self.factor()
        while self.tok.kind in (TokenKind.STAR, TokenKind.SLASH):
            op = self.advance().kind
            rhs = self.factor()
            value = value * rhs if op is TokenKind.STAR else value / rhs
        return -value if negate else value

    def factor(self) -> GrossValue:
        base = self.atom()
        if self.tok.kind is TokenKind.CARET:
            self.advance()
            return gv_pow(base, self.exponent())
        return base

    def atom(self) -> GrossValue:
        t = self.tok
        if t.kind is TokenKind.INTEGER:
            self.advance()
            return const(int(t.lexeme))
        if t.kind is TokenKind.GROSS:
            self.advance()
            return G
        if t.kind is TokenKind.LPAREN:
            self.advance()
            value = self.expr()
            self.expect(TokenKind.RPAREN, "')'")
            return value
        raise ParseError(t.position, "number, 'g' or '('", t.lexeme)

    def exponent(self) -> GrossLinear:
        negate = False
        if self.tok.kind in (TokenKind.PLUS, TokenKind.MINUS):
            negate = self.advance().kind is TokenKind.MINUS
        t = self.tok
        if t.kind is TokenKind.INTEGER:
            self.advance()
            q = Fraction(int(t.lexeme))
            if self.tok.kind is TokenKind.SLASH:
                self.advance()
                den = self.expect(TokenKind.INTEGER, "integer denominator")
                if int(den.lexeme) == 0:
                    raise ParseError(den.position, "nonzero denominator", den.lexeme)
                q /= int(den.lexeme)
            e = GrossLinear(0, q)
        elif t.kind is TokenKind.GROSS:
            self.advance()
            e = GrossLinear(1, 0)
        elif t.kind is TokenKind.LPAREN:
            self.advance()
            e = self.expr().as_linear()
            self.expect(TokenKind.RPAREN, "')'")
        else:
            raise ParseError(t.position, "exponent", t.lexeme)
        return -e if negate else e


def parse(text: str) -> GrossValue:
    """Parse ``text`` into a canonical :class:`GrossValue`.

    >>> str(parse("(20/27)^(g-1)"))
    '(20/27)^(g-1)'
    """
    p = _Parser(text)
    value = p.expr()
    if p.tok.kind is not TokenKind.END:
        raise ParseError(p.tok.position, "operator or end of input", p.tok.lexeme)
    return value
