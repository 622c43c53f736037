"""Class expressions: tokenizer, recursive-descent parser and canonical renderer.

Grammar (``^`` binds tightest, then ``*``, then ``+``; all left associative)::

    expr    := term ('+' term)*
    term    := factor ('*' factor)*
    factor  := primary ('^' INT)*
    primary := '0' | '1' | 'a' | 'u' | '(' expr ')'
             | 'RPs' '(' INT ',' INT ')' | 'd' '(' INT ',' INT ')'
             | 'x' '(' INT ')' | 'Gamma' '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(message)
        self.message = message
        self.pos = pos
        self.text = text

    def __str__(self):
        if not self.text:
            return f"{self.message} at position {self.pos}"
        return f"{self.message} at position {self.pos}\n  {self.text}\n  {' ' * self.pos}^"


# AST -------------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class RPs:
    m: int
    j: int


@dataclass(frozen=True)
class D:
    i: int
    j: int


@dataclass(frozen=True)
class X:
    g: int


@dataclass(frozen=True)
class A:
    pass


@dataclass(frozen=True)
class U:
    pass


@dataclass(frozen=True)
class Gamma:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Const | RPs | D | X | A | U | Gamma | Add | Mul | Pow


# tokens ----------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^(),]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# parser ----------------------------------------------------------------------------

_FUNCS = {"RPs": 2, "d": 2, "x": 1, "Gamma": 1}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def error(self, msg: str, tok: Token | None = None):
        tok = self.tok if tok is None else tok
        raise ParseError(msg, tok.pos, self.text)

    def eat(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            got = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            self.error(f"expected {text!r}, got {got}")
        tok = self.tok
        self.k += 1
        return tok

    def parse(self) -> Node:
        if self.tok.kind == "end":
            self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.text == "+":
            self.k += 1
            node = Add(node, self.term())
        if self.tok.text == "-":
            self.error("'-' is not supported (over F_2 write '+')")
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.text == "*":
            self.k += 1
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.primary()
        while self.tok.text == "^":
            self.k += 1
            if self.tok.kind != "int":
                self.error("exponent must be a nonnegative integer")
            node = Pow(node, int(self.tok.text))
            self.k += 1
        return node

    def _int(self) -> int:
        if self.tok.kind != "int":
            got = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            self.error(f"expected an integer, got {got}")
        v = int(self.tok.text)
        self.k += 1
        return v

    def primary(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            if tok.text not in ("0", "1"):
                self.error(f"only the literals 0 and 1 are allowed, got {tok.text}")
            self.k += 1
            return Const(int(tok.text))
        if tok.text == "(":
            self.k += 1
            node = self.expr()
            self.eat(")")
            return node
        if tok.kind == "name":
            if tok.text == "a":
                self.k += 1
                return A()
            if tok.text == "u":
                self.k += 1
                return U()
            if tok.text in _FUNCS:
                return self.call(tok)
            self.error(f"unknown name {tok.text!r}")
        if tok.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok.text!r}")

    def call(self, name: Token) -> Node:
        self.k += 1
        self.eat("(")
        want = _FUNCS[name.text]
        if name.text == "Gamma":
            arg = self.expr()
            self.eat(")")
            return Gamma(arg)
        args = [self._int()]
        while self.tok.text == ",":
            self.k += 1
            args.append(self._int())
        if self.tok.text != ")":
            self.error(f"expected ',' or ')' in {name.text}(...)")
        if len(args) != want:
            self.error(f"{name.text} expects {want} argument{'s' if want > 1 else ''}, "
                       f"got {len(args)}", name)
        self.k += 1
        if name.text == "RPs":
            return RPs(*args)
        if name.text == "d":
            return D(*args)
        return X(args[0])


def parse(text: str) -> Node:
    return _Parser(text).parse()


def render(node: Node) -> str:
    if isinstance(node, Const):
        return str(node.value)
    if isinstance(node, RPs):
        return f"RPs({node.m},{node.j})"
    if isinstance(node, D):
        return f"d({node.i},{node.j})"
    if isinstance(node, X):
        return f"x({node.g})"
    if isinstance(node, A):
        return "a"
    if isinstance(node, U):
        return "u"
    if isinstance(node, Gamma):
        return f"Gamma({render(node.arg)})"
    if isinstance(node, Add):
        right = render(node.right)
        return f"{render(node.left)} + " + (f"({right})" if isinstance(node.right, Add) else right)
    if isinstance(node, Mul):
        left = render(node.left)
        right = render(node.right)
        if isinstance(node.left, Add):
            left = f"({left})"
        if isinstance(node.right, (Add, Mul)):
            right = f"({right})"
        return f"{left}*{right}"
    if isinstance(node, Pow):
        base = render(node.base)
        if isinstance(node.base, (Add, Mul)):
            base = f"({base})"
        return f"{base}^{node.exp}"
    raise TypeError(f"not an expression node: {node!r}")
