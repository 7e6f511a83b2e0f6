"""The element-word language.

Grammar:
    word := term { ("*" | WS) term }
    term := atom [ "^" int ]
    atom := NAME | "[" word { "," word } "]" | "(" word ")"
    NAME := letter { letter | digit }

Whitespace and '*' both separate product factors; '^' binds tighter than
product; brackets are left-normed commutators ([a,b,c] = [[a,b],c]); the
bare name `e` is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Power:
    base: object
    exp: int


@dataclass(frozen=True)
class Product:
    items: tuple


@dataclass(frozen=True)
class Bracket:
    items: tuple


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg: str):
        raise ParseError(msg, self.pos, self.text)

    def name(self) -> str:
        start = self.pos
        if not self.peek().isalpha():
            self.error("expected a name")
        while self.peek().isalnum():
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        if not self.peek().isdigit():
            self.error("expected an integer")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])


def _parse_word(s: _Scanner, stop: str):
    items = []
    while True:
        s.skip_ws()
        ch = s.peek()
        if ch == "" or ch in stop:
            break
        if ch == "*":
            if not items:
                s.error("'*' needs a left factor")
            s.pos += 1
            s.skip_ws()
            ch = s.peek()
            if ch == "" or ch in stop or ch == "*":
                s.error("'*' needs a right factor")
            continue
        items.append(_parse_term(s, stop))
    if not items:
        s.error("empty word")
    if len(items) == 1:
        return items[0]
    return Product(tuple(items))


def _parse_term(s: _Scanner, stop: str):
    atom = _parse_atom(s, stop)
    s.skip_ws()
    if s.peek() == "^":
        s.pos += 1
        s.skip_ws()
        exp = s.integer()
        return Power(atom, exp)
    return atom


def _parse_atom(s: _Scanner, stop: str):
    ch = s.peek()
    if ch == "(":
        s.pos += 1
        inner = _parse_word(s, ")")
        if s.peek() != ")":
            s.error("unbalanced parenthesis")
        s.pos += 1
        return inner
    if ch == "[":
        s.pos += 1
        parts = [_parse_word(s, ",]")]
        while s.peek() == ",":
            s.pos += 1
            parts.append(_parse_word(s, ",]"))
        if s.peek() != "]":
            s.error("unbalanced bracket")
        s.pos += 1
        if len(parts) < 2:
            s.error("commutator bracket needs at least two entries")
        return Bracket(tuple(parts))
    if ch.isalpha():
        nm = s.name()
        if nm == "e":
            return Identity()
        return Gen(nm)
    s.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")


def parse_word(text: str):
    s = _Scanner(text)
    node = _parse_word(s, "")
    s.skip_ws()
    if s.pos != len(text):
        s.error("trailing input")
    return node


def format_ast(node) -> str:
    if isinstance(node, Identity):
        return "e"
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Power):
        base = format_ast(node.base)
        if isinstance(node.base, Product):
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, Product):
        return " ".join(
            f"({format_ast(it)})" if isinstance(it, Product) else format_ast(it)
            for it in node.items
        )
    if isinstance(node, Bracket):
        return "[" + ",".join(format_ast(it) for it in node.items) + "]"
    raise TypeError(f"not a word AST node: {node!r}")


def format_normal_form(nf) -> str:
    """Render a NormalForm as words the parser accepts; identity prints as 'e'."""
    basis = nf.basis
    parts = []
    for i, e in enumerate(nf.exps):
        if not e:
            continue
        name = basis.entry_name(i)
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts) if parts else "e"
