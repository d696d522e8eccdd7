"""Recipe terms for the corpus generator.

A recipe is a nested term such as::

    join2(even, leaf(C6), leaf(bipartite(6, seed)))
    kjoin(p10_01, leaf(C4), leaf(P3))

Grammar: ``term := name [ "(" arg { "," arg } ")" ]`` and
``arg := term | integer``.
"""

import re
from dataclasses import dataclass
from typing import Optional, Union

from core.errors import FormatError

Arg = Union["Term", int]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)(?![A-Za-z_])|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),]))")


@dataclass(frozen=True)
class Term:
    name: str
    args: tuple[Arg, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"

    def arg_name(self, i: int) -> str:
        """Argument i, which must be a bare name (a parity, a pattern, a fixture)."""
        arg = self.args[i]
        if not isinstance(arg, Term) or arg.args:
            raise FormatError(f"argument {i + 1} of {self.name} must be a name, got {arg}")
        return arg.name

    def arg_int(self, i: int, default: Optional[int] = None) -> int:
        if i >= len(self.args):
            if default is None:
                raise FormatError(f"{self.name} needs at least {i + 1} arguments")
            return default
        arg = self.args[i]
        if not isinstance(arg, int):
            raise FormatError(f"argument {i + 1} of {self.name} must be an integer, got {arg}")
        return arg

    def arg_term(self, i: int) -> "Term":
        arg = self.args[i]
        if not isinstance(arg, Term):
            raise FormatError(f"argument {i + 1} of {self.name} must be a term, got {arg}")
        return arg

    def expect_arity(self, *allowed: int) -> None:
        if len(self.args) not in allowed:
            raise FormatError(f"{self.name} takes {' or '.join(map(str, allowed))} arguments, got {len(self.args)}")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise FormatError(f"unexpected character {text[pos:pos + 1]!r} at offset {pos} in recipe")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, punct: Optional[str] = None):
        kind, value = self.peek()
        if kind is None:
            raise FormatError("recipe ends unexpectedly")
        if punct is not None and value != punct:
            raise FormatError(f"expected {punct!r} in recipe, got {value!r}")
        self.pos += 1
        return kind, value

    def arg(self) -> Arg:
        kind, value = self.peek()
        if kind == "int":
            self.take()
            return int(value)
        return self.term()

    def term(self) -> Term:
        kind, name = self.take()
        if kind != "name":
            raise FormatError(f"expected a name in recipe, got {name!r}")
        if self.peek()[1] != "(":
            return Term(name)
        self.take("(")
        args = [self.arg()]
        while self.peek()[1] == ",":
            self.take(",")
            args.append(self.arg())
        self.take(")")
        return Term(name, tuple(args))


def parse_recipe(text: str) -> Term:
    parser = _Parser(_tokenize(text))
    if not parser.tokens:
        raise FormatError("empty recipe")
    term = parser.term()
    if parser.pos != len(parser.tokens):
        raise FormatError(f"trailing input in recipe after {term}")
    return term


def parse_pattern(name: str) -> tuple[tuple[int, ...], ...]:
    """``p10_01`` -> ((1, 0), (0, 1)); rows are separated by underscores."""
    if not re.fullmatch(r"p[01]+(_[01]+)*", name):
        raise FormatError(f"interface pattern must look like p10_01, got {name!r}")
    return tuple(tuple(int(ch) for ch in row) for row in name[1:].split("_"))
