"""ASCII concrete syntax: tokenizer, recursive-descent parser, and printer.

Precedence, tightest first:

* unary prefixes ``~ ! might dia box gdia gbox``
* ``/\\`` (left associative)
* the four disjunctions ``\\/ \\/. \\\\/ \\\\/.`` at one level; a chain must
  use a single flavour, mixing them needs parentheses
* ``->`` (right associative)

Sugar expanded while parsing: ``top`` is ``~bot``, ``nbot`` is
``might bot``, ``!f`` is ``f -> bot``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import (
    BOT,
    NBOT,
    NONEMPTY,
    TOP,
    And,
    Atom,
    Bot,
    Box,
    Dep,
    Dia,
    Formula,
    GBox,
    GDia,
    GlobalOr,
    Hole,
    Impl,
    LaxGlobalOr,
    LaxSplitOr,
    Might,
    NE,
    Neg,
    SplitOr,
    recursion_room,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


KEYWORDS = {"bot", "top", "ne", "nbot", "might", "dia", "box", "gdia", "gbox"}
UNARY_WORDS = {"might": Might, "dia": Dia, "box": Box, "gdia": GDia, "gbox": GBox}

# longest operators first so that \\/. wins over \\/ and \/
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op>\\\\/\.|\\\\/|\\/\.|\\/|/\\|->|=\(|[()~!,;])
  | (?P<hole>_[1-9][0-9]*)
  | (?P<ident>[a-z][a-z0-9_]*)
    """,
    re.VERBOSE,
)

DISJUNCTIONS = {"\\/": SplitOr, "\\/.": LaxSplitOr, "\\\\/": GlobalOr, "\\\\/.": LaxGlobalOr}


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group(kind)
            if kind == "ident" and value in KEYWORDS:
                kind = "kw"
            out.append(Token(kind, value, pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.tok.pos, self.text)

    def take(self, value: str) -> Token:
        if self.tok.value != value or self.tok.kind not in ("op", "kw"):
            raise self.error(f"expected {value!r}, found {self.tok.value or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> Formula:
        f = self.implication()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.value!r}")
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.tok.kind == "op" and self.tok.value == "->":
            self.i += 1
            return Impl(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        flavour = None
        while self.tok.kind == "op" and self.tok.value in DISJUNCTIONS:
            op = self.tok.value
            if flavour is not None and op != flavour:
                raise self.error(f"mixed disjunctions {flavour!r} and {op!r} need parentheses")
            flavour = op
            self.i += 1
            left = DISJUNCTIONS[op](left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.value == "/\\":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        t = self.tok
        if t.kind == "op" and t.value == "~":
            self.i += 1
            return Neg(self.unary())
        if t.kind == "op" and t.value == "!":
            self.i += 1
            return Impl(self.unary(), BOT)
        if t.kind == "kw" and t.value in UNARY_WORDS:
            self.i += 1
            return UNARY_WORDS[t.value](self.unary())
        return self.primary()

    def primary(self) -> Formula:
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            return Atom(t.value)
        if t.kind == "hole":
            self.i += 1
            return Hole(int(t.value[1:]))
        if t.kind == "kw":
            self.i += 1
            if t.value == "bot":
                return BOT
            if t.value == "top":
                return TOP
            if t.value == "ne":
                return NONEMPTY
            if t.value == "nbot":
                return NBOT
            self.i -= 1
            raise self.error(f"keyword {t.value!r} needs an operand")
        if t.kind == "op" and t.value == "(":
            self.i += 1
            f = self.implication()
            self.take(")")
            return f
        if t.kind == "op" and t.value == "=(":
            return self.dependence()
        raise self.error(f"unexpected {t.value or 'end of input'!r}")

    def dependence(self) -> Formula:
        self.take("=(")
        if self.tok.value == ";":
            self.i += 1
            head = self.implication()
            self.take(")")
            return Dep((), head)
        items = [self.implication()]
        while self.tok.value == ",":
            self.i += 1
            items.append(self.implication())
        if self.tok.value == ";":
            self.i += 1
            head = self.implication()
            self.take(")")
            return Dep(tuple(items), head)
        self.take(")")
        if len(items) != 1:
            raise self.error("dependence atom with several arguments needs ';' before its head")
        return Dep((), items[0])


def parse(text: str) -> Formula:
    """Parse the ASCII syntax into a formula; raises ParseError on bad input."""
    return _Parser(text).parse()


# printing ---------------------------------------------------------------

_PREC_IMPL, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4

_UNARY_TEXT = {Neg: "~", Might: "might ", Dia: "dia ", Box: "box ", GDia: "gdia ", GBox: "gbox "}
_OR_TEXT = {SplitOr: "\\/", LaxSplitOr: "\\/.", GlobalOr: "\\\\/", LaxGlobalOr: "\\\\/."}


def to_text(f: Formula) -> str:
    """Render a formula so that ``parse(to_text(f)) == f``."""
    with recursion_room(f):
        return _show(f)[0]


def _wrap(part: tuple[str, int], need: int) -> str:
    s, p = part
    return s if p >= need else f"({s})"


def _show(f: Formula) -> tuple[str, int]:
    if isinstance(f, Atom):
        return f.name, _PREC_UNARY
    if isinstance(f, Hole):
        return f"_{f.index}", _PREC_UNARY
    if isinstance(f, Bot):
        return "bot", _PREC_UNARY
    if isinstance(f, NE):
        return "ne", _PREC_UNARY
    if f == TOP:
        return "top", _PREC_UNARY
    if f == NBOT:
        return "nbot", _PREC_UNARY
    if isinstance(f, Dep):
        head = to_text(f.head)
        if not f.args:
            return f"=({head})", _PREC_UNARY
        return f"=({', '.join(map(to_text, f.args))}; {head})", _PREC_UNARY
    if isinstance(f, Impl) and f.right == BOT:
        return "!" + _wrap(_show(f.left), _PREC_UNARY), _PREC_UNARY
    for cls, txt in _UNARY_TEXT.items():
        if type(f) is cls:
            return txt + _wrap(_show(f.arg), _PREC_UNARY), _PREC_UNARY
    if isinstance(f, And):
        return f"{_wrap(_show(f.left), _PREC_AND)} /\\ {_wrap(_show(f.right), _PREC_UNARY)}", _PREC_AND
    if type(f) in _OR_TEXT:
        op = _OR_TEXT[type(f)]
        left = _show(f.left)
        # a left operand of the same flavour can stay bare (left fold)
        left_s = left[0] if type(f.left) is type(f) else _wrap(left, _PREC_AND)
        return f"{left_s} {op} {_wrap(_show(f.right), _PREC_AND)}", _PREC_OR
    if isinstance(f, Impl):
        return f"{_wrap(_show(f.left), _PREC_OR)} -> {_wrap(_show(f.right), _PREC_IMPL)}", _PREC_IMPL
    raise TypeError(f"cannot print {f!r}")
