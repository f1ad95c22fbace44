"""Formula AST, parser and pretty printer for the six-valued language.

Primitive connectives only: variables, bot, top, ~ (negation), # (nabla),
& (meet), | (join).  The derived connectives D (delta), o (consistency)
and * (inconsistency) are accepted by the parser and expanded into their
definitions, so every downstream component works over the primitive
signature.

Surface grammar (ASCII):

    formula  := or_expr
    or_expr  := and_expr ('|' and_expr)*
    and_expr := unary ('&' unary)*
    unary    := ('~' | '#' | 'D' | 'o' | '*') unary | atom
    atom     := 'bot' | 'top' | variable | '(' formula ')'
    variable := [a-z][a-zA-Z0-9_]*   except reserved words

Sequents are written ``G1, G2 => S1, S2`` (either side may be empty) and
entailment queries ``G1, G2 |= a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

__all__ = [
    "Formula",
    "Var",
    "Bottom",
    "Top",
    "Neg",
    "Nabla",
    "And",
    "Or",
    "ParseError",
    "parse",
    "parse_sequent_text",
    "parse_entailment_text",
    "render",
    "complexity",
    "variables",
    "neg",
    "nabla",
    "conj",
    "disj",
    "delta_of",
    "circ_of",
    "bullet_of",
    "sort_key",
]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Neg:
    arg: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Nabla:
    arg: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render(self)


Formula = Union[Var, Bottom, Top, Neg, Nabla, And, Or]

BOT = Bottom()
TOP = Top()


def neg(f: Formula) -> Formula:
    return Neg(f)


def nabla(f: Formula) -> Formula:
    return Nabla(f)


def delta_of(f: Formula) -> Formula:
    """Delta as sugar: ~#~f."""
    return Neg(Nabla(Neg(f)))


def circ_of(f: Formula) -> Formula:
    """Consistency operator as sugar: Df | D~f."""
    return Or(delta_of(f), delta_of(Neg(f)))


def bullet_of(f: Formula) -> Formula:
    """Inconsistency operator as sugar: ~(o f)."""
    return Neg(circ_of(f))


def conj(formulas: list[Formula]) -> Formula:
    """Right-associated conjunction; TOP for the empty list."""
    if not formulas:
        return TOP
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = And(f, out)
    return out


def disj(formulas: list[Formula]) -> Formula:
    """Right-associated disjunction; BOT for the empty list."""
    if not formulas:
        return BOT
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = Or(f, out)
    return out


def complexity(f: Formula) -> int:
    """Number of connective occurrences (~, #, &, |)."""
    if isinstance(f, (Var, Bottom, Top)):
        return 0
    if isinstance(f, (Neg, Nabla)):
        return 1 + complexity(f.arg)
    return 1 + complexity(f.left) + complexity(f.right)


def variables(f: Formula) -> tuple[str, ...]:
    """Variable names occurring in ``f``, sorted."""
    seen: set[str] = set()

    def walk(g: Formula) -> None:
        if isinstance(g, Var):
            seen.add(g.name)
        elif isinstance(g, (Neg, Nabla)):
            walk(g.arg)
        elif isinstance(g, (And, Or)):
            walk(g.left)
            walk(g.right)

    walk(f)
    return tuple(sorted(seen))


_KIND_RANK = {Bottom: 0, Top: 1, Var: 2, Neg: 3, Nabla: 4, And: 5, Or: 6}


def sort_key(f: Formula):
    """Total order on formulas, used for canonical set rendering."""
    if isinstance(f, Var):
        return (2, f.name)
    if isinstance(f, (Bottom, Top)):
        return (_KIND_RANK[type(f)],)
    if isinstance(f, (Neg, Nabla)):
        return (_KIND_RANK[type(f)], sort_key(f.arg))
    return (_KIND_RANK[type(f)], sort_key(f.left), sort_key(f.right))


# --------------------------------------------------------------------------
# tokenizer / parser
# --------------------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error, carrying the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


RESERVED = {"bot", "top", "o", "D"}

_UNARY = {"~", "#", "D", "o", "*"}


@dataclass(frozen=True)
class _Token:
    kind: str  # 'var', 'bot', 'top', one of ~ # D o * & | ( ) , => |=
    text: str
    pos: int


def _tokenize(text: str) -> Iterator[_Token]:
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("=>", i):
            yield _Token("=>", "=>", i)
            i += 2
            continue
        if text.startswith("|=", i):
            yield _Token("|=", "|=", i)
            i += 2
            continue
        if c in "~#&|(),*D":
            # an uppercase D can only be the delta operator, never start a
            # variable, so it lexes as a single-character token
            yield _Token(c, c, i)
            i += 1
            continue
        if c.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in ("bot", "top", "o"):
                yield _Token(word, word, i)
            elif word[0].islower():
                yield _Token("var", word, i)
            else:
                raise ParseError(f"unbound token {word!r}", i)
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    yield _Token("end", "", n)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.pos)
        return self.advance()

    def formula(self) -> Formula:
        return self.or_expr()

    def or_expr(self) -> Formula:
        out = self.and_expr()
        while self.peek().kind == "|":
            self.advance()
            out = Or(out, self.and_expr())
        return out

    def and_expr(self) -> Formula:
        out = self.unary()
        while self.peek().kind == "&":
            self.advance()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind in _UNARY:
            self.advance()
            arg = self.unary()
            if tok.kind == "~":
                return Neg(arg)
            if tok.kind == "#":
                return Nabla(arg)
            if tok.kind == "D":
                return delta_of(arg)
            if tok.kind == "o":
                return circ_of(arg)
            return bullet_of(arg)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.advance()
        if tok.kind == "bot":
            return BOT
        if tok.kind == "top":
            return TOP
        if tok.kind == "var":
            return Var(tok.text)
        if tok.kind == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        raise ParseError(f"expected a formula, found {tok.text!r}", tok.pos)

    def formula_list(self, stop_kinds: tuple[str, ...]) -> list[Formula]:
        if self.peek().kind in stop_kinds:
            return []
        out = [self.formula()]
        while self.peek().kind == ",":
            self.advance()
            out.append(self.formula())
        return out


def parse(text: str) -> Formula:
    """Parse a single formula; derived connectives are expanded."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return f


def parse_sequent_text(text: str) -> tuple[list[Formula], list[Formula]]:
    """Parse ``G1, G2 => S1, S2``; either side may be empty."""
    p = _Parser(text)
    antecedent = p.formula_list(stop_kinds=("=>",))
    p.expect("=>")
    succedent = p.formula_list(stop_kinds=("end",))
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return antecedent, succedent


def parse_entailment_text(text: str) -> tuple[list[Formula], Formula]:
    """Parse ``G1, G2 |= a``; the premise list may be empty."""
    p = _Parser(text)
    premises = p.formula_list(stop_kinds=("|=",))
    p.expect("|=")
    goal = p.formula()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return premises, goal


# --------------------------------------------------------------------------
# pretty printer
# --------------------------------------------------------------------------

# precedence levels: atoms/unary bind tightest (3), & is 2, | is 1
def _prec(f: Formula) -> int:
    if isinstance(f, And):
        return 2
    if isinstance(f, Or):
        return 1
    return 3


def render(f: Formula) -> str:
    """Minimal-parenthesis rendering; ``parse(render(f))`` equals ``f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Neg):
        inner = render(f.arg)
        if _prec(f.arg) < 3:
            inner = f"({inner})"
        return "~" + inner
    if isinstance(f, Nabla):
        inner = render(f.arg)
        if _prec(f.arg) < 3:
            inner = f"({inner})"
        return "#" + inner
    if isinstance(f, And):
        # parser folds '&' left-associatively
        left = render(f.left)
        if _prec(f.left) < 2:
            left = f"({left})"
        right = render(f.right)
        if _prec(f.right) <= 2:
            right = f"({right})"
        return f"{left} & {right}"
    if isinstance(f, Or):
        left = render(f.left)
        if _prec(f.left) < 1:
            left = f"({left})"
        right = render(f.right)
        if _prec(f.right) <= 1:
            right = f"({right})"
        return f"{left} | {right}"
    raise TypeError(f"not a formula: {f!r}")
