"""Small expression language for pulse sequences.

Grammar (keywords case-insensitive)::

    expr    := primary ( "[" expr "]" )*
    primary := literal | proj | named | classspec
    literal := /[IXYZ]+/              # written last-applied first
    proj    := "px" | "py" | "pz"
    named   := ("cdd" | "ga8" | "oudd") "(" int ")"
             | "pdd" | "ga8a" | "ga8b"
    classspec := "cpdd" "{" int "," int "," int "}"

``a[b]`` is concatenation with ``b`` nested inside ``a``; chained brackets
associate leftward, so ``a[b][c]`` means ``(a[b])[c]``. Literals elaborate
to plain pulses with no provenance, so they support algebra and structure
checks but carry no class. Errors report the byte offset of the offending
token.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .pauli import PauliAxis, PhasedPauli
from .sequence import (
    CPDDClass,
    PulseSequence,
    canonical_order,
    concat,
    cpdd_from_order,
    projection,
)

__all__ = [
    "ParseError",
    "Literal",
    "Projection",
    "Concat",
    "Named",
    "ClassSpec",
    "SeqExpr",
    "parse",
    "elaborate",
    "to_text",
]


class ParseError(ValueError):
    """Malformed sequence expression, with the byte offset of the problem."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Literal:
    text: str  # paper order, last-applied first


@dataclass(frozen=True)
class Projection:
    axis: PauliAxis


@dataclass(frozen=True)
class Concat:
    outer: "SeqExpr"
    inner: "SeqExpr"


@dataclass(frozen=True)
class Named:
    name: str
    param: Optional[int] = None


@dataclass(frozen=True)
class ClassSpec:
    n_x: int
    n_y: int
    n_z: int


SeqExpr = Union[Literal, Projection, Concat, Named, ClassSpec]

_PROJ_AXES = {"px": PauliAxis.X, "py": PauliAxis.Y, "pz": PauliAxis.Z}

# name -> (requires parameter, (lo, hi) range)
_NAMED = {
    "cdd": (True, (1, 8)),
    "ga8": (True, (1, 5)),
    "oudd": (True, (1, 10)),
    "pdd": (False, None),
    "ga8a": (False, None),
    "ga8b": (False, None),
}

_MAX_CLASS_TOTAL = 16


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "int" | one of "[](){},"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "[](){},":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.offset)
        return tok

    def parse_expr(self) -> SeqExpr:
        expr = self.parse_primary()
        while (tok := self.peek()) is not None and tok.kind == "[":
            self.next()
            inner = self.parse_expr()
            self.expect("]")
            expr = Concat(expr, inner)
        return expr

    def parse_primary(self) -> SeqExpr:
        tok = self.next()
        if tok.kind != "name":
            raise ParseError(f"expected a sequence term, found {tok.text!r}", tok.offset)
        low = tok.text.lower()
        if low in _PROJ_AXES:
            return Projection(_PROJ_AXES[low])
        if low == "cpdd":
            return self.parse_classspec(tok)
        if low in _NAMED:
            return self.parse_named(tok, low)
        if all(c in "IXYZ" for c in tok.text):
            return Literal(tok.text)
        raise ParseError(f"unknown name {tok.text!r}", tok.offset)

    def parse_named(self, tok: _Token, low: str) -> Named:
        needs_param, bounds = _NAMED[low]
        nxt = self.peek()
        if nxt is not None and nxt.kind == "(":
            self.next()
            val_tok = self.expect("int")
            self.expect(")")
            if not needs_param:
                raise ParseError(f"{low!r} takes no parameter", val_tok.offset)
            value = int(val_tok.text)
            lo, hi = bounds
            if not lo <= value <= hi:
                raise ParseError(
                    f"{low!r} level must be in [{lo}, {hi}]", val_tok.offset
                )
            return Named(low, value)
        if needs_param:
            raise ParseError(f"{low!r} requires an integer level", tok.offset)
        return Named(low)

    def parse_classspec(self, tok: _Token) -> ClassSpec:
        self.expect("{")
        values = [int(self.expect("int").text)]
        for _ in range(2):
            self.expect(",")
            values.append(int(self.expect("int").text))
        close = self.expect("}")
        total = sum(values)
        if total < 1:
            raise ParseError("class counts must not all be zero", tok.offset)
        if total > _MAX_CLASS_TOTAL:
            raise ParseError(
                f"class total must be <= {_MAX_CLASS_TOTAL}", close.offset
            )
        return ClassSpec(*values)


def parse(text: str) -> SeqExpr:
    """Parse a sequence expression; raises ParseError with a byte offset."""
    parser = _Parser(text)
    expr = parser.parse_expr()
    trailing = parser.peek()
    if trailing is not None:
        raise ParseError(f"trailing input {trailing.text!r}", trailing.offset)
    return expr


# Named schemes as projection orders, innermost first. GA8b keeps the
# structure of its published definition Z(XYXY)Z(XYXY), which concatenates
# two z projections around one y projection.
_NAMED_ORDERS = {
    "pdd": [PauliAxis.Y, PauliAxis.X],
    "ga8a": [PauliAxis.Z, PauliAxis.Y, PauliAxis.X],
    "ga8b": [PauliAxis.Y, PauliAxis.Z, PauliAxis.Z],
}


def _named_order(name: str, param: Optional[int]) -> list[PauliAxis]:
    if name == "cdd":
        return [PauliAxis.Y, PauliAxis.X] * param
    if name == "ga8":
        return [PauliAxis.Z, PauliAxis.Y, PauliAxis.X] * param
    if name == "oudd":
        from .sequence import oudd

        return canonical_order(oudd(param))
    return list(_NAMED_ORDERS[name])


def elaborate(expr: SeqExpr) -> PulseSequence:
    """Fold an expression tree into a concrete pulse sequence."""
    if isinstance(expr, Literal):
        pulses = tuple(
            PhasedPauli(0, PauliAxis[c]) for c in reversed(expr.text)
        )
        return PulseSequence(pulses)
    if isinstance(expr, Projection):
        return projection(expr.axis)
    if isinstance(expr, Concat):
        return concat(elaborate(expr.outer), elaborate(expr.inner))
    if isinstance(expr, Named):
        return cpdd_from_order(_named_order(expr.name, expr.param))
    if isinstance(expr, ClassSpec):
        cls = CPDDClass(expr.n_x, expr.n_y, expr.n_z)
        return cpdd_from_order(canonical_order(cls))
    raise TypeError(f"not a sequence expression: {expr!r}")


def to_text(seq: PulseSequence) -> str:
    """Axis string, last-applied pulse first; parses back to the same axes."""
    return seq.paper_order()
