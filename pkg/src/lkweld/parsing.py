"""Text grammars for driving functions and polar deficit shapes.

Driving functions::

    p = 1 [+ term ...]
    term := (re,im) [*exp(lam*t)] *z^k        k >= 1

Deficit shapes (multiplied by epsilon by the callers)::

    shape := item {(+|-) item}
    item  := [num*] cos([k*]psi) | [num*] sin([k*]psi) | num

Whitespace is ignored everywhere.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .caratheodory import DrivingFunction, Term

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INT = re.compile(r"\d+")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}: {text!r}")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, literal: str) -> bool:
        self.skip()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str) -> None:
        if not self.peek(literal):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def accept(self, literal: str) -> bool:
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def number(self) -> float:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.fail("expected a number")
        self.pos = m.end()
        return float(m.group())

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def fail(self, message: str):
        raise ParseError(message, self.text, self.pos)


def parse_driving(text: str, horizon: float = math.inf) -> DrivingFunction:
    """Parse and validate a driving function; positivity is checked here."""
    cur = _Cursor(text)
    cur.expect("p")
    cur.expect("=")
    cur.skip()
    start = cur.pos
    if cur.number() != 1.0:
        cur.pos = start
        cur.fail("constant term must be 1")
    terms = []
    while cur.accept("+"):
        cur.expect("(")
        re_part = cur.number()
        cur.expect(",")
        im_part = cur.number()
        cur.expect(")")
        cur.expect("*")
        lam = 0.0
        if cur.accept("exp"):
            cur.expect("(")
            lam = cur.number()
            cur.expect("*")
            cur.expect("t")
            cur.expect(")")
            cur.expect("*")
        cur.expect("z")
        cur.expect("^")
        cur.skip()
        k_pos = cur.pos
        k = cur.integer()
        if k < 1:
            cur.pos = k_pos
            cur.fail("power must be at least 1")
        terms.append(Term(k, complex(re_part, im_part), lam))
    if not cur.at_end():
        cur.fail("unexpected trailing input")
    return DrivingFunction(tuple(terms), horizon=horizon)


@dataclass(frozen=True)
class DeltaShape:
    """``const + sum a_k cos(k psi) + b_k sin(k psi)`` as ``(kind, k, amp)`` items."""

    items: tuple[tuple[str, int, float], ...]

    def __call__(self, psi):
        psi = np.asarray(psi, dtype=float)
        out = np.zeros_like(psi)
        for kind, k, amp in self.items:
            if kind == "const":
                out = out + amp
            elif kind == "cos":
                out = out + amp * np.cos(k * psi)
            else:
                out = out + amp * np.sin(k * psi)
        return out

    @property
    def constant(self) -> bool:
        return all(kind == "const" for kind, _, _ in self.items)

    def __str__(self) -> str:
        parts = []
        for kind, k, amp in self.items:
            parts.append(f"{amp!r}" if kind == "const" else f"{amp!r}*{kind}({k}*psi)")
        return " + ".join(parts)


def parse_delta(text: str) -> DeltaShape:
    cur = _Cursor(text)
    items = []
    sign = 1.0
    while True:
        amp = 1.0
        kind = _trig_name(cur)
        if kind is None:
            amp = cur.number()
            if cur.accept("*"):
                kind = _trig_name(cur) or cur.fail("expected cos or sin")
            else:
                kind = "const"
        k = 0
        if kind != "const":
            cur.expect("(")
            k = 1
            if not cur.peek("psi"):
                k = cur.integer()
                cur.expect("*")
            cur.expect("psi")
            cur.expect(")")
        items.append((kind, k, sign * amp))
        if cur.accept("+"):
            sign = 1.0
        elif cur.accept("-"):
            sign = -1.0
        else:
            break
    if not cur.at_end():
        cur.fail("unexpected trailing input")
    return DeltaShape(tuple(items))


def _trig_name(cur: _Cursor) -> str | None:
    for name in ("cos", "sin"):
        if cur.accept(name):
            return name
    return None
