"""Textual form of the function algebra.

Atoms: delta, mu, zeta, I, phi, xi{e}, J{e}, sigma{e}, psi{e}.
Composites: conv(f^l, g^l, ..., mu^d) where the operands are atoms with
optional positive exponents.  Parameters in braces may be integers
(exact path) or floats (double path).  `parse_fn(print_fn(f))` is
structurally equal to f for every catalog function; custom atoms print
as `custom:<name>` and are rejected by the parser.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arith import (
    DELTA,
    IDENTITY,
    MU,
    PHI,
    ZETA,
    ArithFn,
    convolution_power,
    convolve,
    jordan,
    psi,
    sigma,
    xi,
)

__all__ = ["FnSyntaxError", "parse_fn", "print_fn"]

_PLAIN_ATOMS = {
    "delta": DELTA,
    "mu": MU,
    "zeta": ZETA,
    "I": IDENTITY,
    "phi": PHI,
}
_PARAM_ATOMS = {"xi": xi, "J": jordan, "sigma": sigma, "psi": psi}

_DISPLAY = {"delta": "delta", "mobius": "mu", "zeta": "zeta", "identity": "I",
            "phi": "phi", "xi": "xi", "jordan": "J", "sigma": "sigma", "psi": "psi"}

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z]+)|(?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    r"|(?P<punct>[(){}^,]))"
)


class FnSyntaxError(ValueError):
    """Parse failure with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out: list[_Token] = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            stripped = text[i:].lstrip()
            if not stripped:
                break
            raise FnSyntaxError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        for kind in ("name", "num", "punct"):
            got = m.group(kind)
            if got is not None:
                out.append(_Token(kind, got, m.start(kind)))
                break
        i = m.end()
    out.append(_Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def take(self) -> _Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        t = self.take()
        if t.text != text:
            raise FnSyntaxError(f"expected {text!r}, found {t.text!r}", t.pos)
        return t

    def parse(self) -> ArithFn:
        f = self.fn()
        t = self.peek()
        if t.kind != "end":
            raise FnSyntaxError(f"trailing input {t.text!r}", t.pos)
        return f

    def fn(self) -> ArithFn:
        t = self.peek()
        if t.kind == "name" and t.text == "conv":
            return self.conv()
        return self.item()

    def conv(self) -> ArithFn:
        self.expect("conv")
        self.expect("(")
        out = DELTA
        while True:
            out = convolve(out, self.item())
            t = self.take()
            if t.text == ")":
                return out
            if t.text != ",":
                raise FnSyntaxError(f"expected ',' or ')', found {t.text!r}", t.pos)

    def item(self) -> ArithFn:
        t = self.take()
        if t.kind != "name":
            raise FnSyntaxError(f"expected a function name, found {t.text!r}", t.pos)
        if t.text == "conv":
            raise FnSyntaxError("nested conv is not part of the syntax", t.pos)
        if t.text in _PARAM_ATOMS:
            self.expect("{")
            num = self.take()
            if num.kind != "num":
                raise FnSyntaxError(f"expected a number, found {num.text!r}", num.pos)
            self.expect("}")
            base = _PARAM_ATOMS[t.text](_parse_number(num))
        elif t.text in _PLAIN_ATOMS:
            base = _PLAIN_ATOMS[t.text]
        else:
            raise FnSyntaxError(f"unknown function {t.text!r}", t.pos)
        if self.peek().text == "^":
            self.take()
            e = self.take()
            if e.kind != "num" or not re.fullmatch(r"\d+", e.text):
                raise FnSyntaxError(f"expected a nonnegative integer exponent, found {e.text!r}", e.pos)
            return convolution_power(base, int(e.text))
        return base


def _parse_number(tok: _Token) -> int | float:
    if re.fullmatch(r"[-+]?\d+", tok.text):
        return int(tok.text)
    return float(tok.text)


def parse_fn(text: str) -> ArithFn:
    """Parse the textual syntax into a canonical ArithFn."""
    return _Parser(text).parse()


def _atom_str(spec, mult: int, in_conv: bool) -> str:
    if spec.is_custom:
        base = f"custom:{spec.name}"
    else:
        base = _DISPLAY[spec.name]
        if spec.eps is not None:
            base += "{" + _eps_str(spec.eps) + "}"
    return f"{base}^{mult}" if in_conv else base


def _eps_str(eps) -> str:
    return str(eps) if isinstance(eps, int) else repr(eps)


def print_fn(f: ArithFn) -> str:
    """Canonical textual form; inverse of parse_fn for catalog functions."""
    if not f.ops:
        return "delta"
    if len(f.ops) == 1 and f.ops[0][1] == 1:
        return _atom_str(f.ops[0][0], 1, in_conv=False)
    return "conv(" + ", ".join(_atom_str(s, m, in_conv=True) for s, m in f.ops) + ")"
