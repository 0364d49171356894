"""Parse and render b-functions as text.

Grammar (whitespace ignored)::

    spec    := coeffs | product
    coeffs  := "[" rational ("," rational)* "]"      (ascending degree)
    product := ["-"] [rational] factor+
    factor  := atom ["^" integer]
    atom    := "(" "s" [("+" | "-") rational] ")" | "s" | "[" product "]"
    rational:= integer ["/" integer]

Examples: ``(s+1)(s+5)(s+9)``, ``4(s+1)(s+3/2)``,
``(s+1)^8[(s+2/3)(s+4/3)]^4``, ``[2, 3, 1]`` (that is ``s^2 + 3s + 2``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import UniPoly, rational_roots

__all__ = ["BSpecError", "parse_b_spec", "render_factored"]

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(.))")


class BSpecError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        for m in _TOKEN.finditer(text):
            num, ch = m.groups()
            if num is not None:
                self.tokens.append(("num", Fraction(num)))
            elif ch is not None and not ch.isspace():
                self.tokens.append(("ch", ch))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, ch=None):
        tok = self.peek()
        if tok[0] is None:
            raise BSpecError("unexpected end of input")
        if ch is not None and tok != ("ch", ch):
            raise BSpecError(f"expected {ch!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def rational(self) -> Fraction:
        sign = 1
        if self.peek() == ("ch", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("ch", "+"):
            self.take()
        kind, val = self.take()
        if kind != "num":
            raise BSpecError(f"expected a number, found {val!r}")
        return sign * val

    def integer(self) -> int:
        kind, val = self.take()
        if kind != "num" or val.denominator != 1:
            raise BSpecError("exponent must be a nonnegative integer")
        return int(val)

    def product(self, closing=None) -> UniPoly:
        out = UniPoly([1])
        if self.peek() == ("ch", "-"):
            self.take()
            out = UniPoly([-1])
        if self.peek()[0] == "num":
            out = out * self.take()[1]
        count = 0
        while self.peek()[0] is not None and self.peek() != ("ch", closing):
            out = out * self.factor()
            count += 1
        if count == 0:
            raise BSpecError("expected at least one factor")
        return out

    def factor(self) -> UniPoly:
        tok = self.peek()
        if tok == ("ch", "("):
            self.take()
            self.take("s")
            shift = Fraction(0)
            if self.peek() != ("ch", ")"):
                shift = self.rational()
            self.take(")")
            atom = UniPoly([shift, 1])
        elif tok == ("ch", "s"):
            self.take()
            atom = UniPoly.s()
        elif tok == ("ch", "["):
            self.take()
            atom = self.product("]")
            self.take("]")
        else:
            raise BSpecError(f"unexpected {tok[1]!r}")
        if self.peek() == ("ch", "^"):
            self.take()
            atom = atom ** self.integer()
        return atom


def parse_b_spec(text: str) -> UniPoly:
    text = text.strip()
    if not text:
        raise BSpecError("empty b-function")
    if "s" not in text:
        body = text[1:-1] if text.startswith("[") and text.endswith("]") else text
        try:
            coeffs = [Fraction(part.strip()) for part in body.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise BSpecError(f"bad coefficient list: {exc}") from None
        p = UniPoly(coeffs)
        if p.is_zero():
            raise BSpecError("b must be nonzero")
        return p
    parser = _Parser(text)
    p = parser.product()
    if parser.peek()[0] is not None:
        raise BSpecError(f"trailing input at {parser.peek()[1]!r}")
    if p.is_zero():
        raise BSpecError("b must be nonzero")
    return p


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_factored(p: UniPoly) -> str:
    """``c(s+a)^k...`` with the non-split residual, if any, appended in brackets."""
    rr = rational_roots(p)
    counts: dict[Fraction, int] = {}
    for r in rr.roots:
        counts[r] = counts.get(r, 0) + 1
    parts = []
    for r in sorted(counts, reverse=True):
        a = -r
        body = "s" if a == 0 else (f"s+{_fmt(a)}" if a > 0 else f"s-{_fmt(-a)}")
        k = counts[r]
        atom = body if a == 0 else f"({body})"
        parts.append(atom + (f"^{k}" if k > 1 else ""))
    lead = rr.residual.lead if rr.residual.degree == 0 else Fraction(1)
    if rr.residual.degree > 0:
        parts.append(f"[{rr.residual.render('s')}]")
    prefix = "" if lead == 1 and parts else _fmt(lead)
    if lead == -1 and parts:
        prefix = "-"
    return prefix + "".join(parts)
