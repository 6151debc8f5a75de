"""Parsing and printing for the text forms used by the command line and the
bundled identity corpus.

Polynomials: terms `c*X^e`, `c*X`, `X^e`, `X`, `c`, joined by `+` or `-`
(minus is meaningful for p > 2).  Parenthesised products with powers are
accepted on input, e.g. `(1+X)^2*(1+X+X^2)`, so printed table identities
can be transcribed verbatim.  Fractions are `numerator/denominator` where
either side is a polynomial or such a product.  Free-variable words are
`x1x2x1`; free series are `coeff*word` terms joined by `+`.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .ncseries import NCSeries
from .rational import FpPoly, PolyFraction


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            raise ParseError("expected %r" % ch, self.pos)

    def integer(self):
        self.skip_ws()
        m = re.match(r"\d+", self.text[self.pos :])
        if not m:
            raise ParseError("expected a number", self.pos)
        self.pos += m.end()
        return int(m.group())

    def done(self):
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_term(s: _Scanner, p):
    """One additive term: coefficient and/or X power."""
    coeff = 1
    exp = 0
    saw = False
    if s.peek().isdigit():
        coeff = s.integer()
        saw = True
        if not s.take("*") and s.peek() not in ("X", "x"):
            return coeff, 0
    ch = s.peek()
    if ch == "X":
        s.pos += 1
        saw = True
        exp = 1
        if s.take("^"):
            exp = s.integer()
    if not saw:
        raise ParseError("expected a term", s.pos)
    return coeff, exp


def _parse_poly(s: _Scanner, p) -> FpPoly:
    coeffs = {}
    sign = 1
    if s.take("-"):
        sign = -1
    elif s.take("+"):
        pass
    while True:
        c, e = _parse_term(s, p)
        coeffs[e] = coeffs.get(e, 0) + sign * c
        if s.take("+"):
            sign = 1
        elif s.take("-"):
            sign = -1
        else:
            break
    top = max(coeffs) if coeffs else -1
    return FpPoly([coeffs.get(i, 0) for i in range(top + 1)], p)


def _parse_product(s: _Scanner, p) -> FpPoly:
    """A parenthesised product such as (1+X)^2*(1+X+X^2), or a bare
    polynomial."""
    if s.peek() != "(":
        return _parse_poly(s, p)
    result = FpPoly.one(p)
    while True:
        s.expect("(")
        # a parenthesised factor may itself be a product: ((1+X)*(1-X))
        f = _parse_product(s, p) if s.peek() == "(" else _parse_poly(s, p)
        s.expect(")")
        if s.take("^"):
            f = f ** s.integer()
        result = result * f
        if not s.take("*"):
            # adjacency also means multiplication: (1+X)(1+X+X^2)
            if s.peek() != "(":
                break
    return result


def parse_poly(text: str, p) -> FpPoly:
    s = _Scanner(text)
    out = _parse_product(s, p)
    if not s.done():
        raise ParseError("trailing input", s.pos)
    return out


def parse_fraction(text: str, p) -> PolyFraction:
    s = _Scanner(text)
    num = _parse_product(s, p)
    if s.take("/"):
        den = _parse_product(s, p)
    else:
        den = FpPoly.one(p)
    if not s.done():
        raise ParseError("trailing input", s.pos)
    return PolyFraction(num, den)


def print_poly(f: FpPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e, c in enumerate(f.coeffs):
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else "%d*" % c
            parts.append("%sX^%d" % (head, e) if e > 1 else "%sX" % head)
    return " + ".join(parts)


def print_fraction(fr: PolyFraction) -> str:
    num = print_poly(fr.num)
    if fr.den.degree < 1:
        return num
    return "(%s)/(%s)" % (num, print_poly(fr.den))


_WORD_RE = re.compile(r"x(\d+)")


def parse_word(text: str, k):
    """A juxtaposed word such as x1x2x1 (variables are 1-based in text)."""
    pos = 0
    letters = []
    text = text.strip()
    while pos < len(text):
        m = _WORD_RE.match(text, pos)
        if not m:
            raise ParseError("expected a variable like x1", pos)
        i = int(m.group(1))
        if not 1 <= i <= k:
            raise ParseError("variable x%d outside x1..x%d" % (i, k), pos)
        letters.append(i - 1)
        pos = m.end()
    return tuple(letters)


def parse_nc_series(text: str, k, order, p, lift=False) -> NCSeries:
    coeffs = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError("empty term")
        if "*" in chunk:
            c_txt, w_txt = chunk.split("*", 1)
            c = int(c_txt)
            w = parse_word(w_txt, k)
        elif chunk.isdigit():
            c, w = int(chunk), ()
        else:
            c, w = 1, parse_word(chunk, k)
        coeffs[w] = coeffs.get(w, 0) + c
    return NCSeries(coeffs, k, order, p, lift)


def print_nc_series(a: NCSeries) -> str:
    items = sorted(a.coeffs.items(), key=lambda wc: (len(wc[0]), wc[0]))
    parts = []
    for w, c in items:
        word = "".join("x%d" % (i + 1) for i in w)
        if not word:
            parts.append(str(c))
        elif c == 1:
            parts.append(word)
        else:
            parts.append("%d*%s" % (c, word))
    return " + ".join(parts) if parts else "0"
