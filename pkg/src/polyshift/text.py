"""Polynomial text format.

Grammar (whitespace ignored, implicit multiplication rejected)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INTEGER]
    atom   := INTEGER ['/' INTEGER] | VARIABLE | '(' expr ')'

The printer emits terms by descending degree with explicit signs, e.g.
``2*x^3 - 1/2*x + 4``; parsing the printed form gives back the same value.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["ParseError", "parse_terms", "parse_univariate", "format_terms"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class ParseError(ValueError):
    """Syntax or vocabulary error; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # only trailing whitespace left
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


# Sparse multivariate polynomials during parsing: {exponent tuple: Fraction}.

def _add(a, b, sign=1):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.vars = tuple(variables)
        self.tokens = _tokenize(text)
        self.i = 0
        self.nvars = len(self.vars)

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        raise ParseError(msg, tok[2], self.text)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def const(self, c):
        return {(0,) * self.nvars: Fraction(c)} if c else {}

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] in ("num", "var") or (tok[0] == "op" and tok[1] == "("):
                self.error("implicit multiplication is not allowed")
            self.error(f"unexpected {tok[1]!r}")
        return result

    def expr(self):
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = {e: -c for e, c in acc.items()}
        while self.at_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            acc = _add(acc, self.term(), sign)
        return acc

    def term(self):
        acc = self.factor()
        while self.at_op("*"):
            self.take()
            acc = _mul(acc, self.factor())
        return acc

    def factor(self):
        base = self.atom()
        if self.at_op("^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer literal", tok)
            result = self.const(1)
            for _ in range(tok[1]):
                result = _mul(result, base)
            return result
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            if self.at_op("/"):
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.error("expected integer denominator", den)
                if den[1] == 0:
                    self.error("zero denominator", den)
                return self.const(Fraction(val, den[1]))
            return self.const(val)
        if kind == "var":
            if val not in self.vars:
                self.error(f"unknown variable {val!r} (allowed: {', '.join(self.vars)})", tok)
            e = [0] * self.nvars
            e[self.vars.index(val)] = 1
            return {tuple(e): Fraction(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            if not self.at_op(")"):
                self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def parse_terms(text: str, variables=("x",)) -> dict:
    """Parse ``text`` into ``{exponent tuple: Fraction}`` over ``variables``."""
    return _Parser(text, variables).parse()


def parse_univariate(text: str, domain):
    """Parse a polynomial in ``x`` with coefficients in ``domain``."""
    from .ring import Domain, Poly

    terms = parse_terms(text, ("x",))
    deg = max((e[0] for e in terms), default=-1)
    cs = [Fraction(0)] * (deg + 1)
    for (k,), c in terms.items():
        cs[k] = c
    if domain is Domain.INTEGERS:
        for c in cs:
            if c.denominator != 1:
                raise ParseError(f"non-integer coefficient {c} over Z[x]", 0, text)
        cs = [int(c) for c in cs]
    return Poly(cs, domain)


def _format_coeff(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(exps, names):
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(terms, names) -> str:
    """Render ``(exponents, coeff)`` pairs; graded order, highest degree first."""
    items = [(e, c) for e, c in terms if c]
    if not items:
        return "0"
    items.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out = []
    for idx, (exps, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        mono = _format_monomial(exps, names)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
