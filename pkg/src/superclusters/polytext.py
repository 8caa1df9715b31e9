"""Text form of polynomials and fractions.

Grammar (terms separated by + or -):

    poly    ::= [sign] term (("+" | "-") term)*
    term    ::= coeff ("*" factor)* | factor ("*" factor)*
    factor  ::= symbol ["^" int]
    coeff   ::= int | int "/" int

Even symbols may carry negative exponents; odd symbols anticommute and the
stored form is index-ascending with the permutation sign folded into the
coefficient.  format/parse round-trip exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from superclusters.ambient import Ambient
from superclusters.superpoly import SuperPoly, merge_odd


class PolySyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at column {position + 1})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == match.start():
            if text[pos:].strip():
                raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
            break
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


def parse_poly(text: str, ambient: Ambient) -> SuperPoly:
    tokens = _tokenize(text)
    result = SuperPoly.zero(ambient)
    i = 0
    n = len(tokens)
    if n == 0:
        raise PolySyntaxError("empty polynomial", 0)
    first = True
    while i < n:
        sign = 1
        # leading sign of the term
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
            first = False
        if i >= n:
            raise PolySyntaxError("dangling sign", tokens[-1][2])
        if not first and tokens[i - 1][0] != "op":
            raise PolySyntaxError("missing operator between terms", tokens[i][2])
        term_coeff = Fraction(sign)
        exps = [0] * ambient.m
        odd = ()
        saw_factor = False
        while True:
            kind, value, pos = tokens[i]
            if kind == "num":
                coeff = Fraction(int(value))
                if i + 2 < n and tokens[i + 1][1] == "/" and tokens[i + 2][0] == "num":
                    coeff /= int(tokens[i + 2][1])
                    i += 2
                term_coeff *= coeff
            elif kind == "name":
                if value not in ambient:
                    raise PolySyntaxError(f"unknown symbol {value!r}", pos)
                power = 1
                if i + 1 < n and tokens[i + 1][1] == "^":
                    if i + 2 >= n:
                        raise PolySyntaxError("missing exponent", tokens[i + 1][2])
                    neg = False
                    j = i + 2
                    if tokens[j][1] == "-":
                        neg = True
                        j += 1
                    if j >= n or tokens[j][0] != "num":
                        raise PolySyntaxError("bad exponent", tokens[i + 1][2])
                    power = -int(tokens[j][1]) if neg else int(tokens[j][1])
                    i = j
                if ambient.parity_of(value) == "even":
                    exps[ambient.even_index(value)] += power
                else:
                    if power < 0:
                        raise PolySyntaxError("negative power of an odd symbol", pos)
                    for _ in range(power):
                        s, odd = merge_odd(odd, (ambient.odd_index(value),))
                        term_coeff *= s
            else:
                raise PolySyntaxError(f"unexpected {value!r}", pos)
            saw_factor = True
            if i + 1 < n and tokens[i + 1][1] == "*":
                if i + 2 >= n:
                    raise PolySyntaxError("dangling '*'", tokens[i + 1][2])
                i += 2
                continue
            i += 1
            break
        if not saw_factor:
            raise PolySyntaxError("empty term", tokens[i][2])
        if term_coeff:
            result = result + SuperPoly.monomial(ambient, exps, odd, term_coeff)
        first = False
    return result


def _format_term(ambient, exps, odd, coeff):
    parts = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        name = ambient.even[i]
        parts.append(name if e == 1 else f"{name}^{e}")
    for j in odd:
        parts.append(ambient.odd[j])
    mag = abs(coeff)
    if not parts:
        body = str(mag)
    elif mag == 1:
        body = "*".join(parts)
    else:
        body = str(mag) + "*" + "*".join(parts)
    return (coeff < 0), body


def format_poly(poly: SuperPoly) -> str:
    if poly.is_zero():
        return "0"
    pieces = []
    for (exps, odd), coeff in poly.sorted_terms():
        negative, body = _format_term(poly.ambient, exps, odd, coeff)
        if not pieces:
            pieces.append(("- " if negative else "") + body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


def format_fraction(value) -> str:
    num_text = format_poly(value.num)
    den_parts = []
    mono = value.den_mono
    if any(mono):
        fake = SuperPoly.monomial(value.ambient, mono)
        _neg, body = _format_term(value.ambient, mono, (), Fraction(1))
        del fake
        den_parts.append(body)
    counted = []
    for f in value.den_factors:  # already sorted, equal factors adjacent
        if counted and counted[-1][0] == f:
            counted[-1][1] += 1
        else:
            counted.append([f, 1])
    for f, k in counted:
        text = format_poly(f)
        wrapped = f"({text})" if len(f.terms) > 1 else text
        den_parts.append(wrapped if k == 1 else f"{wrapped}^{k}")
    if not den_parts:
        return num_text
    if len(value.num.terms) > 1 or "/" in num_text:
        num_text = f"({num_text})"
    return f"{num_text}/{'*'.join(den_parts)}"


def parse_fraction(text: str, ambient: Ambient):
    """Parse 'num' or '(num)/den' produced by format_fraction."""
    from superclusters.superfrac import SuperFraction

    text = text.strip()
    if text.startswith("(") and ")/" in text:
        close = text.index(")/")
        num = parse_poly(text[1:close], ambient)
        den = text[close + 2 :]
    else:
        try:
            # plain polynomial (slashes, if any, are rational coefficients)
            return SuperFraction(parse_poly(text, ambient))
        except PolySyntaxError:
            if "/" not in text:
                raise
        slash = text.index("/")
        num = parse_poly(text[:slash], ambient)
        den = text[slash + 1 :]
    factors = []
    mono = [0] * ambient.m
    for piece, power in _split_den(den):
        poly = parse_poly(piece, ambient)
        if poly.is_monomial():
            ((exps, odd),) = poly.terms
            if not odd and poly.terms[(exps, odd)] == 1:
                mono = [a + power * b for a, b in zip(mono, exps)]
                continue
        factors.extend([poly] * power)
    return SuperFraction(num, factors, tuple(mono)).normalize()


def _split_den(text):
    """Split a denominator into (factor text, power) pieces at top level."""
    pieces = []
    depth = 0
    current = []

    def flush():
        chunk = "".join(current).strip()
        current.clear()
        if not chunk:
            return
        power = 1
        if chunk.startswith("@"):  # parenthesized factor, maybe with ^k
            chunk = chunk[1:]
            if "@^" in chunk:
                chunk, _sep, tail = chunk.rpartition("@^")
                power = int(tail)
            else:
                chunk = chunk.rstrip("@")
        pieces.append((chunk, power))

    for ch in text:
        if ch == "(":
            depth += 1
            current.append("@" if depth == 1 else ch)
        elif ch == ")":
            depth -= 1
            current.append("@" if depth == 0 else ch)
        elif ch == "*" and depth == 0:
            flush()
        else:
            current.append(ch)
    flush()
    return pieces
