"""Localized values: a SuperPoly numerator over a factored purely even denominator.

The represented value is  num / (x^den_mono * prod(den_factors)).  Denominators
are kept factored so cancellation can reproduce reduced displays without a
multivariate GCD; equality never depends on normalization because `eq`
cross-multiplies.
"""

from __future__ import annotations

from fractions import Fraction

from superclusters.ambient import Ambient
from superclusters.superpoly import DoesNotDivide, SuperPoly, _order_key


class NotInvertible(ArithmeticError):
    """Division by zero or by a soul-only element (body is zero)."""


class ParityError(ValueError):
    """A substitution maps a symbol to a value of the wrong parity."""


def _sign_normalize(factor: SuperPoly):
    """Make the leading coefficient positive; return (sign, factor)."""
    lead = factor.terms[max(factor.terms, key=_order_key)]
    if lead < 0:
        return -1, -factor
    return 1, factor


def _factor_key(factor: SuperPoly):
    return tuple(sorted(factor.terms.items()))


class SuperFraction:
    __slots__ = ("num", "den_mono", "den_factors")

    def __init__(self, num: SuperPoly, den_factors=(), den_mono=None):
        ambient = num.ambient
        if den_mono is None:
            den_mono = (0,) * ambient.m
        den_mono = tuple(den_mono)
        if len(den_mono) != ambient.m:
            raise ValueError("den_mono length does not match ambient")

        factors = []
        for f in den_factors:
            if f.ambient != ambient:
                raise ValueError("denominator factor over a different ambient")
            if f.is_zero():
                raise ZeroDivisionError("zero denominator factor")
            if not f.is_purely_even():
                raise ValueError("denominator factor must be purely even")
            if f.is_one():
                continue
            sign, f = _sign_normalize(f)
            if sign < 0:
                num = -num
            factors.append(f)

        # keep den_mono nonnegative; negative slots move to the numerator
        if any(d < 0 for d in den_mono):
            num = num.shift(tuple(-d if d < 0 else 0 for d in den_mono))
            den_mono = tuple(max(d, 0) for d in den_mono)

        self.num = num
        self.den_mono = den_mono
        self.den_factors = tuple(sorted(factors, key=_factor_key))

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_poly(cls, poly: SuperPoly):
        return cls(poly)

    @classmethod
    def const(cls, ambient, value):
        return cls(SuperPoly.const(ambient, value))

    @classmethod
    def symbol(cls, ambient, name):
        return cls(SuperPoly.symbol(ambient, name))

    @property
    def ambient(self) -> Ambient:
        return self.num.ambient

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_poly(self) -> SuperPoly:
        """The denominator, expanded to a single purely even polynomial."""
        out = SuperPoly.const(self.ambient, 1).shift(self.den_mono)
        for f in self.den_factors:
            out = out * f
        return out

    def grassmann_parity(self):
        return self.num.grassmann_parity()

    # -- arithmetic -----------------------------------------------------

    def _den_counts(self):
        counts = {}
        for f in self.den_factors:
            counts.setdefault(_factor_key(f), [f, 0])[1] += 1
        return counts

    def __add__(self, other: "SuperFraction"):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        a_counts = self._den_counts()
        b_counts = other._den_counts()
        lcm_factors = []
        a_extra = []  # lcm / den(a)
        b_extra = []
        for key in set(a_counts) | set(b_counts):
            fa = a_counts.get(key)
            fb = b_counts.get(key)
            f = (fa or fb)[0]
            ca = fa[1] if fa else 0
            cb = fb[1] if fb else 0
            top = max(ca, cb)
            lcm_factors.extend([f] * top)
            a_extra.extend([f] * (top - ca))
            b_extra.extend([f] * (top - cb))
        mono = tuple(max(a, b) for a, b in zip(self.den_mono, other.den_mono))
        na = self.num.shift(tuple(m - d for m, d in zip(mono, self.den_mono)))
        for f in a_extra:
            na = na * f
        nb = other.num.shift(tuple(m - d for m, d in zip(mono, other.den_mono)))
        for f in b_extra:
            nb = nb * f
        return SuperFraction(na + nb, lcm_factors, mono).normalize()

    def __neg__(self):
        return SuperFraction(-self.num, self.den_factors, self.den_mono)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SuperFraction(self.num.scale(other), self.den_factors, self.den_mono).normalize()
        if isinstance(other, SuperPoly):
            other = SuperFraction(other)
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return SuperFraction(
            self.num * other.num,
            self.den_factors + other.den_factors,
            tuple(a + b for a, b in zip(self.den_mono, other.den_mono)),
        ).normalize()

    __rmul__ = __mul__

    def reciprocal(self) -> "SuperFraction":
        body, soul = self.num.body_split()
        if body.is_zero():
            raise NotInvertible("value has zero body (zero or soul-only numerator)")
        # 1/(f0+s) = sum_t (-1)^t s^t / f0^(t+1), truncated at the soul's
        # nilpotency index.
        powers = [SuperPoly.const(self.ambient, 1)]
        power = powers[0]
        while True:
            power = power * soul
            if power.is_zero():
                break
            powers.append(power)
        depth = len(powers) - 1
        inv_num = SuperPoly.zero(self.ambient)
        for t, s_pow in enumerate(powers):
            term = s_pow * body ** (depth - t)
            inv_num = inv_num + (term if t % 2 == 0 else -term)
        # old numerator's denominator flips into the new numerator
        new_num = inv_num.shift(self.den_mono)
        for f in self.den_factors:
            new_num = new_num * f
        return SuperFraction(new_num, [body] * (depth + 1)).normalize()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return SuperFraction(self.num.scale(Fraction(1, 1) / other), self.den_factors, self.den_mono)
        if isinstance(other, SuperPoly):
            other = SuperFraction(other)
        return (self * other.reciprocal()).normalize()

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        out = SuperFraction.const(self.ambient, 1)
        for _ in range(k):
            out = out * self
        return out

    # -- normalization and equality -------------------------------------

    def normalize(self) -> "SuperFraction":
        """Cancel monomial content and any denominator factor dividing num."""
        if self.num.is_zero():
            return SuperFraction(SuperPoly.zero(self.ambient))
        num = self.num
        mono = list(self.den_mono)
        factors = list(self.den_factors)

        changed = True
        while changed:
            changed = False
            kept = []
            for f in factors:
                if f.is_monomial():
                    ((exps, _odd),) = f.terms
                    coeff = f.terms[(exps, ())]
                    num = num.scale(Fraction(1) / coeff)
                    mono = [a + b for a, b in zip(mono, exps)]
                    changed = True
                    continue
                try:
                    num = num.exact_divide(f)
                    changed = True
                except DoesNotDivide:
                    kept.append(f)
            factors = kept

        mins = num.min_exponents()
        residual = tuple(d - s for d, s in zip(mono, mins))
        num = num.shift(tuple(-s for s in mins))
        return SuperFraction(num, factors, residual)

    def eq(self, other: "SuperFraction") -> bool:
        """Semantic equality by cross-multiplication."""
        if isinstance(other, SuperPoly):
            other = SuperFraction(other)
        if self.ambient != other.ambient:
            return False
        return self.num * other.den_poly() == other.num * self.den_poly()

    def __eq__(self, other):
        if not isinstance(other, (SuperFraction, SuperPoly)):
            return NotImplemented
        return self.eq(other)

    def __hash__(self):  # hash via normalized representation
        norm = self.normalize()
        return hash((norm.num, norm.den_mono, tuple(_factor_key(f) for f in norm.den_factors)))

    def __repr__(self):
        from superclusters.polytext import format_fraction

        return f"SuperFraction({format_fraction(self)!r})"


def substitute(poly: SuperPoly, assignment, target: Ambient) -> SuperFraction:
    """Evaluate a SuperPoly under symbol -> SuperFraction, homomorphically.

    Every symbol actually occurring in `poly` must be assigned, even symbols
    to even-parity values and odd symbols to odd-parity values; negative
    exponents additionally need invertible (nonzero-body) values.
    """
    src = poly.ambient
    even_vals = {}
    odd_vals = {}
    for name, value in assignment.items():
        if value.ambient != target:
            raise ValueError(f"assignment for {name!r} lives over the wrong ambient")
        parity = src.parity_of(name)
        if parity == "even":
            if value.grassmann_parity() != 0:
                raise ParityError(f"even symbol {name!r} assigned an odd-parity value")
            even_vals[src.even_index(name)] = value
        else:
            if value.grassmann_parity() != 1:
                raise ParityError(f"odd symbol {name!r} assigned a non-odd-parity value")
            odd_vals[src.odd_index(name)] = value

    total = SuperFraction.const(target, 0)
    for (exps, odd), coeff in poly.terms.items():
        term = SuperFraction.const(target, coeff)
        for i, e in enumerate(exps):
            if e == 0:
                continue
            if i not in even_vals:
                raise KeyError(f"no assignment for even symbol {src.even[i]!r}")
            term = term * (even_vals[i] ** e)
        for j in odd:
            if j not in odd_vals:
                raise KeyError(f"no assignment for odd symbol {src.odd[j]!r}")
            term = term * odd_vals[j]
        total = total + term
    return total.normalize()
