"""Sparse exact arithmetic in Q[x1^±,...,xm^±] (x) Grassmann(y1,...,yn).

A SuperPoly is a canonical map  (x-exponent vector, odd monomial) -> Fraction.
Odd monomials are stored with strictly increasing indices; the sign of the
sorting permutation is folded into the coefficient, so map equality is ring
equality.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from operator import add as _add, sub as _sub

from superclusters.ambient import Ambient


def _norm_coeff(c):
    """Canonical coefficient: plain int where possible (faster arithmetic)."""
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class AmbientMismatch(ValueError):
    """Operands live over different symbol tables."""


class DoesNotDivide(ArithmeticError):
    """Exact division failed; carries the nonzero remainder as a witness."""

    def __init__(self, remainder: "SuperPoly"):
        super().__init__("polynomial division leaves a nonzero remainder")
        self.remainder = remainder


def merge_odd(a, b):
    """Merge two increasing odd-index tuples.

    Returns (sign, merged) where sign is the parity of the interleaving
    permutation, or (0, ()) if an index repeats (nilpotency).
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, ()
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the len(a)-i remaining factors of a
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


class SuperPoly:
    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms=None):
        self.ambient = ambient
        self.terms = {}
        if terms:
            for (exps, odd), coeff in terms.items():
                self._accumulate(exps, odd, coeff)

    def _accumulate(self, exps, odd, coeff):
        key = (tuple(exps), tuple(odd))
        if len(key[0]) != self.ambient.m:
            raise AmbientMismatch(
                f"exponent vector of length {len(key[0])}, ambient has {self.ambient.m} even symbols"
            )
        c = self.terms.get(key, 0) + coeff
        if c:
            self.terms[key] = _norm_coeff(c)
        else:
            self.terms.pop(key, None)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ambient):
        return cls(ambient)

    @classmethod
    def const(cls, ambient, value):
        p = cls(ambient)
        value = _norm_coeff(Fraction(value))
        if value:
            p.terms[((0,) * ambient.m, ())] = value
        return p

    @classmethod
    def monomial(cls, ambient, exps, odd=(), coeff=1):
        odd = tuple(odd)
        if list(odd) != sorted(set(odd)):
            raise ValueError("odd indices must be strictly increasing")
        p = cls(ambient)
        p._accumulate(exps, odd, Fraction(coeff))
        return p

    @classmethod
    def symbol(cls, ambient, name):
        parity = ambient.parity_of(name)
        exps = [0] * ambient.m
        if parity == "even":
            exps[ambient.even_index(name)] = 1
            return cls.monomial(ambient, exps, ())
        return cls.monomial(ambient, exps, (ambient.odd_index(name),))

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {((0,) * self.ambient.m, ()): Fraction(1)}

    def is_purely_even(self) -> bool:
        """No Grassmann factor in any term."""
        return all(not odd for _, odd in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def grassmann_parity(self):
        """0, 1, or None for a mix (zero counts as parity 0)."""
        parities = {len(odd) % 2 for _, odd in self.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            return None
        return parities.pop()

    def _check(self, other: "SuperPoly"):
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient!r} vs {other.ambient!r}")

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = SuperPoly(self.ambient)
        out.terms = dict(self.terms)
        for key, coeff in other.terms.items():
            c = out.terms.get(key, 0) + coeff
            if c:
                out.terms[key] = c
            else:
                out.terms.pop(key, None)
        return out

    def __neg__(self):
        out = SuperPoly(self.ambient)
        out.terms = {key: -coeff for key, coeff in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented  # SuperFraction handles mixed products
        self._check(other)
        if len(self.terms) * len(other.terms) > 250_000:
            fast = _mul_packed(self, other)
            if fast is not None:
                return fast
        out = SuperPoly(self.ambient)
        terms = out.terms
        get = terms.get
        for (ea, oa), ca in self.terms.items():
            for (eb, ob), cb in other.terms.items():
                if oa or ob:
                    sign, odd = merge_odd(oa, ob)
                    if sign == 0:
                        continue
                    c = ca * cb if sign > 0 else -(ca * cb)
                else:
                    odd = ()
                    c = ca * cb
                key = (tuple(map(_add, ea, eb)), odd)
                c0 = get(key)
                if c0 is None:
                    terms[key] = c
                else:
                    c0 += c
                    if c0:
                        terms[key] = c0
                    else:
                        del terms[key]
        for key, c in terms.items():
            if type(c) is not int:
                terms[key] = _norm_coeff(c)
        return out

    __rmul__ = __mul__

    def scale(self, factor):
        factor = _norm_coeff(Fraction(factor))
        out = SuperPoly(self.ambient)
        if factor:
            out.terms = {
                key: _norm_coeff(coeff * factor)
                for key, coeff in self.terms.items()
            }
        return out

    def shift(self, exps):
        """Multiply by the Laurent monomial x^exps."""
        out = SuperPoly(self.ambient)
        out.terms = {
            (tuple(a + b for a, b in zip(e, exps)), odd): c
            for (e, odd), c in self.terms.items()
        }
        return out

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a SuperPoly; use SuperFraction")
        out = SuperPoly.const(self.ambient, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SuperPoly)
            and self.ambient == other.ambient
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ambient, frozenset(self.terms.items())))

    # -- body / soul ----------------------------------------------------

    def body_split(self):
        """Split into (body, soul): Grassmann-degree-0 part and the rest."""
        body = SuperPoly(self.ambient)
        soul = SuperPoly(self.ambient)
        for (exps, odd), coeff in self.terms.items():
            (soul if odd else body).terms[(exps, odd)] = coeff
        return body, soul

    # -- exponent bookkeeping -------------------------------------------

    def min_exponents(self):
        """Per-variable minimum exponent over all terms (zero poly -> zeros)."""
        m = self.ambient.m
        if not self.terms:
            return (0,) * m
        mins = None
        for (exps, _odd) in self.terms:
            if mins is None:
                mins = list(exps)
            else:
                for i, e in enumerate(exps):
                    if e < mins[i]:
                        mins[i] = e
        return tuple(mins)

    # -- division -------------------------------------------------------

    def exact_divide(self, divisor: "SuperPoly") -> "SuperPoly":
        """Exact division by a nonzero purely even polynomial.

        Returns q with self == q * divisor, or raises DoesNotDivide.  Sound
        and complete for a single divisor under a fixed monomial order.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not divisor.is_purely_even():
            raise ValueError("divisor must be purely even")
        if self.is_zero():
            return SuperPoly.zero(self.ambient)

        # Shift both to nonnegative exponents; monomials are units, so
        # divisibility is unaffected once no variable divides the divisor.
        g_shift = self.min_exponents()
        f_shift = divisor.min_exponents()
        g = self.shift(tuple(-s for s in g_shift))
        f = divisor.shift(tuple(-s for s in f_shift))

        f_terms = [(exps, coeff) for (exps, _), coeff in f.terms.items()]
        f_lead_exps = max(f.terms, key=_order_key)[0]
        f_lead_coeff = f.terms[(f_lead_exps, ())]

        # The divisor is purely even, so odd monomials pass through division
        # untouched: divide each Grassmann sector independently.
        sectors: dict = {}
        for (exps, odd), coeff in g.terms.items():
            sectors.setdefault(odd, {})[exps] = coeff

        quotient = SuperPoly(self.ambient)
        remainder = SuperPoly(self.ambient)
        for odd, r in sectors.items():
            q_sector, r_sector = _divide_sector(r, f_terms, f_lead_exps, f_lead_coeff)
            for exps, coeff in q_sector.items():
                quotient.terms[(exps, odd)] = coeff
            for exps, coeff in r_sector.items():
                remainder.terms[(exps, odd)] = coeff
        if not remainder.is_zero():
            raise DoesNotDivide(remainder)
        return quotient.shift(tuple(a - b for a, b in zip(g_shift, f_shift)))

    def divides_exactly(self, divisor):
        try:
            return self.exact_divide(divisor)
        except DoesNotDivide:
            return None

    # -- display --------------------------------------------------------

    def sorted_terms(self):
        """Terms in the deterministic display order (degree, then lex)."""
        def key(item):
            (exps, odd), _ = item
            degree = sum(exps) + len(odd)
            return (degree, tuple(-e for e in exps), odd)

        return sorted(self.terms.items(), key=key)

    def __repr__(self):
        from superclusters.polytext import format_poly

        return f"SuperPoly({format_poly(self)!r})"


def _order_key(key):
    """Graded-lex on (nonnegative) x-exponents, then odd monomial."""
    exps, odd = key
    return (sum(exps), exps, odd)


def _mul_packed(a: "SuperPoly", b: "SuperPoly"):
    """Vectorized product for very large operands.

    Packs each exponent vector into a single 64-bit key (per Grassmann
    sector) and aggregates outer products with numpy.  Returns None when the
    exponent ranges or coefficient magnitudes cannot be bounded inside 64
    bits; the caller then falls back to the exact dict path.  All arithmetic
    stays in integers, so the result is identical to the slow path.
    """
    import numpy as np

    m = a.ambient.m

    def sectorize(p):
        # clear rational denominators so all arithmetic is in int64
        denom_lcm = 1
        for coeff in p.terms.values():
            if type(coeff) is not int:
                denom_lcm = denom_lcm * coeff.denominator // gcd(
                    denom_lcm, coeff.denominator
                )
                if denom_lcm >= 1 << 32:
                    return None, 0, 0, 1
        sectors: dict = {}
        maxabs = 1
        total = 0
        for (exps, odd), coeff in p.terms.items():
            if type(coeff) is int:
                coeff *= denom_lcm
            else:
                coeff = coeff.numerator * (denom_lcm // coeff.denominator)
            mag = -coeff if coeff < 0 else coeff
            if mag > maxabs:
                maxabs = mag
            total += mag
            sectors.setdefault(odd, []).append((exps, coeff))
        return sectors, maxabs, total, denom_lcm

    sa, max_a, sum_a, lcm_a = sectorize(a)
    sb, max_b, sum_b, lcm_b = sectorize(b)
    if sa is None or sb is None:
        return None
    # any accumulated per-key sum is bounded by min(sum|a|*max|b|, sum|b|*max|a|)
    if min(sum_a * max_b, sum_b * max_a) >= 1 << 62:
        return None
    scale_back = lcm_a * lcm_b

    def ranges(p):
        lo = [0] * m
        hi = [0] * m
        first = True
        for (exps, _odd) in p.terms:
            if first:
                lo = list(exps)
                hi = list(exps)
                first = False
                continue
            for i, e in enumerate(exps):
                if e < lo[i]:
                    lo[i] = e
                elif e > hi[i]:
                    hi[i] = e
        return lo, hi

    lo_a, hi_a = ranges(a)
    lo_b, hi_b = ranges(b)
    shifts = []
    pos = 0
    for i in range(m):
        span = (hi_a[i] - lo_a[i]) + (hi_b[i] - lo_b[i])
        width = span.bit_length() + 1
        shifts.append(pos)
        pos += width
    if pos > 62:
        return None
    masks = [(1 << (shifts[i + 1] - shifts[i])) - 1 for i in range(m - 1)]
    masks.append((1 << (pos - shifts[-1])) - 1)

    def pack(sector_terms, lo):
        keys = np.empty(len(sector_terms), dtype=np.int64)
        coeffs = np.empty(len(sector_terms), dtype=np.int64)
        for idx, (exps, coeff) in enumerate(sector_terms):
            k = 0
            for i in range(m):
                k |= (exps[i] - lo[i]) << shifts[i]
            keys[idx] = k
            coeffs[idx] = coeff
        return keys, coeffs

    def aggregate(keys, coeffs):
        order = np.argsort(keys, kind="stable")
        ks = keys[order]
        cs = coeffs[order]
        starts = np.concatenate(([0], np.flatnonzero(np.diff(ks)) + 1))
        return ks[starts], np.add.reduceat(cs, starts)

    packed_a = {odd: pack(terms, lo_a) for odd, terms in sa.items()}
    packed_b = {odd: pack(terms, lo_b) for odd, terms in sb.items()}

    collected: dict = {}
    for oa, (ka, ca) in packed_a.items():
        for ob, (kb, cb) in packed_b.items():
            sign, odd = merge_odd(oa, ob)
            if sign == 0:
                continue
            block = max(1, 4_000_000 // max(1, len(kb)))
            parts_k = []
            parts_c = []
            for i0 in range(0, len(ka), block):
                k = (ka[i0 : i0 + block, None] + kb[None, :]).ravel()
                c = (ca[i0 : i0 + block, None] * cb[None, :]).ravel()
                uk, uc = aggregate(k, c)
                parts_k.append(uk)
                parts_c.append(uc if sign > 0 else -uc)
            uk, uc = aggregate(np.concatenate(parts_k), np.concatenate(parts_c))
            bucket = collected.setdefault(odd, ([], []))
            bucket[0].append(uk)
            bucket[1].append(uc)

    out = SuperPoly(a.ambient)
    lo_sum = [lo_a[i] + lo_b[i] for i in range(m)]
    for odd, (klist, clist) in collected.items():
        uk, uc = aggregate(np.concatenate(klist), np.concatenate(clist))
        nz = uc != 0
        for k, c in zip(uk[nz].tolist(), uc[nz].tolist()):
            exps = tuple(
                ((k >> shifts[i]) & masks[i]) + lo_sum[i] for i in range(m)
            )
            out.terms[(exps, odd)] = (
                c if scale_back == 1 else _norm_coeff(Fraction(c, scale_back))
            )
    return out


def _divide_sector(r, f_terms, f_lead_exps, f_lead_coeff):
    """Divide a purely even sector {exps: coeff} by f, largest terms first.

    A max-order priority queue with lazy deletion replaces the naive
    scan-for-leading-term loop; every term pushed during reduction is
    strictly below the term being eliminated, so order is preserved.
    """
    quotient: dict = {}
    remainder: dict = {}
    heap = [(-sum(e), tuple(-x for x in e), e) for e in r]
    heapq.heapify(heap)
    while heap:
        exps = heapq.heappop(heap)[2]
        coeff = r.pop(exps, 0)
        if not coeff:
            continue  # cancelled since it was queued
        diff = tuple(map(_sub, exps, f_lead_exps))
        if any(d < 0 for d in diff):
            remainder[exps] = coeff
            continue
        q = _norm_coeff(Fraction(coeff) / f_lead_coeff)
        quotient[diff] = q
        for fe, fc in f_terms:
            key = tuple(map(_add, diff, fe))
            if key == exps:
                continue  # the leading term, just eliminated
            c0 = r.get(key, 0)
            c1 = c0 - q * fc
            if c1:
                if not c0:
                    heapq.heappush(heap, (-sum(key), tuple(-x for x in key), key))
                r[key] = _norm_coeff(c1)
            else:
                r.pop(key, None)
    return quotient, remainder
