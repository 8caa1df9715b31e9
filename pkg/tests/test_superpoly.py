import random
from fractions import Fraction

import pytest

from superclusters.ambient import Ambient
from superclusters.polytext import PolySyntaxError, format_poly, parse_poly
from superclusters.superpoly import DoesNotDivide, SuperPoly, merge_odd

AMB = Ambient(["x1", "x2", "x3"], ["y1", "y2", "y3"])


def poly(text, amb=AMB):
    return parse_poly(text, amb)


def random_poly(rng, amb, max_terms=8, max_exp=3, laurent=False):
    p = SuperPoly.zero(amb)
    for _ in range(rng.randrange(max_terms + 1)):
        exps = [
            rng.randrange(-max_exp, max_exp + 1) if laurent else rng.randrange(max_exp + 1)
            for _ in range(amb.m)
        ]
        odd = tuple(sorted(rng.sample(range(amb.n), rng.randrange(amb.n + 1))))
        coeff = Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
        p = p + SuperPoly.monomial(amb, exps, odd, coeff)
    return p


class TestMergeOdd:
    def test_disjoint_ordered(self):
        assert merge_odd((0,), (1,)) == (1, (0, 1))

    def test_transposition_sign(self):
        assert merge_odd((1,), (0,)) == (-1, (0, 1))

    def test_repeat_annihilates(self):
        assert merge_odd((0, 2), (2,)) == (0, ())

    def test_interleaving_sign(self):
        # y0y2 * y1 = -y0y1y2 (one transposition)
        assert merge_odd((0, 2), (1,)) == (-1, (0, 1, 2))


class TestRingOps:
    def test_anticommutation_cancels(self):
        assert (poly("y1*y2") + poly("y2*y1")).is_zero()

    def test_add(self):
        assert poly("1 + x2") + poly("x2 - 1") == poly("2*x2")

    def test_odd_square_zero(self):
        assert (poly("y1") * poly("y1")).is_zero()

    def test_transposition(self):
        assert poly("y2") * poly("y1") == -poly("y1*y2")

    def test_nilpotent_inverse_pair(self):
        assert (poly("1 + y1*y2") * poly("1 - y1*y2")).is_one()

    def test_pow(self):
        assert poly("1 + x1") ** 3 == poly("1 + 3*x1 + 3*x1^2 + x1^3")

    def test_laurent_exponents(self):
        assert poly("x1^-1") * poly("x1") == poly("1")

    def test_supercommutativity_random(self):
        rng = random.Random(7)
        for _ in range(60):
            a = random_poly(rng, AMB, laurent=True)
            b = random_poly(rng, AMB, laurent=True)
            pa, pb = a.grassmann_parity(), b.grassmann_parity()
            if pa is None or pb is None:
                continue
            sign = -1 if (pa and pb) else 1
            assert a * b == (b * a).scale(sign)

    def test_associativity_distributivity_random(self):
        rng = random.Random(11)
        for _ in range(25):
            a = random_poly(rng, AMB, max_terms=5, laurent=True)
            b = random_poly(rng, AMB, max_terms=5, laurent=True)
            c = random_poly(rng, AMB, max_terms=5, laurent=True)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


class TestBodySoul:
    def test_split(self):
        body, soul = poly("1 + x1*x2 + y1*y2").body_split()
        assert body == poly("1 + x1*x2")
        assert soul == poly("y1*y2")

    def test_pure_soul(self):
        body, soul = poly("x1^2*y1*y2").body_split()
        assert body.is_zero() and soul == poly("x1^2*y1*y2")

    def test_soul_nilpotency_parity_even(self):
        # For parity-even f the soul has Grassmann degree >= 2, so the
        # (n//2 + 1)-st power vanishes.
        rng = random.Random(3)
        bound = AMB.n // 2 + 1
        for _ in range(40):
            f = random_poly(rng, AMB, laurent=True)
            if f.grassmann_parity() != 0:
                continue
            _body, soul = f.body_split()
            assert (soul ** bound).is_zero()

    def test_soul_nilpotency_general(self):
        rng = random.Random(4)
        for _ in range(40):
            _body, soul = random_poly(rng, AMB, laurent=True).body_split()
            assert (soul ** (AMB.n + 1)).is_zero()


class TestExactDivide:
    def test_constructed_product(self):
        g = poly("x1*x3 - 1") * poly("x2")
        assert g.exact_divide(poly("x2")) == poly("x1*x3 - 1")

    def test_blocked_division(self):
        g = poly("1 + x2 + x1 + x1*y1*y2 + x1*x2")
        with pytest.raises(DoesNotDivide) as info:
            g.exact_divide(poly("1 + x2"))
        assert not info.value.remainder.is_zero()

    def test_odd_coefficients(self):
        g = poly("y2*x2 + y2*x2^2")
        assert g.exact_divide(poly("1 + x2")) == poly("y2*x2")

    def test_rejects_odd_divisor(self):
        with pytest.raises(ValueError):
            poly("x1").exact_divide(poly("y1"))

    def test_rejects_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            poly("x1").exact_divide(SuperPoly.zero(AMB))

    def test_round_trip_random(self):
        rng = random.Random(19)
        count = 0
        while count < 40:
            q = random_poly(rng, AMB, laurent=True)
            f = random_poly(rng, AMB, max_terms=4, laurent=True)
            body, _ = f.body_split()
            if body.is_zero():
                continue
            f = body  # purely even divisor
            count += 1
            assert (q * f).exact_divide(f) == q


class TestText:
    def test_parse_three_terms(self):
        p = poly("1 + x1*x2 + y1*y2")
        assert len(p.terms) == 3

    def test_reorder_sign(self):
        assert format_poly(poly("y2*y1")) == "- y1*y2"

    def test_coefficients(self):
        p = poly("2*y2*y1 + 1 + x2")
        assert p == poly("1 + x2 - 2*y1*y2")

    def test_rational_coefficient(self):
        assert poly("1/2*x1 + 1/2*x1") == poly("x1")

    def test_round_trip_random(self):
        rng = random.Random(23)
        for _ in range(50):
            p = random_poly(rng, AMB, laurent=True)
            assert parse_poly(format_poly(p), AMB) == p

    def test_syntax_error_position(self):
        with pytest.raises(PolySyntaxError):
            parse_poly("x1 + + ", AMB)
        with pytest.raises(PolySyntaxError):
            parse_poly("x1 * * x2", AMB)
        with pytest.raises(PolySyntaxError):
            parse_poly("unknown_sym", AMB)
        with pytest.raises(PolySyntaxError):
            parse_poly("y1^-1", AMB)
