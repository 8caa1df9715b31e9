import pytest

from superclusters.models import (
    ElementaryDiamond,
    build_model,
    counterexample7_check,
    diamond_spo_map,
    flip_identity_check,
    frieze_quiver,
    frieze_rule_check,
    frieze_vs_mutation_check,
    generic_spo_element,
    grassmannian_check,
    model_names,
    spo21_relation_check,
    spo22_relation_check,
    spo_from_diamond,
    superfrieze_generate,
)
from superclusters.mutation import even_mutate
from superclusters.polytext import parse_poly
from superclusters.quiver import check_c1_or_c2, validate
from superclusters.superfrac import SuperFraction


class TestFixtures:
    def test_all_models_build_and_validate(self):
        for name in model_names():
            if name == "frieze(n)":
                name = "frieze(2)"
            seed = build_model(name)
            assert validate(seed.quiver) == []

    def test_unknown_model(self):
        with pytest.raises(KeyError):
            build_model("nope")

    def test_condition_status(self):
        for name in ("spo21", "spo22", "grassmannian", "twist3"):
            assert check_c1_or_c2(build_model(name).quiver), name
        assert not check_c1_or_c2(build_model("counterexample7").quiver)

    def test_spo21_shape(self):
        q = build_model("spo21").quiver
        assert sorted(v.label for v in q.vertices if v.frozen) == ["b", "c"]
        assert q.mult(q.vertex("al").id, q.vertex("a").id) == 1
        assert q.mult(q.vertex("a").id, q.vertex("be").id) == 1

    def test_grassmannian_mutable_vertices(self):
        q = build_model("grassmannian").quiver
        mutable = sorted(v.label for v in q.vertices if not v.frozen)
        assert mutable == ["l2", "q24"]

    def test_frieze_quiver_shape(self):
        q = frieze_quiver(3)
        labels = [v.label for v in q.vertices]
        assert labels == ["x1", "x2", "x3", "y1", "y2", "y3", "y4"]
        assert q.mult(0, 1) == 1 and q.mult(1, 2) == 1
        for k in range(1, 4):
            assert q.mult(k - 1, 3 + k - 1) == 1  # x_k -> y_k
        assert q.mult(6, 2) == 1  # y4 -> x3


class TestRelationChecks:
    def test_spo21(self):
        assert spo21_relation_check()

    def test_spo22(self):
        assert spo22_relation_check()

    def test_grassmannian(self):
        assert grassmannian_check()

    def test_flip_identity(self):
        assert flip_identity_check()

    def test_flip_intermediate_differs(self):
        from superclusters.quiver import mu_quiver

        seed = build_model("flipQ")
        intermediate = mu_quiver(seed.quiver, 0)
        assert intermediate != build_model("flipQprime").quiver

    def test_flip_double_reversal(self):
        def reverse(q):
            from superclusters.quiver import SuperQuiver

            return SuperQuiver(
                q.vertices, {(b, a): m for (a, b), m in q.arrows.items()}, q.loops
            )

        assert reverse(build_model("flipQprime").quiver) == build_model("flipQ").quiver

    def test_counterexample(self):
        assert counterexample7_check()


class TestSuperfrieze:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_rule_holds_everywhere(self, n):
        frieze = superfrieze_generate(n, 4)
        assert frieze_rule_check(frieze) == []

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_mutation(self, n):
        assert frieze_vs_mutation_check(n)

    def test_width_one_entry(self):
        frieze = superfrieze_generate(1, 2)
        amb = frieze.ambient
        x1p = frieze.diagonals[1].xs[0]
        expected = SuperFraction(parse_poly("2 + y2*y1", amb)) * SuperFraction(
            parse_poly("x1", amb)
        ).reciprocal()
        assert x1p.eq(expected)

    def test_width_two_entry(self):
        frieze = superfrieze_generate(2, 2)
        amb = frieze.ambient
        expected = SuperFraction(parse_poly("1 + x2 + y2*y1", amb)) * SuperFraction(
            parse_poly("x1", amb)
        ).reciprocal()
        assert frieze.diagonals[1].xs[0].eq(expected)

    def test_odd_recurrence_first_entry(self):
        # y1' = y2 - x1'*y1
        frieze = superfrieze_generate(2, 2)
        d1 = frieze.diagonals[1]
        d0 = frieze.diagonals[0]
        assert d1.ys[0].eq(d0.ys[1] - d1.xs[0] * d0.ys[0])

    def test_perturbation_detected(self):
        frieze = superfrieze_generate(2, 3)
        one = SuperFraction.const(frieze.ambient, 1)
        frieze.diagonals[1].xs[0] = frieze.diagonals[1].xs[0] + one
        assert frieze_rule_check(frieze)

    def test_mutation_reproduces_rule(self):
        # x_k * x_k' = 1 + x_{k+1} * x_{k-1}' + y_{k+1} y_k along the chain
        from superclusters.mutation import Seed

        n = 3
        seed = Seed(frieze_quiver(n))
        amb = seed.ambient
        one = SuperFraction.const(amb, 1)
        prev_mutated = one
        current = seed
        for k in range(1, n + 1):
            current = even_mutate(current, f"x{k}")
            xk = SuperFraction.symbol(amb, f"x{k}")
            xk1 = (
                SuperFraction.symbol(amb, f"x{k + 1}") if k < n else one
            )
            yk = SuperFraction.symbol(amb, f"y{k}")
            yk1 = SuperFraction.symbol(amb, f"y{k + 1}")
            lhs = xk * current.value(f"x{k}")
            assert lhs.eq(one + xk1 * prev_mutated + yk1 * yk)
            prev_mutated = current.value(f"x{k}")

    def test_bad_sizes_rejected(self):
        with pytest.raises(ValueError):
            superfrieze_generate(0, 2)
        with pytest.raises(ValueError):
            superfrieze_generate(2, 0)


class TestDiamondDictionary:
    def test_generic_element_satisfies_relations(self):
        assert generic_spo_element().relation_violations() == []

    def test_image_satisfies_rule(self):
        dia = diamond_spo_map(generic_spo_element())
        assert dia.violations() == []

    def test_round_trip(self):
        m = generic_spo_element()
        back = spo_from_diamond(diamond_spo_map(m))
        for field in ("a", "b", "c", "d", "e", "alpha", "beta", "gamma", "delta"):
            assert getattr(back, field).eq(getattr(m, field))

    def test_unit_element(self):
        from superclusters.ambient import Ambient

        amb = Ambient(["a"], [])
        one = SuperFraction.const(amb, 1)
        zero = SuperFraction.const(amb, 0)
        from superclusters.models import SpOElement

        m = SpOElement(one, zero, zero, one, one, zero, zero, zero, zero)
        assert m.relation_violations() == []
        assert diamond_spo_map(m).violations() == []

    def test_violating_element_detected(self):
        m = generic_spo_element()
        m.d = m.d + SuperFraction.const(m.d.ambient, 1)
        dia = diamond_spo_map(m)
        assert dia.violations()
