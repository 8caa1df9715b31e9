import random

import pytest

from superclusters.models import build_model
from superclusters.quiver import (
    QuiverSyntaxError,
    QuiverValidationError,
    SuperQuiver,
    VertexInfo,
    b_matrix,
    c1_at,
    c2_at,
    canonical_form,
    check_c1,
    check_c1_or_c2,
    check_c2,
    epsilon_signs,
    eta_quiver,
    format_quiver,
    is_isomorphic,
    mu_quiver,
    parse_quiver,
    restrict_even,
    restrict_odd,
    validate,
)
from quiver_random import random_superquiver


def quiver(text):
    return parse_quiver(text)


LINEAR3 = "even x1\neven x2\neven x3\narrow x1 -> x2\narrow x2 -> x3\n"


class TestValidate:
    def test_fixture_valid(self):
        assert validate(build_model("spo21").quiver) == []

    def test_even_two_cycle(self):
        q = parse_quiver(
            "even a\neven b\narrow a -> b\narrow b -> a\n", check=False
        )
        assert [v.code for v in validate(q)] == ["EvenEvenTwoCycle"]

    def test_odd_two_cycle(self):
        q = parse_quiver(
            "even a\nodd u\nodd v\narrow u -> v\narrow v -> u\n", check=False
        )
        assert [v.code for v in validate(q)] == ["OddOddTwoCycle"]

    def test_even_loop(self):
        q = parse_quiver("even a\nloop a\n", check=False)
        assert [v.code for v in validate(q)] == ["EvenLoop"]
        with pytest.raises(QuiverValidationError):
            parse_quiver("even a\nloop a\n")

    def test_even_odd_two_cycle_allowed(self):
        q = quiver("even a\nodd u\narrow a -> u\narrow u -> a\n")
        assert validate(q) == []


class TestConditions:
    def test_twist3_c2(self):
        assert check_c2(build_model("twist3").quiver)

    def test_counterexample_fails_both(self):
        q = build_model("counterexample7").quiver
        assert not check_c1(q) and not check_c2(q)
        assert not check_c1_or_c2(q)

    def test_purely_even_vacuous(self):
        q = quiver(LINEAR3)
        assert check_c1(q) and check_c2(q)

    def test_c1_needs_frozen_even_neighbors(self):
        # an odd through-pair without a direct arrow: C1 hinges on the
        # mutability of the even neighbor
        base = "even a\neven b{frozen}\nodd u\nodd v\narrow u -> a\narrow a -> v\narrow a -> b\n"
        free = quiver(base.replace("{frozen}", ""))
        frozen = quiver(base.replace("{frozen}", " frozen"))
        assert not c1_at(free, 0)
        assert c1_at(frozen, 0)

    def test_c2_return_path(self):
        q = quiver(
            "even a\nodd u\nodd v\n"
            "arrow u -> a\narrow a -> v\narrow v -> a\narrow a -> u\n"
        )
        assert c2_at(q, 0)


class TestMuQuiver:
    def test_no_through_path_reverses(self):
        q = quiver("even x1\neven x2\neven x3\narrow x1 -> x2\narrow x3 -> x2\n")
        out = mu_quiver(q, 1)
        assert out.arrows == {(1, 0): 1, (1, 2): 1}

    def test_linear_path_adds_arrow(self):
        out = mu_quiver(quiver(LINEAR3), 1)
        assert out.arrows == {(0, 2): 1, (1, 0): 1, (2, 1): 1}

    def test_even_odd_arrows_untouched(self):
        q = build_model("flipQ").quiver
        out = mu_quiver(q, 0)  # v1
        # even arrows at v1 reversed, odd arrows v1->v2, v1->v4 kept
        assert out.mult(0, 1) == 1 and out.mult(0, 3) == 1
        assert out.mult(0, 2) == 1 and out.mult(0, 4) == 1
        assert out.mult(2, 0) == 0 and out.mult(4, 0) == 0

    def test_involution_random(self):
        rng = random.Random(5)
        for _ in range(30):
            q = random_superquiver(rng)
            for k in q.even_ids():
                if q.vertices[k].frozen:
                    continue
                assert mu_quiver(mu_quiver(q, k), k) == q

    def test_preserves_validity_random(self):
        rng = random.Random(6)
        for _ in range(30):
            q = random_superquiver(rng)
            for k in q.even_ids():
                if not q.vertices[k].frozen:
                    assert validate(mu_quiver(q, k)) == []

    def test_multiplicity_product(self):
        q = quiver(
            "even x1\neven x2\neven x3\narrow x1 -> x2 * 2\narrow x2 -> x3 * 3\n"
        )
        assert mu_quiver(q, 1).mult(0, 2) == 6

    def test_two_cycle_cancellation(self):
        q = quiver("even x1\neven x2\neven x3\narrow x1 -> x2\narrow x2 -> x3\narrow x3 -> x1\n")
        out = mu_quiver(q, 1)
        # created x1->x3 cancels against existing x3->x1
        assert out.mult(0, 2) == 0 and out.mult(2, 0) == 0

    def test_rejects_bad_vertex(self):
        q = build_model("spo21").quiver
        with pytest.raises(ValueError):
            mu_quiver(q, q.vertex("b").id)  # frozen
        with pytest.raises(ValueError):
            mu_quiver(q, q.vertex("al").id)  # odd


class TestEtaQuiver:
    def test_reverses_everything_at_vertex(self):
        q = build_model("flipQ").quiver
        out = eta_quiver(q, 1)  # v2
        assert out.mult(1, 0) == 1  # v1->v2 reversed
        # 2-cycles with v3, v5 map to themselves
        assert out.mult(1, 2) == 1 and out.mult(2, 1) == 1
        assert out.mult(1, 4) == 1 and out.mult(4, 1) == 1

    def test_isolated_loop_fixed(self):
        q = quiver("odd u\nloop u\n")
        assert eta_quiver(q, 0) == q

    def test_odd_path_adds_arrow(self):
        q = quiver("odd u\nodd v\nodd w\narrow u -> v\narrow v -> w\n")
        out = eta_quiver(q, 1)
        assert out.mult(0, 2) == 1 and out.mult(1, 0) == 1 and out.mult(2, 1) == 1

    def test_preserves_validity_random(self):
        rng = random.Random(8)
        for _ in range(30):
            q = random_superquiver(rng)
            for i in q.odd_ids():
                if not q.vertices[i].frozen:
                    assert validate(eta_quiver(q, i)) == []

    def test_double_reversal_without_paths(self):
        q = quiver("even a\nodd u\narrow a -> u\narrow u -> a\nloop u\n")
        assert eta_quiver(eta_quiver(q, 1), 1) == q


class TestRestrictions:
    def test_twist3_even_part(self):
        qx = restrict_even(build_model("twist3").quiver)
        assert [v.label for v in qx.vertices] == ["x1", "x2", "x3"]
        assert qx.arrows == {(0, 1): 1, (2, 1): 1}

    def test_spo21_odd_part_isolated(self):
        qy = restrict_odd(build_model("spo21").quiver)
        assert [v.label for v in qy.vertices] == ["al", "be"]
        assert qy.arrows == {} and qy.loops == {}

    def test_flip_even_part(self):
        qx = restrict_even(build_model("flipQ").quiver)
        assert qx.arrows == {(1, 0): 1, (2, 0): 1}

    def test_restriction_commutes_with_mu(self):
        rng = random.Random(9)
        for _ in range(20):
            q = random_superquiver(rng)
            pos = {vid: i for i, vid in enumerate(q.even_ids())}
            for k in q.even_ids():
                if q.vertices[k].frozen:
                    continue
                lhs = restrict_even(mu_quiver(q, k))
                rhs = mu_quiver(restrict_even(q), pos[k])
                assert lhs == rhs


class TestSignsAndMatrices:
    def test_twist3_epsilon(self):
        assert epsilon_signs(build_model("twist3").quiver) == [1, -1, -1]

    def test_no_loops_all_positive(self):
        assert epsilon_signs(build_model("spo21").quiver) == [1, 1, 1]

    def test_double_loop_cancels(self):
        q = quiver("even x1\nodd u\narrow u -> x1\nloop u * 2\n")
        assert epsilon_signs(q) == [1]

    def test_b_matrix(self):
        assert b_matrix(quiver("even a\neven b\narrow a -> b\n")) == [
            [0, 1],
            [-1, 0],
        ]
        assert b_matrix(quiver("even a\neven b\narrow a -> b * 2\n"))[0][1] == 2
        with pytest.raises(ValueError):
            b_matrix(build_model("spo21").quiver)

    def test_b_matrix_mutation_agrees(self):
        # quiver mutation tracks matrix mutation on purely even quivers
        from superclusters.mutation import ClassicalSeed, classical_mutate

        rng = random.Random(10)
        for _ in range(20):
            q = random_superquiver(rng, max_odd=0, allow_frozen=False)
            k = rng.choice(q.even_ids())
            cs = ClassicalSeed.initial(b_matrix(q), q.ambient())
            assert b_matrix(mu_quiver(q, k)) == classical_mutate(cs, k).b


class TestIsomorphism:
    def test_swap(self):
        a = quiver("even a\neven b\narrow a -> b\n")
        b = quiver("even a\neven b\narrow b -> a\n")
        assert is_isomorphic(a, b)

    def test_mutability_preserved(self):
        a = quiver("even a\neven b frozen\narrow a -> b\n")
        b = quiver("even a frozen\neven b\narrow a -> b\n")
        assert not is_isomorphic(a, b)

    def test_parity_preserved(self):
        a = quiver("even a\nodd u\narrow a -> u\n")
        b = quiver("even a\neven b\narrow a -> b\n")
        assert not is_isomorphic(a, b)

    def test_invariance_under_permutation(self):
        rng = random.Random(12)
        for _ in range(15):
            q = random_superquiver(rng, max_even=3, max_odd=2)
            perm = list(range(len(q.vertices)))
            # shuffle within (parity, frozen) classes
            classes = {}
            for v in q.vertices:
                classes.setdefault((v.parity, v.frozen), []).append(v.id)
            for ids in classes.values():
                shuffled = ids[:]
                rng.shuffle(shuffled)
                for old, new in zip(ids, shuffled):
                    perm[old] = new
            vertices = [None] * len(q.vertices)
            for v in q.vertices:
                vertices[perm[v.id]] = VertexInfo(
                    perm[v.id], f"v{perm[v.id]}", v.parity, v.frozen
                )
            permuted = SuperQuiver(
                vertices,
                {(perm[a], perm[b]): m for (a, b), m in q.arrows.items()},
                {perm[v]: c for v, c in q.loops.items()},
            )
            assert canonical_form(q) == canonical_form(permuted)


class TestText:
    def test_round_trip_fixtures(self):
        for name in ("spo21", "spo22", "grassmannian", "flipQ", "twist3"):
            q = build_model(name).quiver
            assert parse_quiver(format_quiver(q)) == q

    def test_round_trip_random(self):
        rng = random.Random(13)
        for _ in range(20):
            q = random_superquiver(rng)
            got = parse_quiver(format_quiver(q))
            assert {v.label for v in got.vertices} == {
                v.label for v in q.vertices
            }
            assert sorted(got.arrows.values()) == sorted(q.arrows.values())

    def test_empty(self):
        q = parse_quiver("# nothing here\n")
        assert q.vertices == ()

    def test_syntax_errors(self):
        for bad in (
            "even\n",
            "arrow a -> b\n",
            "even a\narrow a => a\n",
            "loop a\n",
            "banana a\n",
            "even a\neven a\n",
        ):
            with pytest.raises(QuiverSyntaxError):
                parse_quiver(bad)

    def test_multiplicity_syntax(self):
        q = quiver("even a\neven b\narrow a -> b * 3\n")
        assert q.mult(0, 1) == 3
        assert "* 3" in format_quiver(q)
