import random

from superclusters.models import build_model
from superclusters.mutclass import finite_type_verdict, mutation_class
from superclusters.quiver import (
    canonical_form,
    eta_quiver,
    mu_quiver,
    parse_quiver,
)
from quiver_random import random_superquiver


def oracle_class_size(q, labeled=True, cap=100000):
    """Independent plain BFS, written without the library's report machinery."""
    key = (lambda g: g.key()) if labeled else canonical_form
    seen = {key(q)}
    stack = [q]
    while stack:
        cur = stack.pop()
        for v in cur.vertices:
            if v.frozen:
                continue
            new = mu_quiver(cur, v.id) if v.parity == "even" else eta_quiver(cur, v.id)
            k = key(new)
            if k not in seen:
                seen.add(k)
                stack.append(new)
                if len(seen) > cap:
                    return None
    return len(seen)


class TestMutationClass:
    def test_single_vertex(self):
        q = parse_quiver("even a\n")
        assert mutation_class(q).size == 1

    def test_spo21_odd_only_labeled(self):
        q = build_model("spo21").quiver
        report = mutation_class(q, kinds=("odd",), labeled=True)
        assert report.finite and report.size == 4

    def test_cap_reached(self):
        q = parse_quiver(
            "even a\neven b\neven c\narrow a -> b * 3\narrow b -> c\n"
        )
        report = mutation_class(q, cap=20, labeled=True)
        assert report.verdict == "cap"

    def test_labeled_at_least_up_to_iso(self):
        rng = random.Random(43)
        for _ in range(8):
            q = random_superquiver(rng, max_even=3, max_odd=2, max_mult=1)
            lab = mutation_class(q, cap=3000, labeled=True)
            iso = mutation_class(q, cap=3000, labeled=False)
            if lab.finite and iso.finite:
                assert iso.size <= lab.size


class TestFiniteTypeVerdict:
    def test_spo21_bound(self):
        report = finite_type_verdict(build_model("spo21").quiver, labeled=True)
        assert report.finite
        r, s, n, bound = report.bound_check
        assert (r, s, n) == (2, 1, 2) and bound == 8
        full = mutation_class(build_model("spo21").quiver, labeled=True)
        assert full.size <= bound

    def test_kronecker3_infinite(self):
        q = parse_quiver(
            "even x1\neven x2\neven x3\narrow x1 -> x2 * 3\narrow x2 -> x3\n"
        )
        assert finite_type_verdict(q).verdict == "infinite"

    def test_purely_odd(self):
        q = parse_quiver("odd u\nodd v\narrow u -> v\n")
        report = finite_type_verdict(q, labeled=True)
        assert report.finite
        r, s, n, _bound = report.bound_check
        assert r == 1  # empty even restriction

    def test_bound_respected_random(self):
        rng = random.Random(47)
        checked = 0
        while checked < 50:
            q = random_superquiver(rng, max_even=3, max_odd=2, max_mult=1)
            verdict = finite_type_verdict(q, cap=3000, labeled=True)
            if not verdict.finite:
                continue
            full = mutation_class(q, cap=3000, labeled=True)
            if not full.finite:
                continue
            assert full.size <= verdict.bound_check[3]
            checked += 1

    def test_matches_independent_oracle(self):
        rng = random.Random(53)
        checked = 0
        while checked < 10:
            q = random_superquiver(rng, max_even=3, max_odd=2, max_mult=1)
            report = mutation_class(q, cap=3000, labeled=True)
            if not report.finite:
                continue
            assert oracle_class_size(q) == report.size
            checked += 1
