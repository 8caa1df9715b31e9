"""Mutation-class enumeration and the finiteness criterion.

BFS over quiver-level mutations at exchangeable vertices, deduplicated
either by labeled equality or by brute-force canonical form.  The finiteness
verdict enumerates the even and odd restrictions separately and reports the
r*s*2^n bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from superclusters.quiver import (
    SuperQuiver,
    canonical_form,
    eta_quiver,
    mu_quiver,
    restrict_even,
    restrict_odd,
)


@dataclass
class MutClassReport:
    verdict: str  # 'finite' | 'cap' | 'infinite'
    size: int = 0
    members: list = field(default_factory=list)
    witness: SuperQuiver = None
    reason: str = ""
    bound_check: tuple = None  # (r, s, n, r*s*2^n)

    @property
    def finite(self):
        return self.verdict == "finite"


def _steps(q: SuperQuiver, kinds):
    for v in q.vertices:
        if v.frozen:
            continue
        if v.parity == "even" and "even" in kinds:
            yield ("even", v.id)
        elif v.parity == "odd" and "odd" in kinds:
            yield ("odd", v.id)


def _component_max_mult(q: SuperQuiver):
    """Max arrow multiplicity within connected components of >= 3 vertices."""
    n = len(q.vertices)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (a, b) in q.arrows:
        parent[find(a)] = find(b)
    sizes = {}
    for v in range(n):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    best = 0
    for (a, b), m in q.arrows.items():
        if sizes[find(a)] >= 3:
            best = max(best, m)
    return best


def mutation_class(
    q: SuperQuiver,
    cap: int = 10000,
    kinds=("even", "odd"),
    labeled: bool = False,
    infinite_heuristic: bool = False,
) -> MutClassReport:
    """Enumerate all quivers reachable by mutation, up to the visit cap."""
    key_of = (lambda g: g.key()) if labeled else canonical_form
    seen = {key_of(q)}
    members = [q]
    frontier = deque([q])
    while frontier:
        current = frontier.popleft()
        for kind, vid in _steps(current, kinds):
            new = (
                mu_quiver(current, vid) if kind == "even" else eta_quiver(current, vid)
            )
            if infinite_heuristic and _component_max_mult(new) > 2:
                return MutClassReport(
                    "infinite",
                    size=len(members),
                    witness=new,
                    reason="arrow multiplicity exceeds 2 inside a connected "
                    "component with at least 3 vertices",
                )
            key = key_of(new)
            if key in seen:
                continue
            seen.add(key)
            members.append(new)
            if len(members) > cap:
                return MutClassReport("cap", size=len(members), members=members)
            frontier.append(new)
    return MutClassReport("finite", size=len(members), members=members)


def finite_type_verdict(q: SuperQuiver, cap: int = 10000, labeled: bool = False) -> MutClassReport:
    """Finite mutation type iff both parity restrictions have finite classes."""
    qx = restrict_even(q)
    qy = restrict_odd(q)
    rx = mutation_class(qx, cap, kinds=("even",), labeled=labeled, infinite_heuristic=True)
    if rx.verdict == "infinite":
        return MutClassReport(
            "infinite", witness=rx.witness, reason="even restriction: " + rx.reason
        )
    ry = mutation_class(qy, cap, kinds=("odd",), labeled=labeled)
    if rx.verdict == "cap" or ry.verdict == "cap":
        return MutClassReport("cap", size=max(rx.size, ry.size))
    r, s, n = rx.size, ry.size, len(qy.vertices)
    return MutClassReport(
        "finite",
        size=r * s,
        bound_check=(r, s, n, r * s * 2**n),
    )
