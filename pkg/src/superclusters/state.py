"""JSON-ready views of quivers, values, and seeds.

Shared by the CLI (--json mode) and the HTTP service so both emit the exact
same strings for the same objects.
"""

from __future__ import annotations

from superclusters.mutation import Seed
from superclusters.polytext import format_fraction
from superclusters.quiver import (
    SuperQuiver,
    c1_at,
    c2_at,
    check_c1,
    check_c2,
    format_quiver,
)
from superclusters.superfrac import SuperFraction


def value_state(value: SuperFraction) -> dict:
    """Formatted string plus structured terms (coeff, x-exponents, odd indices)."""
    norm = value.normalize()
    return {
        "text": format_fraction(norm),
        "num_terms": [
            {
                "coefficient": str(coeff),
                "exponents": list(exps),
                "odd": list(odd),
            }
            for (exps, odd), coeff in norm.num.sorted_terms()
        ],
        "den_mono": list(norm.den_mono),
        "den_factors": [
            [
                {
                    "coefficient": str(coeff),
                    "exponents": list(exps),
                    "odd": list(odd),
                }
                for (exps, odd), coeff in f.sorted_terms()
            ]
            for f in norm.den_factors
        ],
    }


def quiver_state(q: SuperQuiver) -> dict:
    return {
        "vertices": [
            {
                "id": v.id,
                "label": v.label,
                "parity": v.parity,
                "frozen": v.frozen,
            }
            for v in q.vertices
        ],
        "arrows": [
            {"src": a, "dst": b, "mult": m} for (a, b), m in sorted(q.arrows.items())
        ],
        "loops": [{"vertex": v, "count": c} for v, c in sorted(q.loops.items())],
        "text": format_quiver(q),
        "conditions": {
            "c1": check_c1(q),
            "c2": check_c2(q),
            "per_vertex": [
                {
                    "label": v.label,
                    "c1": c1_at(q, v.id),
                    "c2": c2_at(q, v.id),
                }
                for v in q.vertices
                if v.parity == "even" and not v.frozen
            ],
        },
    }


def seed_state(seed: Seed) -> dict:
    return {
        "quiver": quiver_state(seed.quiver),
        "values": {
            v.label: value_state(seed.values[v.id]) for v in seed.quiver.vertices
        },
        "legal_moves": [
            {"kind": v.parity, "vertex": v.label}
            for v in seed.quiver.vertices
            if not v.frozen
        ],
    }


def value_line(seed: Seed, label: str, initial: Seed) -> str:
    """One human-readable line per vertex; mutated values get a prime mark."""
    v = seed.quiver.vertex(label)
    current = seed.values[v.id]
    mark = "" if current.eq(initial.values[v.id]) else "'"
    return f"{label}{mark} = {format_fraction(current.normalize())}"
