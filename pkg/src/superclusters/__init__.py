"""Exact symbolic engine for cluster superalgebras.

Superquivers with even (commuting) and odd (Grassmann) vertices, even and
odd seed mutation, Laurent certification, mutation-class search, and a set
of built-in models (SpO supergroups, the super Grassmannian G(2|0;4|1),
superfriezes).
"""

from superclusters.ambient import Ambient
from superclusters.superpoly import SuperPoly, DoesNotDivide
from superclusters.superfrac import SuperFraction
from superclusters.quiver import SuperQuiver, VertexInfo, parse_quiver, format_quiver
from superclusters.mutation import (
    Seed,
    MutationStep,
    even_mutate,
    odd_mutate,
    apply_sequence,
    enumerate_even_vars,
    enumerate_odd_vars,
    is_laurent,
)
from superclusters.mutclass import mutation_class, finite_type_verdict
from superclusters.models import build_model, model_names

__all__ = [
    "Ambient",
    "SuperPoly",
    "DoesNotDivide",
    "SuperFraction",
    "SuperQuiver",
    "VertexInfo",
    "parse_quiver",
    "format_quiver",
    "Seed",
    "MutationStep",
    "even_mutate",
    "odd_mutate",
    "apply_sequence",
    "enumerate_even_vars",
    "enumerate_odd_vars",
    "is_laurent",
    "mutation_class",
    "finite_type_verdict",
    "build_model",
    "model_names",
]
