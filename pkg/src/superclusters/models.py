"""Built-in seeds and end-to-end identity checks.

Ships the fixture quivers (SpO supergroups, the super Grassmannian, the
bipartite-flip pair, the non-Laurent counterexample, small teaching quivers)
plus the frieze machinery: frieze quiver construction, symbolic superfrieze
generation, the six-identity diamond rule, and the diamond <-> SpO(2|1)
dictionary.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from superclusters.ambient import Ambient
from superclusters.mutation import (
    MutationStep,
    Seed,
    apply_sequence,
    enumerate_even_vars,
    even_mutate,
    is_laurent,
    odd_mutate,
)
from superclusters.quiver import (
    SuperQuiver,
    VertexInfo,
    parse_quiver,
)
from superclusters.superfrac import SuperFraction, substitute
from superclusters.polytext import parse_poly

FIXTURE_MODELS = (
    "spo21",
    "spo22",
    "grassmannian",
    "counterexample7",
    "flipQ",
    "flipQprime",
    "twist3",
    "pair1",
    "pair2",
    "pair3",
    "pair4",
)


def model_names():
    return list(FIXTURE_MODELS) + ["frieze(n)"]


def _fixture_text(name):
    return (
        resources.files("superclusters.fixtures").joinpath(f"{name}.sq").read_text()
    )


def frieze_quiver(n: int) -> SuperQuiver:
    """Even path x1 -> ... -> xn with odd vertices y1..y(n+1) braided in."""
    if n < 1:
        raise ValueError("width must be >= 1")
    vertices = [VertexInfo(k - 1, f"x{k}", "even") for k in range(1, n + 1)]
    vertices += [
        VertexInfo(n + k - 1, f"y{k}", "odd") for k in range(1, n + 2)
    ]
    arrows = {}
    for k in range(1, n):
        arrows[(k - 1, k)] = 1  # x_k -> x_{k+1}
    for k in range(1, n + 1):
        arrows[(k - 1, n + k - 1)] = 1  # x_k -> y_k
    for k in range(2, n + 1):
        arrows[(n + k - 1, k - 2)] = 1  # y_k -> x_{k-1}
    arrows[(2 * n, n - 1)] = 1  # y_{n+1} -> x_n
    return SuperQuiver(vertices, arrows)


def build_model(name: str) -> Seed:
    if name.startswith("frieze(") and name.endswith(")"):
        return Seed(frieze_quiver(int(name[7:-1])))
    if name not in FIXTURE_MODELS:
        raise KeyError(f"unknown model {name!r}")
    return Seed(parse_quiver(_fixture_text(name)))


# -- relation checks -------------------------------------------------------


def _sym(amb, name):
    return SuperFraction.symbol(amb, name)


def spo21_relation_check() -> bool:
    """The mutated seed generates the defining relations of SpO(2|1)."""
    seed = build_model("spo21")
    amb = seed.ambient
    mutated = even_mutate(seed, "a")
    d = mutated.value("a")
    a, b, c = (_sym(amb, s) for s in "abc")
    al, be = _sym(amb, "al"), _sym(amb, "be")
    one = SuperFraction.const(amb, 1)
    if not (a * d).eq(one + b * c + al * be):
        return False
    if not even_mutate(mutated, "a").value("a").eq(a):
        return False
    e = one + al * be
    ga = a * be - b * al
    de = c * be - d * al
    checks = [
        (a * d, one + b * c + al * be),
        (e, one + al * be),
        (ga, a * be - b * al),
        (de, c * be - d * al),
        (e * e, one + 2 * (al * be)),
    ]
    if not all(lhs.eq(rhs) for lhs, rhs in checks):
        return False
    evens = enumerate_even_vars(seed, 6)
    expected = [a, b, c, d]
    return len(evens) == 4 and all(any(v.eq(x) for v in evens) for x in expected)


def spo22_relation_check() -> bool:
    seed = build_model("spo22")
    amb = seed.ambient
    one = SuperFraction.const(amb, 1)
    a, b, c = (_sym(amb, s) for s in "abc")
    e1, e2, e3 = (_sym(amb, f"e{i}") for i in (1, 2, 3))
    al1, al2 = _sym(amb, "al1"), _sym(amb, "al2")
    be1, be2 = _sym(amb, "be1"), _sym(amb, "be2")
    ga1, ga2 = _sym(amb, "ga1"), _sym(amb, "ga2")
    de1, de2 = _sym(amb, "de1"), _sym(amb, "de2")

    d = even_mutate(seed, "a").value("a")
    if not (a * d).eq(one + b * c + be2 * al1 + be1 * al2):
        return False
    # anticommuted form of the same relation
    if not (a * d).eq(one + b * c - al1 * be2 - al2 * be1):
        return False
    e4 = even_mutate(seed, "e1").value("e1")
    return (e1 * e4).eq(one - e2 * e3 + de2 * ga1 + de1 * ga2)


def grassmannian_check() -> bool:
    seed = build_model("grassmannian")
    amb = seed.ambient
    q13 = even_mutate(seed, "q24").value("q24")
    l3 = odd_mutate(seed, "l2").value("l2")

    q12, q14, q23, q24, q34 = (
        _sym(amb, s) for s in ("q12", "q14", "q23", "q24", "q34")
    )
    l1, l2, l4 = _sym(amb, "l1"), _sym(amb, "l2"), _sym(amb, "l4")

    if not q13.eq((q12 * q34 + q23 * q14) * q24.reciprocal()):
        return False
    if not l3.eq((l4 * q12 + l1 * q24) * q14.reciprocal()):
        return False
    even_pluecker = q12 * q34 - q13 * q24 + q14 * q23
    odd_pluecker = q12 * l4 - q14 * l3 + q24 * l1
    return even_pluecker.is_zero() and odd_pluecker.is_zero()


def flip_identity_check() -> bool:
    """mu(v1), eta(v2), eta(v4) turns the flip quiver into its full reversal."""
    seed = build_model("flipQ")
    steps = [
        MutationStep("even", "v1"),
        MutationStep("odd", "v2"),
        MutationStep("odd", "v4"),
    ]
    result = apply_sequence(seed, steps, mode="quiver")
    target = build_model("flipQprime").quiver
    return result.quiver == target


def counterexample7_check() -> bool:
    """The three-step chain leaves the Laurent ring."""
    seed = build_model("counterexample7")
    amb = seed.ambient
    s1 = even_mutate(seed, "x1")
    s2 = even_mutate(s1, "x2")
    s3 = even_mutate(s2, "x1")
    x1p, x2p, x1pp = s1.value("x1"), s2.value("x2"), s3.value("x1")

    def frac(num, den):
        return SuperFraction(parse_poly(num, amb)) * SuperFraction(
            parse_poly(den, amb)
        ).reciprocal()

    if not x1p.eq(frac("1 + x2", "x1")):
        return False
    if not x2p.eq(frac("1 + x2 + x1 + x1*y1*y2", "x1*x2")):
        return False
    if not x1pp.eq(frac("1 + x2 + x1 + x1*y1*y2 + x1*x2", "x2 + x2^2")):
        return False
    return not is_laurent(x1pp).laurent


# -- superfriezes ----------------------------------------------------------


@dataclass
class Diagonal:
    xs: list  # even entries x_1..x_n
    ys: list  # odd entries y_1..y_{n+1}
    ts: list  # derived odd entries t_1..t_{n+1}


class Superfrieze:
    """Diagonal-major window of a width-n superfrieze."""

    def __init__(self, width: int, ambient: Ambient):
        self.width = width
        self.ambient = ambient
        self.diagonals = []

    # boundary-aware accessors ------------------------------------------

    def x(self, d, k):
        n = self.width
        if k == 0 or k == n + 1:
            return SuperFraction.const(self.ambient, 1)
        if k == -1 or k == n + 2:
            return SuperFraction.const(self.ambient, 0)
        return self.diagonals[d].xs[k - 1]

    def y(self, d, k):
        if k == 0 or k == self.width + 2:
            return SuperFraction.const(self.ambient, 0)
        return self.diagonals[d].ys[k - 1]

    def t(self, d, k):
        if k == 0 or k == self.width + 2:
            return SuperFraction.const(self.ambient, 0)
        return self.diagonals[d].ts[k - 1]


def _stars(width, amb, xs, ys):
    """t_k = x_{k-1} y_k - x_k y_{k-1}, with x_0 = x_{n+1} = 1, y_0 = 0."""
    one = SuperFraction.const(amb, 1)
    zero = SuperFraction.const(amb, 0)
    xb = [one] + list(xs) + [one]
    yb = [zero] + list(ys)
    return [xb[k - 1] * yb[k] - xb[k] * yb[k - 1] for k in range(1, width + 2)]


def superfrieze_generate(n: int, window: int) -> Superfrieze:
    """Seed the first diagonal with symbols and extend by the recurrences."""
    if n < 1 or window < 1:
        raise ValueError("width and window must be >= 1")
    amb = Ambient(
        [f"x{k}" for k in range(1, n + 1)], [f"y{k}" for k in range(1, n + 2)]
    )
    one = SuperFraction.const(amb, 1)
    xs = [_sym(amb, f"x{k}") for k in range(1, n + 1)]
    ys = [_sym(amb, f"y{k}") for k in range(1, n + 2)]
    frieze = Superfrieze(n, amb)
    frieze.diagonals.append(Diagonal(xs, ys, _stars(n, amb, xs, ys)))
    for _ in range(window - 1):
        prev = frieze.diagonals[-1]
        new_xs = []
        for k in range(1, n + 1):
            left = new_xs[k - 2] if k >= 2 else one
            below = prev.xs[k] if k < n else one
            new_xs.append(
                (one + below * left + frieze_pair(prev, k)) * prev.xs[k - 1].reciprocal()
            )
        y1 = prev.ys[0]
        zero = SuperFraction.const(amb, 0)
        yb = list(prev.ys) + [zero]
        xb = list(new_xs) + [one]
        new_ys = [yb[k] - xb[k - 1] * y1 for k in range(1, n + 2)]
        frieze.diagonals.append(
            Diagonal(new_xs, new_ys, _stars(n, amb, new_xs, new_ys))
        )
    return frieze


def frieze_pair(diag: Diagonal, k: int) -> SuperFraction:
    """The odd product y_{k+1} y_k from one diagonal (0 past the boundary)."""
    if k + 1 >= len(diag.ys) + 1:
        raise IndexError(k)
    return diag.ys[k] * diag.ys[k - 1]


def diamond_violations(A, B, C, D, Xi, Psi, Phi, Sigma):
    """The six local identities; returns the names of the ones that fail."""
    one = SuperFraction.const(A.ambient, 1)
    rules = {
        "AD-BC=1+Sigma*Xi": (A * D - B * C, one + Sigma * Xi),
        "B*Phi-A*Psi=Xi": (B * Phi - A * Psi, Xi),
        "B*Sigma-D*Xi=Psi": (B * Sigma - D * Xi, Psi),
        "A*Sigma-C*Xi=Phi": (A * Sigma - C * Xi, Phi),
        "D*Phi-C*Psi=Sigma": (D * Phi - C * Psi, Sigma),
        "Xi*Sigma=Phi*Psi": (Xi * Sigma, Phi * Psi),
    }
    return [name for name, (lhs, rhs) in rules.items() if not lhs.eq(rhs)]


def frieze_rule_check(frieze: Superfrieze):
    """Check every diamond between adjacent diagonals; list the failures."""
    out = []
    n = frieze.width
    for d in range(len(frieze.diagonals) - 1):
        for k in range(0, n + 2):
            bad = diamond_violations(
                frieze.x(d, k),
                frieze.x(d + 1, k - 1),
                frieze.x(d, k + 1),
                frieze.x(d + 1, k),
                frieze.y(d, k),
                frieze.t(d + 1, k),
                frieze.t(d, k + 1),
                frieze.y(d, k + 1),
            )
            out.extend(f"diagonal {d}, position {k}: {name}" for name in bad)
    return out


def frieze_vs_mutation_check(n: int) -> bool:
    """Mutating x1..xn on the frieze quiver reproduces the next diagonal."""
    frieze = superfrieze_generate(n, 2)
    seed = Seed(frieze_quiver(n))
    for k in range(1, n + 1):
        seed = even_mutate(seed, f"x{k}")
        if not seed.value(f"x{k}").eq(frieze.diagonals[1].xs[k - 1]):
            return False
    return True


# -- the diamond <-> SpO(2|1) dictionary -----------------------------------


@dataclass
class SpOElement:
    a: SuperFraction
    b: SuperFraction
    c: SuperFraction
    d: SuperFraction
    e: SuperFraction
    alpha: SuperFraction
    beta: SuperFraction
    gamma: SuperFraction
    delta: SuperFraction

    def relation_violations(self):
        one = SuperFraction.const(self.a.ambient, 1)
        rules = {
            "ad=1+bc+alpha*beta": (self.a * self.d, one + self.b * self.c + self.alpha * self.beta),
            "e=1+alpha*beta": (self.e, one + self.alpha * self.beta),
            "gamma=a*beta-b*alpha": (self.gamma, self.a * self.beta - self.b * self.alpha),
            "delta=c*beta-d*alpha": (self.delta, self.c * self.beta - self.d * self.alpha),
        }
        return [name for name, (lhs, rhs) in rules.items() if not lhs.eq(rhs)]


@dataclass
class ElementaryDiamond:
    A: SuperFraction  # left
    B: SuperFraction  # top
    C: SuperFraction  # bottom
    D: SuperFraction  # right
    Xi: SuperFraction  # NW
    Psi: SuperFraction  # NE
    Phi: SuperFraction  # SW
    Sigma: SuperFraction  # SE

    def violations(self):
        return diamond_violations(
            self.A, self.B, self.C, self.D, self.Xi, self.Psi, self.Phi, self.Sigma
        )


def generic_spo_element() -> SpOElement:
    """The free element: symbols a, b, c, al, be with d, e, gamma, delta derived."""
    amb = Ambient(["a", "b", "c"], ["al", "be"])
    one = SuperFraction.const(amb, 1)
    a, b, c = (_sym(amb, s) for s in "abc")
    al, be = _sym(amb, "al"), _sym(amb, "be")
    d = (one + b * c + al * be) * a.reciprocal()
    return SpOElement(
        a=a,
        b=b,
        c=c,
        d=d,
        e=one + al * be,
        alpha=al,
        beta=be,
        gamma=a * be - b * al,
        delta=c * be - d * al,
    )


def diamond_spo_map(m: SpOElement) -> ElementaryDiamond:
    return ElementaryDiamond(
        A=-m.b,
        B=-m.a,
        C=m.d,
        D=m.c,
        Xi=-m.gamma,
        Psi=m.alpha,
        Phi=m.beta,
        Sigma=m.delta,
    )


def spo_from_diamond(dia: ElementaryDiamond) -> SpOElement:
    one = SuperFraction.const(dia.A.ambient, 1)
    alpha = dia.Psi
    beta = dia.Phi
    return SpOElement(
        a=-dia.B,
        b=-dia.A,
        c=dia.D,
        d=dia.C,
        e=one + alpha * beta,
        alpha=alpha,
        beta=beta,
        gamma=-dia.Xi,
        delta=dia.Sigma,
    )
