"""Seeds and mutation of their values.

A Seed is a superquiver plus the current SuperFraction attached to every
vertex.  Even mutation exchanges the value at an even vertex for
(in-product + out-product + odd pair sum)/old; odd mutation combines the
neighboring odd values through even 2-paths.  Both also rewire the quiver.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from superclusters.quiver import (
    SuperQuiver,
    eta_quiver,
    mu_quiver,
)
from superclusters.superfrac import SuperFraction
from superclusters.superpoly import DoesNotDivide, SuperPoly


class IllegalMutation(ValueError):
    """Wrong parity, frozen vertex, or a mixed sequence in algebra mode."""


@dataclass(frozen=True)
class MutationStep:
    kind: str  # 'even' | 'odd'
    vertex: str  # vertex label

    def __post_init__(self):
        if self.kind not in ("even", "odd"):
            raise ValueError(f"bad step kind {self.kind!r}")


class Seed:
    __slots__ = ("quiver", "values", "ambient")

    def __init__(self, quiver: SuperQuiver, values=None, ambient=None):
        self.quiver = quiver
        self.ambient = ambient if ambient is not None else quiver.ambient()
        if values is None:
            values = {
                v.id: SuperFraction.symbol(self.ambient, v.label)
                for v in quiver.vertices
            }
        self.values = dict(values)
        for v in quiver.vertices:
            if v.id not in self.values:
                raise ValueError(f"no value for vertex {v.label!r}")

    def value(self, label: str) -> SuperFraction:
        return self.values[self.quiver.vertex(label).id]

    def key(self):
        """Hashable state identifier (labeled quiver + normalized values)."""
        vals = tuple(hash(self.values[v.id]) for v in self.quiver.vertices)
        return (self.quiver.key(), vals)

    def __repr__(self):
        return f"Seed({self.quiver!r})"


def _require(q, k, parity):
    v = q.vertices[k]
    if v.parity != parity or v.frozen:
        raise IllegalMutation(
            f"vertex {v.label!r} is not an exchangeable {parity} vertex"
        )


def _loop_sign(q, k, neighbors):
    """(-1)^u with u = loop total over odd vertices touching any of `neighbors`."""
    u = 0
    for v, count in q.loops.items():
        if q.is_odd(v) and any(q.adjacent(v, x) for x in neighbors):
            u += count
    return -1 if u % 2 else 1


def _odd_pair_sum(seed: Seed, k: int) -> "SuperFraction":
    """Sum over 2-paths y_i -> x_k -> y_j with no direct arrow y_i -> y_j."""
    q = seed.quiver
    odd_ins = [(a, m) for (a, m) in q.in_neighbors(k) if q.is_odd(a)]
    odd_outs = [(b, m) for (b, m) in q.out_neighbors(k) if q.is_odd(b)]
    total = SuperFraction.const(seed.ambient, 0)
    for i, p in odd_ins:
        for j, r in odd_outs:
            if i == j or q.mult(i, j):
                continue  # y^2 = 0 / excluded by a direct odd-odd arrow
            total = total + (p * r) * (seed.values[i] * seed.values[j])
    return total


def even_mutate(seed: Seed, k) -> Seed:
    if isinstance(k, str):
        k = seed.quiver.vertex(k).id
    q = seed.quiver
    _require(q, k, "even")

    even_ins = [(a, m) for (a, m) in q.in_neighbors(k) if q.is_even(a)]
    even_outs = [(b, m) for (b, m) in q.out_neighbors(k) if q.is_even(b)]

    in_prod = SuperFraction.const(seed.ambient, _loop_sign(q, k, [a for a, _ in even_ins]))
    for a, m in even_ins:
        in_prod = in_prod * seed.values[a] ** m
    out_prod = SuperFraction.const(seed.ambient, _loop_sign(q, k, [b for b, _ in even_outs]))
    for b, m in even_outs:
        out_prod = out_prod * seed.values[b] ** m

    numerator = in_prod + out_prod + _odd_pair_sum(seed, k)
    new_value = numerator * seed.values[k].reciprocal()

    values = dict(seed.values)
    values[k] = new_value
    return Seed(mu_quiver(q, k), values, seed.ambient)


def odd_mutate(seed: Seed, i) -> Seed:
    if isinstance(i, str):
        i = seed.quiver.vertex(i).id
    q = seed.quiver
    _require(q, i, "odd")

    has_odd_arrow = any(
        (b == i and a != i and q.is_odd(a)) or (a == i and b != i and q.is_odd(b))
        for (a, b) in q.arrows
    )
    delta = 0 if has_odd_arrow else 1

    prefactor = SuperFraction.const(seed.ambient, 1)
    for x in q.even_ids():
        fwd, back = q.mult(x, i), q.mult(i, x)
        if fwd and back:
            if min(fwd, back) > 1:
                warnings.warn(
                    f"2-cycle between {q.vertices[x].label!r} and "
                    f"{q.vertices[i].label!r} has multiplicity > 1; "
                    "using exponent 1 in the exchange prefactor"
                )
            prefactor = prefactor * seed.values[x].reciprocal()

    total = SuperFraction.const(seed.ambient, 0)
    for j in q.odd_ids():
        if j == i:
            continue
        m = q.mult(i, j)
        if m:
            term = m * seed.values[j]
            for l in q.even_ids():
                if q.mult(i, l) and q.mult(l, j):
                    term = term * seed.values[l]
            total = total + term
        m = q.mult(j, i)
        if m:
            term = m * seed.values[j]
            for l in q.even_ids():
                if q.mult(j, l) and q.mult(l, i):
                    term = term * seed.values[l]
            total = total + term

    new_value = prefactor * total
    if delta:
        new_value = new_value + seed.values[i]

    values = dict(seed.values)
    values[i] = new_value
    return Seed(eta_quiver(q, i), values, seed.ambient)


def apply_step(seed: Seed, step: MutationStep) -> Seed:
    if step.kind == "even":
        return even_mutate(seed, step.vertex)
    return odd_mutate(seed, step.vertex)


def apply_sequence(seed: Seed, steps, mode: str = "algebra") -> Seed:
    """Compose steps left to right.

    In 'algebra' mode the sequence must be all-even or all-odd; 'quiver'
    mode allows mixing but only rewires the quiver, leaving values alone.
    """
    if mode not in ("algebra", "quiver"):
        raise ValueError(f"unknown mode {mode!r}")
    steps = list(steps)
    if mode == "algebra":
        kinds = {s.kind for s in steps}
        if len(kinds) > 1:
            raise IllegalMutation(
                "mixed even/odd sequence not allowed in algebra mode"
            )
        for step in steps:
            seed = apply_step(seed, step)
        return seed
    q = seed.quiver
    for step in steps:
        k = q.vertex(step.vertex).id
        q = mu_quiver(q, k) if step.kind == "even" else eta_quiver(q, k)
    return Seed(q, seed.values, seed.ambient)


# -- enumeration -----------------------------------------------------------


class _ValueSet:
    """Dedup by semantic equality, with a hash fast path."""

    def __init__(self):
        self._by_hash = {}

    def add(self, value: SuperFraction) -> bool:
        h = hash(value)
        bucket = self._by_hash.setdefault(h, [])
        for seen in bucket:
            if seen.eq(value):
                return False
        bucket.append(value)
        return True

    def items(self):
        return [v for bucket in self._by_hash.values() for v in bucket]


def _enumerate(seed, depth, parity):
    ids = [
        v.id for v in seed.quiver.vertices if v.parity == parity and not v.frozen
    ]
    found = _ValueSet()
    for v in seed.quiver.vertices:
        if v.parity == parity:
            found.add(seed.values[v.id])
    frontier = [(seed, None)]
    seen_states = {seed.key()}
    mutate = even_mutate if parity == "even" else odd_mutate
    for _ in range(depth):
        next_frontier = []
        for current, last in frontier:
            for k in ids:
                if k == last and parity == "even":
                    continue  # involution: immediate backtrack is a no-op
                new_seed = mutate(current, k)
                state = new_seed.key()
                if state in seen_states:
                    continue
                seen_states.add(state)
                found.add(new_seed.values[k])
                next_frontier.append((new_seed, k))
        frontier = next_frontier
        if not frontier:
            break
    return found.items()


def enumerate_even_vars(seed: Seed, depth: int):
    """All values reachable by even sequences of length <= depth (dedup by eq)."""
    return _enumerate(seed, depth, "even")


def enumerate_odd_vars(seed: Seed, depth: int):
    return _enumerate(seed, depth, "odd")


# -- Laurent certification -------------------------------------------------


@dataclass
class LaurentCertificate:
    laurent: bool
    witness: SuperPoly  # quotient if laurent, remainder otherwise
    shift: tuple = ()  # monomial part of the denominator (exponent vector)

    def __bool__(self):
        return self.laurent


def is_laurent(value: SuperFraction) -> LaurentCertificate:
    """Divide the numerator by the expanded polynomial part of the denominator.

    Laurent means num is (monomial times) a multiple of the denominator;
    the certificate carries the quotient, or the blocking remainder.
    """
    num = value.num
    den = SuperPoly.const(value.ambient, 1)
    for f in value.den_factors:
        den = den * f
    try:
        quotient = num.exact_divide(den)
    except DoesNotDivide as exc:
        return LaurentCertificate(False, exc.remainder, value.den_mono)
    return LaurentCertificate(True, quotient.shift(tuple(-d for d in value.den_mono)), value.den_mono)


# -- classical oracle ------------------------------------------------------


class ClassicalSeed:
    """Skew-symmetric exchange matrix plus commuting Laurent values."""

    __slots__ = ("b", "values", "ambient")

    def __init__(self, b, values, ambient):
        n = len(b)
        for i in range(n):
            for j in range(n):
                if b[i][j] != -b[j][i]:
                    raise ValueError("matrix is not skew-symmetric")
        self.b = [list(row) for row in b]
        self.values = dict(values)
        self.ambient = ambient

    @classmethod
    def initial(cls, b, ambient):
        values = {
            i: SuperFraction.symbol(ambient, ambient.even[i]) for i in range(len(b))
        }
        return cls(b, values, ambient)


def classical_mutate(cs: ClassicalSeed, k: int) -> ClassicalSeed:
    n = len(cs.b)
    plus = SuperFraction.const(cs.ambient, 1)
    minus = SuperFraction.const(cs.ambient, 1)
    for i in range(n):
        bik = cs.b[i][k]
        if bik > 0:
            plus = plus * cs.values[i] ** bik
        elif bik < 0:
            minus = minus * cs.values[i] ** (-bik)
    new_values = dict(cs.values)
    new_values[k] = (plus + minus) * cs.values[k].reciprocal()
    new_b = [
        [
            -cs.b[i][j]
            if k in (i, j)
            else cs.b[i][j]
            + (abs(cs.b[i][k]) * cs.b[k][j] + cs.b[i][k] * abs(cs.b[k][j])) // 2
            for j in range(n)
        ]
        for i in range(n)
    ]
    return ClassicalSeed(new_b, new_values, cs.ambient)


# -- sign-twist comparison -------------------------------------------------


def sign_twist_check(seed: Seed, vertex_sequence) -> bool:
    """Even-only chains agree with the classical chain up to epsilon signs.

    Runs the same even mutation sequence on the seed and on the classical
    seed of the even restriction, then checks value-by-value that
    x_k = eps_k * z_k with each z_i replaced by eps_i * x_i.
    """
    from superclusters.quiver import b_matrix, epsilon_signs, restrict_even
    from superclusters.superfrac import substitute

    q = seed.quiver
    eps = epsilon_signs(q)
    qx = restrict_even(q)
    even_ids = q.even_ids()
    pos = {vid: idx for idx, vid in enumerate(even_ids)}

    classical = ClassicalSeed.initial(b_matrix(qx), qx.ambient())
    current = seed
    for v in vertex_sequence:
        k = q.vertex(v).id if isinstance(v, str) else v
        if not _odd_pair_sum(current, k).is_zero():
            raise IllegalMutation(
                "odd pair term contributes at "
                f"{current.quiver.vertices[k].label!r}; the sign-twist "
                "comparison does not apply"
            )
        current = even_mutate(current, k)
        classical = classical_mutate(classical, pos[k])

    # substitute z_i := eps_i x_i into each classical value, then twist by eps_k
    twist = {
        name: SuperFraction.const(seed.ambient, eps[idx])
        * SuperFraction.symbol(seed.ambient, name)
        for idx, name in enumerate(qx.ambient().even)
    }
    for idx, vid in enumerate(even_ids):
        z = classical.values[idx]
        num = substitute(z.num, twist, seed.ambient)
        den = substitute(z.den_poly(), twist, seed.ambient)
        twisted = eps[idx] * num * den.reciprocal()
        if not twisted.eq(current.values[vid]):
            return False
    return True
