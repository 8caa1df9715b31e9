"""Superquivers: directed multigraphs with even/odd and frozen/exchangeable vertices.

Loops are allowed on odd vertices only; 2-cycles only between an even and an
odd vertex.  Quiver-level mutation (mu at even vertices, eta at odd ones),
parity restrictions, epsilon signs, brute-force canonical forms, and the
line-oriented text format all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from superclusters.ambient import Ambient, _NAME_RE


class QuiverSyntaxError(ValueError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class QuiverValidationError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(v.describe() for v in violations))
        self.violations = violations


@dataclass(frozen=True)
class Violation:
    code: str
    vertices: tuple

    def describe(self):
        return f"{self.code}{list(self.vertices)}"


@dataclass(frozen=True)
class VertexInfo:
    id: int
    label: str
    parity: str  # 'even' | 'odd'
    frozen: bool = False


class SuperQuiver:
    __slots__ = ("vertices", "arrows", "loops", "_by_label")

    def __init__(self, vertices, arrows=None, loops=None):
        self.vertices = tuple(vertices)
        for i, v in enumerate(self.vertices):
            if v.id != i:
                raise ValueError("vertex ids must be dense 0..N-1 in order")
            if v.parity not in ("even", "odd"):
                raise ValueError(f"bad parity {v.parity!r}")
        self._by_label = {v.label: v for v in self.vertices}
        if len(self._by_label) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self.arrows = {}
        n = len(self.vertices)
        for (a, b), mult in (arrows or {}).items():
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"arrow endpoint out of range: {(a, b)}")
            if a == b:
                raise ValueError("use loops, not self-arrows")
            if mult < 0:
                raise ValueError("negative arrow multiplicity")
            if mult:
                self.arrows[(a, b)] = int(mult)
        self.loops = {}
        for v, count in (loops or {}).items():
            if not 0 <= v < n:
                raise ValueError(f"loop vertex out of range: {v}")
            if count < 0:
                raise ValueError("negative loop count")
            if count:
                self.loops[v] = int(count)

    # -- structure queries ----------------------------------------------

    def vertex(self, label: str) -> VertexInfo:
        return self._by_label[label]

    def __contains__(self, label):
        return label in self._by_label

    def is_even(self, i):
        return self.vertices[i].parity == "even"

    def is_odd(self, i):
        return self.vertices[i].parity == "odd"

    def mult(self, a, b) -> int:
        return self.arrows.get((a, b), 0)

    def in_neighbors(self, k):
        return [(a, m) for (a, b), m in self.arrows.items() if b == k]

    def out_neighbors(self, k):
        return [(b, m) for (a, b), m in self.arrows.items() if a == k]

    def adjacent(self, i, j) -> bool:
        return (i, j) in self.arrows or (j, i) in self.arrows

    def even_ids(self):
        return [v.id for v in self.vertices if v.parity == "even"]

    def odd_ids(self):
        return [v.id for v in self.vertices if v.parity == "odd"]

    def exchangeable_ids(self):
        return [v.id for v in self.vertices if not v.frozen]

    def ambient(self) -> Ambient:
        return Ambient(
            [v.label for v in self.vertices if v.parity == "even"],
            [v.label for v in self.vertices if v.parity == "odd"],
        )

    # -- equality (labeled) ---------------------------------------------

    def key(self):
        return (
            self.vertices,
            tuple(sorted(self.arrows.items())),
            tuple(sorted(self.loops.items())),
        )

    def __eq__(self, other):
        return isinstance(other, SuperQuiver) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SuperQuiver({len(self.even_ids())} even, {len(self.odd_ids())} odd, {sum(self.arrows.values())} arrows)"


# -- validation ----------------------------------------------------------


def validate(q: SuperQuiver):
    """Structural rule check; returns a list of Violation records."""
    out = []
    for v, _count in sorted(q.loops.items()):
        if q.is_even(v):
            out.append(Violation("EvenLoop", (v,)))
    seen = set()
    for (a, b) in q.arrows:
        if (b, a) in q.arrows and frozenset((a, b)) not in seen:
            seen.add(frozenset((a, b)))
            pa, pb = q.vertices[a].parity, q.vertices[b].parity
            if pa == pb == "even":
                out.append(Violation("EvenEvenTwoCycle", tuple(sorted((a, b)))))
            elif pa == pb == "odd":
                out.append(Violation("OddOddTwoCycle", tuple(sorted((a, b)))))
    return out


# -- C1 / C2 conditions ---------------------------------------------------


def _odd_pairs_through(q, x):
    """Ordered pairs (j, k), j != k odd, with y_j -> x -> y_k."""
    ins = [a for (a, _m) in q.in_neighbors(x) if q.is_odd(a)]
    outs = [b for (b, _m) in q.out_neighbors(x) if q.is_odd(b)]
    return [(j, k) for j in ins for k in outs if j != k]


def c1_at(q: SuperQuiver, x: int) -> bool:
    pairs = [(j, k) for (j, k) in _odd_pairs_through(q, x) if q.mult(j, k) == 0]
    if not pairs:
        return True
    for v in range(len(q.vertices)):
        if v != x and q.is_even(v) and q.adjacent(x, v) and not q.vertices[v].frozen:
            return False
    return True


def c2_at(q: SuperQuiver, x: int) -> bool:
    """True when the odd pair contributions to the exchange at x cancel.

    The sum over 2-paths y_j -> x -> y_k (with j != k and no arrow
    y_j -> y_k) of mult(j,x)*mult(x,k)*y_j*y_k vanishes iff, for every
    unordered pair, the two directed contributions carry equal weight; the
    anticommutator y_j*y_k + y_k*y_j = 0 then kills them.
    """
    weights: dict = {}
    for (j, k) in _odd_pairs_through(q, x):
        if q.mult(j, k):
            continue
        w = q.mult(j, x) * q.mult(x, k)
        a, b = (j, k) if j < k else (k, j)
        weights[(a, b)] = weights.get((a, b), 0) + (w if j < k else -w)
    return not any(weights.values())


def _mutable_even(q):
    return [v.id for v in q.vertices if v.parity == "even" and not v.frozen]


def check_c1(q) -> bool:
    return all(c1_at(q, x) for x in _mutable_even(q))


def check_c2(q) -> bool:
    return all(c2_at(q, x) for x in _mutable_even(q))


def check_c1_or_c2(q) -> bool:
    """Each mutable even vertex satisfies at least one of the two conditions."""
    return all(c1_at(q, x) or c2_at(q, x) for x in _mutable_even(q))


# -- mutation of the quiver ------------------------------------------------


def _require(q, k, parity):
    v = q.vertices[k]
    if v.parity != parity or v.frozen:
        raise ValueError(f"vertex {v.label!r} is not an exchangeable {parity} vertex")


def mu_quiver(q: SuperQuiver, k: int) -> SuperQuiver:
    """Quiver part of even mutation at k.

    Adds an arrow i->j of multiplicity p*q for every even 2-path i->k->j,
    reverses the even-even arrows at k, leaves even-odd arrows at k alone,
    then cancels even-even 2-cycles.
    """
    _require(q, k, "even")
    arrows = dict(q.arrows)
    ins = [(a, m) for (a, m) in q.in_neighbors(k) if q.is_even(a)]
    outs = [(b, m) for (b, m) in q.out_neighbors(k) if q.is_even(b)]
    for a, p in ins:
        for b, r in outs:
            if a != b:
                arrows[(a, b)] = arrows.get((a, b), 0) + p * r
    for a, m in ins:
        del arrows[(a, k)]
        arrows[(k, a)] = arrows.get((k, a), 0) + m
    for b, m in outs:
        del arrows[(k, b)]
        arrows[(b, k)] = arrows.get((b, k), 0) + m
    _cancel_two_cycles(q, arrows, "even")
    return SuperQuiver(q.vertices, arrows, q.loops)


def eta_quiver(q: SuperQuiver, i: int) -> SuperQuiver:
    """Quiver part of odd mutation at i.

    Adds arrows along odd 2-paths through i, reverses every arrow incident
    on i (loops stay), then cancels odd-odd 2-cycles.
    """
    _require(q, i, "odd")
    arrows = dict(q.arrows)
    ins = [(a, m) for (a, m) in q.in_neighbors(i) if q.is_odd(a)]
    outs = [(b, m) for (b, m) in q.out_neighbors(i) if q.is_odd(b)]
    for a, p in ins:
        for b, r in outs:
            if a != b:
                arrows[(a, b)] = arrows.get((a, b), 0) + p * r
    for (a, b), m in list(arrows.items()):
        if i in (a, b):
            del arrows[(a, b)]
    for (a, b), m in q.arrows.items():
        if a == i:
            arrows[(b, a)] = arrows.get((b, a), 0) + m
        elif b == i:
            arrows[(b, a)] = arrows.get((b, a), 0) + m
    _cancel_two_cycles(q, arrows, "odd")
    return SuperQuiver(q.vertices, arrows, q.loops)


def _cancel_two_cycles(q, arrows, parity):
    for (a, b) in list(arrows):
        if a < b and (b, a) in arrows:
            if q.vertices[a].parity == parity and q.vertices[b].parity == parity:
                m = min(arrows[(a, b)], arrows[(b, a)])
                for key in ((a, b), (b, a)):
                    arrows[key] -= m
                    if not arrows[key]:
                        del arrows[key]


# -- restrictions, signs, matrices ----------------------------------------


def _restrict(q, keep_parity):
    keep = [v for v in q.vertices if v.parity == keep_parity]
    remap = {v.id: i for i, v in enumerate(keep)}
    vertices = [
        VertexInfo(i, v.label, v.parity, v.frozen) for i, v in enumerate(keep)
    ]
    arrows = {
        (remap[a], remap[b]): m
        for (a, b), m in q.arrows.items()
        if a in remap and b in remap
    }
    loops = {remap[v]: c for v, c in q.loops.items() if v in remap}
    return SuperQuiver(vertices, arrows, loops)


def restrict_even(q) -> SuperQuiver:
    return _restrict(q, "even")


def restrict_odd(q) -> SuperQuiver:
    return _restrict(q, "odd")


def epsilon_signs(q: SuperQuiver):
    """Per even vertex: (-1)^(loop count over adjacent odd vertices)."""
    out = []
    for x in q.even_ids():
        u = sum(
            count for v, count in q.loops.items() if q.is_odd(v) and q.adjacent(x, v)
        )
        out.append(-1 if u % 2 else 1)
    return out


def b_matrix(q: SuperQuiver):
    if q.odd_ids():
        raise ValueError("b_matrix requires a purely even quiver")
    n = len(q.vertices)
    return [[q.mult(i, j) - q.mult(j, i) for j in range(n)] for i in range(n)]


# -- isomorphism ----------------------------------------------------------


def canonical_form(q: SuperQuiver):
    """Lexicographically least relabeling over (parity, frozen)-preserving maps."""
    classes = {}
    for v in q.vertices:
        classes.setdefault((v.parity, v.frozen), []).append(v.id)
    class_list = sorted(classes.items())
    pools = [itertools.permutations(ids) for _key, ids in class_list]
    best = None
    for choice in itertools.product(*pools):
        remap = {}
        for (_key, ids), perm in zip(class_list, choice):
            for old, new in zip(perm, ids):
                remap[old] = new
        arrows = tuple(sorted(((remap[a], remap[b]), m) for (a, b), m in q.arrows.items()))
        loops = tuple(sorted((remap[v], c) for v, c in q.loops.items()))
        key = (arrows, loops)
        if best is None or key < best:
            best = key
    sig = tuple((v.parity, v.frozen) for v in q.vertices)
    return (sig, best)


def is_isomorphic(q1: SuperQuiver, q2: SuperQuiver) -> bool:
    return canonical_form(q1) == canonical_form(q2)


# -- text format ----------------------------------------------------------


def parse_quiver(text: str, check: bool = True) -> SuperQuiver:
    vertices = []
    arrows = {}
    loops = {}
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind in ("even", "odd"):
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "frozen"):
                raise QuiverSyntaxError(f"bad declaration: {raw.strip()!r}", lineno)
            name = parts[1]
            if not _NAME_RE.match(name):
                raise QuiverSyntaxError(f"bad vertex name {name!r}", lineno)
            if name in labels:
                raise QuiverSyntaxError(f"duplicate vertex {name!r}", lineno)
            labels[name] = len(vertices)
            vertices.append(VertexInfo(len(vertices), name, kind, len(parts) == 3))
        elif kind == "arrow":
            ok = len(parts) in (4, 6) and parts[2] == "->"
            if ok and len(parts) == 6:
                ok = parts[4] == "*" and parts[5].isdigit()
            if not ok:
                raise QuiverSyntaxError(f"bad arrow line: {raw.strip()!r}", lineno)
            for name in (parts[1], parts[3]):
                if name not in labels:
                    raise QuiverSyntaxError(f"undeclared vertex {name!r}", lineno)
            mult = int(parts[5]) if len(parts) == 6 else 1
            key = (labels[parts[1]], labels[parts[3]])
            arrows[key] = arrows.get(key, 0) + mult
        elif kind == "loop":
            ok = len(parts) in (2, 4)
            if ok and len(parts) == 4:
                ok = parts[2] == "*" and parts[3].isdigit()
            if not ok:
                raise QuiverSyntaxError(f"bad loop line: {raw.strip()!r}", lineno)
            if parts[1] not in labels:
                raise QuiverSyntaxError(f"undeclared vertex {parts[1]!r}", lineno)
            count = int(parts[3]) if len(parts) == 4 else 1
            v = labels[parts[1]]
            loops[v] = loops.get(v, 0) + count
        else:
            raise QuiverSyntaxError(f"unknown directive {kind!r}", lineno)
    q = SuperQuiver(vertices, arrows, loops)
    if check:
        violations = validate(q)
        if violations:
            raise QuiverValidationError(violations)
    return q


def format_quiver(q: SuperQuiver) -> str:
    lines = []
    for v in q.vertices:
        lines.append(f"{v.parity} {v.label}" + (" frozen" if v.frozen else ""))
    for (a, b), m in sorted(q.arrows.items()):
        line = f"arrow {q.vertices[a].label} -> {q.vertices[b].label}"
        if m != 1:
            line += f" * {m}"
        lines.append(line)
    for v, c in sorted(q.loops.items()):
        line = f"loop {q.vertices[v].label}"
        if c != 1:
            line += f" * {c}"
        lines.append(line)
    return "\n".join(lines) + "\n"
