"""Stable set polytopes and the graph classes that govern them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from . import config, polytope
from .complex import SimplicialComplex, is_flag
from .config import SensorConfiguration
from .errors import IndexOutOfRange, NotGeneric, TooLarge
from .polytope import HPolyhedron, VRepresentation, nonnegativity_rows

PERFECT_GUARD = 14
DEFINITIONAL_GUARD = 8


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, vertex_count: int, edges: Iterable[Sequence[int]]) -> "Graph":
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            for w in (u, v):
                if not 1 <= w <= vertex_count:
                    raise IndexOutOfRange(f"vertex {w} outside 1..{vertex_count}")
            es.add((min(u, v), max(u, v)))
        return cls(vertex_count, tuple(sorted(es)))

    def neighbours(self) -> dict[int, set[int]]:
        adj = {v: set() for v in range(1, self.vertex_count + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i + 1 for i, v in enumerate(sorted(vertices))}
        return Graph.build(len(index), [(index[u], index[v]) for u, v in self.edges
                                        if u in index and v in index])

    def complement(self) -> "Graph":
        es = set(self.edges)
        return Graph(self.vertex_count, tuple(e for e in combinations(range(1, self.vertex_count + 1), 2)
                                              if e not in es))

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        return cls.build(int(data["vertices"]), data["edges"])


def cycle(R: int) -> Graph:
    return Graph.build(R, [(i, i % R + 1) for i in range(1, R + 1)])


def complete(R: int) -> Graph:
    return Graph.build(R, combinations(range(1, R + 1), 2))


def one_skeleton(cx: SimplicialComplex) -> Graph:
    return Graph.build(cx.vertex_count, cx.edges())


def stable_sets(G: Graph) -> list[tuple[int, ...]]:
    """All stable sets, the empty one included, by incremental extension."""
    adj = G.neighbours()
    out = [()]
    for v in range(1, G.vertex_count + 1):
        out += [s + (v,) for s in out if not adj[v].intersection(s)]
    return sorted(out, key=lambda s: (len(s), s))


def _indicator(R: int, s: Iterable[int]) -> tuple[Fraction, ...]:
    s = set(s)
    return tuple(Fraction(int(v in s)) for v in range(1, R + 1))


def stab(G: Graph) -> VRepresentation:
    """Indicator vectors of every stable set."""
    return VRepresentation.build(G.vertex_count, [_indicator(G.vertex_count, s) for s in stable_sets(G)])


def frac(G: Graph) -> HPolyhedron:
    R = G.vertex_count
    rows = nonnegativity_rows(R)
    rows += [([int(v in e) for v in range(1, R + 1)], 1) for e in G.edges]
    return HPolyhedron.from_rows(R, rows)


def maximal_cliques(G: Graph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting."""
    adj = G.neighbours()
    out: list[tuple[int, ...]] = []

    def expand(r: set, p: set, x: set):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    return sorted(out)


def qstab(G: Graph) -> HPolyhedron:
    R = G.vertex_count
    rows = nonnegativity_rows(R)
    rows += [([int(v in q) for v in range(1, R + 1)], 1) for q in maximal_cliques(G)]
    return HPolyhedron.from_rows(R, rows)


def isolated_vertices(G: Graph) -> list[int]:
    return [v for v, nb in G.neighbours().items() if not nb]


def is_bipartite(G: Graph) -> bool:
    adj = G.neighbours()
    colour: dict[int, int] = {}
    for s in adj:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def _has_odd_hole(adj: dict[int, set[int]], n: int) -> bool:
    # an induced cycle of odd length >= 5, via subsets inducing a 2-regular
    # connected subgraph
    verts = sorted(adj)
    for k in range(5, n + 1, 2):
        for sub in combinations(verts, k):
            s = set(sub)
            if any(len(adj[v] & s) != 2 for v in sub):
                continue
            seen, stack = {sub[0]}, [sub[0]]
            while stack:
                u = stack.pop()
                for w in adj[u] & s:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == k:
                return True
    return False


def is_perfect(G: Graph) -> bool:
    """No odd hole and no odd antihole."""
    if G.vertex_count > PERFECT_GUARD:
        raise TooLarge(f"perfectness test limited to {PERFECT_GUARD} vertices")
    return not (_has_odd_hole(G.neighbours(), G.vertex_count)
                or _has_odd_hole(G.complement().neighbours(), G.vertex_count))


def chromatic_number(G: Graph) -> int:
    adj = G.neighbours()
    order = sorted(adj, key=lambda v: -len(adj[v]))
    for k in range(1 if G.vertex_count else 0, G.vertex_count + 1):
        colour: dict[int, int] = {}

        def place(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            used = {colour[w] for w in adj[v] if w in colour}
            # symmetry: never open more than one new colour
            limit = min(k, max(colour.values(), default=-1) + 2)
            for c in range(limit):
                if c not in used:
                    colour[v] = c
                    if place(i + 1):
                        return True
                    del colour[v]
            return False

        if place(0):
            return k
    return 0


def clique_number(G: Graph) -> int:
    return max((len(q) for q in maximal_cliques(G)), default=0)


def is_perfect_definitional(G: Graph) -> bool:
    """chi = omega on every induced subgraph (exponential; tiny graphs only)."""
    if G.vertex_count > DEFINITIONAL_GUARD:
        raise TooLarge(f"definitional perfectness check limited to {DEFINITIONAL_GUARD} vertices")
    verts = range(1, G.vertex_count + 1)
    for k in range(1, G.vertex_count + 1):
        for sub in combinations(verts, k):
            H = G.induced(sub)
            if chromatic_number(H) != clique_number(H):
                return False
    return True


def flag_correspondence_check(C: SensorConfiguration, force: bool = False) -> bool:
    """Does the positive fusion polytope equal QSTAB of the nerve's 1-skeleton?"""
    if not config.is_generic(C):
        raise NotGeneric("the correspondence is stated for generic configurations")
    G = one_skeleton(config.nerve(C))
    return polytope.polyhedra_equal(polytope.positive_fusion_polytope(C), qstab(G), force=force)


def flag_agrees(C: SensorConfiguration) -> bool:
    return flag_correspondence_check(C) == is_flag(config.nerve(C))


def necklace_vertices(R: int) -> VRepresentation:
    """Dominant vertices of FRAC of the R-cycle, in closed form.

    Circular 0/1 words with no two adjacent ones and no three consecutive
    zeros, plus the all-1/2 vector when R is odd.
    """
    if R < 3:
        raise ValueError("cycle length must be at least 3")
    words = []
    for w in product((0, 1), repeat=R):
        if any(w[i] and w[(i + 1) % R] for i in range(R)):
            continue
        if any(not (w[i] or w[(i + 1) % R] or w[(i + 2) % R]) for i in range(R)):
            continue
        words.append(tuple(Fraction(x) for x in w))
    if R % 2:
        words.append(tuple(Fraction(1, 2) for _ in range(R)))
    return VRepresentation.build(R, words)
