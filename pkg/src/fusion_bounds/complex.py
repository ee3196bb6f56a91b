"""Abstract simplicial complexes on the vertex set {1, ..., R}.

A complex is stored through its maximal simplices only; every subset of a
maximal simplex is a member.  Simplices are sorted tuples of 1-based vertex
indices, and every sequence of simplices produced here is sorted
lexicographically so that output is byte-stable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import IndexOutOfRange

Simplex = tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    return tuple(sorted(set(int(v) for v in vertices)))


def _maximalize(simplices: Iterable[Simplex]) -> tuple[Simplex, ...]:
    # Largest first, so a simplex only needs comparing against kept ones.
    cands = sorted(set(simplices), key=lambda s: (-len(s), s))
    kept: list[frozenset] = []
    out: list[Simplex] = []
    for s in cands:
        fs = frozenset(s)
        if any(fs <= k for k in kept):
            continue
        kept.append(fs)
        out.append(s)
    return tuple(sorted(out))


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    maximal: tuple[Simplex, ...]
    _sets: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_sets", tuple(frozenset(s) for s in self.maximal))

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.maximal), default=0) - 1

    def __contains__(self, simplex) -> bool:
        return membership(self, simplex)

    def faces(self, size: int | None = None) -> list[Simplex]:
        """All non-empty simplices, or only those with ``size`` vertices."""
        out: set[Simplex] = set()
        for m in self.maximal:
            sizes = range(1, len(m) + 1) if size is None else [size]
            for k in sizes:
                if k <= len(m):
                    out.update(combinations(m, k))
        return sorted(out, key=lambda s: (len(s), s))

    def edges(self) -> list[Simplex]:
        return self.faces(2)

    def to_dict(self) -> dict:
        return {"vertex_count": self.vertex_count, "maximal": [list(s) for s in self.maximal]}

    @classmethod
    def from_dict(cls, data: dict) -> "SimplicialComplex":
        return from_simplices(int(data["vertex_count"]), data["maximal"])


def from_simplices(R: int, faces: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Downward closure of ``faces`` plus every singleton of 1..R."""
    simplices = []
    for f in faces:
        s = as_simplex(f)
        if not s:
            continue
        if s[0] < 1 or s[-1] > R:
            raise IndexOutOfRange(f"simplex {list(s)} has a vertex outside 1..{R}")
        simplices.append(s)
    simplices.extend((r,) for r in range(1, R + 1))
    return SimplicialComplex(R, _maximalize(simplices))


def full_simplex(R: int) -> SimplicialComplex:
    return SimplicialComplex(R, (tuple(range(1, R + 1)),) if R else ())


def boundary_of_simplex(R: int) -> SimplicialComplex:
    """All proper faces of the (R-1)-simplex."""
    return from_simplices(R, combinations(range(1, R + 1), R - 1))


def membership(cx: SimplicialComplex, simplex: Iterable[int], validate: bool = False) -> bool:
    s = frozenset(simplex)
    if validate and any(v < 1 or v > cx.vertex_count for v in s):
        raise IndexOutOfRange(f"simplex {sorted(s)} has a vertex outside 1..{cx.vertex_count}")
    return any(s <= m for m in cx._sets)


def skeleton(cx: SimplicialComplex, k: int) -> SimplicialComplex:
    """Subcomplex of simplices of dimension at most ``k``."""
    if k < 0:
        raise ValueError("skeleton dimension must be >= 0")
    size = k + 1
    out = []
    for m in cx.maximal:
        if len(m) <= size:
            out.append(m)
        else:
            out.extend(combinations(m, size))
    return SimplicialComplex(cx.vertex_count, _maximalize(out))


def completion(cx: SimplicialComplex, k: int) -> SimplicialComplex:
    """Insert every simplex with more than k+1 vertices whose k-faces all lie in ``cx``.

    Computed as a least fixpoint.  ``k = 0`` gives the full simplex.
    """
    if k < 0:
        raise ValueError("completion dimension must be >= 0")
    current = cx
    while True:
        nxt = _complete_once(current, k)
        if nxt == current:
            return current
        current = nxt


def _complete_once(cx: SimplicialComplex, k: int) -> SimplicialComplex:
    R = cx.vertex_count
    if k == 0:
        return full_simplex(R)
    size = k + 1
    level = set(cx.faces(size))
    found: list[Simplex] = []
    # Apriori growth: a candidate is kept when all its one-smaller subsets
    # are kept, which by induction means all of its (k+1)-subsets are faces.
    while level:
        nxt = set()
        for s in level:
            for v in range(s[-1] + 1, R + 1):
                cand = s + (v,)
                if all(cand[:i] + cand[i + 1:] in level for i in range(len(cand) - 1)):
                    nxt.add(cand)
        found.extend(nxt)
        level = nxt
    return SimplicialComplex(R, _maximalize(list(cx.maximal) + found))


def is_flag(cx: SimplicialComplex) -> bool:
    return completion(cx, 1) == cx


def helly_check(cx: SimplicialComplex, N: int) -> bool:
    """Necessary condition for realisability by convex sets in N-space."""
    if N < 1:
        raise ValueError("ambient dimension must be >= 1")
    return completion(cx, N) == cx


def is_subcomplex(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    return all(membership(b, s) for s in a.maximal)
