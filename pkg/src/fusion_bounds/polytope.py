"""Exact polyhedra: H-representations, vertex enumeration, file formats.

Vertex and ray enumeration uses the double description method on the
homogenised cone ``{(t, y) : t >= 0, b t - a.y >= 0}`` with integer
arithmetic throughout; generators with ``t > 0`` are vertices, the others
are extreme rays.  Adjacency of generators is decided combinatorially from
their sets of tight constraints.
"""
from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .config import SensorConfiguration, nerve
from .errors import EmptyPolyhedron, TooLarge, Unbounded

Vector = tuple[Fraction, ...]
Row = tuple[Vector, Fraction]

MAX_DIMENSION = 34
MAX_ROWS = 400
# every 0/1 point of a polyhedron inside the unit cube is a vertex, so the
# number of such points is a cheap lower bound on the output size
MAX_ZERO_ONE = 20_000


def _frac_vec(v) -> Vector:
    return tuple(x if type(x) is Fraction else Fraction(x) for x in v)


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*vec)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def _clear(v) -> tuple[list[int], int]:
    """Integer numerators over a common positive denominator."""
    fr = _frac_vec(v)
    den = _lcm(x.denominator for x in fr)
    return [int(x * den) for x in fr], den


def _canonical_row(a: Sequence, b) -> Row:
    # scale to a primitive integer row; positive scaling only
    vals = list(a) + [b]
    if all(type(x) is int for x in vals):
        ints = vals
    else:
        ints, _ = _clear(vals)
    g = math.gcd(*ints) or 1
    ints = [x // g for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])


def _row_key(row: Row):
    a, b = row
    support = tuple(i for i, x in enumerate(a) if x)
    return (len(support), support, tuple(-x for x in a), b)


@dataclass(frozen=True)
class HPolyhedron:
    """``{y : a.y <= b for every (a, b) in rows}``."""

    dimension: int
    rows: tuple[Row, ...]

    @classmethod
    def from_rows(cls, dimension: int, rows: Iterable[tuple[Sequence, object]]) -> "HPolyhedron":
        canon = set()
        for a, b in rows:
            if len(a) != dimension:
                raise ValueError(f"row of length {len(a)} in dimension {dimension}")
            canon.add(_canonical_row(a, b))
        return cls(dimension, tuple(sorted(canon, key=_row_key)))

    def __post_init__(self):
        # rows are primitive integer rows; keep an int copy for fast tests
        ints = tuple((tuple(int(x) for x in a), int(b)) for a, b in self.rows)
        object.__setattr__(self, "_ints", ints)

    def _slacks(self, point: Sequence, homogeneous: bool = False):
        num, den = _clear(point)
        for a, b in self._ints:
            yield (0 if homogeneous else b * den) - sum(x * y for x, y in zip(a, num) if x)

    def contains(self, point: Sequence) -> bool:
        return all(s >= 0 for s in self._slacks(point))

    def contains_direction(self, ray: Sequence) -> bool:
        return all(s >= 0 for s in self._slacks(ray, homogeneous=True))

    def tight_rows(self, point: Sequence) -> list[int]:
        return [i for i, s in enumerate(self._slacks(point)) if s == 0]

    def to_dict(self) -> dict:
        return {"dimension": self.dimension,
                "rows": [{"a": [str(x) for x in a], "b": str(b)} for a, b in self.rows]}

    @classmethod
    def from_dict(cls, data: dict) -> "HPolyhedron":
        return cls.from_rows(int(data["dimension"]),
                             [([Fraction(x) for x in r["a"]], Fraction(r["b"])) for r in data["rows"]])


@dataclass(frozen=True)
class VRepresentation:
    """Vertices, extreme rays and (rarely) lineality directions."""

    dimension: int
    vertices: tuple[Vector, ...]
    rays: tuple[Vector, ...] = ()
    lines: tuple[Vector, ...] = ()

    @classmethod
    def build(cls, dimension, vertices=(), rays=(), lines=()) -> "VRepresentation":
        vs = _sorted_unique(_frac_vec(v) for v in vertices)
        rs = _sorted_unique(_integral_direction(r) for r in rays)
        ls = _sorted_unique(_integral_direction(l, signed=True) for l in lines)
        return cls(dimension, vs, rs, ls)

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @property
    def bounded(self) -> bool:
        return not self.rays and not self.lines

    def to_dict(self) -> dict:
        out = {"dimension": self.dimension,
               "vertices": [[str(x) for x in v] for v in self.vertices],
               "rays": [[str(x) for x in r] for r in self.rays]}
        if self.lines:
            out["lines"] = [[str(x) for x in l] for l in self.lines]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "VRepresentation":
        conv = lambda rows: [[Fraction(x) for x in r] for r in rows]
        return cls.build(int(data["dimension"]), conv(data["vertices"]),
                         conv(data.get("rays", [])), conv(data.get("lines", [])))


def _sorted_unique(items) -> tuple:
    items = list(items)
    # exact integer keys over one common denominator compare much faster
    L = _lcm({x.denominator for v in items for x in v})
    keyed = sorted((tuple(x.numerator * (L // x.denominator) for x in v), v) for v in items)
    out = []
    for k, v in keyed:
        if not out or out[-1][0] != k:
            out.append((k, v))
    return tuple(v for _, v in out)


def _integral_direction(v, signed=False) -> Vector:
    fr = _frac_vec(v)
    den = _lcm(x.denominator for x in fr)
    ints = _primitive([int(x * den) for x in fr])
    if signed:
        first = next((x for x in ints if x), 0)
        if first < 0:
            ints = tuple(-x for x in ints)
    return tuple(Fraction(x) for x in ints)


# ---------------------------------------------------------------- builders

def fusion_polytope(C: SensorConfiguration) -> HPolyhedron:
    """One row ``sum_{r in a} y_r <= 1`` per atom; y may be negative."""
    R = C.region_count
    rows = [([1 if r in a else 0 for r in range(1, R + 1)], 1) for a in C.atoms]
    return HPolyhedron.from_rows(R, rows)


def nonnegativity_rows(R: int):
    return [([-1 if i == r else 0 for i in range(R)], 0) for r in range(R)]


def positive_fusion_polytope(C: SensorConfiguration) -> HPolyhedron:
    """``y >= 0`` plus one row per maximal simplex of the nerve."""
    R = C.region_count
    rows = nonnegativity_rows(R)
    rows += [([1 if r in s else 0 for r in range(1, R + 1)], 1) for s in nerve(C).maximal]
    return HPolyhedron.from_rows(R, rows)


# ---------------------------------------------------------------- enumeration

def _inside_unit_cube(H: HPolyhedron) -> bool:
    """Do single rows alone give ``0 <= y_r <= 1`` for every coordinate?"""
    lower, upper = set(), set()
    for a, b in H.rows:
        support = [i for i, x in enumerate(a) if x]
        if len(support) == 1 and a[support[0]] < 0 and b == 0:
            lower.add(support[0])
        if all(x >= 0 for x in a):
            upper.update(i for i in support if b <= a[i])
    return len(lower) == len(upper) == H.dimension


def count_zero_one_points(H: HPolyhedron, cap: int) -> int | None:
    """Number of 0/1 points of ``H``, stopping at ``cap``.

    None unless ``H`` lies in the unit cube, where each such point is a
    vertex.
    """
    if not _inside_unit_cube(H):
        return None
    d = H.dimension
    bounds = [b for _, b in H._ints]
    touching = [[(i, a[k]) for i, (a, _) in enumerate(H._ints) if a[k]] for k in range(d)]
    # smallest value the still-free coordinates can add to each row
    slack_floor = [[sum(min(x, 0) for x in a[k:]) for k in range(d + 1)] for a, _ in H._ints]
    if any(f[0] > b for f, b in zip(slack_floor, bounds)):
        return 0
    count = 0

    def walk(k: int, partial: list[int]) -> None:
        nonlocal count
        if count >= cap:
            return
        if k == d:
            count += 1
            return
        if all(partial[i] + slack_floor[i][k + 1] <= bounds[i] for i, _ in touching[k]):
            walk(k + 1, partial)
        nxt = list(partial)
        for i, c in touching[k]:
            nxt[i] += c
        if all(nxt[i] + slack_floor[i][k + 1] <= bounds[i] for i, _ in touching[k]):
            walk(k + 1, nxt)

    walk(0, [0] * len(bounds))
    return count


def _guard(H: HPolyhedron, force: bool):
    if force:
        return
    max_rows = int(os.environ.get("FUSION_GUARD_ROWS", MAX_ROWS))
    if H.dimension > MAX_DIMENSION or len(H.rows) > max_rows:
        raise TooLarge(f"enumeration guard: dimension {H.dimension} (max {MAX_DIMENSION}), "
                       f"rows {len(H.rows)} (max {max_rows}); override with force (--force)")
    points = count_zero_one_points(H, MAX_ZERO_ONE)
    if points is not None and points >= MAX_ZERO_ONE:
        raise TooLarge(f"enumeration guard: at least {MAX_ZERO_ONE} vertices (0/1 points); "
                       f"override with force (--force)")


def _homogenised(H: HPolyhedron) -> list[tuple[int, ...]]:
    # row a.y <= b  ->  b t - a.y >= 0 on (t, y), scaled to integers
    out = []
    for a, b in H.rows:
        fr = [b] + [-x for x in a]
        den = _lcm(x.denominator for x in fr)
        out.append(_primitive([int(x * den) for x in fr]))
    return out


def _dot(c, v) -> int:
    return sum(x * y for x, y in zip(c, v) if x)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def double_description(constraints: Sequence[Sequence[int]], n: int, deadline: float | None = None):
    """Generators of the cone ``{x in Z^n : c.x >= 0 for c in constraints}``.

    Returns ``(rays, lines)`` as primitive integer vectors; rays are extreme
    rays of the pointed part and ``lines`` spans the lineality space.  With
    a ``deadline`` (a ``time.monotonic()`` value) the run stops with
    TooLarge once it is passed.
    """
    lines = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays: list[tuple[int, ...]] = []
    zsets: list[int] = []
    processed = 0
    for idx, c in enumerate(constraints):
        bit = 1 << idx
        piv = next((k for k, l in enumerate(lines) if _dot(c, l)), None)
        if piv is not None:
            l = lines.pop(piv)
            s = _dot(c, l)
            if s < 0:
                l, s = tuple(-x for x in l), -s
            new_lines = []
            for l2 in lines:
                v = _dot(c, l2)
                if v:
                    l2 = _primitive([s * x - v * y for x, y in zip(l2, l)])
                new_lines.append(l2)
            lines = new_lines
            for k, r in enumerate(rays):
                v = _dot(c, r)
                if v:
                    rays[k] = _primitive([s * x - v * y for x, y in zip(r, l)])
                zsets[k] |= bit
            rays.append(l)
            zsets.append(processed)
            processed |= bit
            continue

        vals = [_dot(c, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        if not neg:
            for k in zero:
                zsets[k] |= bit
            processed |= bit
            continue

        need = n - len(lines) - 2
        # ray index sets tight on each processed constraint
        tight_on: dict[int, int] = {}
        for k, z in enumerate(zsets):
            zz = z
            while zz:
                low = zz & -zz
                j = low.bit_length() - 1
                tight_on[j] = tight_on.get(j, 0) | (1 << k)
                zz ^= low
        all_rays = (1 << len(rays)) - 1

        new_rays = [rays[k] for k in pos] + [rays[k] for k in zero]
        new_z = [zsets[k] for k in pos] + [zsets[k] | bit for k in zero]
        for p in pos:
            if deadline is not None and time.monotonic() > deadline:
                raise TooLarge(f"time budget exceeded at constraint {idx + 1} of {len(constraints)} "
                               f"with {len(rays)} intermediate rays")
            zp = zsets[p]
            vp = vals[p]
            rp = rays[p]
            for q in neg:
                common = zp & zsets[q]
                if _popcount(common) < need:
                    continue
                pair = (1 << p) | (1 << q)
                acc = all_rays
                cc = common
                while cc and acc != pair:
                    low = cc & -cc
                    acc &= tight_on.get(low.bit_length() - 1, 0)
                    cc ^= low
                if acc != pair:
                    continue
                vq = vals[q]
                new_rays.append(_primitive([vp * x - vq * y for x, y in zip(rays[q], rp)]))
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
        processed |= bit
        if deadline is not None and time.monotonic() > deadline:
            raise TooLarge(f"time budget exceeded after {idx + 1} of {len(constraints)} "
                           f"constraints with {len(rays)} intermediate rays")
    return rays, lines


def enumerate_vertices(H: HPolyhedron, force: bool = False, budget: float | None = None) -> VRepresentation:
    """All vertices and extreme rays of ``H``, exactly.

    ``budget`` caps the wall-clock seconds spent; TooLarge when exceeded.
    """
    _guard(H, force)
    d = H.dimension
    cons = [tuple([1] + [0] * d)] + _homogenised(H)
    deadline = None if budget is None else time.monotonic() + budget
    rays, lines = double_description(cons, d + 1, deadline)
    vertices, directions = [], []
    for r in rays:
        if r[0] > 0:
            vertices.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            directions.append(r[1:])
    if not vertices:
        raise EmptyPolyhedron("polyhedron is empty")
    return VRepresentation.build(d, vertices, directions, [l[1:] for l in lines])


def __getattr__(name):
    # ``enumerate`` is the public name; a module global would shadow the builtin
    if name == "enumerate":
        return enumerate_vertices
    raise AttributeError(name)


def dominant(V: VRepresentation) -> VRepresentation:
    """Drop every vertex coordinate-wise dominated by another vertex."""
    vs = V.vertices
    keep = []
    for i, e in enumerate(vs):
        if not any(j != i and all(x >= y for x, y in zip(f, e)) for j, f in enumerate(vs)):
            keep.append(e)
    return VRepresentation(V.dimension, tuple(keep), V.rays, V.lines)


def lower_coordinate_bound(V: VRepresentation, vertices_only: bool = False) -> Fraction:
    """Smallest coordinate of any vertex.

    Unless ``vertices_only`` is set, a ray or line along which some
    coordinate decreases without bound raises :class:`Unbounded`.
    """
    if not vertices_only:
        for r in V.rays:
            if any(x < 0 for x in r):
                raise Unbounded(f"ray {[str(x) for x in r]} has a negative coordinate")
        for l in V.lines:
            if any(l):
                raise Unbounded(f"line {[str(x) for x in l]} is unbounded below")
    return min(min(v) for v in V.vertices)


def max_over(V: VRepresentation, objective: Sequence) -> Fraction:
    """``max c.y`` over the polyhedron; raises Unbounded if a ray improves it."""
    c = _frac_vec(objective)
    for r in V.rays:
        if sum(x * y for x, y in zip(c, r)) > 0:
            raise Unbounded("objective increases along a ray")
    for l in V.lines:
        if sum(x * y for x, y in zip(c, l)) != 0:
            raise Unbounded("objective is not constant along a line")
    return max(sum(x * y for x, y in zip(c, v)) for v in V.vertices)


# ---------------------------------------------------------------- containment

def hull_contains(V: VRepresentation, point: Sequence) -> bool:
    """Is ``point`` in conv(vertices) + cone(rays) + span(lines)?"""
    p = _frac_vec(point)
    if p in V.vertex_set:
        return True
    gens = list(V.vertices)
    dirs = list(V.rays) + list(V.lines) + [tuple(-x for x in l) for l in V.lines]
    d = V.dimension
    A = [[v[i] for v in gens] + [r[i] for r in dirs] for i in range(d)]
    A.append([1] * len(gens) + [0] * len(dirs))
    return lp.feasible(A, list(p) + [1])


def hull_contains_direction(V: VRepresentation, direction: Sequence) -> bool:
    r = _frac_vec(direction)
    if not any(r):
        return True
    dirs = list(V.rays) + list(V.lines) + [tuple(-x for x in l) for l in V.lines]
    if not dirs:
        return False
    A = [[g[i] for g in dirs] for i in range(V.dimension)]
    return lp.feasible(A, list(r))


def _as_pair(P, force):
    if isinstance(P, tuple):
        return P
    if isinstance(P, HPolyhedron):
        return P, enumerate_vertices(P, force=force)
    return None, P


def _inside(V: VRepresentation, target_h, target_v) -> bool:
    if target_h is not None:
        return (all(target_h.contains(v) for v in V.vertices)
                and all(target_h.contains_direction(r) for r in V.rays)
                and all(target_h.contains_direction(l) and target_h.contains_direction([-x for x in l])
                        for l in V.lines))
    return (all(hull_contains(target_v, v) for v in V.vertices)
            and all(hull_contains_direction(target_v, r) for r in V.rays)
            and all(hull_contains_direction(target_v, l)
                    and hull_contains_direction(target_v, [-x for x in l]) for l in V.lines))


def polyhedra_equal(P1, P2, force: bool = False) -> bool:
    """Equality by mutual containment of generators.

    Either argument may be an :class:`HPolyhedron`, a
    :class:`VRepresentation` (for example a stable set polytope given by its
    vertices), or an ``(HPolyhedron, VRepresentation)`` pair of the same set
    when both are already known.
    """
    h1, v1 = _as_pair(P1, force)
    h2, v2 = _as_pair(P2, force)
    if v1.dimension != v2.dimension:
        raise ValueError("dimension mismatch")
    return _inside(v1, h2, v2) and _inside(v2, h1, v1)


# ---------------------------------------------------------------- checks

def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    M = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(len(M)):
            if i != rk and M[i][c]:
                f = M[i][c] / M[rk][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[rk])]
        rk += 1
    return rk


def is_vertex(H: HPolyhedron, point: Sequence) -> bool:
    """Feasible, and the tight rows have full rank."""
    if not H.contains(point):
        return False
    tight = [H.rows[i][0] for i in H.tight_rows(point)]
    return bool(tight) and rank(tight) == H.dimension


# ---------------------------------------------------------------- file formats

def _fmt(x: Fraction) -> str:
    return str(x)


def write_ine(H: HPolyhedron) -> str:
    lines = ["H-representation", "begin", f" {len(H.rows)} {H.dimension + 1} rational"]
    for a, b in H.rows:
        lines.append(" " + " ".join([_fmt(b)] + [_fmt(-x) for x in a]))
    lines.append("end")
    return "\n".join(lines) + "\n"


def write_ext(V: VRepresentation) -> str:
    rows = [[Fraction(1)] + list(v) for v in V.vertices] + [[Fraction(0)] + list(r) for r in V.rays]
    out = ["V-representation"]
    if V.lines:
        first = len(rows) + 1
        out.append(f"linearity {len(V.lines)} " + " ".join(str(first + i) for i in range(len(V.lines))))
        rows += [[Fraction(0)] + list(l) for l in V.lines]
    out += ["begin", f" {len(rows)} {V.dimension + 1} rational"]
    out += [" " + " ".join(_fmt(x) for x in r) for r in rows]
    out.append("end")
    return "\n".join(out) + "\n"


def _read_block(text: str):
    linearity = set()
    body, inside, header = [], False, None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("*"):
            continue
        if line.startswith("linearity"):
            parts = line.split()
            linearity = {int(x) for x in parts[2:]}
        elif line == "begin":
            inside = True
        elif line == "end":
            break
        elif inside and header is None:
            header = line.split()
        elif inside:
            body.append([Fraction(x) for x in line.split()])
    if header is None:
        raise ValueError("missing 'begin' block")
    nrows, ncols = int(header[0]), int(header[1])
    if len(body) != nrows or any(len(r) != ncols for r in body):
        raise ValueError("row count or width does not match header")
    return body, ncols - 1, linearity


def read_ine(text: str) -> HPolyhedron:
    body, d, linearity = _read_block(text)
    rows = []
    for i, r in enumerate(body, start=1):
        a, b = [-x for x in r[1:]], r[0]
        rows.append((a, b))
        if i in linearity:
            rows.append(([-x for x in a], -b))
    return HPolyhedron.from_rows(d, rows)


def read_ext(text: str) -> VRepresentation:
    body, d, linearity = _read_block(text)
    vs, rs, ls = [], [], []
    for i, r in enumerate(body, start=1):
        if i in linearity:
            ls.append(r[1:])
        elif r[0] != 0:
            vs.append([x / r[0] for x in r[1:]])
        else:
            rs.append(r[1:])
    return VRepresentation.build(d, vs, rs, ls)


def dumps(obj) -> str:
    return json.dumps(obj.to_dict(), sort_keys=True) + "\n"
