"""Sensor configurations described by their atoms.

An atom is identified with the set of regions that contain it, so a
configuration is a family of non-empty index sets over regions 1..R.  The
geometry behind the generators below (inflated squares and hexagons, glued
tetrahedra) only serves to decide which index sets occur.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import complex as cx
from .complex import SimplicialComplex
from .errors import EmptyInput, IndexOutOfRange, InvalidGluing

Atom = tuple[int, ...]


def atom_key(atom: Atom):
    """Canonical atom order: by size, then lexicographic."""
    return (len(atom), atom)


@dataclass(frozen=True)
class SensorConfiguration:
    region_count: int
    atoms: tuple[Atom, ...]
    tag: str = "abstract"
    layout: Mapping | None = field(default=None, compare=False)

    def __post_init__(self):
        R = self.region_count
        if R < 1:
            raise EmptyInput("a configuration needs at least one region")
        canon = set()
        for a in self.atoms:
            s = tuple(sorted(set(int(v) for v in a)))
            if not s:
                raise EmptyInput("atoms must be non-empty")
            if s[0] < 1 or s[-1] > R:
                raise IndexOutOfRange(f"atom {list(s)} has a region outside 1..{R}")
            canon.add(s)
        object.__setattr__(self, "atoms", tuple(sorted(canon, key=atom_key)))

    def to_dict(self) -> dict:
        d = {"regions": self.region_count, "atoms": [list(a) for a in self.atoms], "tag": self.tag}
        if self.layout is not None:
            d["layout"] = {"kind": self.layout["kind"],
                           "cells": [list(c) for c in self.layout["cells"]]}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: Mapping) -> "SensorConfiguration":
        layout = data.get("layout")
        if layout is not None:
            layout = {"kind": layout["kind"], "cells": tuple(tuple(c) for c in layout["cells"])}
        return cls(int(data["regions"]), tuple(tuple(a) for a in data["atoms"]),
                   data.get("tag", "abstract"), layout)


@dataclass(frozen=True)
class MeasurementVector:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise ValueError("measurements must be non-negative")
        object.__setattr__(self, "values", vals)

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @classmethod
    def parse(cls, text: str) -> "MeasurementVector":
        """Parse ``"1,2/3,4"``."""
        return cls(tuple(Fraction(t.strip()) for t in text.split(",") if t.strip()))


def as_measurement(n) -> MeasurementVector:
    return n if isinstance(n, MeasurementVector) else MeasurementVector(tuple(n))


# ---------------------------------------------------------------- analysis

def nerve(C: SensorConfiguration) -> SimplicialComplex:
    return cx.from_simplices(C.region_count, C.atoms)


def is_generic(C: SensorConfiguration) -> bool:
    """Every non-empty simplex of the nerve is an atom."""
    atoms = set(C.atoms)
    return all(s in atoms for s in nerve(C).faces())


def missing_atoms(C: SensorConfiguration) -> list[Atom]:
    """Simplices of the nerve that have no atom of their own."""
    atoms = set(C.atoms)
    return [s for s in nerve(C).faces() if s not in atoms]


def is_irredundant(C: SensorConfiguration) -> bool:
    atoms = set(C.atoms)
    return all((r,) in atoms for r in range(1, C.region_count + 1))


def incidence_matrix(C: SensorConfiguration) -> list[list[int]]:
    """Rows are regions, columns are atoms in canonical order."""
    return [[1 if r in a else 0 for a in C.atoms] for r in range(1, C.region_count + 1)]


def summary(C: SensorConfiguration) -> dict:
    return {
        "regions": C.region_count,
        "atoms": len(C.atoms),
        # every region holds at least one atom
        "coverage": {r for a in C.atoms for r in a} == set(range(1, C.region_count + 1)),
        "irredundant": is_irredundant(C),
        "generic": is_generic(C),
        "flag": cx.is_flag(nerve(C)),
        "tag": C.tag,
    }


# ---------------------------------------------------------------- generators

def gen_generic_from_complex(sigma: SimplicialComplex, tag: str = "abstract",
                             layout=None) -> SensorConfiguration:
    return SensorConfiguration(sigma.vertex_count, tuple(sigma.faces()), tag, layout)


def gen_cycle(R: int) -> SensorConfiguration:
    """Necklace: consecutive regions overlap pairwise and nothing else."""
    if R < 3:
        raise ValueError("a cycle needs at least 3 regions")
    edges = [(i, i % R + 1) for i in range(1, R + 1)]
    return gen_generic_from_complex(cx.from_simplices(R, edges), tag="cycle")


def _cells(cells: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    out = sorted(set((int(c[0]), int(c[1])) for c in cells))
    if not out:
        raise EmptyInput("at least one cell is required")
    return out


SQUARE_NORMS = ("sup", "euclidean")


def _corner_patterns(norm: str):
    # Cells around a lattice corner are named by the quadrant holding the
    # point (c), its two edge neighbours (e, f) and the opposite cell (d).
    # With square corners a point near the corner lies in all four or in a
    # 1x2 / 1x1 block; round corners also leave the three-cell sets where
    # the opposite cell is just out of reach.
    base = [("c",), ("c", "e"), ("c", "f"), ("c", "e", "f", "d")]
    if norm == "euclidean":
        base.append(("c", "e", "f"))
    return base


def gen_square_lattice(cells: Iterable[Sequence[int]], norm: str = "sup") -> SensorConfiguration:
    """Unit squares at integer cells, slightly inflated.

    ``norm="sup"`` inflates each square to a larger square; a point then
    lies in the squares of a 1x1, 1x2, 2x1 or 2x2 block of lattice cells, so
    the atoms are exactly the non-empty traces of the given cells on such
    blocks.  ``norm="euclidean"`` rounds the corners, which in addition
    makes every three cells around a corner an atom.  Regions are numbered
    in sorted cell order.
    """
    if norm not in SQUARE_NORMS:
        raise ValueError(f"norm must be one of {', '.join(SQUARE_NORMS)}")
    cl = _cells(cells)
    index = {c: i + 1 for i, c in enumerate(cl)}
    corners = {(i + a, j + b) for i, j in cl for a in (0, 1) for b in (0, 1)}
    atoms = set()
    for (x, y) in corners:
        around = [(x - 1, y - 1), (x - 1, y), (x, y), (x, y - 1)]  # cyclic order
        for k in range(4):
            names = {"c": around[k], "e": around[(k + 1) % 4],
                     "f": around[(k + 3) % 4], "d": around[(k + 2) % 4]}
            for pattern in _corner_patterns(norm):
                atom = tuple(sorted(index[names[t]] for t in pattern if names[t] in index))
                if atom:
                    atoms.add(atom)
    tag = "square-lattice" if norm == "sup" else "square-lattice-round"
    return SensorConfiguration(len(cl), tuple(atoms), tag,
                               {"kind": "square", "cells": tuple(cl)})


HEX_DIRECTIONS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def hex_neighbours(q: int, r: int) -> list[tuple[int, int]]:
    return [(q + dq, r + dr) for dq, dr in HEX_DIRECTIONS]


def hex_center(q: int, r: int) -> tuple[float, float]:
    """Centre of the pointy-top unit-circumradius hexagon at axial (q, r)."""
    return (math.sqrt(3) * (q + r / 2), 1.5 * r)


def gen_hex_patch(cells: Iterable[Sequence[int]]) -> SensorConfiguration:
    """Slightly inflated honeycomb hexagons at axial coordinates.

    Atoms are singletons, adjacent pairs, and the triples of hexagons that
    meet at a common corner.
    """
    cl = _cells(cells)
    index = {c: i + 1 for i, c in enumerate(cl)}
    atoms = set((i,) for i in index.values())
    for c in cl:
        nb = hex_neighbours(*c)
        for k, d in enumerate(nb):
            if d in index:
                atoms.add(tuple(sorted((index[c], index[d]))))
                e = nb[(k + 1) % 6]
                if e in index:
                    atoms.add(tuple(sorted((index[c], index[d], index[e]))))
    return SensorConfiguration(len(cl), tuple(atoms), "hex-patch",
                               {"kind": "hex", "cells": tuple(cl)})


HEX_PATCHES = {
    "single": [(0, 0)],
    "pair": [(0, 0), (1, 0)],
    "triple": [(0, 0), (1, 0), (0, 1)],
    "flower7": [(0, 0)] + hex_neighbours(0, 0),
}


def hex_cells_from_centers(centers: Sequence[tuple[float, float]], tol: float = 1e-4):
    """Snap Cartesian hexagon centres onto axial lattice coordinates."""
    out = []
    for x, y in centers:
        r = round(y / 1.5)
        q = round(x / math.sqrt(3) - r / 2)
        cx_, cy_ = hex_center(q, r)
        if abs(cx_ - x) > tol or abs(cy_ - y) > tol:
            raise ValueError(f"centre ({x}, {y}) is not on the honeycomb lattice")
        out.append((q, r))
    return out


# Hexagon centres of the 30-hexagon patch, as printed (five decimals).
FIG8A_CENTERS = (
    (0.0, 0.0), (1.73205, 0.0), (0.86603, 1.5), (-0.86603, 1.5), (-1.73205, 0.0),
    (-0.86603, -1.5), (0.86603, -1.5), (3.46410, 0.0), (2.59808, 1.5), (1.73205, 3.0),
    (0.0, 3.0), (-1.73205, 3.0), (-2.59808, 1.5), (-3.46410, 0.0), (-2.59808, -1.5),
    (-1.73205, -3.0), (0.0, -3.0), (1.73205, -3.0), (2.59808, -1.5), (5.19615, 0.0),
    (4.33013, 1.5), (3.46410, 3.0), (2.59808, 4.5), (0.86603, 4.5), (-0.86603, 4.5),
    (-2.59808, 4.5), (-3.46410, 3.0), (-4.33013, 1.5), (-5.19615, 0.0), (-4.33013, -1.5),
)


def gen_hex_from_centers(centers: Sequence[tuple[float, float]], tol: float = 1e-4) -> SensorConfiguration:
    """Hex patch whose regions keep the order of ``centers``.

    Adjacency is decided from centre distances (sqrt 3 for unit circumradius).
    """
    cells = hex_cells_from_centers(centers, tol)
    R = len(centers)
    atoms = set((i,) for i in range(1, R + 1))
    adj = {i: set() for i in range(R)}
    for i, j in combinations(range(R), 2):
        d = math.dist(centers[i], centers[j])
        if abs(d - math.sqrt(3)) <= tol:
            adj[i].add(j)
            adj[j].add(i)
            atoms.add((i + 1, j + 1))
    for i, j, k in combinations(range(R), 3):
        if j in adj[i] and k in adj[i] and k in adj[j]:
            atoms.add((i + 1, j + 1, k + 1))
    return SensorConfiguration(R, tuple(atoms), "hex-patch", {"kind": "hex", "cells": tuple(cells)})


def _glue(tetrahedra, identifications):
    order: list[str] = []
    for t in tetrahedra:
        if len(set(t)) != 4:
            raise InvalidGluing(f"tetrahedron {t} needs four distinct labels")
        order.extend(x for x in t if x not in order)
    parent = {x: x for x in order}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in identifications:
        if a not in parent or b not in parent:
            raise InvalidGluing(f"unknown label in identification {a}={b}")
        ra, rb = find(a), find(b)
        if ra != rb:
            # keep the earlier label as representative
            if order.index(rb) < order.index(ra):
                ra, rb = rb, ra
            parent[rb] = ra
    reps = []
    for x in order:
        if find(x) not in reps:
            reps.append(find(x))
    number = {rep: i + 1 for i, rep in enumerate(reps)}
    faces = []
    for t in tetrahedra:
        s = {number[find(x)] for x in t}
        if len(s) != 4:
            raise InvalidGluing(f"identifications collapse tetrahedron {t}")
        faces.append(s)
    labels = {number[find(x)]: "=".join(y for y in order if find(y) == find(x)) for x in order}
    return len(reps), faces, labels


def gen_glued_tetrahedra(tetrahedra: Sequence[Sequence[str]],
                         identifications: Sequence[tuple[str, str]] = ()) -> SensorConfiguration:
    """Solid tetrahedra with vertices identified, as a generic configuration.

    Regions are the identified vertex classes, numbered by the first label of
    each class in the order labels appear in ``tetrahedra``.
    """
    R, faces, _ = _glue(tetrahedra, identifications)
    return gen_generic_from_complex(cx.from_simplices(R, faces), tag="glued-tetrahedra")


def glued_labels(tetrahedra, identifications=()) -> dict[int, str]:
    """Region number -> joined vertex labels, e.g. ``{1: "a=r", ...}``."""
    return _glue(tetrahedra, identifications)[2]


_TETS = (("a", "b", "c", "d"), ("r", "s", "t", "u"), ("w", "x", "y", "z"))

EXAMPLE7_CASES = {
    1: (_TETS[:2], (("a", "r"),)),
    2: (_TETS, (("a", "r"), ("u", "w"))),
    3: (_TETS, (("a", "r"), ("u", "w"), ("x", "b"))),
    4: (_TETS, (("a", "r"), ("b", "s"), ("t", "w"), ("u", "x"))),
    5: (_TETS, (("a", "r"), ("b", "s"), ("t", "w"), ("u", "x"), ("y", "c"), ("z", "d"))),
}


def example7(case: int) -> SensorConfiguration:
    """One of the five glued-tetrahedra cases."""
    tets, ids = EXAMPLE7_CASES[case]
    return gen_glued_tetrahedra(tets, ids)


def example7_labels(case: int) -> dict[int, str]:
    tets, ids = EXAMPLE7_CASES[case]
    return glued_labels(tets, ids)


# ---------------------------------------------------------------- fixtures

FIGURES = ("1a", "1b", "3", "4", "5", "8a")


def figure(name: str) -> SensorConfiguration:
    """Pinned reference configuration by figure name."""
    if name not in FIGURES:
        raise KeyError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    text = resources.files("fusion_bounds.fixtures").joinpath(f"figure_{name}.json").read_text()
    return SensorConfiguration.from_dict(json.loads(text))


def load(path) -> SensorConfiguration:
    with open(path) as fh:
        return SensorConfiguration.from_dict(json.load(fh))
