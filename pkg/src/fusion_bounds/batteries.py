"""Deterministic instance batteries shared by the verify suite and tests."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import complex as cx
from . import config
from .config import SensorConfiguration
from .graphs import Graph, cycle

SEED = 20240611


def rng(salt: int = 0) -> random.Random:
    return random.Random(SEED + salt)


def random_complex(r: random.Random, max_regions: int = 8, max_size: int = 4) -> cx.SimplicialComplex:
    R = r.randint(1, max_regions)
    faces = []
    for _ in range(r.randint(1, R + 2)):
        k = r.randint(1, min(max_size, R))
        faces.append(r.sample(range(1, R + 1), k))
    return cx.from_simplices(R, faces)


def random_generic(r: random.Random, max_regions: int = 8, max_size: int = 4) -> SensorConfiguration:
    return config.gen_generic_from_complex(random_complex(r, max_regions, max_size))


def random_generic_battery(count: int, salt: int = 0, max_regions: int = 8,
                           max_size: int = 4) -> list[SensorConfiguration]:
    r = rng(salt)
    return [random_generic(r, max_regions, max_size) for _ in range(count)]


def random_n(r: random.Random, R: int, hi: int = 4) -> tuple[Fraction, ...]:
    return tuple(Fraction(r.randint(0, hi)) for _ in range(R))


def triangle_closure() -> SensorConfiguration:
    return config.gen_generic_from_complex(cx.full_simplex(3), tag="triangle")


def triangle_graph() -> SensorConfiguration:
    return config.gen_cycle(3)


def tetra_boundary() -> SensorConfiguration:
    return config.gen_generic_from_complex(cx.boundary_of_simplex(4), tag="tetra-boundary")


def square(k: int) -> SensorConfiguration:
    return config.gen_square_lattice([(i, j) for i in range(k) for j in range(k)])


def named_configs() -> dict[str, SensorConfiguration]:
    """Every hand-built configuration used across the checks."""
    out = {f"figure:{f}": config.figure(f) for f in config.FIGURES if f != "8a"}
    out["triangle"] = triangle_closure()
    out["triangle-graph"] = triangle_graph()
    out["tetra-boundary"] = tetra_boundary()
    for R in range(4, 8):
        out[f"cycle:{R}"] = config.gen_cycle(R)
    out["squares:2x2"] = square(2)
    out["squares:3x3"] = square(3)
    for name in ("pair", "triple", "flower7"):
        out[f"hex:{name}"] = config.gen_hex_patch(config.HEX_PATCHES[name])
    for case in range(1, 6):
        out[f"example7:{case}"] = config.example7(case)
    return out


def atlas_graphs(max_vertices: int = 7) -> list[Graph]:
    """All graphs up to isomorphism with 1..max_vertices vertices (max 7)."""
    import networkx as nx

    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= max_vertices:
            out.append(Graph.build(n, [(u + 1, v + 1) for u, v in g.edges()]))
    return out


def random_graph(r: random.Random, n: int, p: float | None = None) -> Graph:
    p = r.uniform(0.15, 0.7) if p is None else p
    return Graph.build(n, [e for e in combinations(range(1, n + 1), 2) if r.random() < p])


def random_graphs(count: int, lo: int, hi: int, salt: int = 0) -> list[Graph]:
    r = rng(salt)
    return [random_graph(r, r.randint(lo, hi)) for _ in range(count)]


def odd_cycle_witness() -> Graph:
    return cycle(5)
