"""Self-checks: one function per acceptance criterion.

Each check returns a :class:`VerifyResult`; a failing result carries the
smallest counterexample found (configuration, measurements, both values).
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Callable

from . import batteries as bt
from . import bounds, config, graphs, polytope
from .complex import is_flag
from .config import SensorConfiguration
from .errors import TooLarge

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
INTEGER_CAP = 200_000


@dataclass
class VerifyResult:
    name: str
    status: str
    expected: str = ""
    computed: str = ""
    elapsed: float = 0.0
    counterexample: dict | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "expected": self.expected,
               "computed": self.computed, "elapsed": round(self.elapsed, 3)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        return out


class _Fail(Exception):
    def __init__(self, expected, computed, counterexample=None):
        super().__init__(f"expected {expected}, computed {computed}")
        self.expected, self.computed, self.counterexample = expected, computed, counterexample


def _s(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(_s(v) for v in x) + ")"
    if isinstance(x, (set, frozenset)):
        return "{" + ",".join(_s(v) for v in sorted(x)) + "}"
    return str(x)


def _cex(C: SensorConfiguration | None = None, n=None, **values) -> dict:
    out = {}
    if C is not None:
        out["config"] = C.to_dict()
    if n is not None:
        out["n"] = [str(x) for x in n]
    out.update({k: _s(v) for k, v in values.items()})
    return out


def _expect(cond: bool, expected, computed, counterexample=None):
    if not cond:
        raise _Fail(_s(expected), _s(computed), counterexample)


def _F(*xs):
    return tuple(Fraction(x) for x in xs)


# ---------------------------------------------------------------- checks

def check_triangle():
    C = bt.triangle_closure()
    D = polytope.dominant(polytope.enumerate_vertices(polytope.positive_fusion_polytope(C)))
    want = {_F(1, 0, 0), _F(0, 1, 0), _F(0, 0, 1)}
    _expect(set(D.vertices) == want, want, set(D.vertices), _cex(C))
    n = _F(2, 5, 3)
    lo = bounds.primal_min(C, n)[0]
    _expect(lo == 5 == max(n), 5, lo, _cex(C, n))
    return "dominant {e1,e2,e3}; min(2,5,3)=5", f"min={lo}"


def check_tetra_boundary():
    C = bt.tetra_boundary()
    D = polytope.dominant(polytope.enumerate_vertices(polytope.positive_fusion_polytope(C)))
    third = Fraction(1, 3)
    want = {_F(1, 0, 0, 0), _F(0, 1, 0, 0), _F(0, 0, 1, 0), _F(0, 0, 0, 1), (third,) * 4}
    _expect(set(D.vertices) == want, want, set(D.vertices), _cex(C))
    n = _F(1, 1, 1, 1)
    lo = bounds.primal_min(C, n)[0]
    du = bounds.dual_min(C, n)
    _expect(lo == du == Fraction(4, 3), Fraction(4, 3), (lo, du), _cex(C, n))
    return "five dominant points; min=4/3", f"primal={lo} dual={du}"


def check_triangle_graph():
    C = bt.triangle_graph()
    V = polytope.enumerate_vertices(polytope.fusion_polytope(C))
    r = bt.rng(3)
    for _ in range(50):
        n = tuple(Fraction(r.randint(0, 20), r.choice((1, 1, 2, 3))) for _ in range(3))
        closed = max(max(n), sum(n) / 2)
        du = bounds.dual_min(C, n, V)
        lo = bounds.primal_min(C, n)[0]
        _expect(du == lo == closed, closed, (lo, du), _cex(C, n, primal=lo, dual=du))
    return "min = max(n1,n2,n3,(n1+n2+n3)/2) on 50 instances", "50 of 50 equal"


def check_figure_1a():
    C = config.figure("1a")
    V = polytope.enumerate_vertices(polytope.fusion_polytope(C))
    _expect(_F(1, 1, -1) in V.vertices, "(1,1,-1) among vertices", V.vertices, _cex(C))
    n = _F(1, 1, 1)
    du = bounds.dual_min(C, n, V)
    lo = bounds.primal_min(C, n)[0]
    _expect(du == lo == 1, 1, (lo, du), _cex(C, n))
    return "(1,1,-1) is a vertex; dual = primal = 1", f"primal={lo} dual={du}"


def check_figure_3():
    C = config.figure("3")
    n = _F(1, 1, 1)
    lo, hi = bounds.primal_min(C, n)[0], bounds.primal_max(C, n)
    ints = bounds.integer_range(C, n)
    _expect((lo, hi, ints) == (1, 3, {1, 3}), (1, 3, {1, 3}), (lo, hi, ints), _cex(C, n))
    return "min 1, max 3, integers {1,3}", f"min={lo} max={hi} integers={_s(ints)}"


def check_necklace():
    for R in range(3, 10):
        G = graphs.cycle(R)
        V = polytope.enumerate_vertices(graphs.frac(G))
        D = polytope.dominant(V)
        closed = graphs.necklace_vertices(R)
        _expect(D.vertices == closed.vertices, closed.vertices, D.vertices, _cex(R=R))
        half = (Fraction(1, 2),) * R
        _expect((half in V.vertices) == bool(R % 2), f"half vertex iff odd (R={R})",
                half in V.vertices, _cex(R=R))
    return "closed form = dominant(FRAC(C_R)), R=3..9", "equal for R=3..9; half point exactly for odd R"


def _frac_battery():
    return bt.atlas_graphs(7) + bt.random_graphs(100, 1, 10, salt=7)


def check_frac():
    allowed = {Fraction(0), Fraction(1, 2), Fraction(1)}
    count = equalities = 0
    for G in _frac_battery():
        H = graphs.frac(G)
        V = polytope.enumerate_vertices(H)
        bad = [v for v in V.vertices if not set(v) <= allowed]
        _expect(not bad, "coordinates in {0,1/2,1}", bad[:1], _cex(graph=G.to_dict()))
        if G.vertex_count <= 7:
            equal = polytope.polyhedra_equal(graphs.stab(G), (H, V))
            predicted = graphs.is_bipartite(G) and not graphs.isolated_vertices(G)
            _expect(equal == predicted, predicted, equal, _cex(graph=G.to_dict()))
            equalities += equal
        count += 1
    return "half-integral FRAC; STAB=FRAC iff bipartite without isolated", \
        f"{count} graphs half-integral; {equalities} with STAB=FRAC, all predicted"


def check_perfect():
    c5 = bt.odd_cycle_witness()
    _expect(not polytope.polyhedra_equal(graphs.stab(c5), graphs.qstab(c5)) and not graphs.is_perfect(c5),
            "C5: STAB != QSTAB and imperfect", "otherwise", _cex(graph=c5.to_dict()))
    battery = bt.atlas_graphs(7) + bt.random_graphs(60, 8, 9, salt=8)
    perfect_count = 0
    for G in battery:
        equal = polytope.polyhedra_equal(graphs.stab(G), graphs.qstab(G))
        perfect = graphs.is_perfect(G)
        _expect(equal == perfect, perfect, equal, _cex(graph=G.to_dict()))
        perfect_count += perfect
    return "STAB=QSTAB iff perfect; C5 imperfect", \
        f"{len(battery)} graphs agree, {perfect_count} perfect"


def check_flag():
    _expect(graphs.flag_correspondence_check(config.figure("4")), True, False, _cex(config.figure("4")))
    _expect(not graphs.flag_correspondence_check(config.figure("5")), False, True, _cex(config.figure("5")))
    for name in ("pair", "triple", "flower7"):
        C = config.gen_hex_patch(config.HEX_PATCHES[name])
        _expect(graphs.flag_correspondence_check(C), True, False, _cex(C))
    flags = 0
    for C in bt.random_generic_battery(100, salt=9):
        got = graphs.flag_correspondence_check(C)
        want = is_flag(config.nerve(C))
        _expect(got == want, want, got, _cex(C))
        flags += want
    return "fig 4 and hex patches true, fig 5 false, agrees with is_flag on 100 configs", \
        f"100 of 100 agree ({flags} flag, {100 - flags} not)"


def _max_over(V, n):
    return polytope.max_over(V, n)


def check_positivity():
    r = bt.rng(10)
    for C in bt.random_generic_battery(100, salt=10, max_regions=7):
        full = polytope.enumerate_vertices(polytope.fusion_polytope(C))
        pos = polytope.enumerate_vertices(polytope.positive_fusion_polytope(C))
        for _ in range(10):
            n = bt.random_n(r, C.region_count, 5)
            a, b = _max_over(full, n), _max_over(pos, n)
            _expect(a == b, a, b, _cex(C, n, full=a, positive=b))
    C = bt.square(2)
    full = polytope.enumerate_vertices(polytope.fusion_polytope(C))
    gen = config.gen_generic_from_complex(config.nerve(C))
    pos = polytope.enumerate_vertices(polytope.positive_fusion_polytope(gen))
    witness = None
    for n in product(range(3), repeat=4):
        if _max_over(full, n) != _max_over(pos, n):
            witness = n
            break
    _expect(witness is not None, "a separating n for the 2x2 squares", None, _cex(C))
    return ("generic maxima agree (100 configs x 10 n); 2x2 squares separate",
            f"witness n={_s(witness)}: {_max_over(full, witness)} vs {_max_over(pos, witness)}")


def check_squares():
    lows = {}
    for k in (2, 3):
        for norm in config.SQUARE_NORMS:
            C = config.gen_square_lattice([(i, j) for i in range(k) for j in range(k)], norm)
            V = polytope.enumerate_vertices(polytope.fusion_polytope(C))
            low = polytope.lower_coordinate_bound(V, vertices_only=True)
            _expect(low >= -1, ">= -1", low, _cex(C))
            lows[f"{k}x{k}/{norm}"] = low
    C = config.gen_square_lattice([(0, 0), (0, 1), (1, 0), (1, 1)], "euclidean")
    V = polytope.enumerate_vertices(polytope.fusion_polytope(C))
    # regions 1..4 are cells (0,0),(0,1),(1,0),(1,1): the diagonal pair is 1,4
    _expect(_F(-1, 1, 1, -1) in V.vertices, "(-1,1,1,-1) vertex", V.vertices, _cex(C))
    return "all vertex coordinates >= -1; (-1,1,1,-1) attained", _s(sorted(lows.items()))


def duality_battery():
    out = list(bt.named_configs().items())
    out += [(f"random:{i}", C) for i, C in enumerate(bt.random_generic_battery(20, salt=12))]
    return out


def check_duality():
    r = bt.rng(12)
    compared = skipped = 0
    for name, C in duality_battery():
        V = polytope.enumerate_vertices(polytope.fusion_polytope(C))
        for _ in range(10):
            n = bt.random_n(r, C.region_count, 3)
            lo = bounds.primal_min(C, n)[0]
            du = bounds.dual_min(C, n, V)
            _expect(lo == du, lo, du, _cex(C, n, primal=lo, dual=du))
            try:
                ints = bounds.integer_range(C, n, cap=INTEGER_CAP)
            except TooLarge:
                skipped += 1
                continue
            compared += 1
            _expect(min(ints) == ceil(lo), ceil(lo), min(ints), _cex(C, n, rational=lo, integer=min(ints)))
    return "primal = dual everywhere; integer min = ceil(rational min)", \
        f"{compared} integer comparisons, {skipped} beyond the oracle cap"


def check_integers():
    r = bt.rng(13)
    configs = [C for _, C in duality_battery() if config.is_generic(C)]
    checked = 0
    for C in configs:
        ns = list(product(range(4), repeat=C.region_count)) if C.region_count <= 3 else \
            [tuple(r.randint(0, 3) for _ in range(C.region_count)) for _ in range(12)]
        for n in ns:
            try:
                ints = bounds.integer_range(C, n, cap=INTEGER_CAP)
            except TooLarge:
                continue
            want = set(range(min(ints), sum(n) + 1))
            _expect(ints == want, want, ints, _cex(C, n))
            checked += 1
    C = config.figure("3")
    ints = bounds.integer_range(C, _F(1, 1, 1))
    _expect(ints != set(range(min(ints), max(ints) + 1)), "a gap for figure 3", ints, _cex(C))
    return "contiguous on generic instances; figure 3 has a gap", \
        f"{checked} contiguous instances; figure 3 integers {_s(ints)}"


def check_chain():
    r = bt.rng(14)
    for C in bt.random_generic_battery(50, salt=14):
        n = bt.random_n(r, C.region_count, 5)
        k = r.randint(1, 3)
        chain = bounds.skeleton_chain(C, n, k)
        ok = all(a <= b for a, b in zip(chain, chain[1:])) and chain[0] == max(n) and chain[-1] == sum(n)
        _expect(ok, f"non-decreasing from {max(n)} to {sum(n)}", chain, _cex(C, n, k=k, chain=chain))
    return "non-decreasing, ends max(n) and sum(n), 50 configs", "50 of 50 chains hold"


def _triangle_edges_split(C, labels, support):
    # each edge of the triangle must lie in a different tetrahedron
    tets = [set() for _ in range(3)]
    letters = ("abcd", "rstu", "wxyz")
    for region, label in labels.items():
        for part in label.split("="):
            for t, ls in enumerate(letters):
                if part in ls:
                    tets[t].add(region)
    a, b, c = support
    homes = []
    for e in ((a, b), (b, c), (a, c)):
        homes.append(tuple(t for t in range(3) if set(e) <= tets[t]))
    return all(len(h) == 1 for h in homes) and {h[0] for h in homes} == {0, 1, 2}


def check_tetrahedra():
    summary = {}
    for case in range(1, 6):
        C = config.example7(case)
        D = polytope.dominant(polytope.enumerate_vertices(polytope.positive_fusion_polytope(C)))
        other = [v for v in D.vertices if not set(v) <= {0, 1}]
        summary[case] = (len(D.vertices), len(other))
        labels = config.example7_labels(case)
        if case in (1, 2, 4):
            _expect(not other, "0/1 only", other, _cex(C, case=case))
        elif case == 3:
            glued = {i for i, l in labels.items() if l in ("a=r", "u=w", "b=x")}
            want = tuple(Fraction(1, 2) if i + 1 in glued else Fraction(0) for i in range(C.region_count))
            _expect(other == [want], [want], other, _cex(C, case=case))
        else:
            _expect(bool(other), "some 0/1/2 vertices", other, _cex(C, case=case))
            for v in other:
                support = [i + 1 for i, x in enumerate(v) if x]
                ok = set(v) == {0, Fraction(1, 2)} and len(support) == 3 \
                    and _triangle_edges_split(C, labels, support)
                _expect(ok, "1/2 on triangles with one edge per tetrahedron", v, _cex(C, case=case))
    _expect(summary[1][0] == 10, 10, summary[1][0], _cex(case=1))
    return "cases 1,2,4 integral; case 3 one half point; case 5 split triangles", \
        _s(sorted(summary.items()))


HEX30_BUDGET = 1800.0


def check_hex30():
    C = config.figure("8a")
    H = polytope.positive_fusion_polytope(C)
    budget = float(os.environ.get("FUSION_HEX30_BUDGET", HEX30_BUDGET))
    floor = polytope.count_zero_one_points(H, 10 ** 6)
    try:
        V = polytope.enumerate_vertices(H, force=True, budget=budget)
    except TooLarge as e:
        raise _Fail("enumeration completes", f"{e} (budget {budget:.0f}s; at least {floor} vertices)")
    _expect(all(x >= 0 for v in V.vertices for x in v), "positive orthant", "negative coordinate", _cex(C))
    D = polytope.dominant(V)
    values = {x for v in V.vertices for x in v}
    want = {Fraction(0), Fraction(1, 2), Fraction(1), Fraction(1, 4), Fraction(3, 4),
            Fraction(1, 3), Fraction(2, 3)}
    _expect(want <= values, want, values)
    return "enumeration completes; palette values observed", \
        f"{len(V.vertices)} vertices, {len(D.vertices)} dominant, values {_s(values)}"


@dataclass(frozen=True)
class Check:
    name: str
    func: Callable
    aliases: tuple[str, ...] = field(default=())
    long: bool = False


CHECKS = (
    Check("01-triangle", check_triangle, ("triangle",)),
    Check("02-tetra-boundary", check_tetra_boundary, ("tetrahedron",)),
    Check("03-triangle-graph", check_triangle_graph, ("pairwise",)),
    Check("04-degenerate-1a", check_figure_1a, ("figure1a",)),
    Check("05-figure-3", check_figure_3, ("figure3",)),
    Check("06-necklace", check_necklace, ("necklace",)),
    Check("07-frac", check_frac, ("frac", "theorem5")),
    Check("08-perfect", check_perfect, ("perfect", "theorem8")),
    Check("09-flag", check_flag, ("flag", "theorem7")),
    Check("10-positivity", check_positivity, ("positivity", "theorem4")),
    Check("11-squares", check_squares, ("squares", "theorem10")),
    Check("12-duality", check_duality, ("duality",)),
    Check("13-integers", check_integers, ("integers", "theorem3")),
    Check("14-chain", check_chain, ("chain",)),
    Check("15-tetrahedra", check_tetrahedra, ("example7",)),
    Check("16-hex30", check_hex30, ("hex30",), long=True),
)


def select(selector: str = "all", include_long: bool | None = None) -> list[Check]:
    if include_long is None:
        include_long = os.environ.get("FUSION_RUN_LONG") == "1"
    if selector in ("all", ""):
        return [c for c in CHECKS if include_long or not c.long]
    for c in CHECKS:
        if selector == c.name or selector in c.aliases or selector == c.name.split("-")[0]:
            return [c]
    raise KeyError(f"unknown check {selector!r}")


def run_check(check: Check) -> VerifyResult:
    t0 = time.perf_counter()
    try:
        expected, computed = check.func()
        return VerifyResult(check.name, PASS, expected, computed, time.perf_counter() - t0)
    except _Fail as f:
        return VerifyResult(check.name, FAIL, f.expected, f.computed, time.perf_counter() - t0,
                            f.counterexample)
    except Exception as e:  # a crash is a failure, reported with its message
        return VerifyResult(check.name, FAIL, "no exception", f"{type(e).__name__}: {e}",
                            time.perf_counter() - t0)


def _run_by_name(name: str) -> VerifyResult:
    return run_check(next(c for c in CHECKS if c.name == name))


def run(selector: str = "all", jobs: int = 1, include_long: bool | None = None) -> list[VerifyResult]:
    checks = select(selector, include_long)
    if jobs > 1 and len(checks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_by_name, [c.name for c in checks]))
    else:
        results = [run_check(c) for c in checks]
    return sorted(results, key=lambda r: r.name)


def table(results: list[VerifyResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{r.status.upper():7} {r.name:20} {r.elapsed:8.2f}s  {r.computed}")
        if r.status == FAIL:
            lines.append(f"        expected: {r.expected}")
    return "\n".join(lines)
