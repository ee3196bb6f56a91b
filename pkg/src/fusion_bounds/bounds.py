"""Range of the fused count: exact LP minimum and maximum, the dual
formula over extreme points, and an exhaustive integer oracle."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Mapping, Sequence

from . import config, lp, polytope
from .complex import full_simplex, from_simplices, completion, skeleton
from .config import MeasurementVector, SensorConfiguration, as_measurement
from .errors import Infeasible, NotGeneric, TooLarge, Unbounded, UnboundedDual

DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class AtomAssignment:
    atoms: tuple[tuple[int, ...], ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.values):
            raise ValueError("one value per atom is required")
        if any(v < 0 for v in self.values):
            raise ValueError("atom values must be non-negative")

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def measurements(self, R: int) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * R
        for a, v in zip(self.atoms, self.values):
            for r in a:
                out[r - 1] += v
        return tuple(out)

    def to_dict(self) -> dict:
        return {"atoms": [list(a) for a in self.atoms], "values": [str(v) for v in self.values]}


def _check_n(C: SensorConfiguration, n) -> MeasurementVector:
    n = as_measurement(n)
    if len(n.values) != C.region_count:
        raise ValueError(f"expected {C.region_count} measurements, got {len(n.values)}")
    return n


def _solve(C: SensorConfiguration, n: MeasurementVector, sign: int) -> lp.LPResult:
    # looked up through the module so that a patched incidence matrix is seen
    A = config.incidence_matrix(C)
    cost = [sign] * len(C.atoms)
    res = lp.solve(A, list(n.values), cost)
    if res.status == lp.INFEASIBLE:
        raise Infeasible("no non-negative atom assignment matches the measurements",
                         certificate=res.y)
    return res


def primal_min(C: SensorConfiguration, n) -> tuple[Fraction, AtomAssignment]:
    """``min 1.m`` over ``A m = n, m >= 0`` with the optimal vertex ``m``."""
    n = _check_n(C, n)
    res = _solve(C, n, 1)
    return res.value, AtomAssignment(C.atoms, res.x)


def primal_max_assignment(C: SensorConfiguration, n) -> tuple[Fraction, AtomAssignment]:
    n = _check_n(C, n)
    res = _solve(C, n, -1)
    if res.status == lp.UNBOUNDED:  # every atom lies in some region, so never
        raise Unbounded("maximum is unbounded")
    return -res.value, AtomAssignment(C.atoms, res.x)


def primal_max(C: SensorConfiguration, n) -> Fraction:
    """Largest possible total; equals ``sum(n)`` for irredundant configurations."""
    return primal_max_assignment(C, n)[0]


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def dual_min(C: SensorConfiguration, n, V: polytope.VRepresentation | None = None,
             force: bool = False) -> Fraction:
    """``max n.e`` over the vertices of the fusion polytope.

    Every ray must have ``n.ray <= 0`` (and every line ``n.line = 0``),
    otherwise the dual is unbounded and the primal infeasible.
    """
    n = _check_n(C, n)
    if V is None:
        V = polytope.enumerate_vertices(polytope.fusion_polytope(C), force=force)
    best, _ = _dual_argmax(n.values, V)
    return best


def _dual_argmax(n, V):
    for r in V.rays:
        if _dot(n, r) > 0:
            raise UnboundedDual(f"ray {[str(x) for x in r]} has positive objective")
    for l in V.lines:
        if _dot(n, l) != 0:
            raise UnboundedDual(f"line {[str(x) for x in l]} has non-zero objective")
    best, arg = None, None
    for v in V.vertices:
        val = _dot(n, v)
        if best is None or val > best:
            best, arg = val, v
    return best, arg


def integer_range(C: SensorConfiguration, n, cap: int | None = DEFAULT_CAP) -> set[int]:
    """Every total ``sum m`` over integral ``m >= 0`` with ``A m = n``.

    Exhaustive: atoms are assigned one at a time, each bounded by the
    smallest residual count among its regions.
    """
    n = _check_n(C, n)
    if not n.integral:
        raise ValueError("integer_range needs integral measurements")
    vals = tuple(int(v) for v in n.values)
    atoms = C.atoms
    if cap is not None:
        size = 1
        for a in atoms:
            size *= 1 + min(vals[r - 1] for r in a)
            if size > cap:
                raise TooLarge(f"integer enumeration exceeds the cap of {cap} assignments")
    # region r may be closed off once the last atom containing it is placed
    last = {}
    for i, a in enumerate(atoms):
        for r in a:
            last[r] = i
    closes = [[r - 1 for r in a if last[r] == i] for i, a in enumerate(atoms)]
    if any(v and (r + 1) not in last for r, v in enumerate(vals)):
        raise Infeasible("a region with a positive count has no atom")
    memo: dict = {}

    def totals(i: int, res: tuple[int, ...]) -> frozenset:
        key = (i, res)
        if key in memo:
            return memo[key]
        if i == len(atoms):
            out = frozenset([0]) if not any(res) else frozenset()
            memo[key] = out
            return out
        a = atoms[i]
        hi = min(res[r - 1] for r in a)
        acc = set()
        for k in range(hi + 1):
            nxt = list(res)
            for r in a:
                nxt[r - 1] -= k
            if any(nxt[r] for r in closes[i]):
                continue
            for t in totals(i + 1, tuple(nxt)):
                acc.add(t + k)
        out = frozenset(acc)
        memo[key] = out
        return out

    result = set(totals(0, vals))
    if not result:
        raise Infeasible("no integral atom assignment matches the measurements")
    return result


def inclusion_exclusion(counts: Mapping) -> Fraction:
    """Size of the union from the sizes of all intersections.

    Keys are collections of region indices; a missing subset counts as 0.
    """
    total = Fraction(0)
    for key, value in counts.items():
        k = len(set(key))
        if k == 0:
            continue
        total += Fraction(value) if k % 2 else -Fraction(value)
    return total


def skeleton_chain(C: SensorConfiguration, n, k: int) -> tuple[Fraction, ...]:
    """Minima for the complexes bracketing the nerve.

    Returns the minimum for, in order: the full simplex, the k-completion,
    the nerve itself, the k-skeleton, and the discrete complex.  The
    sequence is non-decreasing and runs from ``max(n)`` to ``sum(n)``.
    """
    if not config.is_generic(C):
        raise NotGeneric("skeleton_chain needs a generic configuration")
    n = _check_n(C, n)
    sigma = config.nerve(C)
    R = C.region_count
    chain = [full_simplex(R), completion(sigma, k), sigma, skeleton(sigma, k),
             from_simplices(R, [])]
    return tuple(primal_min(config.gen_generic_from_complex(cx), n)[0] for cx in chain)


def formula_polytope(C: SensorConfiguration) -> polytope.HPolyhedron:
    # generic configurations may use the smaller positive description
    if config.is_generic(C):
        return polytope.positive_fusion_polytope(C)
    return polytope.fusion_polytope(C)


def min_formula(C: SensorConfiguration, V: polytope.VRepresentation | None = None,
                force: bool = False) -> list[tuple[Fraction, ...]]:
    """Dominant vertices ``e``; the minimum for any ``n >= 0`` is ``max n.e``."""
    if V is None:
        V = polytope.enumerate_vertices(formula_polytope(C), force=force)
    for r in V.rays:
        if any(x > 0 for x in r):
            raise Unbounded(f"ray {[str(x) for x in r]} increases some n >= 0")
    for l in V.lines:
        if any(l):
            raise Unbounded("fusion polytope contains a line")
    return list(polytope.dominant(V).vertices)


def _term(e: Sequence[Fraction]) -> str:
    support = [(i + 1, x) for i, x in enumerate(e) if x]
    if not support:
        return "0"
    coeffs = {x for _, x in support}
    names = [f"n{i}" for i, _ in support]
    if len(coeffs) == 1:
        c = coeffs.pop()
        body = "+".join(names)
        if c == 1:
            return body
        inner = body if len(names) == 1 else f"({body})"
        if c.numerator == 1:
            return f"{inner}/{c.denominator}"
        return f"{c}*{inner}"
    return "+".join(f"{x}*n{i}" if x != 1 else f"n{i}" for i, x in support)


def format_formula(points: Sequence[Sequence[Fraction]]) -> str:
    """``max(n1, n2, (n1+n2+n3)/2)`` style rendering of a formula."""
    pts = sorted(points, key=lambda e: (sum(1 for x in e if x), [-x for x in e]))
    return "max(" + ", ".join(_term(e) for e in pts) + ")"


def interpolate(lo: AtomAssignment, hi: AtomAssignment, total) -> AtomAssignment:
    """A feasible assignment with the requested total between the two ends."""
    total = Fraction(total)
    a, b = lo.total, hi.total
    if not a <= total <= b:
        raise ValueError("total outside [min, max]")
    lam = Fraction(0) if a == b else (total - a) / (b - a)
    vals = tuple((1 - lam) * x + lam * y for x, y in zip(lo.values, hi.values))
    return AtomAssignment(lo.atoms, vals)


@dataclass(frozen=True)
class BoundsReport:
    minimum: Fraction
    maximum: Fraction
    min_assignment: AtomAssignment
    max_assignment: AtomAssignment
    dual_minimum: Fraction | None = None
    integer_set: tuple[int, ...] | None = None
    formula: tuple[tuple[Fraction, ...], ...] | None = None
    notes: tuple[str, ...] = field(default=())

    def to_dict(self, assignments: bool = True) -> dict:
        out = {"minimum": str(self.minimum), "maximum": str(self.maximum)}
        if self.dual_minimum is not None:
            out["dual_minimum"] = str(self.dual_minimum)
        if assignments:
            out["min_assignment"] = self.min_assignment.to_dict()
            out["max_assignment"] = self.max_assignment.to_dict()
        if self.integer_set is not None:
            out["integer_set"] = list(self.integer_set)
        if self.formula is not None:
            out["formula"] = {"points": [[str(x) for x in e] for e in self.formula],
                              "text": format_formula(self.formula)}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def report(C: SensorConfiguration, n, *, dual: bool = True, integers: bool = False,
           formula: bool = False, force: bool = False, cap: int | None = DEFAULT_CAP) -> BoundsReport:
    n = _check_n(C, n)
    lo, m_lo = primal_min(C, n)
    hi, m_hi = primal_max_assignment(C, n)
    dual_value = None
    if dual:
        dual_value = dual_min(C, n, force=force)
        if dual_value != lo:
            raise AssertionError(f"duality gap: primal {lo}, dual {dual_value}")
    ints = tuple(sorted(integer_range(C, n, cap=cap))) if integers else None
    pts = tuple(min_formula(C, force=force)) if formula else None
    notes = []
    if ints is not None and ints and ints[0] != ceil(lo):
        notes.append("integer minimum exceeds the rounded-up rational minimum")
    return BoundsReport(lo, hi, m_lo, m_hi, dual_value, ints, pts, tuple(notes))
