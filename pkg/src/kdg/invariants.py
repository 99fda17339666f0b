"""Numerical invariants of an admissible weighted dual graph.

The central object is the canonical cycle K = sum m_i A_i, the unique
rational solution of the adjunction equations

    M m = c,    c_i = 2 genus_i - 2 - self_int_i,

where M is the intersection matrix.  Its negative self-intersection
-K^2 = -t(m) M m = -sum m_i c_i is the invariant everything else here
revolves around.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .errors import InternalCheckError, InvalidGraphError, NotNegativeDefiniteError, PreconditionError
from .graph import (
    WeightedDualGraph,
    adjunction_degrees,
    intersection_matrix,
    is_connected,
    validate,
)
from .rational import (
    RatVector,
    dot,
    is_negative_definite,
    lcm_denominators,
    quadratic_form,
    rat_decimal,
    rat_str,
    solve,
    vec,
)

RATIONAL_DOUBLE = "rational-double"
RATIONAL_TRIPLE = "rational-triple"
RATIONAL_OTHER = "rational-other"
NON_RATIONAL = "non-rational-or-unknown"


@dataclass(frozen=True)
class Cycle:
    """A divisor supported on the exceptional curves: one rational
    coefficient per vertex, in vertex order."""

    coefficients: RatVector
    integral: bool

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "Cycle":
        c = vec(coeffs)
        return cls(c, all(x.denominator == 1 for x in c))

    def as_ints(self) -> tuple[int, ...]:
        if not self.integral:
            raise PreconditionError("cycle is not integral")
        return tuple(int(x) for x in self.coefficients)


class BoundCheck(NamedTuple):
    name: str
    lhs: Fraction
    rhs: Fraction
    holds: bool


@dataclass(frozen=True)
class InvariantReport:
    canonical: Cycle
    k_squared: Fraction
    fundamental: Cycle
    z_squared: int
    k_dot_z: int
    pa_z: int
    numerical_index: int
    classification: str
    bound_checks: tuple[BoundCheck, ...]


def _checked_matrix(g: WeightedDualGraph):
    m = intersection_matrix(g)
    if not is_negative_definite(m):
        raise NotNegativeDefiniteError("intersection matrix is not negative definite")
    return m


def canonical_cycle(g: WeightedDualGraph) -> Cycle:
    """Coefficients of the numerical canonical cycle (M m = c)."""
    m = _checked_matrix(g)
    return Cycle.from_coefficients(solve(m, adjunction_degrees(g)))


def k_squared(g: WeightedDualGraph) -> Fraction:
    """-K^2, computed two ways (-t(m) M m and -sum m_i c_i) and cross-checked."""
    m = _checked_matrix(g)
    c = adjunction_degrees(g)
    coeffs = solve(m, c)
    via_form = -quadratic_form(m, coeffs)
    via_degrees = -dot(coeffs, c)
    if via_form != via_degrees:
        raise InternalCheckError(
            f"-K^2 mismatch: quadratic form {via_form} vs adjunction sum {via_degrees}"
        )
    return via_form


def fundamental_cycle(g: WeightedDualGraph) -> Cycle:
    """Smallest positive integral cycle Z with Z.A_i <= 0 for every vertex.

    Computed by the standard sequence: start with all coefficients 1 and
    repeatedly add the lowest-index vertex whose product is still positive.
    """
    if not is_connected(g):
        raise InvalidGraphError("fundamental cycle needs a connected graph")
    _checked_matrix(g)
    n = len(g)
    adj = g.adjacency()
    weights = [v.self_int for v in g.vertices]
    z = [1] * n
    # products[i] = Z . A_i, maintained incrementally
    products = [
        weights[i] + sum(mult for mult in adj[i].values()) for i in range(n)
    ]
    guard = 0
    while True:
        i = next((k for k in range(n) if products[k] > 0), None)
        if i is None:
            break
        z[i] += 1
        products[i] += weights[i]
        for j, mult in adj[i].items():
            products[j] += mult
        guard += 1
        if guard > 100_000:
            raise InternalCheckError("fundamental cycle iteration did not terminate")
    return Cycle.from_coefficients(z)


def cycle_degrees(g: WeightedDualGraph, d: Union[Cycle, Sequence]) -> tuple[Fraction, Fraction]:
    """(D^2, K.D) for an integral cycle D; K.D = sum d_i c_i."""
    coeffs = d.coefficients if isinstance(d, Cycle) else vec(d)
    m = intersection_matrix(g)
    return quadratic_form(m, coeffs), dot(coeffs, adjunction_degrees(g))


def cycle_pa(g: WeightedDualGraph, d: Union[Cycle, Sequence]) -> int:
    """Arithmetic genus p_a(D) = 1 + (D^2 + K.D)/2 of an integral cycle."""
    coeffs = d.coefficients if isinstance(d, Cycle) else vec(d)
    if any(x.denominator != 1 for x in coeffs):
        raise PreconditionError("p_a is defined for integral cycles only")
    d_sq, k_dot = cycle_degrees(g, coeffs)
    twice = d_sq + k_dot
    if twice.denominator != 1 or int(twice) % 2 != 0:
        raise InternalCheckError(f"D^2 + K.D = {twice} is not an even integer")
    return 1 + int(twice) // 2


def pa_max_bounded(g: WeightedDualGraph, bound: int = 3) -> int:
    """Max of p_a over all integral cycles 0 < D <= bound * Z (componentwise).

    A certified lower bound for the maximal arithmetic genus of the
    singularity; `bound` controls the search box.
    """
    if bound < 1:
        raise PreconditionError(f"bound must be >= 1, got {bound}")
    z = fundamental_cycle(g).as_ints()
    n = len(g)
    m_rows = [[int(x) for x in row] for row in intersection_matrix(g)]
    c = [int(x) for x in adjunction_degrees(g)]
    best = None
    for d in itertools.product(*(range(0, bound * zi + 1) for zi in z)):
        if not any(d):
            continue
        d_sq = 0
        k_dot = 0
        for i in range(n):
            di = d[i]
            if di == 0:
                continue
            row = m_rows[i]
            d_sq += di * sum(row[j] * d[j] for j in range(n) if d[j])
            k_dot += di * c[i]
        pa = 1 + (d_sq + k_dot) // 2
        if best is None or pa > best:
            best = pa
    assert best is not None
    return best


def numerical_index(g: WeightedDualGraph) -> int:
    """Least positive integer r such that r*K has integer coefficients."""
    return lcm_denominators(canonical_cycle(g).coefficients)


def classify(g: WeightedDualGraph) -> str:
    """Coarse singularity class read off the invariants.

    rational-double          -K^2 = 0 (equivalently all genus-0 (-2)-curves)
    rational-triple          p_a(Z) = 0 and -Z^2 = 3
    rational-other           p_a(Z) = 0 otherwise
    non-rational-or-unknown  p_a(Z) > 0
    """
    k2 = k_squared(g)
    if k2 == 0:
        if not all(v.genus == 0 and v.self_int == -2 for v in g.vertices):
            raise InternalCheckError("-K^2 = 0 on a graph with a non-(-2) vertex")
        return RATIONAL_DOUBLE
    z = fundamental_cycle(g)
    pa = cycle_pa(g, z)
    if pa == 0:
        z_sq, _ = cycle_degrees(g, z)
        return RATIONAL_TRIPLE if z_sq == -3 else RATIONAL_OTHER
    return NON_RATIONAL


def bound_checks(g: WeightedDualGraph, pa_bound: int = 3) -> tuple[BoundCheck, ...]:
    """Inequalities every admissible graph must satisfy, instantiated with
    exact values so failures are auditable.

    component_sum        -K^2 >= sum c_i^2 / (-self_int_i)
    nonzero_minimum      -K^2 >= 1/3 whenever it is nonzero
    multiplicity         -K^2 >= mult - 4 (rational case, mult = -Z^2)
    embedding_dimension  -K^2 >= embdim - 5 (rational case, embdim = -Z^2 + 1)
    arithmetic_genus     -K^2 >= 4 * pa_max_bounded - 3
    """
    k2 = k_squared(g)
    checks = []
    csum = sum(
        (Fraction((2 * v.genus - 2 - v.self_int) ** 2, -v.self_int) for v in g.vertices),
        Fraction(0),
    )
    checks.append(BoundCheck("component_sum", k2, csum, k2 >= csum))
    if k2 != 0:
        checks.append(BoundCheck("nonzero_minimum", k2, Fraction(1, 3), k2 >= Fraction(1, 3)))
    z = fundamental_cycle(g)
    pa = cycle_pa(g, z)
    if pa == 0:
        z_sq, _ = cycle_degrees(g, z)
        mult = -z_sq
        checks.append(BoundCheck("multiplicity", k2, mult - 4, k2 >= mult - 4))
        embdim = mult + 1
        checks.append(BoundCheck("embedding_dimension", k2, embdim - 5, k2 >= embdim - 5))
    pa_best = pa_max_bounded(g, pa_bound)
    rhs = Fraction(4 * pa_best - 3)
    checks.append(BoundCheck("arithmetic_genus", k2, rhs, k2 >= rhs))
    return tuple(checks)


def invariant_report(g: WeightedDualGraph, pa_bound: int = 3) -> InvariantReport:
    """All invariants of a connected admissible graph in one shot."""
    report = validate(g)
    if not report.negative_definite:
        raise NotNegativeDefiniteError("; ".join(report.messages) or "not negative definite")
    if not (report.connected and report.minimal):
        raise InvalidGraphError("; ".join(report.messages))
    canonical = canonical_cycle(g)
    k2 = k_squared(g)
    z = fundamental_cycle(g)
    z_sq, k_dot_z = cycle_degrees(g, z)
    return InvariantReport(
        canonical=canonical,
        k_squared=k2,
        fundamental=z,
        z_squared=int(z_sq),
        k_dot_z=int(k_dot_z),
        pa_z=cycle_pa(g, z),
        numerical_index=numerical_index(g),
        classification=classify(g),
        bound_checks=bound_checks(g, pa_bound),
    )


def report_to_obj(report: InvariantReport, g: WeightedDualGraph) -> dict:
    """JSON form: rationals as "p/q" strings, cycles keyed by vertex id."""
    ids = g.ids()

    def cycle_obj(cycle: Cycle) -> dict:
        return {
            "coefficients": {i: rat_str(x) for i, x in zip(ids, cycle.coefficients)},
            "integral": cycle.integral,
        }

    return {
        "canonical": cycle_obj(report.canonical),
        "k_squared": rat_str(report.k_squared),
        "fundamental": cycle_obj(report.fundamental),
        "z_squared": report.z_squared,
        "k_dot_z": report.k_dot_z,
        "pa_z": report.pa_z,
        "numerical_index": report.numerical_index,
        "classification": report.classification,
        "bound_checks": [
            {"name": b.name, "lhs": rat_str(b.lhs), "rhs": rat_str(b.rhs), "holds": b.holds}
            for b in report.bound_checks
        ],
    }


def report_to_text(report: InvariantReport, g: WeightedDualGraph) -> str:
    ids = g.ids()
    lines = [
        f"vertices: {len(g)}  edges: {len(g.edges)}",
        f"-K^2: {rat_str(report.k_squared)} ({rat_decimal(report.k_squared)})",
        "canonical cycle: "
        + "  ".join(f"{i}={rat_str(x)}" for i, x in zip(ids, report.canonical.coefficients)),
        "fundamental cycle: "
        + "  ".join(f"{i}={rat_str(x)}" for i, x in zip(ids, report.fundamental.coefficients)),
        f"Z^2: {report.z_squared}  K.Z: {report.k_dot_z}  p_a(Z): {report.pa_z}",
        f"numerical index: {report.numerical_index}",
        f"classification: {report.classification}",
        "bounds:",
    ]
    for b in report.bound_checks:
        verdict = "ok" if b.holds else "VIOLATED"
        lines.append(f"  {b.name}: {rat_str(b.lhs)} >= {rat_str(b.rhs)}  [{verdict}]")
    return "\n".join(lines) + "\n"
