"""Graph surgeries and the exact identities that control -K^2 under them.

Three related pieces live here:

* chain insertion: replacing a multiplicity-1 edge between two genus-0
  (-2)-vertices by a chain of n fresh (-2)-vertices, together with the
  exact bookkeeping (`verify_insertion`) showing how -K^2 grows;
* string contraction: eliminating such a chain from the linear system.
  The Schur complement of an n-chain block is explicit: the two endpoint
  "props" get diagonal -(n+2)/(n+1) and mutual entry 1/(n+1), everything
  else is untouched;
* limits: letting designated string lengths go to infinity.  The contracted
  block converges entrywise to diagonal -1, coupling 0; strings whose two
  prop coefficients already agree contribute a constant and are frozen at
  their current length instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

from .errors import (
    InternalCheckError,
    NotNegativeDefiniteError,
    PreconditionError,
    SingularLimitError,
)
from .graph import (
    Edge,
    VertexData,
    WeightedDualGraph,
    adjunction_degrees,
    build_graph,
    intersection_matrix,
    validate,
)
from .invariants import k_squared, numerical_index
from .rational import (
    RatMatrix,
    SingularMatrixError,
    UNBOUNDED,
    det,
    dot,
    is_negative_definite,
    nullspace,
    quadratic_form,
    rat_str,
    solve,
    vec,
)


@dataclass(frozen=True)
class InsertionSite:
    """A multiplicity-1 edge whose endpoints are both genus-0 (-2)-vertices."""

    a: int
    b: int


@dataclass(frozen=True)
class StringDescriptor:
    """A chain of genus-0 (-2)-vertices inside a graph.

    `chain` lists the vertex indices along the path; `left`/`right` are the
    indices of the vertices the two chain ends attach to, or None when a
    chain end touches nothing else.  detect_strings produces maximal such
    chains; contract_string accepts any insertion-shaped one.
    """

    chain: tuple[int, ...]
    left: Optional[int]
    right: Optional[int]

    def reversed(self) -> "StringDescriptor":
        return StringDescriptor(tuple(reversed(self.chain)), self.right, self.left)


class IdentityCheck(NamedTuple):
    name: str
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    holds: bool


@dataclass(frozen=True)
class InsertionIdentityReport:
    """Exact before/after data for one chain insertion."""

    n: int
    site: tuple[str, str]
    det_base: Fraction
    det_contracted: Fraction
    m_site: tuple[Fraction, Fraction]
    m_site_after: tuple[Fraction, Fraction]
    k2_before: Fraction
    k2_after: Fraction
    identities: tuple[IdentityCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(check.holds for check in self.identities)

    def to_obj(self) -> dict:
        def show(x):
            return None if x is None else rat_str(x)

        return {
            "n": self.n,
            "site": list(self.site),
            "det_base": rat_str(self.det_base),
            "det_contracted": rat_str(self.det_contracted),
            "m_site": [rat_str(x) for x in self.m_site],
            "m_site_after": [rat_str(x) for x in self.m_site_after],
            "k2_before": rat_str(self.k2_before),
            "k2_after": rat_str(self.k2_after),
            "identities": [
                {"name": c.name, "lhs": show(c.lhs), "rhs": show(c.rhs), "holds": c.holds}
                for c in self.identities
            ],
            "all_hold": self.all_hold,
        }


def _is_minus2(g: WeightedDualGraph, i: int) -> bool:
    v = g.vertices[i]
    return v.genus == 0 and v.self_int == -2


def find_sites(g: WeightedDualGraph) -> list[InsertionSite]:
    """All multiplicity-1 edges joining two genus-0 (-2)-vertices."""
    return [
        InsertionSite(e.a, e.b)
        for e in sorted(g.edges, key=lambda e: (e.a, e.b))
        if e.mult == 1 and _is_minus2(g, e.a) and _is_minus2(g, e.b)
    ]


def _check_site(g: WeightedDualGraph, site: InsertionSite) -> None:
    n = len(g)
    if not (0 <= site.a < n and 0 <= site.b < n) or site.a == site.b:
        raise PreconditionError(f"bad insertion site ({site.a}, {site.b})")
    if g.edge_mult(site.a, site.b) != 1:
        raise PreconditionError("insertion site must be an edge of multiplicity 1")
    if not (_is_minus2(g, site.a) and _is_minus2(g, site.b)):
        raise PreconditionError("insertion site endpoints must be genus-0 (-2)-vertices")


def _fresh_ids(g: WeightedDualGraph, count: int, stem: str = "w") -> list[str]:
    used = set(g.ids())
    out = []
    k = 1
    while len(out) < count:
        cand = f"{stem}{k}"
        if cand not in used:
            used.add(cand)
            out.append(cand)
        k += 1
    return out


def insert_minus2(g: WeightedDualGraph, site: InsertionSite, n: int) -> WeightedDualGraph:
    """Replace the site edge by a chain of n new genus-0 (-2)-vertices.

    The new vertices are appended after the existing ones, so indices of the
    original vertices are unchanged in the result.
    """
    if n < 1:
        raise PreconditionError(f"insertion length must be >= 1, got {n}")
    _check_site(g, site)
    a, b = min(site.a, site.b), max(site.a, site.b)
    new_ids = _fresh_ids(g, n)
    verts = g.vertices + tuple(VertexData(i, 0, -2) for i in new_ids)
    edges = [e for e in g.edges if (e.a, e.b) != (a, b)]
    base = len(g)
    chain = [a] + list(range(base, base + n)) + [b]
    for u, v in zip(chain, chain[1:]):
        edges.append(Edge(min(u, v), max(u, v), 1))
    return WeightedDualGraph(verts, tuple(sorted(edges, key=lambda e: (e.a, e.b))))


def _check_string_structure(g: WeightedDualGraph, s: StringDescriptor, allow_empty: bool) -> None:
    n = len(g)
    for label, idx in (("left", s.left), ("right", s.right)):
        if idx is not None and not (0 <= idx < n):
            raise PreconditionError(f"string {label} attachment out of range: {idx}")
    if len(set(s.chain)) != len(s.chain):
        raise PreconditionError("string chain repeats a vertex")
    if any(not (0 <= i < n) for i in s.chain):
        raise PreconditionError("string chain index out of range")
    adj = g.adjacency()
    if not s.chain:
        if not allow_empty:
            raise PreconditionError("string chain is empty")
        if s.left is None or s.right is None or s.left == s.right:
            raise PreconditionError("empty string needs two distinct attachments")
        if adj[s.left].get(s.right) != 1:
            raise PreconditionError("empty string attachments must share a multiplicity-1 edge")
        return
    chain_set = set(s.chain)
    if s.left in chain_set or s.right in chain_set:
        raise PreconditionError("string attachments must lie outside the chain")
    for i in s.chain:
        if not _is_minus2(g, i):
            raise PreconditionError(f"string vertex {g.vertices[i].id!r} is not a genus-0 (-2)-vertex")
        if any(m != 1 for m in adj[i].values()):
            raise PreconditionError("string vertices must meet everything with multiplicity 1")
    for u, v in zip(s.chain, s.chain[1:]):
        if adj[u].get(v) != 1:
            raise PreconditionError("string chain vertices must be consecutive neighbors")
    for pos in range(1, len(s.chain) - 1):
        if set(adj[s.chain[pos]]) != {s.chain[pos - 1], s.chain[pos + 1]}:
            raise PreconditionError("interior string vertex has an outside neighbor")
    first_outside = set(adj[s.chain[0]]) - chain_set
    last_outside = set(adj[s.chain[-1]]) - chain_set
    if len(s.chain) == 1:
        expected = {x for x in (s.left, s.right) if x is not None}
        if first_outside != expected or len(first_outside) > 2:
            raise PreconditionError("string attachments do not match the graph")
    else:
        if first_outside != ({s.left} if s.left is not None else set()):
            raise PreconditionError("left attachment does not match the graph")
        if last_outside != ({s.right} if s.right is not None else set()):
            raise PreconditionError("right attachment does not match the graph")


def contracted_indices(g: WeightedDualGraph, s: StringDescriptor) -> list[int]:
    """Vertex indices that survive contract_string, in original order."""
    chain_set = set(s.chain)
    return [i for i in range(len(g)) if i not in chain_set]


def contract_string(g: WeightedDualGraph, s: StringDescriptor) -> RatMatrix:
    """Eliminate the chain from the intersection matrix.

    The descriptor's left/right vertices act as the props and must be
    genus-0 (-2)-vertices; the chain plays the inserted-string role.  The
    returned matrix is indexed by `contracted_indices(g, s)` and satisfies
    -t(c) M^{-1} c = -K^2 of the full graph exactly (the chain carries no
    adjunction weight, so this is plain block elimination).
    """
    _check_string_structure(g, s, allow_empty=True)
    if s.left is None or s.right is None:
        raise PreconditionError("contraction needs prop vertices on both ends")
    if s.left == s.right:
        raise PreconditionError("contraction needs two distinct prop vertices")
    if not (_is_minus2(g, s.left) and _is_minus2(g, s.right)):
        raise PreconditionError("props must be (-2)-curves")
    if s.chain and g.edge_mult(s.left, s.right) != 0:
        raise PreconditionError("props of a non-empty string must not be adjacent")
    n = len(s.chain)
    kept = contracted_indices(g, s)
    local = {orig: k for k, orig in enumerate(kept)}
    full = intersection_matrix(g)
    rows = [[full[i][j] for j in kept] for i in kept]
    if n > 0:
        p, q = local[s.left], local[s.right]
        rows[p][p] = rows[q][q] = Fraction(-(n + 2), n + 1)
        rows[p][q] = rows[q][p] = Fraction(1, n + 1)
    return tuple(tuple(row) for row in rows)


def verify_insertion(g: WeightedDualGraph, site: InsertionSite, n: int) -> InsertionIdentityReport:
    """Insert a chain of n (-2)-vertices at the site and check every exact
    identity relating the old and new canonical data.

    All comparisons are exact rational equalities; the report lists each one
    with its two sides so a failure is auditable.
    """
    _check_site(g, site)
    if n < 1:
        raise PreconditionError(f"insertion length must be >= 1, got {n}")
    m0 = intersection_matrix(g)
    if not is_negative_definite(m0):
        raise NotNegativeDefiniteError("base graph must be negative definite")
    c = adjunction_degrees(g)
    m_before = solve(m0, c)
    k2_before = -dot(m_before, c)
    det_base = det(m0)

    stretched = insert_minus2(g, site, n)
    if not is_negative_definite(intersection_matrix(stretched)):
        # the notion is only defined between negative definite divisors;
        # long chains at a trivalent hub can leave that class
        raise NotNegativeDefiniteError(
            f"inserting {n} vertices at ({g.vertices[site.a].id}, "
            f"{g.vertices[site.b].id}) leaves the negative definite class"
        )
    c_after = adjunction_degrees(stretched)
    m_full = solve(intersection_matrix(stretched), c_after)
    k2_after = -dot(m_full, c_after)

    # contracted system: same index set as g, site block replaced
    a, b = site.a, site.b
    mn = [list(row) for row in m0]
    mn[a][a] = mn[b][b] = Fraction(-(n + 2), n + 1)
    mn[a][b] = mn[b][a] = Fraction(1, n + 1)
    mn = tuple(tuple(row) for row in mn)
    det_contracted = det(mn)
    m_after = solve(mn, c)
    k2_contracted = -dot(m_after, c)

    ratio = det_base / det_contracted
    step = Fraction(n, n + 1)
    diff_before = m_before[a] - m_before[b]
    diff_after = m_after[a] - m_after[b]

    checks = [
        IdentityCheck(
            "contraction_matches_direct",
            k2_contracted,
            k2_after,
            k2_contracted == k2_after,
        ),
        IdentityCheck(
            "old_coefficients_survive",
            None,
            None,
            tuple(m_full[: len(g)]) == m_after,
        ),
        IdentityCheck(
            "difference_identity",
            -quadratic_form(mn, m_after),
            -quadratic_form(m0, m_before) + step * diff_before * diff_after,
            -quadratic_form(mn, m_after)
            == -quadratic_form(m0, m_before) + step * diff_before * diff_after,
        ),
        IdentityCheck(
            "determinant_ratio",
            diff_after,
            ratio * diff_before,
            diff_after == ratio * diff_before,
        ),
        IdentityCheck(
            "k2_increment",
            k2_after,
            k2_before + step * ratio * diff_before**2,
            k2_after == k2_before + step * ratio * diff_before**2,
        ),
        IdentityCheck(
            "coefficient_signs",
            max(list(m_before) + list(m_full)),
            Fraction(0),
            max(list(m_before) + list(m_full)) <= 0,
        ),
        IdentityCheck("k2_monotone", k2_after, k2_before, k2_after >= k2_before),
        IdentityCheck(
            "result_admissible", None, None, validate(stretched).admissible
        ),
    ]
    if m_before[a] == m_before[b]:
        inserted = m_full[len(g) :]
        checks.append(IdentityCheck("k2_preserved", k2_after, k2_before, k2_after == k2_before))
        checks.append(
            IdentityCheck(
                "coefficient_multiset_preserved",
                None,
                None,
                sorted(m_full[: len(g)]) == sorted(m_before)
                and all(x == m_before[a] for x in inserted),
            )
        )
        idx_before = Fraction(numerical_index(g))
        idx_after = Fraction(numerical_index(stretched))
        checks.append(
            IdentityCheck("index_preserved", idx_before, idx_after, idx_before == idx_after)
        )
    return InsertionIdentityReport(
        n=n,
        site=(g.vertices[a].id, g.vertices[b].id),
        det_base=det_base,
        det_contracted=det_contracted,
        m_site=(m_before[a], m_before[b]),
        m_site_after=(m_after[a], m_after[b]),
        k2_before=k2_before,
        k2_after=k2_after,
        identities=tuple(checks),
    )


def detect_strings(g: WeightedDualGraph) -> list[StringDescriptor]:
    """Maximal chains of genus-0 (-2)-vertices.

    A vertex can sit on a chain when its total intersection degree is at
    most 2 and every incident edge has multiplicity 1; branch points are
    therefore never part of a chain.  Components that close into cycles are
    skipped (they are never negative definite).  Chains covering a whole
    connected component are reported with both attachments None.
    """
    adj = g.adjacency()

    def eligible(i: int) -> bool:
        return (
            _is_minus2(g, i)
            and sum(adj[i].values()) <= 2
            and all(m == 1 for m in adj[i].values())
        )

    eset = {i for i in range(len(g)) if eligible(i)}
    seen: set[int] = set()
    out = []
    for i in sorted(eset):
        if i in seen:
            continue
        comp = {i}
        frontier = [i]
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y in eset and y not in comp:
                    comp.add(y)
                    frontier.append(y)
        seen |= comp
        ends = [x for x in sorted(comp) if len([y for y in adj[x] if y in comp]) <= 1]
        if not ends:
            continue
        if len(comp) == 1:
            chain = [ends[0]]
            outs = sorted(y for y in adj[chain[0]] if y not in comp)
            left = outs[0] if outs else None
            right = outs[1] if len(outs) > 1 else None
        else:
            start = min(ends)
            chain = [start]
            prev = None
            cur = start
            while True:
                step = [y for y in adj[cur] if y in comp and y != prev]
                if not step:
                    break
                prev, cur = cur, step[0]
                chain.append(cur)
            first_out = sorted(y for y in adj[chain[0]] if y not in comp)
            last_out = sorted(y for y in adj[chain[-1]] if y not in comp)
            left = first_out[0] if first_out else None
            right = last_out[0] if last_out else None
        out.append(StringDescriptor(tuple(chain), left, right))
    out.sort(key=lambda s: min(s.chain))
    return out


def with_string_length(
    g: WeightedDualGraph, s: StringDescriptor, length: int
) -> tuple[WeightedDualGraph, Optional[StringDescriptor]]:
    """The family member with this string spliced to the given total length.

    Extending appends fresh (-2)-vertices (existing indices are preserved);
    shrinking removes chain vertices from the far end and, at length 0,
    joins the two attachments directly (bumping an existing edge).  Returns
    the new graph and the updated descriptor (None at length 0).
    """
    _check_string_structure(g, s, allow_empty=False)
    if length < 0:
        raise PreconditionError(f"string length must be >= 0, got {length}")
    k = len(s.chain)
    if length == k:
        return g, s
    ids = g.ids()
    chain_ids = [ids[i] for i in s.chain]
    left_id = ids[s.left] if s.left is not None else None
    right_id = ids[s.right] if s.right is not None else None
    pair_mult: dict[tuple[str, str], int] = {}
    for e in g.edges:
        key = tuple(sorted((ids[e.a], ids[e.b])))
        pair_mult[key] = e.mult

    def drop(u: str, v: str) -> None:
        pair_mult.pop(tuple(sorted((u, v))), None)

    def put(u: str, v: str, m: int = 1) -> None:
        key = tuple(sorted((u, v)))
        pair_mult[key] = pair_mult.get(key, 0) + m

    verts = list(g.vertices)
    if length > k:
        fresh = _fresh_ids(g, length - k)
        if right_id is not None:
            drop(chain_ids[-1], right_id)
        run = [chain_ids[-1]] + fresh
        for u, v in zip(run, run[1:]):
            put(u, v)
        if right_id is not None:
            put(fresh[-1], right_id)
        verts += [VertexData(i, 0, -2) for i in fresh]
        new_chain_ids = chain_ids + fresh
    else:
        removed = set(chain_ids[length:])
        verts = [v for v in verts if v.id not in removed]
        pair_mult = {
            key: m for key, m in pair_mult.items() if not (key[0] in removed or key[1] in removed)
        }
        if length == 0:
            if left_id is not None and left_id == right_id:
                # joining would turn the cycle into a self-intersecting curve
                raise PreconditionError(
                    "cannot shrink to length 0: both attachments are the same vertex"
                )
            if left_id is not None and right_id is not None:
                put(left_id, right_id)
        elif right_id is not None:
            put(chain_ids[length - 1], right_id)
        new_chain_ids = chain_ids[:length]
    built = build_graph(
        [(v.id, v.genus, v.self_int) for v in verts],
        [(u, v, m) for (u, v), m in sorted(pair_mult.items())],
    )
    if not new_chain_ids:
        return built, None
    descriptor = StringDescriptor(
        tuple(built.index_of(i) for i in new_chain_ids),
        built.index_of(left_id) if left_id is not None else None,
        built.index_of(right_id) if right_id is not None else None,
    )
    return built, descriptor


def _resolve_designated(
    g: WeightedDualGraph, strings: Sequence[StringDescriptor]
) -> list[StringDescriptor]:
    if not strings:
        raise PreconditionError("at least one designated string is required")
    detected = {frozenset(s.chain): s for s in detect_strings(g)}
    resolved = []
    for s in strings:
        match = detected.get(frozenset(s.chain))
        if match is None or (s != match and s != match.reversed()):
            raise PreconditionError("designated string is not a maximal string of this graph")
        resolved.append(match)
    if len({frozenset(s.chain) for s in resolved}) != len(resolved):
        raise PreconditionError("designated strings must be pairwise distinct")
    for s in resolved:
        if s.left is None and s.right is None:
            raise PreconditionError("a string covering a whole component cannot be stretched")
    return resolved


def limit_k_squared(g: WeightedDualGraph, strings: Sequence[StringDescriptor]) -> Fraction:
    """Limit of -K^2 as every designated string length goes to infinity.

    Strings are processed in designation order.  For each one the prop
    coefficients m_p, m_q of the current contracted system are compared:
    when they agree the value is constant in that direction and the string
    is frozen at its current length; otherwise its contracted block is
    replaced by the entrywise limit (diagonal -1, coupling 0).  A singular
    matrix anywhere is reported via SingularLimitError, never guessed at.
    """
    if not is_negative_definite(intersection_matrix(g)):
        raise PreconditionError("limit needs a negative definite graph")
    descs = _resolve_designated(g, strings)
    work = g
    descs = list(descs)
    for i in range(len(descs)):
        if len(descs[i].chain) < 2:
            # splice to length 2 first: the limit direction only depends on
            # the family, and in the frozen branch the value is constant, so
            # the reported number is unchanged either way
            work, grown = with_string_length(work, descs[i], 2)
            assert grown is not None
            descs[i] = grown
    interior: set[int] = set()
    for s in descs:
        interior |= set(s.chain[1:-1])
    kept = [i for i in range(len(work)) if i not in interior]
    local = {orig: k for k, orig in enumerate(kept)}
    full = intersection_matrix(work)
    degrees = adjunction_degrees(work)
    m = [[Fraction(full[i][j]) for j in kept] for i in kept]
    c = [degrees[i] for i in kept]
    blocks = []
    for s in descs:
        p, q = local[s.chain[0]], local[s.chain[-1]]
        nu = len(s.chain) - 2
        m[p][p] = m[q][q] = Fraction(-(nu + 2), nu + 1)
        m[p][q] = m[q][p] = Fraction(1, nu + 1)
        blocks.append((p, q))
    for p, q in blocks:
        try:
            coeffs = solve(m, c)
        except SingularMatrixError:
            raise SingularLimitError(
                "intermediate limit matrix is singular; no finite limit reported"
            ) from None
        if coeffs[p] == coeffs[q]:
            continue
        m[p][p] = m[q][q] = Fraction(-1)
        m[p][q] = m[q][p] = Fraction(0)
    try:
        coeffs = solve(m, c)
    except SingularMatrixError:
        raise SingularLimitError(
            "limit matrix is singular; the value diverges or needs analysis beyond this procedure"
        ) from None
    return -dot(coeffs, vec(c))


def mobius_limit_crosscheck(g: WeightedDualGraph, s: StringDescriptor) -> Union[Fraction, object]:
    """Independent check of a single-string limit.

    -K^2 along one stretched string is a degree-(1,1) rational function of
    the length L, so three exact samples pin it down.  Samples are taken at
    L in {0, 1, 2}; if a shrunken member fails negative definiteness the
    window shifts to the current length.  Returns the fitted limit a/c, or
    UNBOUNDED when the fit is linear (c = 0 with a != 0).
    """
    (desc,) = _resolve_designated(g, [s])
    lengths = [0, 1, 2]
    members = []
    for length in lengths:
        try:
            member, _ = with_string_length(g, desc, length)
            usable = is_negative_definite(intersection_matrix(member))
        except PreconditionError:
            usable = False
        if not usable:
            base = max(2, len(desc.chain))
            lengths = [base, base + 1, base + 2]
            members = [with_string_length(g, desc, x)[0] for x in lengths]
            break
        members.append(member)
    values = [k_squared(member) for member in members]
    if values[0] == values[1] == values[2]:
        return values[0]
    rows = [
        [Fraction(length), Fraction(1), -value * length, -value]
        for length, value in zip(lengths, values)
    ]
    kernel = nullspace(rows)
    if len(kernel) != 1:
        raise InternalCheckError("degenerate rational fit in limit cross-check")
    a, b, c, d = kernel[0]
    if c != 0:
        return a / c
    if a != 0:
        return UNBOUNDED
    raise InternalCheckError("rational fit collapsed to a constant unexpectedly")
