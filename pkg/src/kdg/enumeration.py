"""Bounded exhaustive enumeration of admissible graphs up to isomorphism.

Generation walks vertex-data multisets first (non-decreasing (genus, self)
sequences), then fills the upper triangle of the intersection matrix column
by column.  Each completed column is pruned by the sign of the new leading
principal minor, so only negative definite prefixes are ever extended; a
pair multiplicity m is capped by m^2 < w_i * w_j for the same reason.
Isomorphism reduction is brute force: a candidate survives only when its
adjacency is lexicographically minimal among all permutations fixing the
vertex-data sequence.  That is exactly why max_vertices is capped at 8.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import isqrt
from typing import NamedTuple, Optional, Sequence

from .errors import PreconditionError
from .graph import WeightedDualGraph, build_graph, validate
from .invariants import (
    classify,
    cycle_degrees,
    fundamental_cycle,
    k_squared,
    numerical_index,
)
from .rational import rat_str

MAX_ENUM_VERTICES = 8

VertexDatum = tuple[int, int]


@dataclass(frozen=True)
class EnumBounds:
    max_vertices: int
    min_self: int = -6
    max_genus: int = 0
    max_edge_multiplicity: int = 1
    connected_only: bool = True

    def __post_init__(self) -> None:
        if not 1 <= self.max_vertices <= MAX_ENUM_VERTICES:
            raise PreconditionError(
                f"max_vertices must be in 1..{MAX_ENUM_VERTICES} (brute-force canonicalization)"
            )
        if self.min_self > -1:
            raise PreconditionError("min_self must be <= -1")
        if self.max_genus < 0:
            raise PreconditionError("max_genus must be >= 0")
        if self.max_edge_multiplicity < 1:
            raise PreconditionError("max_edge_multiplicity must be >= 1")


class SpectrumEntry(NamedTuple):
    encoding: str
    k_squared: Fraction
    classification: str
    z_squared: int
    numerical_index: int


def _data_stabilizer(data: Sequence[VertexDatum]) -> list[tuple[int, ...]]:
    """All permutations of positions preserving the (sorted) data sequence."""
    runs = []
    start = 0
    for i in range(1, len(data) + 1):
        if i == len(data) or data[i] != data[start]:
            runs.append(range(start, i))
            start = i
    perms = []
    for combo in product(*(permutations(run) for run in runs)):
        flat: list[int] = []
        for piece in combo:
            flat.extend(piece)
        perms.append(tuple(flat))
    return perms


def _positions(r: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, r) for i in range(j)]


def _leading_det(adj: list[list[int]], size: int) -> int:
    a = [adj[i][:size] for i in range(size)]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for t in range(k + 1, size):
                if a[t][k] != 0:
                    a[k], a[t] = a[t], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for t in range(k + 1, size):
            head = a[t][k]
            row_t = a[t]
            row_k = a[k]
            for u in range(k + 1, size):
                row_t[u] = (row_t[u] * pivot - head * row_k[u]) // prev
            row_t[k] = 0
        prev = pivot
    return sign * a[size - 1][size - 1]


def _connected(adj: list[list[int]], r: int) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for y in range(r):
            if y != x and adj[x][y] != 0 and y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == r


def _encode(data: Sequence[VertexDatum], pairs: Sequence[tuple[int, int, int]]) -> str:
    left = ";".join(f"{g},{w}" for g, w in data)
    right = ";".join(f"{i}-{j}:{m}" for i, j, m in pairs)
    return f"{left}|{right}"


def graph_from_encoding(encoding: str) -> WeightedDualGraph:
    left, _, right = encoding.partition("|")
    verts = []
    for idx, item in enumerate(left.split(";")):
        g, w = item.split(",")
        verts.append((f"v{idx}", int(g), int(w)))
    edges = []
    if right:
        for item in right.split(";"):
            pair, _, m = item.partition(":")
            i, _, j = pair.partition("-")
            edges.append((f"v{int(i)}", f"v{int(j)}", int(m)))
    return build_graph(verts, edges)


def canonical_encoding(g: WeightedDualGraph) -> str:
    """Encoding of the lexicographically minimal isomorphic labeling."""
    r = len(g)
    if r > MAX_ENUM_VERTICES:
        raise PreconditionError(f"canonical form is brute force; needs <= {MAX_ENUM_VERTICES} vertices")
    order = sorted(range(r), key=lambda i: (g.vertices[i].genus, g.vertices[i].self_int))
    data = tuple((g.vertices[i].genus, g.vertices[i].self_int) for i in order)
    adj = g.adjacency()
    positions = _positions(r)
    best: Optional[tuple[int, ...]] = None
    for perm in _data_stabilizer(data):
        full = tuple(order[p] for p in perm)
        key = tuple(adj[full[i]].get(full[j], 0) for i, j in positions)
        if best is None or key < best:
            best = key
    assert best is not None
    pairs = [(i, j, best[idx]) for idx, (i, j) in enumerate(positions) if best[idx] > 0]
    return _encode(data, pairs)


def _search_data(task: tuple[tuple[VertexDatum, ...], int, bool]) -> list[str]:
    """All canonical admissible adjacency fillings for one vertex-data multiset."""
    data, max_mult, connected_only = task
    r = len(data)
    weights = [w for _, w in data]
    adj = [[0] * r for _ in range(r)]
    for i in range(r):
        adj[i][i] = weights[i]
    if r == 1:
        return [_encode(data, [])] if weights[0] <= -2 or data[0][0] > 0 else []
    positions = _positions(r)
    stabilizer = _data_stabilizer(data)
    found: list[str] = []

    def is_canonical() -> bool:
        for perm in stabilizer:
            for i, j in positions:
                v = adj[perm[i]][perm[j]]
                b = adj[i][j]
                if v < b:
                    return False
                if v > b:
                    break
        return True

    def finalize() -> None:
        if connected_only and not _connected(adj, r):
            return
        if not is_canonical():
            return
        pairs = [(i, j, adj[i][j]) for i, j in positions if adj[i][j] > 0]
        found.append(_encode(data, pairs))

    def rec(pos: int) -> None:
        if pos == len(positions):
            finalize()
            return
        i, j = positions[pos]
        cap = min(max_mult, isqrt(weights[i] * weights[j] - 1))
        closes_column = i == j - 1
        for m in range(cap + 1):
            adj[i][j] = adj[j][i] = m
            if closes_column and (-1) ** (j + 1) * _leading_det(adj, j + 1) <= 0:
                continue
            rec(pos + 1)
        adj[i][j] = adj[j][i] = 0

    rec(0)
    return found


def _tasks(bounds: EnumBounds) -> list[tuple[tuple[VertexDatum, ...], int, bool]]:
    options = [
        (g, w)
        for g in range(bounds.max_genus + 1)
        for w in range(bounds.min_self, 0)
        if not (g == 0 and w == -1)  # a genus-0 (-1)-vertex is never minimal
    ]
    tasks = []
    for r in range(1, bounds.max_vertices + 1):
        for data in combinations_with_replacement(sorted(options), r):
            tasks.append((data, bounds.max_edge_multiplicity, bounds.connected_only))
    return tasks


def enumerate_encodings(bounds: EnumBounds, jobs: int = 1) -> list[str]:
    """Sorted canonical encodings of every admissible graph within bounds."""
    tasks = _tasks(bounds)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_search_data, tasks, chunksize=16))
    else:
        chunks = [_search_data(t) for t in tasks]
    merged = set()
    for chunk in chunks:
        merged.update(chunk)
    return sorted(merged)


def enumerate_admissible(bounds: EnumBounds, jobs: int = 1) -> list[SpectrumEntry]:
    """Spectrum entries for every isomorphism class within bounds."""
    if not bounds.connected_only:
        raise PreconditionError("spectrum entries need connected graphs")
    entries = []
    for encoding in enumerate_encodings(bounds, jobs=jobs):
        g = graph_from_encoding(encoding)
        z = fundamental_cycle(g)
        z2, _ = cycle_degrees(g, z.coefficients)
        entries.append(
            SpectrumEntry(
                encoding=encoding,
                k_squared=k_squared(g),
                classification=classify(g),
                z_squared=int(z2),
                numerical_index=numerical_index(g),
            )
        )
    return entries


@dataclass(frozen=True)
class SpectrumReport:
    lo: Fraction
    hi: Fraction
    values: tuple[Fraction, ...]
    gaps: tuple[Fraction, ...]
    class_counts: tuple[tuple[str, int], ...]
    min_nonzero: Optional[Fraction]

    def to_obj(self) -> dict:
        return {
            "interval": [rat_str(self.lo), rat_str(self.hi)],
            "values": [rat_str(v) for v in self.values],
            "gaps": [rat_str(v) for v in self.gaps],
            "class_counts": {name: count for name, count in self.class_counts},
            "min_nonzero": None if self.min_nonzero is None else rat_str(self.min_nonzero),
        }

    def to_text(self) -> str:
        lines = [f"spectrum in [{rat_str(self.lo)}, {rat_str(self.hi)}]:"]
        lines.append("  values: " + (", ".join(rat_str(v) for v in self.values) or "(none)"))
        lines.append("  gaps:   " + (", ".join(rat_str(v) for v in self.gaps) or "(none)"))
        for name, count in self.class_counts:
            lines.append(f"  {name}: {count}")
        if self.min_nonzero is not None:
            lines.append(f"  smallest nonzero value: {rat_str(self.min_nonzero)}")
        return "\n".join(lines)


def spectrum_report(entries: Sequence[SpectrumEntry], lo, hi) -> SpectrumReport:
    lo = Fraction(lo)
    hi = Fraction(hi)
    inside = [e for e in entries if lo <= e.k_squared <= hi]
    values = sorted({e.k_squared for e in inside})
    gaps = tuple(b - a for a, b in zip(values, values[1:]))
    counts: dict[str, int] = {}
    for e in inside:
        counts[e.classification] = counts.get(e.classification, 0) + 1
    nonzero = [v for v in values if v != 0]
    return SpectrumReport(
        lo=lo,
        hi=hi,
        values=tuple(values),
        gaps=gaps,
        class_counts=tuple(sorted(counts.items())),
        min_nonzero=min(nonzero) if nonzero else None,
    )


def random_admissible(rng: random.Random, bounds: EnumBounds, attempts: int = 2000) -> WeightedDualGraph:
    """Rejection-sample one admissible graph within the bounds.

    Candidates are random trees (connectivity for free) with occasional
    extra edges and random weights; non negative definite draws are thrown
    away.  Deterministic for a seeded rng.
    """
    for _ in range(attempts):
        r = rng.randint(1, bounds.max_vertices)
        verts = []
        for i in range(r):
            genus = rng.randint(0, bounds.max_genus) if rng.random() < 0.3 else 0
            lowest_allowed = -1 if genus > 0 else -2
            w = rng.randint(bounds.min_self, lowest_allowed)
            verts.append((f"v{i}", genus, w))
        edges = []
        for i in range(1, r):
            parent = rng.randrange(i)
            mult = rng.randint(1, bounds.max_edge_multiplicity) if rng.random() < 0.15 else 1
            edges.append((f"v{parent}", f"v{i}", mult))
        if r >= 3 and rng.random() < 0.1:
            i, j = sorted(rng.sample(range(r), 2))
            if all(not (e[0] == f"v{i}" and e[1] == f"v{j}") for e in edges):
                edges.append((f"v{i}", f"v{j}", 1))
        g = build_graph(verts, edges)
        if validate(g).admissible:
            return g
    raise PreconditionError("could not sample an admissible graph within the attempt budget")
