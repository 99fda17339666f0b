"""Named graph families with closed-form -K^2 oracles.

Each family is a parametrized dual-graph shape together with the exact
rational value of -K^2 as a function of the parameters, so the linear-algebra
pipeline and the formulas can be cross-asserted.  Conventions used by the
shapes below, writing x for a genus-0 (-3)-vertex and o for a genus-0
(-2)-vertex:

* A/D/E: the usual Dynkin configurations of o's; -K^2 = 0.
* I..IX: the nine star-like shapes around a single x whose resolutions have
  fundamental cycle of self-intersection -3.  Their values follow the
  pattern 1/(3 - sum of branch factors), each branch factor being a ratio
  of two Dynkin determinants.
* two_curve(k, m, n): a chain o^n with two genus-(k/2) curves of
  self-intersection -(2km+2) attached to its first vertex.
* tail(r, k, n): an o^n chain ending in a genus-((r-k+1)/2) vertex of
  self-intersection -(k+1); its adjunction degree is exactly r.
* two_tail(r, k, n, s): a genus-((r-k)/2) vertex of self-intersection
  -(k+2) carrying two o-arms; adjunction degree again r.
* double_three(n): x - o^n - x; simple_elliptic(w): one genus-1 vertex of
  self-intersection -w; non_lc_star: a (-5)-vertex with four (-3)-leaves.

`expected_limit` gives the exact limit of the closed form as chosen arm
parameters tend to infinity, and `stretch_descriptor` points at the maximal
string of a generated member that realizes that parameter, so the limit
machinery can be checked end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import PreconditionError
from .graph import WeightedDualGraph, build_graph
from .rational import UNBOUNDED
from .transforms import StringDescriptor, detect_strings

LimitValue = Union[Fraction, object]

_PARAMS = {
    "A": ("n",),
    "D": ("n",),
    "E6": (),
    "E7": (),
    "E8": (),
    "I": ("n", "s", "t"),
    "II": ("n", "s"),
    "III": ("n", "s"),
    "IV": ("n",),
    "V": ("n",),
    "VI": ("n",),
    "VII": (),
    "VIII": (),
    "IX": (),
    "two_curve": ("k", "m", "n"),
    "tail": ("r", "k", "n"),
    "two_tail": ("r", "k", "n", "s"),
    "double_three": ("n",),
    "simple_elliptic": ("w",),
    "non_lc_star": (),
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple[tuple[str, int], ...]

    def __getitem__(self, key: str) -> int:
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    def __str__(self) -> str:
        if not self.params:
            return self.name
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


def family_names() -> tuple[str, ...]:
    return tuple(_PARAMS)


def family_spec(name: str, **params: int) -> FamilySpec:
    """Validated family spec; raises PreconditionError off-domain."""
    if name not in _PARAMS:
        known = ", ".join(_PARAMS)
        raise PreconditionError(f"unknown family {name!r} (known: {known})")
    expected = _PARAMS[name]
    if set(params) != set(expected):
        want = ", ".join(expected) if expected else "none"
        raise PreconditionError(f"family {name} takes parameters: {want}")
    for key, value in params.items():
        if not isinstance(value, int) or isinstance(value, bool):
            raise PreconditionError(f"parameter {key} must be an integer")
    spec = FamilySpec(name, tuple((k, params[k]) for k in expected))
    _check_domain(spec)
    return spec


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def _check_domain(spec: FamilySpec) -> None:
    p = dict(spec.params)
    name = spec.name
    if name == "A":
        _require(p["n"] >= 1, "A needs n >= 1")
    elif name == "D":
        _require(p["n"] >= 4, "D needs n >= 4")
    elif name == "I":
        _require(min(p["n"], p["s"], p["t"]) >= 0, "I needs n, s, t >= 0")
    elif name == "II":
        _require(min(p["n"], p["s"]) >= 0, "II needs n, s >= 0")
    elif name == "III":
        _require(p["n"] >= 0, "III needs n >= 0")
        _require(p["s"] >= 2, "III needs s >= 2 (the chain is attached at its second vertex)")
    elif name in ("IV", "V"):
        _require(p["n"] >= 0, f"{name} needs n >= 0")
    elif name == "VI":
        _require(p["n"] >= 1, "VI needs n >= 1 (the chain needs a third vertex)")
    elif name == "two_curve":
        _require(p["k"] >= 2 and p["k"] % 2 == 0, "two_curve needs k even and >= 2")
        _require(p["m"] >= 1, "two_curve needs m >= 1")
        _require(p["n"] >= 1, "two_curve needs n >= 1")
    elif name == "tail":
        _require(p["k"] >= 1, "tail needs k >= 1")
        _require(p["n"] >= 0, "tail needs n >= 0")
        _require(p["r"] - p["k"] >= 1 and (p["r"] - p["k"]) % 2 == 1, "tail needs r - k odd and >= 1")
    elif name == "two_tail":
        _require(p["k"] >= 1, "two_tail needs k >= 1")
        _require(min(p["n"], p["s"]) >= 0, "two_tail needs n, s >= 0")
        _require(
            p["r"] - p["k"] >= 0 and (p["r"] - p["k"]) % 2 == 0,
            "two_tail needs r - k even and >= 0",
        )
    elif name == "double_three":
        _require(p["n"] >= 0, "double_three needs n >= 0")
    elif name == "simple_elliptic":
        _require(p["w"] >= 1, "simple_elliptic needs w >= 1")


def _chain_ids(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def _chain_edges(ids: Sequence[str]) -> list[tuple[str, str]]:
    return [(a, b) for a, b in zip(ids, ids[1:])]


def generate(spec: FamilySpec) -> WeightedDualGraph:
    """The dual graph of this family member."""
    _check_domain(spec)
    p = dict(spec.params)
    name = spec.name
    verts: list[tuple[str, int, int]] = []
    edges: list[tuple[str, str]] = []

    def arm(prefix: str, count: int, root: str) -> None:
        ids = _chain_ids(prefix, count)
        verts.extend((i, 0, -2) for i in ids)
        edges.extend(_chain_edges(ids))
        if ids:
            edges.append((root, ids[0]))

    if name == "A":
        ids = _chain_ids("c", p["n"])
        verts = [(i, 0, -2) for i in ids]
        edges = _chain_edges(ids)
    elif name == "D":
        ids = _chain_ids("c", p["n"] - 2)
        verts = [(i, 0, -2) for i in ids] + [("f1", 0, -2), ("f2", 0, -2)]
        edges = _chain_edges(ids) + [(ids[-1], "f1"), (ids[-1], "f2")]
    elif name in ("E6", "E7", "E8"):
        ids = _chain_ids("c", int(name[1]) - 1)
        verts = [(i, 0, -2) for i in ids] + [("b", 0, -2)]
        edges = _chain_edges(ids) + [("c3", "b")]
    elif name == "I":
        verts = [("x", 0, -3)]
        arm("n", p["n"], "x")
        arm("s", p["s"], "x")
        arm("t", p["t"], "x")
    elif name == "II":
        verts = [("x", 0, -3)]
        arm("n", p["n"], "x")
        sids = _chain_ids("s", p["s"])
        verts.extend((i, 0, -2) for i in sids)
        verts += [("b", 0, -2), ("f1", 0, -2), ("f2", 0, -2)]
        spine = ["x"] + sids + ["b"]
        edges.extend(_chain_edges(spine))
        edges += [("b", "f1"), ("b", "f2")]
    elif name == "III":
        verts = [("x", 0, -3)]
        arm("n", p["n"], "x")
        cids = _chain_ids("c", p["s"])
        verts.extend((i, 0, -2) for i in cids)
        edges.extend(_chain_edges(cids))
        edges.append(("x", "c2"))
    elif name in ("IV", "V"):
        verts = [("x", 0, -3)]
        arm("n", p["n"], "x")
        if name == "IV":
            cids = _chain_ids("c", 3)
            verts.extend((i, 0, -2) for i in cids)
            verts += [("f1", 0, -2), ("f2", 0, -2)]
            edges.extend(_chain_edges(cids))
            edges += [("c3", "f1"), ("c3", "f2"), ("x", "f1")]
        else:
            cids = _chain_ids("c", 5)
            verts.extend((i, 0, -2) for i in cids)
            verts.append(("b", 0, -2))
            edges.extend(_chain_edges(cids))
            edges += [("c3", "b"), ("x", "c1")]
    elif name == "VI":
        cids = _chain_ids("c", p["n"] + 2)
        verts = [("x", 0, -3)] + [(i, 0, -2) for i in cids]
        edges = _chain_edges(cids) + [("x", "c3")]
    elif name in ("VII", "VIII"):
        count = 4 if name == "VII" else 5
        cids = _chain_ids("c", count)
        verts = [("x", 0, -3)] + [(i, 0, -2) for i in cids]
        verts += [("f1", 0, -2), ("f2", 0, -2)]
        edges = _chain_edges(cids) + [(cids[-1], "f1"), (cids[-1], "f2"), ("x", "f1")]
    elif name == "IX":
        cids = _chain_ids("c", 6)
        verts = [("x", 0, -3)] + [(i, 0, -2) for i in cids] + [("b", 0, -2)]
        edges = _chain_edges(cids) + [("c3", "b"), ("x", "c6")]
    elif name == "two_curve":
        k, m, n = p["k"], p["m"], p["n"]
        fids = _chain_ids("f", n)
        verts = [("e1", k // 2, -(2 * k * m + 2)), ("e2", k // 2, -(2 * k * m + 2))]
        verts += [(i, 0, -2) for i in fids]
        edges = _chain_edges(fids) + [("e1", "f1"), ("e2", "f1")]
    elif name == "tail":
        r, k = p["r"], p["k"]
        verts = [("x", (r - k + 1) // 2, -(k + 1))]
        arm("n", p["n"], "x")
    elif name == "two_tail":
        r, k = p["r"], p["k"]
        verts = [("x", (r - k) // 2, -(k + 2))]
        arm("n", p["n"], "x")
        arm("s", p["s"], "x")
    elif name == "double_three":
        nids = _chain_ids("n", p["n"])
        verts = [("x1", 0, -3)] + [(i, 0, -2) for i in nids] + [("x2", 0, -3)]
        edges = _chain_edges(["x1"] + nids + ["x2"])
    elif name == "simple_elliptic":
        verts = [("e", 1, -p["w"])]
    elif name == "non_lc_star":
        verts = [("z", 0, -5)] + [(f"y{i}", 0, -3) for i in range(1, 5)]
        edges = [("z", f"y{i}") for i in range(1, 5)]
    else:  # pragma: no cover - family_spec already rejects unknown names
        raise PreconditionError(f"unknown family {name!r}")
    return build_graph(verts, edges)


def _arm(p: int) -> Fraction:
    return Fraction(p, p + 1)


def closed_form_k2(spec: FamilySpec) -> Fraction:
    """-K^2 of the family member, straight from the closed form."""
    _check_domain(spec)
    p = dict(spec.params)
    name = spec.name
    if name in ("A", "D", "E6", "E7", "E8"):
        return Fraction(0)
    if name == "I":
        return 1 / (3 - _arm(p["n"]) - _arm(p["s"]) - _arm(p["t"]))
    if name == "II":
        return Fraction(p["n"] + 1, p["n"] + 2)
    if name == "III":
        return 1 / (3 - _arm(p["n"]) - Fraction(2 * (p["s"] - 1), p["s"] + 1))
    if name == "IV":
        return Fraction(4 * p["n"] + 4, 3 * p["n"] + 7)
    if name == "V":
        return Fraction(3 * p["n"] + 3, 2 * p["n"] + 5)
    if name == "VI":
        return Fraction(p["n"] + 3, 9)
    if name in ("VII", "IX"):
        return Fraction(2, 3)
    if name == "VIII":
        return Fraction(4, 5)
    if name == "two_curve":
        k, m, n = p["k"], p["m"], p["n"]
        top = 2 * (1 + Fraction(1, n)) * k**2 * (2 * m + 1) ** 2
        bottom = (2 * k * m + 2) * (1 + Fraction(1, n)) - 2
        return top / bottom
    if name == "tail":
        return Fraction(p["r"]) ** 2 / (p["k"] + 1 - _arm(p["n"]))
    if name == "two_tail":
        return Fraction(p["r"]) ** 2 / (p["k"] + 2 - _arm(p["n"]) - _arm(p["s"]))
    if name == "double_three":
        return Fraction(1)
    if name == "simple_elliptic":
        return Fraction(p["w"])
    if name == "non_lc_star":
        return Fraction(71, 11)
    raise PreconditionError(f"unknown family {name!r}")  # pragma: no cover


def two_curve_coefficient(spec: FamilySpec) -> Fraction:
    """Canonical coefficient shared by the two genus curves of two_curve."""
    if spec.name != "two_curve":
        raise PreconditionError("only two_curve has this coefficient formula")
    _check_domain(spec)
    p = dict(spec.params)
    k, m, n = p["k"], p["m"], p["n"]
    top = (1 + Fraction(1, n)) * k * (2 * m + 1)
    bottom = (2 * k * m + 2) * (-1 - Fraction(1, n)) + 2
    return top / bottom


_STRETCHABLE = {
    "I": ("n", "s", "t"),
    "II": ("n", "s"),
    "III": ("n", "s"),
    "IV": ("n",),
    "V": ("n",),
    "VI": ("n",),
    "two_curve": ("n",),
    "tail": ("n",),
    "two_tail": ("n", "s"),
    "double_three": ("n",),
}


def stretchable_parameters(spec: FamilySpec) -> tuple[str, ...]:
    return _STRETCHABLE.get(spec.name, ())


def _check_stretched(spec: FamilySpec, stretched: Iterable[str]) -> set[str]:
    allowed = stretchable_parameters(spec)
    chosen = set(stretched)
    if not chosen:
        raise PreconditionError("no stretched parameters given")
    bad = chosen - set(allowed)
    if bad:
        raise PreconditionError(
            f"family {spec.name} cannot stretch {sorted(bad)}; stretchable: {list(allowed)}"
        )
    return chosen


def expected_limit(spec: FamilySpec, stretched: Iterable[str]) -> LimitValue:
    """Exact limit of closed_form_k2 as the chosen parameters go to infinity.

    Returns UNBOUNDED when the closed form diverges in that direction.
    """
    _check_domain(spec)
    chosen = _check_stretched(spec, stretched)
    p = dict(spec.params)

    def arm(key: str) -> Fraction:
        return Fraction(1) if key in chosen else _arm(p[key])

    name = spec.name
    if name == "I":
        d = 3 - arm("n") - arm("s") - arm("t")
        return UNBOUNDED if d == 0 else 1 / d
    if name == "II":
        return Fraction(1) if "n" in chosen else closed_form_k2(spec)
    if name == "III":
        d = 3 - arm("n") - (Fraction(2) if "s" in chosen else Fraction(2 * (p["s"] - 1), p["s"] + 1))
        return UNBOUNDED if d == 0 else 1 / d
    if name == "IV":
        return Fraction(4, 3)
    if name == "V":
        return Fraction(3, 2)
    if name == "VI":
        return UNBOUNDED
    if name == "two_curve":
        k, m = p["k"], p["m"]
        return Fraction(k**2 * (2 * m + 1) ** 2, k * m)
    if name == "tail":
        return Fraction(p["r"]) ** 2 / Fraction(p["k"])
    if name == "two_tail":
        return Fraction(p["r"]) ** 2 / (p["k"] + 2 - arm("n") - arm("s"))
    if name == "double_three":
        return Fraction(1)
    raise PreconditionError(f"family {name} has no stretch limits")  # pragma: no cover


def stretch_descriptor(spec: FamilySpec, g: WeightedDualGraph, param: str) -> StringDescriptor:
    """The maximal string of this member realizing the given arm parameter.

    The member must be large enough for the arm to contain at least one
    chain vertex (for III the attachment splits the chain, so the
    stretchable part starts at its third vertex).
    """
    _check_stretched(spec, [param])
    p = dict(spec.params)
    name = spec.name
    if name == "III" and param == "s":
        _require(p["s"] >= 3, "III s-stretch needs s >= 3 in the starting member")
        marker = "c3"
    elif name == "VI":
        _require(p["n"] >= 2, "VI stretch needs n >= 2 in the starting member")
        marker = "c4"
    elif name == "two_curve":
        # at n = 1 the only maximal string runs between the two genus
        # curves, which is a different direction entirely; the dangling
        # tail that realizes n only becomes a string from n = 2 on
        _require(p["n"] >= 2, "two_curve stretch needs n >= 2 in the starting member")
        marker = "f2"
    else:
        _require(p[param] >= 1, f"{name} {param}-stretch needs {param} >= 1 in the starting member")
        marker = f"{param}1"
    target = g.index_of(marker)
    for s in detect_strings(g):
        if target in s.chain:
            return s
    raise PreconditionError(
        f"vertex {marker!r} does not sit on a maximal string of this member"
    )  # pragma: no cover
