import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdg.enumeration import EnumBounds, random_admissible
from kdg.errors import (
    InvalidGraphError,
    NotNegativeDefiniteError,
    PreconditionError,
)
from kdg.families import family_spec, generate
from kdg.graph import adjunction_degrees, build_graph, intersection_matrix
from kdg.invariants import (
    NON_RATIONAL,
    RATIONAL_DOUBLE,
    RATIONAL_OTHER,
    RATIONAL_TRIPLE,
    bound_checks,
    canonical_cycle,
    classify,
    cycle_degrees,
    cycle_pa,
    fundamental_cycle,
    invariant_report,
    k_squared,
    numerical_index,
    pa_max_bounded,
    report_to_obj,
    report_to_text,
)
from kdg.rational import dot

from .oracles import ADE_BOX_BOUND, box_min_anti_nef

import random


def x31():
    return build_graph([("e", 0, -3)], [])


def test_single_minus3_vertex():
    g = x31()
    m = canonical_cycle(g)
    assert m.coefficients == (Fraction(-1, 3),)
    assert not m.integral
    assert k_squared(g) == Fraction(1, 3)
    assert numerical_index(g) == 3
    assert classify(g) == RATIONAL_TRIPLE
    assert fundamental_cycle(g).as_ints() == (1,)
    assert pa_max_bounded(g) == 0


def test_minus3_minus2_chain():
    g = build_graph([("a", 0, -3), ("b", 0, -2)], [("a", "b", 1)])
    assert canonical_cycle(g).coefficients == (Fraction(-2, 5), Fraction(-1, 5))
    assert k_squared(g) == Fraction(2, 5)
    assert numerical_index(g) == 5
    assert classify(g) == RATIONAL_TRIPLE
    z2, kz = cycle_degrees(g, fundamental_cycle(g))
    assert (z2, kz) == (-3, 1)


def test_canonical_cycle_solves_adjunction():
    g = generate(family_spec("II", n=2, s=1))
    m = canonical_cycle(g).coefficients
    mat = intersection_matrix(g)
    c = adjunction_degrees(g)
    for i in range(len(g)):
        assert dot(mat[i], m) == c[i]


def test_ade_vanishing():
    for spec in [family_spec("A", n=5), family_spec("D", n=6), family_spec("E7")]:
        g = generate(spec)
        assert k_squared(g) == 0
        cyc = canonical_cycle(g)
        assert cyc.integral and set(cyc.as_ints()) == {0}
        assert classify(g) == RATIONAL_DOUBLE
        assert numerical_index(g) == 1


def test_fundamental_cycle_frozen_values():
    d4 = generate(family_spec("D", n=4))
    assert d4.ids() == ("c1", "c2", "f1", "f2")
    assert fundamental_cycle(d4).as_ints() == (1, 2, 1, 1)
    e8 = generate(family_spec("E8"))
    # the classical highest-root coefficients, center c3 carrying 6
    assert fundamental_cycle(e8).as_ints() == (2, 4, 6, 5, 4, 3, 2, 3)
    an = generate(family_spec("A", n=7))
    assert fundamental_cycle(an).as_ints() == (1,) * 7


def test_fundamental_cycle_matches_box_oracle():
    cases = [
        (family_spec("A", n=3), ADE_BOX_BOUND["A"]),
        (family_spec("D", n=5), ADE_BOX_BOUND["D"]),
        (family_spec("E6"), ADE_BOX_BOUND["E6"]),
    ]
    for spec, bound in cases:
        g = generate(spec)
        z = fundamental_cycle(g).as_ints()
        assert z == box_min_anti_nef(g, [bound] * len(g))


def test_non_lc_star_values():
    g = generate(family_spec("non_lc_star"))
    r = invariant_report(g)
    assert r.k_squared == Fraction(71, 11)
    assert r.canonical.coefficients == (
        Fraction(-13, 11),
        Fraction(-8, 11),
        Fraction(-8, 11),
        Fraction(-8, 11),
        Fraction(-8, 11),
    )
    assert r.numerical_index == 11
    assert r.z_squared == -9 and r.pa_z == 0
    assert r.classification == RATIONAL_OTHER


def test_simple_elliptic_values():
    g = generate(family_spec("simple_elliptic", w=3))
    r = invariant_report(g)
    assert r.k_squared == 3
    assert r.canonical.integral and r.canonical.as_ints() == (-1,)
    assert r.numerical_index == 1
    assert r.pa_z == 1
    assert r.classification == NON_RATIONAL
    assert pa_max_bounded(g) == 1


def test_cycle_pa_requires_integral():
    g = x31()
    with pytest.raises(PreconditionError):
        cycle_pa(g, [Fraction(1, 2)])
    assert cycle_pa(g, [1]) == 0
    assert cycle_pa(g, [2]) == -4


@given(st.integers(min_value=0, max_value=10**6), st.data())
@settings(max_examples=60)
def test_cycle_pa_is_integer_on_integral_cycles(seed, data):
    rng = random.Random(seed)
    g = random_admissible(rng, EnumBounds(6, min_self=-6, max_genus=2, max_edge_multiplicity=2))
    d = data.draw(st.lists(st.integers(min_value=-3, max_value=3), min_size=len(g), max_size=len(g)))
    assert isinstance(cycle_pa(g, d), int)


def test_pa_max_bound_validated():
    with pytest.raises(PreconditionError):
        pa_max_bounded(x31(), bound=0)


def test_classify_other():
    g = build_graph([("a", 0, -3), ("b", 0, -3)], [("a", "b", 1)])
    # -Z^2 = 4 rules out double and triple
    assert classify(g) == RATIONAL_OTHER


def test_numerical_index_times_k_is_integral():
    for spec in [family_spec("I", n=2, s=3, t=4), family_spec("V", n=2)]:
        g = generate(spec)
        r = numerical_index(g)
        coeffs = canonical_cycle(g).coefficients
        assert all((r * x).denominator == 1 for x in coeffs)
        assert r >= 1
        if r > 1:
            assert any(((r // p) * x).denominator > 1 for x in coeffs for p in
                       {p for p in range(2, r + 1) if r % p == 0})


def test_bound_check_names_and_holds():
    g = x31()
    checks = bound_checks(g)
    names = [c.name for c in checks]
    assert names == [
        "component_sum",
        "nonzero_minimum",
        "multiplicity",
        "embedding_dimension",
        "arithmetic_genus",
    ]
    assert all(c.holds for c in checks)
    by_name = {c.name: c for c in checks}
    # the single (-3)-vertex attains the global nonzero minimum exactly
    assert by_name["nonzero_minimum"].lhs == by_name["nonzero_minimum"].rhs == Fraction(1, 3)
    assert by_name["component_sum"].rhs == Fraction(1, 3)


def test_report_errors():
    disconnected = build_graph([("a", 0, -2), ("b", 0, -2)], [])
    with pytest.raises(InvalidGraphError):
        invariant_report(disconnected)
    blown_up = build_graph([("a", 0, -1)], [])
    with pytest.raises(InvalidGraphError, match="minimal"):
        invariant_report(blown_up)
    indefinite = build_graph([("a", 0, -2), ("b", 0, -2)], [("a", "b", 2)])
    with pytest.raises(NotNegativeDefiniteError):
        invariant_report(indefinite)
    with pytest.raises(NotNegativeDefiniteError):
        k_squared(indefinite)


def test_report_serialization():
    g = build_graph([("a", 0, -3), ("b", 0, -2)], [("a", "b", 1)])
    r = invariant_report(g)
    obj = report_to_obj(r, g)
    assert set(obj) == {
        "canonical",
        "k_squared",
        "fundamental",
        "z_squared",
        "k_dot_z",
        "pa_z",
        "numerical_index",
        "classification",
        "bound_checks",
    }
    assert obj["k_squared"] == "2/5"
    assert obj["canonical"]["coefficients"] == {"a": "-2/5", "b": "-1/5"}
    assert obj["canonical"]["integral"] is False
    assert obj["fundamental"]["coefficients"] == {"a": "1", "b": "1"}
    json.dumps(obj)  # must be plain JSON data
    text = report_to_text(r, g)
    assert "-K^2" in text and "2/5" in text
    assert "rational-triple" in text
