import math
from itertools import combinations

import pytest

import corpus
import settings
from coxring import irrelevant_components, irrelevant_ideal
from errors import ResourceCapExceeded
from groebner import (Ideal, bsaturated_prime_status, codim, contains, dimension, grade, ideal_product,
                      ideal_quotient, ideal_sum, intersect, is_b_saturated, radical_membership,
                      normal_form, saturate, saturate_by_irrelevant, saturate_by_variable)
from polynomial import mono_div, mono_lcm, parse_poly


def _s_pairs_reduce_to_zero(I: Ideal) -> bool:
    gb = I.basis()
    order = I.ring.grevlex
    ring = I.ring
    for g, h in combinations(gb.elements, 2):
        (mg, cg), (mh, ch) = g.leading(order), h.leading(order)
        lcm = mono_lcm(mg, mh)
        s = g.mul_term(mono_div(lcm, mg), pow(cg, -1, ring.p)) - h.mul_term(mono_div(lcm, mh), pow(ch, -1, ring.p))
        if gb.normal_form(s):
            return False
    return True


def test_small_basis(p1):
    I = corpus.ideal_of(p1, ["x0^2-x1^2", "x0*x1"])
    assert len(I.basis()) == 3
    assert I.contains_poly(corpus.ideal_of(p1, ["x1^3"]).generators[0])
    assert not I.contains_poly(p1.ring.var(1) ** 2)


@pytest.mark.parametrize("name", ["four_points", "three_points"])
def test_s_pair_certificates(name):
    I = getattr(corpus, name)()
    assert _s_pairs_reduce_to_zero(I)
    for g in I.generators:
        assert I.contains_poly(g)


def test_unit_and_zero(p1):
    assert Ideal.unit(p1.ring).is_unit()
    assert Ideal.zero(p1.ring).is_zero()
    assert corpus.ideal_of(p1, ["x0", "x0+1"]).is_unit()
    assert str(Ideal.zero(p1.ring)) == "<0>"


def test_sum_product_contains(p1p1):
    I = corpus.ideal_of(p1p1, ["x0"])
    J = corpus.ideal_of(p1p1, ["y0"])
    assert ideal_sum(I, J) == corpus.ideal_of(p1p1, ["x0", "y0"])
    assert ideal_product(I, J) == corpus.ideal_of(p1p1, ["x0*y0"])
    assert contains(I, ideal_product(I, J))
    assert not contains(ideal_product(I, J), I)


def test_intersect_and_quotient(p1p1):
    x0 = corpus.ideal_of(p1p1, ["x0"])
    x1 = corpus.ideal_of(p1p1, ["x1"])
    assert intersect(x0, x1) == corpus.ideal_of(p1p1, ["x0*x1"])
    assert ideal_quotient(corpus.ideal_of(p1p1, ["x0*x1"]), x0) == x1
    assert ideal_quotient(x0, Ideal.zero(p1p1.ring)).is_unit()
    meet = intersect(corpus.ideal_of(p1p1, ["x0", "y0"]), corpus.ideal_of(p1p1, ["x1", "y1"]))
    assert meet == corpus.ideal_of(p1p1, ["x0*x1", "x0*y1", "y0*x1", "y0*y1"])


def test_saturate_by_variable_matches_general_path(p1):
    I = corpus.ideal_of(p1, ["x0^2*x1", "x0*x1^2"])
    fast = saturate_by_variable(I, 1)
    assert fast == corpus.ideal_of(p1, ["x0"])
    assert fast == saturate(I, corpus.ideal_of(p1, ["x1"]))


def test_saturation_removes_irrelevant_component(p1p1, B_p1p1):
    I = corpus.ideal_of(p1p1, ["x0*y0", "x0*y1"])
    sat = saturate_by_irrelevant(I, B_p1p1)
    assert sat == corpus.ideal_of(p1p1, ["x0"])
    assert saturate_by_irrelevant(sat, B_p1p1) == sat
    assert ideal_quotient(sat, irrelevant_ideal(p1p1)) == sat
    assert is_b_saturated(sat, B_p1p1)
    assert not is_b_saturated(I, B_p1p1)


def test_three_points_is_saturated(p1p1, B_p1p1):
    I = corpus.three_points(p1p1)
    assert saturate_by_irrelevant(I, B_p1p1) == I


def test_saturation_agrees_with_general_colon(p1p1, B_p1p1):
    I = corpus.ideal_of(p1p1, ["x0^2*y1", "x0*x1*y1^2", "x1^3*y0"])
    assert saturate_by_irrelevant(I, B_p1p1) == saturate(I, irrelevant_ideal(p1p1))


def test_prime_status(p1p1, B_p1p1):
    assert bsaturated_prime_status(corpus.ideal_of(p1p1, ["x0", "x1"]), B_p1p1) == "irrelevant"
    assert bsaturated_prime_status(corpus.ideal_of(p1p1, ["x0", "y0", "y1"]), B_p1p1) == "irrelevant"
    assert bsaturated_prime_status(corpus.ideal_of(p1p1, ["x0", "y0"]), B_p1p1) == "saturated"
    # a relevant prime is B-saturated, an irrelevant one saturates to S
    assert is_b_saturated(corpus.ideal_of(p1p1, ["x0", "y0"]), B_p1p1)
    assert saturate_by_irrelevant(corpus.ideal_of(p1p1, ["x0", "x1"]), B_p1p1).is_unit()


def _codimension_fixtures():
    cases = []
    for name, size in (("p1", 2), ("p2", 3), ("p1p1", 3), ("p1p2", 4)):
        cox = corpus.ring(name)
        for subset in combinations(range(cox.nvars), size):
            for power in (1, 2, 3):
                gens = [cox.ring.var(i) ** power for i in subset]
                cases.append((cox, Ideal(cox.ring, gens)))
    return cases


def test_codimension_beyond_dim_saturates_to_unit():
    cases = _codimension_fixtures()
    assert len(cases) >= 30
    for cox, I in cases:
        assert codim(I) > cox.dimX
        assert saturate_by_irrelevant(I, irrelevant_components(cox)).is_unit()


def test_high_codimension_saturates_without_shortcut(p1p1):
    for subset in combinations(range(4), 3):
        for power in (1, 2):
            I = Ideal(p1p1.ring, [p1p1.ring.var(i) ** power for i in subset])
            assert saturate(I, irrelevant_ideal(p1p1)).is_unit()


def test_radical_membership(p1):
    I = corpus.ideal_of(p1, ["x0^3", "x1"])
    x0 = p1.ring.var(0)
    assert radical_membership(x0, I)
    assert not radical_membership(x0, corpus.ideal_of(p1, ["x1"]))
    assert not radical_membership(x0, Ideal.zero(p1.ring))
    assert radical_membership(x0, Ideal.unit(p1.ring))


def test_dimension_and_grade(p1, p1p2):
    assert dimension(corpus.ideal_of(p1, ["x0"])) == 1
    assert dimension(Ideal.unit(p1.ring)) == -1
    assert grade(Ideal.unit(p1.ring)) == math.inf
    assert grade(Ideal.zero(p1p2.ring)) == 0
    assert grade(corpus.ideal_of(p1p2, ["x0", "x1"])) == 2
    assert grade(corpus.four_points(p1p2)) == 3


def _supports(I: Ideal):
    out = []
    for g in I.generators:
        (mono,) = g.terms
        out.append({k for k, e in enumerate(mono) if e})
    return out


def _min_variable_cover(I: Ideal) -> int:
    """Smallest set of variables meeting every generator's support, by exhaustive search"""
    supports = _supports(I)
    for size in range(I.ring.nvars + 1):
        for subset in combinations(range(I.ring.nvars), size):
            if all(s & set(subset) for s in supports):
                return size


def _longest_coprime_run(I: Ideal) -> int:
    """Largest set of pairwise coprime generators; such monomials form a regular sequence"""
    supports = _supports(I)
    for size in range(len(supports), 0, -1):
        for subset in combinations(supports, size):
            if all(not (a & b) for a, b in combinations(subset, 2)):
                return size
    return 0


MIXED_MONOMIAL_IDEALS = [
    ("p1p2", ["x0*y0", "x1*y1"], 2),
    ("p1p2", ["x0^2*y1", "x1*y0*y2"], 2),
    ("p1p2", ["x0*y0", "x0*y1", "x0*y2"], 1),
    ("p1p2", ["x0", "x1", "y0*y1*y2"], 3),
    ("p1p2", ["x0*x1", "x0*y0", "x1*y0"], 2),
    ("p1p1", ["x0*y0", "x1*y1", "x0*x1", "y0*y1"], 2),
    ("p2", ["x0^2*x1", "x1^3*x2", "x0*x2^2"], 2),
]


def test_grade_matches_exhaustive_search_on_monomial_ideals():
    cases = _codimension_fixtures() + [
        (corpus.ring(name), corpus.ideal_of(corpus.ring(name), gens)) for name, gens, _ in MIXED_MONOMIAL_IDEALS]
    for cox, I in cases:
        g = grade(I)
        assert g == _min_variable_cover(I)
        assert g >= _longest_coprime_run(I)
    for cox, I in _codimension_fixtures():
        assert grade(I) == _longest_coprime_run(I) == len(I.generators)
    for name, gens, expected in MIXED_MONOMIAL_IDEALS:
        assert grade(corpus.ideal_of(corpus.ring(name), gens)) == expected


def test_normal_form_is_idempotent(p1p1):
    I = corpus.three_points(p1p1)
    G = I.basis()
    for s in ["x0^3*y1^2", "x0*y0+x1*y1", "x1^2*y0*y1-x0*x1*y1^2", "x0^2*y0^2"]:
        f = parse_poly(s, p1p1.ring)
        r = normal_form(f, G)
        assert normal_form(r, G) == r
        assert G.normal_form(r) == r
        assert I.contains_poly(f - r)


def test_saturation_by_general_ideals_is_idempotent(p1p1):
    I = corpus.ideal_of(p1p1, ["x0^2*y1", "x0*x1*y0*y1", "x1^3*y0", "x0*y1^2"])
    for gens in (["x0*y1"], ["x1", "y0"], ["x0+x1"], ["x0*y0-x1*y1"]):
        J = corpus.ideal_of(p1p1, gens)
        once = saturate(I, J)
        assert saturate(once, J) == once
        assert contains(once, I)


def test_pair_cap(monkeypatch, p1):
    monkeypatch.setattr(settings, "MAX_PAIRS", 0)
    with pytest.raises(ResourceCapExceeded):
        corpus.ideal_of(p1, ["x0^2-x1^2", "x0*x1"]).basis()


def test_wall_clock_budget(monkeypatch):
    monkeypatch.setattr(settings, "_deadline", 0.0)
    with pytest.raises(ResourceCapExceeded):
        settings.check_budget()
    settings.start_budget(0)
    settings.check_budget()
