import json
import math

import numpy as np
import pytest

from hermvar.bounds import cone_counts
from hermvar.errors import BudgetExceeded
from hermvar.field import make_field
from hermvar.search import (
    build_geometry,
    dual_line_catalog,
    exhaustive_triples,
    gaussian_binomial,
    histogram_csv,
    incidence_double_count,
    pairwise_section_scan,
    pencil_triples_scan,
    random_cubic_sample,
    report_json,
)


def test_gaussian_binomial():
    assert gaussian_binomial(5, 2, 4) == 5797  # planes of P^4 over F_4
    assert gaussian_binomial(6, 2, 4) == 93093
    assert gaussian_binomial(2, 1, 4) == 5


def test_dual_line_catalog_small():
    ctx = make_field(2)
    cat = dual_line_catalog(2, ctx)
    # pencils of P^2 = points of P^2: 21, each with q^2+1 = 5 members
    assert cat.shape == (21, 5)
    flat = cat.ravel()
    # every hyperplane appears in exactly 5 pencils: 21*5 incidences over 21
    counts = np.bincount(flat, minlength=21)
    assert (counts == 5).all()
    for row in cat:
        assert len(set(int(x) for x in row)) == 5


def test_build_geometry_totals():
    geo = build_geometry(4, 2)
    assert geo.N == 341
    assert int(geo.u.sum()) == 165
    assert int(geo.tangent.sum()) == 165
    assert len(geo.planes) == 5797
    # section counts live in the three admissible shapes
    assert set(int(c) for c in geo.plane_count) == {9, 13, 5}


def test_exhaustive_triples_n4_q2():
    rep = exhaustive_triples(4, 2, verify_samples=300, seed=3)
    assert rep.total_triples == math.comb(341, 3) == 6_550_610
    assert sum(rep.histogram.values()) == rep.total_triples
    assert rep.global_max == max(rep.histogram)
    # empirical truth at q=2, re-verified by enumeration inside the run:
    # the maximum 3-hyperplane union meets the variety in 111 points,
    # below the q>=7 formula maximum 117
    assert rep.global_max == 111
    assert rep.max_formula_value == 117
    assert rep.reaches_formula_max is False
    assert rep.argmax_total == rep.histogram[rep.global_max] == 14080
    assert rep.samples_verified == 300
    assert set(rep.argmax_structure) == {"U1|non_tangent,non_tangent,non_tangent"}
    assert len(rep.argmax_arrangements) <= 1000
    first = rep.argmax_arrangements[0]
    assert first["count"] == 111 and len(first["covectors"]) == 3


def test_exhaustive_triples_budget():
    with pytest.raises(BudgetExceeded):
        exhaustive_triples(4, 3)  # C(7381,3) ~ 6.7e10 triples


def test_pencil_scan_4_3_extremal_structure():
    rep = pencil_triples_scan(4, 3)
    assert rep.pencils == gaussian_binomial(5, 2, 9)  # dual lines of P^4 over F_9
    assert rep.best_count == 784 == rep.max_formula_value
    assert rep.best_is_formula_max
    # the best pencil triples occur only over non-degenerate sections,
    # which carry exactly q+1 = 4 tangent members (so 6 non-tangent)
    assert set(rep.best_structures) == {"U|tangent_members=4"}
    profiles = rep.tangent_members_by_section
    assert set(profiles) == {
        "U|tangent_members=4",
        "Pi0U|tangent_members=1",
        "Pi1U|tangent_members=10",
    }


def test_pencil_scan_4_2_reported_only():
    rep = pencil_triples_scan(4, 2)
    assert rep.best_count == 109  # below the formula value 117: q=2 regime
    assert not rep.best_is_formula_max
    assert rep.tangent_members_by_section["U|tangent_members=3"] > 0


@pytest.mark.parametrize("n,q", [(4, 2)])
def test_pairwise_exclusions(n, q):
    geo, tangent_members = pairwise_section_scan(n, q)
    u_count, cone0, cone1 = cone_counts(n, q)
    members_total = geo.planes.shape[1]
    for count, t in zip(geo.plane_count, tangent_members):
        count, t = int(count), int(t)
        assert count in (u_count, cone0, cone1)
        if count == cone1:
            # pairs with a non-tangent member can never cut this shape
            assert members_total - t <= 1
        if count == cone0:
            # tangent-tangent pairs can never cut this shape
            assert t <= 1


def test_incidence_double_count_values():
    rep = incidence_double_count(3, 2)
    assert rep.point_tangent_count == 13 and rep.tangent_count_uniform
    assert rep.variety_points == 45
    rep = incidence_double_count(4, 2)
    assert rep.point_tangent_count == 37 and rep.tangent_count_uniform
    assert rep.tangent_hyperplanes == 165
    assert rep.non_tangent_hyperplanes == 341 - 165 == 176
    assert rep.hyperplanes_through_point == 85
    assert rep.incidence_left == rep.incidence_right
    with pytest.raises(BudgetExceeded):
        incidence_double_count(4, 7)


def test_random_cubic_sample_deterministic():
    a = random_cubic_sample(4, 2, trials=30, seed=7)
    b = random_cubic_sample(4, 2, trials=30, seed=7)
    assert a.to_json_dict() == b.to_json_dict()
    c = random_cubic_sample(4, 2, trials=30, seed=7, workers=2)
    assert a.to_json_dict() == c.to_json_dict()
    d = random_cubic_sample(4, 2, trials=30, seed=8)
    assert a.histogram != d.histogram  # seed matters
    assert a.retained + len(a.discarded_divisible) == 30
    assert a.threshold == 99
    assert not a.threshold_asserted  # q = 2 is outside the proved range


def test_random_cubic_counts_match_direct_enum():
    # the fast monomial-table path must equal the generic enumeration path
    from hermvar.cubics import intersect_count_enum, make_hypersurface, monomial_exponents
    from hermvar.hermitian import standard_form

    ctx = make_field(2)
    f = standard_form(4, ctx)
    rep = random_cubic_sample(4, 2, trials=10, seed=11)
    exps = monomial_exponents(4, 3)
    rng_counts = []
    for t in range(10):
        rng = np.random.default_rng(np.random.SeedSequence((11, t)))
        while True:
            cs = rng.integers(0, ctx.order, size=len(exps))
            if cs.any():
                break
        C = make_hypersurface({e: int(c) for e, c in zip(exps, cs)}, 4, 3, ctx)
        rng_counts.append(intersect_count_enum(C, f))
    hist = {}
    for c in rng_counts:
        hist[c] = hist.get(c, 0) + 1
    assert hist == rep.histogram


def test_report_serialization(tmp_path):
    rep = random_cubic_sample(4, 2, trials=5, seed=2)
    text1 = report_json(rep, tmp_path / "r.json")
    text2 = report_json(random_cubic_sample(4, 2, trials=5, seed=2))
    assert text1 == text2
    loaded = json.loads((tmp_path / "r.json").read_text())
    assert loaded["schema"] == 1 and loaded["kind"] == "random_cubics"
    histogram_csv(rep.histogram, tmp_path / "h.csv")
    lines = (tmp_path / "h.csv").read_text().splitlines()
    assert lines[0] == "value,count"
    assert len(lines) == 1 + len(rep.histogram)
