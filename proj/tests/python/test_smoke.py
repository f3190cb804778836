import math

import squarepeg as sp


def test_version():
    assert sp.__version__


def test_circle_curve_basics():
    c = sp.curve(sp.unit_circle())
    assert abs(c.length() - 2 * math.pi) < 1e-9
    x, y = c.eval(0.25)
    assert abs(x) < 1e-9
    assert abs(y - 1.0) < 1e-9
    assert abs(c.signed_curvature(0.4) - 1.0) < 1e-9
    t, d = c.closest_point(2.0, 0.0)
    assert abs(d - 1.0) < 1e-9
    assert t < 1e-6
    convex, min_curvature = c.is_convex()
    assert convex
    assert min_curvature > 0.9


def test_spec_dict_round_trip():
    spec = sp.nonsmooth_two_square()
    assert spec["name"] == "nonsmooth_two_square"
    assert len(spec["segments"]) == 2
    c = sp.curve(spec)
    assert c.segment_count() == 2


def test_two_square_counts():
    rep = sp.find_squares(sp.nonsmooth_two_square(), {"threads": 4})
    assert len(rep["squares"]) == 2
    assert rep["familySuspected"] is False
    sides = sorted(s["sideLength"] for s in rep["squares"])
    assert abs(sides[1] - math.sqrt(2)) < 1e-9
    for sq in rep["squares"]:
        assert sq["residualNorm"] < 1e-10


def test_circle_family_detection():
    rep = sp.find_squares(sp.unit_circle(), {"threads": 4, "gridResolution": 16})
    assert rep["familySuspected"] is True
    assert len(rep["squares"]) == 1


def test_oracle_agreement():
    spec = sp.nonsmooth_two_square()
    primary = sp.find_squares(spec, {"threads": 4})["squares"]
    oracle = sp.oracle_squares(spec, resolution=512)
    assert len(primary) == len(oracle)


def test_critical_amplitude():
    crit = sp.critical_c()
    assert 1.18164 < crit["cStar"] < 1.18364
    lo, hi = crit["bracket"]
    assert lo < crit["cStar"] < hi


def test_n_square_construction():
    spec = sp.n_square(2)
    assert spec["name"] == "n_square_2"
    convex, _ = sp.curve(spec).is_convex()
    assert convex


def test_locus_identity():
    for x in (0.05, 0.3, 0.64):
        top = sp.locus(x) + 2 * x
        assert abs(x * x + top * top - 1.0) < 1e-12
    assert sp.locus(0.0) == 1.0
    assert sp.max_convex_c(0.0, math.pi / 4) > 0.0
    assert sp.graph_height(0.0, 1.18264) > 0.09


def test_render_svg():
    spec = sp.nonsmooth_two_square()
    rep = sp.find_squares(spec, {"threads": 4})
    svg = sp.render_svg(spec, report=rep)
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<polygon") == len(rep["squares"])
