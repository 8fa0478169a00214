import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planimetric import Annulus, ConformalDomain, Disc, PuncturedDisc
from planimetric.disc import bergman_disc, kobayashi_disc
from planimetric.distances import (Curve, Method, bergman_distance, bergman_metric_field,
                                   caratheodory_distance, disc_geodesic_curve, graph_geodesic,
                                   integrate_metric, kobayashi_distance)
from planimetric.errors import (CoincidentPoints, MetricEvaluationFailed, NoPath,
                                OrbitTruncationUnsafe, PointOutsideDomain,
                                PointsTooCloseToBoundary, UnsupportedDomain)

B05 = 0.7768361992120933
K05 = 0.5493061443340549
disc_pt = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.95), st.floats(0, 2 * np.pi))


def test_curve_contract():
    with pytest.raises(ValueError):
        Curve(np.array([0.1]))
    with pytest.raises(ValueError):
        Curve(np.array([0, 0.5]), max_step=0.1)


def test_disc_geodesic_curve():
    c = disc_geodesic_curve(0, 0.5, 5)
    assert np.allclose(c.samples, [0, 0.125, 0.25, 0.375, 0.5])
    with pytest.raises(CoincidentPoints):
        disc_geodesic_curve(0.2, 0.2, 5)
    arc = disc_geodesic_curve(0.5, 0.5j, 64)
    assert integrate_metric(arc, bergman_metric_field(Disc())) == pytest.approx(bergman_disc(0.5, 0.5j), abs=1e-4)


def test_integrate_metric():
    beta = bergman_metric_field(Disc())
    seg = Curve(np.linspace(0, 0.5, 10_001))
    assert integrate_metric(seg, beta) == pytest.approx(B05, abs=1e-5)
    assert integrate_metric(Curve(np.full(4, 0.3 + 0j)), beta) == 0.0


def test_competitor_curves_are_longer():
    rng = np.random.default_rng(11)
    beta = bergman_metric_field(Disc())
    z, w = 0.3 + 0.1j, -0.4 + 0.5j
    t = np.linspace(0, 1, 400)
    for _ in range(100):
        bump = rng.normal(scale=0.2) * np.sin(np.pi * t) + 1j * rng.normal(scale=0.2) * np.sin(2 * np.pi * t)
        path = z + t * (w - z) + bump * 0.5
        if np.max(np.abs(path)) >= 0.99:
            continue
        assert integrate_metric(Curve(path), beta) >= bergman_disc(z, w) - 1e-4


def test_metric_field_failure():
    beta = bergman_metric_field(Disc())
    with pytest.raises(MetricEvaluationFailed):
        beta(np.array([1.0 + 0j]))


def test_bergman_dispatch(conformal):
    e = bergman_distance(Disc(), 0, 0.5)
    assert e.method is Method.CLOSED_FORM and e.value == pytest.approx(B05, abs=1e-13)
    z, w = conformal.evaluate(np.array([0, 0.5]))[0]
    e = bergman_distance(conformal, z, w)
    assert e.method is Method.PULLBACK and e.value == pytest.approx(B05, abs=1e-12)
    assert bergman_distance(PuncturedDisc(), 0.3, -0.3).value == pytest.approx(bergman_disc(0.3, -0.3))
    assert bergman_distance(Disc(2.0), 0, 1.0).value == pytest.approx(B05)


def test_kobayashi_values():
    assert kobayashi_distance(Disc(), 0, 0.5).value == pytest.approx(K05, abs=1e-14)
    A = Annulus(0.25)
    e8 = kobayashi_distance(A, 0.5, -0.5, kmax=8)
    e16 = kobayashi_distance(A, 0.5, -0.5, kmax=16)
    assert e8.method is Method.COVERING_ORBIT
    assert e8.value == pytest.approx(3.559707331246876, rel=1e-12)
    assert abs(e8.value - e16.value) <= 1e-12
    assert kobayashi_distance(PuncturedDisc(), 0.5, -0.5).value == pytest.approx(1.5567096465937298, rel=1e-12)


def test_kobayashi_puncture_divergence():
    k1 = kobayashi_distance(PuncturedDisc(), 0.5, 0.1).value
    k3 = kobayashi_distance(PuncturedDisc(), 0.5, 0.001).value
    assert k3 > k1


def test_orbit_truncation_guard():
    with pytest.raises(OrbitTruncationUnsafe):
        kobayashi_distance(Annulus(0.25), 0.5, -0.5, kmax=0)


def test_annulus_kobayashi_matches_density():
    # infinitesimal distance over |dz| tends to pi / (2 W |z| sin(theta)) on the strip model
    r, z, h = 0.25, 0.5, 1e-6
    W = np.log(1 / r)
    theta = np.pi * (np.log(z) - np.log(r)) / W
    k = kobayashi_distance(Annulus(r), z, z + h).value
    assert k / h == pytest.approx(np.pi / (2 * W * z * np.sin(theta)), rel=1e-5)


def test_caratheodory(conformal):
    assert caratheodory_distance(Disc(), 0, 0.5).value == pytest.approx(K05)
    z, w = conformal.evaluate(np.array([0.1, 0.2]))[0]
    assert caratheodory_distance(conformal, z, w).value == pytest.approx(kobayashi_distance(conformal, z, w).value)
    with pytest.raises(UnsupportedDomain):
        caratheodory_distance(Annulus(0.25), 0.5, -0.5)


def test_outside_points():
    with pytest.raises(PointOutsideDomain):
        kobayashi_distance(Annulus(0.5), 0.1, 0.7)


@settings(max_examples=40, deadline=None)
@given(st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.9), st.floats(0, 6.3)),
       st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.9), st.floats(0, 6.3)))
def test_ordering_conformal(a, b):
    dom = ConformalDomain((0.2,))
    z, w = dom.evaluate(np.array([a, b]))[0]
    c = caratheodory_distance(dom, z, w).value
    assert c <= kobayashi_distance(dom, z, w).value + 1e-10
    assert c <= bergman_distance(dom, z, w).value + 1e-10


@settings(max_examples=40, deadline=None)
@given(st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.3, 0.95), st.floats(0, 6.3)),
       st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.3, 0.95), st.floats(0, 6.3)),
       st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.3, 0.95), st.floats(0, 6.3)))
def test_annulus_kobayashi_axioms(a, b, c):
    A = Annulus(0.25)
    k = lambda p, q: kobayashi_distance(A, p, q).value
    assert k(a, b) == pytest.approx(k(b, a), rel=1e-9, abs=1e-12)
    assert k(a, c) <= k(a, b) + k(b, c) + 1e-9
    # inclusion in the disc can only increase the distance
    assert k(a, b) >= kobayashi_disc(a, b) - 1e-12


@settings(max_examples=40, deadline=None)
@given(disc_pt, disc_pt)
def test_punctured_monotonicity(a, b):
    if a == 0 or b == 0:
        return
    assert kobayashi_distance(PuncturedDisc(), a, b).value >= kobayashi_disc(a, b) - 1e-12


def test_graph_geodesic_disc():
    e = graph_geodesic(Disc(), None, 0, 0.5)
    assert e.method is Method.GRAPH_GEODESIC
    assert e.value == pytest.approx(B05, rel=1e-6)
    assert graph_geodesic(Disc(), None, 0.3, 0.3).value == 0.0
    with pytest.raises(NoPath):
        graph_geodesic(Disc(), None, 0, 0.5, resolution=4)


def test_graph_geodesic_conformal_upper_bound(conformal):
    rng = np.random.default_rng(4)
    for _ in range(5):
        a, b = 0.8 * np.sqrt(rng.uniform(0, 1, 2)) * np.exp(2j * np.pi * rng.uniform(0, 1, 2))
        z, w = conformal.evaluate(np.array([a, b]))[0]
        g = graph_geodesic(conformal, None, z, w)
        exact = bergman_distance(conformal, z, w).value
        assert g.value + g.bracket[1] >= exact - 1e-9
        assert g.value == pytest.approx(exact, rel=1e-5)


def test_graph_geodesic_annulus_refinement():
    A = Annulus(0.25)
    a = graph_geodesic(A, None, 0.5, -0.5, resolution=64)
    b = graph_geodesic(A, None, 0.5, -0.5, resolution=128)
    assert a.value == pytest.approx(5.034146825412435, rel=1e-6)
    assert abs(a.value - b.value) <= 0.02 * a.value
    assert a.value == pytest.approx(graph_geodesic(A, None, -0.5, 0.5).value, rel=1e-6)


def test_graph_geodesic_floor():
    with pytest.raises(PointsTooCloseToBoundary):
        graph_geodesic(Annulus(0.25), None, 0.5, 1 - 1e-5)


def test_annulus_triangle():
    A = Annulus(0.25)
    p, q, s = 0.5, 0.6j, -0.7 - 0.1j
    b = lambda x, y: bergman_distance(A, x, y)
    bpq, bqs, bps = b(p, q), b(q, s), b(p, s)
    slack = bpq.bracket[1] + bqs.bracket[1] + bps.bracket[1] + 1e-9
    assert bps.value <= bpq.value + bqs.value + slack
