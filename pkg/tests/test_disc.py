import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planimetric.disc import (SQRT2, Case, bergman_disc, bergman_metric_disc, eq2_residual,
                              geodesic_arc, kobayashi_disc, lemma4a_bounds, lemma4b_bounds,
                              mobius, prop1prime_classify, pseudo_hyperbolic,
                              sharpness_ratio_a, sharpness_ratio_b)
from planimetric.errors import CoincidentPoints, PointOutsideDomain

disc_pt = st.builds(lambda r, t: r * np.exp(1j * t),
                    st.floats(0, 0.999999), st.floats(0, 2 * np.pi))


def test_frozen_values():
    assert bergman_disc(0, 0.5) == pytest.approx(0.7768361992120933, abs=1e-13)
    assert kobayashi_disc(0, 0.5) == pytest.approx(0.5493061443340549, abs=1e-13)
    lo, hi = lemma4a_bounds(0, 0.5)
    assert (lo, hi) == pytest.approx((0.4557463944083262, 0.7676517525907619), abs=1e-13)
    lo, hi = lemma4b_bounds(0.9, -0.9)
    assert (lo, hi) == pytest.approx((2.302585092994046, 3.275477083717612), abs=1e-12)
    assert pseudo_hyperbolic(0, 0.5) == 0.5
    assert bergman_metric_disc(0.5) == pytest.approx(1.8856180831641267)


def test_outside():
    with pytest.raises(PointOutsideDomain):
        kobayashi_disc(0, 1.0)


def test_near_boundary_accuracy():
    # k(t, -t) = artanh(2t/(1+t^2)) = log((1+t)/(1-t)), exact in log form
    t = 1 - 1e-12
    assert kobayashi_disc(t, -t) == pytest.approx(np.log((1 + t) / (1 - t)), rel=1e-10)


@settings(max_examples=200, deadline=None)
@given(disc_pt, disc_pt)
def test_enclosures(z, w):
    k = kobayashi_disc(z, w)
    assert lemma4a_bounds(z, w).encloses(k)
    assert lemma4b_bounds(z, w).encloses(k)


@settings(max_examples=200, deadline=None)
@given(disc_pt, disc_pt, disc_pt)
def test_metric_axioms(a, b, c):
    assert kobayashi_disc(a, b) == pytest.approx(kobayashi_disc(b, a), rel=1e-12, abs=1e-15)
    assert kobayashi_disc(a, c) <= kobayashi_disc(a, b) + kobayashi_disc(b, c) + 1e-9


@settings(max_examples=100, deadline=None)
@given(disc_pt, disc_pt, st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.9), st.floats(0, 6.3)),
       st.floats(0, 2 * np.pi))
def test_mobius_invariance(z, w, a, angle):
    f = mobius(a, angle)
    fz, fw = f(z), f(w)
    if max(abs(fz), abs(fw)) >= 1 - 1e-9 or max(abs(z), abs(w)) > 0.999:
        return
    assert kobayashi_disc(fz, fw) == pytest.approx(kobayashi_disc(z, w), rel=1e-7, abs=1e-9)


def test_eq2_residual_small():
    rng = np.random.default_rng(1)
    z = np.sqrt(rng.uniform(0, 1, 1000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 1000))
    w = np.sqrt(rng.uniform(0, 1, 1000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 1000))
    assert np.max(eq2_residual(z, w)) <= 1e-12


def test_sharpness_ratios():
    assert sharpness_ratio_a(-0.5, 0.5) == pytest.approx(1.5)
    assert sharpness_ratio_a(0, 1e-3) == pytest.approx(1 + 5e-4, abs=1e-6)
    with pytest.raises(CoincidentPoints):
        sharpness_ratio_b(0.3, 0.3)
    assert 0.5 <= sharpness_ratio_b(0.9, 0.1) <= SQRT2


def test_classify():
    assert prop1prime_classify(2.0, 1.0, 1.0) is Case.FAR
    assert prop1prime_classify(1.0, 1.0, 1.0) is Case.NEAR
    with pytest.raises(ValueError):
        prop1prime_classify(0.0, 1.0, 1.0)


def test_geodesic_arc():
    pts = geodesic_arc(0, 0.5, 5)
    assert np.allclose(pts, [0, 0.125, 0.25, 0.375, 0.5])
    arc = geodesic_arc(0.5, 0.5j, 33)
    assert arc[0] == 0.5 and arc[-1] == 0.5j
    # the orthogonal circle through 0.5 and 0.5i has its centre at 1.25 (1 + i)
    assert np.allclose(np.abs(arc - 1.25 * (1 + 1j)), abs(0.5 - 1.25 * (1 + 1j)))
