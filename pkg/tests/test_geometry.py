import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planimetric import Annulus, ConformalDomain, Disc, PuncturedDisc
from planimetric.errors import DegenerateQuery, PointOutsideDomain, TooCoarse
from planimetric.geometry import (as_point, boundary_polyline, contains, dist_to_boundary,
                                  parse_complex)


@pytest.mark.parametrize("text,value", [
    ("0.3-0.2i", 0.3 - 0.2j), ("i", 1j), ("-i", -1j), ("0.5i", 0.5j), ("-2", -2),
    ("1e-3+4e-2j", 1e-3 + 4e-2j), (" 0.25 + i ", 0.25 + 1j)])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("bad", ["", "abc", "1+", "nan"])
def test_parse_complex_rejects(bad):
    with pytest.raises(ValueError):
        as_point(bad)


def test_as_point_pairs_and_nonfinite():
    assert as_point((0.5, -1)) == 0.5 - 1j
    with pytest.raises(ValueError):
        as_point(complex(np.inf, 0))


def test_disc_and_annulus_distances():
    assert dist_to_boundary(Disc(), 0.3) == pytest.approx(0.7, abs=1e-15)
    assert dist_to_boundary(Annulus(0.25), 0.5) == pytest.approx(0.25, abs=1e-15)
    assert dist_to_boundary(Disc(2.0), 1.5j) == pytest.approx(0.5)


def test_conformal_distance_oracle(conformal):
    # min over t of sqrt(1.04 + 0.4 cos t) is attained at t = pi
    assert dist_to_boundary(conformal, 0) == pytest.approx(0.8, rel=1e-9)


def test_conformal_distance_refinement(conformal):
    rng = np.random.default_rng(3)
    zeta = 0.9 * np.sqrt(rng.uniform(0, 1, 20)) * np.exp(2j * np.pi * rng.uniform(0, 1, 20))
    from planimetric.geometry import _conformal_distance
    for z in conformal.evaluate(zeta)[0]:
        a = _conformal_distance(conformal, complex(z), 4096)
        b = _conformal_distance(conformal, complex(z), 8192)
        assert abs(a - b) <= 1e-6 * a


def test_contains():
    assert contains(Disc(), 0.5)
    assert not contains(Annulus(0.5), 0.25)
    assert not contains(Disc(), 1.0)
    assert not contains(PuncturedDisc(), 0)


def test_contains_conformal(conformal):
    assert contains(conformal, 0)
    assert not contains(conformal, 1.3)


def test_outside_and_degenerate():
    with pytest.raises(PointOutsideDomain):
        dist_to_boundary(Disc(), 1.5)
    with pytest.raises(DegenerateQuery):
        dist_to_boundary(Disc(), 1 - 1e-16)


def test_boundary_polyline():
    with pytest.raises(TooCoarse):
        boundary_polyline(Disc(), 4)
    p = boundary_polyline(Disc(), 8)
    assert np.allclose(p.loops[0], np.exp(1j * np.pi * np.arange(8) / 4))
    a = boundary_polyline(Annulus(0.5), 16)
    assert a.component_count == 2
    assert np.allclose(np.abs(a.loops[1]), 0.5)


def test_disc_exactness():
    rng = np.random.default_rng(0)
    z = np.sqrt(rng.uniform(0, 0.999, 10_000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 10_000))
    d = np.array([dist_to_boundary(Disc(), p) for p in z[:2000]])
    assert np.max(np.abs(d - (1 - np.abs(z[:2000])))) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(st.floats(0.3, 0.9), st.floats(0, 2 * np.pi), st.floats(0.3, 0.9), st.floats(0, 2 * np.pi))
def test_one_lipschitz(conformal, r1, t1, r2, t2):
    z, w = conformal.evaluate(np.array([r1 * np.exp(1j * t1), r2 * np.exp(1j * t2)]))[0]
    dz, dw = dist_to_boundary(conformal, z), dist_to_boundary(conformal, w)
    assert abs(dz - dw) <= abs(z - w) + 2e-6
