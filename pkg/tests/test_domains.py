import json

import numpy as np
import pytest

from planimetric import Annulus, ConformalDomain, Disc, PuncturedDisc
from planimetric.domains import (domain_from_spec, domain_label, domain_to_spec, evaluate_map,
                                 inverse_map, pushforward_bergman_metric)
from planimetric.errors import InvalidDomainSpec, InvalidMap, NoConvergence


def test_validation():
    with pytest.raises(InvalidDomainSpec):
        Annulus(1.5)
    with pytest.raises(InvalidDomainSpec):
        Disc(-1)
    # phi'(zeta) = 1 + 2 a zeta vanishes inside the disc when |a| > 1/2
    with pytest.raises(InvalidMap):
        ConformalDomain((0.6,))


def test_self_intersecting_boundary():
    # phi' stays nonzero on the closed disc but the boundary curve crosses itself
    with pytest.raises(InvalidMap):
        ConformalDomain((0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.3))


def test_evaluate_and_inverse(conformal):
    val, der = evaluate_map(conformal, 0.5j)
    assert val == pytest.approx(0.5j + 0.2 * (0.5j) ** 2)
    assert der == pytest.approx(1 + 0.4 * 0.5j)
    assert inverse_map(conformal, 0.3 - 0.2j) == pytest.approx(0.2896460173330138 - 0.17923420996546907j)
    with pytest.raises(NoConvergence):
        inverse_map(conformal, 2.0)


def test_inverse_roundtrip(conformal):
    rng = np.random.default_rng(5)
    zeta = 0.999 * np.sqrt(rng.uniform(0, 1, 500)) * np.exp(2j * np.pi * rng.uniform(0, 1, 500))
    z = conformal.evaluate(zeta)[0]
    assert np.max(np.abs(conformal.inverse(z) - zeta)) < 1e-10


def test_pushforward(conformal):
    assert pushforward_bergman_metric(conformal, 0.3 - 0.2j) == pytest.approx(1.430766566344863, rel=1e-12)
    # at the origin the preimage is 0 and phi'(0) = 1
    assert pushforward_bergman_metric(conformal, 0) == pytest.approx(np.sqrt(2))


@pytest.mark.parametrize("spec", [
    {"type": "disc"}, {"type": "disc", "radius": 0.8}, {"type": "annulus", "r": 0.25},
    {"type": "punctured_disc"}, {"type": "conformal", "coeffs": [0.2]},
    {"type": "conformal", "coeffs": [[0.1, 0.05], 0.02]}])
def test_spec_roundtrip(spec):
    dom = domain_from_spec(json.dumps(spec))
    assert domain_from_spec(domain_to_spec(dom)) == dom
    assert json.loads(domain_label(dom)) == domain_to_spec(dom)


@pytest.mark.parametrize("bad", [
    "not json", '{"r": 0.5}', '{"type": "ellipse"}', '{"type": "annulus"}',
    '{"type": "disc", "extra": 1}', '{"type": "conformal", "coeffs": 0.2}',
    '{"type": "annulus", "r": 2}'])
def test_spec_rejects(bad):
    with pytest.raises(InvalidDomainSpec):
        domain_from_spec(bad)


def test_hashable():
    assert len({Disc(), Disc(), Annulus(0.5), PuncturedDisc(), ConformalDomain((0.2,))}) == 4
