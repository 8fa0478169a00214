import json

import numpy as np
import pytest

from planimetric import Annulus, ConformalDomain, Disc, PuncturedDisc
from planimetric.errors import NotNested, PointsTooCloseToBoundary
from planimetric.verify import (REGIMES, SamplePlan, corollary2_gap, isolated_point_check,
                                lemma4_enclosure, lemma4_sharpness_sweep, monotonicity_check,
                                prop1_certificate, prop3_sweep, remark_d_limit)


def test_plan_determinism_and_depths(conformal):
    a = SamplePlan(conformal, count=6, seed=3).samples()
    b = SamplePlan(conformal, count=6, seed=3).samples()
    assert a == b
    assert len(a) == 18
    from planimetric.geometry import dist_to_boundary
    for s in a:
        if s.kind != "near":
            assert dist_to_boundary(conformal, s.z) == pytest.approx(s.depth, rel=0.05)


def test_plan_same_draws_on_every_rung():
    s = SamplePlan(Disc(), count=3, seed=1).samples()
    # z keeps its boundary direction while descending
    assert np.angle(s[0].z) == pytest.approx(np.angle(s[3].z))
    assert abs(s[3].z) > abs(s[0].z)


def test_plan_floor():
    with pytest.raises(PointsTooCloseToBoundary):
        SamplePlan(Annulus(0.25), pairs=((0.5, 1 - 1e-5),)).samples()


def test_prop1_disc():
    c = prop1_certificate(SamplePlan(Disc(), count=60, seed=2))
    assert c.passed and c.constants["c"] <= 2
    assert c.constants["prop1prime_violations"] == 0
    assert c.worst_margin >= -1e-9


def test_prop1_vacuous_pair():
    c = prop1_certificate(SamplePlan(Disc(), pairs=((0.3, 0.3), (0.1, 0.5))))
    assert c.passed
    assert c.rows[0].value == 0.0 and c.rows[0].margin == 0.0


def test_cor2_simply_connected(conformal):
    c = corollary2_gap(SamplePlan(conformal, count=3))
    assert c.passed
    assert c.claim_ids == ("Cor2-c", "Cor2-k")
    assert c.constants["Cor2-k"]["sup"] <= 1e-9


def test_cor2_annulus_has_only_k_gap():
    c = corollary2_gap(SamplePlan(Annulus(0.25), pairs=((0.5, -0.5), (0.4j, 0.9))))
    assert c.claim_ids == ("Cor2-k",)
    assert np.isfinite(c.constants["Cor2-k"]["sup"])


def test_prop3_disc_flat():
    c = prop3_sweep(SamplePlan(Disc()))
    assert c.passed
    assert set(c.constants["verdict_by_base"].values()) == {"flat"}


def test_remark_d_disc():
    c = remark_d_limit(SamplePlan(Disc(), count=4, depths=(1e-2,)))
    for r in c.rows:
        assert r.value == pytest.approx(np.sqrt(2) / (1 + abs(r.z)), abs=1e-12)
    assert c.rows[0].value == pytest.approx(0.7106601, abs=1e-7)


@pytest.mark.parametrize("regime", REGIMES)
def test_sharpness_regimes(regime):
    c = lemma4_sharpness_sweep(regime)
    assert c.passed
    assert c.worst_margin >= -1e-12


def test_sharpness_closed_forms():
    c = lemma4_sharpness_sweep("large-s")
    assert c.constants["attained"] == pytest.approx(1.999, abs=1e-12)
    c = lemma4_sharpness_sweep("small-s")
    assert c.constants["attained"] == pytest.approx(1.0005, abs=1e-6)
    with pytest.raises(ValueError):
        lemma4_sharpness_sweep("tiny")


def test_enclosure_small():
    c = lemma4_enclosure(2000, seed=4)
    assert c.passed and c.constants["violations_a"] == 0 and c.constants["violations_b"] == 0


def test_monotonicity_equal_domains():
    c = monotonicity_check(Disc(), Disc(), count=10)
    assert c.passed
    assert max(abs(r.margin) for r in c.rows) <= 1e-10


def test_monotonicity_scaling_oracle():
    c = monotonicity_check(Disc(0.8), Disc(), points=[0])
    assert c.rows[0].value == pytest.approx(1 / (0.64 * np.pi))
    assert c.rows[0].bound_lo == pytest.approx(1 / np.pi)


def test_not_nested():
    with pytest.raises(NotNested):
        monotonicity_check(Disc(), Disc(0.8), count=5)


def test_isolated_point_rows():
    c = isolated_point_check()
    ks = list(c.constants["k_by_depth"].values())
    assert ks[-1] > ks[0]
    b_rows = [r for r in c.rows if r.bound_hi is not None]
    assert all(r.margin >= 0 for r in b_rows)


def test_serialisation_stable(conformal):
    plan = SamplePlan(conformal, count=3, seed=9)
    a = prop1_certificate(plan)
    b = prop1_certificate(plan)
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert doc["schema_version"] == "1.0" and doc["claim_ids"] == ["Prop1-lower", "Prop1-upper"]
    assert len(a.csv_rows()) == 2 * 9


def test_conservative_tolerance():
    c = prop1_certificate(SamplePlan(Disc(), count=6))
    c2 = prop1_certificate(SamplePlan(Disc(), count=6), tol=2e-9)
    assert not c.passed or c2.passed


def test_threads_do_not_change_results(monkeypatch, conformal):
    plan = SamplePlan(conformal, count=6, seed=5)
    monkeypatch.setenv("PLANIMETRIC_THREADS", "1")
    a = corollary2_gap(plan).to_json()
    monkeypatch.setenv("PLANIMETRIC_THREADS", "4")
    assert corollary2_gap(plan).to_json() == a
