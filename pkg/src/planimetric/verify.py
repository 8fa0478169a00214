"""Empirical verification harness for the two-sided distance estimates.

Every suite returns a :class:`Certificate`: the empirical constants found on a
finite, seeded sample, per-sample rows with the bound that was checked, and a
worst margin.  A certificate is a witness on its sample set, never a proof.

Sample plans are realised on a fixed boundary-depth ladder.  Random draws
(boundary angles, offsets, kinds) are made once per pair index and reused on
every rung, so rungs differ only in depth and trends across rungs are
meaningful.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .disc import (SQRT2, bergman_disc, kobayashi_disc, lemma4a_bounds, lemma4b_bounds,
                   prop1prime_classify, sharpness_ratio_a, sharpness_ratio_b)
from .domains import (SIMPLY_CONNECTED, Annulus, ConformalDomain, Disc, Domain, PuncturedDisc,
                      domain_label)
from .distances import (DEFAULT_KMAX, DEFAULT_RESOLUTION, bergman_distance, bergman_metric_field,
                        caratheodory_distance, kobayashi_distance)
from .errors import NotNested, PointOutsideDomain, PointsTooCloseToBoundary
from .geometry import as_point, contains, contains_many, dist_to_boundary
from .kernel import kernel_value, m_invariant

SCHEMA_VERSION = "1.0"
DEPTH_LADDER = (1e-1, 1e-2, 1e-3)
MARGIN_TOL = 1e-9
HALF_SQRT2 = SQRT2 / 2
KINDS = ("far", "near", "mixed")

CSV_COLUMNS = ("claim_id", "domain", "seed", "sample_id", "z_re", "z_im", "w_re", "w_im",
               "value", "bound_lo", "bound_hi", "margin")


def worker_count() -> int:
    """Worker threads for pair evaluation, from ``PLANIMETRIC_THREADS`` (default 1)."""
    try:
        n = int(os.environ.get("PLANIMETRIC_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def _pmap(fn, items):
    # results come back in input order, so reductions never see thread timing
    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# --- sample plans -------------------------------------------------------------------

@dataclass(frozen=True)
class Sample:
    sample_id: int
    rung: int
    depth: float | None
    kind: str
    z: complex
    w: complex


def boundary_frame(domain: Domain, theta: float, inner: bool = False):
    """Boundary point at parameter ``theta`` and the inward unit normal there."""
    e = complex(np.cos(theta), np.sin(theta))
    if isinstance(domain, Disc):
        return domain.radius * e, -e
    if isinstance(domain, Annulus):
        return (domain.r * e, e) if inner else (e, -e)
    if isinstance(domain, PuncturedDisc):
        return e, -e
    if isinstance(domain, ConformalDomain):
        val, der = domain.evaluate(e)
        outward = e * complex(der)
        return complex(val), -outward / abs(outward)
    raise TypeError(f"unsupported domain {domain!r}")


def _engine_floor(domain: Domain) -> float:
    return bergman_metric_field(domain).floor


@dataclass(frozen=True)
class SamplePlan:
    """Seeded pair generator on the depth ladder, or an explicit pair list.

    ``count`` pairs are drawn per rung and cycle through three kinds: *far*
    (both points at the rung depth, independent boundary positions), *near*
    (``w`` within ``0.8 * depth`` of ``z``) and *mixed* (``w`` fixed at a
    moderate depth while ``z`` descends).
    """

    domain: Domain
    count: int = 8
    seed: int = 0
    depths: tuple = DEPTH_LADDER
    pairs: tuple | None = None
    resolution: int = DEFAULT_RESOLUTION
    kmax: int = DEFAULT_KMAX

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("a sample plan needs count >= 1")
        if any(not (d > 0) for d in self.depths):
            raise ValueError("ladder depths must be positive")
        object.__setattr__(self, "depths", tuple(float(d) for d in self.depths))
        if self.pairs is not None:
            object.__setattr__(self, "pairs",
                               tuple((as_point(z), as_point(w)) for z, w in self.pairs))

    def samples(self) -> list[Sample]:
        if self.pairs is not None:
            out = [Sample(i, 0, None, "given", z, w) for i, (z, w) in enumerate(self.pairs)]
        else:
            out = self._generate()
        floor = _engine_floor(self.domain)
        for s in out:
            for p in (s.z, s.w):
                if not contains(self.domain, p):
                    raise PointOutsideDomain(f"sample {s.sample_id}: {p!r} is outside {self.domain!r}")
                if _outer_distance(self.domain, p) < floor:
                    raise PointsTooCloseToBoundary(
                        f"sample {s.sample_id}: {p!r} is below the engine floor {floor:g}")
        return out

    def _generate(self) -> list[Sample]:
        rng = np.random.default_rng(self.seed)
        two_sided = isinstance(self.domain, Annulus)
        draws = []
        for i in range(self.count):
            # every field is drawn for every pair so the stream never depends on kind
            draws.append(dict(
                kind=KINDS[i % 3],
                tz=rng.uniform(0, 2 * np.pi), tw=rng.uniform(0, 2 * np.pi),
                cz=bool(rng.integers(2)) and two_sided, cw=bool(rng.integers(2)) and two_sided,
                rho=rng.uniform(0.1, 0.8), alpha=rng.uniform(0, 2 * np.pi),
                dw=rng.uniform(0.1, 0.3)))
        out = []
        for j, depth in enumerate(self.depths):
            for i, d in enumerate(draws):
                pz, nz = boundary_frame(self.domain, d["tz"], d["cz"])
                z = pz + depth * nz
                if d["kind"] == "far":
                    pw, nw = boundary_frame(self.domain, d["tw"], d["cw"])
                    w = pw + depth * nw
                elif d["kind"] == "near":
                    w = z + depth * d["rho"] * complex(np.cos(d["alpha"]), np.sin(d["alpha"]))
                    if not contains(self.domain, w) or _outer_distance(self.domain, w) < 0.1 * depth:
                        w = z + depth * d["rho"] * nz
                else:
                    pw, nw = boundary_frame(self.domain, d["tw"], d["cw"])
                    w = pw + d["dw"] * nw
                out.append(Sample(j * self.count + i, j, depth, d["kind"], complex(z), complex(w)))
        return out


def _outer_distance(domain: Domain, p: complex) -> float:
    # the puncture carries no engine floor: every engine is exact there
    if isinstance(domain, PuncturedDisc):
        return 1.0 - abs(p)
    return dist_to_boundary(domain, p)


# --- certificates ---------------------------------------------------------------------

@dataclass
class Row:
    claim_id: str
    sample_id: int
    z: complex
    w: complex
    value: float
    bound_lo: float | None = None
    bound_hi: float | None = None
    margin: float | None = None
    rung: int | None = None

    def to_dict(self) -> dict:
        return {"claim_id": self.claim_id, "sample_id": self.sample_id, "rung": self.rung,
                "z": [self.z.real, self.z.imag], "w": [self.w.real, self.w.imag],
                "value": _num(self.value), "bound_lo": _num(self.bound_lo),
                "bound_hi": _num(self.bound_hi), "margin": _num(self.margin)}


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if np.isfinite(x) else None


@dataclass
class Certificate:
    """Empirical witness for one or more claims over a finite sample set."""

    claim_ids: tuple
    domain: str
    seed: int | None
    constants: dict
    worst_margin: float
    sample_count: int
    passed: bool
    tolerance: float = MARGIN_TOL
    diagnostics: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    @property
    def claim_id(self) -> str:
        return "+".join(self.claim_ids)

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "claim_ids": list(self.claim_ids),
                "domain": self.domain, "seed": self.seed, "constants": _clean(self.constants),
                "worst_margin": _num(self.worst_margin), "sample_count": self.sample_count,
                "passed": bool(self.passed), "tolerance": self.tolerance,
                "diagnostics": _clean(self.diagnostics),
                "rows": [r.to_dict() for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False)

    def csv_rows(self) -> list[list]:
        out = []
        for r in self.rows:
            out.append([r.claim_id, self.domain, "" if self.seed is None else str(self.seed),
                        str(r.sample_id), _fmt(r.z.real), _fmt(r.z.imag), _fmt(r.w.real),
                        _fmt(r.w.imag), _fmt(r.value), _fmt(r.bound_lo), _fmt(r.bound_hi),
                        _fmt(r.margin)])
        return out


def _fmt(x) -> str:
    x = _num(x)
    return "" if x is None else repr(x)


def _clean(obj):
    """JSON-safe copy: numpy scalars to floats, non-finite values to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _finish(claim_ids, domain, seed, constants, rows, extra_ok=True, tol=MARGIN_TOL,
            diagnostics=None, sample_count=None) -> Certificate:
    margins = [r.margin for r in rows if r.margin is not None]
    worst = float(min(margins)) if margins else 0.0
    finite = all(np.isfinite(v) for v in _flat_numbers(constants))
    passed = bool(extra_ok and finite and np.isfinite(worst) and worst >= -tol)
    label = domain if isinstance(domain, str) else domain_label(domain)
    n = sample_count if sample_count is not None else len({r.sample_id for r in rows})
    return Certificate(tuple(claim_ids), label, seed, constants, worst, n, passed, tol,
                       diagnostics or {}, rows)


def _flat_numbers(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _flat_numbers(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            yield from _flat_numbers(v)
    elif isinstance(obj, (float, int, np.floating, np.integer)) and not isinstance(obj, bool):
        yield float(obj)


def _rung_key(depth) -> str:
    return "given" if depth is None else f"{depth:g}"


# --- two-sided estimate ------------------------------------------------------------

def prop1_certificate(plan: SamplePlan, tol: float = MARGIN_TOL) -> Certificate:
    """Smallest ``c >= 1`` with ``sqrt2 log(1 + x/c) <= b <= sqrt2 log(1 + c x)``
    on every sample, ``x = |z - w| / sqrt(d(z) d(w))``.

    Each side is solved for ``c`` in closed form.  At that ``c`` the Far/Near
    forms are checked as well: additive constant ``2 log c + log 4`` when
    ``x > 1``, multiplicative constant ``2c`` otherwise.
    """
    dom = plan.domain
    samples = plan.samples()

    def evaluate(s: Sample):
        est = bergman_distance(dom, s.z, s.w, plan.resolution)
        return est.value, est.bracket[1], dist_to_boundary(dom, s.z), dist_to_boundary(dom, s.w)

    results = _pmap(evaluate, samples)
    recs = []
    for s, (b, slack, dz, dw) in zip(samples, results):
        x = abs(s.z - s.w) / np.sqrt(dz * dw)
        if x == 0:
            recs.append((s, b, x, dz, dw, 1.0, 1.0))
            continue
        e = np.expm1(b / SQRT2)
        recs.append((s, b, x, dz, dw, x / e, e / x))
    c_lo = max([1.0] + [r[5] for r in recs])
    c_hi = max([1.0] + [r[6] for r in recs])
    c = max(c_lo, c_hi)

    rows, by_rung = [], {}
    violations = 0
    far_const = near_const = 0.0
    for s, b, x, dz, dw, cl, cu in recs:
        key = _rung_key(s.depth)
        by_rung[key] = max(by_rung.get(key, 1.0), cl, cu)
        lo = SQRT2 * np.log1p(x / c)
        hi = SQRT2 * np.log1p(c * x)
        rows.append(Row("Prop1-lower", s.sample_id, s.z, s.w, b, lo, None, b - lo, s.rung))
        rows.append(Row("Prop1-upper", s.sample_id, s.z, s.w, b, None, hi, hi - b, s.rung))
        if x == 0:
            continue
        case = prop1prime_classify(abs(s.z - s.w), dz, dw)
        if case.value == "Far":
            add = abs(SQRT2 * b - 2 * np.log(x))
            far_const = max(far_const, add)
            violations += add > 2 * np.log(c) + np.log(4) + tol
        else:
            mult = max(b / x, x / b)
            near_const = max(near_const, mult)
            violations += mult > 2 * c * (1 + tol)
    keys = list(by_rung)
    stability = abs(by_rung[keys[-1]] / by_rung[keys[-2]] - 1) if len(keys) >= 2 else 0.0
    constants = {"c": c, "c_lower": c_lo, "c_upper": c_hi, "c_by_depth": by_rung,
                 "stability": stability, "far_additive": far_const, "near_multiplicative": near_const,
                 "far_bound": 2 * np.log(c) + np.log(4), "near_bound": 2 * c,
                 "prop1prime_violations": violations}
    diag = {"resolution": plan.resolution,
            "max_bracket": max([r[1] for r in results] + [0.0])}
    return _finish(("Prop1-lower", "Prop1-upper"), dom, plan.seed, constants, rows,
                   violations == 0, tol, diag, len(samples))


# --- bounded gaps ------------------------------------------------------------------

STABILITY_TOL = 0.1
GAP_FLOOR = 1e-8


def corollary2_gap(plan: SamplePlan, tol: float = MARGIN_TOL) -> Certificate:
    """Per-rung sups of ``|b - sqrt2 c|`` (simply connected only) and ``|b - sqrt2 k|``.

    Boundedness evidence: the deepest sup lies within 10% of the previous one
    (or both are below 1e-8).  Rows on the deepest rung carry that bound.
    """
    dom = plan.domain
    samples = plan.samples()
    with_c = isinstance(dom, SIMPLY_CONNECTED)

    def evaluate(s: Sample):
        b = bergman_distance(dom, s.z, s.w, plan.resolution)
        k = kobayashi_distance(dom, s.z, s.w, plan.kmax).value
        c = caratheodory_distance(dom, s.z, s.w).value if with_c else None
        return b.value, b.bracket[1], k, c

    results = _pmap(evaluate, samples)
    kinds = (("Cor2-c", 3),) if with_c else ()
    kinds = kinds + (("Cor2-k", 2),)
    rungs = sorted({s.rung for s in samples})
    constants, rows, ok = {}, [], True
    for claim, idx in kinds:
        gaps = [r[0] - SQRT2 * r[idx] for r in results]
        sup = {}
        for s, g in zip(samples, gaps):
            key = _rung_key(s.depth)
            sup[key] = max(sup.get(key, 0.0), abs(g))
        keys = list(sup)
        last, prev = sup[keys[-1]], sup[keys[-2]] if len(keys) >= 2 else sup[keys[-1]]
        if prev <= GAP_FLOOR and last <= GAP_FLOOR:
            ratio, bound = 1.0, GAP_FLOOR
        else:
            ratio, bound = last / prev if prev > 0 else np.inf, max((1 + STABILITY_TOL) * prev, GAP_FLOOR)
            ok &= bool(abs(ratio - 1) <= STABILITY_TOL)
        constants[claim] = {"sup_by_depth": sup, "sup": max(sup.values()), "ratio_last": ratio}
        for s, g in zip(samples, gaps):
            deepest = s.rung == rungs[-1]
            rows.append(Row(claim, s.sample_id, s.z, s.w, g, None, bound if deepest else None,
                            bound - abs(g) if deepest else None, s.rung))
    diag = {"resolution": plan.resolution, "kmax": plan.kmax,
            "max_bracket": max([r[1] for r in results] + [0.0])}
    return _finish([k for k, _ in kinds], dom, plan.seed, constants, rows, ok, tol, diag,
                   len(samples))


# --- ratio limit -------------------------------------------------------------------

PROP3_LAST_TOL = 0.1
PROP3_FLAT = 1e-9


def prop3_bases(domain: Domain) -> tuple:
    """Centre, mid and near-boundary base points on opposite sides of the approach."""
    if isinstance(domain, Annulus):
        m = (1 + domain.r) / 2
        return (complex(-m), complex(0, m), complex(-0.95))
    if isinstance(domain, ConformalDomain):
        return tuple(complex(v) for v in domain.evaluate(np.array([0, 0.5j, -0.95]))[0])
    R = domain.radius if isinstance(domain, Disc) else 1.0
    if isinstance(domain, PuncturedDisc):
        return (complex(-0.5), complex(0, 0.5), complex(-0.95))
    return (0j, complex(0, 0.5 * R), complex(-0.95 * R))


def prop3_sweep(plan: SamplePlan, tol: float = MARGIN_TOL) -> Certificate:
    """``b/(sqrt2 k)`` for three base points while ``w`` descends along the
    inward normal at boundary parameter 0.  Verdict per base: ``|ratio - 1|``
    strictly decreasing over the ladder (or flat below 1e-9) and at most 0.1
    on the last rung.  Row margins are the decrease from the previous rung."""
    dom = plan.domain
    p, n = boundary_frame(dom, 0.0)
    tasks = []
    for bi, z in enumerate(prop3_bases(dom)):
        for j, depth in enumerate(plan.depths):
            tasks.append((bi, j, z, complex(p + depth * n)))

    def evaluate(t):
        _, _, z, w = t
        b = bergman_distance(dom, z, w, plan.resolution)
        k = kobayashi_distance(dom, z, w, plan.kmax).value
        return b.value, b.bracket[1], k

    results = _pmap(evaluate, tasks)
    rows, devs, verdicts = [], {}, {}
    nb = len(plan.depths)
    for i, ((bi, j, z, w), (b, _, k)) in enumerate(zip(tasks, results)):
        dev = abs(b / (SQRT2 * k) - 1)
        devs.setdefault(bi, []).append(dev)
        flat = dev <= PROP3_FLAT
        if j == 0:
            margin = None
        else:
            prev = devs[bi][j - 1]
            margin = 0.0 if (flat and prev <= PROP3_FLAT) else prev - dev
        if j == nb - 1:
            last = PROP3_LAST_TOL - dev
            margin = last if margin is None else min(margin, last)
        rows.append(Row("Prop3", i, z, w, b / (SQRT2 * k), None, None, margin, j))
    for bi, d in devs.items():
        flat = all(v <= PROP3_FLAT for v in d)
        strict = all(d[j + 1] < d[j] for j in range(len(d) - 1))
        verdicts[str(bi)] = "flat" if flat else ("decreasing" if strict else "not decreasing")
    ok = all(v != "not decreasing" for v in verdicts.values()) and \
        all(d[-1] <= PROP3_LAST_TOL for d in devs.values())
    constants = {"deviation_by_base": {str(bi): {f"{plan.depths[j]:g}": v for j, v in enumerate(d)}
                                       for bi, d in devs.items()},
                 "verdict_by_base": verdicts,
                 "bases": [[z.real, z.imag] for z in prop3_bases(dom)]}
    diag = {"resolution": plan.resolution, "kmax": plan.kmax,
            "max_bracket": max([r[1] for r in results] + [0.0])}
    return _finish(("Prop3",), dom, plan.seed, constants, rows, ok, tol, diag, len(tasks))


# --- boundary limit of d * beta ----------------------------------------------------

REMARK_D_TOL = 0.01


def remark_d_limit(plan: SamplePlan, tol: float = MARGIN_TOL) -> Certificate:
    """``d(u) beta(u)`` along inward normals at ``plan.count`` seeded boundary
    parameters (both circles on an annulus); deviation from ``sqrt2/2`` per rung.
    Passes when the deepest rung deviates by at most 0.01 everywhere."""
    dom = plan.domain
    rng = np.random.default_rng(plan.seed)
    thetas = rng.uniform(0, 2 * np.pi, plan.count)
    sides = (False, True) if isinstance(dom, Annulus) else (False,)
    metric = bergman_metric_field(dom)
    rows, dev_by = [], {}
    sid = 0
    for j, depth in enumerate(plan.depths):
        worst = 0.0
        for inner in sides:
            for t in thetas:
                p, n = boundary_frame(dom, float(t), inner)
                u = complex(p + depth * n)
                val = dist_to_boundary(dom, u) * float(metric(np.array([u]))[0])
                dev = abs(val - HALF_SQRT2)
                worst = max(worst, dev)
                last = j == len(plan.depths) - 1
                rows.append(Row("RemarkD", sid, u, u, val,
                                HALF_SQRT2 - REMARK_D_TOL if last else None,
                                HALF_SQRT2 + REMARK_D_TOL if last else None,
                                REMARK_D_TOL - dev if last else None, j))
                sid += 1
        dev_by[f"{depth:g}"] = worst
    constants = {"limit": HALF_SQRT2, "deviation_by_depth": dev_by}
    return _finish(("RemarkD",), dom, plan.seed, constants, rows, True, tol,
                   {"metric": metric.accuracy}, sid)


# --- disc enclosures ---------------------------------------------------------------

REGIMES = ("small-s", "large-s", "b-lower", "b-upper")
SHARPNESS_TOL = {"small-s": 1e-3, "large-s": 1.1e-3, "b-lower": 0.01, "b-upper": 0.01}
SHARPNESS_TARGET = {"small-s": 1.0, "large-s": 2.0, "b-lower": 0.5, "b-upper": float(SQRT2)}
# outer parameter of the iterated limits; the deepest rung is what reaches sqrt 2 within 0.01
OUTER_LADDER = (0.9, 0.99, 0.999, 0.9999, 0.99999)
INNER_LADDER = (1e-1, 1e-2, 1e-3)


def lemma4_sharpness_sweep(regime: str, ladder=None, inner=INNER_LADDER,
                           tol: float = 1e-12) -> Certificate:
    """Sharpness families for the disc enclosures.

    ``small-s``: pairs ``(0, eps)``, ratio (a) tends to 1.  ``large-s``: pairs
    ``(-t, t)``, ratio (a) equals ``1 + t``.  ``b-lower``: ``z = t`` then
    ``w = z + i eta (1 - t)``, ratio (b) tends to 1/2.  ``b-upper``: ``z = t``
    then ``w = eta``, ratio (b) tends to sqrt 2.  Every ratio must stay inside
    the lemma's interval; the extreme one must be within the regime tolerance
    of its target.
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}; expected one of {', '.join(REGIMES)}")
    if regime == "small-s":
        ladder = tuple(ladder or (1e-1, 1e-2, 1e-3))
        pairs = [(0j, complex(e)) for e in ladder]
    elif regime == "large-s":
        ladder = tuple(ladder or (0.9, 0.99, 0.999))
        pairs = [(complex(-t), complex(t)) for t in ladder]
    elif regime == "b-lower":
        ladder = tuple(ladder or OUTER_LADDER)
        pairs = [(complex(t), complex(t, e * (1 - t))) for t in ladder for e in inner]
    else:
        ladder = tuple(ladder or OUTER_LADDER)
        pairs = [(complex(t), complex(e)) for t in ladder for e in inner]
    part_a = regime in ("small-s", "large-s")
    ratio = sharpness_ratio_a if part_a else sharpness_ratio_b
    lo, hi = (1.0, 2.0) if part_a else (0.5, float(SQRT2))
    claim = "Lemma4a" if part_a else "Lemma4b"
    rows, values = [], []
    for i, (z, w) in enumerate(pairs):
        R = float(ratio(z, w))
        values.append(R)
        margin = min(R - lo, hi - R) / max(1.0, abs(R))
        rows.append(Row(claim, i, z, w, R, lo, hi, margin))
    target = SHARPNESS_TARGET[regime]
    attained = values[-1]
    gap = abs(attained - target)
    constants = {"regime": regime, "target": target, "attained": attained, "gap": gap,
                 "tolerance": SHARPNESS_TOL[regime], "ladder": list(ladder)}
    if regime == "small-s":
        constants["closed_form"] = 1 + ladder[-1] / 2
    elif regime == "large-s":
        constants["closed_form"] = 1 + ladder[-1]
    elif regime == "b-lower":
        constants["closed_form"] = 1 / (1 + ladder[-1])
    ok = gap <= SHARPNESS_TOL[regime]
    return _finish((claim,), Disc(), None, constants, rows, ok, tol, {"regime": regime})


ENCLOSURE_SLACK = 1e-12


def lemma4_enclosure(count: int = 100_000, seed: int = 0) -> Certificate:
    """Seeded disc pairs checked against both enclosures (vectorised).

    Half the pairs are uniform in the disc, half sit at log-uniform depths
    down to 1e-8.  Margins are relative to ``max(1, value)``.
    """
    rng = np.random.default_rng(seed)
    half = count // 2

    def points(n):
        uni = np.sqrt(rng.uniform(0, 1, n))
        deep = 1 - 10 ** rng.uniform(-8, 0, n)
        rad = np.where(np.arange(n) < half, uni, deep)
        return rad * np.exp(1j * rng.uniform(0, 2 * np.pi, n))

    z, w = points(count), points(count)
    k = np.asarray(kobayashi_disc(z, w))
    a, b = lemma4a_bounds(z, w), lemma4b_bounds(z, w)
    scale = np.maximum(1.0, k)
    ma = np.minimum(k - a.lower, a.upper - k) / scale
    mb = np.minimum(k - b.lower, b.upper - k) / scale
    rows = []
    # only the worst sample of each claim is kept as a row; the full set is regenerated from the seed
    for claim, m, bnd in (("Lemma4a", ma, a), ("Lemma4b", mb, b)):
        i = int(np.argmin(m))
        rows.append(Row(claim, i, complex(z[i]), complex(w[i]), float(k[i]),
                        float(bnd.lower[i]), float(bnd.upper[i]), float(m[i])))
    constants = {"violations_a": int(np.sum(ma < -ENCLOSURE_SLACK)),
                 "violations_b": int(np.sum(mb < -ENCLOSURE_SLACK)),
                 "worst_a": float(ma.min()), "worst_b": float(mb.min())}
    return _finish(("Lemma4a", "Lemma4b"), Disc(), seed, constants, rows, True, ENCLOSURE_SLACK,
                   {"quantity": "b/sqrt2"}, count)


# --- monotonicity under inclusion --------------------------------------------------

NESTING_SAMPLES = 4096


def sample_interior(domain: Domain, n: int, rng, margin: float = 0.0) -> np.ndarray:
    """``n`` points uniform in the domain with boundary distance at least ``margin``."""
    if isinstance(domain, Disc):
        B = domain.radius
    elif isinstance(domain, ConformalDomain):
        B = float(np.abs(domain.evaluate(np.exp(2j * np.pi * np.arange(512) / 512))[0]).max()) * 1.01
    else:
        B = 1.0
    out = []
    while len(out) < n:
        cand = rng.uniform(-B, B, 4 * n) + 1j * rng.uniform(-B, B, 4 * n)
        cand = cand[contains_many(domain, cand)]
        for p in cand:
            if margin <= 0 or dist_to_boundary(domain, complex(p)) >= margin:
                out.append(complex(p))
                if len(out) == n:
                    break
    return np.array(out)


def monotonicity_check(inner: Domain, outer: Domain, points=None, count: int = 100,
                       seed: int = 0, tol: float = MARGIN_TOL) -> Certificate:
    """``K_inner >= K_outer`` and ``M_inner >= M_outer`` at common points.

    Nesting is checked first on 4096 seeded points of ``inner``.  Without
    explicit points, ``count`` seeded points at boundary distance >= 0.05 in
    ``inner`` are used.  Margins are relative differences.
    """
    rng = np.random.default_rng(seed)
    probe = sample_interior(inner, NESTING_SAMPLES, rng)
    bad = ~contains_many(outer, probe)
    if bad.any():
        raise NotNested(f"{probe[bad][0]!r} lies in {inner!r} but not in {outer!r}")
    if points is None:
        points = sample_interior(inner, count, rng, margin=0.05)
    points = [as_point(p) for p in points]

    def evaluate(p):
        return (kernel_value(inner, p), kernel_value(outer, p),
                m_invariant(inner, p), m_invariant(outer, p))

    results = _pmap(evaluate, points)
    rows = []
    for i, (p, (ki, ko, mi, mo)) in enumerate(zip(points, results)):
        rows.append(Row("Monotonicity", i, p, p, ki, ko, None, (ki - ko) / ko))
        rows.append(Row("Monotonicity", i, p, p, mi, mo, None, (mi - mo) / mo))
    km = [r.margin for r in rows[0::2]]
    mm = [r.margin for r in rows[1::2]]
    constants = {"kernel_min_relative": min(km) if km else 0.0,
                 "m_min_relative": min(mm) if mm else 0.0,
                 "violations": sum(m < -tol for m in km + mm)}
    diag = {"inner": domain_label(inner), "outer": domain_label(outer),
            "nesting_samples": NESTING_SAMPLES}
    return _finish(("Monotonicity",), inner, seed, constants, rows, True, tol, diag, len(points))


# --- isolated boundary point --------------------------------------------------------

ISOLATED_STEP = 0.5
ISOLATED_B_TOL = 1e-9


def isolated_point_check(depths=DEPTH_LADDER, z: complex = 0.5, kmax: int = DEFAULT_KMAX,
                         tol: float = MARGIN_TOL) -> Certificate:
    """On the punctured disc with ``w = depth`` approaching the puncture:
    ``k(z, w)`` must grow by more than 0.5 per rung, ``k >= k_disc``, and
    ``b`` must equal the disc value to 1e-9."""
    dom = PuncturedDisc()
    z = as_point(z)
    rows, ks = [], []
    for j, depth in enumerate(depths):
        w = complex(depth)
        k = kobayashi_distance(dom, z, w, kmax).value
        kd = float(kobayashi_disc(z, w))
        b = bergman_distance(dom, z, w).value
        bd = float(bergman_disc(z, w))
        if ks:
            need = ks[-1] + ISOLATED_STEP
            rows.append(Row("IsolatedPoint", j, z, w, k, need, None, k - need, j))
        ks.append(k)
        rows.append(Row("IsolatedPoint", j, z, w, k, kd, None, k - kd, j))
        rows.append(Row("IsolatedPoint", j, z, w, b, bd, bd, ISOLATED_B_TOL - abs(b - bd), j))
    increments = [ks[j + 1] - ks[j] for j in range(len(ks) - 1)]
    constants = {"k_by_depth": {f"{d:g}": k for d, k in zip(depths, ks)},
                 "increments": increments, "required_increment": ISOLATED_STEP}
    return _finish(("IsolatedPoint",), dom, None, constants, rows, True, tol,
                   {"kmax": kmax}, len(depths))
