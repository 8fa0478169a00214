"""Distance engines: integrated Bergman distance, Kobayashi distance through
universal coverings, and the Caratheodory distance of simply connected domains.

Graph geodesics work in a chart ``u -> z`` from the whole parameter plane
onto the domain, so every grid node and every relaxed vertex is interior by
construction:

* disc: ``z = R tanh|u| u/|u|`` (radial parameter is hyperbolic length);
* conformal image: the disc chart followed by ``phi``;
* annulus: ``u = sigma + i theta`` with ``|z| = r + (1 - r) expit(sigma)`` and
  ``theta`` unwrapped, so lifts of ``w`` by ``2 pi`` pick the homotopy class.

A 16-neighbour Dijkstra on a grid in the chart gives a first path.  It is
resampled by metric arclength and relaxed by damped Newton steps that move
each vertex along its normal; the reported length is that of a cubic spline
through the relaxed vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import solveh_banded
from scipy.special import expit, logit

from . import _kernels
from .disc import bergman_disc, geodesic_arc, kobayashi_disc
from .domains import (SQRT2, Annulus, ConformalDomain, Disc, Domain, PuncturedDisc,
                      pushforward_metric_many)
from .errors import (CoincidentPoints, MetricEvaluationFailed, NoPath, OrbitTruncationUnsafe,
                     PointOutsideDomain, PointsTooCloseToBoundary, UnsupportedDomain)
from .geometry import as_point, contains, dist_to_boundary
from .kernel import SERIES_FLOOR, annulus_bergman_metric

DEFAULT_RESOLUTION = 64
DEFAULT_KMAX = 8
PATH_VERTICES = 96
_SUBSAMPLES = 4
_FINE_SUBSAMPLES = 16

# 16-neighbour stencil: the 8 king moves plus the 8 knight moves
STENCIL16 = np.array([(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1),
                      (2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)],
                     dtype=np.int64)


class Method(str, Enum):
    CLOSED_FORM = "ClosedForm"
    PULLBACK = "Pullback"
    GRAPH_GEODESIC = "GraphGeodesic"
    COVERING_ORBIT = "CoveringOrbit"


@dataclass(frozen=True)
class DistanceEstimate:
    """A distance value, the route that produced it and ``(lower, upper)`` slack."""

    value: float
    method: Method
    bracket: tuple = (0.0, 0.0)
    details: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {"value": self.value, "method": self.method.value,
                "bracket": [float(self.bracket[0]), float(self.bracket[1])],
                "details": dict(self.details)}


@dataclass(frozen=True, eq=False)
class MetricField:
    """Vectorised conformal density ``z -> beta(z; 1)`` on ``domain``.

    ``floor`` is the smallest boundary distance at which the density is
    trusted; ``accuracy`` describes its error model.
    """

    domain: Domain
    density: Callable
    floor: float
    accuracy: str
    name: str = "bergman"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            out = np.asarray(self.density(z), dtype=float)
        if not np.all(np.isfinite(out)) or np.any(out <= 0):
            raise MetricEvaluationFailed(f"{self.name} density not finite and positive on {self.domain!r}")
        return out


@lru_cache(maxsize=32)
def bergman_metric_field(domain: Domain) -> MetricField:
    """Bergman density with the most accurate route available for ``domain``."""
    if isinstance(domain, (Disc, PuncturedDisc)):
        R = domain.radius if isinstance(domain, Disc) else 1.0
        return MetricField(domain, lambda z: SQRT2 * R / ((R - np.abs(z)) * (R + np.abs(z))),
                           0.0, "closed form")
    if isinstance(domain, ConformalDomain):
        return MetricField(domain, lambda z: pushforward_metric_many(domain, z),
                           SERIES_FLOOR, "pushforward, Newton residual 1e-12")
    if isinstance(domain, Annulus):
        return MetricField(domain, lambda z: annulus_bergman_metric(domain.r, z),
                           SERIES_FLOOR, "resummed series, tail below 1e-10")
    raise UnsupportedDomain(f"no Bergman metric for {domain!r}")


# --- curves ----------------------------------------------------------------------

@dataclass(frozen=True)
class Curve:
    """Sampled curve, parameter implicitly uniform on [0, 1]."""

    samples: np.ndarray
    max_step: float = np.inf

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex).ravel()
        if len(s) < 2:
            raise ValueError("a curve needs at least 2 samples")
        if np.any(np.abs(np.diff(s)) > self.max_step):
            raise ValueError(f"chord longer than max_step {self.max_step}")
        object.__setattr__(self, "samples", s)

    @property
    def endpoints(self):
        return complex(self.samples[0]), complex(self.samples[-1])


def disc_geodesic_curve(z, w, n: int) -> Curve:
    """Samples of the disc geodesic from ``z`` to ``w`` (arc orthogonal to the circle)."""
    z, w = as_point(z), as_point(w)
    if z == w:
        raise CoincidentPoints("geodesic needs distinct endpoints")
    if n < 2:
        raise ValueError("n must be at least 2")
    if abs(z) >= 1 or abs(w) >= 1:
        raise PointOutsideDomain("geodesic endpoints must lie in the unit disc")
    return Curve(geodesic_arc(z, w, n))


def integrate_metric(curve: Curve, metric) -> float:
    """Midpoint rule ``sum beta(mid_i) |chord_i|``."""
    s = curve.samples if isinstance(curve, Curve) else np.asarray(curve, dtype=complex)
    chords = np.abs(np.diff(s))
    if not np.any(chords):
        return 0.0
    mids = 0.5 * (s[1:] + s[:-1])
    beta = metric(mids) if isinstance(metric, MetricField) else np.asarray(metric(mids), dtype=float)
    if not np.all(np.isfinite(beta)):
        raise MetricEvaluationFailed("metric not finite along the curve")
    return float(beta @ chords)


# --- charts -------------------------------------------------------------------------

class _Chart:
    """Map from the parameter plane (as complex ``u``) onto the domain."""

    periodic = False

    def __call__(self, u):
        raise NotImplementedError

    def lift(self, z):
        raise NotImplementedError


class _DiscChart(_Chart):
    def __init__(self, radius=1.0):
        self.radius = radius

    def __call__(self, u):
        u = np.asarray(u, dtype=complex)
        a = np.abs(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(a > 0, self.radius * np.tanh(a) * u / a, 0j)
        return out

    def lift(self, z):
        a = abs(z) / self.radius
        return 0j if a == 0 else complex(np.arctanh(a) * z / abs(z))


class _ConformalChart(_DiscChart):
    def __init__(self, domain: ConformalDomain):
        super().__init__(1.0)
        self.domain = domain

    def __call__(self, u):
        return self.domain.evaluate(super().__call__(u))[0]

    def lift(self, z):
        return super().lift(complex(self.domain.inverse(z)[0]))


class _AnnulusChart(_Chart):
    periodic = True

    def __init__(self, r):
        self.r = r

    def __call__(self, u):
        u = np.asarray(u, dtype=complex)
        rho = self.r + (1.0 - self.r) * expit(u.real)
        return rho * np.exp(1j * u.imag)

    def lift(self, z):
        return complex(logit((abs(z) - self.r) / (1.0 - self.r)), np.angle(z))


def _chart_for(domain: Domain) -> _Chart:
    if isinstance(domain, Disc):
        return _DiscChart(domain.radius)
    if isinstance(domain, PuncturedDisc):
        return _DiscChart(1.0)
    if isinstance(domain, ConformalDomain):
        return _ConformalChart(domain)
    if isinstance(domain, Annulus):
        return _AnnulusChart(domain.r)
    raise UnsupportedDomain(f"no chart for {domain!r}")


# --- graph geodesics -----------------------------------------------------------------

def _axis(lo: float, hi: float, n: int, exact) -> np.ndarray:
    """Uniform axis with the coordinates in ``exact`` inserted as grid lines."""
    xs = np.union1d(np.linspace(lo, hi, n), np.asarray(exact, dtype=float))
    keep = np.concatenate([[True], np.diff(xs) > 1e-12 * (hi - lo)])
    return xs[keep]


def _grid_dijkstra(chart, metric, lo: complex, hi: complex, n: int, start: complex, targets):
    """Shortest grid paths from ``start`` to each of ``targets`` (chart coordinates).

    Endpoints are exact grid nodes.  Returns ``(cost, target index, path)``
    sorted by cost.
    """
    pts = np.array([start] + list(targets))
    xs = _axis(lo.real, hi.real, n, pts.real)
    ys = _axis(lo.imag, hi.imag, n, pts.imag)
    nx, ny = len(xs), len(ys)
    U = xs[:, None] + 1j * ys[None, :]
    Z = chart(U)
    weights = np.full((nx, ny, len(STENCIL16)), np.inf)
    for k, (di, dj) in enumerate(STENCIL16):
        i0, i1 = max(0, -di), nx - max(0, di)
        j0, j1 = max(0, -dj), ny - max(0, dj)
        a = U[i0:i1, j0:j1]
        b = U[i0 + di:i1 + di, j0 + dj:j1 + dj]
        chord = np.abs(Z[i0 + di:i1 + di, j0 + dj:j1 + dj] - Z[i0:i1, j0:j1])
        weights[i0:i1, j0:j1, k] = metric(chart(0.5 * (a + b))) * chord

    def node(p):
        return int(np.argmin(np.abs(xs - p.real))) * ny + int(np.argmin(np.abs(ys - p.imag)))

    s = node(start)
    tnodes = np.array([node(t) for t in targets], dtype=np.int64)
    dist, pred = _kernels.dijkstra_grid(weights, STENCIL16, s, tnodes)
    paths = []
    for idx in np.argsort(dist[tnodes], kind="stable"):
        t = tnodes[idx]
        if not np.isfinite(dist[t]):
            continue
        seq = [int(t)]
        while seq[-1] != s:
            seq.append(int(pred[seq[-1]]))
            if seq[-1] < 0:
                raise NoPath("broken predecessor chain")
        seq = np.array(seq[::-1])
        paths.append((float(dist[t]), int(idx), U.ravel()[seq]))
    if not paths:
        raise NoPath("no grid path between the points; increase the resolution")
    return paths


class _Functional:
    """Discretised length of ``chart o (piecewise linear u-path)``.

    Each segment is integrated with a ``sub``-point midpoint rule.  Vertices
    move only along fixed transversal directions, so a segment cost depends
    on two scalars and the Hessian is tridiagonal.
    """

    def __init__(self, chart, metric, sub):
        self.chart, self.metric = chart, metric
        self.frac = np.arange(sub + 1) / sub
        self.mfrac = (np.arange(sub) + 0.5) / sub

    def costs(self, a, b):
        a, b = a[..., None], b[..., None]
        d = b - a
        Z = self.chart(a + d * self.frac)
        mids = self.chart(a + d * self.mfrac)
        beta = self.metric(mids.ravel()).reshape(mids.shape)
        return np.sum(beta * np.abs(np.diff(Z, axis=-1)), axis=-1)

    def value(self, V):
        return float(self.costs(V[:-1], V[1:]).sum())

    def local_derivatives(self, V, N, hg=1e-7, hh=1e-4):
        """Per-segment cost, gradient (nseg, 2) and Hessian (nseg, 2, 2) in the
        offsets of the segment's two vertices along ``N``."""
        a, b, na, nb = V[:-1], V[1:], N[:-1], N[1:]
        steps = [(0, 0), (hg, 0), (-hg, 0), (0, hg), (0, -hg),
                 (hh, 0), (-hh, 0), (0, hh), (0, -hh),
                 (hh, hh), (hh, -hh), (-hh, hh), (-hh, -hh)]
        S = np.array(steps)
        c = self.costs(a[None, :] + S[:, 0, None] * na, b[None, :] + S[:, 1, None] * nb)
        g = np.stack([(c[1] - c[2]) / (2 * hg), (c[3] - c[4]) / (2 * hg)], axis=1)
        H = np.empty((len(a), 2, 2))
        H[:, 0, 0] = (c[5] - 2 * c[0] + c[6]) / hh ** 2
        H[:, 1, 1] = (c[7] - 2 * c[0] + c[8]) / hh ** 2
        H[:, 0, 1] = H[:, 1, 0] = (c[9] - c[10] - c[11] + c[12]) / (4 * hh ** 2)
        return c[0], g, H


def _normals(chart, metric, V, h=1e-7):
    """Transversal directions in the chart: images perpendicular to the curve
    in the domain, scaled to unit metric length.  Zero at the endpoints."""
    t = np.zeros_like(V)
    t[1:-1] = V[2:] - V[:-2]
    P = V[1:-1]
    Jx = (chart(P + h) - chart(P - h)) / (2 * h)
    Jy = (chart(P + 1j * h) - chart(P - 1j * h)) / (2 * h)
    T = Jx * t[1:-1].real + Jy * t[1:-1].imag
    target = 1j * T
    det = Jx.real * Jy.imag - Jy.real * Jx.imag
    na = (target.real * Jy.imag - Jy.real * target.imag) / det
    nb = (Jx.real * target.imag - target.real * Jx.imag) / det
    n = na + 1j * nb
    length = metric(chart(P)) * np.abs(T)
    N = np.zeros_like(V)
    N[1:-1] = n / np.where(length > 0, length, 1.0)
    return N


def _newton(F: _Functional, V, N, maxiter=50):
    val = F.value(V)
    m = len(V) - 2
    lam = 1e-6
    for _ in range(maxiter):
        _, g, H = F.local_derivatives(V, N)
        grad = g[:-1, 1] + g[1:, 0]
        ab = np.zeros((2, m))
        ab[1] = H[:-1, 1, 1] + H[1:, 0, 0]
        ab[0, 1:] = H[1:-1, 0, 1]
        diag = np.abs(ab[1])
        floor = 1e-12 * diag.max()
        while True:
            damped = ab.copy()
            damped[1] += lam * diag + floor
            try:
                step = solveh_banded(damped, -grad)
                break
            except np.linalg.LinAlgError:
                lam = max(lam * 10.0, 1e-3)
        trial = V + np.concatenate([[0.0], step, [0.0]]) * N
        try:
            tval = F.value(trial)
        except MetricEvaluationFailed:
            tval = np.inf
        if tval < val:
            decrease = val - tval
            V, val = trial, tval
            lam = max(lam / 10.0, 1e-12)
            if decrease <= 1e-15 * val:
                break
        else:
            lam *= 10.0
            if lam > 1e10:
                break
    return V, val


def _resample(path: np.ndarray, chart, metric, count: int) -> np.ndarray:
    """``count`` vertices spread evenly in metric arclength along a polyline."""
    Z = chart(path)
    mids = chart(0.5 * (path[1:] + path[:-1]))
    seg = metric(mids) * np.abs(np.diff(Z))
    s = np.concatenate([[0.0], np.cumsum(seg)])
    if s[-1] == 0:
        return path[[0, -1]]
    target = np.linspace(0.0, s[-1], count)
    out = np.interp(target, s, path.real) + 1j * np.interp(target, s, path.imag)
    out[0], out[-1] = path[0], path[-1]
    return out


def _relax(chart, metric, verts: np.ndarray, rounds: int = 8):
    """Alternate normal-offset Newton with arclength re-spacing; returns
    (vertices, value on a finer quadrature)."""
    F = _Functional(chart, metric, _SUBSAMPLES)
    V = np.array(verts, dtype=complex)
    if len(V) > 2:
        prev = np.inf
        for _ in range(rounds):
            V, val = _newton(F, V, _normals(chart, metric, V))
            if prev - val <= 1e-13 * val:
                break
            prev = val
            V = _resample(V, chart, metric, len(V))
    fine = _Functional(chart, metric, _FINE_SUBSAMPLES)
    return V, fine.value(V)


def _spline_length(chart, metric, V, nq: int = 8) -> float:
    """Length of the cubic spline through the vertices (chart coordinates),
    parameterised by cumulative metric arclength, by Gauss-Legendre per span.

    Length is stationary at a geodesic, so smoothing the kinks of the relaxed
    polyline removes most of its discretisation error.
    """
    if len(V) < 4:
        return _Functional(chart, metric, _FINE_SUBSAMPLES).value(V)
    mids = chart(0.5 * (V[1:] + V[:-1]))
    seg = metric(mids) * np.abs(np.diff(chart(V)))
    t = np.concatenate([[0.0], np.cumsum(seg)])
    cs = CubicSpline(t, np.column_stack([V.real, V.imag]))
    x, wq = np.polynomial.legendre.leggauss(nq)
    a, b = t[:-1, None], t[1:, None]
    tq = (a + 0.5 * (b - a) * (x + 1.0)).ravel()
    wt = (0.5 * (b - a) * wq).ravel()
    P, dP = cs(tq), cs(tq, 1)
    u = P[:, 0] + 1j * P[:, 1]
    du = dP[:, 0] + 1j * dP[:, 1]
    speed = np.abs(du)
    e = du / np.where(speed > 0, speed, 1.0)
    h = 1e-6
    dz = (chart(u + h * e) - chart(u - h * e)) / (2 * h) * speed
    return float(np.sum(wt * metric(chart(u)) * np.abs(dz)))


def _refine(V: np.ndarray) -> np.ndarray:
    out = np.empty(2 * len(V) - 1, dtype=complex)
    out[0::2] = V
    out[1::2] = 0.5 * (V[1:] + V[:-1])
    return out


def graph_geodesic(domain: Domain, metric: MetricField | None, z, w,
                   resolution: int = DEFAULT_RESOLUTION) -> DistanceEstimate:
    """Upper estimate of the integrated distance by graph search plus relaxation.

    The bracket is the change in value when the relaxed path's vertex count
    is doubled and the path relaxed again.
    """
    z, w = as_point(z), as_point(w)
    metric = metric if metric is not None else bergman_metric_field(domain)
    for p in (z, w):
        if not contains(domain, p):
            raise PointOutsideDomain(f"{p!r} is not inside {domain!r}")
        if dist_to_boundary(domain, p) < metric.floor:
            raise PointsTooCloseToBoundary(f"{p!r} is closer to the boundary than {metric.floor:g}")
    if z == w:
        return DistanceEstimate(0.0, Method.GRAPH_GEODESIC, (0.0, 0.0), {"resolution": resolution})
    resolution = int(resolution)
    if resolution < 8:
        raise NoPath("resolution below 8 cannot represent a path")
    chart = _chart_for(domain)
    uz, uw = chart.lift(z), chart.lift(w)
    if chart.periodic:
        # nearest lift of w plus the nearest one on the other side of z
        k0 = np.round((uz.imag - uw.imag) / (2 * np.pi))
        base = uw + 2j * np.pi * k0
        other = base + (2j * np.pi if base.imag <= uz.imag else -2j * np.pi)
        targets = [base, other]
        xs = [uz.real, uw.real, 0.0]
    else:
        targets = [uw]
        xs = [uz.real, uw.real]
    pts = np.array([uz] + targets)
    lo = complex(min(min(xs), pts.real.min()), pts.imag.min())
    hi = complex(max(max(xs), pts.real.max()), pts.imag.max())
    span = max(hi.real - lo.real, hi.imag - lo.imag)
    pad = 0.25 * span + 0.5
    lo, hi = lo - complex(pad, pad), hi + complex(pad, pad)
    paths = _grid_dijkstra(chart, metric, lo, hi, resolution, uz, targets)
    best = None
    # relax the two cheapest homotopy classes and keep the shorter result
    for gdist, idx, path in paths[:2]:
        path = path.copy()
        path[0], path[-1] = uz, targets[idx]
        verts = _resample(path, chart, metric, PATH_VERTICES)
        verts[0], verts[-1] = uz, targets[idx]
        V, val = _relax(chart, metric, verts)
        if best is None or val < best[1]:
            best = (V, val, gdist)
    V, val, gdist = best
    coarse = _spline_length(chart, metric, V)
    V2, _ = _relax(chart, metric, _refine(V))
    value = _spline_length(chart, metric, V2)
    delta = abs(value - coarse)
    details = {"resolution": resolution, "grid_value": gdist, "vertices": len(V2),
               "coarse_value": coarse}
    return DistanceEstimate(value, Method.GRAPH_GEODESIC, (delta, delta), details)


# --- dispatch --------------------------------------------------------------------------

def _interior(domain: Domain, *pts):
    out = []
    for p in pts:
        p = as_point(p)
        if not contains(domain, p):
            raise PointOutsideDomain(f"{p!r} is not inside {domain!r}")
        out.append(p)
    return out


def bergman_distance(domain: Domain, z, w, resolution: int = DEFAULT_RESOLUTION) -> DistanceEstimate:
    """Integrated Bergman distance, by the exact route where one exists."""
    z, w = _interior(domain, z, w)
    if isinstance(domain, Disc):
        R = domain.radius
        return DistanceEstimate(bergman_disc(z / R, w / R), Method.CLOSED_FORM)
    if isinstance(domain, PuncturedDisc):
        # same kernel as the disc, so the same distance
        return DistanceEstimate(bergman_disc(z, w), Method.CLOSED_FORM)
    if isinstance(domain, ConformalDomain):
        zz, ww = domain.inverse(np.array([z, w]))
        return DistanceEstimate(bergman_disc(zz, ww), Method.PULLBACK)
    if isinstance(domain, Annulus):
        return graph_geodesic(domain, bergman_metric_field(domain), z, w, resolution)
    raise UnsupportedDomain(f"no Bergman distance for {domain!r}")


def _orbit_min(dist_of_shift: Callable, kmax: int):
    ks = np.arange(-kmax, kmax + 1)
    vals = np.array([dist_of_shift(int(k)) for k in ks])
    i = int(np.argmin(vals))
    best = float(vals[i])
    edge = float(min(vals[0], vals[-1]))
    if kmax < 1 or not edge > best:
        raise OrbitTruncationUnsafe(
            f"orbit minimum not separated from the |k| = {kmax} translates")
    return best, int(ks[i]), edge - best


def _halfplane_distance(s1: complex, s2: complex) -> float:
    """Kobayashi distance of the left half-plane, stable near the boundary."""
    x1, x2 = -s1.real, -s2.real
    num = abs(s1 - s2)
    den = abs(s1 + np.conj(s2))
    m = num / den
    one_minus_m2 = 4.0 * x1 * x2 / (den * den)
    return float(np.log1p(m) - 0.5 * np.log(one_minus_m2))


def _strip_distance(s1: complex, s2: complex, logr: float) -> float:
    """Kobayashi distance of the strip ``log r < Re s < 0``."""
    W = -logr
    t1 = np.pi * (s1.real - logr) / W
    t2 = np.pi * (s2.real - logr) / W
    delta = -np.pi * (s1.imag - s2.imag) / W
    sh = np.sinh(0.5 * delta) ** 2
    den = sh + np.sin(0.5 * (t1 + t2)) ** 2
    m = np.sqrt((sh + np.sin(0.5 * (t1 - t2)) ** 2) / den)
    return float(np.log1p(m) + 0.5 * np.log(den) - 0.5 * np.log(np.sin(t1) * np.sin(t2)))


def kobayashi_distance(domain: Domain, z, w, kmax: int = DEFAULT_KMAX) -> DistanceEstimate:
    """Kobayashi distance; coverings ``z = e^s`` for the annulus and punctured disc.

    On the covers the distance grows monotonically with the deck shift, so the
    orbit minimum is certified once the ``|k| = kmax`` translates exceed it.
    """
    z, w = _interior(domain, z, w)
    if isinstance(domain, Disc):
        R = domain.radius
        return DistanceEstimate(kobayashi_disc(z / R, w / R), Method.CLOSED_FORM)
    if isinstance(domain, ConformalDomain):
        zz, ww = domain.inverse(np.array([z, w]))
        return DistanceEstimate(kobayashi_disc(zz, ww), Method.PULLBACK)
    if isinstance(domain, (PuncturedDisc, Annulus)):
        s1, s2 = complex(np.log(z)), complex(np.log(w))
        if isinstance(domain, PuncturedDisc):
            f = lambda k: _halfplane_distance(s1, s2 + 2j * np.pi * k)
        else:
            logr = float(np.log(domain.r))
            f = lambda k: _strip_distance(s1, s2 + 2j * np.pi * k, logr)
        value, k, excess = _orbit_min(f, int(kmax))
        return DistanceEstimate(value, Method.COVERING_ORBIT, (0.0, 0.0),
                                {"kmax": int(kmax), "deck_shift": k, "truncation_margin": excess})
    raise UnsupportedDomain(f"no Kobayashi distance for {domain!r}")


def caratheodory_distance(domain: Domain, z, w) -> DistanceEstimate:
    """Caratheodory distance; equal to Kobayashi on simply connected domains."""
    if not isinstance(domain, (Disc, ConformalDomain)):
        raise UnsupportedDomain("Caratheodory distance is only provided on simply connected domains")
    est = kobayashi_distance(domain, z, w)
    return DistanceEstimate(est.value, Method.PULLBACK)
