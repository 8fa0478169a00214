"""Complex-plane primitives, boundary sampling and the boundary distance d_D."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .domains import Annulus, ConformalDomain, Disc, Domain, PuncturedDisc
from .errors import DegenerateQuery, PointOutsideDomain, TooCoarse

BOUNDARY_TOL = 1e-14
DEFAULT_ACCURACY = 1e-6
# samples of the coarse boundary polyline used to bracket the nearest point
_SEARCH_SAMPLES = 4096

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"(?:\s*([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$"
)


def as_point(z) -> complex:
    """Coerce to a finite complex number (the ComplexPoint of the API).

    Accepts numbers, ``(re, im)`` pairs and strings such as ``"0.3-0.2i"``.
    """
    if isinstance(z, str):
        z = parse_complex(z)
    elif isinstance(z, (tuple, list)) and len(z) == 2:
        z = complex(float(z[0]), float(z[1]))
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"point must be finite, got {z!r}")
    return z


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    # pure imaginary forms: "i", "-i", "0.5i"
    m = re.fullmatch(r"([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]", s)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -mag if m.group(1) == "-" else mag)
    m = _COMPLEX_RE.match(s)
    if not m or m.group(1) is None:
        raise ValueError(f"cannot parse complex number {text!r}")
    re_part = float(m.group(1))
    if m.group(2) is None:
        return complex(re_part, 0.0)
    im = float(m.group(3)) if m.group(3) else 1.0
    return complex(re_part, -im if m.group(2) == "-" else im)


@dataclass(frozen=True)
class BoundaryPolyline:
    """Sampled boundary: one closed loop per component (closing vertex implicit).

    ``loops[0]`` is the outer component, counterclockwise.  ``accuracy`` is the
    relative accuracy promised for boundary-distance queries served by this
    polyline once adaptively refined.
    """

    loops: tuple
    accuracy: float = DEFAULT_ACCURACY
    refine: bool = True

    @property
    def component_count(self) -> int:
        return len(self.loops)

    @property
    def vertices(self) -> np.ndarray:
        return np.concatenate(self.loops)


def boundary_polyline(domain: Domain, n: int, accuracy: float = DEFAULT_ACCURACY) -> BoundaryPolyline:
    """``n`` boundary samples per component at uniform (pre-image) angle."""
    if n < 8:
        raise TooCoarse(f"need at least 8 boundary samples per component, got {n}")
    t = 2 * np.pi * np.arange(n) / n
    circle = np.exp(1j * t)
    if isinstance(domain, Disc):
        loops = (domain.radius * circle,)
    elif isinstance(domain, Annulus):
        loops = (circle, domain.r * circle)
    elif isinstance(domain, PuncturedDisc):
        # the puncture is a one-vertex component
        loops = (circle, np.zeros(1, dtype=complex))
    elif isinstance(domain, ConformalDomain):
        loops = (domain.evaluate(circle)[0],)
    else:
        raise TypeError(f"unsupported domain {domain!r}")
    return BoundaryPolyline(tuple(np.asarray(l, dtype=complex) for l in loops), accuracy)


def contains(domain: Domain, z) -> bool:
    """Open-domain membership; boundary points report False."""
    z = as_point(z)
    a = abs(z)
    if isinstance(domain, Disc):
        return a < domain.radius
    if isinstance(domain, Annulus):
        return domain.r < a < 1.0
    if isinstance(domain, PuncturedDisc):
        return 0.0 < a < 1.0
    if isinstance(domain, ConformalDomain):
        return bool(np.isfinite(domain.inverse(z, strict=False)[0]))
    raise TypeError(f"unsupported domain {domain!r}")


def contains_many(domain: Domain, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    a = np.abs(z)
    if isinstance(domain, Disc):
        return a < domain.radius
    if isinstance(domain, Annulus):
        return (a > domain.r) & (a < 1.0)
    if isinstance(domain, PuncturedDisc):
        return (a > 0.0) & (a < 1.0)
    return np.isfinite(domain.inverse(z, strict=False))


def dist_to_boundary(domain: Domain, z) -> float:
    """Euclidean distance from an interior point to the boundary.

    Discs, annuli and the punctured disc use exact formulas.  Conformal images
    bracket the nearest boundary point on a 4096-sample polyline and then
    minimise ``|phi(e^{it}) - z|`` over the bracketing parameter interval.
    """
    z = as_point(z)
    if not contains(domain, z):
        raise PointOutsideDomain(f"{z!r} is not inside {domain!r}")
    a = abs(z)
    if isinstance(domain, Disc):
        d = domain.radius - a
    elif isinstance(domain, Annulus):
        d = min(a - domain.r, 1.0 - a)
    elif isinstance(domain, PuncturedDisc):
        d = min(a, 1.0 - a)
    else:
        d = _conformal_distance(domain, z)
    if d < BOUNDARY_TOL:
        raise DegenerateQuery(f"{z!r} lies within {BOUNDARY_TOL:g} of the boundary")
    return float(d)


def dist_to_boundary_many(domain: Domain, z) -> np.ndarray:
    """Vectorised :func:`dist_to_boundary` without membership checks."""
    z = np.asarray(z, dtype=complex)
    a = np.abs(z)
    if isinstance(domain, Disc):
        return domain.radius - a
    if isinstance(domain, Annulus):
        return np.minimum(a - domain.r, 1.0 - a)
    if isinstance(domain, PuncturedDisc):
        return np.minimum(a, 1.0 - a)
    return np.array([_conformal_distance(domain, complex(p)) for p in z.ravel()]).reshape(z.shape)


@lru_cache(maxsize=32)
def _search_polyline(domain: ConformalDomain, n: int):
    t = 2 * np.pi * np.arange(n) / n
    pts = domain.evaluate(np.exp(1j * t))[0]
    return t, pts, float(np.abs(np.roll(pts, -1) - pts).max())


def _segment_distances(p, a, b):
    ab = b - a
    L2 = np.abs(ab) ** 2
    s = np.clip(((p - a) * ab.conj()).real / L2, 0.0, 1.0)
    return np.abs(p - (a + s * ab))


def polyline_distance(poly: BoundaryPolyline, z) -> float:
    """Distance from ``z`` to the (unrefined) sampled boundary."""
    best = np.inf
    for loop in poly.loops:
        if len(loop) == 1:
            best = min(best, abs(z - loop[0]))
            continue
        best = min(best, float(_segment_distances(z, loop, np.roll(loop, -1)).min()))
    return best


def _conformal_distance(domain: ConformalDomain, z: complex, n: int = _SEARCH_SAMPLES) -> float:
    t, pts, hmax = _search_polyline(domain, n)
    seg = _segment_distances(z, pts, np.roll(pts, -1))
    dmin = seg.min()
    # any segment that could hide the true nearest point; sagitta slack is generous
    slack = 4.0 * hmax ** 2 + 1e-12
    cand = np.flatnonzero(seg <= dmin + slack)
    h = 2 * np.pi / n
    f = lambda s: abs(domain.evaluate(np.exp(1j * s))[0] - z)
    # chords can undercut the curve, so only points on the curve seed the minimum
    best = float(np.abs(pts - z).min())
    # contiguous candidate runs become bracketing intervals
    runs = np.split(cand, np.flatnonzero(np.diff(cand) > 1) + 1)
    for run in runs:
        lo, hi = t[run[0]] - h, t[run[-1]] + 2 * h
        res = minimize_scalar(f, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-13, "maxiter": 200})
        best = min(best, float(res.fun))
    return best
