"""Closed forms on the unit disc.

All functions broadcast over numpy arrays of points.  ``1 - |z|^2`` is always
formed as ``(1 - |z|)(1 + |z|)`` and ``|1 - conj(z) w|`` through the identity
``|1 - conj(z) w|^2 = (1 - |z|^2)(1 - |w|^2) + |z - w|^2`` so that pairs
crowding the unit circle keep full relative accuracy.
"""
from __future__ import annotations

from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import CoincidentPoints, PointOutsideDomain

SQRT2 = np.sqrt(2.0)
# above this pseudo-hyperbolic value arctanh is evaluated in log1p form
_ATANH_GUARD = 0.99


class BoundPair(NamedTuple):
    lower: float
    upper: float

    def encloses(self, value, slack=1e-12) -> bool:
        tol = slack * np.maximum(1.0, np.abs(value))
        return bool(np.all((self.lower <= value + tol) & (value <= self.upper + tol)))


class Case(str, Enum):
    FAR = "Far"
    NEAR = "Near"


def _check(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(z) >= 1.0) or np.any(np.abs(w) >= 1.0):
        raise PointOutsideDomain("disc points need |z| < 1 and |w| < 1")
    return z, w


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def one_minus_sq(z):
    a = np.abs(z)
    return (1.0 - a) * (1.0 + a)


def _parts(z, w):
    """``|z-w|``, ``(1-|z|^2)(1-|w|^2)`` and ``|1 - conj(z) w|`` (stable)."""
    s = np.abs(z - w)
    p = one_minus_sq(z) * one_minus_sq(w)
    return s, p, np.sqrt(p + s * s)


def pseudo_hyperbolic(z, w):
    """``|(z - w) / (1 - conj(z) w)|``."""
    z, w = _check(z, w)
    s, _, den = _parts(z, w)
    return _out(s / den)


def kobayashi_disc(z, w):
    """Kobayashi (= Caratheodory) distance of the unit disc: arctanh of the Moebius quotient."""
    z, w = _check(z, w)
    s, p, den = _parts(z, w)
    m = s / den
    with np.errstate(divide="ignore", invalid="ignore"):
        near = 0.5 * np.log1p(2.0 * s * (den + s) / p)
    k = np.where(m > _ATANH_GUARD, near, np.arctanh(np.minimum(m, _ATANH_GUARD)))
    return _out(k)


def bergman_disc(z, w):
    """Bergman distance of the unit disc, ``sqrt(2)`` times the Kobayashi distance."""
    return _out(SQRT2 * np.asarray(kobayashi_disc(z, w)))


def bergman_metric_disc(z):
    """Bergman density ``sqrt(2) / (1 - |z|^2)`` of the unit disc."""
    return _out(SQRT2 / one_minus_sq(np.asarray(z, dtype=complex)))


def eq2_residual(z, w):
    """Residual of ``|1 - conj(z) w|^2 = (1-|z|^2)(1-|w|^2) + |z-w|^2`` computed naively."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    lhs = np.abs(1.0 - np.conj(z) * w) ** 2
    rhs = (1.0 - np.abs(z) ** 2) * (1.0 - np.abs(w) ** 2) + np.abs(z - w) ** 2
    return _out(np.abs(lhs - rhs))


def lemma4a_bounds(z, w) -> BoundPair:
    """Bounds for ``b/sqrt(2)`` with ``q = |z-w| / sqrt((1-|z|^2)(1-|w|^2))``:
    ``log(1 + q) <= b/sqrt(2) <= log(1 + 2q)``."""
    z, w = _check(z, w)
    s, p, _ = _parts(z, w)
    q = s / np.sqrt(p)
    return BoundPair(_out(np.log1p(q)), _out(np.log1p(2.0 * q)))


def lemma4b_bounds(z, w) -> BoundPair:
    """Same enclosure in terms of the boundary distances ``d = 1 - |.|``."""
    z, w = _check(z, w)
    s = np.abs(z - w)
    g = np.sqrt((1.0 - np.abs(z)) * (1.0 - np.abs(w)))
    return BoundPair(_out(np.log1p(s / (2.0 * g))), _out(np.log1p(SQRT2 * s / g)))


def sharpness_ratio_a(z, w):
    """``(exp(b/sqrt 2) - 1) sqrt((1-|z|^2)(1-|w|^2)) / |z-w|``, which lies in [1, 2]."""
    z, w = _check(z, w)
    s, p, _ = _parts(z, w)
    if np.any(s == 0):
        raise CoincidentPoints("sharpness ratio needs z != w")
    return _out(np.expm1(np.asarray(kobayashi_disc(z, w))) * np.sqrt(p) / s)


def sharpness_ratio_b(z, w):
    """``(exp(b/sqrt 2) - 1) sqrt(d(z) d(w)) / |z-w|``, which lies in [1/2, sqrt 2]."""
    z, w = _check(z, w)
    s = np.abs(z - w)
    if np.any(s == 0):
        raise CoincidentPoints("sharpness ratio needs z != w")
    g = np.sqrt((1.0 - np.abs(z)) * (1.0 - np.abs(w)))
    return _out(np.expm1(np.asarray(kobayashi_disc(z, w))) * g / s)


def prop1prime_classify(dist: float, dz: float, dw: float) -> Case:
    """Far iff ``dist**2 > dz * dw``; the equality case is Near."""
    if not (dist > 0 and dz > 0 and dw > 0):
        raise ValueError("prop1prime_classify needs positive inputs")
    return Case.FAR if dist * dist > dz * dw else Case.NEAR


def mobius(a: complex, angle: float = 0.0):
    """Disc automorphism ``z -> e^{i angle} (z - a) / (1 - conj(a) z)``."""
    rot = np.exp(1j * angle)
    return lambda z: rot * (np.asarray(z) - a) / (1.0 - np.conj(a) * np.asarray(z))


def geodesic_arc(z: complex, w: complex, n: int) -> np.ndarray:
    """``n`` points on the shorter arc from ``z`` to ``w`` of the circle through
    both points orthogonal to the unit circle (a straight chord when ``z``,
    ``w`` and 0 are collinear), uniformly spaced in angle; endpoints exact."""
    z, w = complex(z), complex(w)
    t = np.linspace(0.0, 1.0, n)
    anchor = z if abs(z) >= abs(w) else w
    if abs((np.conj(z) * w).imag) <= 1e-14 * abs(z) * abs(w) or anchor == 0:
        pts = z + t * (w - z)
    else:
        # the orthogonal circle also passes through the reflection 1/conj(anchor)
        c = _circumcenter(z, w, 1.0 / np.conj(anchor))
        a0 = np.angle(z - c)
        delta = np.angle((w - c) / (z - c))
        pts = c + abs(z - c) * np.exp(1j * (a0 + t * delta))
    pts = np.asarray(pts, dtype=complex)
    pts[0], pts[-1] = z, w
    return pts


def _circumcenter(a: complex, b: complex, c: complex) -> complex:
    d = 2.0 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag) + c.real * (a.imag - b.imag))
    aa, bb, cc = abs(a) ** 2, abs(b) ** 2, abs(c) ** 2
    ux = (aa * (b.imag - c.imag) + bb * (c.imag - a.imag) + cc * (a.imag - b.imag)) / d
    uy = (aa * (c.real - b.real) + bb * (a.real - c.real) + cc * (b.real - a.real)) / d
    return complex(ux, uy)
