"""Domain models with holomorphic structure.

Four planar domains are supported: discs centred at the origin, conformal
images of the unit disc under a normalised polynomial map, the annulus
``r < |z| < 1`` and the punctured unit disc.  All are immutable and hashable
so that expensive derived objects (bases, polylines, grids) can be cached
per domain.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import _kernels
from .errors import InvalidDomainSpec, InvalidMap, NoConvergence

SQRT2 = np.sqrt(2.0)

# closed-disc sample used for the injectivity check
_INJ_RADIAL = 512
_INJ_ANGULAR = 512
_INJ_BOUNDARY = 4096

NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-12
# preimages this close to the unit circle count as boundary points
BOUNDARY_EPS = 1e-13


@dataclass(frozen=True)
class Disc:
    """The disc ``|z| < radius`` (unit disc by default)."""

    radius: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise InvalidDomainSpec(f"disc radius must be positive, got {self.radius!r}")


@dataclass(frozen=True)
class Annulus:
    """The annulus ``r < |z| < 1``."""

    r: float

    def __post_init__(self):
        if not (0.0 < self.r < 1.0):
            raise InvalidDomainSpec(f"annulus inner radius must lie in (0, 1), got {self.r!r}")

    @property
    def modulus(self) -> float:
        return float(np.log(1.0 / self.r))


@dataclass(frozen=True)
class PuncturedDisc:
    """The unit disc with the origin removed."""


@dataclass(frozen=True)
class ConformalDomain:
    """Image of the unit disc under ``phi(zeta) = zeta + sum_k a_k zeta**(k+1)``.

    Construction samples ``|phi'|`` on a 512x512 polar grid of the closed disc
    and checks the boundary curve for self-intersections at 4096 samples;
    either failure raises :class:`InvalidMap`.
    """

    coeffs: tuple
    injectivity_margin: float = field(init=False, compare=False, repr=False)
    _poly: np.ndarray = field(init=False, compare=False, repr=False)
    _dpoly: np.ndarray = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        coeffs = tuple(complex(a) for a in self.coeffs)
        if not all(np.isfinite(a.real) and np.isfinite(a.imag) for a in coeffs):
            raise InvalidDomainSpec("conformal coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)
        # ascending powers: c[j] multiplies zeta**j
        poly = np.array((0.0, 1.0) + coeffs, dtype=complex)
        dpoly = poly[1:] * np.arange(1, len(poly))
        object.__setattr__(self, "_poly", poly)
        object.__setattr__(self, "_dpoly", dpoly)
        object.__setattr__(self, "injectivity_margin", self._check_injective())

    @property
    def degree(self) -> int:
        return len(self._poly) - 1

    @property
    def is_real(self) -> bool:
        return all(a.imag == 0.0 for a in self.coeffs)

    def evaluate(self, zeta):
        """Return ``(phi(zeta), phi'(zeta))`` by Horner's scheme (vectorised)."""
        zeta = np.asarray(zeta, dtype=complex)
        val = np.zeros_like(zeta)
        der = np.zeros_like(zeta)
        for c in self._poly[::-1]:
            der = der * zeta + val
            val = val * zeta + c
        return val, der

    def _check_injective(self) -> float:
        rho = np.linspace(0.0, 1.0, _INJ_RADIAL)
        theta = 2 * np.pi * np.arange(_INJ_ANGULAR) / _INJ_ANGULAR
        zeta = rho[:, None] * np.exp(1j * theta[None, :])
        _, der = self.evaluate(zeta)
        margin = float(np.min(np.abs(der)))
        if not margin > 1e-8:
            raise InvalidMap(f"phi' vanishes on the closed disc (min |phi'| = {margin:.3g})")
        t = 2 * np.pi * np.arange(_INJ_BOUNDARY) / _INJ_BOUNDARY
        b, _ = self.evaluate(np.exp(1j * t))
        if not _kernels.closed_polyline_is_simple(np.ascontiguousarray(b.real),
                                                  np.ascontiguousarray(b.imag)):
            raise InvalidMap("boundary curve phi(e^{it}) self-intersects")
        return margin

    def _seed_table(self):
        table = getattr(self, "_seeds", None)
        if table is None:
            rho = np.linspace(0.0, 0.995, 48)
            theta = 2 * np.pi * np.arange(96) / 96
            zeta = (rho[:, None] * np.exp(1j * theta[None, :])).ravel()
            table = (zeta, self.evaluate(zeta)[0])
            object.__setattr__(self, "_seeds", table)
        return table

    def _newton(self, z, zeta):
        """Damped Newton for ``phi(zeta) = z``; returns (zeta, converged mask)."""
        val, der = self.evaluate(zeta)
        res = np.abs(val - z)
        tol = NEWTON_TOL * np.maximum(1.0, np.abs(z))
        ok = res <= tol
        for _ in range(NEWTON_MAX_ITER):
            if ok.all():
                break
            act = ~ok
            step = np.where(der[act] != 0, (val[act] - z[act]) / np.where(der[act] != 0, der[act], 1), 0)
            lam = np.ones(step.shape)
            base = zeta[act]
            r0 = res[act]
            for _ in range(30):
                trial = base - lam * step
                tv, td = self.evaluate(trial)
                tr = np.abs(tv - z[act])
                worse = tr >= r0
                if not worse.any():
                    break
                lam = np.where(worse, lam * 0.5, lam)
            zeta[act] = trial
            val[act], der[act], res[act] = tv, td, tr
            ok = res <= tol
        return zeta, ok

    def inverse(self, z, strict=True):
        """Vectorised preimage of ``z``; NaN (or NoConvergence if strict) outside."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        flat = z.ravel()
        zeta, ok = self._newton(flat, flat.copy())
        ok &= np.abs(zeta) < 1.0 - BOUNDARY_EPS
        if not ok.all():
            seeds, images = self._seed_table()
            bad = np.flatnonzero(~ok)
            nearest = np.argmin(np.abs(flat[bad, None] - images[None, :]), axis=1)
            z2, ok2 = self._newton(flat[bad], seeds[nearest].copy())
            ok2 &= np.abs(z2) < 1.0 - BOUNDARY_EPS
            zeta[bad] = z2
            ok[bad] = ok2
        if not ok.all():
            if strict:
                raise NoConvergence(
                    f"no preimage inside the unit disc for {flat[~ok][0]!r} "
                    f"within {NEWTON_MAX_ITER} Newton iterations")
            zeta = np.where(ok, zeta, np.nan + 0j)
        return zeta.reshape(z.shape)


Domain = Union[Disc, ConformalDomain, Annulus, PuncturedDisc]

SIMPLY_CONNECTED = (Disc, ConformalDomain)


def evaluate_map(dom: ConformalDomain, zeta) -> tuple[complex, complex]:
    """``phi(zeta)`` and ``phi'(zeta)`` for a single point of the closed disc."""
    zeta = complex(zeta)
    if abs(zeta) > 1.0 + 1e-15:
        raise ValueError(f"evaluate_map needs |zeta| <= 1, got {zeta!r}")
    val, der = dom.evaluate(zeta)
    return complex(val), complex(der)


def inverse_map(dom: ConformalDomain, z) -> complex:
    """Preimage ``zeta`` with ``phi(zeta) = z`` and ``|zeta| < 1``.

    Newton's method seeded at ``z`` with step halving; seeds from a sampled
    table are tried if that fails.  Raises :class:`NoConvergence` when no
    interior preimage is found, which is the signal for ``z`` outside or on
    the boundary.
    """
    return complex(dom.inverse(complex(z))[0])


def pushforward_metric_many(dom: ConformalDomain, z, strict=True):
    zeta = dom.inverse(z, strict=strict)
    _, der = dom.evaluate(zeta)
    return SQRT2 / ((1.0 - np.abs(zeta)) * (1.0 + np.abs(zeta)) * np.abs(der))


def pushforward_bergman_metric(dom: ConformalDomain, z) -> float:
    """Bergman metric density transported from the disc through ``phi``."""
    return float(pushforward_metric_many(dom, complex(z))[0])


# --- JSON domain specs ------------------------------------------------------

def domain_from_spec(spec) -> Domain:
    """Build a domain from its JSON form (dict or JSON string)."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise InvalidDomainSpec(f"domain spec is not valid JSON: {exc.msg}") from None
    if not isinstance(spec, dict) or "type" not in spec:
        raise InvalidDomainSpec("domain spec must be an object with a 'type' field")
    kind = spec["type"]
    allowed = {"disc": {"type", "radius"}, "annulus": {"type", "r"},
               "conformal": {"type", "coeffs"}, "punctured_disc": {"type"}}
    if kind not in allowed:
        raise InvalidDomainSpec(f"unknown domain type {kind!r}")
    extra = set(spec) - allowed[kind]
    if extra:
        raise InvalidDomainSpec(f"unknown field(s) for {kind}: {', '.join(sorted(extra))}")
    try:
        if kind == "disc":
            return Disc(float(spec.get("radius", 1.0)))
        if kind == "annulus":
            if "r" not in spec:
                raise InvalidDomainSpec("annulus spec needs 'r'")
            return Annulus(float(spec["r"]))
        if kind == "punctured_disc":
            return PuncturedDisc()
        coeffs = spec.get("coeffs")
        if not isinstance(coeffs, list):
            raise InvalidDomainSpec("conformal spec needs a 'coeffs' list")
        return ConformalDomain(tuple(_parse_coeff(c) for c in coeffs))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidDomainSpec):
            raise
        raise InvalidDomainSpec(str(exc)) from None


def _parse_coeff(c):
    if isinstance(c, (list, tuple)) and len(c) == 2:
        return complex(float(c[0]), float(c[1]))
    if isinstance(c, str):
        return complex(c.replace("i", "j").replace(" ", ""))
    return complex(float(c))


def domain_to_spec(dom: Domain) -> dict:
    if isinstance(dom, Disc):
        return {"type": "disc"} if dom.radius == 1.0 else {"type": "disc", "radius": dom.radius}
    if isinstance(dom, Annulus):
        return {"type": "annulus", "r": dom.r}
    if isinstance(dom, PuncturedDisc):
        return {"type": "punctured_disc"}
    coeffs = [a.real if a.imag == 0 else [a.real, a.imag] for a in dom.coeffs]
    return {"type": "conformal", "coeffs": coeffs}


def domain_label(dom: Domain) -> str:
    return json.dumps(domain_to_spec(dom), sort_keys=True, separators=(",", ":"))
