"""Numerical Bergman kernels and metrics.

Two independent routes are provided.

* Gram route: monomials (or Laurent monomials on the annulus) are integrated
  with a tensor polar rule, the diagonally scaled Gram matrix is factorised by
  pivoted Cholesky, and the kernel diagonal is ``v^H G^{-1} v``.  On conformal
  images the monomials are replaced by an Arnoldi basis of the same
  polynomial space, integrated exactly after pulling back to the disc.
* Series route (annulus only): the classical Laurent series of the annulus
  kernel, resummed so that the slowly converging parts near either circle
  are summed in closed form.

The metric is ``sqrt(d^2 log K / dz dzbar)``, evaluated by a 5-point central
difference stencil per axis.  ``K`` here is the kernel diagonal ``K_B(z, z)``;
its square root is the extremal quantity ``sup |f(z)|`` over the unit ball of
square-integrable holomorphic functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_triangular

from .domains import Annulus, ConformalDomain, Disc, Domain, PuncturedDisc
from .errors import IllConditioned, StencilOutsideDomain, TailTooLarge, UnsupportedDomain
from .geometry import as_point, contains, dist_to_boundary

MAX_CONDITION = 1e12
QUAD_TOL = 1e-10
TAIL_TOL = 1e-10
GRAM_FLOOR = 1e-2
SERIES_FLOOR = 1e-4
FD_STEP = 1e-4
DEFAULT_DEGREE = 40
CONFORMAL_DEGREE = 240
MAX_DEGREE = 400
_CHUNK = 4096


# --- quadrature ---------------------------------------------------------------

def polar_rule(r_inner: float, r_outer: float, n_radial: int, n_angular: int):
    """Gauss-Legendre in the radius times the trapezoid rule in the angle.

    Returns complex nodes and area weights (``rho drho dtheta`` included).
    """
    x, w = np.polynomial.legendre.leggauss(n_radial)
    half = 0.5 * (r_outer - r_inner)
    rho = r_inner + half * (x + 1.0)
    wr = w * half * rho
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    nodes = (rho[:, None] * np.exp(1j * theta[None, :])).ravel()
    weights = np.repeat(wr * (2 * np.pi / n_angular), n_angular)
    return nodes, weights


def _radial_moment(r_inner, r_outer, k):
    """Exact ``integral |z^k|^2 dA`` over ``r_inner < |z| < r_outer``."""
    k = np.asarray(k, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        generic = np.pi * (r_outer ** (2 * k + 2) - r_inner ** (2 * k + 2)) / (k + 1)
    log_case = 2 * np.pi * np.log(r_outer / r_inner) if r_inner > 0 else np.inf
    return np.where(k == -1, log_case, generic)


def _validated_radial_order(r_inner, r_outer, k_lo, k_hi, start):
    """Smallest Gauss-Legendre order (doubling from ``start``) that integrates
    ``|z^k|^2`` to ``QUAD_TOL`` relative error for ``k_lo <= k <= k_hi``."""
    ks = np.arange(k_lo, k_hi + 1)
    exact = _radial_moment(r_inner, r_outer, ks)
    n = max(int(start), 4)
    while True:
        x, w = np.polynomial.legendre.leggauss(n)
        half = 0.5 * (r_outer - r_inner)
        rho = r_inner + half * (x + 1.0)
        # log-space powers keep negative exponents finite
        approx = 2 * np.pi * np.exp(2 * ks[:, None] * np.log(rho)[None, :]) @ (w * half * rho)
        err = np.max(np.abs(approx / exact - 1.0))
        if err <= QUAD_TOL:
            return n, float(err)
        if n >= 4096:
            raise IllConditioned(f"radial rule failed to reach {QUAD_TOL:g} (err {err:.2e})")
        n *= 2


# --- pivoted Cholesky ----------------------------------------------------------

def pivoted_cholesky(A, tol: float | None = None):
    """Pivoted Cholesky of a Hermitian positive semidefinite matrix.

    Returns ``(L, piv, rank)`` with ``A[piv][:, piv] ~= L @ L.conj().T`` and
    ``L`` lower trapezoidal of shape ``(n, rank)``.  Elimination stops when the
    largest remaining pivot drops below ``tol`` times the first one.
    """
    A = np.array(A, dtype=complex, copy=True)
    n = A.shape[0]
    if tol is None:
        tol = n * np.finfo(float).eps
    piv = np.arange(n)
    first = None
    rank = n
    for i in range(n):
        d = A.diagonal().real[i:]
        j = i + int(np.argmax(d))
        a_max = d[j - i]
        if first is None:
            first = a_max
        if a_max <= tol * first:
            rank = i
            break
        if j != i:
            A[:, [i, j]] = A[:, [j, i]]
            A[[i, j], :] = A[[j, i], :]
            piv[[i, j]] = piv[[j, i]]
        A[i, i] = np.sqrt(a_max)
        A[i + 1:, i] /= A[i, i]
        A[i + 1:, i + 1:] -= np.outer(A[i + 1:, i], A[i + 1:, i].conj())
    L = np.tril(A)[:, :rank]
    return L, piv, rank


# --- orthonormal bases -----------------------------------------------------------

@dataclass(frozen=True)
class OrthonormalBasis:
    """Finite truncation of the Bergman space, orthonormalised by pivoted Cholesky.

    ``exponents`` are the powers of ``z`` spanned; ``scale`` holds the
    quadrature norms used for the diagonal scaling that precedes the
    factorisation, and ``condition`` is the 2-norm condition number of the
    scaled Gram matrix.
    """

    domain: Domain
    degree: int
    kind: str
    exponents: np.ndarray
    scale: np.ndarray
    factor: np.ndarray
    piv: np.ndarray
    condition: float
    quad_order: tuple
    quad_error: float
    # Arnoldi recurrence (conformal images only): q_{k+1} h_{k+1,k} = z q_k - sum_j h_jk q_j
    hessenberg: np.ndarray | None = None
    q0: float = 1.0

    def _values(self, z):
        if self.hessenberg is None:
            return _powers(z, self.exponents)
        H = self.hessenberg
        Q = np.empty((len(z), H.shape[1] + 1), dtype=complex)
        Q[:, 0] = self.q0
        for k in range(H.shape[1]):
            Q[:, k + 1] = (z * Q[:, k] - Q[:, :k + 1] @ H[:k + 1, k]) / H[k + 1, k]
        return Q

    def evaluate(self, z) -> np.ndarray:
        """Kernel diagonal at an array of points."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        v = self._values(z.ravel()) / self.scale
        y = solve_triangular(self.factor, v[:, self.piv].T, lower=True)
        return np.sum(np.abs(y) ** 2, axis=0).reshape(z.shape)


def _powers(z, exponents):
    with np.errstate(divide="ignore", invalid="ignore"):
        return z[:, None] ** exponents[None, :]


def _node_gram(nodes, weights, exps):
    """Diagonally scaled Gram matrix by direct summation over quadrature nodes."""
    diag = np.zeros(len(exps))
    for lo in range(0, len(nodes), _CHUNK):
        V = _powers(nodes[lo:lo + _CHUNK], exps)
        diag += (np.abs(V) ** 2).T @ weights[lo:lo + _CHUNK]
    scale = np.sqrt(diag)
    G = np.zeros((len(exps), len(exps)), dtype=complex)
    for lo in range(0, len(nodes), _CHUNK):
        V = _powers(nodes[lo:lo + _CHUNK], exps) / scale
        G += (V.conj() * weights[lo:lo + _CHUNK, None]).T @ V
    return G, scale


def _rotational_gram(r0, r1, n_r, n_a, exps):
    """The same tensor-rule sum as :func:`_node_gram`, factorised.

    On a polar tensor rule ``sum w_i conj(z_i^m) z_i^n`` splits into a radial
    moment of ``rho^(m+n)`` times an angular sum of ``e^{i(n-m) theta}``.
    """
    x, w = np.polynomial.legendre.leggauss(n_r)
    half = 0.5 * (r1 - r0)
    rho = r0 + half * (x + 1.0)
    wr = w * half * rho
    logrho = np.log(rho)
    m = exps[:, None]
    n = exps[None, :]
    # radial moments for every m + n, in log space to keep scale
    total = np.arange(2 * exps[0], 2 * exps[-1] + 1)
    mom = np.exp(total[:, None] * logrho[None, :]) @ wr
    theta = 2 * np.pi * np.arange(n_a) / n_a
    shifts = np.arange(-(n_a - 1), n_a)
    ang = np.exp(1j * shifts[:, None] * theta[None, :]).sum(axis=1) * (2 * np.pi / n_a)
    diag = mom[2 * exps - total[0]] * ang[n_a - 1]
    scale = np.sqrt(diag.real)
    G = mom[(m + n) - total[0]] * ang[(n - m) + n_a - 1] / np.outer(scale, scale)
    return G, scale


def _arnoldi_pullback(domain: ConformalDomain, degree: int):
    """Arnoldi basis of polynomials of degree <= N on ``phi(disc)``.

    A polynomial ``f`` is stored as the Taylor coefficients of ``(f o phi) phi'``,
    a polynomial in ``zeta`` of degree below ``M = p (N + 1)``.  The area
    inner product pulled back with Jacobian ``|phi'|^2`` is then exact:
    ``<f, g> = sum_a pi / (a + 1) F_a conj(G_a)``.  Multiplication by ``z``
    is convolution with the coefficients of ``phi``.
    """
    c, dc = domain._poly, domain._dpoly
    M = domain.degree * (degree + 1)
    wts = np.pi / (np.arange(M) + 1.0)
    F = np.zeros((M, degree + 1), dtype=complex)
    H = np.zeros((degree + 1, degree), dtype=complex)
    f0 = np.zeros(M, dtype=complex)
    f0[:len(dc)] = dc
    q0 = 1.0 / np.sqrt(np.sum(wts * np.abs(f0) ** 2))
    F[:, 0] = q0 * f0
    for k in range(degree):
        v = np.convolve(F[:, k], c)[:M]
        # classical Gram-Schmidt, applied twice
        for _ in range(2):
            h = (F[:, :k + 1].conj().T * wts) @ v
            v = v - F[:, :k + 1] @ h
            H[:k + 1, k] += h
        H[k + 1, k] = np.sqrt(np.sum(wts * np.abs(v) ** 2))
        F[:, k + 1] = v / H[k + 1, k]
    G = (F.conj().T * wts) @ F
    return G, H, float(q0), M


@lru_cache(maxsize=64)
def build_basis(domain: Domain, degree: int = DEFAULT_DEGREE) -> OrthonormalBasis:
    """Orthonormal basis of polynomials (Laurent polynomials on the annulus)."""
    if isinstance(domain, PuncturedDisc):
        domain = Disc()
    degree = int(degree)
    if degree < 1 or degree > MAX_DEGREE:
        raise ValueError(f"degree must lie in [1, {MAX_DEGREE}], got {degree}")
    if isinstance(domain, (Disc, Annulus)):
        if isinstance(domain, Disc):
            kind, exps = "monomial", np.arange(degree + 1)
            r0, r1, k_lo, start = 0.0, domain.radius, 0, 2 * degree + 2
        else:
            kind, exps = "laurent", np.arange(-degree, degree + 1)
            r0, r1, k_lo, start = domain.r, 1.0, -2 * degree, degree // 2 + 8
        n_r, err = _validated_radial_order(r0, r1, k_lo, 2 * degree, start)
        n_a = int(exps[-1] - exps[0]) + 1
        G, scale = _rotational_gram(r0, r1, n_r, n_a, exps)
    elif isinstance(domain, ConformalDomain):
        kind, exps = "arnoldi", np.arange(degree + 1)
        G, H, q0, M = _arnoldi_pullback(domain, degree)
        scale = np.ones(degree + 1)
        hess, n_r, n_a, err = H, M, None, 0.0
    else:
        raise UnsupportedDomain(f"no Gram route for {domain!r}")
    G = 0.5 * (G + G.conj().T)
    L, piv, rank = pivoted_cholesky(G)
    if rank < len(exps):
        raise IllConditioned(f"Gram matrix numerically singular (rank {rank} of {len(exps)})")
    sv = np.linalg.svd(L, compute_uv=False)
    cond = float((sv[0] / sv[-1]) ** 2)
    if not cond <= MAX_CONDITION:
        raise IllConditioned(f"Gram condition number {cond:.3g} exceeds {MAX_CONDITION:g}")
    if kind == "arnoldi":
        # exact disc moments of degree < M stand in for a tensor rule
        return OrthonormalBasis(domain, degree, kind, exps, scale, L, piv, cond, (n_r,), err, hess, q0)
    return OrthonormalBasis(domain, degree, kind, exps, scale, L, piv, cond, (n_r, n_a), err)


def kernel_diag(basis: OrthonormalBasis, z, floor: float = 1e-3) -> float:
    """Bergman kernel on the diagonal, ``sum_j |phi_j(z)|^2`` over the basis."""
    z = as_point(z)
    d = dist_to_boundary(basis.domain, z)
    if d < floor:
        raise StencilOutsideDomain(f"d_D(z) = {d:.3g} is below the kernel floor {floor:g}")
    return float(basis.evaluate(z)[0])


@dataclass(frozen=True)
class KernelDiagnostics:
    truncation_degree: int
    quadrature_order: tuple
    condition_number: float
    truncation_error: float

    def to_dict(self) -> dict:
        return {"truncation_degree": self.truncation_degree,
                "quadrature_order": list(self.quadrature_order),
                "condition_number": self.condition_number,
                "truncation_error": self.truncation_error}


def kernel_diagnostics(basis: OrthonormalBasis, z) -> KernelDiagnostics:
    """Diagnostics at ``z``; truncation error is the change against degree - 5."""
    z = as_point(z)
    k = float(basis.evaluate(z)[0])
    lower = build_basis(basis.domain, max(1, basis.degree - 5))
    err = abs(k - float(lower.evaluate(z)[0]))
    return KernelDiagnostics(basis.degree, basis.quad_order, basis.condition,
                             max(err, np.finfo(float).eps * k))


# --- exact kernels -------------------------------------------------------------

def disc_kernel_exact(z, radius: float = 1.0):
    """``R^2 / (pi (R^2 - |z|^2)^2)``."""
    a2 = np.abs(np.asarray(z, dtype=complex)) ** 2
    R2 = radius * radius
    return R2 / (np.pi * (R2 - a2) ** 2)


def _annulus_sums(r: float, t, truncation: int):
    """Kernel of ``r < |z| < 1`` and its first two ``t = |z|^2`` derivatives.

    Uses the resummation
    ``pi K = (1-t)^-2 + r^2 (t-r^2)^-2 + 1/(2 t log(1/r))
           + sum_{n>=0} (n+1) q_n t^n + sum_{m>=1} m q_{m-1} r^{2m} t^{-m-1}``
    with ``q_n = r^{2n+2} / (1 - r^{2n+2})``; both remaining sums shrink at
    least like ``r^{2n}``.  Returns ``(K, K_t, K_tt, tail)``.
    """
    t = np.asarray(t, dtype=float)
    P = np.polynomial.polynomial
    L = np.log(1.0 / r)
    r2 = r * r
    n = np.arange(truncation + 1, dtype=float)
    q = r2 ** (n + 1) / -np.expm1((n + 1) * np.log(r2))
    # positive powers: A(t) = sum (n+1) q_n t^n
    A = (n + 1) * q
    # negative powers: sum m q_{m-1} r^{2m} t^{-m-1} = B(s), s = 1/t
    m = n + 1
    B = np.concatenate([[0.0, 0.0], m * q * r2 ** m])
    s = 1.0 / t
    A1, A2 = P.polyder(A), P.polyder(A, 2)
    B1, B2 = P.polyder(B), P.polyder(B, 2)
    bs, b1, b2 = P.polyval(s, B), P.polyval(s, B1), P.polyval(s, B2)
    closed = (1 - t) ** -2 + r2 * (t - r2) ** -2 + s / (2 * L)
    K = (closed + P.polyval(t, A) + bs) / np.pi
    closed_t = 2 * (1 - t) ** -3 - 2 * r2 * (t - r2) ** -3 - s * s / (2 * L)
    # d/dt = -s^2 d/ds
    K_t = (closed_t + P.polyval(t, A1) - s * s * b1) / np.pi
    closed_tt = 6 * (1 - t) ** -4 + 6 * r2 * (t - r2) ** -4 + s ** 3 / L
    K_tt = (closed_tt + P.polyval(t, A2) + s ** 3 * (2 * b1 + s * b2)) / np.pi
    # geometric tail after the last retained terms
    last = (A[-1] * t ** n[-1] + B[-1] * s ** (m[-1] + 1)) / np.pi
    ratio = max(r2, r2 * r2 / np.min(t)) if np.ndim(t) else max(r2, r2 * r2 / float(t))
    tail = last * ratio / (1.0 - ratio) * (truncation + 2) / (truncation + 1)
    return K, K_t, K_tt, tail


def annulus_kernel_diag(r: float, z, truncation: int = 60) -> float:
    """Bergman kernel diagonal of ``r < |z| < 1`` from its Laurent series.

    Equal to ``sum_{n != -1} (n+1)|z|^{2n} / (pi (1 - r^{2n+2}))
    + |z|^{-2} / (2 pi log(1/r))``; raises :class:`TailTooLarge` when the
    geometric tail bound exceeds 1e-10 of the partial sum.
    """
    z = as_point(z)
    a = abs(z)
    if not (r < a < 1.0):
        raise StencilOutsideDomain(f"|z| = {a} is not inside the annulus ({r}, 1)")
    K, _, _, tail = _annulus_sums(r, a * a, truncation)
    if tail > TAIL_TOL * K:
        raise TailTooLarge(f"series tail {tail:.2e} exceeds {TAIL_TOL:g} of the sum {K:.6g}")
    return float(K)


def series_terms(r: float) -> int:
    """Terms after which both resummed annulus sums fall below 1e-17 relative."""
    return int(min(MAX_DEGREE, max(8, np.ceil(np.log(1e-17) / (2 * np.log(r))) + 4)))


def annulus_bergman_metric(r: float, z, truncation: int | None = None):
    """Analytic annulus Bergman density from the series derivatives (vectorised)."""
    if truncation is None:
        truncation = series_terms(r)
    t = np.abs(np.asarray(z, dtype=complex)) ** 2
    K, K_t, K_tt, _ = _annulus_sums(r, t, truncation)
    g_t = K_t / K
    g_tt = K_tt / K - g_t * g_t
    # Laplacian/4 of a radial function in t = |z|^2 is (t g_t)_t
    out = np.sqrt(g_t + t * g_tt)
    return float(out) if np.ndim(out) == 0 else out


# --- metric -----------------------------------------------------------------------

def _auto_degree(domain: Domain, z: complex) -> int:
    if isinstance(domain, (Disc, PuncturedDisc)):
        R = domain.radius if isinstance(domain, Disc) else 1.0
        rho = abs(z) / R
        if rho < 0.5:
            return DEFAULT_DEGREE
        n = int(np.ceil(np.log(1e-16) / (2 * np.log(rho)))) + 10
        return int(min(MAX_DEGREE, max(DEFAULT_DEGREE, 20 * int(np.ceil(n / 20)))))
    if isinstance(domain, ConformalDomain):
        return CONFORMAL_DEGREE
    return DEFAULT_DEGREE


def kernel_function(domain: Domain, z=None, degree: int | None = None):
    """Vectorised ``K_B(z, z)`` for the domain's preferred route.

    Annulus: series route.  Disc, punctured disc and conformal images: Gram
    route at ``degree`` (chosen from ``z`` when omitted).
    """
    if isinstance(domain, Annulus):
        return lambda p: _annulus_sums(domain.r, np.abs(np.asarray(p)) ** 2, 60)[0]
    if degree is None:
        degree = _auto_degree(domain, as_point(z) if z is not None else 0j)
    return build_basis(domain, degree).evaluate


def _metric_floor(domain: Domain) -> float:
    return SERIES_FLOOR if isinstance(domain, Annulus) else GRAM_FLOOR


def _floor_distance(domain: Domain, z: complex) -> float:
    # the punctured disc shares the disc kernel, so only the outer circle matters
    if isinstance(domain, PuncturedDisc):
        return 1.0 - abs(z)
    return dist_to_boundary(domain, z)


def bergman_metric_numeric(domain: Domain, z, degree: int | None = None) -> float:
    """Bergman metric density ``beta_D(z; 1)`` from second differences of ``log K``.

    Step ``h = 1e-4 d_D(z)``; 5-point stencil per axis on the Gram route, the
    radial form ``(g'' + g'/rho) / 4`` with ``g = log K(rho)`` on the annulus.
    """
    z = as_point(z)
    if not contains(domain, z) and not (isinstance(domain, PuncturedDisc) and z == 0):
        raise StencilOutsideDomain(f"{z!r} is not inside {domain!r}")
    d = _floor_distance(domain, z)
    floor = _metric_floor(domain)
    if d < floor:
        raise StencilOutsideDomain(f"d_D(z) = {d:.3g} is below the metric floor {floor:g}")
    h = FD_STEP * d
    c = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
    off = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * h
    if isinstance(domain, Annulus):
        rho = abs(z)
        g = np.log(_annulus_sums(domain.r, (rho + off) ** 2, 60)[0])
        g2 = c @ g / h ** 2
        g1 = (g[0] - 8 * g[1] + 8 * g[3] - g[4]) / (12 * h)
        val = 0.25 * (g2 + g1 / rho)
    else:
        K = kernel_function(domain, z, degree)
        pts = np.concatenate([z + off, z + 1j * off])
        g = np.log(K(pts))
        val = 0.25 * (c @ g[:5] + c @ g[5:]) / h ** 2
    if not val > 0:
        raise IllConditioned(f"non-positive log-kernel Laplacian {val:.3g} at {z!r}")
    return float(np.sqrt(val))


def m_invariant(domain: Domain, z, degree: int | None = None) -> float:
    """``M_D(z; 1) = beta_D(z; 1) * sqrt(K_B(z, z))``."""
    z = as_point(z)
    beta = bergman_metric_numeric(domain, z, degree)
    K = float(np.asarray(kernel_function(domain, z, degree)(np.array([z])))[0])
    return beta * np.sqrt(K)


def kernel_value(domain: Domain, z, degree: int | None = None) -> float:
    """Kernel diagonal at one point by the domain's preferred route."""
    z = as_point(z)
    if isinstance(domain, Annulus):
        return annulus_kernel_diag(domain.r, z)
    return float(kernel_function(domain, z, degree)(np.array([z]))[0])
