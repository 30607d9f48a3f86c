"""Entangling power and perfect-entangler classification of symmetric gates.

The entangling power is the average linear entropy ``1 - Tr rho_1^2`` of
``U |u, u>`` over uniformly distributed single-qubit states ``|u>``. It has a
closed form in the local invariant, ``ep = 3/10 (1 - |G|)``, which is checked
here against a seeded Monte Carlo average of the same integrand.

A gate is a perfect entangler when some ``|u, u>`` is mapped to a maximally
entangled state; this happens exactly when the triangle spanned by the
eigenvalues of ``m`` contains the origin.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from .errors import ClassifierMismatch, InternalMismatch, InvalidCount
from .gates import BasisTag, GeometricPoint, SymmetricGate, embed_reducible, to_basis
from .invariants import (absG_from_point, chamber_coords_of_gate, chamber_from_phases,
                         chamber_point, eigenphases_of_m, invariant_G, point_from_gate,
                         point_to_phases, weyl_reduce)
from .numerics import SphereSampler, sample_sphere

EP_MAX = 0.3
PE_THRESHOLD = 4.0 / 15.0
CROSSCHECK_TOL = 1e-10
# Linear entropies below this are rounding residue of separable outputs.
ENTROPY_FLOOR = 1e-24

# P = -sigma_y (x) sigma_y in the computational basis.
SPIN_FLIP = np.array(
    [[0, 0, 0, 1],
     [0, 0, -1, 0],
     [0, -1, 0, 0],
     [1, 0, 0, 0]], dtype=complex)


@dataclass(frozen=True)
class EpResult:
    ep: float
    method: str
    n_samples: int = 0
    std_error: float = 0.0


@dataclass(frozen=True)
class EntanglerClass:
    is_perfect: bool
    on_boundary: bool
    hull_margin: float


def ep_from_absg(absg):
    return EP_MAX * (1 - np.asarray(absg, dtype=float))


def ep_from_sines(c):
    """``2/15 [sin^2(c1 - c2) + sin^2(c2 - c3) + sin^2(c3 - c1)]`` (vectorized)."""
    c = c.as_array() if isinstance(c, GeometricPoint) else np.asarray(c, dtype=float)
    c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    return 2.0 / 15.0 * (np.sin(c1 - c2) ** 2 + np.sin(c2 - c3) ** 2 + np.sin(c3 - c1) ** 2)


def ep_closed_form(c):
    """Entangling power at ``c`` from the local invariant.

    Raises:
        InternalMismatch: if the invariant form and the sine form disagree.
    """
    via_g = float(ep_from_absg(absG_from_point(c)))
    via_sines = float(ep_from_sines(c))
    if abs(via_g - via_sines) > CROSSCHECK_TOL:
        raise InternalMismatch(f"ep forms disagree: {via_g!r} vs {via_sines!r}")
    return EpResult(via_g, "closed_form")


def ep_of_gate(g):
    return float(ep_from_absg(invariant_G(g).absG))


def product_states(theta, phi):
    """``|u, u>`` in the computational basis, one row per sphere point."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    u = np.stack([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)
    return (u[:, :, None] * u[:, None, :]).reshape(-1, 4)


def output_states(g, theta, phi):
    V = embed_reducible(g)
    return product_states(theta, phi) @ V.T


def linear_entropy_of_states(psi):
    """``1 - Tr rho_1^2`` for a batch of normalized two-qubit pure states."""
    # For a pure state 1 - Tr rho_1^2 = 2 |det M| ^ 2, with M the 2x2 amplitude
    # matrix; this form stays non-negative and is exact for product inputs.
    M = np.asarray(psi).reshape(-1, 2, 2)
    det = M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
    E = 2 * np.abs(det) ** 2
    return np.where(E < ENTROPY_FLOOR, 0.0, E)


def _partial_trace_entropy(psi):
    M = np.asarray(psi).reshape(-1, 2, 2)
    rho = M @ np.conj(np.swapaxes(M, 1, 2))
    return 1 - np.einsum("nij,nji->n", rho, rho).real


def concurrence_of_states(psi):
    psi = np.asarray(psi).reshape(-1, 4)
    return np.abs(np.einsum("ni,ij,nj->n", psi, SPIN_FLIP, psi))


def _bell_diagonal(g, tol=1e-12):
    U = to_basis(g, BasisTag.BELL_SYM).matrix
    if np.max(np.abs(U - np.diag(np.diag(U)))) < tol:
        return np.diag(U)
    return None


def _entropy_from_bell_coefficients(lam, theta, phi):
    # Output amplitudes are (A, B, B, C) / 2 up to a global phase.
    a = np.cos(phi) - 1j * np.sin(phi) * np.cos(theta)
    c = np.cos(phi) * np.cos(theta) - 1j * np.sin(phi)
    A = lam[0] * a + lam[2] * c
    B = lam[1] * np.sin(theta)
    C = lam[0] * a - lam[2] * c
    aa, bb, cc = abs(A) ** 2, abs(B) ** 2, abs(C) ** 2
    purity = ((aa + bb) ** 2 + (bb + cc) ** 2
              + 2 * np.abs(A * np.conj(B) + B * np.conj(C)) ** 2) / 16
    return 1 - purity


def _check_sphere_point(theta, phi):
    if not (0 <= theta <= np.pi) or not (0 <= phi < 2 * np.pi):
        raise ValueError(f"sphere point out of range: theta={theta}, phi={phi}")


def linear_entropy_after(g, theta, phi):
    """Linear entropy of ``g |u, u>`` with ``|u>`` at sphere point ``(theta, phi)``.

    The value comes from a partial trace of the output state. For gates that
    are diagonal in the Bell basis it is cross-checked against the
    closed-form Bell-coefficient expression; otherwise against ``C^2 / 2``.
    """
    _check_sphere_point(theta, phi)
    psi = output_states(g, theta, phi)
    E = max(float(_partial_trace_entropy(psi)[0]), 0.0)
    lam = _bell_diagonal(g)
    if lam is not None:
        other = float(_entropy_from_bell_coefficients(lam, theta, phi))
    else:
        other = float(concurrence_of_states(psi)[0]) ** 2 / 2
    if abs(E - other) > CROSSCHECK_TOL:
        raise InternalMismatch(f"linear entropy routes disagree: {E!r} vs {other!r}")
    return E


def concurrence_after(g, theta, phi):
    """Concurrence of ``g |u, u>``, computed as ``|psi^T P psi|``."""
    _check_sphere_point(theta, phi)
    return float(concurrence_of_states(output_states(g, theta, phi))[0])


def ep_monte_carlo(g, n, seed=0):
    """Sphere average of the linear entropy over ``n`` seeded samples."""
    if n < 100:
        raise InvalidCount(f"Monte Carlo needs n >= 100, got {n}")
    theta, phi = sample_sphere(SphereSampler(seed), n)
    E = linear_entropy_of_states(output_states(g, theta, phi))
    E = np.clip(E, 0.0, None)
    mean = math.fsum(E) / n
    var = math.fsum((E - mean) ** 2) / (n - 1)
    std_error = math.sqrt(var / n)
    if std_error < 1e-15:
        std_error = 0.0
        mean = max(mean, 0.0) if abs(mean) > 1e-15 else 0.0
    return EpResult(mean, "monte_carlo", int(n), std_error)


def hull_test(mu, tol=1e-9):
    """Does the triangle of ``exp(i mu_k)`` contain the origin?

    Uses signed-area orientation tests on the counter-clockwise sorted
    vertices, each normalized by its edge length so that the tolerance is a
    distance. Edges shorter than ``tol`` are degenerate and skipped, so two
    coincident vertices leave a chord that contains the origin only if it is
    a diameter. Vectorized over leading axes of ``mu``.

    Returns:
        tuple: ``(contains, margin)``. ``margin`` is the smallest signed
        distance from the origin to an edge line, positive inside.
    """
    p = np.sort(np.mod(np.asarray(mu, dtype=float), 2 * np.pi), axis=-1)
    x, y = np.cos(p), np.sin(p)
    xn, yn = np.roll(x, -1, axis=-1), np.roll(y, -1, axis=-1)
    cross = x * yn - xn * y
    length = np.hypot(xn - x, yn - y)
    degenerate = length < tol
    dist = np.where(degenerate, np.inf, cross / np.where(degenerate, 1.0, length))
    collapsed = np.all(degenerate, axis=-1)
    margin = np.where(collapsed, -1.0, np.min(dist, axis=-1))
    contains = ~collapsed & np.all(dist >= -tol, axis=-1)
    return contains, margin


def chamber_inequality(s1, s2):
    """Perfect-entangler condition on chamber coordinates.

    With ``phi1 = pi (s1 + s2)`` and ``phi3 = pi (s2 - s1)`` the gate is a
    perfect entangler iff ``0 <= phi1 <= pi`` and ``-pi <= phi3 <= phi1 - pi``.
    """
    phi1 = np.pi * (np.asarray(s1) + np.asarray(s2))
    phi3 = np.pi * (np.asarray(s2) - np.asarray(s1))
    return (phi1 >= 0) & (phi1 <= np.pi) & (phi3 >= -np.pi) & (phi3 <= phi1 - np.pi)


def classify_phases(mu, tol=1e-9):
    """Vectorized classification from m-phases.

    Returns ``(is_perfect, on_boundary, hull_margin)`` arrays.

    Raises:
        ClassifierMismatch: if the hull test and the chamber inequality
            disagree away from the boundary.
    """
    contains, margin = hull_test(mu, tol)
    boundary = np.abs(margin) <= tol
    perfect = contains | boundary
    s1, s2 = chamber_from_phases(mu)
    analytic = chamber_inequality(s1, s2)
    bad = (analytic != perfect) & ~boundary
    if np.any(bad):
        k = int(np.flatnonzero(np.atleast_1d(bad))[0])
        raise ClassifierMismatch(
            f"hull and chamber tests disagree at mu={np.reshape(mu, (-1, 3))[k]}")
    return perfect, boundary, margin


def classify(g, tol=1e-9):
    """Classify a :class:`SymmetricGate` or :class:`GeometricPoint`."""
    if isinstance(g, SymmetricGate):
        mu = eigenphases_of_m(g).as_array()
    else:
        mu = point_to_phases(g)
    perfect, boundary, margin = classify_phases(mu, tol)
    return EntanglerClass(bool(perfect), bool(boundary), float(margin))


def max_concurrence(g, n_theta=181, n_phi=361, refine=True):
    """Largest output concurrence over separable symmetric inputs.

    Grid search followed by a Nelder-Mead polish from the best grid point.
    """
    theta = np.linspace(0, np.pi, n_theta)
    phi = np.linspace(0, 2 * np.pi, n_phi)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    C = concurrence_of_states(output_states(g, T.ravel(), P.ravel()))
    k = int(np.argmax(C))
    best = float(C[k])
    if refine:
        V = embed_reducible(g)

        def neg(x):
            return -concurrence_of_states(product_states(x[0], x[1]) @ V.T)[0]

        res = minimize(neg, [T.ravel()[k], P.ravel()[k]], method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 2000})
        best = max(best, float(-res.fun))
    return min(best, 1.0)


def chamber_fraction_perfect(mode="analytic", n=10**6, seed=0):
    """Fraction of the Weyl chamber occupied by perfect entanglers.

    ``analytic`` integrates the region ``1/2 <= s1 <= 1, 0 <= s2 <= 1 - s1``
    exactly; ``monte_carlo`` samples the chamber uniformly and classifies.
    """
    if mode == "analytic":
        # Both regions are integrated over s1 with s2 from 0 to the upper bound.
        def blue(s):  # antiderivative of 1 - s1
            return s - s * s / 2

        def chamber(s):  # antiderivative of s1
            return s * s / 2

        one, half, zero = Fraction(1), Fraction(1, 2), Fraction(0)
        return float((blue(one) - blue(half)) / (chamber(one) - chamber(zero)))
    if mode != "monte_carlo":
        raise ValueError(f"unknown mode {mode!r}")
    if n < 10**4:
        raise InvalidCount(f"chamber Monte Carlo needs n >= 10000, got {n}")
    s1, s2 = sample_chamber(n, seed)
    perfect, _, _ = classify_phases(point_to_phases(chamber_point(s1, s2)))
    return float(np.count_nonzero(perfect)) / n


def sample_chamber(n, seed=0):
    """Uniform points on the triangle ``0 <= s2 <= s1 <= 1``."""
    u = np.random.Generator(np.random.Philox(seed)).random((int(n), 2))
    return u.max(axis=1), u.min(axis=1)


def classification_record(g, tol=1e-9):
    """Classification JSON payload for a gate or geometric point."""
    if isinstance(g, SymmetricGate):
        point = point_from_gate(g)
        s = chamber_coords_of_gate(g)
        absg = invariant_G(g).absG
    else:
        point, s = weyl_reduce(g)
        absg = float(absG_from_point(g))
    cls = classify(g, tol)
    return {
        "c": [point.c1, point.c2, point.c3],
        "s": [s.s1, s.s2],
        "abs_g": absg,
        "ep": float(ep_from_absg(absg)),
        "perfect": cls.is_perfect,
        "boundary": cls.on_boundary,
        "hull_margin": cls.hull_margin,
    }
