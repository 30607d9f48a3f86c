"""Two-star Majorana constellations of symmetric two-qubit states.

A symmetric state with ``COMP_SYM`` amplitudes ``(a0, a1, a2)`` is the
symmetrized product of two single-qubit states ``(1, z_k)``; the ``z_k`` are
the roots of ``a0 z^2 - sqrt(2) a1 z + a2`` and map to the sphere through
``z = tan(theta / 2) exp(i phi)``. A vanishing leading coefficient puts one
star at the south pole per lost degree.
"""
from dataclasses import dataclass

import numpy as np

from .entangling import linear_entropy_of_states, output_states
from .errors import InvalidResolution, ZeroState

SQRT2 = np.sqrt(2)
NORM_TOL = 1e-10
# Leading coefficients below this are treated as a degree drop.
DEGREE_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class SymmetricState:
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(3)
        if abs(np.linalg.norm(a) - 1) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm {np.linalg.norm(a)!r})")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def normalized(cls, amplitudes):
        a = np.asarray(amplitudes, dtype=complex).reshape(3)
        norm = np.linalg.norm(a)
        if not norm > 1e-300:
            raise ZeroState("state vector has zero norm")
        return cls(a / norm)

    def two_qubit(self):
        a0, a1, a2 = self.amplitudes
        return np.array([a0, a1 / SQRT2, a1 / SQRT2, a2])

    def overlap(self, other):
        return abs(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class MajoranaStar:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (np.isfinite(theta) and np.isfinite(phi)) or not (0 <= theta <= np.pi):
            raise ValueError(f"bad star angles ({theta}, {phi})")
        phi = 0.0 if theta in (0.0, np.pi) else float(np.mod(phi, 2 * np.pi))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_root(cls, z):
        if z is None or np.isinf(abs(z)):
            return cls(np.pi)
        return cls(2 * np.arctan(abs(z)), float(np.angle(z)) if z != 0 else 0.0)

    @classmethod
    def from_vector(cls, n):
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        return cls(float(np.arccos(np.clip(n[2], -1, 1))), float(np.arctan2(n[1], n[0])))

    def vector(self):
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])

    def spinor(self):
        return np.array([np.cos(self.theta / 2), np.exp(1j * self.phi) * np.sin(self.theta / 2)])


@dataclass(frozen=True)
class Constellation:
    stars: tuple

    def __post_init__(self):
        stars = tuple(self.stars)
        if len(stars) != 2:
            raise ValueError("a two-qubit constellation has exactly two stars")
        object.__setattr__(self, "stars", stars)

    def __eq__(self, other):
        if not isinstance(other, Constellation):
            return NotImplemented
        return set(self.stars) == set(other.stars)

    def __hash__(self):
        return hash(frozenset(self.stars))

    def isclose(self, other, atol=1e-8):
        """Equality up to permutation, comparing star positions on the sphere."""
        a = [s.vector() for s in self.stars]
        b = [s.vector() for s in other.stars]
        straight = max(np.linalg.norm(a[0] - b[0]), np.linalg.norm(a[1] - b[1]))
        swapped = max(np.linalg.norm(a[0] - b[1]), np.linalg.norm(a[1] - b[0]))
        return min(straight, swapped) <= atol


def _quadratic_roots(a, b, c):
    disc = np.sqrt(complex(b * b - 4 * a * c))
    # Pick the sign that avoids cancellation in b + disc.
    if (np.conj(b) * disc).real < 0:
        disc = -disc
    q = -(b + disc) / 2
    if q == 0:
        return 0j, 0j
    return q / a, c / q


def stars_of(state):
    """Majorana constellation of a normalized symmetric state."""
    if not isinstance(state, SymmetricState):
        state = SymmetricState(state)
    a0, a1, a2 = state.amplitudes
    b = -SQRT2 * a1
    if abs(a0) < DEGREE_TOL:
        if abs(b) < DEGREE_TOL:
            roots = (None, None)
        else:
            roots = (None, -a2 / b)
    else:
        roots = _quadratic_roots(a0, b, a2)
    return Constellation(tuple(MajoranaStar.from_root(z) for z in roots))


def state_from_stars(constellation):
    """Normalized symmetrization of the two star spinors, in ``COMP_SYM``."""
    u, v = (s.spinor() for s in constellation.stars)
    sym = np.kron(u, v) + np.kron(v, u)
    amps = np.array([sym[0], (sym[1] + sym[2]) / SQRT2, sym[3]])
    return SymmetricState.normalized(amps)


def concurrence(state):
    """``|psi^T (sigma_y x sigma_y) psi|`` for the embedded two-qubit vector."""
    a0, a1, a2 = state.amplitudes
    return float(abs(a1 * a1 - 2 * a0 * a2))


def chordal_distance(constellation):
    a, b = (s.vector() for s in constellation.stars)
    return float(np.linalg.norm(a - b))


def concurrence_from_distance(d):
    """Concurrence of the state whose two stars are a chord ``d`` apart."""
    d2 = np.asarray(d, dtype=float) ** 2
    return d2 / (8 - d2)


def sphere_grid(n_theta, n_phi):
    """theta from 0 to pi inclusive; phi on [0, 2 pi) with the endpoint dropped."""
    if n_theta < 2 or n_phi < 2:
        raise InvalidResolution(f"sphere grid must be at least 2x2, got {n_theta}x{n_phi}")
    return np.linspace(0, np.pi, n_theta), 2 * np.pi * np.arange(n_phi) / n_phi


def entropy_sphere(g, n_theta, n_phi):
    """Linear entropy of ``g |u, u>`` on a regular (theta, phi) grid.

    Returns:
        tuple: ``(theta, phi, E)`` with ``E`` of shape ``(n_theta, n_phi)``.
    """
    theta, phi = sphere_grid(n_theta, n_phi)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    E = linear_entropy_of_states(output_states(g, T.ravel(), P.ravel()))
    return theta, phi, np.clip(E, 0.0, 0.5).reshape(T.shape)


def sphere_records(theta, phi, E):
    return [{"theta": t, "phi": p, "entropy": float(E[i, j])}
            for i, t in enumerate(theta) for j, p in enumerate(phi)]


def area_weighted_mean(theta, E):
    """Sphere average of a gridded field, weighting rows by ``sin(theta)``."""
    w = np.sin(theta)
    return float(np.sum(w[:, None] * E) / (np.sum(w) * E.shape[1]))
