"""Small dense linear algebra helpers and seeded sphere sampling.

Everything here works on 2x2 to 4x4 complex matrices. Eigen-solves are
delegated to LAPACK through numpy; this module adds the unitarity and
hermiticity guards and the phase conventions the rest of the package relies on.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidCount, NotHermitian, NotUnitary

UNITARY_TOL = 1e-10
MODULUS_TOL = 1e-9
# Phases closer than this to -pi are snapped onto +pi.
PHASE_SNAP = 1e-12


def as_matrix(M):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] not in (2, 3, 4):
        raise ValueError(f"expected a square 2x2, 3x3 or 4x4 matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def unitarity_residual(M):
    M = np.asarray(M, dtype=complex)
    return float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0]))))


def check_unitary(M, tol=UNITARY_TOL):
    """Return ``M`` as a complex array, raising :class:`NotUnitary` if it is not."""
    M = as_matrix(M)
    res = unitarity_residual(M)
    if res >= tol:
        raise NotUnitary(res)
    return M


def canonical_phase(x):
    """Map angles onto (-pi, pi], with -pi itself sent to +pi."""
    x = np.asarray(x, dtype=float)
    out = np.pi - np.mod(np.pi - x, 2 * np.pi)
    out = np.where(out <= -np.pi + PHASE_SNAP, np.pi, out)
    return out if out.ndim else float(out)


def unitary_eigenphases(M):
    """Arguments of the eigenvalues of a unitary matrix, sorted ascending.

    Args:
        M: unitary matrix of dimension at most 4.

    Returns:
        ndarray: phases in (-pi, pi]. Degenerate eigenvalues appear repeated.

    Raises:
        NotUnitary: if ``M`` fails the unitarity check or an eigenvalue has
            modulus off 1 by more than 1e-9.
    """
    M = check_unitary(M)
    w = np.linalg.eigvals(M)
    dev = float(np.max(np.abs(np.abs(w) - 1.0)))
    if dev > MODULUS_TOL:
        raise NotUnitary(dev, f"eigenvalue modulus deviates from 1 by {dev:.3e}")
    return np.sort(canonical_phase(np.angle(w)))


def hermitian_expm(H, t):
    """``exp(-i H t)`` by spectral decomposition of the Hermitian ``H``."""
    H = as_matrix(H)
    res = float(np.max(np.abs(H - H.conj().T)))
    if res >= UNITARY_TOL:
        raise NotHermitian(res)
    H = 0.5 * (H + H.conj().T)
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * w * t)) @ V.conj().T


@dataclass
class SphereSampler:
    """Seeded source of uniform points on the unit sphere.

    Backed by the Philox4x64 counter-based generator, so a given seed always
    yields the same stream and independent workers can use ``spawn``.
    ``counter`` counts points drawn so far.
    """

    seed: int = 0
    counter: int = 0
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        self._gen = np.random.Generator(np.random.Philox(self.seed))
        if self.counter:
            self._gen.random((self.counter, 2))

    def uniforms(self, n):
        out = self._gen.random((n, 2))
        self.counter += n
        return out

    def spawn(self, n_workers):
        """Independent samplers for parallel use, one per worker."""
        children = np.random.SeedSequence(self.seed).spawn(n_workers)
        samplers = []
        for child in children:
            s = SphereSampler(seed=self.seed)
            s._gen = np.random.Generator(np.random.Philox(child))
            samplers.append(s)
        return samplers


def sample_sphere(sampler, n):
    """Draw ``n`` uniform sphere points as arrays ``(theta, phi)``.

    ``cos(theta)`` is uniform on [-1, 1] and ``phi`` uniform on [0, 2 pi).
    """
    if n < 1:
        raise InvalidCount(f"need at least one sample, got {n}")
    u = sampler.uniforms(int(n))
    theta = np.arccos(1.0 - 2.0 * u[:, 0])
    phi = 2 * np.pi * u[:, 1]
    return theta, phi
