"""Local invariants of symmetric gates and reduction onto the Weyl chamber.

The eigenvalues of ``m = U_B^T U_B`` (``U_B`` the gate in the Bell basis) are
a complete set of local invariants. On the plane c1 + c2 + c3 = 0 their
phases are ``mu = (c1 - c2 + c3, c1 + c2 - c3, -c1 + c2 + c3)``; the class of
a gate is the configuration of the three points ``exp(i mu_k)`` on the unit
circle up to rotation (global phase), relabelling (Weyl group) and
reflection (complex conjugation). That configuration is captured by the
three arc gaps between consecutive points, which is how :func:`weyl_reduce`
lands on a chamber representative without any iterative search.
"""
import csv
import io
from dataclasses import dataclass

import numpy as np

from .gates import BasisTag, GeometricPoint, point_phases, su3_normalize, to_basis
from .numerics import check_unitary, unitary_eigenphases
from .errors import InvalidResolution

PI = np.pi

ALPHA1 = PI * np.array([-1.0, 0.0, 1.0])
ALPHA2 = PI * np.array([0.0, 1.0, -1.0])
VX = (ALPHA1 + ALPHA2) / 2
VY = (ALPHA1 - ALPHA2) / 6
DIAGONAL = np.ones(3) / np.sqrt(3)

CHAMBER_TOL = 1e-9
GRID_COLUMNS = ("c1", "c2", "c3", "s1", "s2", "arg_tr_m", "abs_g", "ep", "perfect")


def reflection(beta):
    """Reflection through the plane normal to ``beta``."""
    beta = np.asarray(beta, dtype=float)
    return np.eye(3) - 2 * np.outer(beta, beta) / beta.dot(beta)


ROOTS = (ALPHA1, ALPHA2, ALPHA1 + ALPHA2)
# Directions halfway between successive roots; reflecting through them
# conjugates the spectrum of m.
BISECTORS = (PI * np.array([-2.0, 1.0, 1.0]),
             PI * np.array([1.0, -2.0, 1.0]),
             PI * np.array([1.0, 1.0, -2.0]))
WEYL_REFLECTIONS = tuple(reflection(a) for a in ROOTS)
CONJUGATING_REFLECTIONS = tuple(reflection(b) for b in BISECTORS)


@dataclass(frozen=True)
class EigenPhaseTriple:
    mu1: float
    mu2: float
    mu3: float

    def as_array(self):
        return np.array([self.mu1, self.mu2, self.mu3])


@dataclass(frozen=True)
class LocalInvariant:
    G: complex
    absG: float


@dataclass(frozen=True)
class ChamberCoords:
    s1: float
    s2: float


def _bell_matrix(g, normalize):
    if normalize:
        g = su3_normalize(g)
    return to_basis(g, BasisTag.BELL_SYM).matrix


def m_matrix(g, normalize=True):
    """``U_B^T U_B`` for the gate in the Bell basis.

    With ``normalize`` (the default) the gate is first scaled to unit
    determinant, which only rotates the spectrum by a common phase.
    """
    check_unitary(g.matrix)
    U = _bell_matrix(g, normalize)
    return U.T @ U


def invariant_G(g):
    """The local invariant ``G = (Tr m)^2 / 9`` of the unit-determinant gate."""
    tr = np.trace(m_matrix(g))
    G = complex(tr * tr / 9)
    return LocalInvariant(G, _clamp_unit(abs(G)))


def _clamp_unit(x, tol=1e-12):
    x = np.asarray(x, dtype=float)
    out = np.where((x < 0) & (x > -tol), 0.0, x)
    out = np.where((out > 1) & (out < 1 + tol), 1.0, out)
    return out if out.ndim else float(out)


def absG_from_point(c):
    """``|G|`` directly from Cartan coordinates (vectorized over leading axes)."""
    c = c.as_array() if isinstance(c, GeometricPoint) else np.asarray(c, dtype=float)
    c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    s = np.sin(c1 - c2) ** 2 + np.sin(c1 - c3) ** 2 + np.sin(c3 - c2) ** 2
    return _clamp_unit(1 - 4.0 / 9.0 * s)


def eigenphases_of_m(g, normalize=True):
    """Sorted phases of the spectrum of ``m``."""
    mu = unitary_eigenphases(m_matrix(g, normalize))
    return EigenPhaseTriple(*(float(x) for x in mu))


def phase_gaps(mu):
    """Sorted arc gaps, in units of pi, between the points ``exp(i mu_k)``.

    Works on any array whose last axis has length 3; each gap triple sums to 2.
    """
    p = np.sort(np.mod(np.asarray(mu, dtype=float), 2 * PI), axis=-1)
    g = np.stack([p[..., 1] - p[..., 0],
                  p[..., 2] - p[..., 1],
                  2 * PI - (p[..., 2] - p[..., 0])], axis=-1) / PI
    return np.sort(np.clip(g, 0.0, 2.0), axis=-1)


def chamber_from_phases(mu):
    """Chamber coordinates ``(s1, s2)`` of the class with m-phases ``mu``.

    A chamber point ``s1 vx + s2 vy`` has gaps ``(s1 - s2, s1 + s2, 2 - 2 s1)``.
    Each class has up to three such points with ``s2 <= s1``; the one with the
    smallest ``s2`` is canonical, and on a tie the one with the smaller ``s1``.
    """
    h = phase_gaps(mu)
    h1, h2, h3 = h[..., 0], h[..., 1], h[..., 2]
    low = (h2 - h1) <= (h3 - h2) + CHAMBER_TOL
    x = np.where(low, h1, h2)
    y = np.where(low, h2, h3)
    z = np.where(low, h3, h1)
    s1 = np.clip(1 - z / 2, 0.0, 1.0)
    s2 = np.clip((y - x) / 2, 0.0, None)
    s2 = np.minimum(s2, s1)
    return s1, s2


def chamber_point(s1, s2):
    """Cartan coordinates of the chamber point with coordinates ``(s1, s2)``."""
    s1 = np.asarray(s1, dtype=float)[..., None]
    s2 = np.asarray(s2, dtype=float)[..., None]
    return s1 * VX + s2 * VY


def point_to_phases(c):
    """Phases of the eigenvalues of m for the canonical gate at ``c``."""
    return 2 * point_phases(c)


def weyl_reduce(c):
    """Canonical chamber representative of the class of ``c``.

    Drops the component along (1, 1, 1), folds by the root lattice, the Weyl
    reflections and the conjugating reflections, and returns the resulting
    point together with its chamber coordinates ``0 <= s2 <= s1 <= 1``.
    """
    c = c.as_array() if isinstance(c, GeometricPoint) else np.asarray(c, dtype=float)
    c = c - c.dot(DIAGONAL) * DIAGONAL
    s1, s2 = chamber_from_phases(point_to_phases(c))
    s1, s2 = float(s1), float(s2)
    return GeometricPoint.from_array(chamber_point(s1, s2)), ChamberCoords(s1, s2)


def point_from_gate(g):
    """Canonical geometric point of an arbitrary symmetric gate."""
    mu = eigenphases_of_m(g).as_array()
    c1 = (mu[0] + mu[1]) / 2
    c2 = (mu[1] + mu[2]) / 2
    c3 = (mu[0] + mu[2]) / 2
    return weyl_reduce(GeometricPoint(c1, c2, c3))[0]


def chamber_coords_of_gate(g):
    s1, s2 = chamber_from_phases(eigenphases_of_m(g).as_array())
    return ChamberCoords(float(s1), float(s2))


def trace_m_from_point(c):
    """``Tr m`` for the canonical gate at ``c`` (vectorized)."""
    return np.exp(1j * point_to_phases(c)).sum(axis=-1)


def oplane_grid(resolution):
    """Raster of the primitive cell spanned by the two roots.

    Returns one record per point ``(i alpha1 + j alpha2) / resolution`` with
    ``i`` outer and ``j`` inner, both in ``range(resolution)``.
    """
    from .entangling import classify_phases, ep_from_absg

    if int(resolution) != resolution or resolution < 2:
        raise InvalidResolution(f"resolution must be an integer >= 2, got {resolution}")
    r = int(resolution)
    frac = np.arange(r) / r
    a, b = np.meshgrid(frac, frac, indexing="ij")
    c = a.ravel()[:, None] * ALPHA1 + b.ravel()[:, None] * ALPHA2
    mu = point_to_phases(c)
    s1, s2 = chamber_from_phases(mu)
    tr = np.exp(1j * mu).sum(axis=-1)
    absg = absG_from_point(c)
    ep = ep_from_absg(absg)
    perfect, _, _ = classify_phases(mu)
    arg = np.where(np.abs(tr) < 1e-12, 0.0, np.angle(tr))
    return [
        {"c1": c[k, 0], "c2": c[k, 1], "c3": c[k, 2], "s1": s1[k], "s2": s2[k],
         "arg_tr_m": float(arg[k]), "abs_g": float(absg[k]), "ep": float(ep[k]),
         "perfect": int(perfect[k])}
        for k in range(len(c))
    ]


def format_number(x):
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x) + 0.0, ".17g")


def records_to_csv(records, columns):
    """CSV text with a header row, ',' separators and '\\n' line endings."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for rec in records:
        w.writerow([format_number(rec[k]) for k in columns])
    return buf.getvalue()
