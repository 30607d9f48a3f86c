"""Symmetric (qutrit) gates, basis changes and canonical nonlocal gates.

Three orthonormal bases of the symmetric two-qubit subspace are used:

* ``COMP_SYM``: |00>, (|01>+|10>)/sqrt(2), |11>
* ``SPIN1``: |1,1>, |1,0>, |1,-1> (same kets as ``COMP_SYM`` under the
  usual identification, so the two differ only by the tag)
* ``BELL_SYM``: the three symmetric rows of the Bell transform ``Q^dagger``

In ``BELL_SYM`` every local spin-1 rotation is a real orthogonal matrix.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadAxis
from .numerics import as_matrix, check_unitary, hermitian_expm

_S = 1 / np.sqrt(2)

# Rows are the Bell vectors (psi+, psi-, phi+, phi-) in the computational basis
# {|00>, |01>, |10>, |11>}; the last row is the antisymmetric singlet.
BELL_Q_DAG = _S * np.array(
    [[1, 0, 0, 1],
     [0, 1j, 1j, 0],
     [1j, 0, 0, -1j],
     [0, 1, -1, 0]], dtype=complex)

# Columns embed the COMP_SYM basis into the four-dimensional computational space.
SYM_EMBED = np.array(
    [[1, 0, 0],
     [0, _S, 0],
     [0, _S, 0],
     [0, 0, 1]], dtype=complex)

SINGLET = np.array([0, _S, -_S, 0], dtype=complex)

# Spin-1 angular momentum in the |1,1>, |1,0>, |1,-1> basis.
JX = _S * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
JY = _S * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex)
JZ = np.diag([1.0, 0.0, -1.0]).astype(complex)

CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=complex)


class BasisTag(Enum):
    COMP_SYM = "comp-sym"
    SPIN1 = "spin1"
    BELL_SYM = "bell-sym"


@dataclass(frozen=True, eq=False)
class SymmetricGate:
    """A 3x3 unitary acting on the symmetric subspace, tagged with its basis."""

    matrix: np.ndarray
    basis: BasisTag = BasisTag.BELL_SYM

    def __post_init__(self):
        M = check_unitary(self.matrix)
        if M.shape != (3, 3):
            raise ValueError(f"symmetric gates are 3x3, got {M.shape}")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "basis", BasisTag(self.basis))

    def __matmul__(self, other):
        if not isinstance(other, SymmetricGate):
            return NotImplemented
        other = to_basis(other, self.basis)
        return SymmetricGate(self.matrix @ other.matrix, self.basis)

    def allclose(self, other, atol=1e-12):
        other = to_basis(other, self.basis)
        return bool(np.allclose(self.matrix, other.matrix, rtol=0, atol=atol))


@dataclass(frozen=True)
class GeometricPoint:
    """Cartan coordinates ``(c1, c2, c3)`` of a nonlocal gate, in radians."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        if not np.all(np.isfinite([self.c1, self.c2, self.c3])):
            raise ValueError("geometric point must be finite")

    @classmethod
    def from_array(cls, c):
        c1, c2, c3 = (float(x) for x in c)
        return cls(c1, c2, c3)

    def as_array(self):
        return np.array([self.c1, self.c2, self.c3])

    def __add__(self, other):
        return GeometricPoint.from_array(self.as_array() + np.asarray(
            other.as_array() if isinstance(other, GeometricPoint) else other))


def bell_q_matrix():
    """The 4x4 Bell transform ``Q^dagger``; ``Q^dagger @ v`` gives Bell coordinates."""
    return BELL_Q_DAG.copy()


def spin1_bell_matrix():
    """Unitary change of basis from ``SPIN1`` (equivalently ``COMP_SYM``) to ``BELL_SYM``.

    Obtained by sending |1,1>, |1,0>, |1,-1> to |00>, (|01>+|10>)/sqrt(2), |11>
    and keeping the symmetric rows of ``Q^dagger``.
    """
    return BELL_Q_DAG[:3] @ SYM_EMBED


_T = spin1_bell_matrix()


def _to_bell(M, basis):
    if basis is BasisTag.BELL_SYM:
        return M
    return _T @ M @ _T.conj().T


def _from_bell(M, basis):
    if basis is BasisTag.BELL_SYM:
        return M
    return _T.conj().T @ M @ _T


def to_basis(g, target):
    """Re-express ``g`` in the ``target`` basis."""
    target = BasisTag(target)
    if g.basis is target:
        return g
    return SymmetricGate(_from_bell(_to_bell(g.matrix, g.basis), target), target)


def su3_normalize(g):
    """Divide out the principal cube root of ``det(g)``."""
    det = np.linalg.det(g.matrix)
    root = np.exp(1j * np.angle(det) / 3)
    return SymmetricGate(g.matrix / root, g.basis)


def point_phases(c):
    """Phases of the diagonal entries of the canonical gate at ``c``.

    Accepts a :class:`GeometricPoint` or an array whose last axis holds
    ``(c1, c2, c3)``; returns the matching ``(..., 3)`` array.
    """
    c = c.as_array() if isinstance(c, GeometricPoint) else np.asarray(c, dtype=float)
    c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    return 0.5 * np.stack([c1 - c2 + c3, c1 + c2 - c3, -c1 + c2 + c3], axis=-1)


def gate_from_point(c):
    """Diagonal ``BELL_SYM`` gate with eigenvalues ``exp(i (c1 - c2 + c3)/2)`` etc."""
    return SymmetricGate(np.diag(np.exp(1j * point_phases(c))), BasisTag.BELL_SYM)


def embed_reducible(g):
    """Block-diagonal 4x4 gate: ``g`` on the symmetric subspace, identity on the singlet.

    Returned in the computational basis {|00>, |01>, |10>, |11>}.
    """
    U = to_basis(g, BasisTag.COMP_SYM).matrix
    return SYM_EMBED @ U @ SYM_EMBED.conj().T + np.outer(SINGLET, SINGLET.conj())


def symmetric_block(V):
    """Restrict a 4x4 computational-basis gate to the symmetric subspace (``COMP_SYM``)."""
    return SYM_EMBED.conj().T @ np.asarray(V, dtype=complex) @ SYM_EMBED


def is_reducible(V, tol=1e-9):
    """True iff ``V`` maps the symmetric subspace into itself."""
    V = check_unitary(V)
    if V.shape != (4, 4):
        raise ValueError("expected a 4x4 two-qubit gate")
    leak = SINGLET.conj() @ V @ SYM_EMBED
    back = SYM_EMBED.conj().T @ V @ SINGLET
    return bool(max(np.linalg.norm(leak), np.linalg.norm(back)) < tol)


def nonlocal_generator(c):
    """Two-qubit Cartan generator ``(1/2) sum_k c_k sigma_k (x) sigma_k`` (Hermitian)."""
    c = c.as_array() if isinstance(c, GeometricPoint) else np.asarray(c, dtype=float)
    paulis = (np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1]))
    return 0.5 * sum(ck * np.kron(p, p) for ck, p in zip(c, paulis))


def nonlocal_gate(c):
    """The 4x4 nonlocal factor ``exp(i/2 sum_k c_k sigma_k sigma_k)``."""
    return hermitian_expm(nonlocal_generator(c), -1.0)


def local_rotation(axis, angle):
    """Spin-1 rotation ``exp(-i angle axis.J)`` as a ``SPIN1`` gate."""
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1) > 1e-10:
        raise BadAxis(f"rotation axis must be a unit 3-vector, got {axis!r}")
    gen = axis[0] * JX + axis[1] * JY + axis[2] * JZ
    return SymmetricGate(hermitian_expm(gen, angle), BasisTag.SPIN1)


def random_rotation(rng):
    """Uniformly random axis and angle, as a spin-1 gate."""
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    return local_rotation(axis, rng.uniform(0, 2 * np.pi))


def haar_unitary(rng, n=3):
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_gate(seed=None):
    """Haar-random special unitary gate in ``COMP_SYM``, deterministic per seed."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return su3_normalize(SymmetricGate(haar_unitary(rng), BasisTag.COMP_SYM))


def gate_to_json(g):
    return {
        "basis": g.basis.value,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in g.matrix],
    }


def gate_from_json(obj):
    """Parse the gate JSON schema. Raises ``ValueError`` naming the bad field."""
    if not isinstance(obj, dict):
        raise ValueError("gate: expected a JSON object")
    try:
        basis = BasisTag(obj.get("basis"))
    except ValueError:
        raise ValueError(f"basis: unknown basis {obj.get('basis')!r}") from None
    rows = obj.get("matrix")
    if not isinstance(rows, list) or len(rows) != 3:
        raise ValueError("matrix: expected 3 rows")
    entries = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 3:
            raise ValueError(f"matrix[{i}]: expected 3 entries")
        for j, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(v, (int, float)) for v in z)):
                raise ValueError(f"matrix[{i}][{j}]: expected [re, im]")
            entries.append(complex(z[0], z[1]))
    M = as_matrix(np.array(entries).reshape(3, 3))
    return SymmetricGate(M, basis)
