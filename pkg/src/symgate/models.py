"""Symmetric gates generated by three physical Hamiltonians.

* anisotropic Heisenberg coupling of two spins, diagonal in the Bell basis;
* the j = 1 Lipkin-Meshkov-Glick model ``B Jz + g1 Jz^2 - g2 Jx^2``;
* two cross-Kerr coupled oscillators, which in the two-excitation sector is
  the LMG model with ``B = wa - wb``, ``g1 = -g_ck``, ``g2 = 0``.

All couplings are angular frequencies; only the products with ``t`` matter.
"""
from dataclasses import dataclass

import numpy as np

from .entangling import classify, ep_from_absg
from .errors import InvalidRange
from .gates import JX, JZ, BasisTag, SymmetricGate, su3_normalize, to_basis
from .invariants import invariant_G
from .numerics import hermitian_expm

SWEEP_COLUMNS = ("t", "ep", "abs_g", "perfect", "boundary")


@dataclass(frozen=True)
class HeisenbergParams:
    Ix: float
    Iy: float
    Iz: float


@dataclass(frozen=True)
class LMGParams:
    B: float
    g1: float
    g2: float


@dataclass(frozen=True)
class CrossKerrParams:
    omega_a: float
    omega_b: float
    g_ck: float

    def as_lmg(self):
        return LMGParams(B=self.omega_a - self.omega_b, g1=-self.g_ck, g2=0.0)


@dataclass(frozen=True)
class SweepRecord:
    t: float
    ep: float
    abs_g: float
    perfect: bool
    boundary: bool


PRESETS = {
    "heisenberg": {"fig6a": HeisenbergParams(Ix=1.0, Iy=0.0, Iz=-1.0)},
    "lmg": {"fig6b": LMGParams(B=-3.5, g1=2.0, g2=4.0)},
    # B = g1 / 2 = 1 in LMG form, i.e. g_ck = -g1 = -2.
    "crosskerr": {"fig6c": CrossKerrParams(omega_a=1.0, omega_b=0.0, g_ck=-2.0)},
}


def heisenberg_gate(p, t):
    Ix, Iy, Iz = p.Ix, p.Iy, p.Iz
    phases = 0.5 * t * np.array([Ix - Iy + Iz, Ix + Iy - Iz, -Ix + Iy + Iz])
    return SymmetricGate(np.diag(np.exp(1j * phases)), BasisTag.BELL_SYM)


def heisenberg_ep(p, t):
    Ixy, Iyz, Ixz = p.Ix - p.Iy, p.Iy - p.Iz, p.Ix - p.Iz
    return 2.0 / 15.0 * (np.sin(Ixy * t) ** 2 + np.sin(Iyz * t) ** 2 + np.sin(Ixz * t) ** 2)


def lmg_hamiltonian(p):
    """Spin-1 matrix of ``B Jz + g1 Jz^2 - g2 Jx^2``."""
    H = p.B * JZ + p.g1 * JZ @ JZ - p.g2 * JX @ JX
    return H.real.astype(complex)


def lmg_gate(p, t):
    U = SymmetricGate(hermitian_expm(lmg_hamiltonian(p), t), BasisTag.SPIN1)
    return su3_normalize(to_basis(U, BasisTag.BELL_SYM))


@dataclass(frozen=True)
class LMGInvariantReport:
    printed: float
    corrected: float
    pipeline: float

    @property
    def discrepancy(self):
        return self.printed - self.pipeline


def _lmg_closed(p, t, denominator):
    R = np.hypot(p.B, p.g2 / 2)
    shrink = 0.0 if R == 0 else p.g2 ** 2 * np.sin(R * t) ** 2 / denominator(R)
    G1 = 1 - shrink
    return (1 + 4 * G1 * np.cos(2 * (p.g1 + p.g2 / 2) * t) + 4 * G1 ** 2) / 9


def lmg_absG_closed(p, t):
    """Closed-form ``|G|`` for the LMG gate next to the direct pipeline value.

    ``printed`` uses ``G1 = 1 - g2^2 sin^2(R t) / (2 R)``, which does not match
    the pipeline; ``corrected`` uses ``2 R^2`` in the denominator, which does.
    """
    return LMGInvariantReport(
        printed=float(_lmg_closed(p, t, lambda R: 2 * R)),
        corrected=float(_lmg_closed(p, t, lambda R: 2 * R ** 2)),
        pipeline=invariant_G(lmg_gate(p, t)).absG,
    )


def crosskerr_gate(p, t):
    return lmg_gate(p.as_lmg(), t)


def crosskerr_ep(p, t):
    return 4.0 / 15.0 * np.sin(p.g_ck * t) ** 2


GATES = {"heisenberg": heisenberg_gate, "lmg": lmg_gate, "crosskerr": crosskerr_gate}


def sweep(model, params, t_start, t_end, n_steps):
    """Evaluate a model on a uniform time grid through the generic pipeline."""
    if model not in GATES:
        raise ValueError(f"unknown model {model!r}")
    if not t_end > t_start or int(n_steps) != n_steps or n_steps < 2:
        raise InvalidRange(f"need t_end > t_start and n_steps >= 2, got "
                           f"({t_start}, {t_end}, {n_steps})")
    records = []
    for t in np.linspace(t_start, t_end, int(n_steps)):
        g = GATES[model](params, t)
        absg = invariant_G(g).absG
        cls = classify(g)
        records.append(SweepRecord(float(t), float(ep_from_absg(absg)), absg,
                                   cls.is_perfect, cls.on_boundary))
    return records
