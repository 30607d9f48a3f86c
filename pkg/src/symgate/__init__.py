"""Nonlocality and entangling power of symmetric two-qubit (qutrit) gates."""
from .errors import (BadAxis, ClassifierMismatch, InternalMismatch, InvalidCount, InvalidRange,
                     InvalidResolution, NotHermitian, NotUnitary, SymgateError, ZeroState)
from .gates import (BasisTag, GeometricPoint, SymmetricGate, bell_q_matrix, embed_reducible,
                    gate_from_point, is_reducible, local_rotation, random_gate, spin1_bell_matrix,
                    su3_normalize, to_basis)
from .invariants import (absG_from_point, eigenphases_of_m, invariant_G, m_matrix, oplane_grid,
                         point_from_gate, weyl_reduce)
from .entangling import (chamber_fraction_perfect, classify, concurrence_after, ep_closed_form,
                         ep_monte_carlo, linear_entropy_after)

__version__ = "0.1.0"
