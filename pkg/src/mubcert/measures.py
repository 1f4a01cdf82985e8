"""Entanglement measures used to cross-validate the certification quantities."""

from __future__ import annotations

from math import fsum, sqrt

import numpy as np

from .linalg import DensityMatrix, StateVector, partial_trace, purity


def one_tangle(rho: DensityMatrix) -> float:
    """4 det(rho) of a single-qubit state, clamped to [0, 1]."""
    if rho.dims != (2,):
        raise ValueError(f"one_tangle needs a single qubit, got dims {rho.dims}")
    value = 4.0 * float(np.real(np.linalg.det(rho.entries)))
    return min(max(value, 0.0), 1.0)


def triangle_tau(psi: StateVector) -> float:
    """Triangle measure of genuine tripartite entanglement.

    The three one-tangles act as triangle side lengths; the measure is
    sqrt((16/3) * Heron product).  The radicand is clamped at zero to
    absorb float noise in degenerate triangles.
    """
    if psi.dims != (2, 2, 2):
        raise ValueError(f"triangle_tau needs three qubits, got dims {psi.dims}")
    rho = psi.density()
    a1, a2, a3 = (one_tangle(partial_trace(rho, [k])) for k in range(3))
    s = 0.5 * (a1 + a2 + a3)
    radicand = (16.0 / 3.0) * s * (s - a1) * (s - a2) * (s - a3)
    return sqrt(max(radicand, 0.0))


def global_q(psi: StateVector) -> float:
    """Global entanglement measure: 2 (1 - mean single-party purity)."""
    if any(d != 2 for d in psi.dims):
        raise ValueError(f"global_q is defined for qubits, got dims {psi.dims}")
    rho = psi.density()
    n = psi.n_parties
    mean_purity = fsum(purity(partial_trace(rho, [k])) for k in range(n)) / n
    return 2.0 * (1.0 - mean_purity)
