"""Dense complex linear algebra for small multi-party quantum states.

Conventions used across the package: parties are numbered from 0, party 0
is the leftmost tensor factor, and composite indices are row-major over
the local dimensions, so the outcome string (i, j, k) of a three-party
system with dimensions (d0, d1, d2) maps to the flat index
(i * d1 + j) * d2 + k.  State vectors and density matrices are immutable
after construction and every construction re-checks its defining
invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

# Tolerance hierarchy.  Construction invariants are the tightest thing we
# can hold against accumulated float error from a handful of matmuls;
# derived equalities get one order of magnitude more slack; completeness
# and unitarity residuals of 2x2 blocks sit at machine-level precision.
CONSTRUCTION_TOL = 1e-10
EQUALITY_TOL = 1e-9
COMPLETENESS_TOL = 1e-12
PSD_TOL = 1e-9


class InvariantError(RuntimeError):
    """An internal consistency check failed.

    Bad caller input raises ValueError.  InvariantError is reserved for
    conditions that indicate a bug or numerical breakdown inside the
    package itself, such as a probability distribution that does not sum
    to one.  These are never silently absorbed.
    """


def _check_dims(dims) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out:
        raise ValueError("dims must contain at least one party")
    if any(d < 2 for d in out):
        raise ValueError(f"every local dimension must be at least 2, got {out}")
    return out


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalised pure state over ``prod(dims)`` complex amplitudes.

    Amplitudes handed to the constructor are renormalised; the norm of
    the raw input is kept in ``original_norm`` so callers can inspect
    how far their parameterisation was from unit length.
    """

    dims: tuple[int, ...]
    amplitudes: np.ndarray
    original_norm: float = field(init=False, default=0.0)

    def __post_init__(self) -> None:
        dims = _check_dims(self.dims)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != prod(dims):
            raise ValueError(
                f"expected {prod(dims)} amplitudes for dims {dims}, got {amps.size}"
            )
        if not (np.all(np.isfinite(amps.real)) and np.all(np.isfinite(amps.imag))):
            raise ValueError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if norm <= 1e-12:
            raise ValueError("cannot normalise a zero vector")
        amps = amps / norm
        amps.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "original_norm", norm)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def density(self) -> "DensityMatrix":
        """Rank-one projector onto this state."""
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator over ``dims``.

    The constructor validates hermiticity and trace at 1e-10 and rejects
    eigenvalues below -1e-9.  It never repairs its input.
    """

    dims: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        dims = _check_dims(self.dims)
        d = prod(dims)
        m = np.array(self.entries, dtype=np.complex128)
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix for dims {dims}, got shape {m.shape}")
        if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
            raise ValueError("entries must be finite")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > CONSTRUCTION_TOL:
            raise ValueError(f"matrix is not hermitian (residual {herm:.3e})")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > CONSTRUCTION_TOL:
            raise ValueError(f"trace must be 1, got {tr}")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -PSD_TOL:
            raise ValueError(f"matrix has a negative eigenvalue ({lo:.3e})")
        m.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", m)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product of two operators or vectors."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=np.complex128).conj().T


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every party not listed in ``keep``.

    Parameters
    ----------
    rho : DensityMatrix
    keep : iterable of party indices to retain, any order; duplicates
        are rejected.

    Returns
    -------
    DensityMatrix on the retained parties, in ascending party order.
    """
    keep_list = [int(k) for k in keep]
    n = rho.n_parties
    if not keep_list:
        raise ValueError("keep must name at least one party")
    if len(set(keep_list)) != len(keep_list):
        raise ValueError(f"duplicate party index in keep: {keep_list}")
    if any(k < 0 or k >= n for k in keep_list):
        raise ValueError(f"party index out of range in keep={keep_list} for {n} parties")
    kept = sorted(keep_list)

    letters = "abcdefghijklmnopqrstuvwx"
    row, col, out_row, out_col = [], [], [], []
    cursor = 0
    for p in range(n):
        if p in kept:
            r, c = letters[cursor], letters[cursor + 1]
            cursor += 2
            out_row.append(r)
            out_col.append(c)
        else:
            r = c = letters[cursor]
            cursor += 1
        row.append(r)
        col.append(c)
    subscripts = "".join(row + col) + "->" + "".join(out_row + out_col)
    tensor = rho.entries.reshape(rho.dims + rho.dims)
    sub = np.einsum(subscripts, tensor)
    d_keep = prod(rho.dims[k] for k in kept)
    return DensityMatrix(tuple(rho.dims[k] for k in kept), sub.reshape(d_keep, d_keep))


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2) as a real number."""
    return float(np.real(np.trace(rho.entries @ rho.entries)))


def schmidt_coefficients(psi: StateVector) -> np.ndarray:
    """Singular values of the bipartite amplitude matrix, descending.

    Only defined for exactly two parties; the squares sum to one.
    """
    if psi.n_parties != 2:
        raise ValueError(f"schmidt_coefficients needs a bipartite state, got {psi.n_parties} parties")
    mat = psi.amplitudes.reshape(psi.dims)
    return np.linalg.svd(mat, compute_uv=False)


def reduced_rank(rho: DensityMatrix, tol: float = EQUALITY_TOL) -> int:
    """Number of eigenvalues strictly above ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return int(np.sum(np.linalg.eigvalsh(rho.entries) > tol))


def permute_parties(psi: StateVector, order) -> StateVector:
    """Relabel parties so that new party i is old party ``order[i]``."""
    order = tuple(int(o) for o in order)
    if sorted(order) != list(range(psi.n_parties)):
        raise ValueError(f"order must be a permutation of 0..{psi.n_parties - 1}, got {order}")
    tensor = psi.amplitudes.reshape(psi.dims)
    new = np.transpose(tensor, axes=order)
    return StateVector(tuple(psi.dims[o] for o in order), new.reshape(-1))


def mix(parts, weights) -> DensityMatrix:
    """Convex mixture of density matrices with matching dims.

    Weights must be non-negative; they are renormalised to sum to one so
    the result keeps unit trace exactly.
    """
    parts = list(parts)
    w = np.asarray(list(weights), dtype=float)
    if len(parts) == 0 or w.size != len(parts):
        raise ValueError("need one weight per density matrix")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and non-negative")
    total = float(w.sum())
    if total <= 0:
        raise ValueError("weights must not all vanish")
    dims = parts[0].dims
    if any(p.dims != dims for p in parts):
        raise ValueError("all density matrices must share the same dims")
    acc = np.zeros_like(parts[0].entries)
    for wi, p in zip(w / total, parts):
        acc = acc + wi * p.entries
    return DensityMatrix(dims, acc)
