"""State-family constructors and seeded random-state generators."""

from __future__ import annotations

from math import cos, sin, sqrt

import numpy as np

from .linalg import DensityMatrix, StateVector, mix, permute_parties


def psi_lambda(lam: float) -> StateVector:
    """Two-qubit sqrt(lam)|00> + sqrt(1-lam)|11>."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    return StateVector((2, 2), [sqrt(lam), 0.0, 0.0, sqrt(1.0 - lam)])


def ghz3(theta: float) -> StateVector:
    """cos(theta)|000> + sin(theta)|111>."""
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = cos(theta)
    amps[7] = sin(theta)
    return StateVector((2, 2, 2), amps)


def w3(theta: float, alpha: float) -> StateVector:
    """cos(theta)|001> + cos(alpha)sin(theta)|010> + sin(alpha)sin(theta)|100>.

    Already unit-norm for every (theta, alpha).
    """
    amps = np.zeros(8, dtype=np.complex128)
    amps[1] = cos(theta)
    amps[2] = cos(alpha) * sin(theta)
    amps[4] = sin(alpha) * sin(theta)
    return StateVector((2, 2, 2), amps)


# The standard W state (all three amplitudes 1/sqrt(3)) sits at alpha=pi/4,
# theta = arccos(1/sqrt(3)).
W3_STANDARD_THETA = float(np.arccos(1.0 / np.sqrt(3.0)))
W3_STANDARD_ALPHA = float(np.pi / 4.0)


def acin_canonical(l0: float, l1: float, l2: float, l3: float, l4: float, phi: float = 0.0) -> StateVector:
    """Three-qubit canonical five-term form.

    l0|000> + e^{i phi} l1|001> + l2|010> + l3|100> + l4|111>, renormalized.
    The |111> weight is an independent l4.
    """
    weights = (l0, l1, l2, l3, l4)
    if any(w < 0 for w in weights):
        raise ValueError(f"weights must be non-negative, got {weights}")
    if not 0.0 <= phi <= np.pi:
        raise ValueError(f"phi must lie in [0, pi], got {phi}")
    if sum(w * w for w in weights) <= 0.0:
        raise ValueError("at least one weight must be positive")
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b000] = l0
    amps[0b001] = l1 * np.exp(1j * phi)
    amps[0b010] = l2
    amps[0b100] = l3
    amps[0b111] = l4
    return StateVector((2, 2, 2), amps)


def ghz4(theta: float) -> StateVector:
    """cos(theta)|0000> + sin(theta)|1111>."""
    amps = np.zeros(16, dtype=np.complex128)
    amps[0] = cos(theta)
    amps[15] = sin(theta)
    return StateVector((2, 2, 2, 2), amps)


def wg4(theta: float, mu: float, nu: float) -> StateVector:
    """Four-qubit W-like family.

    cos(theta)|0001> + sin(mu)sin(theta)|0010> + cos(mu)sin(nu)sin(theta)|0100>
    + sin(mu)sin(nu)sin(theta)|1000>, renormalized.  The raw coefficients are
    not unit-norm for general parameters; the pre-normalization norm is kept
    on the returned state's ``original_norm``.
    """
    amps = np.zeros(16, dtype=np.complex128)
    amps[0b0001] = cos(theta)
    amps[0b0010] = sin(mu) * sin(theta)
    amps[0b0100] = cos(mu) * sin(nu) * sin(theta)
    amps[0b1000] = sin(mu) * sin(nu) * sin(theta)
    return StateVector((2, 2, 2, 2), amps)


def random_pure(dims, seed) -> StateVector:
    """Haar-random pure state: normalized i.i.d. complex Gaussian amplitudes."""
    dims = tuple(int(d) for d in dims)
    rng = np.random.default_rng(seed)
    total = int(np.prod(dims))
    amps = rng.standard_normal(total) + 1j * rng.standard_normal(total)
    return StateVector(dims, amps)


def bipartitions(n: int) -> list[tuple[int, ...]]:
    """All bipartitions of n qubit parties, each named by the block holding party 0."""
    if n < 2:
        raise ValueError("need at least two parties to cut")
    cuts = []
    for mask in range(2 ** (n - 1)):
        block = (0,) + tuple(p for p in range(1, n) if mask >> (p - 1) & 1)
        if len(block) < n:
            cuts.append(block)
    return cuts


def _haar_block(rng: np.random.Generator, n_qubits: int) -> StateVector:
    dim = 2**n_qubits
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector((2,) * n_qubits, amps)


def _product_across_cut(rng: np.random.Generator, n: int, block: tuple[int, ...]) -> StateVector:
    other = tuple(p for p in range(n) if p not in block)
    left = _haar_block(rng, len(block))
    right = _haar_block(rng, len(other))
    joined = StateVector((2,) * n, np.kron(left.amplitudes, right.amplitudes))
    order = np.argsort(np.array(block + other))
    return permute_parties(joined, order)


def random_biseparable(n: int, cut, seed, terms: int | None = None) -> DensityMatrix:
    """Convex mixture of Haar-random products across one fixed bipartition.

    cut names one block of parties; the complement is the other block.
    terms fixes the number of mixture components (default: 2-5, drawn
    uniformly), with Dirichlet-uniform weights.
    """
    if n not in (3, 4):
        raise ValueError(f"n must be 3 or 4, got {n}")
    block = tuple(sorted(int(p) for p in cut))
    if len(set(block)) != len(block) or not block:
        raise ValueError(f"cut must be a nonempty set of distinct parties, got {cut}")
    if any(p < 0 or p >= n for p in block) or len(block) >= n:
        raise ValueError(f"cut must be a proper subset of 0..{n - 1}, got {cut}")
    rng = np.random.default_rng(seed)
    k = int(terms) if terms is not None else int(rng.integers(2, 6))
    if k < 1:
        raise ValueError("terms must be at least 1")
    weights = rng.dirichlet(np.ones(k)) if k > 1 else np.ones(1)
    parts = [_product_across_cut(rng, n, block).density() for _ in range(k)]
    return mix(parts, weights)


def random_separable(d: int, seed, terms: int | None = None) -> DensityMatrix:
    """Bipartite d x d separable state: mixture of Haar-random pure products."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    rng = np.random.default_rng(seed)
    k = int(terms) if terms is not None else int(rng.integers(1, 6))
    if k < 1:
        raise ValueError("terms must be at least 1")
    weights = rng.dirichlet(np.ones(k)) if k > 1 else np.ones(1)
    parts = []
    for _ in range(k):
        a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        b = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        parts.append(StateVector((d, d), np.kron(a, b)).density())
    return mix(parts, weights)


def biseparable_sample(n: int, trial: int, seed: int) -> DensityMatrix:
    """Trial state for the biseparability bound campaigns.

    Deterministic in (n, trial, seed).  Trials cycle through every
    bipartition; one slot in each cycle mixes two components taken across
    two different cuts, which is still biseparable by definition.
    """
    cuts = bipartitions(n)
    slot = trial % (len(cuts) + 1)
    if slot < len(cuts):
        return random_biseparable(n, cuts[slot], [seed, trial])
    rng = np.random.default_rng([seed, trial])
    i, j = rng.choice(len(cuts), size=2, replace=False)
    w = float(rng.uniform(0.05, 0.95))
    part_a = random_biseparable(n, cuts[i], [seed, trial, 0])
    part_b = random_biseparable(n, cuts[j], [seed, trial, 1])
    return mix([part_a, part_b], [w, 1.0 - w])


def separable_sample(d: int, trial: int, seed: int) -> DensityMatrix:
    """Trial state for the bipartite separable bound campaign."""
    return random_separable(d, [seed, trial])


def state_to_json_dict(psi: StateVector) -> dict:
    """Serializable form: {"dims": [...], "amplitudes": [[re, im], ...]}."""
    return {
        "dims": list(psi.dims),
        "amplitudes": [[float(a.real), float(a.imag)] for a in psi.amplitudes],
    }


def state_from_json_dict(data: dict) -> StateVector:
    if not isinstance(data, dict) or "dims" not in data or "amplitudes" not in data:
        raise ValueError('state JSON must carry "dims" and "amplitudes"')
    dims = data["dims"]
    raw = data["amplitudes"]
    try:
        amps = np.array([complex(re, im) for re, im in raw], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed amplitude list: {exc}") from None
    return StateVector(tuple(int(d) for d in dims), amps)
