"""Entanglement measures for sparse pure states.

Reduced density matrices are always formed on the smaller side of a cut via
Gram accumulation: grouping the sparse amplitudes by traced-side bit pattern
gives A with rho_small = A A^dagger, whose nonzero spectrum matches the other
side's exactly for pure states. Entropies are base 2 throughout; eigenvalues
at or below 1e-12 are treated as exact zeros.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import sparse as _sp

from .errors import CapacityError, NumericError
from .qstate import SparseState, is_uniform

__all__ = [
    "Bipartition",
    "DensityMatrix",
    "EntanglementReport",
    "SWEEP_CAP_QUBITS",
    "REDUCED_DIM_CAP",
    "EIG_CLIP",
    "canonical_bipartitions",
    "reduced_density",
    "entropy",
    "single_qubit_profile",
    "e_avg_th",
    "bipartition_entropies",
    "e_sum_and_avg_all",
    "max_avg_all",
    "analyze",
]

SWEEP_CAP_QUBITS = 16
REDUCED_DIM_CAP = 1 << 14
EIG_CLIP = 1e-12
HERMITICITY_TOL = 1e-10

_BITMAP_MIN_NNZ = 1 << 20  # below this the searchsorted pairing wins
_CHUNK = 1 << 22


@dataclass(frozen=True)
class Bipartition:
    """A kept/traced split; bit i-1 of keep_mask set means qubit i is kept."""

    n_qubits: int
    keep_mask: int

    def __post_init__(self) -> None:
        full = (1 << self.n_qubits) - 1
        if not 0 < self.keep_mask < full:
            raise ValueError(
                f"keep_mask {self.keep_mask:#x} must keep between 1 and "
                f"{self.n_qubits - 1} of {self.n_qubits} qubits"
            )

    @property
    def kept_qubits(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(1, self.n_qubits + 1) if (self.keep_mask >> (i - 1)) & 1
        )

    @property
    def kept_size(self) -> int:
        return bin(self.keep_mask).count("1")

    def complement(self) -> "Bipartition":
        full = (1 << self.n_qubits) - 1
        return Bipartition(self.n_qubits, full ^ self.keep_mask)

    def canonical(self) -> "Bipartition":
        """The equivalent split whose kept side contains qubit 1."""
        return self if self.keep_mask & 1 else self.complement()


def canonical_bipartitions(n_qubits: int):
    """All 2**(n-1) - 1 splits keeping qubit 1, in ascending mask order."""
    if n_qubits < 2:
        raise ValueError("bipartitions need at least 2 qubits")
    full = (1 << n_qubits) - 1
    for mask in range(1, full, 2):
        yield Bipartition(n_qubits, mask)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dim: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        e = self.entries
        if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] != self.dim:
            raise ValueError("entries must be a square dim x dim matrix")
        if self.dim < 1 or self.dim & (self.dim - 1):
            raise ValueError("dim must be a power of two")


@dataclass(frozen=True, eq=False)
class EntanglementReport:
    n_qubits: int
    per_qubit: tuple[float, ...]
    e_avg_th: float
    max_avg_all: float
    e_sum: float | None = None
    e_avg_all: float | None = None


def _index_bits(n_qubits: int, qubits: tuple[int, ...]) -> list[int]:
    # qubit i sits at index bit n - i
    return sorted(n_qubits - i for i in qubits)


def _pack_bits(idx: np.ndarray, bits: list[int]) -> np.ndarray:
    out = np.zeros(len(idx), np.int64)
    for j, b in enumerate(bits):
        out |= ((idx >> b) & 1) << j
    return out


def _gram(amps: np.ndarray, rows: np.ndarray, cols: np.ndarray, s_dim: int, t_dim: int) -> np.ndarray:
    a = _sp.coo_matrix((amps, (rows, cols)), shape=(s_dim, t_dim)).tocsr()
    at = a.conjugate().T if np.iscomplexobj(amps) else a.T
    return (a @ at).toarray()


def reduced_density(state: SparseState, part: Bipartition) -> DensityMatrix:
    """Reduced state of the cut, on whichever side has fewer qubits."""
    n = state.n_qubits
    if part.n_qubits != n:
        raise ValueError(f"bipartition is over {part.n_qubits} qubits, state has {n}")
    kept = _index_bits(n, part.kept_qubits)
    other = [b for b in range(n) if b not in kept]
    small, big = (kept, other) if len(kept) <= len(other) else (other, kept)
    dim = 1 << len(small)
    if dim > REDUCED_DIM_CAP:
        raise CapacityError(
            f"reduced dimension 2**{len(small)} exceeds the cap {REDUCED_DIM_CAP}"
        )
    idx = state.indices.astype(np.int64, copy=False)
    rows = _pack_bits(idx, small)
    cols = _pack_bits(idx, big)
    rho = _gram(np.asarray(state.amplitudes), rows, cols, dim, 1 << len(big))
    return DensityMatrix(dim=dim, entries=rho)


def entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy, log base 2, after validating the matrix."""
    m = rho.entries
    herm_dev = float(np.abs(m - m.conj().T).max())
    if herm_dev > HERMITICITY_TOL:
        raise NumericError(f"hermiticity deviation {herm_dev:.3e}")
    trace_dev = float(abs(np.trace(m) - 1.0))
    if trace_dev > HERMITICITY_TOL:
        raise NumericError(f"trace deviates from 1 by {trace_dev:.3e}")
    eigs = np.linalg.eigvalsh(m)
    if float(eigs[0]) < -HERMITICITY_TOL:
        raise NumericError(f"negative eigenvalue {float(eigs[0]):.3e}")
    return _spectrum_entropy(eigs)


def _spectrum_entropy(eigs: np.ndarray) -> float:
    # Clipping is symmetric: an eigenvalue within EIG_CLIP of 1 means all the
    # remaining mass was already clipped away, so the entropy is an exact 0.
    lam = eigs[(eigs > EIG_CLIP) & (eigs < 1.0 - EIG_CLIP)]
    if len(lam) == 0:
        return 0.0
    return max(float(-(lam * np.log2(lam)).sum()), 0.0)


def _entropy_2x2(p1: float, coh_sq: float) -> float:
    # closed-form spectrum of [[p0, c], [c*, p1]] with |c|^2 = coh_sq
    p1 = min(max(p1, 0.0), 1.0)
    p0 = 1.0 - p1
    disc = math.sqrt(max((p0 - p1) ** 2 + 4.0 * coh_sq, 0.0))
    h = 0.0
    for lam in ((1.0 + disc) / 2.0, (1.0 - disc) / 2.0):
        if EIG_CLIP < lam < 1.0 - EIG_CLIP:
            h -= lam * math.log2(lam)
    return max(h, 0.0)


def _profile_counts_bitmap(idx: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-bit one-counts and (v, v + 2**b) partner counts for uniform states."""
    present = np.zeros(1 << n, bool)
    present[idx] = True
    ones = np.zeros(n, np.int64)
    pairs = np.zeros(n, np.int64)
    for pos in range(n):
        step = idx.dtype.type(1 << pos)
        for s in range(0, len(idx), _CHUNK):
            ch = idx[s : s + _CHUNK]
            hi = (ch >> pos) & 1
            ones[pos] += int(np.count_nonzero(hi))
            lo = ch[hi == 0]
            pairs[pos] += int(np.count_nonzero(present[lo + step]))
    return ones, pairs


def single_qubit_profile(state: SparseState) -> list[float]:
    """Entropy of each 1-vs-rest cut, qubit 1 (most significant bit) first.

    Only the four matrix elements of the 2x2 reduced state are ever needed:
    the bit-0/bit-1 probability masses and the single coherence between a
    value and its partner differing in that bit.
    """
    n = state.n_qubits
    idx = state.indices
    amps = state.amplitudes
    nnz = len(idx)

    if is_uniform(amps) and not np.iscomplexobj(amps) and nnz >= _BITMAP_MIN_NNZ:
        w = float(amps[0]) ** 2
        ones, pairs = _profile_counts_bitmap(idx, n)
        return [
            _entropy_2x2(float(ones[n - i]) * w, (float(pairs[n - i]) * w) ** 2)
            for i in range(1, n + 1)
        ]

    out = []
    for i in range(1, n + 1):
        b = n - i
        hi = ((idx >> b) & 1).astype(bool)
        a1 = amps[hi]
        if np.iscomplexobj(amps):
            p1 = float(np.vdot(a1, a1).real) if len(a1) else 0.0
        else:
            p1 = float(np.dot(a1, a1)) if len(a1) else 0.0
        lo_idx = idx[~hi]
        a0 = amps[~hi]
        partner = lo_idx + idx.dtype.type(1 << b)
        pos = np.searchsorted(idx, partner)
        inb = pos < nnz
        pos_c = np.where(inb, pos, 0)
        hit = inb & (idx[pos_c] == partner)
        coh = complex(np.sum(a0[hit] * np.conj(amps[pos_c[hit]])))
        out.append(_entropy_2x2(p1, abs(coh) ** 2))
    return out


def e_avg_th(state: SparseState) -> float:
    """Mean single-qubit entanglement entropy."""
    return float(np.mean(single_qubit_profile(state)))


def _cut_entropy(
    amps: np.ndarray, bitcols: list[np.ndarray], n: int, mask: int
) -> float:
    kept = [n - i for i in range(1, n + 1) if (mask >> (i - 1)) & 1]
    if 2 * len(kept) > n:
        kept = [b for b in range(n) if b not in kept]
    other = [b for b in range(n) if b not in kept]
    rows = np.zeros(len(amps), np.int64)
    for j, b in enumerate(sorted(kept)):
        rows |= bitcols[b] << j
    cols = np.zeros(len(amps), np.int64)
    for j, b in enumerate(sorted(other)):
        cols |= bitcols[b] << j
    rho = _gram(amps, rows, cols, 1 << len(kept), 1 << len(other))
    return _spectrum_entropy(np.linalg.eigvalsh(rho))


def bipartition_entropies(
    state: SparseState, threads: int = 1
) -> list[tuple[int, int, float]]:
    """(keep_mask, kept_size, entropy) for every canonical bipartition.

    Row order is ascending mask regardless of threads, so downstream sums
    are reproducible bit for bit.
    """
    n = state.n_qubits
    if n > SWEEP_CAP_QUBITS:
        raise CapacityError(
            f"bipartition sweep capped at {SWEEP_CAP_QUBITS} qubits, got {n}"
        )
    if n < 2:
        raise ValueError("bipartitions need at least 2 qubits")
    idx = state.indices.astype(np.int64, copy=False)
    amps = np.asarray(state.amplitudes)
    bitcols = [(idx >> b) & 1 for b in range(n)]
    masks = list(range(1, (1 << n) - 1, 2))

    def one(mask: int) -> float:
        return _cut_entropy(amps, bitcols, n, mask)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entropies = list(pool.map(one, masks))
    else:
        entropies = [one(m) for m in masks]
    return [
        (mask, bin(mask).count("1"), e) for mask, e in zip(masks, entropies)
    ]


def e_sum_and_avg_all(state: SparseState, threads: int = 1) -> tuple[float, float]:
    """Entropy summed over every canonical bipartition, and its average."""
    rows = bipartition_entropies(state, threads=threads)
    total = math.fsum(r[2] for r in rows)
    return total, total / len(rows)


def max_avg_all(n_qubits: int) -> float:
    """Average of the min(a, n - a) entropy ceiling over all bipartitions."""
    if n_qubits < 2:
        raise ValueError("need at least 2 qubits")
    n = n_qubits
    total = sum(math.comb(n - 1, a - 1) * min(a, n - a) for a in range(1, n))
    return total / ((1 << (n - 1)) - 1)


def analyze(
    state: SparseState, include_sweep: bool = False, threads: int = 1
) -> EntanglementReport:
    """Per-qubit profile plus averages; the full sweep only on request."""
    per_qubit = single_qubit_profile(state)
    avg_th = float(np.mean(per_qubit))
    e_sum = e_avg = None
    if include_sweep:
        e_sum, e_avg = e_sum_and_avg_all(state, threads=threads)
    return EntanglementReport(
        n_qubits=state.n_qubits,
        per_qubit=tuple(per_qubit),
        e_avg_th=avg_th,
        max_avg_all=max_avg_all(state.n_qubits) if state.n_qubits >= 2 else 0.0,
        e_sum=e_sum,
        e_avg_all=e_avg,
    )
