"""Sparse n-qubit statevectors built from sequence samples.

States store only nonzero amplitudes as parallel (index, amplitude) arrays
sorted by basis index. Qubit 1 is the most significant bit of the basis
index, qubit n the least significant; the parity of a stored value therefore
lives on the last qubit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, NumericError
from .sequences import GeneratorConfig, DEFAULT_CONFIG, SequenceSample, SequenceSpec, generate

__all__ = [
    "SparseState",
    "DENSE_CAP_QUBITS",
    "from_sample",
    "sequence_state",
    "to_dense",
    "fidelity",
    "to_text",
]

DENSE_CAP_QUBITS = 20
NORM_TOL = 1e-12


def is_uniform(arr: np.ndarray) -> bool:
    """True for stride-0 broadcast views holding one repeated amplitude."""
    return arr.ndim == 1 and len(arr) > 0 and arr.strides == (0,)


def _norm_sq(amps: np.ndarray) -> float:
    if is_uniform(amps):
        return len(amps) * float(abs(amps[0]) ** 2)
    if np.iscomplexobj(amps):
        return float(np.vdot(amps, amps).real)
    return float(np.dot(amps, amps))


@dataclass(frozen=True, eq=False)
class SparseState:
    """Unit-norm sparse statevector; arrays are read-only and index-sorted."""

    n_qubits: int
    indices: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        idx, amp = self.indices, self.amplitudes
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if idx.ndim != 1 or amp.ndim != 1 or len(idx) != len(amp):
            raise ValueError("indices/amplitudes must be 1-d arrays of equal length")
        if len(idx) == 0:
            raise ValueError("a state needs at least one nonzero amplitude")
        if int(idx[0]) < 0 or int(idx[-1]) > (1 << self.n_qubits) - 1:
            raise ValueError("basis index out of range")
        if not bool(np.all(idx[1:] > idx[:-1])):
            raise ValueError("indices must be strictly increasing")
        if is_uniform(amp):
            if amp[0] == 0:
                raise ValueError("zero amplitude stored")
        elif float(np.abs(amp).min()) == 0.0:
            raise ValueError("zero amplitude stored")
        drift = abs(_norm_sq(amp) - 1.0)
        if drift > NORM_TOL:
            raise NumericError(f"state norm deviates from 1 by {drift:.3e}")

    def __len__(self) -> int:
        return len(self.indices)


def from_sample(sample: SequenceSample, n_qubits: int) -> SparseState:
    """Normalized state with amplitude multiplicity/sqrt(tau) at each value."""
    if len(sample.values) == 0:
        raise ValueError("cannot build a state from an empty sample")
    if n_qubits < 1:
        raise ValueError("n_qubits must be positive")
    if int(sample.values[-1]) > (1 << n_qubits) - 1:
        raise ValueError(
            f"sample values need {sample.n_qubits} qubits, got n_qubits={n_qubits}"
        )
    root = math.sqrt(sample.tau)
    counts = sample.counts
    if counts.strides == (0,):
        amps = np.broadcast_to(np.float64(int(counts[0]) / root), len(sample.values))
    else:
        amps = counts.astype(np.float64) / root
        amps.setflags(write=False)
    return SparseState(n_qubits=n_qubits, indices=sample.values, amplitudes=amps)


def sequence_state(
    spec: SequenceSpec,
    n_qubits: int,
    config: GeneratorConfig = DEFAULT_CONFIG,
) -> SparseState:
    """Generate the sequence and build its state in one step."""
    return from_sample(generate(spec, n_qubits, config), n_qubits)


def to_dense(state: SparseState) -> np.ndarray:
    """Full 2**n complex vector; capped to keep memory honest."""
    if state.n_qubits > DENSE_CAP_QUBITS:
        raise CapacityError(
            f"dense conversion capped at {DENSE_CAP_QUBITS} qubits, "
            f"got {state.n_qubits}"
        )
    dense = np.zeros(1 << state.n_qubits, np.complex128)
    dense[state.indices.astype(np.int64)] = state.amplitudes
    return dense


def fidelity(a: SparseState, b: SparseState) -> float:
    """|<a|b>|**2 over the shared support."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    _, ia, ib = np.intersect1d(
        a.indices, b.indices, assume_unique=True, return_indices=True
    )
    if len(ia) == 0:
        return 0.0
    inner = np.sum(np.conj(a.amplitudes[ia]) * b.amplitudes[ib])
    return float(abs(inner) ** 2)


def to_text(state: SparseState) -> str:
    """Two-column debug dump: basis index then amplitude, one row per entry."""
    lines = [f"# n_qubits {state.n_qubits}"]
    complex_amps = np.iscomplexobj(state.amplitudes)
    for idx, amp in zip(state.indices.tolist(), state.amplitudes.tolist()):
        if complex_amps and amp.imag != 0.0:
            lines.append(f"{idx} {amp.real!r}{amp.imag:+}j")
        else:
            real = amp.real if complex_amps else amp
            lines.append(f"{idx} {real!r}")
    return "\n".join(lines) + "\n"
