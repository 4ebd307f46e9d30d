"""Grover-search feasibility: iteration counts, closed-form success, and an
exact dense simulation against sequence-membership oracles.

The planner treats the distinct in-range elements as the marked set. For the
families that repeat values (Fibonacci, Padovan) this differs from the
normalization count tau, so growth profiles carry both numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .qstate import SparseState
from .sequences import DEFAULT_CONFIG, GeneratorConfig, SequenceSpec, generate

__all__ = [
    "GroverPlan",
    "SIM_CAP_QUBITS",
    "PROFILE_COLUMNS",
    "plan",
    "plan_from_counts",
    "success_probability",
    "simulate",
    "growth_profile",
]

SIM_CAP_QUBITS = 16

PROFILE_COLUMNS = ("n", "marked_count", "tau", "density", "g_real", "g_int")


@dataclass(frozen=True)
class GroverPlan:
    n_qubits: int
    marked_count: int
    tau: int
    theta: float
    g_real: float
    g_int: int
    predicted_success: float


def _theta(marked: int, n_qubits: int) -> float:
    return math.asin(math.sqrt(marked / (1 << n_qubits)))


def success_probability(marked: int, n_qubits: int, k: int) -> float:
    """Probability of landing in the marked set after k Grover iterations."""
    if not 1 <= marked <= (1 << n_qubits):
        raise ValueError(f"marked count {marked} outside [1, 2**{n_qubits}]")
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    return math.sin((2 * k + 1) * _theta(marked, n_qubits)) ** 2


def plan_from_counts(marked: int, tau: int, n_qubits: int) -> GroverPlan:
    theta = _theta(marked, n_qubits)
    g_real = math.pi / (4.0 * theta) - 0.5
    g_int = int(math.floor(max(g_real, 0.0) + 0.5))  # round half up, floor at 0
    return GroverPlan(
        n_qubits=n_qubits,
        marked_count=marked,
        tau=tau,
        theta=theta,
        g_real=g_real,
        g_int=g_int,
        predicted_success=success_probability(marked, n_qubits, g_int),
    )


def plan(
    spec: SequenceSpec,
    n_qubits: int,
    config: GeneratorConfig = DEFAULT_CONFIG,
) -> GroverPlan:
    """Iteration budget for amplifying the family's in-range elements."""
    sample = generate(spec, n_qubits, config)
    if len(sample.values) == 0:
        raise ValueError("no in-range elements to mark")
    return plan_from_counts(len(sample.values), sample.tau, n_qubits)


def simulate(
    spec: SequenceSpec,
    n_qubits: int,
    k: int,
    config: GeneratorConfig = DEFAULT_CONFIG,
) -> tuple[SparseState, float, float]:
    """k exact Grover iterations from the uniform superposition.

    Returns the final state, the probability mass on the marked set, and the
    fidelity against the equal-weight superposition of marked elements.
    """
    if n_qubits > SIM_CAP_QUBITS:
        raise CapacityError(
            f"dense simulation capped at {SIM_CAP_QUBITS} qubits, got {n_qubits}"
        )
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    sample = generate(spec, n_qubits, config)
    marked = sample.values.astype(np.int64)
    if len(marked) == 0:
        raise ValueError("no in-range elements to mark")
    size = 1 << n_qubits
    vec = np.full(size, 1.0 / math.sqrt(size))
    for _ in range(k):
        vec[marked] *= -1.0  # phase oracle
        vec = 2.0 * vec.mean() - vec  # inversion about the mean
    vec /= math.sqrt(np.dot(vec, vec))  # scrub accumulated rounding
    amp_marked = vec[marked]
    hit = float(np.dot(amp_marked, amp_marked))
    fid = float(amp_marked.sum() / math.sqrt(len(marked))) ** 2
    nz = np.nonzero(vec)[0]
    final = SparseState(n_qubits=n_qubits, indices=nz, amplitudes=vec[nz])
    return final, hit, fid


def growth_profile(
    spec: SequenceSpec,
    n_range,
    config: GeneratorConfig = DEFAULT_CONFIG,
) -> list[tuple[int, int, int, float, float, int]]:
    """One PROFILE_COLUMNS row per n: iteration budget versus register size."""
    rows = []
    for n in n_range:
        p = plan(spec, n, config)
        rows.append(
            (n, p.marked_count, p.tau, p.marked_count / (1 << n), p.g_real, p.g_int)
        )
    return rows
