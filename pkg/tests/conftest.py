from pathlib import Path

import numpy as np
import pytest

from seqstate.qstate import SparseState


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return Path(__file__).parent / "fixtures"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20147)


@pytest.fixture
def make_random_state(rng):
    """Factory for normalized sparse states with random support and weights."""

    def build(n_qubits: int, nnz: int, complex_amps: bool = False) -> SparseState:
        indices = np.sort(rng.choice(1 << n_qubits, size=nnz, replace=False))
        amps = rng.uniform(0.5, 1.5, nnz)
        if complex_amps:
            amps = amps * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, nnz))
        amps = amps / np.sqrt(np.vdot(amps, amps).real)
        return SparseState(n_qubits=n_qubits, indices=indices.astype(np.uint32), amplitudes=amps)

    return build
