"""Quantum states from integer sequences: entanglement and Grover feasibility."""

from .errors import BFileFormatError, CapacityError, NumericError, SeqStateError
from .sequences import (
    DEFAULT_CONFIG,
    Family,
    GeneratorConfig,
    OverlapReport,
    SequenceSample,
    SequenceSpec,
    build_s_sequence,
    generate,
    overlap,
    tau,
)
from .qstate import SparseState, fidelity, from_sample, sequence_state, to_dense
from .entanglement import (
    Bipartition,
    DensityMatrix,
    EntanglementReport,
    analyze,
    bipartition_entropies,
    canonical_bipartitions,
    e_avg_th,
    e_sum_and_avg_all,
    entropy,
    max_avg_all,
    reduced_density,
    single_qubit_profile,
)
from .grover import GroverPlan, growth_profile, plan, simulate, success_probability
from .ingest import (
    BFile,
    Status,
    ValidationReport,
    cache_key,
    cache_load,
    cache_store,
    parse_bfile,
    serialize_bfile,
    validate,
)

__version__ = "0.1.0"
