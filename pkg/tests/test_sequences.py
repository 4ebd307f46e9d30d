"""Generators against naive references, plus the worked constructions."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from seqstate.errors import CapacityError
from seqstate.sequences import (
    DEFAULT_CONFIG,
    Family,
    GeneratorConfig,
    SequenceSample,
    SequenceSpec,
    build_s_sequence,
    generate,
    overlap,
    tau,
)

REFERENCES = {
    Family.PRIME: oracles.primes_upto,
    Family.SPRIME: oracles.sprimes_upto,
    Family.HAPPY: oracles.happys_upto,
    Family.LUCKY: oracles.luckys_upto,
    Family.ABUNDANT: oracles.abundants_upto,
    Family.HARSHAD: oracles.harshads_upto,
    Family.TRIANGULAR: oracles.triangulars_upto,
    Family.LAZY: oracles.lazys_upto,
}


@pytest.mark.parametrize("family", sorted(REFERENCES, key=lambda f: f.value))
def test_repeat_free_families_match_reference(family):
    sample = generate(SequenceSpec(family), 12)
    assert sample.values.tolist() == REFERENCES[family]((1 << 12) - 1)
    assert sample.counts.strides == (0,)
    assert tau(sample) == len(sample.values)


@pytest.mark.parametrize(
    "family,reference",
    [(Family.FIBONACCI, oracles.fib_terms_upto), (Family.PADOVAN, oracles.padovan_terms_upto)],
)
def test_recurrence_families_carry_multiplicity(family, reference):
    sample = generate(SequenceSpec(family), 10)
    assert sample.entries == oracles.term_multiset(reference(1023))


def test_fibonacci_multiplicity_and_tau():
    sample = generate(SequenceSpec(Family.FIBONACCI), 4)
    assert sample.entries == [(0, 1), (1, 2), (2, 1), (3, 1), (5, 1), (8, 1), (13, 1)]
    assert tau(sample) == 10


def test_padovan_prefix():
    sample = generate(SequenceSpec(Family.PADOVAN), 5)
    # terms 1,1,1,2,2,3,4,5,7,9,12,16,21,28 below 32
    assert sample.entries == [
        (1, 3), (2, 2), (3, 1), (4, 1), (5, 1), (7, 1), (9, 1),
        (12, 1), (16, 1), (21, 1), (28, 1),
    ]


@pytest.mark.parametrize("r", [1, 3, 17])
def test_pa_progression(r):
    sample = generate(SequenceSpec(Family.PA, r), 8)
    assert sample.values.tolist() == list(range(0, 256, r))


def test_four_qubit_example_sets():
    assert generate(SequenceSpec(Family.PRIME), 4).values.tolist() == [2, 3, 5, 7, 11, 13]
    assert generate(SequenceSpec(Family.HAPPY), 4).values.tolist() == [1, 7, 10, 13]
    assert generate(SequenceSpec(Family.LUCKY), 4).values.tolist() == [1, 3, 7, 9, 13, 15]
    assert tau(generate(SequenceSpec(Family.PRIME), 4)) == 6


def test_s_sequence_worked_steps():
    assert build_s_sequence(2).values.tolist() == [0, 3]
    assert build_s_sequence(3).values.tolist() == [0, 2, 3]
    assert build_s_sequence(4).values.tolist() == [0, 2, 3, 12, 13, 15]
    assert build_s_sequence(6).values.tolist() == [
        0, 2, 3, 12, 13, 14, 15, 48, 49, 50, 51, 60, 61, 63,
    ]


@pytest.mark.parametrize("k_end", [2, 5, 9, 12])
def test_s_sequence_matches_reference(k_end):
    assert build_s_sequence(k_end).values.tolist() == sorted(oracles.s_set(k_end))


def test_s_sequence_register_width():
    assert build_s_sequence(6).n_qubits == 6
    assert generate(SequenceSpec(Family.S_OSCILLATING), 9).n_qubits == 9


def test_s_sequence_rejects_bad_k_end():
    with pytest.raises(ValueError):
        build_s_sequence(1)
    with pytest.raises(ValueError):
        build_s_sequence(29)


def test_s_sequence_is_not_truncation_consistent():
    # the 14 adjoined at step k = 4 is below 2**4, so the 5-qubit set is not
    # the 4-qubit set's extension
    wide = generate(SequenceSpec(Family.S_OSCILLATING), 5).values
    narrow = generate(SequenceSpec(Family.S_OSCILLATING), 4).values
    assert wide[wide < 16].tolist() != narrow.tolist()


TRUNCATING = [
    (Family.PRIME, 1), (Family.SPRIME, 1), (Family.HAPPY, 1), (Family.LUCKY, 1),
    (Family.ABUNDANT, 1), (Family.HARSHAD, 1), (Family.TRIANGULAR, 1),
    (Family.LAZY, 1), (Family.FIBONACCI, 1), (Family.PADOVAN, 1),
    (Family.PA, 3), (Family.PA, 4),
]


@settings(max_examples=40, deadline=None)
@given(pick=st.sampled_from(TRUNCATING), n1=st.integers(2, 11), extra=st.integers(1, 3))
def test_truncation_consistency(pick, n1, extra):
    family, r = pick
    spec = SequenceSpec(family, r)
    narrow = generate(spec, n1)
    wide = generate(spec, n1 + extra)
    cut = int(np.searchsorted(wide.values, 1 << n1))
    assert wide.values[:cut].tolist() == narrow.values.tolist()
    assert np.asarray(wide.counts)[:cut].tolist() == np.asarray(narrow.counts).tolist()


def test_overlap_fib_padovan():
    a = generate(SequenceSpec(Family.FIBONACCI), 14)
    b = generate(SequenceSpec(Family.PADOVAN), 14)
    report = overlap(a, b)
    assert report.common_values == (1, 2, 3, 5, 21)
    assert report.common_count == 5
    assert report.fraction_of_smaller == 5 / min(len(a), len(b))


def test_overlap_rejects_mixed_registers():
    a = generate(SequenceSpec(Family.PRIME), 4)
    b = generate(SequenceSpec(Family.PRIME), 5)
    with pytest.raises(ValueError):
        overlap(a, b)


def test_generate_rejects_out_of_cap_register():
    with pytest.raises(ValueError):
        generate(SequenceSpec(Family.PRIME), 29)
    with pytest.raises(ValueError):
        generate(SequenceSpec(Family.PRIME), 0)


def test_lucky_cap_is_a_capacity_error():
    tight = GeneratorConfig(lucky_cap=1000)
    with pytest.raises(CapacityError):
        generate(SequenceSpec(Family.LUCKY), 10, tight)
    # below the cap the same config works
    assert len(generate(SequenceSpec(Family.LUCKY), 9, tight)) > 0


def test_values_are_read_only_uint32():
    sample = generate(SequenceSpec(Family.PRIME), 10)
    assert sample.values.dtype == np.uint32
    assert not sample.values.flags.writeable
    with pytest.raises(ValueError):
        sample.values[0] = 1


def test_range_cache_serves_prefixes():
    wide = generate(SequenceSpec(Family.HAPPY), 12)
    narrow = generate(SequenceSpec(Family.HAPPY), 8)
    assert narrow.values.tolist() == [v for v in wide.values.tolist() if v < 256]


def test_spec_labels_and_validation():
    assert SequenceSpec(Family.PA, 3).label() == "pa3"
    assert SequenceSpec(Family.PRIME).label() == "prime"
    with pytest.raises(ValueError):
        SequenceSpec(Family.PA, 0)


def test_sample_validation():
    ok = np.array([1, 2, 3], np.uint32)
    with pytest.raises(ValueError):
        SequenceSample(n_qubits=1, values=ok, counts=np.ones(3, np.uint8), tau=3)
    with pytest.raises(ValueError):
        SequenceSample(
            n_qubits=4, values=ok[::-1].copy(), counts=np.ones(3, np.uint8), tau=3
        )
    with pytest.raises(ValueError):
        tau(SequenceSample(
            n_qubits=4, values=np.empty(0, np.uint32), counts=np.empty(0, np.uint8), tau=0
        ))
