#!/usr/bin/env python3
"""Regenerate the b-file fixtures under tests/fixtures/.

Terms come from the naive reference implementations in tests/oracles.py, not
from the package generators, so the fixtures stay an independent check.
Indexes follow each OEIS entry's documented offset; the two sequences without
an OEIS entry (the Padovan variant and the oscillating S construction) get
local reference files whose headers document the construction.
"""
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

LIMIT = 2048  # small enough to stay quick, large enough to pass 10-qubit checks


def write_bfile(name: str, header: list[str], terms: list[int], first_index: int) -> None:
    out = ROOT / "tests" / "fixtures" / name
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {h}" for h in header]
    lines += [f"{first_index + j} {v}" for j, v in enumerate(terms)]
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out.relative_to(ROOT)} ({len(terms)} terms)")


def main() -> None:
    gen = "generated by scripts/gen_fixtures.py; do not edit by hand"
    write_bfile(
        "b000040.txt",
        ["A000040: prime numbers", gen],
        oracles.primes_upto(LIMIT),
        1,
    )
    write_bfile(
        "b005097.txt",
        ["A005097: (p - 1) / 2 over the odd primes p", gen],
        oracles.sprimes_upto(LIMIT),
        1,
    )
    write_bfile(
        "b000045.txt",
        ["A000045: Fibonacci numbers, a(0) = 0, a(1) = 1", gen],
        oracles.fib_terms_upto(LIMIT),
        0,
    )
    write_bfile(
        "padovan-variant.txt",
        [
            "Padovan variant: P(0) = P(1) = P(2) = 1, P(m) = P(m-2) + P(m-3)",
            "not A000931, whose canonical offset starts 1, 0, 0",
            gen,
        ],
        oracles.padovan_terms_upto(LIMIT),
        0,
    )
    write_bfile(
        "b007770.txt",
        ["A007770: happy numbers", gen],
        oracles.happys_upto(LIMIT),
        1,
    )
    write_bfile(
        "b000959.txt",
        ["A000959: lucky numbers", gen],
        oracles.luckys_upto(LIMIT),
        1,
    )
    write_bfile(
        "b005101.txt",
        ["A005101: abundant numbers", gen],
        oracles.abundants_upto(LIMIT),
        1,
    )
    write_bfile(
        "b000217.txt",
        ["A000217: triangular numbers, a(0) = 0", gen],
        oracles.triangulars_upto(LIMIT),
        0,
    )
    write_bfile(
        "b000124.txt",
        ["A000124: central polygonal numbers m(m+1)/2 + 1, a(0) = 1", gen],
        oracles.lazys_upto(LIMIT),
        0,
    )
    write_bfile(
        "b005349.txt",
        ["A005349: Harshad numbers, divisible by their digit sum", gen],
        oracles.harshads_upto(LIMIT),
        1,
    )
    write_bfile(
        "b005843.txt",
        ["A005843: even numbers, the r = 2 arithmetic progression", gen],
        list(range(0, 521, 2)),
        0,
    )
    # The S construction only keeps adding in-range values at even steps, so
    # a file built at k_end = 12 validates cleanly at 11 qubits: the step
    # going past 11 is odd and adjoins out-of-range values only.
    write_bfile(
        "s-reference.txt",
        [
            "oscillating S sequence, alternating max-of-complement and",
            "xor-complement steps from {0, 3}; built at k_end = 12",
            gen,
        ],
        sorted(oracles.s_set(12)),
        1,
    )


if __name__ == "__main__":
    main()
