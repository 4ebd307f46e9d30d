"""OEIS b-file parsing, generator validation, and a small result cache.

b-files are the plain-text OEIS term listings: one "index value" pair per
line, '#' comments and blank lines ignored. Validation compares a generator's
flattened in-range terms against the file; the cache stores CSV payloads
keyed by a digest that includes a version tag, written atomically.
"""
from __future__ import annotations

import hashlib
import os
import urllib.request
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Optional

import numpy as np

from .errors import BFileFormatError
from .sequences import DEFAULT_CONFIG, GeneratorConfig, SequenceSpec, generate

__all__ = [
    "BFile",
    "Status",
    "ValidationReport",
    "CACHE_VERSION",
    "parse_bfile",
    "serialize_bfile",
    "validate",
    "cache_key",
    "cache_store",
    "cache_load",
    "default_cache_dir",
    "fetch_bfile",
]

CACHE_VERSION = "v1"
CACHE_DIR_ENV = "SEQSTATE_CACHE_DIR"


@dataclass(frozen=True)
class BFile:
    oeis_id: str
    terms: tuple[tuple[int, int], ...]


class Status(str, Enum):
    PASS = "pass"
    MISMATCH = "mismatch"
    INSUFFICIENT = "insufficient"


@dataclass(frozen=True)
class ValidationReport:
    oeis_id: str
    family: str
    compared_terms: int
    status: Status
    first_divergence: Optional[tuple[int, Optional[int], Optional[int]]] = None


def parse_bfile(source: bytes | str | IO, oeis_id: str = "?") -> BFile:
    """Parse b-file text into (index, value) pairs, validating monotonicity."""
    if isinstance(source, bytes):
        text = source.decode("ascii")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("ascii") if isinstance(raw, bytes) else raw
    terms: list[tuple[int, int]] = []
    prev_index = None
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BFileFormatError(
                f"line {lineno}: expected 'index value', got {len(fields)} fields"
            )
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError:
            raise BFileFormatError(
                f"line {lineno}: non-integer token in {line!r}"
            ) from None
        if prev_index is not None and index <= prev_index:
            raise BFileFormatError(
                f"line {lineno}: index {index} not above previous {prev_index}"
            )
        prev_index = index
        terms.append((index, value))
    return BFile(oeis_id=oeis_id, terms=tuple(terms))


def serialize_bfile(bfile: BFile) -> bytes:
    return "".join(f"{i} {v}\n" for i, v in bfile.terms).encode("ascii")


def validate(
    spec: SequenceSpec,
    bfile: BFile,
    n_qubits: int,
    config: GeneratorConfig = DEFAULT_CONFIG,
) -> ValidationReport:
    """Check the generator's flattened in-range terms against the b-file.

    A pass needs the file to prove completeness: its in-range prefix must
    match the generator exactly and be followed by an out-of-range term.
    A file that ends while still in range can only be insufficient.
    """
    sample = generate(spec, n_qubits, config)
    gen = np.repeat(sample.values, sample.counts).tolist()
    limit = (1 << n_qubits) - 1

    values = [v for _, v in bfile.terms]
    in_range = len(values)
    for j, v in enumerate(values):
        if v > limit:
            in_range = j
            break

    def report(status: Status, compared: int, divergence=None) -> ValidationReport:
        return ValidationReport(
            oeis_id=bfile.oeis_id,
            family=spec.label(),
            compared_terms=compared,
            status=status,
            first_divergence=divergence,
        )

    compared = min(in_range, len(gen))
    for j in range(compared):
        if values[j] != gen[j]:
            return report(
                Status.MISMATCH, compared, (bfile.terms[j][0], values[j], gen[j])
            )
    if in_range > len(gen):
        # the file lists an in-range term the generator never produced
        j = len(gen)
        return report(Status.MISMATCH, compared, (bfile.terms[j][0], values[j], None))
    if in_range < len(gen):
        if in_range < len(values):
            # the file jumps out of range while the generator still has terms
            j = in_range
            return report(
                Status.MISMATCH, compared, (bfile.terms[j][0], values[j], gen[j])
            )
        return report(Status.INSUFFICIENT, compared)
    # equal lengths: complete only if the file continues past the range
    if len(values) > in_range:
        return report(Status.PASS, compared)
    return report(Status.INSUFFICIENT, compared)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "seqstate"


def cache_key(family: str, params: str, n_qubits: int, measure: str) -> str:
    """Deterministic digest of the run coordinates plus the version tag."""
    canon = f"{CACHE_VERSION}|{family}|{params}|{n_qubits}|{measure}"
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:24]


def _cache_path(key: str, cache_dir: Path | None) -> Path:
    return Path(cache_dir) if cache_dir else default_cache_dir()


def cache_store(key: str, payload: bytes, cache_dir: Path | None = None) -> Path:
    """Write payload under the key, atomically (temp file then rename)."""
    directory = _cache_path(key, cache_dir)
    directory.mkdir(parents=True, exist_ok=True)
    final = directory / f"{key}.csv"
    tmp = directory / f".{key}.{os.getpid()}.tmp"
    tmp.write_bytes(b"# cache-key: " + key.encode("ascii") + b"\n" + payload)
    tmp.replace(final)
    return final


def cache_load(key: str, cache_dir: Path | None = None) -> bytes | None:
    """Payload stored under the key, or None when absent or mismatched."""
    path = _cache_path(key, cache_dir) / f"{key}.csv"
    if not path.is_file():
        return None
    blob = path.read_bytes()
    header, _, payload = blob.partition(b"\n")
    if header != b"# cache-key: " + key.encode("ascii"):
        return None
    return payload


def fetch_bfile(
    oeis_id: str, dest_dir: Path, *, enabled: bool = False, timeout: float = 10.0
) -> Path:
    """Download a b-file from the public OEIS endpoint. Off unless enabled."""
    if not enabled:
        raise ValueError(
            "network fetch is disabled; enable allow_fetch in the config to use it"
        )
    if not (oeis_id.startswith("A") and oeis_id[1:].isdigit()):
        raise ValueError(f"not an OEIS id: {oeis_id!r}")
    url = f"https://oeis.org/{oeis_id}/b{oeis_id[1:]}.txt"
    dest_dir = Path(dest_dir)
    dest_dir.mkdir(parents=True, exist_ok=True)
    dest = dest_dir / f"b{oeis_id[1:]}.txt"
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        dest.write_bytes(resp.read())
    return dest
