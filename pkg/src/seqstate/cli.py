"""Command-line interface: seq, state, entangle, grover, validate, figure.

Configuration precedence is flags over SEQSTATE_CACHE_DIR over a JSON config
file over built-in defaults. All tabular output is CSV with a header row
(or JSON via --format json) and is byte-identical across reruns of the same
command; caching only activates when a cache directory is configured.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from . import entanglement, figures, grover, ingest
from .errors import BFileFormatError, CapacityError, NumericError
from .ingest import Status
from .qstate import sequence_state, to_text
from .sequences import (
    Family,
    GeneratorConfig,
    OEIS_IDS,
    SequenceSpec,
    build_s_sequence,
    generate,
    overlap,
)

_FAMILY_CHOICES = [f.value for f in Family]


@dataclass
class RunConfig:
    max_qubits: int = 28
    lucky_cap: int = 1 << 24
    segment_size: int = 1 << 22
    cache_dir: str | None = None
    threads: int = 1
    fmt: str = "csv"
    chart: bool = False
    allow_fetch: bool = False

    def generator_config(self) -> GeneratorConfig:
        return GeneratorConfig(
            max_qubits=self.max_qubits,
            lucky_cap=self.lucky_cap,
            segment_size=self.segment_size,
        )


_CONFIG_FILE_KEYS = {
    "max_qubits": int,
    "lucky_cap": int,
    "segment_size": int,
    "cache_dir": str,
    "threads": int,
    "format": str,
    "chart": bool,
    "allow_fetch": bool,
}


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            loaded = json.loads(Path(config_path).read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {config_path}: {exc}") from None
        if not isinstance(loaded, dict):
            raise ValueError(f"config file {config_path}: expected a JSON object")
        for key, value in loaded.items():
            want = _CONFIG_FILE_KEYS.get(key)
            if want is None:
                raise ValueError(f"config file {config_path}: unknown key {key!r}")
            if not isinstance(value, want) or isinstance(value, bool) and want is int:
                raise ValueError(f"config file {config_path}: key {key!r} has wrong type")
            setattr(cfg, "fmt" if key == "format" else key, value)
    env_cache = os.environ.get(ingest.CACHE_DIR_ENV)
    if env_cache:
        cfg.cache_dir = env_cache
    for flag, attr in [
        ("max_qubits", "max_qubits"),
        ("lucky_cap", "lucky_cap"),
        ("segment_size", "segment_size"),
        ("cache_dir", "cache_dir"),
        ("threads", "threads"),
        ("format", "fmt"),
    ]:
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, attr, value)
    if getattr(args, "chart", False):
        cfg.chart = True
    if cfg.threads < 1:
        raise ValueError("--threads must be at least 1")
    if cfg.fmt not in ("csv", "json"):
        raise ValueError(f"unsupported format {cfg.fmt!r}")
    return cfg


@contextmanager
def _out_handle(args: argparse.Namespace):
    output = getattr(args, "output", None)
    if output:
        with open(output, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _sequence_spec(args: argparse.Namespace) -> SequenceSpec:
    return SequenceSpec(Family(args.family), getattr(args, "r", None) or 1)


def _cmd_seq(args, cfg: RunConfig) -> int:
    spec = _sequence_spec(args)
    gen_cfg = cfg.generator_config()
    if args.k_end is not None:
        if spec.family is not Family.S_OSCILLATING:
            raise ValueError("--k-end only applies to --family s-osc")
        sample = build_s_sequence(args.k_end, gen_cfg)
    elif args.n is not None:
        sample = generate(spec, args.n, gen_cfg)
    else:
        raise ValueError("seq needs --n (or --k-end for s-osc)")

    if args.overlap_with:
        other_spec = SequenceSpec(Family(args.overlap_with), args.overlap_r or 1)
        other = generate(other_spec, sample.n_qubits, gen_cfg)
        rep = overlap(sample, other)
        if cfg.fmt == "json":
            text = _json_text(
                {
                    "family_a": spec.label(),
                    "family_b": other_spec.label(),
                    "n_qubits": sample.n_qubits,
                    "common_count": rep.common_count,
                    "common_values": list(rep.common_values),
                    "fraction_of_smaller": rep.fraction_of_smaller,
                    "fraction_of_larger": rep.fraction_of_larger,
                }
            )
        else:
            text = _csv_text(
                ("family_a", "family_b", "n_qubits", "common_count",
                 "fraction_of_smaller", "fraction_of_larger"),
                [(spec.label(), other_spec.label(), sample.n_qubits,
                  rep.common_count, rep.fraction_of_smaller, rep.fraction_of_larger)],
            )
        with _out_handle(args) as fh:
            fh.write(text)
        return 0

    with _out_handle(args) as fh:
        if cfg.fmt == "json":
            fh.write(
                _json_text(
                    {
                        "family": spec.label(),
                        "n_qubits": sample.n_qubits,
                        "tau": sample.tau,
                        "entries": sample.entries,
                    }
                )
            )
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("value", "multiplicity"))
            counts = sample.counts
            for i, v in enumerate(sample.values.tolist()):
                writer.writerow((v, int(counts[i])))
    return 0


def _cmd_state(args, cfg: RunConfig) -> int:
    spec = _sequence_spec(args)
    state = sequence_state(spec, args.n, cfg.generator_config())
    with _out_handle(args) as fh:
        if cfg.fmt == "json":
            entries = [
                [int(i), float(a.real), float(getattr(a, "imag", 0.0))]
                for i, a in zip(state.indices.tolist(), state.amplitudes.tolist())
            ]
            fh.write(_json_text({"n_qubits": state.n_qubits, "amplitudes": entries}))
        else:
            fh.write(to_text(state))
    return 0


def _cmd_entangle(args, cfg: RunConfig) -> int:
    spec = _sequence_spec(args)
    measure = args.measure
    key = ingest.cache_key(
        spec.label(), f"r={spec.param_r}", args.n, f"{measure}.{cfg.fmt}"
    )
    if cfg.cache_dir:
        cached = ingest.cache_load(key, Path(cfg.cache_dir))
        if cached is not None:
            with _out_handle(args) as fh:
                fh.write(cached.decode("utf-8"))
            return 0

    state = sequence_state(spec, args.n, cfg.generator_config())
    if measure == "profile":
        profile = entanglement.single_qubit_profile(state)
        if cfg.fmt == "json":
            text = _json_text(
                {"family": spec.label(), "n_qubits": args.n, "per_qubit": profile}
            )
        else:
            text = _csv_text(
                ("qubit", "entropy"), [(i + 1, e) for i, e in enumerate(profile)]
            )
    elif measure == "avg_th":
        value = entanglement.e_avg_th(state)
        if cfg.fmt == "json":
            text = _json_text(
                {"family": spec.label(), "n_qubits": args.n, "e_avg_th": value}
            )
        else:
            text = _csv_text(
                ("family", "n", "e_avg_th"), [(spec.label(), args.n, value)]
            )
    else:  # avg_all
        rows = entanglement.bipartition_entropies(state, threads=cfg.threads)
        if cfg.fmt == "json":
            import math as _math

            e_sum = _math.fsum(r[2] for r in rows)
            text = _json_text(
                {
                    "family": spec.label(),
                    "n_qubits": args.n,
                    "e_sum": e_sum,
                    "e_avg_all": e_sum / len(rows),
                    "max_avg_all": entanglement.max_avg_all(args.n),
                }
            )
        else:
            text = _csv_text(("keep_mask", "kept_size", "entropy"), rows)

    if cfg.cache_dir:
        ingest.cache_store(key, text.encode("utf-8"), Path(cfg.cache_dir))
    with _out_handle(args) as fh:
        fh.write(text)
    return 0


def _parse_n_range(text: str) -> range:
    try:
        lo_s, hi_s = text.split(":", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise ValueError(f"--n-range must look like 4:20, got {text!r}") from None
    if hi < lo:
        raise ValueError(f"--n-range upper bound below lower bound: {text!r}")
    return range(lo, hi + 1)


def _cmd_grover(args, cfg: RunConfig) -> int:
    spec = _sequence_spec(args)
    gen_cfg = cfg.generator_config()
    if args.n_range:
        rows = grover.growth_profile(spec, _parse_n_range(args.n_range), gen_cfg)
        if cfg.fmt == "json":
            text = _json_text(
                [dict(zip(grover.PROFILE_COLUMNS, row)) for row in rows]
            )
        else:
            text = _csv_text(grover.PROFILE_COLUMNS, rows)
    elif args.n is None:
        raise ValueError("grover needs --n or --n-range")
    elif args.simulate:
        p = grover.plan(spec, args.n, gen_cfg)
        k = args.k if args.k is not None else p.g_int
        _, hit, fid = grover.simulate(spec, args.n, k, gen_cfg)
        closed = grover.success_probability(p.marked_count, args.n, k)
        columns = ("n", "k", "hit_probability", "closed_form", "fidelity_to_target")
        row = (args.n, k, hit, closed, fid)
        if cfg.fmt == "json":
            text = _json_text(dict(zip(columns, row)))
        else:
            text = _csv_text(columns, [row])
    else:
        p = grover.plan(spec, args.n, gen_cfg)
        columns = (
            "n", "marked_count", "tau", "theta", "g_real", "g_int",
            "predicted_success",
        )
        row = (p.n_qubits, p.marked_count, p.tau, p.theta, p.g_real, p.g_int,
               p.predicted_success)
        if cfg.fmt == "json":
            text = _json_text(dict(zip(columns, row)))
        else:
            text = _csv_text(columns, [row])
    with _out_handle(args) as fh:
        fh.write(text)
    return 0


def _cmd_validate(args, cfg: RunConfig) -> int:
    spec = _sequence_spec(args)
    path = Path(args.bfile)
    family_id = OEIS_IDS.get(spec.family)
    if not path.is_file() and cfg.allow_fetch and family_id:
        ingest.fetch_bfile(family_id, path.parent, enabled=True)
    stem = path.stem
    oeis_id = "A" + stem[1:] if stem.startswith("b") and stem[1:].isdigit() else stem
    bfile = ingest.parse_bfile(path.read_bytes(), oeis_id=oeis_id)
    report = ingest.validate(spec, bfile, args.n, cfg.generator_config())
    div = report.first_divergence or ("", "", "")
    if cfg.fmt == "json":
        text = _json_text(
            {
                "oeis_id": report.oeis_id,
                "family": report.family,
                "n_qubits": args.n,
                "compared_terms": report.compared_terms,
                "status": report.status.value,
                "first_divergence": report.first_divergence,
            }
        )
    else:
        text = _csv_text(
            ("oeis_id", "family", "n", "compared_terms", "status",
             "divergence_index", "divergence_expected", "divergence_actual"),
            [(report.oeis_id, report.family, args.n, report.compared_terms,
              report.status.value, *div)],
        )
    with _out_handle(args) as fh:
        fh.write(text)
    return 0 if report.status is Status.PASS else 1


def _cmd_figure(args, cfg: RunConfig) -> int:
    data = figures.build_figure(
        args.id,
        args.scale,
        config=cfg.generator_config(),
        threads=cfg.threads,
        n_max=args.n_max,
        r_max=args.r_max,
    )
    out_dir = Path(args.out_dir)
    paths = figures.write_csv(data, out_dir)
    if cfg.chart:
        paths.append(figures.render_chart(data, out_dir))
    with _out_handle(args) as fh:
        for p in paths:
            fh.write(f"{p}\n")
    return 0


_HANDLERS = {
    "seq": _cmd_seq,
    "state": _cmd_state,
    "entangle": _cmd_entangle,
    "grover": _cmd_grover,
    "validate": _cmd_validate,
    "figure": _cmd_figure,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--cache-dir", dest="cache_dir", default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--lucky-cap", dest="lucky_cap", type=int, default=None)
    common.add_argument("--segment-size", dest="segment_size", type=int, default=None)
    common.add_argument("--max-qubits", dest="max_qubits", type=int, default=None)
    common.add_argument("--config", default=None, help="JSON config file")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", required=True, choices=_FAMILY_CHOICES)
    family.add_argument("--r", type=int, default=None, help="PA progression ratio")

    parser = argparse.ArgumentParser(
        prog="seqstate",
        description="Sequence states: generation, entanglement, Grover feasibility",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", parents=[common, family],
                           help="emit a sequence sample or overlap statistics")
    p_seq.add_argument("--n", type=int, default=None)
    p_seq.add_argument("--k-end", dest="k_end", type=int, default=None)
    p_seq.add_argument("--overlap-with", dest="overlap_with",
                       choices=_FAMILY_CHOICES, default=None)
    p_seq.add_argument("--overlap-r", dest="overlap_r", type=int, default=None)

    p_state = sub.add_parser("state", parents=[common, family],
                             help="emit the normalized sparse state")
    p_state.add_argument("--n", type=int, required=True)

    p_ent = sub.add_parser("entangle", parents=[common, family],
                           help="entanglement measures of a sequence state")
    p_ent.add_argument("--n", type=int, required=True)
    p_ent.add_argument("--measure", required=True,
                       choices=("profile", "avg_th", "avg_all"))

    p_gro = sub.add_parser("grover", parents=[common, family],
                           help="Grover iteration planning and simulation")
    p_gro.add_argument("--n", type=int, default=None)
    p_gro.add_argument("--n-range", dest="n_range", default=None,
                       help="inclusive range like 4:20")
    p_gro.add_argument("--simulate", action="store_true")
    p_gro.add_argument("--k", type=int, default=None,
                       help="iterations for --simulate (default: planned g_int)")

    p_val = sub.add_parser("validate", parents=[common, family],
                           help="check a generator against an OEIS b-file")
    p_val.add_argument("--bfile", required=True)
    p_val.add_argument("--n", type=int, required=True)

    p_fig = sub.add_parser("figure", parents=[common],
                           help="reproduce one figure's data as CSV")
    p_fig.add_argument("--id", type=int, required=True)
    p_fig.add_argument("--scale", choices=("desk", "full"), default="desk")
    p_fig.add_argument("--out-dir", dest="out_dir", default=".")
    p_fig.add_argument("--chart", action="store_true",
                       help="also render a line chart SVG")
    p_fig.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_fig.add_argument("--r-max", dest="r_max", type=int, default=None)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _resolve_config(args)
        return _HANDLERS[args.command](args, cfg)
    except BFileFormatError as exc:
        return _fail(exc, 2)
    except CapacityError as exc:
        return _fail(exc, 3)
    except NumericError as exc:
        return _fail(exc, 4)
    except (OSError, UnicodeDecodeError) as exc:
        return _fail(exc, 5)
    except ValueError as exc:
        return _fail(exc, 2)


def _fail(exc: Exception, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
