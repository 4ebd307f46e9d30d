"""Figure-reproduction data: one builder per figure id, CSV out, optional chart.

Every figure resolves to a set of named curves with typed rows. Two scales
exist: "desk" keeps ranges small enough for an interactive run, "full"
extends to the widest supported ranges (28-qubit profiles, 14-qubit sweeps)
and can take minutes. Charts are cosmetic; all downstream checks read the CSVs.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .entanglement import e_avg_th, e_sum_and_avg_all, max_avg_all, single_qubit_profile
from .errors import CapacityError
from .grover import PROFILE_COLUMNS, growth_profile
from .qstate import sequence_state
from .sequences import DEFAULT_CONFIG, Family, GeneratorConfig, SequenceSpec

__all__ = ["Curve", "FigureData", "FIGURE_IDS", "build_figure", "write_csv", "render_chart"]

FIGURE_IDS = tuple(range(1, 13))


@dataclass
class Curve:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple]
    x: str
    y: str


@dataclass
class FigureData:
    figure_id: int
    scale: str
    title: str
    x_label: str
    y_label: str
    curves: list[Curve]


def _spec(family: Family, r: int = 1) -> SequenceSpec:
    return SequenceSpec(family, r)


def _check_lucky_reach(figure_id: int, n_hi: int, config: GeneratorConfig) -> None:
    needed = (1 << n_hi) - 1
    if needed > config.lucky_cap:
        raise CapacityError(
            f"figure {figure_id} needs the lucky sieve up to {needed} but the cap "
            f"is {config.lucky_cap}; rerun at desk scale or raise the lucky cap"
        )


def _profile_curves(
    specs: list[SequenceSpec], n: int, config: GeneratorConfig
) -> list[Curve]:
    curves = []
    for spec in specs:
        profile = single_qubit_profile(sequence_state(spec, n, config))
        rows = [(i + 1, e) for i, e in enumerate(profile)]
        curves.append(
            Curve(spec.label(), ("qubit", "entropy"), rows, x="qubit", y="entropy")
        )
    return curves


def _avg_th_curve(spec: SequenceSpec, n_lo: int, n_hi: int, config) -> Curve:
    rows = [
        (n, e_avg_th(sequence_state(spec, n, config))) for n in range(n_lo, n_hi + 1)
    ]
    return Curve(
        f"avg_th_{spec.label()}", ("n", "e_avg_th"), rows, x="n", y="e_avg_th"
    )


def _avg_all_curve(spec: SequenceSpec, n_lo: int, n_hi: int, config, threads) -> Curve:
    rows = []
    for n in range(n_lo, n_hi + 1):
        _, avg = e_sum_and_avg_all(sequence_state(spec, n, config), threads=threads)
        rows.append((n, avg))
    return Curve(
        f"avg_all_{spec.label()}", ("n", "e_avg_all"), rows, x="n", y="e_avg_all"
    )


def _bound_curve(n_lo: int, n_hi: int) -> Curve:
    rows = [(n, max_avg_all(n)) for n in range(n_lo, n_hi + 1)]
    return Curve("bound", ("n", "max_avg_all"), rows, x="n", y="max_avg_all")


def _with_delta(curve: Curve) -> Curve:
    rows = []
    prev = None
    for n, v in curve.rows:
        rows.append((n, v, "" if prev is None else v - prev))
        prev = v
    return Curve(curve.name, (*curve.columns, "delta"), rows, x=curve.x, y=curve.y)


def _grover_curves(
    specs: list[SequenceSpec], n_lo: int, n_hi: int, config
) -> list[Curve]:
    curves = []
    for spec in specs:
        rows = growth_profile(spec, range(n_lo, n_hi + 1), config)
        curves.append(
            Curve(spec.label(), PROFILE_COLUMNS, rows, x="n", y="g_real")
        )
    return curves


def build_figure(
    figure_id: int,
    scale: str = "desk",
    *,
    config: GeneratorConfig = DEFAULT_CONFIG,
    threads: int = 1,
    n_max: int | None = None,
    r_max: int | None = None,
) -> FigureData:
    """Compute the data behind one figure at the requested scale."""
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"figure_id must be 1..12, got {figure_id}")
    if scale not in ("desk", "full"):
        raise ValueError(f"scale must be 'desk' or 'full', got {scale!r}")
    full = scale == "full"
    fid = figure_id

    if fid == 1:
        n = n_max or (28 if full else 14)
        specs = [
            _spec(Family.PRIME),
            _spec(Family.SPRIME),
            _spec(Family.TRIANGULAR),
            _spec(Family.FIBONACCI),
            _spec(Family.PA, 3),
            _spec(Family.ABUNDANT),
        ]
        return FigureData(
            fid, scale, f"Per-qubit entanglement at n={n}", "qubit", "entropy",
            _profile_curves(specs, n, config),
        )

    if fid in (2, 3):
        th_hi = n_max or (28 if full else 14)
        all_hi = min(n_max or 14, 14)
        specs = (
            [_spec(Family.FIBONACCI), _spec(Family.PA, 3)]
            if fid == 2
            else [_spec(Family.PA, r) for r in (3, 5, 7, 9)]
        )
        curves = [_avg_th_curve(s, 2, th_hi, config) for s in specs]
        curves += [_avg_all_curve(s, 2, all_hi, config, threads) for s in specs]
        return FigureData(
            fid, scale, "Average entanglement vs register size", "n", "entropy", curves
        )

    if fid == 4:
        n = n_max or 14
        top_r = r_max or (32 if full else 16)
        rows = []
        for r in range(1, top_r + 1):
            _, avg = e_sum_and_avg_all(
                sequence_state(_spec(Family.PA, r), n, config), threads=threads
            )
            rows.append((r, avg))
        curve = Curve("pa_ratio", ("r", "e_avg_all"), rows, x="r", y="e_avg_all")
        return FigureData(
            fid, scale, f"Progression ratio sweep at n={n}", "r", "e_avg_all", [curve]
        )

    if fid in (5, 6):
        n_hi = min(n_max or (14 if full else 12), 14)
        specs = (
            [
                _spec(Family.HAPPY),
                _spec(Family.PRIME),
                _spec(Family.SPRIME),
                _spec(Family.PA, 17),
            ]
            if fid == 5
            else [
                _spec(Family.FIBONACCI),
                _spec(Family.HAPPY),
                _spec(Family.LUCKY),
                _spec(Family.PADOVAN),
                _spec(Family.LAZY),
                _spec(Family.PRIME),
                _spec(Family.TRIANGULAR),
            ]
        )
        curves = [_avg_all_curve(s, 4, n_hi, config, threads) for s in specs]
        curves.append(_bound_curve(4, n_hi))
        return FigureData(
            fid, scale, "All-bipartition average vs bound", "n", "e_avg_all", curves
        )

    if fid == 7:
        n_hi = n_max or (28 if full else 20)
        curve = _with_delta(_avg_th_curve(_spec(Family.S_OSCILLATING), 4, n_hi, config))
        return FigureData(
            fid, scale, "Oscillating sequence, per-qubit average", "n", "e_avg_th",
            [curve],
        )

    if fid == 8:
        n_hi = min(n_max or (14 if full else 12), 14)
        curve = _with_delta(
            _avg_all_curve(_spec(Family.S_OSCILLATING), 4, n_hi, config, threads)
        )
        return FigureData(
            fid, scale, "Oscillating sequence, all-bipartition average", "n",
            "e_avg_all", [curve],
        )

    # 9..12: Grover iteration growth
    n_hi = n_max or (28 if full else 20)
    n_lo = 4
    if fid == 9:
        specs = [
            _spec(Family.FIBONACCI),
            _spec(Family.LUCKY),
            _spec(Family.PADOVAN),
            _spec(Family.LAZY),
            _spec(Family.TRIANGULAR),
        ]
    elif fid == 10:
        specs = [
            _spec(Family.ABUNDANT),
            _spec(Family.HAPPY),
            _spec(Family.HARSHAD),
            _spec(Family.LUCKY),
            _spec(Family.PRIME),
            _spec(Family.SPRIME),
        ]
    elif fid == 11:
        specs = [_spec(Family.PA, r) for r in (3, 4, 5, 7, 9, 17)]
    else:
        specs = [_spec(Family.S_OSCILLATING)]
    if any(s.family is Family.LUCKY for s in specs):
        _check_lucky_reach(fid, n_hi, config)
    return FigureData(
        fid, scale, "Grover iterations vs register size", "n", "g_real",
        _grover_curves(specs, n_lo, n_hi, config),
    )


def _format_cell(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(data: FigureData, out_dir: Path) -> list[Path]:
    """One CSV per curve, named figure<id>_<curve>.csv, header row included."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for curve in data.curves:
        path = out_dir / f"figure{data.figure_id:02d}_{curve.name}.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(curve.columns)
            for row in curve.rows:
                writer.writerow([_format_cell(x) for x in row])
        paths.append(path)
    return paths


def render_chart(data: FigureData, out_dir: Path) -> Path:
    """Simple line chart of every curve, written as a standalone SVG."""
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(7.5, 4.8))
    for curve in data.curves:
        xi = curve.columns.index(curve.x)
        yi = curve.columns.index(curve.y)
        xs = [row[xi] for row in curve.rows]
        ys = [row[yi] for row in curve.rows]
        style = {"linestyle": "--", "color": "black"} if curve.name == "bound" else {}
        ax.plot(xs, ys, marker="o", markersize=2.5, linewidth=1.1,
                label=curve.name, **style)
    ax.set_xlabel(data.x_label)
    ax.set_ylabel(data.y_label)
    ax.set_title(data.title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=7, ncol=2)
    path = out_dir / f"figure{data.figure_id:02d}.svg"
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
