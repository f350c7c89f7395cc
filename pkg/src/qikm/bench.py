"""Experiment runner: many seeded k-means runs per method, one row per seed.

For every (method, seed) pair the runner performs ``restarts_per_seed``
independent runs, picks one by the selection rule, and scores it with ARI
against the true labels and silhouette on the scaled features. The rows are
sorted by (method, seed) before they are returned, so worker scheduling never
changes the output.
"""

import csv
import enum
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .clustering import Init, KMeansConfig, kmeans_run
from .datasets import DatasetSpec, checksum, dataset_spec, load
from .distance import DistanceForm, DistanceMode
from .encoding import EncodingConfig, EncodingKind, minmax_fit_transform
from .metrics import adjusted_rand_index, silhouette_score


class Selection(enum.Enum):
    BEST_SSE = "best_sse"
    BEST_ARI = "best_ari"
    MEDIAN_ARI = "median_ari"


@dataclass(frozen=True)
class MethodSpec:
    name: str
    mode: DistanceMode = DistanceMode.CLASSICAL_EUCLIDEAN
    encoding: EncodingConfig = field(default_factory=EncodingConfig)
    distance_form: DistanceForm = DistanceForm.WEIGHTED
    init: Init = Init.QUANTUM_INSPIRED

    def echo(self) -> str:
        parts = [f"mode={self.mode.value}", f"form={self.distance_form.value}",
                 f"init={self.init.value}"]
        if self.mode is DistanceMode.QUANTUM_HYBRID:
            parts.append(f"order={self.encoding.ordering_stat.value}/"
                         f"{self.encoding.ordering_direction.value}")
        return ";".join(parts)


BUILTIN_METHODS = {
    "classical": MethodSpec("classical", DistanceMode.CLASSICAL_EUCLIDEAN),
    "angle": MethodSpec("angle", DistanceMode.QUANTUM_ANGLE, EncodingConfig(EncodingKind.ANGLE)),
    "amplitude": MethodSpec("amplitude", DistanceMode.QUANTUM_AMPLITUDE,
                            EncodingConfig(EncodingKind.AMPLITUDE)),
    "hybrid": MethodSpec("hybrid", DistanceMode.QUANTUM_HYBRID, EncodingConfig(EncodingKind.HYBRID)),
}


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: DatasetSpec
    methods: Tuple[MethodSpec, ...]
    seeds: Tuple[int, ...]
    restarts_per_seed: int = 10
    selection: Selection = Selection.BEST_SSE
    output_dir: Path = Path("results")
    # None means the dataset's expected class count
    k: Optional[int] = None
    max_iter: int = 300
    patience: int = 3
    tol: float = 1e-4
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if not self.methods:
            raise ValueError("at least one method is required")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        names = [m.name for m in self.methods]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate method names in {names}")
        for s in self.seeds:
            if not 0 <= s < 2**64:
                raise ValueError(f"seed {s} is not an unsigned 64-bit integer")
        if self.restarts_per_seed < 1:
            raise ValueError("restarts_per_seed must be >= 1")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @property
    def effective_k(self) -> int:
        return self.k if self.k is not None else self.dataset.expected_k


@dataclass(frozen=True)
class RunRow:
    dataset: str
    method: str
    seed: int
    k: int
    ari: float
    silhouette: float
    sse: float
    n_iterations: int
    converged: bool
    restart: int
    selection: str
    config: str
    checksum: str
    runtime_ms: float


@dataclass
class ExperimentReport:
    dataset: str
    k: int
    checksum: str
    rows: List[RunRow]
    method_order: Tuple[str, ...] = ()


def restart_seed(seed: int, restart: int) -> int:
    """Independent 64-bit seed for one restart of one seed."""
    return int(np.random.SeedSequence([seed, restart]).generate_state(1, np.uint64)[0])


def _single_run(args):
    scaled, method, k, seed, restart, max_iter, patience, tol = args
    cfg = KMeansConfig(k=k, max_iter=max_iter, patience=patience, tol=tol, mode=method.mode,
                       encoding=method.encoding, distance_form=method.distance_form,
                       seed=restart_seed(seed, restart), init=method.init)
    t0 = time.perf_counter()
    res = kmeans_run(scaled, cfg)
    elapsed = (time.perf_counter() - t0) * 1000.0
    ari = adjusted_rand_index(scaled.labels, res.assignments)
    return method.name, seed, restart, res, ari, elapsed


def _select(runs, selection: Selection):
    """Pick one (restart, result, ari, ms) tuple; ties go to the lowest restart."""
    runs = sorted(runs, key=lambda r: r[0])
    if selection is Selection.BEST_SSE:
        return min(runs, key=lambda r: (r[1].sse, r[0]))
    if selection is Selection.BEST_ARI:
        return max(runs, key=lambda r: (r[2], -r[0]))
    # lower median for even counts so the pick is an actual run
    ranked = sorted(runs, key=lambda r: (r[2], r[0]))
    return ranked[(len(ranked) - 1) // 2]


def run_experiment(cfg: ExperimentConfig, raw=None) -> ExperimentReport:
    """Run every (method, seed, restart) and return one selected row per (method, seed)."""
    # a k override changes the clustering only; the label check stays as declared
    spec = cfg.dataset
    if raw is None:
        raw = load(spec)
    digest = checksum(spec) if spec.source_path.exists() else ""
    scaled = minmax_fit_transform(raw)
    k = cfg.effective_k
    tasks = [(scaled, m, k, s, r, cfg.max_iter, cfg.patience, cfg.tol)
             for m in cfg.methods for s in cfg.seeds for r in range(cfg.restarts_per_seed)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(_single_run, tasks, chunksize=max(1, len(tasks) // (4 * cfg.jobs))))
    else:
        outcomes = [_single_run(t) for t in tasks]

    grouped = {}
    for name, seed, restart, res, ari, ms in outcomes:
        grouped.setdefault((name, seed), []).append((restart, res, ari, ms))

    by_name = {m.name: m for m in cfg.methods}
    rows = []
    for (name, seed), runs in grouped.items():
        restart, res, ari, ms = _select(runs, cfg.selection)
        rows.append(RunRow(
            dataset=spec.id.value, method=name, seed=seed, k=k, ari=ari,
            silhouette=silhouette_score(scaled.rows, res.assignments)
            if len(np.unique(res.assignments)) > 1 else 0.0,
            sse=res.sse, n_iterations=res.n_iterations, converged=res.converged,
            restart=restart, selection=cfg.selection.value, config=by_name[name].echo(),
            checksum=digest, runtime_ms=ms,
        ))
    order = {m.name: i for i, m in enumerate(cfg.methods)}
    rows.sort(key=lambda r: (order[r.method], r.seed))
    return ExperimentReport(spec.id.value, k, digest, rows, tuple(m.name for m in cfg.methods))


# --- output --------------------------------------------------------------

# runtime_ms is left out of the CSV so that it is byte-reproducible
CSV_FIELDS = ["dataset", "method", "seed", "k", "ari", "silhouette", "sse", "n_iterations",
              "converged", "restart", "selection", "config", "checksum"]


def _fmt(x: float) -> str:
    return repr(float(x))


def report_medians(report: ExperimentReport):
    """{method: (median silhouette, median ARI)} in method order."""
    out = {}
    names = report.method_order or tuple(dict.fromkeys(r.method for r in report.rows))
    for name in names:
        rows = [r for r in report.rows if r.method == name]
        out[name] = (float(np.median([r.silhouette for r in rows])),
                     float(np.median([r.ari for r in rows])))
    return out


def render_markdown(report: ExperimentReport) -> str:
    med = report_medians(report)
    names = list(med)
    n_seeds = len({r.seed for r in report.rows})
    lines = [
        f"# {report.dataset} (k={report.k})",
        "",
        f"Median over {n_seeds} seed(s); selection={report.rows[0].selection}; "
        f"sha256={report.checksum or 'n/a'}",
        "",
        "| metric | " + " | ".join(names) + " |",
        "|---|" + "---|" * len(names),
        "| SS | " + " | ".join(f"{med[n][0]:.4f}" for n in names) + " |",
        "| ARI | " + " | ".join(f"{med[n][1]:.4f}" for n in names) + " |",
        "",
    ]
    return "\n".join(lines)


def write_csv(report: ExperimentReport, path: Path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in report.rows:
            vals = []
            for f in CSV_FIELDS:
                v = getattr(r, f)
                vals.append(_fmt(v) if isinstance(v, float) else str(v).lower()
                            if isinstance(v, bool) else v)
            w.writerow(vals)


def read_csv(path: Path) -> List[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_jsonl(report: ExperimentReport, path: Path):
    with open(path, "w") as fh:
        for r in report.rows:
            rec = {f: getattr(r, f) for f in CSV_FIELDS}
            rec["runtime_ms"] = r.runtime_ms
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


FORMATS = {"md": ("report.md", None), "csv": ("runs.csv", write_csv), "jsonl": ("runs.jsonl", write_jsonl)}


def emit_report(report: ExperimentReport, output_dir, formats: Sequence[str] = ("md", "csv", "jsonl")):
    """Write the requested files into ``output_dir`` and return their paths."""
    if not report.rows:
        raise ValueError("cannot emit an empty report")
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    written = []
    for fmt in formats:
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}")
        name, writer = FORMATS[fmt]
        path = out / name
        if writer is None:
            path.write_text(render_markdown(report))
        else:
            writer(report, path)
        written.append(path)
    return written


def make_config(dataset, methods=("classical", "angle", "amplitude", "hybrid"), seeds=(0,),
                data_dir=None, **kwargs) -> ExperimentConfig:
    """Convenience constructor taking a dataset name and built-in method names."""
    spec = dataset if isinstance(dataset, DatasetSpec) else dataset_spec(dataset, data_dir)
    resolved = [m if isinstance(m, MethodSpec) else BUILTIN_METHODS[m] for m in methods]
    return ExperimentConfig(dataset=spec, methods=tuple(resolved), seeds=tuple(seeds), **kwargs)
