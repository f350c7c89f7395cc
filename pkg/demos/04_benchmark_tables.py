"""Produce a method-by-metric table for every dataset file that is present.

This drives the same runner as ``qikm run``: five seeds, ten restarts per
seed, lowest-SSE selection, medians over seeds. Reports land in
results/<dataset>/.

    python demos/04_benchmark_tables.py [--data-dir data] [--form weighted]
"""

import argparse

from qikm import bench
from qikm.datasets import DatasetId, dataset_spec
from qikm.distance import DistanceForm, DistanceMode
from qikm.encoding import EncodingConfig, EncodingKind

parser = argparse.ArgumentParser()
parser.add_argument("--data-dir", default=None)
parser.add_argument("--form", default="weighted", choices=[f.value for f in DistanceForm])
parser.add_argument("--jobs", type=int, default=1)
args = parser.parse_args()

form = DistanceForm(args.form)
methods = [bench.BUILTIN_METHODS["classical"]] + [
    bench.MethodSpec(mode.value, mode, EncodingConfig(kind), form)
    for mode, kind in [(DistanceMode.QUANTUM_ANGLE, EncodingKind.ANGLE),
                       (DistanceMode.QUANTUM_AMPLITUDE, EncodingKind.AMPLITUDE),
                       (DistanceMode.QUANTUM_HYBRID, EncodingKind.HYBRID)]]

for did in DatasetId:
    spec = dataset_spec(did, args.data_dir)
    if not spec.source_path.exists():
        print(f"## {did.value}: {spec.source_path} missing, skipped "
              f"(python scripts/fetch_datasets.py)\n")
        continue
    cfg = bench.ExperimentConfig(dataset=spec, methods=methods, seeds=range(5), jobs=args.jobs,
                                 output_dir=f"results/{did.value}")
    report = bench.run_experiment(cfg)
    bench.emit_report(report, cfg.output_dir)
    print(bench.render_markdown(report))
