"""``qikm`` command line: run experiments, list datasets, verify data files.

Config file (INI)::

    [experiment]
    dataset = iris
    methods = classical, angle, amplitude, hybrid
    seeds = 0, 1, 2, 3, 4        ; "0-4" is accepted too
    restarts = 10
    selection = best_sse          ; best_sse | best_ari | median_ari
    output_dir = results/iris
    data_dir = data               ; optional
    k = 3                         ; optional, defaults to the dataset's class count
    max_iter = 300
    patience = 3
    tol = 1e-4
    jobs = 1

    [method:angle_bures]          ; custom method, usable in "methods"
    mode = angle                  ; classical | angle | amplitude | hybrid
    form = bures                  ; weighted | weighted_dissim | bures | trace
    init = quantum                ; quantum | random
    ordering_stat = kurtosis      ; hybrid only: spread | skewness | kurtosis
    ordering_direction = ascending

Flags override the file. Exit codes: 0 ok, 1 config error, 2 data error,
3 runtime error.
"""

import argparse
import configparser
import sys
from pathlib import Path

from . import bench
from .clustering import Init
from .datasets import DatasetError, DatasetId, all_specs, checksum, dataset_spec, load
from .distance import DistanceForm, DistanceMode
from .encoding import EncodingConfig, EncodingKind, OrderingDirection, OrderingStat

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_RUNTIME = 0, 1, 2, 3


class ConfigError(Exception):
    pass


def _enum(cls, value, what):
    try:
        return cls(str(value).strip().lower())
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        raise ConfigError(f"invalid {what} {value!r} (allowed: {allowed})") from None


def parse_seeds(text: str):
    seeds = []
    for part in str(text).replace(" ", "").split(","):
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = part.split("-", 1)
                seeds.extend(range(int(lo), int(hi) + 1))
            else:
                seeds.append(int(part))
        except ValueError:
            raise ConfigError(f"invalid seed list {text!r}") from None
    return seeds


def _method_from_section(name, sec) -> bench.MethodSpec:
    mode = _enum(DistanceMode, sec.get("mode", name), f"mode for method {name!r}")
    kind = {DistanceMode.QUANTUM_ANGLE: EncodingKind.ANGLE,
            DistanceMode.QUANTUM_AMPLITUDE: EncodingKind.AMPLITUDE,
            DistanceMode.QUANTUM_HYBRID: EncodingKind.HYBRID}.get(mode, EncodingKind.ANGLE)
    enc = EncodingConfig(
        kind,
        _enum(OrderingStat, sec.get("ordering_stat", "kurtosis"), "ordering_stat"),
        _enum(OrderingDirection, sec.get("ordering_direction", "ascending"), "ordering_direction"),
    )
    return bench.MethodSpec(
        name=name, mode=mode, encoding=enc,
        distance_form=_enum(DistanceForm, sec.get("form", "weighted"), "form"),
        init=_enum(Init, sec.get("init", "quantum"), "init"),
    )


def build_config(args) -> bench.ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            parser.read(path)
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from None
    exp = parser["experiment"] if parser.has_section("experiment") else {}

    custom = {}
    for section in parser.sections():
        if section.startswith("method:"):
            name = section.split(":", 1)[1].strip()
            custom[name] = _method_from_section(name, parser[section])

    def pick(flag, key, default=None):
        v = getattr(args, flag, None)
        return v if v is not None else exp.get(key, default)

    dataset = pick("dataset", "dataset")
    if dataset is None:
        raise ConfigError("no dataset given (use --dataset or [experiment] dataset)")
    data_dir = args.data_dir or exp.get("data_dir")
    try:
        spec = dataset_spec(dataset, data_dir)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    if args.method:
        method_names = [n.strip() for m in args.method for n in m.split(",") if n.strip()]
    else:
        method_names = [n.strip() for n in exp.get("methods", "classical,angle,amplitude,hybrid").split(",")
                        if n.strip()]
    methods = []
    for n in method_names:
        if n in custom:
            methods.append(custom[n])
        elif n in bench.BUILTIN_METHODS:
            methods.append(bench.BUILTIN_METHODS[n])
        else:
            raise ConfigError(f"unknown method {n!r}")

    seeds = args.seed if args.seed else parse_seeds(exp.get("seeds", "0"))

    def num(flag, key, cast, default):
        v = pick(flag, key, default)
        try:
            return None if v is None else cast(v)
        except ValueError:
            raise ConfigError(f"invalid value for {key}: {v!r}") from None

    try:
        return bench.ExperimentConfig(
            dataset=spec,
            methods=tuple(methods),
            seeds=tuple(seeds),
            restarts_per_seed=num("restarts", "restarts", int, 10),
            selection=_enum(bench.Selection, exp.get("selection", "best_sse"), "selection"),
            output_dir=Path(pick("out", "output_dir", "results")),
            k=num("k", "k", int, None),
            max_iter=num("max_iter", "max_iter", int, 300),
            patience=num("patience", "patience", int, 3),
            tol=num("tol", "tol", float, 1e-4),
            jobs=num("jobs", "jobs", int, 1),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_run(args) -> int:
    cfg = build_config(args)
    report = bench.run_experiment(cfg)
    formats = args.format or ["md", "csv", "jsonl"]
    paths = bench.emit_report(report, cfg.output_dir, formats)
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_list(args) -> int:
    for spec in all_specs(args.data_dir):
        status = "present" if spec.source_path.exists() else "missing"
        n = spec.expected_n if spec.expected_n is not None else "?"
        print(f"{spec.id.value:<10} n={n:<4} M={spec.expected_m:<3} k={spec.expected_k}  "
              f"{spec.source_path}  [{status}]")
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    ids = [args.dataset] if args.dataset else [d.value for d in DatasetId]
    for name in ids:
        spec = dataset_spec(name, args.data_dir)
        try:
            raw = load(spec)
            digest = checksum(spec)
            print(f"OK   {spec.id.value:<10} {raw.n_samples}x{raw.n_features} "
                  f"k={raw.n_classes} sha256={digest}")
        except DatasetError as exc:
            ok = False
            print(f"FAIL {spec.id.value:<10} {exc}")
    return EXIT_OK if ok else EXIT_DATA


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qikm", description="Quantum-inspired k-means benchmarks")
    p.add_argument("--data-dir", help="directory holding the dataset files "
                                      "(default: $QIKM_DATA_DIR or ./data)")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run an experiment and write reports")
    r.add_argument("--config", help="INI experiment file")
    r.add_argument("--dataset")
    r.add_argument("--method", action="append", help="method name; repeat or comma-separate")
    r.add_argument("--seed", action="append", type=int, help="seed; repeat for several")
    r.add_argument("--restarts", type=int)
    r.add_argument("--jobs", type=int)
    r.add_argument("--k", type=int, help="override the number of clusters")
    r.add_argument("--format", action="append", choices=["md", "csv", "jsonl"],
                   help="output format; repeat for several (default: all)")
    r.add_argument("--out", help="output directory")
    r.set_defaults(func=cmd_run)

    ls = sub.add_parser("list-datasets", help="show known datasets and whether files exist")
    ls.set_defaults(func=cmd_list)

    v = sub.add_parser("verify", help="load every dataset, check shapes, print checksums")
    v.add_argument("--dataset")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DatasetError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        # bad dataset names in verify land here too
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
