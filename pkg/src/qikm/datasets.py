"""Loaders for the eight benchmark datasets.

Each loader reads the file as distributed by the UCI repository and does all
cleaning in code: dropping columns and rows, picking the target, and
remapping labels to 0..k-1 (sorted order of the original label values).

========== ============================== ==================================
dataset    file                           target / cleaning
========== ============================== ==================================
iris       iris.data                      species
wine       wine.data                      cultivar (first column)
seeds      seeds_dataset.txt              variety (last column)
glass      glass.data                     type; Id column dropped
penguins   penguins.csv                   island; species and year dropped,
                                          sex encoded female=0 / male=1,
                                          rows with missing values dropped
algerian   Algerian_forest_fires_         Classes (fire / not fire); Bejaia
           dataset_UPDATE.csv             block only; day/month/year dropped
wholesale  Wholesale customers data.csv   Channel; Region dropped
ecoli      ecoli.data                     site; name column dropped, imS
                                          and imL rows dropped
========== ============================== ==================================
"""

import csv
import enum
import hashlib
import io
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from .encoding import RawDataset

DATA_DIR_ENV = "QIKM_DATA_DIR"


class DatasetError(Exception):
    """A dataset file is missing, malformed, or has an unexpected shape."""


class DatasetId(enum.Enum):
    IRIS = "iris"
    WINE = "wine"
    SEEDS = "seeds"
    GLASS = "glass"
    PENGUINS = "penguins"
    ALGERIAN_FIRES = "algerian"
    WHOLESALE = "wholesale"
    ECOLI = "ecoli"


@dataclass(frozen=True)
class DatasetSpec:
    id: DatasetId
    source_path: Path
    expected_n: Optional[int]
    expected_m: int
    expected_k: int


FILENAMES: Dict[DatasetId, str] = {
    DatasetId.IRIS: "iris.data",
    DatasetId.WINE: "wine.data",
    DatasetId.SEEDS: "seeds_dataset.txt",
    DatasetId.GLASS: "glass.data",
    DatasetId.PENGUINS: "penguins.csv",
    DatasetId.ALGERIAN_FIRES: "Algerian_forest_fires_dataset_UPDATE.csv",
    DatasetId.WHOLESALE: "Wholesale customers data.csv",
    DatasetId.ECOLI: "ecoli.data",
}

# (n, M, k) after cleaning
SHAPES = {
    DatasetId.IRIS: (150, 4, 3),
    DatasetId.WINE: (178, 13, 3),
    DatasetId.SEEDS: (210, 7, 3),
    DatasetId.GLASS: (214, 9, 6),
    DatasetId.PENGUINS: (333, 5, 3),
    DatasetId.ALGERIAN_FIRES: (122, 10, 2),
    DatasetId.WHOLESALE: (440, 6, 2),
    DatasetId.ECOLI: (332, 7, 6),
}


def default_data_dir() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV, "data"))


def parse_dataset_id(name) -> DatasetId:
    if isinstance(name, DatasetId):
        return name
    key = str(name).strip().lower().replace("-", "_")
    aliases = {"algerian_fires": "algerian", "algerianfires": "algerian", "e_coli": "ecoli"}
    key = aliases.get(key, key)
    try:
        return DatasetId(key)
    except ValueError:
        known = ", ".join(d.value for d in DatasetId)
        raise ValueError(f"unknown dataset {name!r} (known: {known})") from None


def dataset_spec(dataset, data_dir=None, source_path=None) -> DatasetSpec:
    """Spec with the default filename under ``data_dir`` and the table shape."""
    did = parse_dataset_id(dataset)
    if source_path is None:
        source_path = Path(data_dir if data_dir is not None else default_data_dir()) / FILENAMES[did]
    n, m, k = SHAPES[did]
    return DatasetSpec(did, Path(source_path), n, m, k)


def all_specs(data_dir=None):
    return [dataset_spec(d, data_dir) for d in DatasetId]


# --- parsing helpers -------------------------------------------------------

def _read_text(path: Path) -> str:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except FileNotFoundError:
        raise DatasetError(f"dataset file not found: {path}") from None
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from None
    return raw.decode("utf-8-sig", errors="replace")


def _floats(fields, path, lineno):
    try:
        vals = [float(f) for f in fields]
    except ValueError:
        raise DatasetError(f"{path}:{lineno}: unparseable row {fields!r}") from None
    if not all(np.isfinite(vals)):
        raise DatasetError(f"{path}:{lineno}: non-finite value in {fields!r}")
    return vals


def _numbered(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            yield lineno, line


def _delimited(path, sep, n_cols):
    """Rows of a headerless file; ``sep=None`` splits on whitespace."""
    out = []
    for lineno, line in _numbered(_read_text(path)):
        fields = [f.strip() for f in (line.split(sep) if sep else line.split())]
        if n_cols is not None and len(fields) != n_cols:
            raise DatasetError(f"{path}:{lineno}: expected {n_cols} fields, got {len(fields)}")
        out.append((lineno, fields))
    return out


def _remap(labels):
    uniq = sorted(set(labels))
    index = {v: i for i, v in enumerate(uniq)}
    return np.array([index[v] for v in labels], dtype=int), tuple(uniq)


def _build(name, rows, labels, feature_names):
    y, _ = _remap(labels)
    X = np.array(rows, dtype=float).reshape(len(rows), len(feature_names))
    return RawDataset(rows=X, labels=y, feature_names=tuple(feature_names), name=name)


# --- per-dataset readers --------------------------------------------------

def _load_iris(path):
    rows, labels = [], []
    for lineno, f in _delimited(path, ",", 5):
        rows.append(_floats(f[:4], path, lineno))
        labels.append(f[4])
    return _build("iris", rows, labels,
                  ["sepal_length", "sepal_width", "petal_length", "petal_width"])


WINE_FEATURES = [
    "alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium",
    "total_phenols", "flavanoids", "nonflavanoid_phenols", "proanthocyanins",
    "color_intensity", "hue", "od280_od315", "proline",
]


def _load_wine(path):
    rows, labels = [], []
    for lineno, f in _delimited(path, ",", 14):
        vals = _floats(f, path, lineno)
        labels.append(int(vals[0]))
        rows.append(vals[1:])
    return _build("wine", rows, labels, WINE_FEATURES)


def _load_seeds(path):
    rows, labels = [], []
    for lineno, f in _delimited(path, None, 8):
        vals = _floats(f, path, lineno)
        rows.append(vals[:7])
        labels.append(int(vals[7]))
    return _build("seeds", rows, labels, [
        "area", "perimeter", "compactness", "kernel_length", "kernel_width",
        "asymmetry", "groove_length"])


def _load_glass(path):
    rows, labels = [], []
    for lineno, f in _delimited(path, ",", 11):
        vals = _floats(f, path, lineno)
        rows.append(vals[1:10])
        labels.append(int(vals[10]))
    return _build("glass", rows, labels,
                  ["RI", "Na", "Mg", "Al", "Si", "K", "Ca", "Ba", "Fe"])


def _load_ecoli(path):
    rows, labels = [], []
    for lineno, f in _delimited(path, None, 9):
        if f[8] in ("imS", "imL"):
            continue
        rows.append(_floats(f[1:8], path, lineno))
        labels.append(f[8])
    return _build("ecoli", rows, labels,
                  ["mcg", "gvh", "lip", "chg", "aac", "alm1", "alm2"])


def _csv_records(path):
    reader = csv.reader(io.StringIO(_read_text(path)))
    header = None
    for lineno, rec in enumerate(reader, start=1):
        if not any(c.strip() for c in rec):
            continue
        if header is None:
            header = [re.sub(r"\s+", "_", c.strip().lower()) for c in rec]
            continue
        yield lineno, header, [c.strip() for c in rec]


def _column(header, *candidates):
    for c in candidates:
        if c in header:
            return header.index(c)
    raise KeyError(candidates[0])


PENGUIN_FEATURES = ["bill_length_mm", "bill_depth_mm", "flipper_length_mm", "body_mass_g", "sex"]
_MISSING = {"", "na", "nan", ".", "none", "null"}


def _load_penguins(path):
    rows, labels = [], []
    cols = None
    for lineno, header, rec in _csv_records(path):
        if cols is None:
            try:
                cols = [
                    _column(header, "bill_length_mm", "culmen_length_mm", "culmen_length_(mm)"),
                    _column(header, "bill_depth_mm", "culmen_depth_mm", "culmen_depth_(mm)"),
                    _column(header, "flipper_length_mm", "flipper_length_(mm)"),
                    _column(header, "body_mass_g", "body_mass_(g)"),
                ]
                sex_col = _column(header, "sex")
                island_col = _column(header, "island")
            except KeyError as exc:
                raise DatasetError(f"{path}: missing column {exc.args[0]!r}") from None
        if len(rec) != len(header):
            raise DatasetError(f"{path}:{lineno}: expected {len(header)} fields, got {len(rec)}")
        picked = [rec[c] for c in cols]
        sex = rec[sex_col].lower()
        if any(v.lower() in _MISSING for v in picked) or sex in _MISSING:
            continue
        if sex not in ("male", "female"):
            raise DatasetError(f"{path}:{lineno}: unexpected sex value {rec[sex_col]!r}")
        rows.append(_floats(picked, path, lineno) + [1.0 if sex == "male" else 0.0])
        labels.append(rec[island_col])
    if cols is None:
        raise DatasetError(f"{path}: no data rows")
    return _build("penguins", rows, labels, PENGUIN_FEATURES)


def _load_wholesale(path):
    rows, labels = [], []
    feats = ["fresh", "milk", "grocery", "frozen", "detergents_paper", "delicassen"]
    for lineno, header, rec in _csv_records(path):
        try:
            idx = [_column(header, f) for f in feats]
            ch = _column(header, "channel")
        except KeyError as exc:
            raise DatasetError(f"{path}: missing column {exc.args[0]!r}") from None
        if len(rec) != len(header):
            raise DatasetError(f"{path}:{lineno}: expected {len(header)} fields, got {len(rec)}")
        rows.append(_floats([rec[i] for i in idx], path, lineno))
        labels.append(int(_floats([rec[ch]], path, lineno)[0]))
    return _build("wholesale", rows, labels, feats)


ALGERIAN_FEATURES = ["temperature", "rh", "ws", "rain", "ffmc", "dmc", "dc", "isi", "bui", "fwi"]


def _load_algerian(path):
    """Bejaia block of the two-region file; the Sidi-Bel Abbes block is ignored."""
    rows, labels = [], []
    lines = list(_numbered(_read_text(path)))
    start = next((i for i, (_, l) in enumerate(lines) if "bejaia" in l.lower()), None)
    if start is None:
        raise DatasetError(f"{path}: no Bejaia region block found")
    header = None
    for lineno, line in lines[start + 1:]:
        low = line.lower()
        if "sidi" in low or "region" in low:
            break
        fields = [f.strip() for f in line.split(",")]
        if not any(fields):
            continue
        if header is None:
            header = [f.lower().replace(" ", "") for f in fields]
            try:
                idx = [header.index(f) for f in ALGERIAN_FEATURES]
                cls = header.index("classes")
            except ValueError as exc:
                raise DatasetError(f"{path}:{lineno}: bad header ({exc})") from None
            continue
        if fields[0].lower() == "day":
            continue
        if len(fields) < len(header):
            raise DatasetError(f"{path}:{lineno}: expected {len(header)} fields, got {len(fields)}")
        target = " ".join(fields[cls].split()).lower()
        if target not in ("fire", "not fire"):
            raise DatasetError(f"{path}:{lineno}: unexpected class {fields[cls]!r}")
        rows.append(_floats([fields[i] for i in idx], path, lineno))
        labels.append(target)
    if header is None:
        raise DatasetError(f"{path}: Bejaia block has no header")
    return _build("algerian", rows, labels, ALGERIAN_FEATURES)


_READERS = {
    DatasetId.IRIS: _load_iris,
    DatasetId.WINE: _load_wine,
    DatasetId.SEEDS: _load_seeds,
    DatasetId.GLASS: _load_glass,
    DatasetId.PENGUINS: _load_penguins,
    DatasetId.ALGERIAN_FIRES: _load_algerian,
    DatasetId.WHOLESALE: _load_wholesale,
    DatasetId.ECOLI: _load_ecoli,
}


def load(spec, data_dir=None) -> RawDataset:
    """Read and clean a dataset, then check it against the expected shape.

    ``spec`` may be a :class:`DatasetSpec` or a dataset name.
    """
    if not isinstance(spec, DatasetSpec):
        spec = dataset_spec(spec, data_dir)
    raw = _READERS[spec.id](spec.source_path)
    n, m = raw.rows.shape
    k = raw.n_classes
    if (spec.expected_n is not None and n != spec.expected_n) or m != spec.expected_m \
            or k != spec.expected_k:
        raise DatasetError(
            f"{spec.id.value}: observed shape n={n}, M={m}, classes={k}; expected "
            f"n={spec.expected_n}, M={spec.expected_m}, classes={spec.expected_k}")
    return raw


def checksum(spec, data_dir=None) -> str:
    """SHA-256 hex digest of the dataset file."""
    path = spec.source_path if isinstance(spec, DatasetSpec) else dataset_spec(spec, data_dir).source_path
    h = hashlib.sha256()
    try:
        with open(path, "rb") as fh:
            for chunk in iter(lambda: fh.read(1 << 16), b""):
                h.update(chunk)
    except FileNotFoundError:
        raise DatasetError(f"dataset file not found: {path}") from None
    return h.hexdigest()
