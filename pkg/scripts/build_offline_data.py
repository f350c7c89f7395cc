"""Rebuild UCI-layout data files from copies bundled in PyPI packages.

For machines that can reach PyPI but not archive.ics.uci.edu. Where the UCI
archive is reachable, prefer ``fetch_datasets.py``, which downloads the
originals unmodified.

Sources
-------
iris.data, wine.data   scikit-learn's bundled CSVs (sklearn/datasets/data)
penguins.csv           the ``palmerpenguins`` wheel (CC0)
ecoli.data             KEEL one-vs-rest splits from the ``keel-ds`` wheel,
                       recombined into the eight localisation sites. KEEL
                       drops the sequence-name column, so names are
                       placeholders ``ROW_###``.
glass.data             KEEL one-vs-rest splits recombined into six types.
                       Only KEEL's glass2 split keeps the exact UCI values;
                       the others are perturbed, so their labels are carried
                       over by a constrained assignment. Class counts match
                       UCI; row order and the Id column do not.

Seeds, Wholesale customers and Algerian forest fires are not bundled by any
package we know of; fetch them with ``fetch_datasets.py``.

Usage::

    pip download --no-deps palmerpenguins keel-ds -d /tmp/wheels
    python scripts/build_offline_data.py --wheels /tmp/wheels --out data
"""

import argparse
import collections
import glob
import io
import os
import zipfile

import numpy as np
import sklearn
from scipy.optimize import linear_sum_assignment


def _wheel(wheels, prefix):
    hits = sorted(glob.glob(os.path.join(wheels, prefix + "*.whl")))
    if not hits:
        raise SystemExit(f"no {prefix} wheel in {wheels}")
    return zipfile.ZipFile(hits[-1])


def _sklearn_csv(name):
    path = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data", name)
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return header, rows


def build_iris(out):
    _, rows = _sklearn_csv("iris.csv")
    names = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]
    with open(os.path.join(out, "iris.data"), "w") as fh:
        for r in rows:
            fh.write(",".join(r[:4] + [names[int(r[4])]]) + "\n")


def build_wine(out):
    _, rows = _sklearn_csv("wine_data.csv")
    with open(os.path.join(out, "wine.data"), "w") as fh:
        for r in rows:
            fh.write(",".join([str(int(r[13]) + 1)] + r[:13]) + "\n")


def build_penguins(out, wheels):
    z = _wheel(wheels, "palmerpenguins")
    with open(os.path.join(out, "penguins.csv"), "wb") as fh:
        fh.write(z.read("palmerpenguins/data/penguins.csv"))


def _keel(z, name):
    text = z.read(f"keel_ds/data/imbalanced/raw/{name}.dat").decode()
    rows = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("@"):
            continue
        *vals, cls = [v.strip() for v in line.split(",")]
        rows.append((tuple(vals), cls == "positive"))
    return rows


def _positives(z, name):
    return collections.Counter(v for v, pos in _keel(z, name) if pos)


def _label_rows(base, groups):
    """Assign each base row the first group whose multiset still contains it."""
    pools = {k: collections.Counter(v) for k, v in groups.items()}
    labels = []
    for vals in base:
        for key, pool in pools.items():
            if pool[vals] > 0:
                pool[vals] -= 1
                labels.append(key)
                break
        else:
            labels.append(None)
    return labels


def build_glass(out, wheels):
    # glass2 carries the exact UCI values but only the type-3 flag; the other
    # splits carry perturbed values. Labels are transferred from perturbed to
    # exact rows by an L1 assignment on min-max scaled features, with the
    # type-3 flag as a hard constraint.
    z = _wheel(wheels, "keel_ds")
    noisy = [v for v, _ in _keel(z, "glass0")]
    noisy_labels = _label_rows(noisy, {
        "1": _positives(z, "glass0"),
        "2": _positives(z, "glass1"),
        "5": _positives(z, "glass4"),
        "6": _positives(z, "glass5"),
        "7": _positives(z, "glass6"),
    })
    exact = _keel(z, "glass2")
    P = np.array([[float(x) for x in v] for v in noisy])
    E = np.array([[float(x) for x in v] for v, _ in exact])
    lo, hi = E.min(axis=0), E.max(axis=0)
    cost = np.abs((P - lo) / (hi - lo))[:, None, :] - ((E - lo) / (hi - lo))[None]
    cost = np.abs(cost).sum(axis=2)
    is3_noisy = np.array([lab is None for lab in noisy_labels])
    is3_exact = np.array([pos for _, pos in exact])
    cost[is3_noisy[:, None] != is3_exact[None, :]] += 1e6
    rows, cols = linear_sum_assignment(cost)
    labels = [None] * len(exact)
    for i, j in zip(rows, cols):
        labels[j] = noisy_labels[i] or "3"
    order = sorted(range(len(exact)), key=lambda j: int(labels[j]))
    with open(os.path.join(out, "glass.data"), "w") as fh:
        for idx, j in enumerate(order, start=1):
            fh.write(",".join([str(idx), *exact[j][0], labels[j]]) + "\n")


def _ecoli_matches(split_vals, base_vals):
    # Several splits store percentages, drop the near-constant chg column and
    # lose trailing zeros on the way (0.40 -> "4.0", 1.00 -> "1.0"), so compare loosely.
    x = [float(v) for v in split_vals]
    b = [float(v) for v in base_vals]
    if len(x) == 6:
        del b[3]
    if max(x) <= 1.5:
        return all(abs(u - v) < 1e-9 for u, v in zip(x, b))
    return all(any(abs(u / f - v) < 1e-9 for f in (100, 10, 1)) for u, v in zip(x, b))


def _ecoli_positive_rows(z, name, base):
    hits = set()
    for vals, pos in _keel(z, name):
        if not pos:
            continue
        cands = [i for i, bv in enumerate(base) if i not in hits and _ecoli_matches(vals, bv)]
        if not cands:
            raise AssertionError(f"{name}: no base row for {vals}")
        hits.add(cands[0])
    return hits


def build_ecoli(out, wheels):
    z = _wheel(wheels, "keel_ds")
    base = [v for v, _ in _keel(z, "ecoli1")]
    rows = {name: _ecoli_positive_rows(z, name, base) for name in (
        "ecoli-0_vs_1", "ecoli1", "ecoli2", "ecoli3", "ecoli4",
        "ecoli-0-1-4-7_vs_5-6", "ecoli-0-1-3-7_vs_2-6")}
    groups = {
        "cp": rows["ecoli-0_vs_1"],
        "im": rows["ecoli1"],
        "pp": rows["ecoli2"],
        "imU": rows["ecoli3"],
        "om": rows["ecoli4"],
    }
    groups["omL"] = rows["ecoli-0-1-4-7_vs_5-6"] - groups["om"]
    groups["imL"] = rows["ecoli-0-1-3-7_vs_2-6"] - groups["omL"]
    labels = [None] * len(base)
    for key, idx in groups.items():
        for i in idx:
            assert labels[i] is None, (i, key, labels[i])
            labels[i] = key
    labels = [lab if lab is not None else "imS" for lab in labels]
    counts = collections.Counter(labels)
    assert counts["imS"] == 2 and counts["imL"] == 2, counts
    buf = io.StringIO()
    for i, (vals, lab) in enumerate(zip(base, labels), start=1):
        buf.write(f"ROW_{i:03d}  " + "  ".join(vals) + f"  {lab}\n")
    with open(os.path.join(out, "ecoli.data"), "w") as fh:
        fh.write(buf.getvalue())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--wheels", required=True)
    ap.add_argument("--out", default="data")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    build_iris(args.out)
    build_wine(args.out)
    build_penguins(args.out, args.wheels)
    build_glass(args.out, args.wheels)
    build_ecoli(args.out, args.wheels)


if __name__ == "__main__":
    main()
