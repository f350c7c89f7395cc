"""Download the eight benchmark files from the UCI repository into data/.

Usage:
    python scripts/fetch_datasets.py [--out data] [--only iris wine ...] [--force]

Each dataset is fetched as the UCI archive zip and the one member the loaders
read is extracted unchanged. Files that already exist are skipped unless
--force is given. The library itself never touches the network.
"""

import argparse
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

ARCHIVE = "https://archive.ics.uci.edu/static/public/{id}/{slug}.zip"

# name -> (UCI id, archive slug, member pattern, target filename)
SOURCES = {
    "iris": (53, "iris", "iris.data", "iris.data"),
    "wine": (109, "wine", "wine.data", "wine.data"),
    "seeds": (236, "seeds", "seeds_dataset.txt", "seeds_dataset.txt"),
    "glass": (42, "glass+identification", "glass.data", "glass.data"),
    "penguins": (690, "palmer+penguins-3", "penguins", "penguins.csv"),
    "algerian": (547, "algerian+forest+fires+dataset", "Algerian_forest_fires_dataset_UPDATE.csv",
                 "Algerian_forest_fires_dataset_UPDATE.csv"),
    "wholesale": (292, "wholesale+customers", "Wholesale customers data.csv",
                  "Wholesale customers data.csv"),
    "ecoli": (39, "ecoli", "ecoli.data", "ecoli.data"),
}


def pick_member(names, pattern):
    exact = [n for n in names if Path(n).name == pattern]
    if exact:
        return exact[0]
    # penguins archives name the csv differently between releases
    loose = [n for n in names if pattern in Path(n).name.lower() and n.lower().endswith(".csv")]
    if not loose:
        raise KeyError(f"no member matching {pattern!r} in {names}")
    return sorted(loose, key=len)[0]


def fetch(name, out: Path, force=False, timeout=60):
    uci_id, slug, pattern, target = SOURCES[name]
    dest = out / target
    if dest.exists() and not force:
        print(f"skip  {name}: {dest} exists")
        return dest
    url = ARCHIVE.format(id=uci_id, slug=slug)
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        payload = resp.read()
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        member = pick_member(zf.namelist(), pattern)
        data = zf.read(member)
    dest.write_bytes(data)
    print(f"saved {name}: {dest} ({len(data)} bytes from {url})")
    return dest


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="data")
    p.add_argument("--only", nargs="*", choices=sorted(SOURCES))
    p.add_argument("--force", action="store_true")
    args = p.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in args.only or SOURCES:
        try:
            fetch(name, out, args.force)
        except Exception as exc:  # noqa: BLE001
            failed += 1
            print(f"error {name}: {exc}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
