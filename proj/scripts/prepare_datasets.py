#!/usr/bin/env python3
"""Convert raw UCI dataset files into the CSV layout the experiment CLI loads.

The experiment harness wants one CSV per dataset: a header row, numeric
feature columns, and a single label column named 'label'. Class order in the
file decides task numbering (first class seen becomes <Name>1), so each
converter pins the class order explicitly.

Raw files are not fetched here; download them from the UCI Machine Learning
Repository and point --raw-dir at the directory holding them:

  iris.data                          https://archive.ics.uci.edu/dataset/53
  seeds_dataset.txt                  https://archive.ics.uci.edu/dataset/236
  ionosphere.data                    https://archive.ics.uci.edu/dataset/52
  sonar.all-data                     https://archive.ics.uci.edu/dataset/151
  Qualitative_Bankruptcy.data.txt    https://archive.ics.uci.edu/dataset/365
  SomervilleHappinessSurvey2015.csv  https://archive.ics.uci.edu/dataset/479
"""

import argparse
import csv
import sys
from pathlib import Path

# P/A/N answers are ordered judgements, encoded ordinally.
BANKRUPTCY_LEVELS = {"N": 0.0, "A": 1.0, "P": 2.0}


def read_text(path: Path) -> str:
    # The Somerville file ships UTF-16 encoded; everything else is ASCII.
    raw = path.read_bytes()
    for enc in ("utf-8-sig", "utf-16"):
        try:
            return raw.decode(enc)
        except UnicodeDecodeError:
            continue
    raise SystemExit(f"{path}: cannot decode as UTF-8 or UTF-16")


def data_lines(path: Path):
    for line in read_text(path).splitlines():
        line = line.strip()
        if line:
            yield line


def write_csv(out_path: Path, dim: int, rows, class_order):
    """rows: (label, [features]); emitted grouped by class_order."""
    order = {name: i for i, name in enumerate(class_order)}
    unknown = sorted({label for label, _ in rows if label not in order})
    if unknown:
        raise SystemExit(f"{out_path.name}: unexpected class labels {unknown}")
    rows = sorted(rows, key=lambda r: order[r[0]])  # stable: keeps raw order within a class
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"f{i}" for i in range(dim)] + ["label"])
        for label, feats in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in feats] + [label])
    counts = {}
    for label, _ in rows:
        counts[label] = counts.get(label, 0) + 1
    per_class = ", ".join(f"{k}={v}" for k, v in counts.items())
    print(f"  wrote {out_path} ({len(rows)} rows, {dim} features; {per_class})")


def convert_iris(raw: Path, out: Path):
    rows = []
    for line in data_lines(raw):
        parts = line.split(",")
        if len(parts) != 5:
            raise SystemExit(f"{raw}: expected 5 fields, got {len(parts)}")
        label = parts[4].replace("Iris-", "")
        rows.append((label, [float(v) for v in parts[:4]]))
    write_csv(out / "iris.csv", 4, rows, ["setosa", "versicolor", "virginica"])


def convert_seeds(raw: Path, out: Path):
    names = {1: "kama", 2: "rosa", 3: "canadian"}
    rows = []
    for line in data_lines(raw):
        parts = line.split()  # tab-separated with occasional double tabs
        if len(parts) != 8:
            raise SystemExit(f"{raw}: expected 8 fields, got {len(parts)}")
        rows.append((names[int(float(parts[7]))], [float(v) for v in parts[:7]]))
    write_csv(out / "seed.csv", 7, rows, ["kama", "rosa", "canadian"])


def convert_ionosphere(raw: Path, out: Path):
    rows = []
    for line in data_lines(raw):
        parts = line.split(",")
        if len(parts) != 35:
            raise SystemExit(f"{raw}: expected 35 fields, got {len(parts)}")
        rows.append(("bad" if parts[34] == "b" else "good", [float(v) for v in parts[:34]]))
    write_csv(out / "ion.csv", 34, rows, ["bad", "good"])


def convert_sonar(raw: Path, out: Path):
    rows = []
    for line in data_lines(raw):
        parts = line.split(",")
        if len(parts) != 61:
            raise SystemExit(f"{raw}: expected 61 fields, got {len(parts)}")
        rows.append(("rock" if parts[60] == "R" else "mine", [float(v) for v in parts[:60]]))
    write_csv(out / "son.csv", 60, rows, ["rock", "mine"])


def convert_bankruptcy(raw: Path, out: Path):
    rows = []
    for line in data_lines(raw):
        parts = line.split(",")
        if len(parts) != 7:
            raise SystemExit(f"{raw}: expected 7 fields, got {len(parts)}")
        feats = [BANKRUPTCY_LEVELS[v.strip()] for v in parts[:6]]
        rows.append(("bankruptcy" if parts[6].strip() == "B" else "no_bankruptcy", feats))
    write_csv(out / "bank.csv", 6, rows, ["bankruptcy", "no_bankruptcy"])


def convert_somerville(raw: Path, out: Path):
    rows = []
    lines = list(data_lines(raw))
    if lines and lines[0].upper().startswith("D,"):
        lines = lines[1:]
    for line in lines:
        parts = line.split(",")
        if len(parts) != 7:
            raise SystemExit(f"{raw}: expected 7 fields, got {len(parts)}")
        label = "happy" if parts[0].strip() == "1" else "unhappy"
        rows.append((label, [float(v) for v in parts[1:7]]))
    write_csv(out / "happ.csv", 6, rows, ["happy", "unhappy"])


CONVERTERS = [
    ("iris.data", convert_iris),
    ("seeds_dataset.txt", convert_seeds),
    ("ionosphere.data", convert_ionosphere),
    ("sonar.all-data", convert_sonar),
    ("Qualitative_Bankruptcy.data.txt", convert_bankruptcy),
    ("SomervilleHappinessSurvey2015.csv", convert_somerville),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--raw-dir", type=Path, required=True,
                    help="directory with the downloaded UCI files")
    ap.add_argument("--out-dir", type=Path, default=Path("data/uci"),
                    help="where the converted CSVs go (default: data/uci)")
    args = ap.parse_args()

    found, missing = [], []
    for name, conv in CONVERTERS:
        raw = args.raw_dir / name
        if raw.exists():
            found.append((raw, conv))
        else:
            missing.append(name)

    if not found:
        sys.exit(f"no recognized raw files in {args.raw_dir}; expected any of: "
                 + ", ".join(name for name, _ in CONVERTERS))

    print(f"converting {len(found)} dataset(s) into {args.out_dir}")
    for raw, conv in found:
        conv(raw, args.out_dir)
    if missing:
        print("not found (skipped): " + ", ".join(missing))


if __name__ == "__main__":
    main()
