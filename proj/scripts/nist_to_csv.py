#!/usr/bin/env python3
"""Convert NIST StRD nonlinear regression .dat files into the bundled CSV layout.

Usage: nist_to_csv.py <dir-with-dat-files> <output-data-dir>

Each output file is named after the lower-cased dataset and carries the header
"x1[,x2,...],y". Field text is copied verbatim from the source files so that no
decimal digits are lost or re-rounded.
"""

import pathlib
import re
import sys

DATASETS = {
    # name: number of predictor columns
    "Misra1a": 1,
    "Gauss1": 1,
    "DanWood": 1,
    "Nelson": 2,
    "Lanczos2": 1,
    "Roszman1": 1,
    "ENSO": 1,
    "MGH09": 1,
    "Thurber": 1,
    "Rat42": 1,
}


def data_line_range(text):
    m = re.search(r"Data\s+\(lines\s+(\d+)\s+to\s+(\d+)\)", text)
    if not m:
        raise ValueError("no data line range in header")
    return int(m.group(1)), int(m.group(2))


def convert(src, dst, arity):
    text = src.read_text()
    first, last = data_line_range(text)
    lines = text.splitlines()[first - 1:last]
    header = ",".join([f"x{i + 1}" for i in range(arity)] + ["y"])
    rows = [header]
    for line in lines:
        fields = line.split()
        if len(fields) != arity + 1:
            raise ValueError(f"{src}: unexpected row {line!r}")
        # NIST files list the response first.
        rows.append(",".join(fields[1:] + fields[:1]))
    dst.write_text("\n".join(rows) + "\n")
    return len(lines)


def main(argv):
    if len(argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    src_dir = pathlib.Path(argv[1])
    out_dir = pathlib.Path(argv[2])
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, arity in DATASETS.items():
        n = convert(src_dir / f"{name}.dat", out_dir / f"{name.lower()}.csv", arity)
        print(f"{name}: {n} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
