#!/usr/bin/env python3
"""Fetch the Housing Price dataset (hprice1) used by the acceptance suite.

The dataset ships with Wooldridge, "Introductory Econometrics" (88 houses sold
in the Boston area, collected from a 1990 public database). It is not bundled
with this repository; this script downloads it, normalizes it to the four
columns the test suite reads, verifies it against published summary
statistics, and records a SHA-256 checksum next to the file so later runs can
detect local modification.

Sources tried, in order:
  1. the `wooldridge` python package, if installed (pip install wooldridge)
  2. the Rdatasets mirror
     https://vincentarelbundock.github.io/Rdatasets/csv/wooldridge/hprice1.csv

Usage:
  python3 tools/fetch_hprice1.py [--out data/hprice1.csv]

After fetching, the acceptance suite picks the file up automatically (it looks
at $BETASCORE_HPRICE1, then <repo>/data/hprice1.csv).
"""

import argparse
import csv
import hashlib
import io
import sys
import urllib.request
from pathlib import Path

RDATASETS_URL = "https://vincentarelbundock.github.io/Rdatasets/csv/wooldridge/hprice1.csv"

COLUMNS = ["price", "bdrms", "lotsize", "sqrft"]

# Published sample means (Wooldridge, appendix tables); used to verify that
# the download is the real dataset before the checksum is recorded.
EXPECTED = {
    "rows": 88,
    "means": {"price": 293.546, "bdrms": 3.568, "lotsize": 9019.864, "sqrft": 2013.693},
    "tol": 0.01,
}


def rows_from_wooldridge_package():
    try:
        import wooldridge  # type: ignore
    except ImportError:
        return None
    frame = wooldridge.data("hprice1")
    return [{c: float(frame[c][i]) for c in COLUMNS} for i in range(len(frame))]


def rows_from_rdatasets():
    with urllib.request.urlopen(RDATASETS_URL, timeout=60) as response:
        text = response.read().decode("utf-8")
    reader = csv.DictReader(io.StringIO(text))
    return [{c: float(row[c]) for c in COLUMNS} for row in reader]


def verify(rows):
    if len(rows) != EXPECTED["rows"]:
        raise SystemExit(f"integrity check failed: {len(rows)} rows, expected 88")
    for column, expected_mean in EXPECTED["means"].items():
        mean = sum(r[column] for r in rows) / len(rows)
        if abs(mean - expected_mean) > EXPECTED["tol"] * max(1.0, abs(expected_mean)):
            raise SystemExit(
                f"integrity check failed: mean({column}) = {mean:.3f}, "
                f"expected {expected_mean}")


def write_normalized(rows, out_path: Path):
    out_path.parent.mkdir(parents=True, exist_ok=True)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([repr(row[c]) if row[c] != int(row[c]) else str(int(row[c]))
                         for c in COLUMNS])
    data = buffer.getvalue().encode("utf-8")
    out_path.write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    repo_root = Path(__file__).resolve().parents[1]
    parser.add_argument("--out", type=Path, default=repo_root / "data" / "hprice1.csv")
    parser.add_argument("--expect-sha256", default=None,
                        help="fail unless the normalized file hashes to this value")
    args = parser.parse_args()

    rows = rows_from_wooldridge_package()
    source = "wooldridge python package"
    if rows is None:
        print("wooldridge package not installed, trying the Rdatasets mirror...")
        try:
            rows = rows_from_rdatasets()
            source = RDATASETS_URL
        except Exception as err:  # noqa: BLE001
            raise SystemExit(
                f"download failed ({err}); install the `wooldridge` package or fetch "
                f"{RDATASETS_URL} manually and pass it through --out") from err

    verify(rows)
    digest = write_normalized(rows, args.out)
    (args.out.parent / "hprice1.sha256").write_text(digest + "  hprice1.csv\n")
    print(f"wrote {args.out} ({EXPECTED['rows']} rows) from {source}")
    print(f"sha256: {digest}")
    if args.expect_sha256 and digest != args.expect_sha256:
        raise SystemExit("checksum mismatch against --expect-sha256")
    print("integrity checks passed (row count and published column means)")


if __name__ == "__main__":
    main()
