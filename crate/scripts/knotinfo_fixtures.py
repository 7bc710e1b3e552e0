#!/usr/bin/env python3
"""Writes knot fixtures from the KnotInfo database.

For every knot with at most 9 crossings this emits a double-crossing diagram
(crates/core/fixtures/knots/NAME.json) converted from its planar-diagram code, and
records KnotInfo's Jones polynomial in reference_jones.json as [[exponent of A,
coefficient], ...] with t = A^-4, so the Rust tests can compare against it.

The data comes from the `database_knotinfo` package:

    pip download --no-deps database_knotinfo -d /tmp/kidl
    python3 scripts/knotinfo_fixtures.py --csv <unpacked>/database_knotinfo/csv_data/knotinfo_data_complete.csv
"""

import argparse
import csv
import json
import pathlib

import sympy

MAX_CROSSINGS = 9

# 4_1#4_1 and 4_1#5_2 are left out: their Jones polynomials equal those of 8_9 and
# 9_12, and the invariant table rejects collisions.
COMPOSITES = [
    ["3_1", "3_1"],
    ["3_1", "m3_1"],
    ["3_1", "4_1"],
    ["3_1", "5_1"],
    ["3_1", "m5_1"],
    ["3_1", "5_2"],
    ["3_1", "m5_2"],
    ["3_1", "3_1", "3_1"],
    ["3_1", "3_1", "m3_1"],
    ["3_1", "6_1"],
    ["3_1", "m6_1"],
    ["3_1", "6_2"],
    ["3_1", "m6_2"],
    ["3_1", "6_3"],
    ["4_1", "5_1"],
]


def diagram_from_pd(pd):
    """X[a,b,c,d] lists labels counterclockwise from the incoming under-strand, so the
    spokes clockwise from the over-strand are d, c, b, a."""
    if not pd:
        return {"free_loops": 1, "crossings": [], "edges": []}
    ends = {}
    for i, (a, b, c, d) in enumerate(pd):
        for spoke, label in enumerate((d, c, b, a)):
            ends.setdefault(label, []).append([i, spoke])
    edges = []
    for label in sorted(ends):
        pair = ends[label]
        assert len(pair) == 2, f"label {label} used {len(pair)} times"
        edges.append(pair)
    crossings = [{"order": 2, "type": [1, 2]} for _ in pd]
    return {"free_loops": 0, "crossings": crossings, "edges": edges}


def jones_in_a(text):
    t = sympy.Symbol("t")
    shift = 64
    expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals={"t": t}) * t**shift)
    poly = sympy.Poly(expr, t)
    terms = [[-4 * (k - shift), int(c)] for (k,), c in poly.terms() if c != 0]
    return sorted(terms, reverse=True)


def composite_name(parts):
    return "#".join(parts)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--csv", required=True)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "crates/core/fixtures"))
    args = parser.parse_args()

    csv.field_size_limit(1 << 30)
    out = pathlib.Path(args.out)
    (out / "knots").mkdir(parents=True, exist_ok=True)
    reference = {}
    with open(args.csv, newline="") as f:
        for row in csv.DictReader(f, delimiter="|"):
            try:
                crossings = int(row["crossing_number"])
            except ValueError:
                continue
            if crossings > MAX_CROSSINGS:
                continue
            name = row["name"]
            pd = json.loads(row["pd_notation"]) if row["pd_notation"].strip() else []
            diagram = diagram_from_pd(pd)
            (out / "knots" / f"{name}.json").write_text(json.dumps(diagram) + "\n")
            reference[name] = jones_in_a(row["jones_polynomial"])

    composites = [{"name": composite_name(p), "parts": p} for p in COMPOSITES]
    (out / "composites.json").write_text(json.dumps(composites, indent=1) + "\n")
    (out / "reference_jones.json").write_text(json.dumps(reference, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(reference)} knots and {len(composites)} composites to {out}")


if __name__ == "__main__":
    main()
