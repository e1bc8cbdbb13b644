"""CSV point files: one point per line, ``#`` starts a comment line."""
from __future__ import annotations

import csv

import numpy as np

from .errors import ParseError
from .geometry import PointSet, as_points


def read_points(path) -> PointSet:
    rows = []
    dim = None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            line = reader.line_num
            if not row or row[0].lstrip().startswith("#"):
                continue
            if all(not tok.strip() for tok in row):
                continue
            try:
                vals = [float(tok) for tok in row]
            except ValueError:
                raise ParseError(f"non-numeric token in {row!r}", line) from None
            if dim is None:
                dim = len(vals)
            elif len(vals) != dim:
                raise ParseError(f"expected {dim} coordinates, found {len(vals)}", line)
            if not all(np.isfinite(vals)):
                raise ParseError("non-finite coordinate", line)
            rows.append(vals)
    if not rows:
        raise ParseError(f"{path}: no points found")
    return PointSet.from_array(rows)


def write_points(s, path) -> None:
    """Write with shortest round-trip float formatting, so reading the file
    back reproduces every coordinate exactly."""
    pts = as_points(s)
    with open(path, "w", newline="") as fh:
        for row in pts:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")
