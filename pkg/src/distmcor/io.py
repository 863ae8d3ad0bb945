"""CSV ingestion and report emission."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .kernels import ComponentPartition, Dataset, KernelSpec

NA_TOKENS = {"", "na", "nan", "null", "none", "n/a", "#n/a"}


class DataFormatError(ValueError):
    """Malformed input file or partition description."""


def parse_partition(spec, header=None, alpha=1.0):
    """Parse a ``"1,2|3"`` style partition.

    Components are separated by ``|`` and columns by ``,``.  Columns are
    1-based indices or header names.  ``None`` gives one component per
    column (requires ``header``).
    """
    if isinstance(spec, ComponentPartition):
        return spec
    if spec is None:
        if header is None:
            raise DataFormatError("cannot infer a partition without a header")
        return ComponentPartition.univariate(len(header), alpha=alpha)
    names = {name: i for i, name in enumerate(header or [])}
    comps = []
    for ci, group in enumerate(str(spec).split("|")):
        cols = []
        for tok in group.split(","):
            tok = tok.strip()
            if not tok:
                raise DataFormatError(f"empty column reference in component {ci + 1} of {spec!r}")
            if tok in names:
                cols.append(names[tok])
            elif tok.isdigit():
                idx = int(tok) - 1
                if idx < 0 or (header is not None and idx >= len(header)):
                    raise DataFormatError(f"column index {tok} out of range in {spec!r}")
                cols.append(idx)
            else:
                raise DataFormatError(f"unknown column {tok!r} in partition {spec!r}")
        comps.append(tuple(cols))
    try:
        return ComponentPartition(comps, tuple(KernelSpec(alpha) for _ in comps))
    except ValueError as exc:
        raise DataFormatError(str(exc)) from exc


def ingest_csv(path, partition=None, alpha=1.0):
    """Read a rectangular numeric CSV file with a header row.

    Parameters
    ----------
    path : str or Path
    partition : str or ComponentPartition, optional
        See :func:`parse_partition`; defaults to one component per column.
    alpha : float
        Kernel exponent of every component.

    Raises
    ------
    DataFormatError
        On ragged rows, non-numeric or missing cells, or a bad partition;
        the message names the offending row and column.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataFormatError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataFormatError(
                    f"{path}: row {lineno} has {len(row)} fields, header has {len(header)}"
                )
            vals = []
            for j, cell in enumerate(row):
                cell = cell.strip()
                where = f"{path}: row {lineno}, column {j + 1} ({header[j]!r})"
                if cell.lower() in NA_TOKENS:
                    raise DataFormatError(f"{where}: missing value {cell!r}")
                try:
                    v = float(cell)
                except ValueError:
                    raise DataFormatError(f"{where}: non-numeric value {cell!r}") from None
                if not math.isfinite(v):
                    raise DataFormatError(f"{where}: non-finite value {cell!r}")
                vals.append(v)
            rows.append(vals)
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    part = parse_partition(partition, header, alpha)
    values = np.array(rows, dtype=float)
    try:
        part.validate(values.shape[1])
    except ValueError as exc:
        raise DataFormatError(str(exc)) from exc
    return Dataset(values, part, tuple(header))


def write_csv(path, values, header=None):
    """Write a numeric matrix (to a path or open file) with round-trip float formatting."""
    if isinstance(values, Dataset):
        header = header or values.labels
        values = values.values
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    if not header:
        header = [f"x{i + 1}" for i in range(values.shape[1])]
    if hasattr(path, "write"):
        _write_rows(path, header, values)
    else:
        with Path(path).open("w", newline="") as fh:
            _write_rows(fh, header, values)


def _write_rows(fh, header, values):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in values:
        w.writerow([repr(float(v)) for v in row])


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def write_table(path, rows, columns=None):
    """Write a list of dicts as CSV (columns default to the first row's keys)."""
    rows = list(rows)
    columns = list(columns or (rows[0].keys() if rows else []))
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r.get(c, "")) for c in columns])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps_json(obj):
    """Deterministic JSON (sorted keys, enums as values, NaN as null)."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps_json(obj))
