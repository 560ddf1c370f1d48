"""Check rows and CSV report emission.

Every verification produces rows (check_id, statement, lhs, rhs,
tolerance, passed).  Floats are printed with 17 significant digits so
reports are bit-reproducible audits.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass


def fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return f"{float(x):.17g}"


@dataclass
class CheckRow:
    check_id: str
    statement: str
    lhs: float | complex
    rhs: float | complex
    tolerance: float
    passed: bool


def make_row(check_id: str, statement: str, lhs, rhs, tolerance: float,
             passed: bool | None = None, mode: str = "rel") -> CheckRow:
    """Build a row; when ``passed`` is None it is derived from the mode.

    mode 'rel': |lhs - rhs| <= tol * max(|rhs|, tiny)
    mode 'abs': |lhs - rhs| <= tol
    mode 'le' : lhs <= rhs * (1 + tol)
    """
    if passed is None:
        gap = abs(lhs - rhs)
        if mode == "rel":
            passed = gap <= tolerance * max(abs(rhs), 1e-300)
        elif mode == "abs":
            passed = gap <= tolerance
        elif mode == "le":
            passed = abs(lhs) <= abs(rhs) * (1.0 + tolerance) + 1e-300
        else:
            raise ValueError(f"unknown mode {mode}")
    return CheckRow(check_id, statement, lhs, rhs, tolerance, bool(passed))


def rows_to_csv(rows: list[CheckRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check_id", "statement", "lhs", "rhs", "tolerance", "pass"])
    for r in rows:
        w.writerow([r.check_id, r.statement, fmt(r.lhs), fmt(r.rhs),
                    fmt(r.tolerance), "1" if r.passed else "0"])
    return buf.getvalue()


def field_to_csv(grid, values) -> str:
    """Field CSV: columns x_1..x_{d+1}, re, im."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    d = grid.d
    w.writerow([f"x_{i + 1}" for i in range(d + 1)] + ["re", "im"])
    pts = grid.nodes()
    flat = values.reshape(-1)
    for p, v in zip(pts, flat):
        w.writerow([fmt(c) for c in p] + [fmt(v.real), fmt(v.imag)])
    return buf.getvalue()


def scale_field_to_csv(scale_grid, values) -> str:
    """Scale-space field CSV: columns a, x_1..x_{d+1}, re, im."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    d = scale_grid.base.d
    w.writerow(["a"] + [f"x_{i + 1}" for i in range(d + 1)] + ["re", "im"])
    pts = scale_grid.base.nodes()
    for j, a in enumerate(scale_grid.scales):
        flat = values[j].reshape(-1)
        for p, v in zip(pts, flat):
            w.writerow([fmt(a)] + [fmt(c) for c in p] + [fmt(v.real), fmt(v.imag)])
    return buf.getvalue()


def matrix_to_csv(matrix) -> str:
    """Operator CSV: columns row, col, re, im."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    for i in range(matrix.shape[0]):
        for j in range(matrix.shape[1]):
            v = matrix[i, j]
            w.writerow([i, j, fmt(v.real), fmt(v.imag)])
    return buf.getvalue()


def parse_field_csv(grid, text: str):
    """Read a field CSV back onto a grid (row order must match grid.nodes())."""
    import numpy as np
    rows = list(csv.reader(io.StringIO(text)))
    header, data = rows[0], rows[1:]
    if len(data) != grid.n_nodes:
        raise ValueError(f"field CSV has {len(data)} rows, grid has {grid.n_nodes} nodes")
    re_i = header.index("re")
    im_i = header.index("im")
    vals = np.array([complex(float(r[re_i]), float(r[im_i])) for r in data])
    return vals.reshape(grid.shape)


def parse_scale_field_csv(scale_grid, text: str):
    """Read a scale-space CSV back onto a scale grid (scale-major row order)."""
    import numpy as np
    rows = list(csv.reader(io.StringIO(text)))
    header, data = rows[0], rows[1:]
    n_expect = scale_grid.scale_points * scale_grid.base.n_nodes
    if len(data) != n_expect:
        raise ValueError(f"scale CSV has {len(data)} rows, grid has {n_expect} cells")
    re_i = header.index("re")
    im_i = header.index("im")
    vals = np.array([complex(float(r[re_i]), float(r[im_i])) for r in data])
    return vals.reshape(scale_grid.shape)
