import csv
import os
from typing import List, Optional, Sequence

from .errors import EmptyResultsError
from .neumann import FieldProfile
from .sweep import SweepRow

DEFAULT_SWEEP_NAME = "sweep.csv"

SWEEP_HEADER = [
    "alpha",
    "omega_over_nu",
    "q",
    "order",
    "re_zeta_n",
    "im_zeta_n",
    "re_sum",
    "im_sum",
    "re_zeta_ref",
    "im_zeta_ref",
    "re_zeta_dif",
    "im_zeta_dif",
    "Y1",
    "Y2",
    "ratio3_re",
    "ratio3_im",
    "Y1_im",
    "Y2_im",
    "status",
]


def format_number(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(float(value), ".12g")


def _complex_cells(value: Optional[complex]) -> List[str]:
    if value is None:
        return ["", ""]
    return [format_number(value.real), format_number(value.imag)]


def sweep_row_cells(row: SweepRow) -> List[str]:
    cells = [
        format_number(row.alpha),
        format_number(row.omega_over_nu),
        format_number(row.q),
        "" if row.order is None else str(row.order),
    ]
    cells += _complex_cells(row.zeta_n)
    cells += _complex_cells(row.partial_sum)
    cells += _complex_cells(row.zeta_ref)
    cells += _complex_cells(row.zeta_dif)
    cells += [
        format_number(row.y1),
        format_number(row.y2),
        format_number(row.ratio3_re),
        format_number(row.ratio3_im),
        format_number(row.y1_im),
        format_number(row.y2_im),
        row.status,
    ]
    return cells


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def emit_csv(rows: Sequence[SweepRow], path: str) -> str:
    if not rows:
        raise EmptyResultsError("no sweep rows to write")
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow(sweep_row_cells(row))
    return path


def load_sweep_csv(path: str) -> List[dict[str, str]]:
    if not os.path.exists(path):
        return []
    with open(path, "r", newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def emit_profile_csv(
    profile: FieldProfile,
    path: str,
    distributions: Optional[Sequence[tuple[float, Sequence[complex]]]] = None,
) -> str:
    """Write e(x) and optionally h(x, mu) columns, one row per depth."""
    if profile.x_nodes.size == 0:
        raise EmptyResultsError("empty profile")
    distributions = distributions or []
    header = ["x", "re_e", "im_e", "abs_e"]
    for mu, _ in distributions:
        tag = format_number(mu)
        header += [f"re_h_mu={tag}", f"im_h_mu={tag}"]
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for i, (x, e) in enumerate(zip(profile.x_nodes, profile.e_values)):
            cells = [
                format_number(x),
                format_number(e.real),
                format_number(e.imag),
                format_number(abs(e)),
            ]
            for _, values in distributions:
                cells += _complex_cells(complex(values[i]))
            writer.writerow(cells)
    return path


def all_ok(rows: Sequence[SweepRow]) -> bool:
    return all(row.ok for row in rows)
