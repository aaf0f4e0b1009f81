import argparse
from typing import Dict, List, Optional, Tuple

from .. import config, storage
from .. import messages as msgs
from ..errors import SkinError
from ..kinetic import physical_prefactor, reduced_impedance
from ..sweep import STATUS_OK
from . import Command

DEFAULT_OUTPUT_NAME = storage.DEFAULT_SWEEP_NAME

CsvRow = Dict[str, str]


def read_configure_parser(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "path",
        nargs="?",
        help=f"Sweep CSV (default: {DEFAULT_OUTPUT_NAME} in the output directory)",
    )
    p.add_argument("--q", type=float, help="Only show rows with this q")
    p.add_argument(
        "--physical",
        action="store_true",
        help="Also show the physical impedance; needs --omega and --mfp",
    )
    p.add_argument("--omega", type=float, help="Angular frequency in rad/s")
    p.add_argument("--mfp", type=float, help="Mean free path in cm")


def final_rows(rows: List[CsvRow]) -> List[CsvRow]:
    """The highest-order row of every (alpha, q), in file order."""
    last: Dict[Tuple[str, str], CsvRow] = {}
    for row in rows:
        last[(row["alpha"], row["q"])] = row
    return list(last.values())


def physical_impedance(row: CsvRow, prefactor: float) -> Optional[complex]:
    if not row.get("re_sum") or not row.get("im_sum"):
        return None
    zeta = complex(float(row["re_sum"]), float(row["im_sum"]))
    return prefactor * reduced_impedance(zeta)


def print_summary(rows: List[CsvRow], prefactor: Optional[float] = None) -> None:
    print(msgs.summary_header())
    for row in final_rows(rows):
        print(msgs.summary_line(row))
        if prefactor is not None:
            value = physical_impedance(row, prefactor)
            if value is not None:
                print(msgs.physical_line(value))


def read_run(args: argparse.Namespace) -> int:
    prefactor = None
    if args.physical:
        if args.omega is None or args.mfp is None:
            print("Error: --physical needs --omega and --mfp")
            return 1
        try:
            prefactor = physical_prefactor(args.omega, args.mfp)
        except SkinError as e:
            print(f"Error: {e}")
            return 1

    path = config.resolve_output_path(args.path, DEFAULT_OUTPUT_NAME)
    rows = storage.load_sweep_csv(path)
    if args.q is not None:
        rows = [r for r in rows if r["q"] and float(r["q"]) == args.q]
    if not rows:
        print(f"Error: no sweep rows in {path}")
        return 1

    print_summary(rows, prefactor)
    return 0 if all(r["status"] == STATUS_OK for r in rows) else 1


def get_command() -> Command:
    return Command(
        name="read",
        help="Summarize a sweep CSV written by 'skinq sweep'.",
        description="Print Y1, Y2 and ratio3 for the highest order of every "
        "(alpha, q) in a sweep file, optionally with physical impedances.",
        configure_parser=read_configure_parser,
        run=read_run,
    )
