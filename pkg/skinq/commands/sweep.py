import argparse
from typing import Any, Dict

from .. import config, storage
from .. import messages as msgs
from ..errors import InvalidParameterError, SkinError
from ..kinetic import COUPLING_CONSTANTS, physical_prefactor
from ..sweep import SweepConfig, run_sweep
from . import Command
from .read import print_summary
from .set import DEFAULT_ORDERS, DEFAULT_TOL, DEFAULT_WORKERS

DEFAULT_OUTPUT_NAME = storage.DEFAULT_SWEEP_NAME

# command-line flag -> SweepConfig field
_FLAG_FIELDS = {
    "alpha_min": "alpha_min",
    "alpha_max": "alpha_max",
    "alpha_count": "alpha_count",
    "omega_ratio": "omega_over_nu",
    "q": "q_values",
    "orders": "max_order",
    "tol": "tol",
    "out": "output_path",
    "coupling": "coupling",
    "workers": "workers",
    "grid_order": "grid_order",
}


def sweep_configure_parser(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", "-c", help="JSON file with sweep options")
    p.add_argument("--alpha-min", type=float, help="Smallest alpha (default: 1e-2)")
    p.add_argument("--alpha-max", type=float, help="Largest alpha (default: 1e4)")
    p.add_argument(
        "--alpha-count", type=int, help="Number of log-spaced alphas (default: 30)"
    )
    p.add_argument("--omega-ratio", type=float, help="omega/nu (default: 1)")
    p.add_argument(
        "--q", type=float, nargs="+", help="Specularity coefficients (default: 0)"
    )
    p.add_argument("--orders", type=int, help="Highest series order N")
    p.add_argument("--tol", type=float, help="Quadrature tolerance")
    p.add_argument("--out", "-o", help="Output CSV path")
    p.add_argument(
        "--coupling",
        choices=sorted(COUPLING_CONSTANTS),
        help="Kernel coupling constant variant (default: derived)",
    )
    p.add_argument("--workers", type=int, help="Worker threads over alpha")
    p.add_argument("--grid-order", type=int, help="Gauss-Legendre nodes per panel")
    p.add_argument(
        "--physical",
        action="store_true",
        help="Print a summary with physical impedances; "
        "needs --omega, --nu and --mfp",
    )
    p.add_argument("--omega", type=float, help="Angular frequency in rad/s")
    p.add_argument("--nu", type=float, help="Collision frequency in 1/s")
    p.add_argument("--mfp", type=float, help="Mean free path in cm")


def build_sweep_config(args: argparse.Namespace) -> SweepConfig:
    """Flags override the sweep file, which overrides the user settings."""
    data: Dict[str, Any] = {
        "tol": config.get_config("tol", DEFAULT_TOL),
        "max_order": config.get_config("orders", DEFAULT_ORDERS),
        "workers": config.get_config("workers", DEFAULT_WORKERS),
    }
    if getattr(args, "config", None):
        data.update(config.load_sweep_file(args.config))
    for flag, name in _FLAG_FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            data[name] = value
    return SweepConfig.from_mapping(data)


def sweep_run(args: argparse.Namespace) -> int:
    prefactor = None
    physical = getattr(args, "physical", False)
    if physical and (args.omega is None or args.nu is None or args.mfp is None):
        print("Error: --physical needs --omega, --nu and --mfp")
        return 1
    try:
        if physical:
            if args.nu <= 0:
                raise InvalidParameterError("collision frequency must be positive")
            prefactor = physical_prefactor(args.omega, args.mfp)
            args.omega_ratio = args.omega / args.nu
        sweep_config = build_sweep_config(args)
    except SkinError as e:
        print(f"Error: {e}")
        return 1

    print(
        msgs.sweep_started_line(
            sweep_config.alpha_count,
            len(sweep_config.q_values),
            sweep_config.workers,
        )
    )
    rows = run_sweep(sweep_config)
    path = config.resolve_output_path(sweep_config.output_path, DEFAULT_OUTPUT_NAME)
    try:
        storage.emit_csv(rows, path)
    except (SkinError, OSError) as e:
        print(f"Error: cannot write {path}: {e}")
        return 1

    ok_rows = sum(1 for row in rows if row.ok)
    print(msgs.sweep_summary_line(ok_rows, len(rows)))
    print(msgs.saved_path_line(path))
    if prefactor is not None:
        print_summary(storage.load_sweep_csv(path), prefactor)
    return 0 if storage.all_ok(rows) else 1


def get_command() -> Command:
    return Command(
        name="sweep",
        help="Sweep alpha and write impedance series data to CSV.",
        description="Compute the series terms, partial sums and both exact "
        "references over a log-spaced alpha range for each q and write one CSV "
        "row per (alpha, q, order).",
        configure_parser=sweep_configure_parser,
        run=sweep_run,
    )
