import argparse
from typing import List, Sequence, Tuple

import numpy as np

from .. import config, storage
from .. import messages as msgs
from ..errors import SkinError
from ..kinetic import PlasmaParams
from ..neumann import (
    distribution_function,
    field_profile,
    solution_for,
    surface_gradient,
)
from . import Command

DEFAULT_OUTPUT_NAME = "profile.csv"


def profile_configure_parser(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", "-a", type=float, help="Anomaly parameter alpha")
    p.add_argument("--omega-ratio", type=float, default=1.0, help="omega/nu")
    p.add_argument("--q", type=float, default=0.0, help="Specularity coefficient")
    p.add_argument(
        "--orders",
        type=int,
        help="Use the series up to this order (default: direct solve)",
    )
    p.add_argument(
        "--x-max", type=float, default=10.0, help="Largest depth in mean free paths"
    )
    p.add_argument("--points", type=int, default=101, help="Number of depths")
    p.add_argument(
        "--mu",
        type=float,
        nargs="+",
        help="Also tabulate h(x, mu) for these velocities",
    )
    p.add_argument("--out", "-o", help="Output CSV path")


def profile_run(args: argparse.Namespace) -> int:
    if args.alpha is None:
        print("Error: --alpha is required")
        return 1
    if args.points < 2 or not args.x_max > 0:
        reason = "need --points >= 2 and --x-max > 0"
        print(f"Error: {msgs.invalid_X(reason, 'depths')}")
        return 1
    xs = np.linspace(0.0, args.x_max, args.points)
    path = config.resolve_output_path(args.out, DEFAULT_OUTPUT_NAME)

    try:
        params = PlasmaParams(args.omega_ratio, args.alpha, args.q)
        spectrum, grid = solution_for(params, args.orders)
        profile = field_profile(spectrum, grid, xs)
        gradient = surface_gradient(spectrum, grid)
        columns: List[Tuple[float, Sequence[complex]]] = []
        for mu in args.mu or []:
            values = [
                distribution_function(spectrum, grid, params, float(x), mu) for x in xs
            ]
            columns.append((mu, values))
        storage.emit_profile_csv(profile, path, columns)
    except (SkinError, OSError) as e:
        print(f"Error: {e}")
        return 1

    print(msgs.gradient_line(gradient))
    if not profile.converged:
        print(msgs.unconverged_line())
    print(msgs.saved_path_line(path))
    return 0 if profile.converged else 1


def get_command() -> Command:
    return Command(
        name="profile",
        help="Tabulate the field e(x) and the distribution h(x, mu) to CSV.",
        description="Reconstruct the field profile in depth from the field "
        "spectrum (series or direct solve) and write it to CSV.",
        configure_parser=profile_configure_parser,
        run=profile_run,
    )
