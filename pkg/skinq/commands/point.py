import argparse

from .. import config
from .. import messages as msgs
from ..errors import SkinError
from ..kinetic import (
    COUPLING_CONSTANTS,
    DEFAULT_COUPLING,
    PlasmaParams,
    grid_spec_for,
    physical_prefactor,
    reduced_impedance,
)
from ..neumann import solve_direct, sum_series
from ..quadrature import build_grid
from ..reference import impedance_diffuse, impedance_specular
from ..sweep import figure_ratios
from . import Command
from .set import DEFAULT_ORDERS, DEFAULT_TOL


def point_configure_parser(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", "-a", type=float, help="Anomaly parameter alpha")
    p.add_argument("--omega-ratio", type=float, default=1.0, help="omega/nu")
    p.add_argument("--q", type=float, default=0.0, help="Specularity coefficient")
    p.add_argument("--orders", type=int, help="Highest series order N")
    p.add_argument("--tol", type=float, help="Quadrature tolerance")
    p.add_argument(
        "--direct",
        action="store_true",
        help="Also solve the discretized integral equation directly",
    )
    p.add_argument(
        "--coupling", choices=sorted(COUPLING_CONSTANTS), default=DEFAULT_COUPLING
    )
    p.add_argument(
        "--physical",
        action="store_true",
        help="Report physical impedances; needs --omega, --nu and --mfp",
    )
    p.add_argument("--omega", type=float, help="Angular frequency in rad/s")
    p.add_argument("--nu", type=float, help="Collision frequency in 1/s")
    p.add_argument("--mfp", type=float, help="Mean free path in cm")


def point_run(args: argparse.Namespace) -> int:
    if args.alpha is None:
        print("Error: --alpha is required")
        return 1
    omega_ratio = args.omega_ratio
    prefactor = None
    if args.physical:
        if args.omega is None or args.nu is None or args.mfp is None:
            print("Error: --physical needs --omega, --nu and --mfp")
            return 1
        if args.nu <= 0:
            print(f"Error: {msgs.invalid_X('must be positive', 'collision frequency')}")
            return 1
        omega_ratio = args.omega / args.nu

    orders = args.orders
    if orders is None:
        orders = int(config.get_config("orders", DEFAULT_ORDERS))
    tol = args.tol
    if tol is None:
        tol = float(config.get_config("tol", DEFAULT_TOL))

    try:
        if args.physical:
            prefactor = physical_prefactor(args.omega, args.mfp)
        params = PlasmaParams(omega_ratio, args.alpha, args.q)
        grid = build_grid(grid_spec_for(params))
        series = sum_series(params, orders, grid, args.coupling)
        zeta_ref = impedance_specular(params, tol=tol)
        zeta_dif = impedance_diffuse(params, grid)
        direct = solve_direct(params, grid, args.coupling) if args.direct else None
    except SkinError as e:
        print(f"Error: {e}")
        return 1

    print(msgs.point_header(params.alpha, params.omega_over_nu, params.q))
    for n, (term, partial) in enumerate(zip(series.terms, series.partial_sums)):
        print(msgs.term_line(n, term, partial))
    print(msgs.value_line("zeta_ref", zeta_ref))
    print(msgs.value_line("zeta_dif", zeta_dif))
    if direct is not None:
        print(msgs.value_line("zeta_direct", direct.zeta))
        print(msgs.ratio_line("condition", direct.condition))
    ratios = figure_ratios(series, zeta_ref, zeta_dif)
    print(msgs.ratio_line("Y1", ratios.y1))
    print(msgs.ratio_line("Y2", ratios.y2))
    print(msgs.ratio_line("ratio3_re", ratios.ratio3_re))
    print(msgs.ratio_line("ratio3_im", ratios.ratio3_im))
    print(msgs.ratio_line("Y1_im", ratios.y1_im))
    print(msgs.ratio_line("Y2_im", ratios.y2_im))
    if series.diverging:
        print(msgs.divergence_line(series.tail_estimate))
    if prefactor is not None:
        print(msgs.physical_line(prefactor * reduced_impedance(series.total)))
    return 1 if series.diverging else 0


def get_command() -> Command:
    return Command(
        name="point",
        help="Report the impedance series at a single parameter point.",
        description="Print the series terms, partial sums, specular and "
        "diffuse references and the figure ratios for one (alpha, omega/nu, q).",
        configure_parser=point_configure_parser,
        run=point_run,
    )
