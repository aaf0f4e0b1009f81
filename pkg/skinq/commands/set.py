import argparse
import os
from typing import List

from .. import config
from .. import messages as msgs
from . import Command

DEFAULT_LANG = "en"
DEFAULT_TOL = "1e-10"
DEFAULT_ORDERS = "2"
DEFAULT_WORKERS = "1"


def set_configure_parser(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lang", help="Language code")
    p.add_argument(
        "--outdir", help="Default directory for CSV results (absolute path)"
    )
    p.add_argument("--tol", help="Default quadrature tolerance (e.g. 1e-10)")
    p.add_argument("--orders", help="Default series order N (default: 2)")
    p.add_argument("--workers", help="Default number of sweep worker threads")
    p.add_argument("--show", action="store_true", help="Show current settings")


def set_run(args: argparse.Namespace) -> int:
    if args.show:
        print("Current settings:")
        print(f"  lang: {config.get_config('lang', DEFAULT_LANG)}")
        print(f"  outdir: {config.get_output_dir()}")
        print(f"  tol: {config.get_config('tol', DEFAULT_TOL)}")
        print(f"  orders: {config.get_config('orders', DEFAULT_ORDERS)}")
        print(f"  workers: {config.get_config('workers', DEFAULT_WORKERS)}")
        env_dir = os.environ.get(config.OUTPUT_DIR_ENV)
        if env_dir:
            print(f"  ({config.OUTPUT_DIR_ENV} overrides outdir: {env_dir})")
        return 0

    updated: List[str] = []
    if args.lang is not None:
        lang = args.lang.strip().lower()
        config.set_config("lang", lang)
        msgs.set_language(lang)
        updated.append(f"lang={lang}")

    if args.outdir is not None:
        outdir = args.outdir.strip()
        if not os.path.isabs(outdir):
            print(f"Error: outdir must be an absolute path: {outdir}")
            return 1
        if not os.path.exists(outdir):
            try:
                os.makedirs(outdir, exist_ok=True)
            except Exception as e:
                print(f"Error: cannot create directory {outdir}: {e}")
                return 1
        config.set_config("outdir", outdir)
        updated.append(f"outdir={outdir}")

    if args.tol is not None:
        try:
            tol = float(args.tol)
            if not 0.0 < tol < 1.0:
                raise ValueError("must lie in (0, 1)")
        except ValueError as e:
            print(f"Error: {msgs.invalid_X(str(e), 'tolerance')}")
            return 1
        config.set_config("tol", args.tol.strip())
        updated.append(f"tol={args.tol.strip()}")

    for key in ("orders", "workers"):
        raw = getattr(args, key)
        if raw is None:
            continue
        try:
            value = int(raw)
        except ValueError:
            print(f"Error: {key} must be an integer: {raw}")
            return 1
        lowest = 0 if key == "orders" else 1
        if value < lowest:
            print(f"Error: {key} must be >= {lowest}: {value}")
            return 1
        config.set_config(key, str(value))
        updated.append(f"{key}={value}")

    if updated:
        print(f"Updated: {', '.join(updated)}")
    else:
        print("No settings specified. Use --show to see current settings.")
        print("Available options: --lang, --outdir, --tol, --orders, --workers")

    return 0


def get_command() -> Command:
    return Command(
        name="set",
        help="Set configuration options.",
        description="Set persistent defaults: language, output directory, "
        "tolerance, series order and worker count.",
        configure_parser=set_configure_parser,
        run=set_run,
    )
