"""skinq: surface impedance of a plasma half-space with partially specular walls.

Run as a module during development:
  python -m skinq sweep --alpha-min 1e-2 --alpha-max 1e4 --q 0

Or via the provided bin/skinq launcher:
  skinq point --alpha 1e4 --orders 2
"""
from .cli import main as _main

__all__ = [
    "main",
]


def main() -> None:
    raise SystemExit(_main())
