from typing import Mapping, Optional

from . import config
from .commands.set import DEFAULT_LANG


def _load_lang_from_config() -> str:
    return config.get_config("lang", DEFAULT_LANG)


_LANG: str = _load_lang_from_config()


def set_language(lang: str) -> None:
    global _LANG
    _LANG = lang or DEFAULT_LANG


def _fmt_complex(value: complex) -> str:
    return f"{value.real:+.10g} {value.imag:+.10g}i"


def sweep_started_line(alpha_count: int, q_count: int, workers: int) -> str:
    templates = {
        "en": f"Sweeping {alpha_count} alpha values x {q_count} q values "
        f"({workers} worker{'s' if workers != 1 else ''})",
    }
    return templates.get(_LANG, templates["en"])


def sweep_summary_line(ok_rows: int, total_rows: int) -> str:
    if ok_rows == total_rows:
        templates = {"en": f"All {total_rows} rows OK"}
    else:
        templates = {"en": f"{total_rows - ok_rows} of {total_rows} rows not OK"}
    return templates.get(_LANG, templates["en"])


def saved_path_line(path: str) -> str:
    templates = {
        "en": f"Saved to: {path}",
    }
    return templates.get(_LANG, templates["en"])


def point_header(alpha: float, omega_over_nu: float, q: float) -> str:
    templates = {
        "en": f"alpha = {alpha:.6g}, omega/nu = {omega_over_nu:.6g}, q = {q:.4g}",
    }
    return templates.get(_LANG, templates["en"])


def term_line(order: int, term: complex, partial_sum: complex) -> str:
    templates = {
        "en": f"  zeta_{order} = {_fmt_complex(term)}   "
        f"sum = {_fmt_complex(partial_sum)}",
    }
    return templates.get(_LANG, templates["en"])


def value_line(name: str, value: complex) -> str:
    return f"  {name} = {_fmt_complex(value)}"


def ratio_line(name: str, value: Optional[float]) -> str:
    shown = "-" if value is None else f"{value:.8g}"
    return f"  {name} = {shown}"


def divergence_line(tail_estimate: float) -> str:
    templates = {
        "en": "Warning: the series does not converge "
        f"(tail estimate {tail_estimate:.3g})",
    }
    return templates.get(_LANG, templates["en"])


def physical_line(value: complex) -> str:
    templates = {
        "en": f"  Z = {_fmt_complex(value)} s/cm (Gaussian units)",
    }
    return templates.get(_LANG, templates["en"])


def summary_header() -> str:
    templates = {
        "en": f"{'alpha':>12} {'q':>6} {'N':>3} {'Y1':>12} {'Y2':>12} "
        f"{'ratio3_re':>12} {'ratio3_im':>12}  status",
    }
    return templates.get(_LANG, templates["en"])


def summary_line(row: Mapping[str, str]) -> str:
    def cell(name: str) -> str:
        return row.get(name) or "-"

    return (
        f"{cell('alpha'):>12} {cell('q'):>6} {cell('order'):>3} {cell('Y1'):>12} "
        f"{cell('Y2'):>12} {cell('ratio3_re'):>12} {cell('ratio3_im'):>12}  "
        f"{cell('status')}"
    )


def gradient_line(value: complex) -> str:
    templates = {
        "en": f"Surface gradient e'(0+) = {_fmt_complex(value)} (expected 1)",
    }
    return templates.get(_LANG, templates["en"])


def unconverged_line() -> str:
    texts = {
        "en": "Warning: some oscillatory integrals missed their tolerance",
    }
    return texts.get(_LANG, texts["en"])


def invalid_X(msg: str, X: str) -> str:
    templates = {
        "en": f"Invalid {X}: {msg}",
    }
    return templates.get(_LANG, templates["en"])


# To add translations:
# - Create entries for your language code (e.g., "de") alongside "en" in the
#   dictionaries above (templates/texts).
