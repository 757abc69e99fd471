"""Number formatting shared by exports and reports.

Exact rationals print as `p/q` (bare integer when q = 1); floats print
via repr, the shortest digit string that round-trips to the same double.
Reports built from the same inputs are therefore byte-identical."""

from __future__ import annotations

from fractions import Fraction


def format_scalar(v) -> str:
    if isinstance(v, bool):
        raise TypeError("booleans are not report scalars")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    raise TypeError(f"cannot format {type(v).__name__} as a report scalar")


def parse_scalar(s: str):
    """Inverse of format_scalar (used when reloading reports)."""
    if "/" in s:
        return Fraction(s)
    try:
        return int(s)
    except ValueError:
        return float(s)
