"""Exact rational scalars.

``Rational`` is the standard library ``fractions.Fraction``: arbitrary
precision, always stored with positive denominator and gcd(|num|, den) = 1,
with decidable equality.  This module adds the canonical text form used by
the CLI and all JSON output: ``p/q``, or just ``p`` when q = 1.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse canonical rational text ``p/q`` (or ``p``); reject anything else."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational in p/q form: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """Render ``p/q``, or ``p`` when the denominator is 1."""
    return str(Fraction(value))


def is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1
