"""The order-(2k+1) rational recurrence and its two-sided iteration.

One step forward solves

    x[n+2k+1] * x[n] = x[n+2k] * x[n+1] + a * (x[n+k] + x[n+k+1])

for the left-hand iterate; one step backward solves the same relation for
``x[n]``.  Iterating in numeric mode divides exact rationals; in symbolic
mode every division goes through Laurent exact division and a failure aborts
with :class:`LaurentViolationError` (it would disprove the Laurent property,
so it must never be silent).

Windows are immutable two-sided tables of iterates.  ``extend`` returns a new
window; a *raw* window wraps arbitrary values without the solution invariant
and exists for fault injection and identities that hold for any sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import (
    LaurentViolationError,
    NonIntegerValueError,
    NotExactError,
    ZeroPivotError,
)
from .laurent import LaurentPolynomial, variables
from .rational import format_rational, parse_rational


def default_symbolic_cap(k: int) -> int:
    """Default bound on |n| for symbolic windows; term counts grow steeply."""
    return 6 * k + 6


@dataclass(frozen=True)
class RecurrenceSpec:
    """One instance of the recurrence: order parameter k, coefficient a, seed."""

    k: int
    a: "Fraction | LaurentPolynomial"
    init: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(self.init) != 2 * self.k + 1:
            raise ValueError(f"need 2k+1 = {2 * self.k + 1} initial values, got {len(self.init)}")
        if isinstance(self.a, Fraction) and self.a == 0:
            raise ValueError("the coefficient a must be nonzero")
        if isinstance(self.a, LaurentPolynomial) and self.a.is_zero():
            raise ValueError("the coefficient a must be nonzero")

    @classmethod
    def numeric(cls, k: int, a, init: Sequence) -> "RecurrenceSpec":
        return cls(k, Fraction(a), tuple(Fraction(v) for v in init))

    @classmethod
    def symbolic(cls, k: int) -> "RecurrenceSpec":
        """Generic initial data: init = (x0, ..., x2k) and a as variables."""
        gens = variables(2 * k + 2)
        return cls(k, gens[-1], tuple(gens[:-1]))

    @property
    def symbolic_mode(self) -> bool:
        return isinstance(self.a, LaurentPolynomial)

    @property
    def order(self) -> int:
        return 2 * self.k + 1

    def reversed_init(self) -> "RecurrenceSpec":
        return replace(self, init=tuple(reversed(self.init)))

    def window(self) -> "SequenceWindow":
        """The minimal window [0, 2k] holding exactly the initial data."""
        return SequenceWindow(self, 0, tuple(self.init), raw=False)


@dataclass(frozen=True)
class SequenceWindow:
    """Contiguous table of iterates x_n for n in [lo, lo + len(values) - 1]."""

    spec: RecurrenceSpec
    lo: int
    values: tuple
    raw: bool = False

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def __getitem__(self, n: int):
        if not self.lo <= n <= self.hi:
            raise IndexError(f"index {n} outside window [{self.lo}, {self.hi}]")
        return self.values[n - self.lo]

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def covers(self, lo: int, hi: int) -> bool:
        return self.lo <= lo and hi <= self.hi

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def extend(self, new_lo: int | None = None, new_hi: int | None = None,
               symbolic_cap: int | None = None) -> "SequenceWindow":
        """Enlarge to [new_lo, new_hi] by forward and backward steps."""
        if self.raw:
            raise ValueError("raw windows are not solutions and cannot be extended")
        new_lo = self.lo if new_lo is None else min(new_lo, self.lo)
        new_hi = self.hi if new_hi is None else max(new_hi, self.hi)
        spec = self.spec
        k = spec.k
        if spec.symbolic_mode:
            cap = default_symbolic_cap(k) if symbolic_cap is None else symbolic_cap
            if new_lo < -cap or new_hi > cap:
                raise ValueError(
                    f"symbolic window [{new_lo}, {new_hi}] exceeds cap |n| <= {cap}; "
                    "pass symbolic_cap to override")
        vals = {n: v for n, v in zip(self.indices(), self.values)}
        a = spec.a
        for m in range(self.hi + 1, new_hi + 1):
            n = m - 2 * k - 1
            num = vals[n + 2 * k] * vals[n + 1] + a * (vals[n + k] + vals[n + k + 1])
            vals[m] = _div(num, vals[n], n, spec.symbolic_mode, m)
        for m in range(self.lo - 1, new_lo - 1, -1):
            num = vals[m + 2 * k] * vals[m + 1] + a * (vals[m + k] + vals[m + k + 1])
            vals[m] = _div(num, vals[m + 2 * k + 1], m + 2 * k + 1, spec.symbolic_mode, m)
        return SequenceWindow(spec, new_lo, tuple(vals[n] for n in range(new_lo, new_hi + 1)))

    def with_value(self, n: int, value) -> "SequenceWindow":
        """A raw copy with one entry overwritten (for fault injection tests)."""
        if n not in self:
            raise IndexError(f"index {n} outside window [{self.lo}, {self.hi}]")
        vals = list(self.values)
        vals[n - self.lo] = value
        return SequenceWindow(self.spec, self.lo, tuple(vals), raw=True)


def _div(num, den, pivot_index: int, symbolic: bool, target: int):
    if symbolic:
        try:
            return num.exact_div(den)
        except NotExactError as exc:
            raise LaurentViolationError(target) from exc
    if den == 0:
        raise ZeroPivotError(pivot_index)
    return num / den


def raw_window(spec: RecurrenceSpec, lo: int, values: Sequence) -> SequenceWindow:
    """A window over arbitrary values, exempt from the solution invariant."""
    vals = tuple(Fraction(v) if isinstance(v, int) else v for v in values)
    return SequenceWindow(spec, lo, vals, raw=True)


def xi_residual(w: SequenceWindow, n: int):
    """The defining residual; identically 0 on any window produced by extend.

    xi_n = | x_n      x_{n+2k}   |  -  a * (x_{n+k} + x_{n+k+1})
           | x_{n+1}  x_{n+2k+1} |
    """
    k = w.spec.k
    if not w.covers(n, n + 2 * k + 1):
        raise IndexError(f"xi_{n} needs [{n}, {n + 2 * k + 1}] inside [{w.lo}, {w.hi}]")
    a = w.spec.a
    return (w[n] * w[n + 2 * k + 1] - w[n + 1] * w[n + 2 * k]
            - a * (w[n + k] + w[n + k + 1]))


def apply_sigma(w: SequenceWindow) -> SequenceWindow:
    """The reversal pullback: the window of y_n = x_{2k-n}.

    The image is a valid solution window of the spec with reversed initial
    data; applying sigma twice restores the original window.
    """
    k = w.spec.k
    spec = w.spec.reversed_init()
    new_lo = 2 * k - w.hi
    return SequenceWindow(spec, new_lo, tuple(reversed(w.values)), raw=w.raw)


def phi(point: Sequence, a, k: int) -> tuple:
    """One application of the forward map on a phase-space point."""
    if len(point) != 2 * k + 1:
        raise ValueError("point must have 2k+1 coordinates")
    num = point[1] * point[2 * k] + a * (point[k + 1] + point[k])
    if isinstance(num, LaurentPolynomial):
        last = num.exact_div(point[0])
    else:
        if point[0] == 0:
            raise ZeroPivotError(0)
        last = num / point[0]
    return tuple(point[1:]) + (last,)


def phi_inverse(point: Sequence, a, k: int) -> tuple:
    """One application of the inverse map on a phase-space point."""
    if len(point) != 2 * k + 1:
        raise ValueError("point must have 2k+1 coordinates")
    num = point[2 * k - 1] * point[0] + a * (point[k - 1] + point[k])
    if isinstance(num, LaurentPolynomial):
        first = num.exact_div(point[2 * k])
    else:
        if point[2 * k] == 0:
            raise ZeroPivotError(2 * k)
        first = num / point[2 * k]
    return (first,) + tuple(point[:2 * k])


def sigma_point(point: Sequence) -> tuple:
    return tuple(reversed(point))


def check_reversibility(spec: RecurrenceSpec) -> bool:
    """Exact test of the conjugacy: the map equals sigma o inverse o sigma."""
    p = spec.init
    lhs = phi(p, spec.a, spec.k)
    rhs = sigma_point(phi_inverse(sigma_point(p), spec.a, spec.k))
    return all(l == r for l, r in zip(lhs, rhs))


# -- sequence export / import -------------------------------------------------

def format_value(v) -> str:
    """Canonical text for any scalar this package produces."""
    if isinstance(v, LaurentPolynomial):
        return str(v)
    return format_rational(v)


def window_rows(w: SequenceWindow, lo: int | None = None, hi: int | None = None) -> list[tuple[int, object]]:
    lo = w.lo if lo is None else lo
    hi = w.hi if hi is None else hi
    if not w.covers(lo, hi):
        raise IndexError(f"[{lo}, {hi}] outside window [{w.lo}, {w.hi}]")
    return [(n, w[n]) for n in range(lo, hi + 1)]


def render_csv(rows: Sequence[tuple[int, object]]) -> str:
    lines = ["n,value"]
    lines += [f"{n},{format_value(v)}" for n, v in rows]
    return "\n".join(lines) + "\n"


def render_json(rows: Sequence[tuple[int, object]]) -> str:
    return json.dumps([{"n": n, "value": format_value(v)} for n, v in rows]) + "\n"


def render_bfile(rows: Sequence[tuple[int, object]]) -> str:
    """OEIS-style b-file ``n value``; every value must be an integer."""
    lines = []
    for n, v in rows:
        f = Fraction(v) if not isinstance(v, LaurentPolynomial) else None
        if f is None or f.denominator != 1:
            raise NonIntegerValueError(f"value at n={n} is not an integer: {format_value(v)}")
        lines.append(f"{n} {f.numerator}")
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> list[tuple[int, Fraction]]:
    """Read any of the three export formats back as (n, value) pairs."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty sequence input")
    if stripped.startswith("["):
        data = json.loads(stripped)
        return [(int(item["n"]), parse_rational(str(item["value"]))) for item in data]
    rows = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "," in line:
            left, right = line.split(",", 1)
            if left.strip() == "n":
                continue  # csv header
            rows.append((int(left), parse_rational(right.strip())))
        else:
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"cannot parse sequence line: {line!r}")
            rows.append((int(parts[0]), parse_rational(parts[1])))
    return rows


def contiguous_values(rows: Sequence[tuple[int, Fraction]]) -> tuple[int, list[Fraction]]:
    """Validate that indices are contiguous; return (lo, values)."""
    if not rows:
        raise ValueError("no rows")
    rows = sorted(rows)
    lo = rows[0][0]
    for offset, (n, _) in enumerate(rows):
        if n != lo + offset:
            raise ValueError(f"sequence indices are not contiguous near n={n}")
    return lo, [v for _, v in rows]
