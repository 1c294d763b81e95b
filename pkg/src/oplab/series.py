"""Generating-series analysis: growth estimation, rational fitting,
polynomial-coefficient recurrence guessing, and zero-run structure.

Every fit runs over exact rationals; the only floating point lives in the
explicitly labelled growth estimators (logarithms of exact partial sums).
Absence results are "no candidate at these bounds", never a proof: a
candidate is returned only when it also verifies on a holdout suffix that
no fitting step ever saw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .dims import DimSeries, as_dim_values
from .linalg import clear_denominators, kernel_is_trivial, nullspace, scale_rows_to_int, solve

DEFAULT_HOLDOUT = 20
DEFAULT_TAIL_FRACTION = Fraction(1, 3)


class SeriesError(ValueError):
    """Base class for series-analysis errors."""


class DegenerateSeriesError(SeriesError):
    """The series is identically zero beyond index 1; growth is undefined."""


class WindowTooShortError(SeriesError):
    """Not enough coefficients for the requested fit bounds plus holdout."""


@dataclass(frozen=True)
class SeriesWindow:
    """Exact rational coefficients c_0..c_N of a truncated power series."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients",
                           tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def from_values(cls, values: Iterable) -> "SeriesWindow":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def from_dims(cls, dims: DimSeries | Sequence[int]) -> "SeriesWindow":
        return cls.from_values(as_dim_values(dims))

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    def __iter__(self):
        return iter(self.coefficients)


def series_shift(s: SeriesWindow, k: int = 1) -> SeriesWindow:
    """Multiply by z**k, keeping the truncation window."""
    if k < 0:
        raise SeriesError("shift must be nonnegative")
    coeffs = (Fraction(0),) * k + s.coefficients
    return SeriesWindow(coeffs[:len(s.coefficients)])


def series_derivative(s: SeriesWindow) -> SeriesWindow:
    """Formal derivative; the window shrinks by one."""
    return SeriesWindow(tuple(n * c for n, c in enumerate(s.coefficients) if n >= 1))


def series_mul(a: SeriesWindow, b: SeriesWindow, truncation: Optional[int] = None) -> SeriesWindow:
    """Cauchy product truncated to the shorter window (or to ``truncation``)."""
    n = min(len(a), len(b)) - 1 if truncation is None else truncation
    out = [Fraction(0)] * (n + 1)
    for i, ca in enumerate(a.coefficients[:n + 1]):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coefficients[:n + 1 - i]):
            if cb != 0:
                out[i + j] += ca * cb
    return SeriesWindow(tuple(out))


# ---------------------------------------------------------------------------
# growth estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GkReport:
    """Growth estimates from exact partial sums (floating point, labelled).

    ``pointwise`` is log_N(S(N)); ``slope`` the least-squares slope of
    log S against log n on the tail window; ``pointwise_max`` the largest
    pointwise value on the window (closer to a limsup on gappy series);
    ``exp_flag`` marks geometric growth, where both estimates diverge.
    """

    pointwise: float
    slope: float
    pointwise_max: float
    exp_flag: bool
    window: tuple[int, int]
    n_max: int


def log_of_int(x: int) -> float:
    """Natural log of a positive integer, safe beyond float range."""
    bl = x.bit_length()
    if bl <= 900:
        return math.log(x)
    top = x >> (bl - 53)
    return math.log(top) + (bl - 53) * math.log(2)


def gk_estimate(dims: DimSeries | Sequence[int],
                tail_fraction: Fraction = DEFAULT_TAIL_FRACTION) -> GkReport:
    """Estimate the growth exponent limsup log_n(sum of dims up to n)."""
    values = as_dim_values(dims)
    if len(values) < 8:
        raise SeriesError("need at least 8 dimension values to estimate growth")
    if all(v == 0 for v in values[2:]):
        raise DegenerateSeriesError("series is zero beyond index 1")
    sums = []
    acc = 0
    for v in values:
        acc += v
        sums.append(acc)
    n_max = len(values) - 1
    start = max(2, n_max - int(n_max * float(tail_fraction)))
    window = [(n, sums[n]) for n in range(start, n_max + 1) if sums[n] > 0]
    if len(window) < 2:
        raise DegenerateSeriesError("partial sums vanish on the tail window")
    logs = [(math.log(n), log_of_int(s)) for n, s in window]
    k = len(logs)
    sx = sum(x for x, _ in logs)
    sy = sum(y for _, y in logs)
    sxx = sum(x * x for x, _ in logs)
    sxy = sum(x * y for x, y in logs)
    den = k * sxx - sx * sx
    slope = (k * sxy - sx * sy) / den if den else 0.0
    pointwise = log_of_int(sums[n_max]) / math.log(n_max)
    pointwise_max = max(y / x for x, y in logs)
    return GkReport(pointwise, slope, pointwise_max, _geometric(sums),
                    (start, n_max), n_max)


def _geometric(sums: list[int]) -> bool:
    """Do the doubling ratios S(2n)/S(n) keep growing?  (geometric test)"""
    n_max = len(sums) - 1
    anchors = []
    n = max(2, n_max // 16)
    while 2 * n <= n_max:
        anchors.append(n)
        n *= 2
    if len(anchors) < 2:
        return False
    exps = []
    for n in anchors:
        lo, hi = sums[n], sums[2 * n]
        if lo == 0:
            return False
        exps.append((log_of_int(hi) - log_of_int(lo)) / math.log(2))
    increasing = all(b > a for a, b in zip(exps, exps[1:]))
    return increasing and exps[-1] - exps[0] > 2.0


# ---------------------------------------------------------------------------
# rational fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalFit:
    """num(z)/den(z) matching every coefficient in the window, holdout included.

    Polynomials are coefficient tuples, low degree first, den normalized to
    den[0] == 1.
    """

    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]
    holdout_verified: bool


def fit_rational(s: SeriesWindow, max_den_degree: Optional[int] = None,
                 max_num_degree: Optional[int] = None,
                 holdout: int = DEFAULT_HOLDOUT) -> Optional[RationalFit]:
    """Minimal rational function whose expansion reproduces the window.

    Scans denominator degrees upward (then numerator degrees), solving the
    constant-coefficient recurrence exactly, and accepts a candidate only
    if the product den * series has zero coefficients over the whole window
    including the holdout suffix.  Returns None when nothing fits.
    """
    coeffs = s.coefficients
    n_max = len(coeffs) - 1
    usable = n_max - holdout
    if max_den_degree is None:
        max_den_degree = max(0, min(8, (usable - 4) // 2)) if usable >= 4 else 0
    if n_max < 2 * max_den_degree + 4:
        raise WindowTooShortError(
            f"need N >= {2 * max_den_degree + 4} for denominator degree {max_den_degree}")
    if max_num_degree is None:
        max_num_degree = max_den_degree + 3
    for d in range(max_den_degree + 1):
        for nu in range(max_num_degree + 1):
            if nu + 1 > usable:
                break
            den = _solve_denominator(coeffs, d, nu, usable)
            if den is None:
                continue
            conv = _poly_series_product(den, coeffs)
            if all(conv[n] == 0 for n in range(nu + 1, n_max + 1)):
                num = tuple(conv[:nu + 1])
                return RationalFit(num, tuple(den), True)
    return None


def _solve_denominator(coeffs, d: int, nu: int, usable: int) -> Optional[list[Fraction]]:
    """Find den = 1 + b1 z + ... + bd z^d with (den*S)[n] = 0 for nu < n <= usable."""
    if d == 0:
        return [Fraction(1)] if all(coeffs[n] == 0 for n in range(nu + 1, usable + 1)) else None
    rows = []
    rhs = []
    for n in range(nu + 1, usable + 1):
        rows.append([coeffs[n - j] if n - j >= 0 else Fraction(0) for j in range(1, d + 1)])
        rhs.append(-coeffs[n])
    if len(rows) < d:
        return None
    sol = solve(rows, rhs)
    if sol is None:
        return None
    return [Fraction(1)] + sol


def _poly_series_product(poly: Sequence[Fraction], coeffs: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * len(coeffs)
    for j, pj in enumerate(poly):
        if pj == 0:
            continue
        for n in range(j, len(coeffs)):
            out[n] += pj * coeffs[n - j]
    return out


def expand_rational(fit: RationalFit, truncation: int) -> SeriesWindow:
    """Power-series expansion of num/den up to the given truncation."""
    num, den = fit.numerator, fit.denominator
    if not den or den[0] == 0:
        raise SeriesError("denominator must have nonzero constant term")
    out = [Fraction(0)] * (truncation + 1)
    for n in range(truncation + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out[n] = acc / den[0]
    return SeriesWindow(tuple(out))


# ---------------------------------------------------------------------------
# holonomic guessing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceCandidate:
    """sum_i p_i(n) c_{n-i} = 0 on the fit window and the holdout suffix.

    ``polynomials[i]`` lists the integer coefficients of p_i, low degree
    first.  Absence of a candidate at given bounds is not a proof of
    non-holonomicity.
    """

    order: int
    degree: int
    polynomials: tuple[tuple[int, ...], ...]
    fit_window: tuple[int, int]
    holdout_verified: bool

    def residual(self, coeffs: Sequence[Fraction], n: int) -> Fraction:
        acc = Fraction(0)
        for i, poly in enumerate(self.polynomials):
            pn = sum(Fraction(c) * n ** k for k, c in enumerate(poly))
            acc += pn * Fraction(coeffs[n - i])
        return acc

    def annihilates(self, coeffs: Sequence[Fraction], start: int, stop: int) -> bool:
        return all(self.residual(coeffs, n) == 0 for n in range(start, stop + 1))


def guess_holonomic(s: SeriesWindow, max_order: int, max_degree: int,
                    holdout: int = DEFAULT_HOLDOUT,
                    min_shift: int = 0) -> Optional[RecurrenceCandidate]:
    """Search for a polynomial-coefficient linear recurrence, smallest order
    first, then smallest degree.

    The kernel is solved exactly; full column rank modulo fixed large primes
    certifies emptiness without rational arithmetic.  A candidate must also
    annihilate the final ``holdout`` coefficients, which no fit ever used.
    """
    coeffs = s.coefficients
    n_max = len(coeffs) - 1
    needed = (max_order + 1) * (max_degree + 1) + max_order + holdout
    if n_max < needed:
        raise WindowTooShortError(
            f"need N >= {needed} for bounds (order {max_order}, degree {max_degree}, "
            f"holdout {holdout}); got N = {n_max}")
    usable = n_max - holdout
    for order in range(1, max_order + 1):
        for degree in range(max_degree + 1):
            n0 = order + min_shift
            rows = []
            for n in range(n0, usable + 1):
                row = []
                for i in range(order + 1):
                    c = coeffs[n - i]
                    npow = Fraction(1)
                    for _ in range(degree + 1):
                        row.append(c * npow)
                        npow *= n
                rows.append(row)
            if not rows or len(rows) < len(rows[0]):
                continue
            int_rows = scale_rows_to_int(rows)
            if kernel_is_trivial(int_rows):
                continue
            for vec in nullspace(int_rows):
                ints = clear_denominators(vec)
                polys = tuple(
                    tuple(ints[i * (degree + 1):(i + 1) * (degree + 1)])
                    for i in range(order + 1))
                cand = RecurrenceCandidate(order, degree, polys, (n0, usable), False)
                if cand.annihilates(coeffs, usable + 1, n_max):
                    return RecurrenceCandidate(order, degree, polys, (n0, usable), True)
    return None


# ---------------------------------------------------------------------------
# zero runs and the exponential transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroRunReport:
    """Maximal zero intervals of a coefficient stream (heuristic evidence).

    ``growing`` is True when the last three complete runs (runs followed by
    a nonzero inside the window) have strictly increasing lengths.  Finite
    windows cannot certify an infinite limsup of run lengths.
    """

    runs: tuple[tuple[int, int], ...]
    max_run: int
    growing: bool


def zero_run_report(coeffs: Iterable) -> ZeroRunReport:
    """Scan any coefficient iterable for maximal runs of zeros."""
    runs: list[tuple[int, int]] = []
    run_start: Optional[int] = None
    complete_flags: list[bool] = []
    last = -1
    for i, c in enumerate(coeffs):
        last = i
        if c == 0:
            if run_start is None:
                run_start = i
        else:
            if run_start is not None:
                runs.append((run_start, i - 1))
                complete_flags.append(True)
                run_start = None
    if run_start is not None:
        runs.append((run_start, last))
        complete_flags.append(False)
    max_run = max((j - i + 1 for i, j in runs), default=0)
    complete = [r for r, ok in zip(runs, complete_flags) if ok]
    growing = False
    if len(complete) >= 3:
        lens = [j - i + 1 for i, j in complete[-3:]]
        growing = lens[0] < lens[1] < lens[2]
    return ZeroRunReport(tuple(runs), max_run, growing)


def exponential_transform(s: SeriesWindow) -> SeriesWindow:
    """c_n -> c_n / n! as exact rationals."""
    out = []
    fact = 1
    for n, c in enumerate(s.coefficients):
        if n:
            fact *= n
        out.append(Fraction(c, 1) / fact)
    return SeriesWindow(tuple(out))
