"""Count sequences, exact ratios, growth estimates and vanishing checks.

All counts are Python ints and all ratios are fractions.Fraction; floats
only appear in fitted slopes, never in the counts themselves.
"""

from __future__ import annotations

import decimal
import json
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

KINDS = ("ball", "sphere", "conjugacy-ball", "conjugacy-sphere")

MODE_INCREMENT = "increment"
MODE_GEOMETRIC = "geometric"


@dataclass(frozen=True)
class CountSequence:
    """Exact counts indexed by radius 0..len-1. ``kind`` says whether the
    entries are cumulative (ball-like) or per-radius (sphere-like)."""

    values: tuple[int, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.values:
            raise ValueError("need at least the radius-0 count")
        if any(v < 0 for v in self.values):
            raise ValueError("counts cannot be negative")
        if self.kind in ("ball", "conjugacy-ball"):
            if self.values[0] < 1:
                raise ValueError("a ball contains at least the identity")
            if any(b > a for b, a in zip(self.values, self.values[1:])):
                raise ValueError("ball counts must be nondecreasing")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    @property
    def max_radius(self) -> int:
        return len(self.values) - 1

    def to_spheres(self) -> "CountSequence":
        if self.kind not in ("ball", "conjugacy-ball"):
            raise ValueError(f"cannot difference a {self.kind} sequence")
        diffs = (self.values[0],) + tuple(
            a - b for b, a in zip(self.values, self.values[1:])
        )
        kind = "sphere" if self.kind == "ball" else "conjugacy-sphere"
        return CountSequence(diffs, kind)

    def to_ball(self) -> "CountSequence":
        if self.kind not in ("sphere", "conjugacy-sphere"):
            raise ValueError(f"cannot accumulate a {self.kind} sequence")
        total, sums = 0, []
        for v in self.values:
            total += v
            sums.append(total)
        kind = "ball" if self.kind == "sphere" else "conjugacy-ball"
        return CountSequence(tuple(sums), kind)


def ratio(numer: CountSequence, denom: CountSequence) -> "RatioSequence":
    """Pointwise numer[n] / denom[n] as exact fractions."""
    if len(numer) != len(denom):
        raise ValueError(f"length mismatch: {len(numer)} vs {len(denom)}")
    vals = []
    for i in range(len(numer)):
        if denom[i] == 0:
            raise ZeroDivisionError(f"denominator count is 0 at radius {i}")
        vals.append(Fraction(numer[i], denom[i]))
    return RatioSequence(tuple(vals))


@dataclass(frozen=True)
class RatioSequence:
    values: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]


def stolz_cesaro(numer: Sequence[int], denom: Sequence[int]) -> list[Fraction]:
    """(a[n+1]-a[n]) / (b[n+1]-b[n]); requires b strictly increasing."""
    n = min(len(numer), len(denom))
    if n < 2:
        raise ValueError("need at least two terms")
    out = []
    for i in range(n - 1):
        db = denom[i + 1] - denom[i]
        if db <= 0:
            raise ValueError(f"denominator sequence not strictly increasing at {i}")
        out.append(Fraction(numer[i + 1] - numer[i], db))
    return out


def convolve(left: Sequence[int], right: Sequence[int]) -> list[int]:
    """c[n] = sum of left[i] * right[n-i]; the ball counts of a direct
    product are the convolution of one factor's balls with the other's
    spheres."""
    if len(left) != len(right):
        raise ValueError(f"length mismatch: {len(left)} vs {len(right)}")
    n = len(left)
    return [sum(left[i] * right[k - i] for i in range(k + 1)) for k in range(n)]


@dataclass(frozen=True)
class WindowEstimate:
    """limsup proxy over the last ``window`` terms: the running peak plus a
    least-squares slope of those terms (slope near 0 suggests the peak is
    already representative)."""

    peak: Fraction
    slope: float
    window: int


def window_estimate(values: Sequence[Fraction], window: int = 5) -> WindowEstimate:
    if window < 2:
        raise ValueError("window must be at least 2")
    if len(values) < window:
        raise ValueError(f"need at least {window} terms, got {len(values)}")
    tail = values[-window:]
    peak = max(tail)
    xs = list(range(window))
    slope, _ = statistics.linear_regression(xs, [float(v) for v in tail])
    return WindowEstimate(peak=peak, slope=slope, window=window)


@dataclass(frozen=True)
class GrowthRateEstimate:
    """n-th roots values[n] ** (1/n) for n >= 1, with the final root also
    reported exactly when it is an exact integer root."""

    roots: tuple[float, ...]
    exact_final: Optional[int]


def growth_rate(values: Sequence[int]) -> GrowthRateEstimate:
    if len(values) < 2:
        raise ValueError("need counts up to radius 1 at least")
    roots = []
    for n in range(1, len(values)):
        if values[n] < 1:
            raise ValueError(f"count at radius {n} must be positive")
        roots.append(values[n] ** (1.0 / n))
    n = len(values) - 1
    candidate = round(roots[-1])
    exact = candidate if candidate >= 1 and candidate**n == values[n] else None
    return GrowthRateEstimate(roots=tuple(roots), exact_final=exact)


@dataclass(frozen=True)
class VanishingReport:
    """Outcome of a ratio-vanishing test.

    ``checks`` lists hypothesis names that were machine-verified, ``violated``
    the ones that failed. ``ratios`` holds the transformed comparison
    sequence whose trend is being judged.
    """

    mode: str
    checks: tuple[str, ...]
    violated: tuple[str, ...]
    ratios: tuple[Fraction, ...]
    delta: Optional[float] = None
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violated and self.trending_to_zero

    @property
    def final_ratio(self) -> Fraction:
        return self.ratios[-1]

    @property
    def trending_to_zero(self) -> bool:
        return _tends_to_zero(self.ratios)


def _tends_to_zero(values: Sequence[Fraction]) -> bool:
    """Finite-data proxy for decay: the last half never increases and ends
    strictly below both its own start and the first term overall."""
    if len(values) < 4:
        return False
    tail = values[len(values) // 2 :]
    if any(b > a for a, b in zip(tail, tail[1:])):
        return False
    return tail[-1] < tail[0] and tail[-1] < values[0]


def _fit_delta(small: Sequence[int], big: Sequence[int]) -> Optional[float]:
    """Least-squares fit of log(small[n]/big[n]) ~ n log(delta) over the
    last half of the data; None when a term is 0."""
    import math

    n = min(len(small), len(big))
    start = max(1, n // 2)
    xs, ys = [], []
    for i in range(start, n):
        if small[i] <= 0 or big[i] <= 0:
            return None
        xs.append(i)
        ys.append(math.log(small[i] / big[i]))
    if len(xs) < 2:
        return None
    slope, _ = statistics.linear_regression(xs, ys)
    return math.exp(slope)


def check_ratio_vanishes(
    numer_small: Sequence[int],
    denom_small: Sequence[int],
    numer_big: Sequence[int],
    denom_big: Sequence[int],
    mode: str = MODE_INCREMENT,
) -> VanishingReport:
    """Test whether the combined ratio collapses to 0 when the small pair
    is negligible against the big pair.

    ``increment`` forms sum_i small[i] * big_increment[n-i] on both levels,
    i.e. convolves each small sequence with the big side's increments (the
    direct-product ball construction).  ``geometric`` convolves with the big
    side's running totals instead and additionally fits a decay factor for
    denom_big/denom_small, which must come out below 1.
    """
    if mode not in (MODE_INCREMENT, MODE_GEOMETRIC):
        raise ValueError(f"unknown mode {mode!r}")
    n = min(len(numer_small), len(denom_small), len(numer_big), len(denom_big))
    if n < 4:
        raise ValueError("need at least 4 aligned terms")
    a = list(numer_small[:n])
    b = list(denom_small[:n])
    c = list(numer_big[:n])
    d = list(denom_big[:n])

    checks: list[str] = []
    violated: list[str] = []
    notes: list[str] = []

    def check(name: str, holds: bool):
        (checks if holds else violated).append(name)

    check("small numerator nondecreasing", all(x <= y for x, y in zip(a, a[1:])))
    check("small denominator nondecreasing", all(x <= y for x, y in zip(b, b[1:])))
    check("big numerator nondecreasing", all(x <= y for x, y in zip(c, c[1:])))
    check("big denominator strictly increasing", all(x < y for x, y in zip(d, d[1:])))
    check("numerators dominated by denominators", all(x <= y for x, y in zip(a, b)) and all(x <= y for x, y in zip(c, d)))
    if all(x > 0 for x in b):
        check("small ratio tends toward 0", _tends_to_zero([Fraction(a[i], b[i]) for i in range(n)]))
    else:
        violated.append("small ratio tends toward 0")

    delta: Optional[float] = None
    if mode == MODE_INCREMENT:
        c_spheres = [c[0]] + [c[i + 1] - c[i] for i in range(n - 1)]
        d_spheres = [d[0]] + [d[i + 1] - d[i] for i in range(n - 1)]
        mixed = convolve(a, c_spheres)
        full = convolve(b, d_spheres)
        notes.append("ratios convolve the pairs against the big side's increments")
    else:
        delta = _fit_delta(d, b)
        check("fitted decay factor below 1", delta is not None and delta < 1.0)
        mixed = convolve(a, c)
        full = convolve(b, d)
        notes.append("ratios convolve the pairs against the big side's running totals")
    ratios = []
    for i in range(n):
        if full[i] == 0:
            raise ZeroDivisionError(f"combined denominator count is 0 at radius {i}")
        ratios.append(Fraction(mixed[i], full[i]))

    return VanishingReport(
        mode=mode,
        checks=tuple(checks),
        violated=tuple(violated),
        ratios=tuple(ratios),
        delta=delta,
        notes=tuple(notes),
    )


def decimal_str(value: Fraction, digits: int = 12) -> str:
    """Render an exact fraction to ``digits`` places, round-half-even."""
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
        quantum = decimal.Decimal(1).scaleb(-digits)
        return format(d.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN), "f")


def _rendered(value) -> object:
    return decimal_str(value) if isinstance(value, Fraction) else value


def sequence_to_csv(values: Sequence) -> str:
    """One ``n,value`` row per entry; fractions rendered as 12-digit decimals."""
    lines = ["n,value"]
    lines.extend(f"{n},{_rendered(v)}" for n, v in enumerate(values))
    return "\n".join(lines) + "\n"


def sequence_to_json(values: Sequence) -> str:
    return json.dumps([_rendered(v) for v in values])
