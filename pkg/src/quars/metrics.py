"""Distribution measurements: magnitude, entropy, histograms, coded sizes.

Scalar statistics are computed from exact integer accumulators and
rendered with six fractional digits so output is platform-independent.
CSV output uses one header row, comma separators and LF line endings.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import codecs
from .codecs import CodecId, CodecKind
from .errors import InvalidInput

HistogramRow = tuple[int, int, int]  # (bin_lower, bin_upper, count)


@dataclass(frozen=True)
class MetricsReport:
    n: int
    min_value: int
    max_value: int
    mean_abs: Fraction
    entropy_bits: float
    histogram: tuple[HistogramRow, ...]
    coded_bits: dict[str, int]
    rice_k: int


def _require_nonempty(data: Sequence[int]) -> None:
    if not data:
        raise InvalidInput("metrics require a nonempty dataset")


def mean_abs(data: Sequence[int]) -> Fraction:
    """Average absolute value as an exact rational."""
    _require_nonempty(data)
    return Fraction(sum(abs(d) for d in data), len(data))


def entropy_order0(data: Sequence[int]) -> float:
    """Shannon entropy of the empirical value distribution, bits per symbol."""
    _require_nonempty(data)
    n = len(data)
    counts = Counter(data)
    # Summing over the sorted count multiset keeps the float result
    # identical for any dataset with the same frequency profile.
    return -sum((c / n) * math.log2(c / n) for c in sorted(counts.values()))


def histogram(data: Sequence[int], bin_width: int) -> list[HistogramRow]:
    """Fixed-width bins aligned to multiples of ``bin_width`` covering the data."""
    _require_nonempty(data)
    if bin_width < 1:
        raise InvalidInput(f"bin width must be >= 1, got {bin_width}")
    lo, hi = min(data), max(data)
    base = (lo // bin_width) * bin_width
    nbins = (hi - base) // bin_width + 1
    counts = [0] * nbins
    for d in data:
        counts[(d - base) // bin_width] += 1
    return [
        (base + i * bin_width, base + (i + 1) * bin_width, counts[i])
        for i in range(nbins)
    ]


def coded_size(data: Sequence[int], codec: CodecId) -> int:
    """Exact payload bit count for ``data`` after zigzag + codec, no framing."""
    _require_nonempty(data)
    u_values = [codecs.zigzag_map(v) for v in data]
    return codecs.sequence_cost_bits(u_values, codec)


def central_interval_width(data: Sequence[int], mass: float = 0.9) -> int:
    """Width of the smallest contiguous value interval holding ``mass`` of the data.

    A concentration proxy: a distribution pulled together around one mode
    yields a smaller width than the same values spread over several modes.
    """
    _require_nonempty(data)
    if not 0.0 < mass <= 1.0:
        raise InvalidInput("mass must be in (0, 1]")
    s = sorted(data)
    need = max(1, math.ceil(mass * len(s)))
    return min(s[i + need - 1] - s[i] + 1 for i in range(len(s) - need + 1))


def compute_report(data: Sequence[int], bin_width: int | None = None) -> MetricsReport:
    _require_nonempty(data)
    lo, hi = min(data), max(data)
    if bin_width is None:
        bin_width = max(1, -((lo - hi - 1) // 64))  # ceil(range / 64)
    u_values = [codecs.zigzag_map(v) for v in data]
    k = codecs.rice_pick_k(u_values)
    coded = {
        "raw64": 64 * len(data),
        "varint": codecs.sequence_cost_bits(u_values, codecs.VARINT),
        "rice": codecs.sequence_cost_bits(u_values, codecs.rice(k)),
        "gamma": codecs.sequence_cost_bits(u_values, codecs.ELIAS_GAMMA),
    }
    return MetricsReport(
        n=len(data),
        min_value=lo,
        max_value=hi,
        mean_abs=mean_abs(data),
        entropy_bits=entropy_order0(data),
        histogram=tuple(histogram(data, bin_width)),
        coded_bits=coded,
        rice_k=k,
    )


def format_fixed6(value: Fraction | float) -> str:
    """Render with exactly six fractional digits (half-even at the last digit)."""
    if isinstance(value, Fraction):
        scaled = round(value * 10**6)
        sign = "-" if scaled < 0 else ""
        scaled = abs(scaled)
        return f"{sign}{scaled // 10**6}.{scaled % 10**6:06d}"
    return f"{value:.6f}"


def format_report(report: MetricsReport, label: str = "") -> str:
    prefix = f"{label}: " if label else ""
    coded = " ".join(
        f"{name}={bits}" for name, bits in sorted(report.coded_bits.items())
    )
    return (
        f"{prefix}n={report.n} min={report.min_value} max={report.max_value} "
        f"mean_abs={format_fixed6(report.mean_abs)} "
        f"entropy={format_fixed6(report.entropy_bits)}\n"
        f"{prefix}coded_bits [rice k={report.rice_k}]: {coded}"
    )


def histogram_csv(sections: Iterable[tuple[str, Sequence[HistogramRow]]]) -> str:
    """CSV with a stage column; one section per (stage, rows) pair."""
    lines = ["stage,bin_lower,bin_upper,count"]
    for stage, rows in sections:
        lines.extend(f"{stage},{lo},{hi},{count}" for lo, hi, count in rows)
    return "\n".join(lines) + "\n"
