"""Quantile-reshuffling transform for integer sequences.

The transform rebins a dataset by its sample quantiles, sorts the bins
by (width ascending, occupancy descending), then shifts each bin onto an
alternating left/right position around zero. Densely populated narrow
bins land closest to zero, so frequently occurring values end up with
small absolute magnitudes while the map stays exactly invertible.

Datasets are plain sequences of Python ints constrained to signed
64-bit range; all internal arithmetic is exact, and results that would
leave signed 64-bit range raise ``Overflow`` instead of wrapping.

The encode side emits ``ShuffleMetadata`` (the bins' left boundaries in
sorted order plus the exclusive global upper bound), which is all the
decode side needs to replay the alternation and undo every shift.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import CorruptData, InvalidInput, Overflow

I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class BinLayout:
    """Half-open integer bins [boundaries[k], boundaries[k+1]) over a dataset.

    ``sort_index`` is the two-level sort permutation: bin ``sort_index[0]``
    is processed first during reshuffling. Indices are 0-based.
    """

    boundaries: tuple[int, ...]
    widths: tuple[int, ...]
    counts: tuple[int, ...]
    sort_index: tuple[int, ...]

    @property
    def bin_count(self) -> int:
        return len(self.widths)


@dataclass(frozen=True)
class ShuffleMetadata:
    """Decoder-facing bin description: left bounds in sort order + upper bound."""

    shuffled_left_bounds: tuple[int, ...]
    global_upper_bound: int


def _validate_q(q: int) -> None:
    if q < 1:
        raise InvalidInput(f"quantile count must be >= 1, got {q}")


def _validate_sorted(s: Sequence[int]) -> None:
    if not s:
        raise InvalidInput("dataset must contain at least one value")
    if s[0] < I64_MIN or s[-1] > I64_MAX:
        raise InvalidInput("dataset values must fit in signed 64-bit range")


def compute_quantiles(data: Sequence[int], q: int) -> list[int]:
    """q-1 threshold values taken from the ascending sort of ``data``.

    Threshold k (1-based, k = 1..q-1) is the sorted element at 1-based
    index floor(N*k/q), clamped into [1, N]. Duplicates are permitted;
    they are resolved later by ``build_bins``.
    """
    _validate_q(q)
    s = sorted(data)
    _validate_sorted(s)
    return _quantiles_from_sorted(s, q)


def _quantiles_from_sorted(s: Sequence[int], q: int) -> list[int]:
    n = len(s)
    out = []
    for k in range(1, q):
        idx = (n * k) // q
        if idx < 1:
            idx = 1
        elif idx > n:
            idx = n
        out.append(s[idx - 1])
    return out


def build_bins(data: Sequence[int], thresholds: Sequence[int]) -> BinLayout:
    """Construct deduplicated bins from quantile thresholds.

    Boundaries start at min(data); each threshold candidate c is adjusted
    to max(c, previous_boundary + 1) so boundaries stay strictly
    increasing, and dropped if the adjusted value would reach the final
    boundary max(data) + 1. The result always covers the full data range.
    """
    s = sorted(data)
    _validate_sorted(s)
    return _bins_from_sorted(s, thresholds)


def _bins_from_sorted(s: Sequence[int], thresholds: Sequence[int]) -> BinLayout:
    hi = s[-1] + 1
    boundaries = [s[0]]
    for t in thresholds:
        c = max(t, boundaries[-1] + 1)
        if c >= hi:
            continue
        boundaries.append(c)
    boundaries.append(hi)
    nbins = len(boundaries) - 1
    widths = tuple(boundaries[i + 1] - boundaries[i] for i in range(nbins))
    cuts = [bisect_left(s, b) for b in boundaries]
    counts = tuple(cuts[i + 1] - cuts[i] for i in range(nbins))
    return BinLayout(tuple(boundaries), widths, counts, _two_level_order(widths, counts))


def _two_level_order(widths: Sequence[int], counts: Sequence[int]) -> tuple[int, ...]:
    # Width ascending, then count descending; original index breaks ties
    # deterministically.
    return tuple(sorted(range(len(widths)), key=lambda i: (widths[i], -counts[i], i)))


def sort_bins(layout: BinLayout) -> BinLayout:
    """Recompute the two-level sort permutation for an existing layout."""
    return replace(layout, sort_index=_two_level_order(layout.widths, layout.counts))


def _alternation_positions(layout: BinLayout) -> tuple[list[int], int, int]:
    """Target start position per bin (indexed by original bin), plus extents.

    Bins are visited in sort order; the first, third, ... sorted bins are
    stacked leftward from zero and the second, fourth, ... rightward, so
    the target intervals tile [left, right) with no gaps.
    """
    positions = [0] * layout.bin_count
    left = right = 0
    for j, i in enumerate(layout.sort_index):
        w = layout.widths[i]
        if j % 2 == 0:
            left -= w
            positions[i] = left
        else:
            positions[i] = right
            right += w
    return positions, left, right


def target_intervals(layout: BinLayout) -> tuple[tuple[int, int], ...]:
    """(start, stop) target interval of each bin, listed in sort order."""
    positions, _, _ = _alternation_positions(layout)
    return tuple(
        (positions[i], positions[i] + layout.widths[i]) for i in layout.sort_index
    )


def reshuffle(data: Sequence[int], layout: BinLayout) -> list[int]:
    """Shift every value onto its bin's target interval; order-preserving per bin."""
    boundaries = layout.boundaries
    lo, hi = min(data), max(data)
    if lo < boundaries[0] or hi >= boundaries[-1]:
        raise InvalidInput("layout does not cover the dataset range")
    positions, left, right = _alternation_positions(layout)
    if left < I64_MIN or right - 1 > I64_MAX:
        raise Overflow("transformed values would leave signed 64-bit range")
    shifts = [positions[i] - boundaries[i] for i in range(layout.bin_count)]
    if layout.bin_count == 1:
        shift = shifts[0]
        return [d + shift for d in data]
    return [d + shifts[bisect_right(boundaries, d) - 1] for d in data]


def encode(data: Sequence[int], q: int) -> tuple[ShuffleMetadata, list[int]]:
    """Full forward transform: quantiles, bins, two-level sort, reshuffle.

    Returns the decoder metadata and the transformed values. Sequence
    positions are preserved: output element j corresponds to input
    element j.
    """
    _validate_q(q)
    s = sorted(data)
    _validate_sorted(s)
    layout = _bins_from_sorted(s, _quantiles_from_sorted(s, q))
    transformed = reshuffle(data, layout)
    metadata = ShuffleMetadata(
        tuple(layout.boundaries[i] for i in layout.sort_index),
        layout.boundaries[-1],
    )
    return metadata, transformed


def decode(transformed: Sequence[int], metadata: ShuffleMetadata) -> list[int]:
    """Exact inverse of ``encode``.

    Original bin order is recovered by sorting the shuffled left bounds;
    replaying the alternation over the bins in shuffled order yields each
    bin's target interval, and values map back bin by bin.
    """
    if not transformed:
        raise InvalidInput("transformed dataset must contain at least one value")
    bounds = metadata.shuffled_left_bounds
    upper = metadata.global_upper_bound
    if not bounds:
        raise CorruptData("metadata lists no bins")
    if len(set(bounds)) != len(bounds):
        raise CorruptData("duplicate bin bounds in metadata")
    if upper <= max(bounds):
        raise CorruptData("global upper bound does not exceed every bin bound")

    original = sorted(bounds)
    boundaries = original + [upper]
    index_of = {bound: i for i, bound in enumerate(original)}

    intervals = []  # (target start, width, original left bound)
    left = right = 0
    for j, bstar in enumerate(bounds):
        i = index_of[bstar]
        w = boundaries[i + 1] - boundaries[i]
        if j % 2 == 0:
            left -= w
            pos = left
        else:
            pos = right
            right += w
        intervals.append((pos, w, bstar))
    intervals.sort()
    starts = [start for start, _, _ in intervals]

    out = []
    for v in transformed:
        idx = bisect_right(starts, v) - 1
        if idx < 0:
            raise CorruptData(f"value {v} outside every bin target interval")
        start, w, orig = intervals[idx]
        if v >= start + w:
            raise CorruptData(f"value {v} outside every bin target interval")
        out.append(v - start + orig)
    return out
