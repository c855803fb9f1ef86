"""Task specifications: binning of continuous targets and class/task weighting.

A semi-supervised task discretizes one continuous target into K classes via
a `BinningScheme`. Training examples are weighted by the product of a
per-task importance and an inverse-frequency class factor, so every class
of a task carries the same total weight mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AllEmptyTask,
    DegenerateRange,
    EmptyInput,
    NonFiniteValue,
    TooFewDistinct,
)


@dataclass(frozen=True)
class BinningScheme:
    """Fixed, strictly increasing edges splitting a real range into `count` bins."""

    edges: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.edges) < 3:
            raise ValueError("need at least 3 edges (2 bins)")
        diffs = np.diff(self.edges)
        if not np.all(diffs > 0):
            raise ValueError("edges must be strictly increasing")

    @property
    def count(self) -> int:
        return len(self.edges) - 1


@dataclass(frozen=True)
class TaskSpec:
    """One semi-supervised classification task over a binned continuous target."""

    name: str
    binning: BinningScheme
    importance: float = 1.0

    def __post_init__(self) -> None:
        if self.importance < 0:
            raise ValueError(f"importance must be >= 0, got {self.importance}")

    @property
    def num_classes(self) -> int:
        return self.binning.count


@dataclass
class WeightTable:
    """Per-task, per-class example weights (importance x inverse class frequency)."""

    per_task: dict[str, list[float]] = field(default_factory=dict)

    def weight(self, task: str, class_index: int) -> float:
        return self.per_task[task][class_index]


def build_bins(values, count: int, strategy: str = "equal-width") -> BinningScheme:
    """Build bin edges spanning [min(values), max(values)].

    `equal-width` splits the range uniformly. `equal-frequency` sorts the
    values and places boundaries between slices of floor(N/count) or
    floor(N/count)+1 values, using midpoints between neighbouring values.
    """
    vals = np.asarray(values, dtype=np.float64).ravel()
    if vals.size == 0:
        raise EmptyInput("cannot build bins from an empty value list")
    if not np.all(np.isfinite(vals)):
        raise NonFiniteValue("values must be finite")
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    lo, hi = float(vals.min()), float(vals.max())
    if lo == hi:
        raise DegenerateRange(f"all values equal {lo}; no range to bin")

    if strategy == "equal-width":
        edges = np.linspace(lo, hi, count + 1)
        return BinningScheme(edges=tuple(float(e) for e in edges))
    if strategy == "equal-frequency":
        srt = np.sort(vals)
        n = srt.size
        if np.unique(srt).size < count:
            raise TooFewDistinct(
                f"equal-frequency needs >= {count} distinct values, "
                f"got {np.unique(srt).size}"
            )
        # Slice boundaries: first (n % count) slices get one extra value.
        base, extra = divmod(n, count)
        edges = [lo]
        idx = 0
        for b in range(count - 1):
            idx += base + (1 if b < extra else 0)
            left, right = srt[idx - 1], srt[idx]
            if right > left:
                edges.append(float(0.5 * (left + right)))
            else:
                # Duplicate straddles the boundary; fall back to the nearest
                # point where values change so edges stay strictly increasing.
                j = int(np.searchsorted(srt, srt[idx], side="right"))
                if j < n and srt[j] > srt[idx]:
                    edges.append(float(0.5 * (srt[idx] + srt[j])))
                else:
                    raise TooFewDistinct(
                        "duplicated values leave no room for a boundary"
                    )
        edges.append(hi)
        edges_arr = np.array(edges)
        if not np.all(np.diff(edges_arr) > 0):
            raise TooFewDistinct("ties collapse adjacent equal-frequency edges")
        return BinningScheme(edges=tuple(float(e) for e in edges))
    raise ValueError(f"unknown strategy {strategy!r}")


def assign_bin(value: float, scheme: BinningScheme) -> int:
    """Map a finite value to its bin index, clamping out-of-range values.

    Returns i with edges[i] <= value < edges[i+1]; values below the first
    edge go to bin 0 and values at or above the last edge to bin count-1.
    """
    if not math.isfinite(value):
        raise NonFiniteValue(f"cannot bin non-finite value {value}")
    edges = scheme.edges
    # side='right' puts a value equal to an interior edge in the upper bin.
    i = int(np.searchsorted(edges, value, side="right")) - 1
    return min(max(i, 0), scheme.count - 1)


def bin_occupancy(values, scheme: BinningScheme) -> list[int]:
    """Histogram of assign_bin over `values`; sums to len(values)."""
    counts = [0] * scheme.count
    for v in np.asarray(values, dtype=np.float64).ravel():
        counts[assign_bin(float(v), scheme)] += 1
    return counts


def compute_weights(
    tasks: list[TaskSpec], class_counts: dict[str, list[int]]
) -> WeightTable:
    """Per-example weights: importance x (largest class count / class count).

    The largest class gets per-example weight equal to the task importance,
    and weight * count is identical for every nonempty class of a task.
    Classes with zero examples get weight 0.
    """
    table = WeightTable()
    for spec in tasks:
        counts = class_counts[spec.name]
        if len(counts) != spec.num_classes:
            raise ValueError(
                f"task {spec.name!r}: expected {spec.num_classes} class counts, "
                f"got {len(counts)}"
            )
        if any(c < 0 for c in counts):
            raise ValueError(f"task {spec.name!r}: negative class count")
        biggest = max(counts)
        if biggest == 0:
            raise AllEmptyTask(f"task {spec.name!r} has no labeled examples")
        table.per_task[spec.name] = [
            spec.importance * (biggest / c) if c > 0 else 0.0 for c in counts
        ]
    return table
