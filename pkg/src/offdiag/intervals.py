"""Finite unions of real intervals and the two-set case classification.

Sets are stored as closures: a sorted tuple of pairwise-disjoint closed
intervals ``[lo, hi]`` (points are degenerate intervals, semi-infinite
intervals use ``math.inf`` endpoints).  An ``is_open`` flag changes
endpoint membership only; all set algebra is computed on the closures.

Membership tests are tolerance-aware and tri-state: a point within ``tol``
of an endpoint of an open set is AMBIGUOUS rather than silently decided,
because the sharp examples in this problem family attain boundaries
exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class Location(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    AMBIGUOUS = "ambiguous"


class Case(enum.Enum):
    """Mutual disposition of two separated spectral components."""

    SUBORDINATED = "SUBORDINATED"
    CASE_II = "CASE_II"
    CASE_I = "CASE_I"


@dataclass(frozen=True)
class Classification:
    case: Case
    detail: str


def _as_interval(item) -> tuple[float, float]:
    if isinstance(item, (int, float)):
        x = float(item)
        lo, hi = x, x
    else:
        if len(item) != 2:
            raise ValueError(f"interval must be a number or a [lo, hi] pair, got {item!r}")
        lo, hi = float(item[0]), float(item[1])
    if math.isnan(lo) or math.isnan(hi):
        raise ValueError("interval endpoints must not be NaN")
    if lo > hi:
        raise ValueError(f"interval has lo > hi: [{lo}, {hi}]")
    return lo, hi


class SpectralSet:
    """Union of closed real intervals, optionally flagged open.

    Construction normalizes: intervals are sorted and overlapping or
    touching intervals are merged.
    """

    __slots__ = ("intervals", "is_open")

    def __init__(self, intervals: Iterable, is_open: bool = False):
        items = sorted(_as_interval(it) for it in intervals)
        merged: list[tuple[float, float]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        object.__setattr__(self, "intervals", tuple(merged))
        object.__setattr__(self, "is_open", bool(is_open))

    def __setattr__(self, name, value):
        raise AttributeError("SpectralSet is immutable")

    @classmethod
    def from_points(cls, values: Sequence[float], is_open: bool = False) -> "SpectralSet":
        return cls([(float(v), float(v)) for v in values], is_open=is_open)

    @classmethod
    def empty(cls) -> "SpectralSet":
        return cls([])

    # -- basic queries ---------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def inf(self) -> float:
        self._require_nonempty()
        return self.intervals[0][0]

    @property
    def sup(self) -> float:
        self._require_nonempty()
        return max(hi for _, hi in self.intervals)

    def _require_nonempty(self):
        if self.is_empty:
            raise ValueError("operation requires a nonempty set")

    def contains(self, x: float) -> bool:
        """Exact membership, honoring the open flag."""
        for lo, hi in self.intervals:
            if self.is_open:
                if lo < x < hi:
                    return True
            else:
                if lo <= x <= hi:
                    return True
        return False

    def distance_to_point(self, x: float) -> float:
        """Distance from ``x`` to the closure."""
        self._require_nonempty()
        return min(max(lo - x, x - hi, 0.0) for lo, hi in self.intervals)

    def boundary_distance(self, x: float) -> float:
        """Distance from ``x`` to the nearest finite endpoint (inf if none)."""
        best = math.inf
        for lo, hi in self.intervals:
            for e in (lo, hi):
                if math.isfinite(e):
                    best = min(best, abs(x - e))
        return best

    def locate(self, x: float, tol: float) -> Location:
        """Tolerance-aware membership.

        Closed sets never return AMBIGUOUS: a point within ``tol`` of the
        set counts as inside.  Open sets return AMBIGUOUS within ``tol``
        of an endpoint.
        """
        if self.is_empty:
            return Location.OUTSIDE
        if self.is_open:
            if self.boundary_distance(x) <= tol:
                return Location.AMBIGUOUS
            return Location.INSIDE if self.contains(x) else Location.OUTSIDE
        return Location.INSIDE if self.distance_to_point(x) <= tol else Location.OUTSIDE

    def near_boundary(self, x: float, tol: float) -> bool:
        return self.boundary_distance(x) <= tol

    # -- set arithmetic --------------------------------------------------

    def distance(self, other: "SpectralSet") -> float:
        """inf over pairs of pointwise distances between the closures."""
        self._require_nonempty()
        other._require_nonempty()
        best = math.inf
        for lo1, hi1 in self.intervals:
            for lo2, hi2 in other.intervals:
                best = min(best, max(lo2 - hi1, lo1 - hi2, 0.0))
        return best

    def intersects(self, other: "SpectralSet") -> bool:
        """Whether the closures intersect."""
        if self.is_empty or other.is_empty:
            return False
        return self.distance(other) == 0.0

    def closed_neighborhood(self, delta: float) -> "SpectralSet":
        if delta < 0:
            raise ValueError("neighborhood radius must be nonnegative")
        self._require_nonempty()
        return SpectralSet([(lo - delta, hi + delta) for lo, hi in self.intervals])

    def open_neighborhood(self, delta: float) -> "SpectralSet":
        if delta <= 0:
            raise ValueError("open neighborhood radius must be positive")
        self._require_nonempty()
        return SpectralSet(
            [(lo - delta, hi + delta) for lo, hi in self.intervals], is_open=True
        )

    def convex_hull(self) -> "SpectralSet":
        self._require_nonempty()
        return SpectralSet([(self.inf, self.sup)], is_open=self.is_open)

    def union(self, other: "SpectralSet") -> "SpectralSet":
        if self.is_open != other.is_open:
            raise ValueError("cannot union sets with different open/closed flags")
        return SpectralSet(list(self.intervals) + list(other.intervals), is_open=self.is_open)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectralSet):
            return NotImplemented
        return self.intervals == other.intervals and self.is_open == other.is_open

    def __hash__(self) -> int:
        return hash((self.intervals, self.is_open))

    def __repr__(self) -> str:
        left, right = ("(", ")") if self.is_open else ("[", "]")
        if self.is_empty:
            return "SpectralSet(empty)"
        parts = []
        for lo, hi in self.intervals:
            parts.append(f"{{{lo:g}}}" if lo == hi else f"{left}{lo:g}, {hi:g}{right}")
        return " U ".join(parts)


def from_eigenvalues(values: Sequence[float], gap_threshold: float | None = None) -> SpectralSet:
    """Cluster sorted eigenvalues into a SpectralSet.

    Consecutive values closer than ``gap_threshold`` merge into one
    interval.  The default threshold is 1e-6 times the spectral diameter,
    far above eigensolver noise and far below any gap of interest here.
    """
    vals = [float(v) for v in values]
    if not vals:
        return SpectralSet.empty()
    if sorted(vals) != vals:
        raise ValueError("eigenvalues must be sorted ascending")
    if gap_threshold is None:
        gap_threshold = 1e-6 * (vals[-1] - vals[0])
    elif gap_threshold <= 0:
        raise ValueError("gap_threshold must be positive")
    clusters: list[tuple[float, float]] = []
    for v in vals:
        if clusters and v - clusters[-1][1] < gap_threshold:
            clusters[-1] = (clusters[-1][0], v)
        else:
            clusters.append((v, v))
    return SpectralSet(clusters)


def classify_case(sigma: SpectralSet, Sigma: SpectralSet) -> Classification:
    """Classify the mutual disposition of two disjoint spectral components.

    Priority is SUBORDINATED over CASE_II over CASE_I: subordination gives
    the strongest conclusions, and it implies the hull-separation
    predicate of CASE_II.
    """
    d = sigma.distance(Sigma)
    if d <= 0.0:
        raise ValueError("components must be separated: distance(sigma, Sigma) = 0")
    if sigma.sup < Sigma.inf:
        return Classification(Case.SUBORDINATED, "sup(sigma) < inf(Sigma)")
    if Sigma.sup < sigma.inf:
        return Classification(Case.SUBORDINATED, "sup(Sigma) < inf(sigma)")
    if not sigma.convex_hull().intersects(Sigma):
        return Classification(Case.CASE_II, "hull(sigma) disjoint from Sigma")
    if not Sigma.convex_hull().intersects(sigma):
        return Classification(Case.CASE_II, "hull(Sigma) disjoint from sigma")
    return Classification(Case.CASE_I, "hulls interleave")
