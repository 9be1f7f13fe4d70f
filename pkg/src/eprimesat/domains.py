"""Finite (and half-open) integer domains as sorted disjoint ranges.

Open range ends are representable (for `given` declarations like int(1..));
decision variable domains must be finite, which callers enforce.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

# Sentinels strictly outside the checked 64-bit value range.
NEG_INF = -(1 << 70)
POS_INF = 1 << 70

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def _norm(ranges):
    """Sort, drop empty, and merge overlapping or adjacent ranges."""
    rs = sorted((lo, hi) for lo, hi in ranges if lo <= hi)
    out = []
    for lo, hi in rs:
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True)
class IntDomain:
    """Union of closed integer ranges; ends may be NEG_INF/POS_INF."""

    ranges: tuple  # tuple[(lo, hi), ...] sorted, disjoint, non-adjacent

    @staticmethod
    def of(*ranges) -> "IntDomain":
        return IntDomain(_norm(ranges))

    @staticmethod
    def values_of(vals) -> "IntDomain":
        return IntDomain(_norm((v, v) for v in vals))

    @staticmethod
    def empty() -> "IntDomain":
        return IntDomain(())

    def is_empty(self) -> bool:
        return not self.ranges

    def is_finite(self) -> bool:
        return all(lo > NEG_INF and hi < POS_INF for lo, hi in self.ranges)

    def min(self) -> int:
        return self.ranges[0][0]

    def max(self) -> int:
        return self.ranges[-1][1]

    def size(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.ranges)

    def contains(self, v: int) -> bool:
        for lo, hi in self.ranges:
            if lo <= v <= hi:
                return True
            if v < lo:
                return False
        return False

    def values(self):
        """Ascending iterator over members; domain must be finite."""
        return itertools.chain.from_iterable(
            range(lo, hi + 1) for lo, hi in self.ranges
        )

    def union(self, other: "IntDomain") -> "IntDomain":
        return IntDomain(_norm(self.ranges + other.ranges))

    def intersect(self, other: "IntDomain") -> "IntDomain":
        out = []
        for a_lo, a_hi in self.ranges:
            for b_lo, b_hi in other.ranges:
                lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
                if lo <= hi:
                    out.append((lo, hi))
        return IntDomain(_norm(out))

    def minus(self, other: "IntDomain") -> "IntDomain":
        out = []
        for lo, hi in self.ranges:
            cuts = [(lo, hi)]
            for b_lo, b_hi in other.ranges:
                nxt = []
                for c_lo, c_hi in cuts:
                    if b_hi < c_lo or b_lo > c_hi:
                        nxt.append((c_lo, c_hi))
                        continue
                    if c_lo < b_lo:
                        nxt.append((c_lo, b_lo - 1))
                    if b_hi < c_hi:
                        nxt.append((b_hi + 1, c_hi))
                cuts = nxt
            out.extend(cuts)
        return IntDomain(_norm(out))

    def restrict_bounds(self, lo, hi) -> "IntDomain":
        """Clip to [lo, hi]; either end may be None for unbounded."""
        if lo is None:
            lo = NEG_INF
        if hi is None:
            hi = POS_INF
        return self.intersect(IntDomain.of((lo, hi)))

    def remove_value(self, v: int) -> "IntDomain":
        return self.minus(IntDomain.of((v, v)))

    def floor_member(self, v: int):
        """Largest member <= v, or None."""
        best = None
        for lo, hi in self.ranges:
            if lo > v:
                break
            best = min(hi, v)
        return best

    def __str__(self):
        if not self.ranges:
            return "int()"
        parts = []
        for lo, hi in self.ranges:
            if lo == NEG_INF and hi == POS_INF:
                return "int"
            if lo == NEG_INF:
                parts.append(f"..{hi}")
            elif hi == POS_INF:
                parts.append(f"{lo}..")
            elif lo == hi:
                parts.append(str(lo))
            else:
                parts.append(f"{lo}..{hi}")
        return f"int({','.join(parts)})"


BOOL_DOMAIN = IntDomain.of((0, 1))
