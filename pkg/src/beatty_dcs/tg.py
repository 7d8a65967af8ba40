"""TG-sequences: the sorted residues {a + i*d mod p : i < q}, gcd(d, p) = 1.

The cyclic gaps between consecutive points take at most three sizes, and when
there are three the largest is the sum of the other two.  A gap is "small"
when it has the minimum size c and "larger" otherwise; k counts the larger
gaps and G is the maximum size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class TgSequence:
    p: int
    a: int
    d: int
    q: int
    points: np.ndarray

    def __len__(self):
        return self.q


def build_tg(a: int, d: int, q: int, p: int) -> TgSequence:
    if p < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(p, d) != 1:
        raise ValueError(f"gcd(p, d) = gcd({p}, {d}) != 1")
    if not 1 <= q < p:
        raise ValueError(f"need 1 <= q < p, got q={q}, p={p}")
    a, d = a % p, d % p
    idx = np.arange(q, dtype=np.int64)
    points = np.sort((a + idx * d) % p)
    points.setflags(write=False)
    return TgSequence(p, a, d, q, points)


@dataclass(frozen=True)
class GapProfile:
    gaps: np.ndarray  # gaps[i] = size of (points[i], points[i+1]), the last one wraps
    sizes: dict[int, int]
    c: int
    G: int
    k: int

    @property
    def n_sizes(self) -> int:
        return len(self.sizes)


def gap_profile(tg: TgSequence) -> GapProfile:
    pts = tg.points
    gaps = np.empty(len(pts), dtype=np.int64)
    gaps[:-1] = np.diff(pts)
    gaps[-1] = tg.p + pts[0] - pts[-1]
    values, counts = np.unique(gaps, return_counts=True)
    sizes = {int(v): int(n) for v, n in zip(values, counts)}
    c, G = int(values[0]), int(values[-1])
    k = int(len(gaps) - counts[0])
    return GapProfile(gaps, sizes, c, G, k)


def check_three_gap(tg: TgSequence, profile: Optional[GapProfile] = None) -> bool:
    prof = profile or gap_profile(tg)
    sizes = sorted(prof.sizes)
    if len(sizes) > 3:
        return False
    if len(sizes) == 3 and sizes[2] != sizes[0] + sizes[1]:
        return False
    if len(sizes) == 1 and tg.q != 1:
        return False
    return True


@dataclass(frozen=True)
class ApStructure:
    kind: str  # "single-AP", "two-APs" or "other"
    diff: Optional[int] = None
    run_lengths: tuple[int, ...] = ()

    def diff_matches(self, d: int, p: int) -> bool:
        """c1: diff = +-d; c6: diff = +-2d (mod p)."""
        if self.diff is None:
            return False
        mult = 1 if self.kind == "single-AP" else 2
        return self.diff % p in {(mult * d) % p, (-mult * d) % p}


def _runs(tg: TgSequence, prof: GapProfile) -> list[np.ndarray]:
    # cut the cyclic point list after every larger gap
    cuts = np.flatnonzero(prof.gaps > prof.c)
    pts = np.roll(tg.points, -(int(cuts[-1]) + 1))
    gaps = np.roll(prof.gaps, -(int(cuts[-1]) + 1))
    ends = np.flatnonzero(gaps > prof.c) + 1
    return np.split(pts, ends[:-1])


def classify_ap_structure(tg: TgSequence, profile: Optional[GapProfile] = None) -> ApStructure:
    """Split the points at the larger gaps.

    One larger gap: the points are a single cyclic AP with difference c.
    Two larger gaps: two runs, each an AP with difference c.
    """
    prof = profile or gap_profile(tg)
    if prof.k not in (1, 2):
        return ApStructure("other")
    runs = _runs(tg, prof)
    for run in runs:
        steps = (np.diff(run) % tg.p) if len(run) > 1 else np.array([prof.c])
        if not np.all(steps == prof.c):
            return ApStructure("other")
    kind = "single-AP" if prof.k == 1 else "two-APs"
    return ApStructure(kind, prof.c, tuple(len(r) for r in runs))


@dataclass(frozen=True)
class C2Report:
    three_sizes: bool
    lhs: int
    rhs: int

    @property
    def satisfied(self) -> bool:
        return self.lhs >= self.rhs


def c2_bounds(tg: TgSequence, q1: int, profile: Optional[GapProfile] = None) -> C2Report:
    """Counting bound for a TG-sequence whose largest gap exceeds q1.

    lhs = p - q1 - q.  With two gap sizes rhs = (k-1)(G-1) + (q-k)(c-1);
    with three, rhs = (k-1)(G-c-1) + (q-k)(c-1).
    """
    prof = profile or gap_profile(tg)
    if prof.n_sizes == 1:
        raise ValueError("a single gap size has no larger gaps; bound does not apply")
    if prof.G <= q1:
        raise ValueError(f"largest gap G={prof.G} must exceed q1={q1}")
    q, k, c, G = tg.q, prof.k, prof.c, prof.G
    lhs = tg.p - q1 - q
    if prof.n_sizes == 2:
        rhs = (k - 1) * (G - 1) + (q - k) * (c - 1)
    else:
        rhs = (k - 1) * (G - c - 1) + (q - k) * (c - 1)
    return C2Report(prof.n_sizes == 3, lhs, rhs)


def profile_summary(prof: GapProfile) -> dict:
    return {"sizes": {str(s): n for s, n in sorted(prof.sizes.items())},
            "c": prof.c, "G": prof.G, "k": prof.k}

