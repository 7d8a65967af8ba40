"""Exhaustive search for equal-numerator DCS of rational Beatty sequences.

For a fixed numerator p and denominators q_1 >= ... >= q_n with sum p, a DCS
is an exact cover of Z_p by the blocks {c_i + j*qbar(p, q_i)}, j < q_i.  A
system is determined by the starts c_i (then S(p/q_i, c_i) is the sequence),
and translating every start by the same amount gives the translated system,
so c_1 = 0 picks one representative per translation class.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core import BeattySpec, BeattySystem, qbar, verify_dcs
from .correspondence import blocks_from_system

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    def __init__(self, ops: int, found: list):
        super().__init__(f"cover budget exhausted after {ops} operations")
        self.ops = ops
        self.found = found


def fraenkel_system(n: int) -> BeattySystem:
    """{S((2^n - 1)/2^(n-i), 1 - 2^(i-1))}, i = 1..n."""
    if not 2 <= n <= 30:
        raise ValueError(f"n={n} outside [2, 30]")
    p = 2**n - 1
    return BeattySystem(BeattySpec(p, 2 ** (n - i), 1 - 2 ** (i - 1)) for i in range(1, n + 1))


def _partitions(total: int, parts: int, cap: int, distinct: bool) -> Iterator[tuple[int, ...]]:
    """Non-increasing (strictly decreasing if distinct) tuples of positive ints <= cap."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    # the remaining parts-1 entries are at least (parts-1, ..., 1) or all 1
    floor_rest = (parts - 1) * parts // 2 if distinct else parts - 1
    hi = min(cap, total - floor_rest)
    for first in range(hi, 0, -1):
        if distinct:
            if parts * (2 * first - parts + 1) // 2 < total:
                break
        elif first * parts < total:
            break
        nxt = first - 1 if distinct else first
        for rest in _partitions(total - first, parts - 1, nxt, distinct):
            yield (first,) + rest


def count_partitions(n: int, p: int, require_distinct: bool = True) -> int:
    return sum(1 for _ in _partitions(p, n, p - 1, require_distinct))


def enumerate_q_tuples(n: int, p: int, require_distinct: bool = True) -> list[tuple[int, ...]]:
    """Decreasing n-tuples with sum p, every entry < p and coprime to p."""
    if p < n:
        raise ValueError(f"need p >= n, got p={p}, n={n}")
    return [t for t in _partitions(p, n, p - 1, require_distinct)
            if all(math.gcd(p, q) == 1 for q in t)]


class _Cover:
    def __init__(self, p: int, q_tuple: tuple[int, ...], budget: int):
        self.p = p
        self.q = q_tuple
        self.diffs = [qbar(p, q) for q in q_tuple]
        self.budget = budget
        self.ops = 0
        self.full = (1 << p) - 1
        # base[i] = bitmask of block i started at 0; other starts are rotations
        self.base = []
        for q, d in zip(q_tuple, self.diffs):
            m = 0
            for j in range(q):
                m |= 1 << ((j * d) % p)
            self.base.append(m)
        self.found: list[tuple[int, ...]] = []

    def run(self) -> list[tuple[int, ...]]:
        starts = [None] * len(self.q)
        starts[0] = 0
        self._extend(self.base[0], starts, [False] + [True] * (len(self.q) - 1))
        return self.found

    def _extend(self, covered: int, starts: list, free: list[bool]):
        if covered == self.full:
            self.found.append(tuple(starts))
            return
        # lowest uncovered residue
        r = (~covered & (covered + 1)).bit_length() - 1
        tried_q = set()
        for i, is_free in enumerate(free):
            if not is_free or self.q[i] in tried_q:
                continue
            # equal q values are interchangeable: branch on the first free one only
            tried_q.add(self.q[i])
            d = self.diffs[i]
            for j in range(self.q[i]):
                self.ops += 1
                if self.ops > self.budget:
                    raise BudgetExceeded(self.ops, self.found)
                c = (r - j * d) % self.p
                m = self.base[i]
                if c:
                    m = ((m << c) | (m >> (self.p - c))) & self.full
                if m & covered:
                    continue
                starts[i] = c
                free[i] = False
                self._extend(covered | m, starts, free)
                free[i] = True
                starts[i] = None


def _canonical(p: int, q_tuple: tuple[int, ...], starts: tuple[int, ...]) -> tuple[int, ...]:
    """Least start tuple over translations pinning a longest block at 0 and
    permutations among equal q."""
    best = None
    for k, q in enumerate(q_tuple):
        if q != q_tuple[0]:
            break
        shifted = [(c - starts[k]) % p for c in starts]
        out = []
        i = 0
        while i < len(q_tuple):
            j = i
            while j < len(q_tuple) and q_tuple[j] == q_tuple[i]:
                j += 1
            out.extend(sorted(shifted[i:j]))
            i = j
        cand = tuple(out)
        if best is None or cand < best:
            best = cand
    return best


def _search_pair(p: int, q_tuple: tuple[int, ...], budget: int):
    """Returns (phase tuples, ops, exhausted)."""
    cover = _Cover(p, q_tuple, budget)
    try:
        found = cover.run()
        exhausted = False
    except BudgetExceeded as exc:
        found, exhausted = exc.found, True
    uniq = sorted({_canonical(p, q_tuple, s) for s in found})
    return uniq, cover.ops, exhausted


def exact_cover_search(p: int, q_tuple, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All start tuples (c_1 = 0) whose blocks partition Z_p.

    With repeated q values each set system is reported once, in canonical
    form (starts ascending within a run of equal q).
    """
    q_tuple = tuple(q_tuple)
    if sum(q_tuple) != p:
        raise ValueError("sum of q must equal p")
    if any(math.gcd(p, q) != 1 or not 1 <= q < p for q in q_tuple):
        raise ValueError("every q must be coprime to p and in [1, p)")
    if list(q_tuple) != sorted(q_tuple, reverse=True):
        raise ValueError("q tuple must be non-increasing")
    found, _, exhausted = _search_pair(p, q_tuple, budget)
    if exhausted:
        raise BudgetExceeded(budget, found)
    return found


@dataclass(frozen=True)
class SearchConfig:
    n: int
    p_min: int
    p_max: int
    require_distinct: bool = True
    workers: int = 1
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.p_min > self.p_max:
            raise ValueError("p_min must not exceed p_max")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be positive")


@dataclass(frozen=True)
class SolutionCertificate:
    p: int
    q_tuple: tuple[int, ...]
    phases: tuple[int, ...]

    def system(self) -> BeattySystem:
        return BeattySystem(BeattySpec(self.p, q, c) for q, c in zip(self.q_tuple, self.phases))

    def blocks(self) -> list[list[int]]:
        return [sorted((c + j * qbar(self.p, q)) % self.p for j in range(q))
                for q, c in zip(self.q_tuple, self.phases)]

    @property
    def sort_key(self):
        return (self.p, self.q_tuple, self.phases)


@dataclass
class PStats:
    p: int
    partitions: int = 0
    tuples: int = 0
    solutions: int = 0
    ops: int = 0


@dataclass
class SearchReport:
    config: SearchConfig
    certificates: list[SolutionCertificate] = field(default_factory=list)
    per_p: list[PStats] = field(default_factory=list)
    complete: bool = True
    searched_through: Optional[int] = None  # largest p fully searched

    @property
    def tuples_examined(self) -> int:
        return sum(s.tuples for s in self.per_p)

    @property
    def tuples_pruned(self) -> int:
        return sum(s.partitions - s.tuples for s in self.per_p)

    @property
    def ops(self) -> int:
        return sum(s.ops for s in self.per_p)

    def families(self) -> list[tuple[int, tuple[int, ...]]]:
        return sorted({(c.p, c.q_tuple) for c in self.certificates})

    def bound_statement(self) -> str:
        cfg = self.config
        kind = "distinct moduli" if cfg.require_distinct else "moduli with multiplicity allowed"
        hi = self.searched_through
        if hi is None:
            return f"no numerator searched completely (budget exhausted at p={cfg.p_min})"
        fams = ", ".join(f"p={p} q={list(q)}" for p, q in self.families()) or "none"
        return (f"equal-numerator DCS with n={cfg.n} and {kind}, numerators "
                f"{cfg.p_min} <= p <= {hi}: solutions only at {fams}; "
                f"numerators above {hi} were not searched")


def _shards(cfg: SearchConfig):
    for p in range(max(cfg.p_min, cfg.n, 2), cfg.p_max + 1):
        for t in enumerate_q_tuples(cfg.n, p, cfg.require_distinct):
            yield p, t


def _run_shard(args):
    p, t, budget = args
    return _search_pair(p, t, budget)


def search_conjecture(cfg: SearchConfig) -> SearchReport:
    """Search every numerator in [p_min, p_max].

    Shards are (p, q_tuple) pairs.  Results are merged in shard order and the
    budget is charged in that order, so the report does not depend on workers.
    """
    shards = list(_shards(cfg))
    jobs = [(p, t, cfg.budget) for p, t in shards]
    if cfg.workers == 1:
        results = map(_run_shard, jobs)
        results = list(results)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_shard, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))

    report = SearchReport(cfg)
    stats = {p: PStats(p, partitions=count_partitions(cfg.n, p, cfg.require_distinct))
             for p in range(max(cfg.p_min, cfg.n, 2), cfg.p_max + 1)}
    spent = 0
    stopped_at = None
    for (p, t), (phases, ops, exhausted) in zip(shards, results):
        spent += ops
        st = stats[p]
        st.tuples += 1
        st.ops += ops
        if exhausted or spent > cfg.budget:
            stopped_at = p
            break
        for ph in phases:
            cert = SolutionCertificate(p, t, ph)
            if not verify_dcs(cert.system()).ok:
                raise AssertionError(f"search produced a non-cover: {cert}")
            blocks_from_system(cert.system())
            report.certificates.append(cert)
            st.solutions += 1

    if stopped_at is None:
        report.per_p = list(stats.values())
        report.searched_through = cfg.p_max
    else:
        report.complete = False
        report.per_p = [s for q, s in stats.items() if q <= stopped_at]
        report.certificates = [c for c in report.certificates if c.p < stopped_at]
        report.searched_through = stopped_at - 1 if stopped_at > cfg.p_min else None
    report.certificates.sort(key=lambda c: c.sort_key)
    return report
