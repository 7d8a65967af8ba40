"""Exact arithmetic for rational Beatty sequences S(p/q, beta) = {floor(p*n/q + beta)}.

Membership of an integer m depends on beta only through the phase
t = floor(q*beta) mod p:

    m in S(p/q, beta)  <=>  (t - q*m) mod p < q

so every sequence is a union of q residue classes mod p.  Those classes form
an arithmetic progression with difference qbar(p, q), the least qbar >= 0
with qbar*q = -1 (mod p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

P_MAX = 2**31
# exact period checks (mixed numerators, union classification) walk lcm(p_i) residues
PERIOD_LIMIT = 10**7


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"offset must be an int or Fraction, got {type(value).__name__}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"offset must be an int or Fraction, got {type(value).__name__}")


def _check_modulus(p: int, q: int) -> None:
    if not isinstance(p, int) or not isinstance(q, int):
        raise TypeError("p and q must be integers")
    if p < 2 or p > P_MAX:
        raise ValueError(f"numerator p={p} outside [2, 2^31]")
    if q < 1 or q >= p:
        raise ValueError(f"denominator q={q} must satisfy 1 <= q < p={p}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p/q={p}/{q} is not reduced")


def normalize_offset(p: int, q: int, beta) -> int:
    """Canonical phase floor(q*beta) mod p of S(p/q, beta)."""
    _check_modulus(p, q)
    return math.floor(q * as_fraction(beta)) % p


def qbar(p: int, q: int) -> int:
    """Least non-negative integer x with x*q = -1 (mod p)."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if math.gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    return (-pow(q, -1, p)) % p


@dataclass(frozen=True)
class ResidueBlock:
    """The residues start + j*diff (mod p), j = 0..len-1."""

    p: int
    start: int
    diff: int
    len: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("block modulus must be positive")
        if not (0 <= self.start < self.p and 0 <= self.diff < self.p):
            raise ValueError("block start and diff must lie in [0, p)")
        if not (1 <= self.len <= self.p):
            raise ValueError(f"block length {self.len} outside [1, {self.p}]")
        if self.len > 1 and math.gcd(self.diff, self.p) != 1:
            raise ValueError(f"block diff {self.diff} not a unit mod {self.p}")

    def elements(self) -> list[int]:
        """Residues in generation order (not sorted)."""
        return [(self.start + j * self.diff) % self.p for j in range(self.len)]

    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements())

    def mask(self) -> int:
        bits = 0
        for x in self.elements():
            bits |= 1 << x
        return bits


@dataclass(frozen=True)
class BeattySpec:
    """One rational Beatty sequence S(p/q, beta) with reduced p/q and 1 <= q < p."""

    p: int
    q: int
    beta: Fraction = Fraction(0)
    t: int = field(init=False)

    def __post_init__(self):
        _check_modulus(self.p, self.q)
        beta = as_fraction(self.beta)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "t", math.floor(self.q * beta) % self.p)

    @property
    def modulus(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def qbar(self) -> int:
        return qbar(self.p, self.q)

    def integer_offset(self) -> int:
        """An integer b in [0, p) with S(p/q, b) = S(p/q, beta).

        This is also the start of the residue block.
        """
        return (-self.qbar * self.t) % self.p

    def __contains__(self, m: int) -> bool:
        return member(self, m)

    def values(self, lo: int, hi: int) -> list[int]:
        """Members of the sequence in [lo, hi]."""
        return [m for m in range(lo, hi + 1) if member(self, m)]

    def __str__(self) -> str:
        return f"S({self.p}/{self.q}, {self.beta})"


def member(spec: BeattySpec, m: int) -> bool:
    return (spec.t - spec.q * m) % spec.p < spec.q


def member_direct(p: int, q: int, beta, m: int) -> bool:
    """Membership by searching for n with floor(p*n/q + beta) = m.

    Independent of the residue characterization; used as a test oracle and for
    the CLI window cross-check.
    """
    beta = as_fraction(beta)
    # floor(p n/q + beta) = m forces (m - beta) q/p <= n < (m + 1 - beta) q/p
    lo = math.floor((m - beta) * q / p) - 1
    hi = math.ceil((m + 1 - beta) * q / p) + 1
    return any(math.floor(Fraction(p * n, q) + beta) == m for n in range(lo, hi + 1))


def residue_set(spec: BeattySpec) -> ResidueBlock:
    d = spec.qbar
    return ResidueBlock(spec.p, (-d * spec.t) % spec.p, d, spec.q)


def complement(spec: BeattySpec) -> BeattySpec:
    """S(p/(p-q), b - qbar) where b is an integer offset of the input.

    Non-integer offsets are first replaced by the equivalent integer offset,
    since the identity only holds for integer b.
    """
    if spec.beta.denominator == 1:
        b = spec.beta
    else:
        b = Fraction(spec.integer_offset())
    return BeattySpec(spec.p, spec.p - spec.q, b - spec.qbar)


@dataclass(frozen=True)
class BeattySystem:
    specs: tuple[BeattySpec, ...]

    def __init__(self, specs: Iterable[BeattySpec]):
        specs = tuple(specs)
        if not specs:
            raise ValueError("a system needs at least one sequence")
        object.__setattr__(self, "specs", specs)

    @property
    def equal_numerator(self) -> bool:
        return len({s.p for s in self.specs}) == 1

    @property
    def p(self) -> int:
        if not self.equal_numerator:
            raise ValueError("system has mixed numerators")
        return self.specs[0].p

    @property
    def period(self) -> int:
        return math.lcm(*(s.p for s in self.specs))

    def __len__(self) -> int:
        return len(self.specs)

    def __iter__(self):
        return iter(self.specs)

    def __getitem__(self, i):
        return self.specs[i]

    @classmethod
    def from_pairs(cls, p: int, pairs: Sequence[tuple[int, object]]) -> "BeattySystem":
        return cls(BeattySpec(p, q, as_fraction(b)) for q, b in pairs)


@dataclass(frozen=True)
class CoverCertificate:
    """Witness of a cover check over one period [0, p).

    ``assignment[r]`` is the index of the first sequence containing residue r,
    or None.  ``failure`` is one of "density", "uncovered", "double-cover".
    """

    p: int
    assignment: tuple[Optional[int], ...]
    ok: bool
    failure: Optional[str] = None
    residue: Optional[int] = None
    indices: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.ok:
            return "ok"
        if self.failure == "density":
            return "density: sum of q_i/p_i != 1"
        if self.failure == "uncovered":
            return f"uncovered: residue {self.residue} lies in no sequence"
        return f"double-cover: residue {self.residue} lies in sequences {list(self.indices)}"


def verify_dcs(system: BeattySystem) -> CoverCertificate:
    """Exact check that the system partitions Z.

    Every sequence is periodic with period p_i, so one period of length
    lcm(p_i) decides the question.  Density (sum q_i/p_i = 1) is checked first;
    otherwise the smallest offending residue is reported.
    """
    period = system.period
    if period > PERIOD_LIMIT:
        raise ValueError(f"common period {period} exceeds {PERIOD_LIMIT}")
    hits: list[list[int]] = [[] for _ in range(period)]
    for idx, spec in enumerate(system.specs):
        for r0 in residue_set(spec).elements():
            for r in range(r0, period, spec.p):
                hits[r].append(idx)
    assignment = tuple(h[0] if h else None for h in hits)

    if sum(Fraction(s.q, s.p) for s in system.specs) != 1:
        return CoverCertificate(period, assignment, False, "density")
    for r, h in enumerate(hits):
        if len(h) == 0:
            return CoverCertificate(period, assignment, False, "uncovered", r)
        if len(h) > 1:
            return CoverCertificate(period, assignment, False, "double-cover", r, tuple(h))
    return CoverCertificate(period, assignment, True)


_SEVENS = frozenset({Fraction(7, 1), Fraction(7, 2), Fraction(7, 4)})


@dataclass(frozen=True)
class UnionClassification:
    is_union: bool
    cases: tuple[str, ...] = ()
    failure: Optional[str] = None  # "overlap" or "not-equal"
    residue: Optional[int] = None

    @property
    def label(self) -> str:
        if not self.is_union:
            return "not-a-union"
        return self.cases[0] if self.cases else "unclassified"


def _is_case_c(a1: Fraction, a2: Fraction) -> bool:
    # {a1, a2} = {p/q, p/(p - 2q)}: with a1 = p/q in lowest terms, a2 = p1/(p1 - 2 q1)
    for x, y in ((a1, a2), (a2, a1)):
        rest = x.numerator - 2 * x.denominator
        if rest > 0 and y == Fraction(x.numerator, rest):
            return True
    return False


def union_cases(a1: Fraction, a2: Fraction) -> tuple[str, ...]:
    cases = []
    if a1 != a2 and {a1, a2} <= _SEVENS:
        cases.append("a")
    if a1 == a2:
        cases.append("b")
    if _is_case_c(a1, a2):
        cases.append("c")
    return tuple(cases)


def classify_union(s1: BeattySpec, s2: BeattySpec, s3: BeattySpec) -> UnionClassification:
    """Check S1 u S2 = S3 with S1, S2 disjoint, then label the pair of moduli.

    Labels: "a" when the moduli are two of 7/1, 7/2, 7/4; "b" when they are
    equal; "c" when they are p/q and p/(p-2q).
    """
    period = math.lcm(s1.p, s2.p, s3.p)
    if period > PERIOD_LIMIT:
        raise ValueError(f"common period {period} exceeds {PERIOD_LIMIT}")
    for m in range(period):
        in1, in2, in3 = member(s1, m), member(s2, m), member(s3, m)
        if in1 and in2:
            return UnionClassification(False, failure="overlap", residue=m)
        if (in1 or in2) != in3:
            return UnionClassification(False, failure="not-equal", residue=m)
    return UnionClassification(True, union_cases(s1.modulus, s2.modulus))
