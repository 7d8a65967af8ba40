"""From an equal-numerator DCS to a partition of Z_p into residue blocks.

Each sequence S(p/q_i, b_i) owns the block {b_i + j*qbar_i}, j < q_i.  The
map x -> -q_1*(x - b_1) mod p is a bijection (gcd(q_1, p) = 1) sending the
first block to {0, ..., q_1 - 1}; the other blocks keep their shape with
difference qtilde_i = -q_1*qbar_i mod p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BeattySystem, ResidueBlock, qbar, residue_set, verify_dcs

ROOT_SUM_P_LIMIT = 10**4


class NotACoverError(ValueError):
    def __init__(self, certificate):
        super().__init__(f"system is not a DCS ({certificate.describe()})")
        self.certificate = certificate


@dataclass(frozen=True)
class BlockPartition:
    p: int
    blocks: tuple[ResidueBlock, ...]
    normalized: bool = False

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if block.p != self.p:
                raise ValueError("block modulus differs from partition modulus")
            elems = block.element_set()
            if seen & elems:
                raise ValueError("blocks overlap")
            seen |= elems
        if len(seen) != self.p:
            raise ValueError("blocks do not cover Z_p")

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b.len for b in self.blocks)


def blocks_from_system(system: BeattySystem) -> BlockPartition:
    if not system.equal_numerator:
        raise ValueError("blocks need a common numerator")
    cert = verify_dcs(system)
    if not cert.ok:
        raise NotACoverError(cert)
    return BlockPartition(system.p, tuple(residue_set(s) for s in system.specs))


def block_order(partition: BlockPartition) -> list[int]:
    """Indices sorted by length descending, then start ascending."""
    return sorted(range(len(partition.blocks)),
                  key=lambda i: (-partition.blocks[i].len, partition.blocks[i].start))


def reorder(partition: BlockPartition, order: list[int]) -> BlockPartition:
    return BlockPartition(partition.p, tuple(partition.blocks[i] for i in order),
                          partition.normalized)


def gamma_map(p: int, q1: int, b1: int):
    return lambda x: (-q1 * (x - b1)) % p


def gamma_normalize(partition: BlockPartition) -> BlockPartition:
    """Apply x -> -q_1*(x - b_1) mod p, pivoting on blocks[0].

    blocks[0] must have maximal length.  Every block's difference is assumed to
    be qbar(p, len); in particular blocks[0] is an unnormalized residue block.
    A partition that is already normalized is returned unchanged.
    """
    if partition.normalized:
        return partition
    p = partition.p
    first = partition.blocks[0]
    if any(b.len > first.len for b in partition.blocks):
        raise ValueError("blocks[0] must be a longest block")
    q1, b1 = first.len, first.start
    if math.gcd(q1, p) != 1:
        raise ValueError(f"gcd(q_1, p) = gcd({q1}, {p}) != 1")
    g = gamma_map(p, q1, b1)
    out = []
    for block in partition.blocks:
        diff = (-q1 * qbar(p, block.len)) % p
        out.append(ResidueBlock(p, g(block.start), diff, block.len))
    result = BlockPartition(p, tuple(out), normalized=True)
    # gamma maps each block onto the new block exactly
    for old, new in zip(partition.blocks, result.blocks):
        if {g(x) for x in old.elements()} != new.element_set():
            raise ValueError("block difference is not qbar(p, len); cannot normalize")
    return result


@dataclass(frozen=True)
class RootSumReport:
    p: int
    max_residual: float
    residuals: dict[int, float]  # primitive-root exponent k -> |sum| at exp(2 pi i k/p)
    quotient_max_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_residual < self.tol


def check_root_sum(system: BeattySystem, tol: float = 1e-9) -> RootSumReport:
    """Evaluate sum_i xi^{b_i} (1 + xi^{qbar_i} + ... + xi^{(q_i-1) qbar_i}) at every primitive p-th root.

    b_i are the residue-block starts.  Also evaluates the quotient form
    sum_i xi^{b_i} / (1 - xi^{qbar_i}).  Both vanish for a DCS.
    """
    if not system.equal_numerator:
        raise ValueError("root sums need a common numerator")
    p = system.p
    if p > ROOT_SUM_P_LIMIT:
        raise ValueError(f"p={p} exceeds the precision guard {ROOT_SUM_P_LIMIT}")
    if sum(s.q for s in system.specs) != p:
        raise ValueError("sum of q_i must equal p")

    blocks = [residue_set(s) for s in system.specs]
    table = np.exp(2j * np.pi * np.arange(p) / p)
    ks = np.array([k for k in range(1, p) if math.gcd(k, p) == 1], dtype=np.int64)
    starts = np.array([b.start for b in blocks], dtype=np.int64)
    diffs = np.array([b.diff for b in blocks], dtype=np.int64)

    geometric = np.zeros(len(ks), dtype=complex)
    for b in blocks:
        j = np.arange(b.len, dtype=np.int64)
        expo = (np.outer(ks, b.start + j * b.diff)) % p
        geometric += table[expo].sum(axis=1)

    lead = table[np.outer(ks, starts) % p]
    denom = 1 - table[np.outer(ks, diffs) % p]
    quotient = (lead / denom).sum(axis=1)

    res = np.abs(geometric)
    return RootSumReport(
        p=p,
        max_residual=float(res.max()) if len(res) else 0.0,
        residuals={int(k): float(r) for k, r in zip(ks, res)},
        quotient_max_residual=float(np.abs(quotient).max()) if len(res) else 0.0,
        tol=tol,
    )


@dataclass(frozen=True)
class BlockShiftReport:
    hypothesis: bool
    conclusion: bool
    orientation: str | None = None  # "increasing" (step qtilde) or "decreasing" (step p - qtilde)

    @property
    def holds(self) -> bool:
        return (not self.hypothesis) or self.conclusion


def check_block_shift(B1: ResidueBlock, B2: ResidueBlock, q1: int, qtilde2: int) -> BlockShiftReport:
    """B1 = {0..q1-1}; if B1 meets B1 + qtilde2, B2 must be a monotone AP in [q1, p-1]."""
    p = B1.p
    if B2.p != p:
        raise ValueError("blocks have different moduli")
    if B1.element_set() != frozenset(range(q1)):
        raise ValueError("B1 must be {0, ..., q1-1}")
    if B1.element_set() & B2.element_set():
        raise ValueError("B1 and B2 overlap")
    if B2.len > 1 and qtilde2 % p != B2.diff:
        raise ValueError("qtilde2 must equal B2.diff")

    s = qtilde2 % p
    shifted = {(x + s) % p for x in range(q1)}
    hypothesis = bool(shifted & set(range(q1)))

    seq = B2.elements()
    inside = all(q1 <= x <= p - 1 for x in seq)
    steps = {b - a for a, b in zip(seq, seq[1:])}
    orientation = None
    if inside:
        if not steps:
            orientation = "increasing"
        elif steps == {s}:
            orientation = "increasing"
        elif steps == {s - p}:
            orientation = "decreasing"
    return BlockShiftReport(hypothesis, orientation is not None, orientation)
