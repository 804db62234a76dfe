"""Geometric view of alignments between shifted words.

Place v on one horizontal line and w on a second line offset by the shift s.
An edge joining v[i] to w[j] then has span j + s - i, the difference of the
two x-coordinates. Zero-span edges join positions forced equal by the shift.
Alignments whose edges all have large span induce paired block partitions of
the two words, which is what the dominated-LCS bookkeeping below computes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .lcs import Alignment, lcs_dp
from .words import Word


class CaseTag(str, enum.Enum):
    """Shape class of an alignment, keyed by its minimum edge span."""

    NON_POSITIVE = "nonpositive"
    SMALL = "small"
    LARGE = "large"


DEFAULT_EPS = 0.01


def span_of(e: tuple[int, int], s: int) -> int:
    """Span of the edge (i, j) under shift s: j + s - i."""
    i, j = e
    return j + s - i


@dataclass(frozen=True)
class SpannedEdge:
    i: int
    j: int
    span: int

    @classmethod
    def from_edge(cls, e: tuple[int, int], s: int) -> "SpannedEdge":
        return cls(e[0], e[1], span_of(e, s))


def spanned_edges(a: Alignment, s: int) -> list[SpannedEdge]:
    return [SpannedEdge.from_edge(e, s) for e in a.edges]


def _eps_length(eps: float, n: int) -> float:
    # eps*n scrubbed of float noise so integer spans compare as intended
    return round(eps * n, 9)


def classify_min_span(a: Alignment, s: int, n: int, eps: float = DEFAULT_EPS) -> CaseTag:
    """Classify an alignment by its least edge span.

    NON_POSITIVE for min span <= 0, SMALL for 0 < min span <= eps*n
    (boundary inclusive), LARGE above that.
    """
    if not a.edges:
        raise ValueError("alignment must be nonempty")
    threshold = _eps_length(eps, n)
    min_span = min(span_of(e, s) for e in a.edges)
    if min_span <= 0:
        return CaseTag.NON_POSITIVE
    if min_span <= threshold:
        return CaseTag.SMALL
    return CaseTag.LARGE


@dataclass(frozen=True)
class BlockPartition:
    """Paired ordered interval lists over v and w.

    v_blocks tile [0, |v|) completely. w_blocks form a contiguous ordered
    chain; the chain may start after position 0, leaving the prefix of w
    before the first edge outside every block (paired blocks must never
    share source positions, which rules out stretching the first w-block
    back to 0).
    """

    v_blocks: tuple[tuple[int, int], ...]
    w_blocks: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.v_blocks) != len(self.w_blocks):
            raise ValueError("v_blocks and w_blocks must pair up")
        if not self.v_blocks:
            raise ValueError("partition must contain at least one block")
        for blocks in (self.v_blocks, self.w_blocks):
            for (a0, a1), (b0, b1) in zip(blocks, blocks[1:]):
                if a1 != b0:
                    raise ValueError("blocks must be contiguous and ordered")
            for a0, a1 in blocks:
                if a0 > a1 or a0 < 0:
                    raise ValueError("malformed interval")
        if self.v_blocks[0][0] != 0:
            raise ValueError("v_blocks must start at 0")

    def validate_for(self, v: Word, w: Word) -> None:
        if self.v_blocks[-1][1] != len(v):
            raise ValueError("v_blocks must cover v exactly")
        if self.w_blocks[-1][1] > len(w):
            raise ValueError("w_blocks exceed w")

    def dominates(self, a: Alignment) -> bool:
        """True iff every edge of `a` joins a paired (v-block, w-block)."""
        for i, j in a.edges:
            ok = False
            for (va, vb), (wa, wb) in zip(self.v_blocks, self.w_blocks):
                if va <= i < vb and wa <= j < wb:
                    ok = True
                    break
            if not ok:
                return False
        return True

    def is_nonoverlapping(self, s: int) -> bool:
        """True iff no paired blocks share source positions under shift s."""
        for (va, vb), (wa, wb) in zip(self.v_blocks, self.w_blocks):
            if va == vb or wa == wb:
                continue
            za, zb = wa + s, wb + s
            if va < zb and za < vb:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "v_blocks": [[a, b] for a, b in self.v_blocks],
            "w_blocks": [[a, b] for a, b in self.w_blocks],
        }


def build_block_partition(
    a: Alignment, v: Word, w: Word, s: int, eps: float = DEFAULT_EPS
) -> BlockPartition:
    """Partition induced by an alignment whose spans all exceed eps*|v|.

    v is cut into blocks of length ceil(eps*|v|), the last possibly shorter.
    Each w-block starts at the w-endpoint of the first edge leaving the
    corresponding v-block and runs to the next block's start; v-blocks with
    no edges pair the empty interval at the next edge's start (or at the end
    of w when no edge follows). The result dominates `a` and paired blocks
    never overlap in source positions.
    """
    n, m = len(v), len(w)
    if n == 0:
        raise ValueError("v must be nonempty")
    if not a.edges:
        raise ValueError("alignment must be nonempty")
    threshold = _eps_length(eps, n)
    if threshold <= 0:
        raise ValueError("eps must be positive")
    for e in a.edges:
        if span_of(e, s) <= threshold:
            raise ValueError(
                f"edge {e} has span {span_of(e, s)} <= eps*n = {threshold}"
            )

    block_len = max(1, math.ceil(threshold))
    nblocks = -(-n // block_len)
    v_blocks = tuple(
        (b * block_len, min((b + 1) * block_len, n)) for b in range(nblocks)
    )

    first_j: list[int | None] = [None] * nblocks
    for i, j in a.edges:
        b = i // block_len
        if first_j[b] is None:
            first_j[b] = j

    starts = [m] * nblocks
    upcoming = m
    for b in range(nblocks - 1, -1, -1):
        if first_j[b] is not None:
            upcoming = first_j[b]
        starts[b] = upcoming
    w_blocks = tuple(
        (starts[b], starts[b + 1] if b + 1 < nblocks else m) for b in range(nblocks)
    )
    return BlockPartition(v_blocks, w_blocks)


def dominated_lcs(v: Word, w: Word, p: BlockPartition) -> int:
    """Sum of per-block LCS lengths over the paired blocks."""
    p.validate_for(v, w)
    total = 0
    for (va, vb), (wa, wb) in zip(p.v_blocks, p.w_blocks):
        if va < vb and wa < wb:
            total += lcs_dp(v.window(va, vb), w.window(wa, wb))
    return total


def blockcount_bound(n: int, eps: float) -> int:
    """Counting ceiling binom(n, round(1/eps))^2 on block partitions.

    Purely a diagnostic magnitude; exact integer arithmetic, and 0 when the
    block count exceeds n.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    j = round(1 / eps)
    if j > n:
        return 0
    return math.comb(n, j) ** 2
