"""Longest-common-subsequence kernels and restricted variants.

Three interchangeable length kernels are provided: an exhaustive oracle for
small inputs, a quadratic dynamic program, and a bit-parallel kernel. All
are exact; the oracle exists to cross-check the other two.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .words import ShiftedPair, Word, is_subsequence

ORACLE_MAX_LEN = 14


@dataclass(frozen=True)
class Alignment:
    """Noncrossing edge set witnessing a common subsequence.

    Edges are (i, j) pairs, strictly increasing in both coordinates, with
    v[i] == w[j] for the words the alignment refers to.
    """

    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)

    def check(self, v: Word, w: Word) -> None:
        """Validate monotonicity and symbol equality against (v, w)."""
        prev_i, prev_j = -1, -1
        for i, j in self.edges:
            if i <= prev_i or j <= prev_j:
                raise ValueError("alignment edges must strictly increase")
            if not (0 <= i < len(v) and 0 <= j < len(w)):
                raise ValueError("alignment edge out of range")
            if v[i] != w[j]:
                raise ValueError(f"edge ({i}, {j}) joins unequal symbols")
            prev_i, prev_j = i, j

    def spelled(self, v: Word) -> Word:
        """The common subsequence this alignment spells, read off v."""
        return v.take(i for i, _ in self.edges)

    def to_json_dict(self) -> dict:
        return {"edges": [[i, j] for i, j in self.edges]}


def lcs_oracle(v: Word, w: Word) -> int:
    """Exhaustive LCS length: enumerate subsequences of the shorter word.

    Guarded to short inputs; meant as an independent reference for the fast
    kernels, not for production-size words.
    """
    short, long_ = (v, w) if len(v) <= len(w) else (w, v)
    if len(short) > ORACLE_MAX_LEN:
        raise ValueError(
            f"oracle accepts words up to length {ORACLE_MAX_LEN}, got {len(short)}"
        )
    syms = short.symbols
    for length in range(len(syms), 0, -1):
        seen = set()
        for combo in itertools.combinations(range(len(syms)), length):
            cand = tuple(syms[i] for i in combo)
            if cand in seen:
                continue
            seen.add(cand)
            if is_subsequence(Word(cand, short.k), long_):
                return length
    return 0


def lcs_dp(v: Word, w: Word) -> int:
    """LCS length by the standard quadratic DP, two rows only.

    Rows run along the shorter word; the inner update is vectorized, using
    the fact that each row is the running maximum of candidate scores.
    """
    a, b = (v.symbols, w.symbols) if len(v) >= len(w) else (w.symbols, v.symbols)
    if not b:
        return 0
    brr = np.array(b, dtype=np.int64)
    prev = np.zeros(len(b) + 1, dtype=np.int32)
    for x in a:
        cand = np.maximum(prev[1:], prev[:-1] + (brr == x))
        np.maximum.accumulate(cand, out=cand)
        prev[1:] = cand
    return int(prev[-1])


def lcs_bitparallel(v: Word, w: Word) -> int:
    """LCS length with bit-parallel row updates.

    The shorter word is the pattern; one machine word of row state covers
    one pattern symbol per bit, and an update costs a handful of word-wide
    arithmetic operations per text symbol. Exact, not approximate.
    """
    a, b = (v.symbols, w.symbols) if len(v) >= len(w) else (w.symbols, v.symbols)
    m = len(b)
    if m == 0:
        return 0
    masks: dict[int, int] = {}
    bit = 1
    for sym in b:
        masks[sym] = masks.get(sym, 0) | bit
        bit <<= 1
    full = (1 << m) - 1
    row = full
    get = masks.get
    for sym in a:
        u = row & get(sym, 0)
        row = ((row + u) | (row - u)) & full
    return m - row.bit_count()


KERNELS = {
    "oracle": lcs_oracle,
    "dp": lcs_dp,
    "bitparallel": lcs_bitparallel,
}


def _suffix_table(v: Word, w: Word) -> np.ndarray:
    """suf[i][j] = LCS length of v[i:] and w[j:]."""
    n, m = len(v), len(w)
    warr = np.array(w.symbols, dtype=np.int64) if m else np.zeros(0, dtype=np.int64)
    suf = np.zeros((n + 1, m + 1), dtype=np.int32)
    for i in range(n - 1, -1, -1):
        nxt = suf[i + 1]
        cand = np.maximum(nxt[:-1], nxt[1:] + (warr == v[i]))
        suf[i, :m] = np.maximum.accumulate(cand[::-1])[::-1]
    return suf


def lcs_witness(v: Word, w: Word) -> Alignment:
    """One maximum alignment, deterministic tie-break.

    Among all maximum alignments, returns the one whose edge list is
    lexicographically smallest by (i, then j).
    """
    suf = _suffix_table(v, w)
    occurrences: dict[int, list[int]] = {}
    for j, sym in enumerate(w.symbols):
        occurrences.setdefault(sym, []).append(j)

    edges = []
    i, j = 0, 0
    remaining = int(suf[0][0])
    while remaining > 0:
        occ = occurrences.get(v[i])
        if occ is not None:
            at = bisect_left(occ, j)
            if at < len(occ):
                jj = occ[at]
                # The first occurrence carries the largest continuation, so
                # either it starts an optimal alignment or no edge in this
                # row does.
                if 1 + int(suf[i + 1][jj + 1]) == remaining:
                    edges.append((i, jj))
                    i, j = i + 1, jj + 1
                    remaining -= 1
                    continue
        i += 1
    return Alignment(tuple(edges))


def _restricted_lcs(v: Word, w: Word, i_lo, i_hi, j_lo, j_hi, allowed) -> int:
    """Max edge count over increasing chains inside a subgrid.

    Only pairs accepted by `allowed` may be matched. Plain quadratic DP;
    callers keep the windows small.
    """
    ni, nj = i_hi - i_lo, j_hi - j_lo
    prev = [0] * (nj + 1)
    for a in range(1, ni + 1):
        cur = [0] * (nj + 1)
        va = v[i_lo + a - 1]
        for b in range(1, nj + 1):
            jb = j_lo + b - 1
            best = prev[b] if prev[b] >= cur[b - 1] else cur[b - 1]
            if va == w[jb] and allowed(i_lo + a - 1, jb):
                cand = prev[b - 1] + 1
                if cand > best:
                    best = cand
            cur[b] = best
        prev = cur
    return prev[nj]


def bigshift_bruteforce(pair: ShiftedPair, e: tuple[int, int]) -> int:
    """Max common-subsequence length using edge e, with e of largest span.

    Among common subsequences of (v, w) that contain the edge e and in which
    every edge's span j + s - i is at most e's, returns the maximum length.
    The edge alone always qualifies, so the result is at least 1.
    """
    n = pair.n
    if n > ORACLE_MAX_LEN:
        raise ValueError(
            f"accepts pairs up to length {ORACLE_MAX_LEN}, got {n}"
        )
    i0, j0 = e
    if not (0 <= i0 < n and 0 <= j0 < n):
        raise ValueError("edge endpoints out of range")
    v, w, s = pair.v, pair.w, pair.shift
    if v[i0] != w[j0]:
        raise ValueError("edge must join equal symbols")
    span_cap = j0 + s - i0

    def allowed(i: int, j: int) -> bool:
        return j + s - i <= span_cap

    left = _restricted_lcs(v, w, 0, i0, 0, j0, allowed)
    right = _restricted_lcs(v, w, i0 + 1, n, j0 + 1, n, allowed)
    return left + 1 + right
