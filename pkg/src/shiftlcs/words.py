"""Words over integer alphabets, shifted pairs, and the coupled generator.

Symbols are 1-based integers in {1..k}. Text I/O maps 'a'..'z' to 1..26
for alphabets up to 26 symbols and uses comma-separated decimals otherwise.
All generators are pure functions of a SeedSpec, so any draw can be replayed
from (master_seed, trial_index) alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_LETTER_TO_SYMBOL = {c: i + 1 for i, c in enumerate(_LETTERS)}


class NotASubsequenceError(ValueError):
    """No strictly increasing embedding of the given word exists in the host."""


@dataclass(frozen=True)
class SeedSpec:
    """Handle for one reproducible random stream.

    The stream is SeedSequence(master_seed, spawn_key=(trial_index, *streams))
    feeding PCG64. Identical specs replay identically; distinct trial indices
    or child ids give independent streams, so parallel fan-out by trial index
    reproduces a serial run exactly.
    """

    master_seed: int
    trial_index: int = 0
    streams: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.trial_index < 0:
            raise ValueError("trial_index must be nonnegative")

    def child(self, *ids: int) -> "SeedSpec":
        """Derive a sub-stream, e.g. one per word inside a trial."""
        return SeedSpec(self.master_seed, self.trial_index, self.streams + ids)

    def rng(self) -> np.random.Generator:
        seq = np.random.SeedSequence(
            self.master_seed, spawn_key=(self.trial_index, *self.streams)
        )
        return np.random.default_rng(seq)

    def echo(self) -> str:
        """Compact replay tag stored alongside Monte Carlo records."""
        tail = "".join(f".{i}" for i in self.streams)
        return f"{self.master_seed}/{self.trial_index}{tail}"


@dataclass(frozen=True)
class Word:
    """A finite sequence of symbols from {1..k}."""

    symbols: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("alphabet size k must be at least 1")
        for s in self.symbols:
            if not 1 <= s <= self.k:
                raise ValueError(f"symbol {s} outside alphabet 1..{self.k}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.symbols[index], self.k)
        return self.symbols[index]

    def window(self, start: int, stop: int) -> "Word":
        """Contiguous subword covering positions [start, stop)."""
        if not 0 <= start <= stop <= len(self.symbols):
            raise ValueError(f"window [{start}, {stop}) out of range")
        return Word(self.symbols[start:stop], self.k)

    def take(self, indices) -> "Word":
        """Subsequence given by a strictly increasing index set."""
        idx = tuple(indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing")
        return Word(tuple(self.symbols[i] for i in idx), self.k)

    def to_text(self) -> str:
        if self.k <= 26:
            return "".join(_LETTERS[s - 1] for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    @classmethod
    def from_text(cls, text: str, k: int | None = None) -> "Word":
        """Parse the letter form (k <= 26) or a comma-separated decimal list."""
        text = text.strip()
        if text == "":
            return cls((), k if k is not None else 26)
        if all(c in _LETTER_TO_SYMBOL for c in text):
            symbols = tuple(_LETTER_TO_SYMBOL[c] for c in text)
            return cls(symbols, k if k is not None else 26)
        try:
            symbols = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse word from {text!r}") from exc
        return cls(symbols, k if k is not None else max(symbols))


@dataclass(frozen=True)
class ShiftedPair:
    """Two words carved from one source word Z: v = Z[0, n), w = Z[s, n+s).

    The construction forces v's suffix of length n - s to equal w's prefix,
    so the overlap is a common subsequence of length n - s.
    """

    v: Word
    w: Word
    shift: int
    source: Word

    def __post_init__(self) -> None:
        n = len(self.v)
        if len(self.w) != n:
            raise ValueError("v and w must have equal length")
        if not 0 <= self.shift <= n:
            raise ValueError("shift must satisfy 0 <= s <= n")
        if len(self.source) != n + self.shift:
            raise ValueError("source must have length n + s")
        if self.v.symbols != self.source.symbols[:n]:
            raise ValueError("v must equal source[0, n)")
        if self.w.symbols != self.source.symbols[self.shift:self.shift + n]:
            raise ValueError("w must equal source[s, n + s)")

    @property
    def n(self) -> int:
        return len(self.v)

    @property
    def alpha(self) -> float:
        """Shift as a fraction of the word length (0 for the empty pair)."""
        return self.shift / self.n if self.n else 0.0

    @property
    def overlap_length(self) -> int:
        return self.n - self.shift


def random_word(k: int, n: int, seed: SeedSpec) -> Word:
    """Word of length n with i.i.d. uniform symbols from {1..k}."""
    if k < 1:
        raise ValueError("alphabet size k must be at least 1")
    if n < 0:
        raise ValueError("length n must be nonnegative")
    symbols = tuple(seed.rng().integers(1, k + 1, size=n).tolist())
    return Word(symbols, k)


def make_shifted_pair(k: int, n: int, s: int, seed: SeedSpec) -> ShiftedPair:
    """Draw Z uniform on {1..k}^(n+s) and window it into a ShiftedPair."""
    if not 0 <= s <= n:
        raise ValueError("shift must satisfy 0 <= s <= n")
    source = random_word(k, n + s, seed)
    return ShiftedPair(
        v=source.window(0, n),
        w=source.window(s, n + s),
        shift=s,
        source=source,
    )


_DRAW_BATCH = 64


def coupled_generate(
    k: int,
    n: int,
    s: int,
    indices,
    seed: SeedSpec,
) -> tuple[Word, tuple[int, ...]]:
    """Fill the source word placeholder by placeholder, coupled to a scan.

    The positions `indices` (strictly increasing, all < n) select symbols of
    v = Z[0, n). A separate suffix region of w = Z[s, n+s) is consumed by a
    scanning stream: for each selected symbol, fresh symbols are drawn until
    one matches it, and every drawn symbol fills the next empty placeholder
    of the suffix region (drawn symbols are discarded once that region is
    full). Placeholders not touched by the scan are filled with fresh draws.

    Returns the completed source word, which is distributed uniformly on
    {1..k}^(n+s), together with the waiting counts, one per selected symbol.
    Each count is at least 1 and follows the geometric law with success
    probability 1/k.
    """
    if k < 1:
        raise ValueError("alphabet size k must be at least 1")
    if not 0 <= s <= n:
        raise ValueError("shift must satisfy 0 <= s <= n")
    idx = tuple(indices)
    if not idx:
        raise ValueError("index set must be nonempty")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError("indices must be strictly increasing")
    if idx[0] < 0 or idx[-1] >= n:
        raise ValueError("indices must lie in [0, n)")

    total = n + s
    t = len(idx)
    # Scanned region: w[b_start, n) as source positions [s + b_start, n + s).
    b_start = max(idx[-1] - t + 1 - s, 0)
    scan_pos = s + b_start

    rng = seed.rng()
    buf = rng.integers(1, k + 1, size=_DRAW_BATCH).tolist()
    buf_at = 0

    def draw() -> int:
        nonlocal buf, buf_at
        if buf_at == len(buf):
            buf = rng.integers(1, k + 1, size=_DRAW_BATCH).tolist()
            buf_at = 0
        val = buf[buf_at]
        buf_at += 1
        return val

    z = [0] * total
    waits = []
    for pa in idx:
        if z[pa] == 0:
            z[pa] = draw()
        target = z[pa]
        count = 0
        while True:
            r = draw()
            count += 1
            while scan_pos < total and z[scan_pos] != 0:
                scan_pos += 1
            if scan_pos < total:
                z[scan_pos] = r
                scan_pos += 1
            if r == target:
                break
        waits.append(count)
    for pos in range(total):
        if z[pos] == 0:
            z[pos] = draw()
    return Word(tuple(z), k), tuple(waits)


def is_subsequence(sub: Word, host: Word) -> bool:
    """True iff a strictly increasing embedding of sub into host exists."""
    it = iter(host.symbols)
    return all(s in it for s in sub.symbols)


def delete_embedded(host: Word, sub: Word) -> Word:
    """Remove the leftmost greedy embedding of sub from host.

    Raises NotASubsequenceError when sub does not embed into host.
    """
    removed = set()
    pos = 0
    hs = host.symbols
    for s in sub.symbols:
        while pos < len(hs) and hs[pos] != s:
            pos += 1
        if pos == len(hs):
            raise NotASubsequenceError("word is not a subsequence of the host")
        removed.add(pos)
        pos += 1
    kept = tuple(sym for i, sym in enumerate(hs) if i not in removed)
    return Word(kept, host.k)


def format_word_lines(k: int, words) -> str:
    """Serialize words one per line under a `k=<int>` header."""
    lines = [f"k={k}"]
    for word in words:
        if word.k != k:
            raise ValueError("all words must share the header alphabet size")
        lines.append(word.to_text())
    return "\n".join(lines) + "\n"


def parse_word_lines(text: str) -> tuple[int, list[Word]]:
    """Parse the one-word-per-line format produced by format_word_lines."""
    lines = [line for line in text.splitlines() if line.strip() != ""]
    if not lines or not lines[0].startswith("k="):
        raise ValueError("word file must start with a k=<int> header")
    try:
        k = int(lines[0][2:])
    except ValueError as exc:
        raise ValueError("malformed k=<int> header") from exc
    return k, [Word.from_text(line, k=k) for line in lines[1:]]
