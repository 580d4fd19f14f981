"""Reduced words in the free group F(a_1, ..., a_k).

Words are plain tuples of nonzero signed integers: ``i`` stands for the
generator a_i and ``-i`` for its inverse. The rank ``k`` travels alongside
as an integer.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Hashable, Iterator, Sequence

import numpy as np

Word = tuple[int, ...]

EMPTY_WORD_TEXT = "ε"


def letters(k: int) -> list[int]:
    """The 2k letters in lexicographic (integer) order."""
    check_rank(k)
    return list(range(-k, 0)) + list(range(1, k + 1))


def check_rank(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise ValueError(f"rank k must be an integer >= 2, got {k!r}")


def check_letters(seq: Sequence[int], k: int) -> None:
    for x in seq:
        if x == 0 or abs(x) > k:
            raise ValueError(f"invalid letter {x} for rank {k}")


# --- text format -----------------------------------------------------------


def format_word(w: Sequence[int], k: int) -> str:
    if not w:
        return EMPTY_WORD_TEXT
    if k <= 26:
        return "".join(
            chr(ord("a") + x - 1) if x > 0 else chr(ord("A") - x - 1) for x in w
        )
    return " ".join(str(x) for x in w)


def parse_word(text: str, k: int) -> Word:
    """Parse compact (``abAB``) or generic (``1 2 -1 -2``) word text."""
    text = text.strip()
    if text in ("", EMPTY_WORD_TEXT):
        return ()
    if any(ch.isdigit() for ch in text):
        try:
            w = tuple(int(tok) for tok in text.replace(",", " ").split())
        except ValueError:
            raise ValueError(f"cannot parse word {text!r}") from None
    else:
        out = []
        for ch in text:
            if "a" <= ch <= "z":
                out.append(ord(ch) - ord("a") + 1)
            elif "A" <= ch <= "Z":
                out.append(-(ord(ch) - ord("A") + 1))
            else:
                raise ValueError(f"invalid character {ch!r} in word {text!r}")
        w = tuple(out)
    check_letters(w, k)
    return w


# --- reduction -------------------------------------------------------------


def free_reduce(seq: Sequence[int], k: int) -> Word:
    check_letters(seq, k)
    stack: list[int] = []
    for x in seq:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_freely_reduced(w: Sequence[int]) -> bool:
    return all(w[i + 1] != -w[i] for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    if not is_freely_reduced(w):
        return False
    return len(w) < 2 or w[-1] != -w[0]


def cyclic_reduce(w: Sequence[int]) -> Word:
    """Strip inverse first/last letter pairs; the result is conjugate to ``w``."""
    if not is_freely_reduced(w):
        raise ValueError("cyclic_reduce expects a freely reduced word")
    i, j = 0, len(w)
    while j - i >= 2 and w[j - 1] == -w[i]:
        i += 1
        j -= 1
    return tuple(w[i:j])


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def rotations(w: Sequence[int]) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(len(w))] if w else [()]


# --- counting --------------------------------------------------------------


def count_cyclic(n: int, k: int) -> int:
    """Number of cyclically reduced words of length ``n`` (Rivin's formula)."""
    check_rank(k)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    return (2 * k - 1) ** n + 1 + (k - 1) * (1 + (-1) ** n)


def count_freely_reduced(n: int, k: int) -> int:
    check_rank(k)
    if n == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (n - 1)


# --- enumeration -----------------------------------------------------------


def _extension_table(k: int) -> np.ndarray:
    # row (prev + k): the 2k-1 letters allowed after prev, ascending
    table = np.zeros((2 * k + 1, 2 * k - 1), dtype=np.int8)
    for prev in letters(k):
        table[prev + k] = [x for x in letters(k) if x != -prev]
    return table


def _extend(block: np.ndarray, steps: int, table: np.ndarray) -> np.ndarray:
    width = table.shape[1]
    for _ in range(steps):
        prev = block[:, -1].astype(np.int64) + (table.shape[0] - 1) // 2
        nxt = table[prev].reshape(-1)
        block = np.repeat(block, width, axis=0)
        block = np.concatenate([block, nxt[:, None]], axis=1)
    return block


def _prefixes(q: int, k: int) -> Iterator[Word]:
    if q == 0:
        yield ()
        return
    for p in _prefixes(q - 1, k):
        for x in letters(k):
            if not p or p[-1] != -x:
                yield p + (x,)


def enumerate_cyclic_blocks(n: int, k: int, block_rows: int = 200_000) -> Iterator[np.ndarray]:
    """Yield int8 arrays whose rows are the cyclically reduced words of length n.

    Rows appear in lexicographic order across all blocks. Work is sharded by
    a fixed-length prefix so that each block stays below ``block_rows``.
    """
    check_rank(k)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int8)
        return
    table = _extension_table(k)
    q = 1
    while q < n and (2 * k - 1) ** (n - q) > block_rows:
        q += 1
    for p in _prefixes(q, k):
        block = _extend(np.array([p], dtype=np.int8), n - q, table)
        if n >= 2:
            block = block[block[:, -1] != -block[:, 0]]
        if len(block):
            yield block


def enumerate_cyclic(n: int, k: int) -> Iterator[Word]:
    """Every cyclically reduced word of length n once, lexicographically."""
    for block in enumerate_cyclic_blocks(n, k):
        for row in block.tolist():
            yield tuple(row)


def enumerate_freely_reduced(n: int, k: int) -> Iterator[Word]:
    check_rank(k)
    yield from _prefixes(n, k)


# --- sampling --------------------------------------------------------------


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_cyclic(n: int, k: int, seed=None) -> Word:
    """Uniform cyclically reduced word of length n.

    Samples a uniform freely reduced word and rejects outcomes whose last
    letter cancels the first; conditioning keeps the result uniform.
    """
    check_rank(k)
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = as_rng(seed)
    alphabet = letters(k)
    while True:
        idx = rng.integers(0, 2 * k)
        w = [alphabet[idx]]
        steps = rng.integers(0, 2 * k - 1, size=n - 1)
        for s in steps:
            allowed_prev = -w[-1]
            # skip the cancelling letter by shifting indices past it
            j = alphabet.index(allowed_prev)
            w.append(alphabet[s if s < j else s + 1])
        if n == 1 or w[-1] != -w[0]:
            return tuple(w)


# --- transfer-matrix counting ----------------------------------------------


@dataclass(frozen=True)
class Automaton:
    """Deterministic letter-consuming machine; ``step`` returns None to reject."""

    start: Hashable
    step: Callable[[Hashable, int], Hashable | None]
    accept: Callable[[Hashable], bool] = lambda state: True


def accept_all() -> Automaton:
    return Automaton(start=0, step=lambda s, x: 0)


def avoid_factor(factor: Sequence[int]) -> Automaton:
    """Machine rejecting words that contain ``factor`` (state: recent suffix)."""
    factor = tuple(factor)
    span = len(factor) - 1

    def step(state, x):
        window = state + (x,)
        if window[-len(factor):] == factor:
            return None
        return window[-span:] if span else ()

    return Automaton(start=(), step=step)


def count_with_prefix_constraint(n: int, k: int, machine: Automaton) -> int:
    """Exact count of cyclically reduced words of length n accepted by ``machine``.

    Dynamic programming over (machine state, first letter, last letter).
    """
    check_rank(k)
    if n == 0:
        return 1 if machine.accept(machine.start) else 0
    layer: dict = defaultdict(int)
    for x in letters(k):
        s = machine.step(machine.start, x)
        if s is not None:
            layer[(s, x, x)] += 1
    for _ in range(n - 1):
        nxt: dict = defaultdict(int)
        for (s, first, last), c in layer.items():
            for x in letters(k):
                if x == -last:
                    continue
                s2 = machine.step(s, x)
                if s2 is not None:
                    nxt[(s2, first, x)] += c
        layer = nxt
    total = 0
    for (s, first, last), c in layer.items():
        if (n == 1 or last != -first) and machine.accept(s):
            total += c
    return total


def log_count(c: int) -> float:
    """Natural log of a big nonnegative integer; -inf for zero."""
    if c < 0:
        raise ValueError("count must be nonnegative")
    if c == 0:
        return -math.inf
    return math.log(c)


@dataclass
class CountTable:
    entries: dict[int, int]

    def log_value(self, n: int) -> float:
        return log_count(self.entries[n])
