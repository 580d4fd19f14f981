"""Symmetrized relator sets, pieces and C'(lambda), plus per-relator predicates."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import CapabilityError
from .words import Word, check_rank, cyclic_reduce, free_reduce, inverse, is_cyclically_reduced, rotations

# Whitehead enumeration grows like 2k * 4^(k-1)
MAX_WHITEHEAD_RANK = 4


@dataclass(frozen=True)
class Presentation:
    k: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        check_rank(self.k)
        rels = tuple(tuple(r) for r in self.relators)
        for r in rels:
            if not r:
                raise ValueError("relators must be nonempty")
            if any(x == 0 or abs(x) > self.k for x in r):
                raise ValueError(f"relator {r} has letters outside rank {self.k}")
            if not is_cyclically_reduced(r):
                raise ValueError(f"relator {r} is not cyclically reduced")
        object.__setattr__(self, "relators", rels)


@dataclass
class PieceReport:
    max_piece: int
    ratios: list[float]
    satisfied: bool
    lam: float


def symmetrize(p: Presentation | Iterable[Sequence[int]]) -> set[Word]:
    rels = p.relators if isinstance(p, Presentation) else [tuple(r) for r in p]
    out: set[Word] = set()
    for r in rels:
        out.update(rotations(r))
        out.update(rotations(inverse(r)))
    return out


def _lcp(u: Sequence[int], v: Sequence[int]) -> int:
    i = 0
    for a, b in zip(u, v):
        if a != b:
            break
        i += 1
    return i


def is_c_prime(p: Presentation, lam: float) -> PieceReport:
    """Check C'(lam): every piece p in a relator r has |p| < lam |r|.

    A piece is a maximal common prefix of two distinct symmetrized elements.
    In sorted order, the longest common prefix of an element with any other
    element is attained at one of its neighbours.
    """
    if not 0 < lam <= 1:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    sym = sorted(symmetrize(p))
    best = {}
    for a, b in zip(sym, sym[1:]):
        c = _lcp(a, b)
        best[a] = max(best.get(a, 0), c)
        best[b] = max(best.get(b, 0), c)
    ratios = []
    satisfied = True
    for r in p.relators:
        elems = set(rotations(r)) | set(rotations(inverse(r)))
        piece = max((best.get(e, 0) for e in elems), default=0)
        ratios.append(piece / len(r))
        if not piece < lam * len(r):
            satisfied = False
    return PieceReport(max(best.values(), default=0), ratios, satisfied, lam)


def piece_threshold(lam: float, n: int) -> int:
    """Shortest piece length that violates C'(lam) in a relator of length n."""
    length = 1
    while length < lam * n:
        length += 1
    return length


class StreamingCPrime:
    """Incremental C'(lam) check for relators of one common length.

    Violation occurs exactly when two distinct symmetrized elements share a
    prefix of length ``piece_threshold(lam, n)``.
    """

    def __init__(self, lam: float, n: int):
        self.n = n
        self.span = piece_threshold(lam, n)
        self.prefixes: dict[Word, Word] = {}
        self.ok = True

    def add(self, r: Sequence[int]) -> bool:
        if len(r) != self.n:
            raise ValueError("streaming check needs relators of equal length")
        if self.span > self.n:
            return self.ok
        for e in symmetrize([r]):
            key = e[: self.span]
            prev = self.prefixes.setdefault(key, e)
            if prev != e:
                self.ok = False
        return self.ok


def is_proper_power(w: Sequence[int]) -> bool:
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    w = tuple(w)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return True
    return False


def coverage_window(length: int) -> int:
    return max(1, math.ceil(length / 6))


def covers_all_generators(r: Sequence[int], k: int) -> bool:
    """Every cyclic window of length ceil(|r|/6) involves all k generators."""
    n = len(r)
    if n == 0:
        raise ValueError("empty word")
    win = coverage_window(n)
    doubled = tuple(r) + tuple(r)
    need = set(range(1, k + 1))
    return all({abs(x) for x in doubled[i:i + win]} >= need for i in range(n))


# --- primitivity -------------------------------------------------------------


def _whitehead_maps(k: int):
    """Type-II Whitehead automorphisms as letter -> image word tables."""
    for x in [s * i for i in range(1, k + 1) for s in (1, -1)]:
        others = [i for i in range(1, k + 1) if i != abs(x)]
        for choice in itertools.product(range(4), repeat=len(others)):
            if not any(choice):
                continue
            table: dict[int, Word] = {abs(x): (abs(x),)}
            for y, c in zip(others, choice):
                # y -> y, yx, x^-1 y, x^-1 y x
                img = {0: (y,), 1: (y, x), 2: (-x, y), 3: (-x, y, x)}[c]
                table[y] = img
            full = {}
            for i, img in table.items():
                full[i] = img
                full[-i] = inverse(img)
            yield full


def _apply(table: dict[int, Word], w: Sequence[int], k: int) -> Word:
    image = [x for letter in w for x in table[letter]]
    return cyclic_reduce(free_reduce(image, k))


def is_primitive(w: Sequence[int], k: int, max_rank: int = MAX_WHITEHEAD_RANK) -> bool:
    """Whether ``w`` belongs to some free basis of F(a_1, ..., a_k).

    Abelianization gcd filter, then Whitehead peak reduction on the cyclic
    word: a primitive element of cyclic length > 1 always admits a strictly
    length-reducing Whitehead automorphism.
    """
    check_rank(k)
    if k > max_rank:
        raise CapabilityError(f"primitivity test enumerates automorphisms only for k <= {max_rank}")
    w = free_reduce(w, k)
    if not w:
        return False
    exps = [0] * (k + 1)
    for x in w:
        exps[abs(x)] += 1 if x > 0 else -1
    if reduce(math.gcd, exps[1:]) != 1:
        return False
    w = cyclic_reduce(w)
    maps = list(_whitehead_maps(k))
    while len(w) > 1:
        for table in maps:
            v = _apply(table, w, k)
            if len(v) < len(w):
                w = v
                break
        else:
            return False
    return True


def lambda_bound(mu: float, L: int) -> tuple[float, bool]:
    """mu / (15 L + 3 mu) and whether it stays <= 1/6."""
    if not 0 < mu < 1:
        raise ValueError("mu must lie in (0, 1)")
    if L < 2:
        raise ValueError("L must be >= 2")
    value = mu / (15 * L + 3 * mu)
    return value, value <= 1 / 6
