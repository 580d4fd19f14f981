"""Readability of words in small folded graphs, goodness, and related bounds.

Two deciders are provided. ``quotient`` search reads the word letter by
letter into a growing folded graph, branching only where the next edge is
new, and prunes on the volume and rank budgets. ``exact`` enumeration
builds every connected folded graph within the budget (up to isomorphism),
keeps the ones meeting the definition, and collects every word they read.
The exact route is the reference oracle and is only practical for small
volume budgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import CapabilityError
from .graphs import LabeledGraph, folded_code, read_word
from .words import Word, check_rank, inverse, is_cyclically_reduced, is_freely_reduced, letters

MODES = ("quotient", "exact")

# largest volume budget accepted by the exact enumerator
EXACT_MAX_VOLUME = 6


@dataclass(frozen=True)
class ReadabilityParams:
    mu: float
    k: int
    L: int | None = None

    def __post_init__(self):
        if not 0 < self.mu < 1:
            raise ValueError(f"mu must lie in (0, 1), got {self.mu}")
        check_rank(self.k)
        if self.L is not None and self.L < 2:
            raise ValueError(f"L must be >= 2, got {self.L}")


@dataclass
class ReadabilityVerdict:
    readable: bool
    witness: LabeledGraph | None
    mode: str

    def __bool__(self) -> bool:
        return self.readable


def volume_budget(mu: float, length: int) -> int:
    # guard against 0.29 * 100 = 28.999... style rounding
    return math.floor(mu * length + 1e-9)


def _limits(params: ReadabilityParams) -> tuple[int, int, bool]:
    """(rank bound, max degree-1 vertices, need a vertex of degree < 2k)."""
    if params.L is None:
        return params.k - 1, 1, False
    return params.L, 2, params.L >= params.k


# --- quotient search -------------------------------------------------------


def _to_graph(out: list[dict[int, int]], k: int, base: int | None) -> LabeledGraph:
    edges = [(u, x, v) for u, m in enumerate(out) for x, v in m.items() if x > 0]
    return LabeledGraph(len(out), tuple(edges), k, base)


def _augment(out: list[dict[int, int]], k: int) -> int | None:
    """Add one edge at a degree-1 vertex so at most one remains; returns the base."""
    leaves = [v for v, m in enumerate(out) if len(m) == 1]
    for u in leaves:
        for x in letters(k):
            if x in out[u]:
                continue
            for v in range(len(out)):
                if -x in out[v] or (v == u and x == -x):
                    continue
                out[u][x] = v
                out[v][-x] = u
                rest = [w for w, m in enumerate(out) if len(m) == 1]
                if len(rest) <= 1:
                    return rest[0] if rest else 0
                del out[u][x]
                del out[v][-x]
    return None


def _quotient_search(
    w: Word,
    k: int,
    budgets: Sequence[int],
    min_len: int,
    max_rank: int,
    max_leaves: int,
    need_low_degree: bool = False,
) -> tuple[LabeledGraph, int] | None:
    """Search for a folded graph reading some prefix of ``w`` of length >= min_len.

    ``budgets[l]`` is the volume budget for the prefix of length l (it must
    be nondecreasing with slope below one). Returns the witness and the
    prefix length it reads.
    """
    out: list[dict[int, int]] = [{}]
    n = len(w)
    edges = 0

    def finish(length: int) -> LabeledGraph | None:
        if edges > budgets[length]:
            return None
        if need_low_degree and all(len(m) >= 2 * k for m in out):
            return None
        leaves = [v for v, m in enumerate(out) if len(m) == 1]
        if len(leaves) <= max_leaves:
            return _to_graph(out, k, leaves[0] if leaves else 0)
        # trimmed quotient has one leaf too many: try a single augmenting edge
        if edges + 1 <= budgets[length] and edges - len(out) + 2 <= max_rank:
            snapshot = [dict(m) for m in out]
            base = _augment(snapshot, k)
            if base is not None:
                return _to_graph(snapshot, k, base)
        return None

    def dfs(i: int, cur: int) -> tuple[LabeledGraph, int] | None:
        nonlocal edges
        while True:
            if i >= min_len:
                g = finish(i)
                if g is not None:
                    return g, i
            if i == n:
                return None
            if w[i] not in out[cur]:
                break
            cur = out[cur][w[i]]
            i += 1
        x = w[i]
        if edges + 1 > budgets[n]:
            return None
        edges += 1
        found = None
        # new vertex; once the rank is used up the path can never return, so
        # every later letter costs a fresh edge
        target = max(min_len, i + 1)
        if edges - len(out) < max_rank or edges + target - (i + 1) <= budgets[target]:
            new = len(out)
            out.append({-x: cur})
            out[cur][x] = new
            found = dfs(i + 1, new)
            del out[cur][x]
            out.pop()
        if found is None and edges - len(out) + 1 <= max_rank:
            # identify with an existing vertex (closes a cycle)
            for v in range(len(out)):
                if -x in out[v]:
                    continue
                out[cur][x] = v
                out[v][-x] = cur
                found = dfs(i + 1, v)
                del out[cur][x]
                del out[v][-x]
                if found is not None:
                    break
        edges -= 1
        return found

    return dfs(0, 0)


# --- exact enumeration -----------------------------------------------------


@lru_cache(maxsize=None)
def folded_graph_library(k: int, max_volume: int, max_rank: int) -> tuple[tuple[dict, ...], ...]:
    """All connected folded graphs with volume <= max_volume and rank <= max_rank.

    Up to isomorphism. Each graph is a tuple of per-vertex maps
    label -> target. Every connected graph with an edge arises from a smaller
    one by adding a single edge, and rank never drops when edges are added,
    so breadth-first growth with rank pruning reaches all of them.
    """
    check_rank(k)
    if max_volume > EXACT_MAX_VOLUME:
        raise CapabilityError(
            f"exact enumeration supports volume budgets up to {EXACT_MAX_VOLUME}, got {max_volume}"
        )
    alphabet = letters(k)
    level = {folded_code([{}]): [{}]}
    library = list(level.values())
    for vol in range(1, max_volume + 1):
        nxt: dict = {}
        for g in level.values():
            nv = len(g)
            rnk = vol - 1 - nv + 1
            for u in range(nv):
                for x in alphabet:
                    if x in g[u]:
                        continue
                    targets = [nv] + (list(range(nv)) if rnk + 1 <= max_rank else [])
                    for v in targets:
                        if v < nv and -x in g[v]:
                            continue
                        h = [dict(m) for m in g]
                        if v == nv:
                            h.append({})
                        h[u][x] = v
                        h[v][-x] = u
                        code = folded_code(h)
                        if code not in nxt:
                            nxt[code] = h
        level = nxt
        library.extend(level.values())
    return tuple(tuple(g) for g in library)


def _valid(g: Sequence[dict], k: int, max_rank: int, max_leaves: int, need_low_degree: bool) -> bool:
    vol = sum(len(m) for m in g) // 2
    if vol - len(g) + 1 > max_rank:
        return False
    if sum(1 for m in g if len(m) == 1) > max_leaves:
        return False
    if need_low_degree and not any(len(m) < 2 * k for m in g):
        return False
    return True


@lru_cache(maxsize=None)
def readable_words(n: int, k: int, budget: int, max_rank: int, max_leaves: int, need_low_degree: bool) -> dict:
    """Map every freely reduced word of length n readable in a valid graph to that graph."""
    found: dict[Word, int] = {}
    library = folded_graph_library(k, budget, max_rank)
    for gi, g in enumerate(library):
        if not _valid(g, k, max_rank, max_leaves, need_low_degree):
            continue
        # every immersed path of length n spells a freely reduced word
        stack = [(v, (), 0) for v in range(len(g))]
        while stack:
            v, word, last = stack.pop()
            if len(word) == n:
                found.setdefault(word, gi)
                continue
            for x, t in g[v].items():
                if x != -last:
                    stack.append((t, word + (x,), x))
    return found


def _exact(w: Word, params: ReadabilityParams, budget: int) -> LabeledGraph | None:
    max_rank, max_leaves, low = _limits(params)
    table = readable_words(len(w), params.k, budget, max_rank, max_leaves, low)
    gi = table.get(tuple(w))
    if gi is None:
        return None
    g = folded_graph_library(params.k, budget, max_rank)[gi]
    leaves = [v for v, m in enumerate(g) if len(m) == 1]
    return _to_graph(list(g), params.k, leaves[0] if leaves else 0)


def count_readable(n: int, params: ReadabilityParams, cyclic_only: bool = True) -> int:
    """Exact number of readable words of length n (cyclically reduced by default)."""
    budget = volume_budget(params.mu, n)
    if n == 0:
        return 0
    max_rank, max_leaves, low = _limits(params)
    table = readable_words(n, params.k, budget, max_rank, max_leaves, low)
    if not cyclic_only:
        return len(table)
    return sum(1 for w in table if is_cyclically_reduced(w))


# --- public deciders -------------------------------------------------------


def _check_word(w: Sequence[int], k: int) -> Word:
    w = tuple(w)
    if not w:
        raise ValueError("readability is defined for nonempty words")
    if not is_freely_reduced(w):
        raise ValueError("word must be freely reduced")
    if any(x == 0 or abs(x) > k for x in w):
        raise ValueError(f"word has letters outside rank {k}")
    return w


def is_mu_readable(w: Sequence[int], params: ReadabilityParams, mode: str = "quotient") -> ReadabilityVerdict:
    """Decide mu-readability (rank <= k-1, at most one degree-1 vertex, the base)."""
    if params.L is not None:
        params = ReadabilityParams(params.mu, params.k)
    return _decide(w, params, mode)


def is_muL_readable(w: Sequence[int], params: ReadabilityParams, mode: str = "quotient") -> ReadabilityVerdict:
    """Decide (mu, L)-readability.

    The quotient search is exact here: the traversed subgraph of any witness
    is again a witness. For L >= k it must also keep a vertex of degree
    < 2k, which it does whenever it is a proper subgraph of the witness.
    """
    if params.L is None:
        raise ValueError("(mu, L)-readability needs L")
    return _decide(w, params, mode)


def _decide(w: Sequence[int], params: ReadabilityParams, mode: str) -> ReadabilityVerdict:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    w = _check_word(w, params.k)
    budget = volume_budget(params.mu, len(w))
    if budget < 1:
        return ReadabilityVerdict(False, None, mode)
    max_rank, max_leaves, low = _limits(params)
    if mode == "exact":
        g = _exact(w, params, budget)
    else:
        budgets = [budget] * (len(w) + 1)
        hit = _quotient_search(w, params.k, budgets, len(w), max_rank, max_leaves, low)
        g = hit[0] if hit else None
    return ReadabilityVerdict(g is not None, g, mode)


def check_witness(g: LabeledGraph, w: Sequence[int], params: ReadabilityParams) -> bool:
    """Re-check every clause of the readability definition for a witness graph."""
    if not g.is_connected() or not g.is_folded():
        return False
    max_rank, max_leaves, low = _limits(params)
    if g.volume > volume_budget(params.mu, len(w)) or g.rank > max_rank:
        return False
    leaves = [v for v in range(g.num_vertices) if g.degree(v) == 1]
    if len(leaves) > max_leaves:
        return False
    if params.L is None and leaves and leaves != [g.base]:
        return False
    if low and not any(g.degree(v) < 2 * params.k for v in range(g.num_vertices)):
        return False
    return read_word(g, w)[0]


def good_subwords(w: Sequence[int]) -> set[Word]:
    """Subwords of length >= |w|/2 of cyclic permutations of w and its inverse."""
    w = tuple(w)
    n = len(w)
    lo = math.ceil(n / 2)
    subs: set[Word] = set()
    for u in (w, inverse(w)):
        doubled = u + u
        for i in range(n):
            for length in range(max(lo, 1), n + 1):
                subs.add(doubled[i:i + length])
    return subs


def is_good(w: Sequence[int], params: ReadabilityParams, mode: str = "quotient") -> bool:
    """(mu, L)-goodness: no long subword of a cyclic permutation of w^{+-1} is readable.

    In quotient mode a single search per starting position covers every
    subword length at once, since a graph reading a word reads its prefixes.
    """
    if params.L is None:
        raise ValueError("goodness needs L")
    w = tuple(w)
    if not w:
        raise ValueError("goodness is defined for nonempty words")
    if not is_cyclically_reduced(w):
        raise ValueError("goodness expects a cyclically reduced word")
    if mode == "exact":
        for v in sorted(good_subwords(w), key=len):
            if volume_budget(params.mu, len(v)) >= 1 and is_muL_readable(v, params, mode).readable:
                return False
        return True
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    n = len(w)
    min_len = max(1, math.ceil(n / 2))
    budgets = [volume_budget(params.mu, length) for length in range(n + 1)]
    if budgets[n] < 1:
        return True
    min_len = max(min_len, next(i for i, b in enumerate(budgets) if b >= 1))
    max_rank, max_leaves, low = _limits(params)
    seen: set[Word] = set()
    for u in (w, inverse(w)):
        doubled = u + u
        for i in range(n):
            v = doubled[i:i + n]
            if v in seen:
                continue
            seen.add(v)
            if _quotient_search(v, params.k, budgets, min_len, max_rank, max_leaves, low):
                return False
    return True


# --- closed-form thresholds and bounds -------------------------------------


def mu_max_AO(k: int) -> float:
    """Upper threshold on mu for generic non-mu-readability: log_{2k}(1 + 1/(4k-4))."""
    check_rank(k)
    return math.log1p(1 / (4 * k - 4)) / math.log(2 * k)


def mu_max_A1(k: int, L: int) -> float:
    check_rank(k)
    inner = 1 / (2 * (2 * k - 1) ** (3 * L) - 2)
    return math.log1p(inner) / math.log(2 * k) / (3 * L)


def bound_lemma_ML(k: int, mu: float, L: int) -> float:
    """Entropy bound for (mu, L)-good words; tends to (mu+1)/2 as k grows."""
    check_rank(k)
    base = math.log(2 * k - 1)
    return ((mu + 1) / 2 * base + 0.5 * math.log(6 * L)) / base


def readable_count_bound(n: int, k: int, mu: float, L: int, C: float = 1.0) -> float:
    """Natural log of C (mu n)^(3L+1) (6L)^n (2k-1)^(mu n)."""
    return (
        math.log(C)
        + (3 * L + 1) * math.log(mu * n)
        + n * math.log(6 * L)
        + mu * n * math.log(2 * k - 1)
    )
