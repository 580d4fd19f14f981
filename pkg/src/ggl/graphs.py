"""Finite labelled graphs over the free-group alphabet and Stallings folding."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _orient(u: int, label: int, v: int) -> tuple[int, int, int]:
    # store each unordered edge with a positive label
    return (u, label, v) if label > 0 else (v, -label, u)


@dataclass(frozen=True)
class LabeledGraph:
    """Graph with edges labelled by free generators.

    ``edges`` lists each unordered edge once as ``(source, label, target)``
    with ``label > 0``; the reverse edge ``(target, -label, source)`` is
    implicit. Parallel edges are allowed until the graph is folded.
    """

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    k: int
    base: int | None = None
    _out: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        edges = tuple(_orient(*e) for e in self.edges)
        for u, label, v in edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge {(u, label, v)} references a missing vertex")
            if label == 0 or abs(label) > self.k:
                raise ValueError(f"invalid label {label} for rank {self.k}")
        if self.base is not None and not 0 <= self.base < self.num_vertices:
            raise ValueError("base vertex out of range")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_word_path(cls, w: Sequence[int], k: int) -> "LabeledGraph":
        """Path graph spelling ``w`` from vertex 0."""
        return cls(len(w) + 1, tuple((i, x, i + 1) for i, x in enumerate(w)), k, base=0)

    @classmethod
    def wedge(cls, labels: Iterable[int], k: int) -> "LabeledGraph":
        return cls(1, tuple((0, x, 0) for x in labels), k, base=0)

    def directed_edges(self) -> list[tuple[int, int, int]]:
        out = []
        for u, label, v in self.edges:
            out.append((u, label, v))
            out.append((v, -label, u))
        return out

    def out_map(self) -> dict[int, dict[int, list[int]]]:
        if self._out is None:
            out: dict[int, dict[int, list[int]]] = {v: {} for v in range(self.num_vertices)}
            for u, label, v in self.directed_edges():
                out[u].setdefault(label, []).append(v)
            object.__setattr__(self, "_out", out)
        return self._out

    @property
    def volume(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(len(ts) for ts in self.out_map()[v].values())

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return False
        seen = {0}
        stack = [0]
        out = self.out_map()
        while stack:
            u = stack.pop()
            for ts in out[u].values():
                for v in ts:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
        return len(seen) == self.num_vertices

    @property
    def rank(self) -> int:
        if not self.is_connected():
            raise ValueError("rank is defined for connected graphs only")
        return self.volume - self.num_vertices + 1

    def is_folded(self) -> bool:
        return all(len(ts) == 1 for m in self.out_map().values() for ts in m.values())

    def to_json(self) -> dict:
        return {"vertices": self.num_vertices, "base": self.base, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict | str, k: int) -> "LabeledGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], tuple(tuple(e) for e in data["edges"]), k, data.get("base"))


def rank(g: LabeledGraph) -> int:
    return g.rank


def volume(g: LabeledGraph) -> int:
    return g.volume


def degree(g: LabeledGraph, v: int) -> int:
    return g.degree(v)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True


def fold(g: LabeledGraph, order: Sequence[int] | None = None) -> LabeledGraph:
    """Stallings-fold ``g``.

    ``order`` optionally permutes the edge list before folding, which changes
    the order in which clashes are resolved but not the result up to
    isomorphism.
    """
    edges = list(g.edges)
    if order is not None:
        edges = [edges[i] for i in order]
    uf = _UnionFind(g.num_vertices)
    while True:
        seen: dict[tuple[int, int], int] = {}
        clash = None
        for u, label, v in edges:
            u, v = uf.find(u), uf.find(v)
            for src, lab, dst in ((u, label, v), (v, -label, u)):
                prev = seen.setdefault((src, lab), dst)
                if prev != dst:
                    clash = (prev, dst)
                    break
            if clash:
                break
        if clash is None:
            break
        uf.union(*clash)
    roots = sorted({uf.find(v) for v in range(g.num_vertices)})
    index = {r: i for i, r in enumerate(roots)}
    folded = sorted({(index[uf.find(u)], label, index[uf.find(v)]) for u, label, v in edges})
    base = index[uf.find(g.base)] if g.base is not None else None
    return LabeledGraph(len(roots), tuple(folded), g.k, base)


def read_word(g: LabeledGraph, w: Sequence[int]) -> tuple[bool, int | None]:
    """Whether some vertex starts a path spelling ``w``; returns the start vertex.

    Requires a folded graph, so each letter has at most one continuation.
    For freely reduced ``w`` the path is automatically immersed.
    """
    if not g.is_folded():
        raise ValueError("read_word requires a folded graph")
    out = g.out_map()
    for start in range(g.num_vertices):
        v = start
        for x in w:
            ts = out[v].get(x)
            if not ts:
                break
            v = ts[0]
        else:
            return True, start
    return False, None


# --- isomorphism -----------------------------------------------------------


def _refine(g: LabeledGraph) -> list[int]:
    colors = [0] * g.num_vertices
    out = g.out_map()
    for _ in range(g.num_vertices + 1):
        sigs = []
        for v in range(g.num_vertices):
            nbrs = sorted((label, colors[t]) for label, ts in out[v].items() for t in ts)
            sigs.append((colors[v], tuple(nbrs)))
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def canonical_form(g: LabeledGraph) -> tuple:
    """Isomorphism invariant that is complete for the tiny graphs used here.

    Colour refinement by labelled neighbourhoods, then an exhaustive search
    over orderings compatible with the colour classes.
    """
    colors = _refine(g)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    best = None
    for perms in itertools.product(*(itertools.permutations(cl) for cl in ordered)):
        relabel = {}
        for v in itertools.chain.from_iterable(perms):
            relabel[v] = len(relabel)
        code = tuple(sorted((relabel[u], label, relabel[v]) for u, label, v in g.edges))
        if best is None or code < best:
            best = code
    return (g.num_vertices, best)


def folded_code(out: Sequence[dict[int, int]]) -> tuple:
    """Canonical code of a connected folded graph given as transition maps.

    In a folded graph a start vertex fixes a unique breadth-first numbering,
    so the minimum over start vertices is an exact isomorphism invariant.
    """
    best = None
    for start in range(len(out)):
        index = {start: 0}
        order = [start]
        for u in order:
            for label in sorted(out[u]):
                t = out[u][label]
                if t not in index:
                    index[t] = len(order)
                    order.append(t)
        code = tuple(
            sorted((index[u], label, index[t]) for u in range(len(out)) for label, t in out[u].items() if label > 0)
        )
        if best is None or code < best:
            best = code
    return (len(out), best)


def isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


def edge_subgraph(g: LabeledGraph, keep: Sequence[int]) -> LabeledGraph:
    """Subgraph spanned by the chosen edge indices (vertices renumbered)."""
    chosen = [g.edges[i] for i in keep]
    verts = sorted({u for u, _, _ in chosen} | {v for _, _, v in chosen})
    if not verts:
        verts = [0]
    index = {v: i for i, v in enumerate(verts)}
    return LabeledGraph(len(verts), tuple((index[u], label, index[v]) for u, label, v in chosen), g.k)
