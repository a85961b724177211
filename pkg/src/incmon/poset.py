"""Finite posets stored as a full relation matrix over a fixed linear extension.

Element ``i`` (0-based) of a :class:`Poset` carries the conventional label ``x_{i+1}``;
positions handed around as :class:`~incmon.exact.IndexSet` are 1-based.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from incmon.errors import (
    CycleDetected,
    DuplicateLabel,
    IndexOutOfRange,
    NotAnAntichain,
    UnknownLabel,
)
from incmon.exact import IndexSet


@dataclass(frozen=True)
class Poset:
    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq[i][j] or self.leq[j][i]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse-diagram edges ``(i, j)`` with ``x_i`` covered by ``x_j``."""
        n = self.n
        return [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if self.leq[i][j] and not any(self.lt(i, l) and self.lt(l, j) for l in range(i + 1, j))
        ]

    def minimal(self) -> list[int]:
        return [j for j in range(self.n) if not any(self.lt(i, j) for i in range(self.n))]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not any(self.lt(i, j) for j in range(self.n))]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"no element labelled {label!r}") from None

    def index_set(self, items: Iterable) -> IndexSet:
        """1-based index set from labels or an existing IndexSet."""
        if isinstance(items, IndexSet):
            if items.n != self.n:
                raise IndexOutOfRange(f"index set lives in [{items.n}], poset has {self.n} elements")
            return items
        return IndexSet.of(self.n, (self.index(x) + 1 for x in items))

    def interval(self, i: int, j: int) -> list[int]:
        return [l for l in range(self.n) if self.leq[i][l] and self.leq[l][j]]

    def max_interval_size(self) -> int:
        return max((len(self.interval(i, j)) for i in range(self.n) for j in range(self.n) if self.leq[i][j]), default=0)

    def induced(self, idx: Sequence[int]) -> "Poset":
        idx = sorted(idx)
        return Poset(tuple(self.labels[i] for i in idx), tuple(tuple(self.leq[i][j] for j in idx) for i in idx))

    def dual(self) -> "Poset":
        """Opposite order, reindexed so the identity is again a linear extension."""
        n = self.n
        rev = list(range(n - 1, -1, -1))
        return Poset(tuple(self.labels[i] for i in rev), tuple(tuple(self.leq[j][i] for j in rev) for i in rev))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "covers": [list(c) for c in self.covers()]}

    def to_dot(self, name: str = "P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Antichain:
    poset: Poset
    members: IndexSet

    def __post_init__(self):
        if not is_antichain(self.poset, self.members):
            raise NotAnAntichain(f"{self.members} contains a comparable pair")


@dataclass(frozen=True)
class PosetClass:
    tag: str  # chain | bipartite | complete_bipartite | general
    k: int
    m: int

    def __str__(self):
        if self.tag in ("bipartite", "complete_bipartite"):
            return f"{self.tag}({self.k},{self.m})"
        return self.tag


def build_poset(labels: Sequence[str], cover_relations: Iterable[tuple]) -> Poset:
    """Close ``cover_relations`` (pairs of labels, ``a < b``) and fix a linear extension.

    The extension is Kahn's topological sort, always taking the available
    element that came first in ``labels``.
    """
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        dup = next(x for x in labels if labels.count(x) > 1)
        raise DuplicateLabel(f"label {dup!r} repeated")
    pos = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    succ: list[set[int]] = [set() for _ in range(n)]
    for a, b in cover_relations:
        for x in (a, b):
            if x not in pos:
                raise UnknownLabel(f"cover relation mentions unknown label {x!r}")
        if a == b:
            raise CycleDetected(f"self-loop on {a!r}")
        succ[pos[a]].add(pos[b])

    indeg = [0] * n
    for i in range(n):
        for j in succ[i]:
            indeg[j] += 1
    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    if len(order) != n:
        stuck = [labels[i] for i in range(n) if indeg[i] > 0]
        raise CycleDetected(f"cover relations contain a cycle through {stuck}")

    # reflexive-transitive closure, processed in reverse topological order
    reach = [set() for _ in range(n)]
    for i in reversed(order):
        reach[i] = {i}.union(*(reach[j] for j in succ[i]))
    new = {old: k for k, old in enumerate(order)}
    leq = [[False] * n for _ in range(n)]
    for old in range(n):
        for t in reach[old]:
            leq[new[old]][new[t]] = True
    return Poset(tuple(labels[i] for i in order), tuple(map(tuple, leq)))


def poset_from_json(obj: dict | str) -> Poset:
    if isinstance(obj, str):
        obj = json.loads(obj)
    labels = [str(x) for x in obj["labels"]]
    covers = []
    for i, j in obj.get("covers", []):
        for x in (i, j):
            if not 0 <= x < len(labels):
                raise IndexOutOfRange(f"cover index {x} outside 0..{len(labels) - 1}")
        covers.append((labels[i], labels[j]))
    return build_poset(labels, covers)


def chain(n: int, prefix: str = "x") -> Poset:
    labels = [f"{prefix}{i}" for i in range(1, n + 1)]
    return build_poset(labels, zip(labels, labels[1:]))


def complete_bipartite(k: int, m: int, prefix: str = "x") -> Poset:
    labels = [f"{prefix}{i}" for i in range(1, k + m + 1)]
    return build_poset(labels, [(labels[i], labels[j]) for i in range(k) for j in range(k, k + m)])


def disjoint_union(*posets: Poset) -> Poset:
    labels, covers = [], []
    for p in posets:
        labels += list(p.labels)
        covers += [(p.labels[i], p.labels[j]) for i, j in p.covers()]
    return build_poset(labels, covers)


def is_antichain(p: Poset, s: IndexSet | Iterable) -> bool:
    members = [j - 1 for j in p.index_set(s)]
    return not any(p.comparable(a, b) for a in members for b in members if a < b)


def is_connected(p: Poset) -> bool:
    return len(connected_components(p)) <= 1


def _components(p: Poset) -> list[list[int]]:
    parent = list(range(p.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in p.covers():
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(p.n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def connected_components(p: Poset) -> list[Poset]:
    return [p.induced(g) for g in _components(p)]


def component_indices(p: Poset) -> list[list[int]]:
    """0-based member indices of each connected component, ordered by least member."""
    return _components(p)


def classify(p: Poset) -> PosetClass:
    mins, maxs = set(p.minimal()), set(p.maximal())
    k, m = len(mins), len(maxs)
    # rank 1: every element is exactly one of minimal / maximal
    rank_one = p.n >= 2 and not (mins & maxs) and len(mins | maxs) == p.n
    if rank_one and is_connected(p):
        if all(p.lt(i, j) for i in mins for j in maxs):
            return PosetClass("complete_bipartite", k, m)
        return PosetClass("bipartite", k, m)
    if all(p.comparable(i, j) for i in range(p.n) for j in range(p.n)):
        return PosetClass("chain", k, m)
    return PosetClass("general", k, m)
