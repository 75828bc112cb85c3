"""Partition of automaton states into regions.

Two states share a region when an immediate transition links them.  Within
a region the immediate transitions must form an acyclic graph; its
topological order is the order in which state environments are built.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..frontend.syntax import Automaton


class CyclicRegion(Exception):
    def __init__(self, automaton: str, cycle: list[str], span=None):
        self.automaton = automaton
        self.cycle = cycle
        self.span = span
        path = " -> ".join(cycle + cycle[:1])
        super().__init__(f"immediate transitions of automaton {automaton!r} form a cycle: {path}")


class UnionFind:
    def __init__(self, items=()):
        self.parent: dict = {}
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra


@dataclass
class RegionPartition:
    region_of: dict[str, int]
    orders: list[list[str]]

    @property
    def order(self) -> list[str]:
        """All states, each region topologically sorted."""
        return [s for region in self.orders for s in region]

    def members(self, region: int) -> set[str]:
        return set(self.orders[region])


def compute_regions(a: Automaton) -> RegionPartition:
    names = [s.name for s in a.states]
    uf = UnionFind(names)
    succ: dict[str, list[str]] = {n: [] for n in names}
    indeg = dict.fromkeys(names, 0)
    for t in a.immediate:
        uf.union(t.source, t.target)
        succ[t.source].append(t.target)
        indeg[t.target] += 1

    region_ids: dict[str, int] = {}
    region_of: dict[str, int] = {}
    for n in names:
        root = uf.find(n)
        region_of[n] = region_ids.setdefault(root, len(region_ids))

    orders: list[list[str]] = [[] for _ in region_ids]
    ready = [n for n in names if indeg[n] == 0]
    rank = {n: i for i, n in enumerate(names)}
    while ready:
        ready.sort(key=rank.__getitem__)
        n = ready.pop(0)
        orders[region_of[n]].append(n)
        for m in succ[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)

    if sum(map(len, orders)) != len(names):
        left = [n for n in names if indeg[n] > 0]
        span = next((t.span for t in a.immediate if t.source in left), a.span)
        raise CyclicRegion(a.name, _find_cycle(left, succ), span)
    return RegionPartition(region_of, orders)


def _find_cycle(nodes: list[str], succ: dict[str, list[str]]) -> list[str]:
    inside = set(nodes)
    color: dict[str, int] = {}
    stack: list[str] = []

    def dfs(n: str):
        color[n] = 1
        stack.append(n)
        for m in succ[n]:
            if m not in inside:
                continue
            if color.get(m) == 1:
                return stack[stack.index(m):]
            if m not in color:
                found = dfs(m)
                if found:
                    return found
        color[n] = 2
        stack.pop()
        return None

    for n in nodes:
        if n not in color:
            found = dfs(n)
            if found:
                return list(found)
    return list(nodes)
