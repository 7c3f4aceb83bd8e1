"""
Disjoint-set forest with path compression and union by rank.
"""
from typing import Dict, Hashable, Iterable, List


class UnionFind:
    """Union-find over an explicit, fixed set of hashable elements."""

    def __init__(self, elements: Iterable[Hashable]):
        self.parent: Dict[Hashable, Hashable] = {x: x for x in elements}
        self.rank: Dict[Hashable, int] = {x: 0 for x in self.parent}

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # compress
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Hashable, y: Hashable) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def union_all(self, items: List[Hashable]) -> None:
        """Merge every element of `items` into one class."""
        for other in items[1:]:
            self.union(items[0], other)

    def classes(self) -> List[List[Hashable]]:
        """Equivalence classes, in first-seen order of the element iteration."""
        groups: Dict[Hashable, List[Hashable]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())
