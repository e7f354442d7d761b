"""Small undirected graphs with an optional two-colouring."""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass


@dataclass(frozen=True)
class IncidenceGraph:
    """Graph on vertices ``0..n-1``; ``parts[v]`` is 0/1 for bipartite graphs."""

    adj: tuple[frozenset[int], ...]
    parts: tuple[int, ...] | None = None
    names: tuple[str, ...] | None = None

    @classmethod
    def from_edges(cls, n: int, edges, parts=None, names=None) -> "IncidenceGraph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(frozenset(a) for a in adj),
                   tuple(parts) if parts is not None else None,
                   tuple(names) if names is not None else None)

    @property
    def n(self) -> int:
        return len(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def name(self, v: int) -> str:
        return self.names[v] if self.names else str(v)

    def two_colouring(self) -> list[int] | None:
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if colour[w] < 0:
                        colour[w] = 1 - colour[u]
                        queue.append(w)
                    elif colour[w] == colour[u]:
                        return None
        return colour

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def girth(self) -> int | None:
        best = None
        for s in range(self.n):
            dist = [-1] * self.n
            parent = [-1] * self.n
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        cyc = dist[u] + dist[w] + 1
                        if best is None or cyc < best:
                            best = cyc
        return best

    def matrix(self) -> list[list[int]]:
        return [[int(v in self.adj[u]) for v in range(self.n)] for u in range(self.n)]


def matrix_csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def heawood_graph() -> IncidenceGraph:
    """Incidence graph of the Fano plane (points 0..6, lines 7..13)."""
    lines = [{(i + d) % 7 for d in (0, 1, 3)} for i in range(7)]
    edges = [(p, 7 + k) for k, line in enumerate(lines) for p in line]
    return IncidenceGraph.from_edges(14, edges, parts=[0] * 7 + [1] * 7)
