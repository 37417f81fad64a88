"""n-graphs: directed multigraphs on vertices 1..n without tadpoles.

Connected components are always listed by increasing lowest vertex label.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import perm as P

ENUMERATION_BOUND = 5


class UndefinedPermutation(ValueError):
    """rho is only defined when the clasped graph is acyclic."""


@dataclass(frozen=True, order=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        edges = tuple(sorted((int(a), int(b)) for a, b in self.edges))
        for a, b in edges:
            if a == b:
                raise ValueError(f"tadpole at vertex {a}")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge {a}->{b} outside 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def n_vertices(self) -> int:
        return self.n

    def __str__(self):
        return f"{self.n}; " + ", ".join(f"{a}->{b}" for a, b in self.edges)

    @classmethod
    def parse(cls, text: str) -> "Graph":
        """Read the ``n; i->j, i->j`` format."""
        head, _, body = text.partition(";")
        try:
            n = int(head.strip())
        except ValueError:
            raise ValueError(f"bad vertex count in graph {text!r}") from None
        edges = []
        for chunk in filter(None, (c.strip() for c in body.split(","))):
            m = re.fullmatch(r"(\d+)\s*->\s*(\d+)", chunk)
            if not m:
                raise ValueError(f"bad edge {chunk!r} in graph {text!r}")
            edges.append((int(m.group(1)), int(m.group(2))))
        return cls(n, tuple(edges))

    def remove_edge(self, e) -> "Graph":
        edges = list(self.edges)
        edges.remove(tuple(e))
        return Graph(self.n, tuple(edges))


def edgeless(n: int) -> Graph:
    return Graph(n, ())


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def is_acyclic(g: Graph) -> bool:
    """Forest test on the underlying undirected multigraph (double edges count)."""
    parent = list(range(g.n + 1))
    for a, b in g.edges:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def connected_components(g: Graph) -> list[frozenset[int]]:
    parent = list(range(g.n + 1))
    for a, b in g.edges:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for v in range(1, g.n + 1):
        groups.setdefault(_find(parent, v), set()).add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def component_index(g: Graph) -> dict[int, int]:
    """vertex -> 1-based index of its component."""
    return {v: k for k, comp in enumerate(connected_components(g), 1) for v in comp}


def n_components(g: Graph) -> int:
    return len(connected_components(g))


@dataclass(frozen=True)
class Cocomposition:
    outer: Graph
    inner: tuple[Graph, ...]
    sizes: tuple[int, ...]


def group_of(sizes: Sequence[int]) -> dict[int, int]:
    """vertex -> group index for consecutive groups of the given sizes."""
    out, v = {}, 1
    for k, m in enumerate(sizes, 1):
        for _ in range(m):
            out[v] = k
            v += 1
    return out


def cocompose(g: Graph, sizes: Sequence[int]) -> Cocomposition:
    """Clasp consecutive groups into single vertices.

    Sizes of zero are accepted: an empty group becomes an isolated outer vertex
    with an empty inner graph.
    """
    sizes = tuple(int(m) for m in sizes)
    if any(m < 0 for m in sizes) or sum(sizes) != g.n:
        raise ValueError(f"partition {sizes} does not match {g.n} vertices")
    grp = group_of(sizes)
    starts = [sum(sizes[:k]) for k in range(len(sizes))]
    outer, inner = [], [[] for _ in sizes]
    for a, b in g.edges:
        ga, gb = grp[a], grp[b]
        if ga == gb:
            s = starts[ga - 1]
            inner[ga - 1].append((a - s, b - s))
        else:
            outer.append((ga, gb))
    return Cocomposition(
        Graph(len(sizes), tuple(outer)),
        tuple(Graph(m, tuple(e)) for m, e in zip(sizes, inner)),
        sizes,
    )


def externally_connected(g: Graph, sizes: Sequence[int], k: int) -> frozenset[int]:
    """Groups reachable from vertex k by a trail whose first edge leaves k's group.

    A trail starting with the image e of a crossing edge at k reaches exactly the
    component of e's far end in the clasped graph with e removed.
    """
    sizes = tuple(sizes)
    if not 1 <= k <= g.n:
        raise ValueError(f"vertex {k} out of range")
    grp = group_of(sizes)
    cross = [(a, b) for a, b in g.edges if grp[a] != grp[b]]
    outer = [(grp[a], grp[b]) for a, b in cross]
    found: set[int] = set()
    for idx, (a, b) in enumerate(cross):
        if k not in (a, b):
            continue
        far = grp[b] if a == k else grp[a]
        found |= _reach(len(sizes), outer[:idx] + outer[idx + 1:], far)
    return frozenset(found)


def _reach(n: int, edges, start: int) -> set[int]:
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def permute_graph(sigma: Sequence[int], g: Graph) -> Graph:
    """Relabel vertex i as sigma(i)."""
    sigma = P.check(sigma)
    if len(sigma) != g.n:
        raise ValueError("size mismatch")
    return Graph(g.n, tuple((sigma[a - 1], sigma[b - 1]) for a, b in g.edges))


def induced_component_permutation(sigma: Sequence[int], g: Graph) -> P.Perm:
    """sigma~ with sigma(Gamma_{sigma~(k)}) = (sigma Gamma)_k."""
    sigma = P.check(sigma)
    if len(sigma) != g.n:
        raise ValueError("size mismatch")
    comps = connected_components(g)
    new_index = component_index(permute_graph(sigma, g))
    out = [0] * len(comps)
    for j, comp in enumerate(comps, 1):
        k = new_index[sigma[min(comp) - 1]]
        out[k - 1] = j
    return tuple(out)


def rho_permutation(g: Graph, k: int, m: int) -> P.Perm:
    """Component identification for the partition (1,..,1,m,1,..,1), m at slot k.

    Labels 1..s are the components of the inner graph; label s+j (j<q) and
    s-1+j (j>q) are the outer components other than the one containing the
    clasped vertex (index q).  rho(label) is the index of the Gamma-component
    that contains it.
    """
    n_groups = g.n - m + 1
    if not 1 <= k <= n_groups or m < 0:
        raise ValueError("bad insertion position")
    sizes = [1] * (k - 1) + [m] + [1] * (n_groups - k)
    co = cocompose(g, sizes)
    if not is_acyclic(co.outer) or not is_acyclic(g):
        raise UndefinedPermutation("clasped graph is cyclic")
    gidx = component_index(g)
    inner = connected_components(co.inner[k - 1])
    outer = connected_components(co.outer)
    s = len(inner)
    q = next(j for j, c in enumerate(outer, 1) if k in c)
    rho = [0] * (s + len(outer) - 1)
    for i, comp in enumerate(inner, 1):
        rho[i - 1] = gidx[min(comp) + k - 1]
    for j, comp in enumerate(outer, 1):
        if j == q:
            continue
        v = min(comp)
        v = v if v < k else v + m - 1
        label = s + j if j < q else s - 1 + j
        rho[label - 1] = gidx[v]
    return P.check(rho)


def enumerate_acyclic(n: int, bound: int = ENUMERATION_BOUND) -> list[Graph]:
    """All of G_0(n): forests on 1..n with every orientation, sorted."""
    if n > bound:
        raise ValueError(f"enumeration bound exceeded: n={n} > {bound}")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    out = []
    for r in range(n):
        for chosen in itertools.combinations(pairs, r):
            if not is_acyclic(Graph(n, chosen)):
                continue
            for flips in itertools.product((False, True), repeat=r):
                out.append(Graph(n, tuple((b, a) if f else (a, b) for (a, b), f in zip(chosen, flips))))
    return sorted(out)


def oriented_cycles(g: Graph, max_len: int) -> list[tuple[tuple[int, int], ...]]:
    """Simple oriented cycles of length <= max_len as sorted edge tuples.

    Parallel edges give distinct cycles, so a tuple may repeat.
    """
    edges = list(g.edges)
    found = set()
    out = []

    def walk(start, v, used, visited):
        for idx, (a, b) in enumerate(edges):
            if a != v or idx in used:
                continue
            if b == start:
                key = frozenset(used | {idx})
                if key not in found:
                    found.add(key)
                    out.append(tuple(sorted(edges[i] for i in key)))
            elif b not in visited and b > start and len(used) + 1 < max_len:
                walk(start, b, used | {idx}, visited | {b})

    for start in range(1, g.n + 1):
        walk(start, start, frozenset(), {start})
    return out


def random_graph(rng, n: int, max_edges: int | None = None, acyclic: bool = False) -> Graph:
    if n < 2:
        return Graph(n, ())
    if acyclic:
        order = list(range(1, n + 1))
        rng.shuffle(order)
        edges = []
        for i in range(1, n):
            if rng.random() < 0.7:
                a, b = order[i], order[rng.randrange(i)]
                edges.append((a, b) if rng.random() < 0.5 else (b, a))
        return Graph(n, tuple(edges))
    max_edges = n + 1 if max_edges is None else max_edges
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        a, b = rng.sample(range(1, n + 1), 2)
        edges.append((a, b))
    return Graph(n, tuple(edges))


def random_partition(rng, n: int) -> tuple[int, ...]:
    """Random composition of n into positive parts."""
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
    bounds = [0] + cuts + [n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))
