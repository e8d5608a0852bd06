"""Core graph machinery: simple undirected graphs, hop distances, degeneracy,
greedy coloring, block decomposition, and outerplanar embeddings.

All objects here are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np


class NotOuterplanarError(ValueError):
    """Raised when a graph (or one of its blocks) admits no outer embedding."""


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are stored normalized as (u, v) with u < v; adjacency lists are
    sorted.  Construction validates against loops, duplicate edges, and
    out-of-range ids.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges):
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        norm = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex id out of range [0, {n}): edge ({u}, {v})")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        self.n = n
        self.edges = tuple(norm)
        adj = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def is_connected(self) -> bool:
        seen = _bfs_reach(self.adj, 0)
        return len(seen) == self.n

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))


def from_edge_list(n: int, edges) -> Graph:
    """Build a validated Graph from a vertex count and an edge list."""
    return Graph(n, edges)


def _bfs_reach(adj, start):
    seen = {start}
    q = deque([start])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                q.append(w)
    return seen


def _bfs_row(adj, n, src):
    dist = np.full(n, -1, dtype=np.int32)
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                q.append(w)
    return dist


class DistanceOracle:
    """Exact hop distances, computed lazily one source row at a time.

    Rows come from breadth-first search, or from a closed-form ``rule(u, v)``
    for generated families (validated against BFS in the test suite).  Rows
    are cached and returned as read-only numpy arrays.
    """

    def __init__(self, graph: Graph | None = None, *, n: int | None = None, rule=None):
        if graph is None and (n is None or rule is None):
            raise ValueError("need either a graph or (n, rule)")
        self.graph = graph
        self.rule = rule
        self.n = graph.n if graph is not None else n
        self._rows: dict[int, np.ndarray] = {}
        if graph is not None and rule is None:
            row0 = self.row(0)
            if (row0 < 0).any():
                raise ValueError("graph is disconnected")

    def row(self, u: int) -> np.ndarray:
        r = self._rows.get(u)
        if r is None:
            if self.rule is not None:
                r = np.fromiter((self.rule(u, v) for v in range(self.n)), dtype=np.int32, count=self.n)
            else:
                r = _bfs_row(self.graph.adj, self.n, u)
            r.setflags(write=False)
            self._rows[u] = r
        return r

    def dist(self, u: int, v: int) -> int:
        return int(self.row(u)[v])


def distances(g: Graph) -> DistanceOracle:
    """All-pairs hop distance oracle for a connected graph."""
    return DistanceOracle(g)


@dataclass(frozen=True)
class DegeneracyResult:
    """Degeneracy k, a peeling order, and the k-core (min degree exactly k)."""

    k: int
    elimination_order: tuple
    core: frozenset


def degeneracy(g: Graph) -> DegeneracyResult:
    """Degeneracy via min-degree peeling with lowest-id tie breaking.

    The returned core is the k-core for k = degeneracy: every vertex of the
    induced subgraph has degree exactly >= k there, with minimum exactly k.
    """
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    removed = [False] * n
    # buckets[d] holds vertices of current degree d; lazy deletion on pop
    maxdeg = max(deg) if n else 0
    buckets = [deque() for _ in range(maxdeg + 1)]
    for v in range(n):
        buckets[deg[v]].append(v)
    order = []
    k = 0
    core_start = 0  # index in `order` where the final k-core begins
    for i in range(n):
        d = 0
        while True:
            while buckets[d] and (removed[buckets[d][0]] or deg[buckets[d][0]] != d):
                buckets[d].popleft()
            if buckets[d]:
                break
            d += 1
        v = buckets[d].popleft()
        if d > k:
            k = d
            core_start = i
        removed[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                buckets[deg[w]].append(w)
    core = frozenset(order[core_start:])
    return DegeneracyResult(k=k, elimination_order=tuple(order), core=core)


def greedy_color(g: Graph, order) -> dict:
    """Greedy proper coloring along the given vertex order.

    On the reverse of a degeneracy elimination order this uses at most
    degeneracy + 1 colors.
    """
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertices")
    color: dict = {}
    for v in order:
        used = {color[w] for w in g.adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


@dataclass(frozen=True)
class BlockTree:
    """Blocks (maximal 2-connected subgraphs or bridge edges) and cut vertices.

    ``blocks`` are vertex sets; ``block_edges`` lists each block's edges (every
    graph edge lies in exactly one block).  ``vertex_blocks`` maps every vertex
    to the indices of the blocks containing it.
    """

    blocks: tuple
    block_edges: tuple
    cut_vertices: frozenset
    vertex_blocks: dict

    def blocks_at(self, v: int) -> tuple:
        return self.vertex_blocks[v]


def block_decomposition(g: Graph) -> BlockTree:
    """Biconnected components via iterative depth-first search (edge stack)."""
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    n = g.n
    if n == 1:
        return BlockTree((frozenset({0}),), (tuple(),), frozenset(), {0: (0,)})

    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cut = [False] * n
    edge_stack = []
    comp_edges = []
    timer = 0

    # iterative DFS from vertex 0 (graph is connected)
    it_stack = [(0, iter(g.adj[0]))]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    while it_stack:
        v, it = it_stack[-1]
        advanced = False
        for w in it:
            if disc[w] < 0:
                parent[w] = v
                edge_stack.append((v, w))
                disc[w] = low[w] = timer
                timer += 1
                if v == 0:
                    root_children += 1
                it_stack.append((w, iter(g.adj[w])))
                advanced = True
                break
            elif w != parent[v] and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        if not advanced:
            it_stack.pop()
            if it_stack:
                u = it_stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    # u closes a block; pop edges down to (u, v)
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == (u, v):
                            break
                    comp_edges.append(comp)
                    if u != 0:
                        cut[u] = True
    if root_children > 1:
        cut[0] = True

    blocks = []
    block_edges = []
    for comp in comp_edges:
        vs = set()
        for u, w in comp:
            vs.add(u)
            vs.add(w)
        blocks.append(frozenset(vs))
        block_edges.append(tuple(sorted((min(u, w), max(u, w)) for u, w in comp)))
    # deterministic order: by sorted vertex set
    idx = sorted(range(len(blocks)), key=lambda i: sorted(blocks[i]))
    blocks = tuple(blocks[i] for i in idx)
    block_edges = tuple(block_edges[i] for i in idx)
    vertex_blocks: dict = {v: [] for v in range(n)}
    for i, b in enumerate(blocks):
        for v in b:
            vertex_blocks[v].append(i)
    vertex_blocks = {v: tuple(ix) for v, ix in vertex_blocks.items()}
    return BlockTree(blocks, block_edges, frozenset(v for v in range(n) if cut[v]), vertex_blocks)


@dataclass(frozen=True)
class OuterEmbedding:
    """Outer (Hamiltonian) cycle and chord set for every non-K2 block.

    ``cycles[i]`` is the canonical cyclic vertex order of block i (rotated to
    start at the least vertex, direction chosen toward its smaller neighbor);
    K2 blocks and single vertices map to None.  ``chords[i]`` holds the block's
    non-cycle edges.
    """

    blocks: BlockTree
    cycles: tuple
    chords: tuple

    def cycle_of(self, block_index: int):
        return self.cycles[block_index]

    def chords_of(self, block_index: int):
        return self.chords[block_index]


def _find_outer_cycle(vertices, edges):
    """Hamiltonian outer cycle of a 2-connected outerplanar block.

    Reduction: repeatedly delete a degree-2 vertex, bridging its neighbors
    with a virtual edge; rebuild by re-inserting vertices between their
    neighbors.  Any failure means the block is not outerplanar.  The result
    is verified against the real edge set before returning.
    """
    vs = list(vertices)
    if len(vs) < 3:
        raise NotOuterplanarError("block too small for an outer cycle")
    adj = {v: set() for v in vs}
    for u, w in edges:
        adj[u].add(w)
        adj[w].add(u)
    removal = []  # (v, a, b) in deletion order
    alive = set(vs)
    while len(alive) > 2:
        v2 = None
        for v in sorted(alive):
            if len(adj[v]) == 2:
                v2 = v
                break
        if v2 is None:
            raise NotOuterplanarError("block has no degree-2 vertex; not outerplanar")
        a, b = sorted(adj[v2])
        removal.append((v2, a, b))
        adj[a].discard(v2)
        adj[b].discard(v2)
        alive.discard(v2)
        adj[a].add(b)
        adj[b].add(a)
    u, w = sorted(alive)
    if w not in adj[u]:
        raise NotOuterplanarError("reduction left a disconnected pair")
    cycle = [u, w]
    for v, a, b in reversed(removal):
        placed = False
        for i in range(len(cycle)):
            x, y = cycle[i], cycle[(i + 1) % len(cycle)]
            if {x, y} == {a, b}:
                cycle.insert(i + 1, v)
                placed = True
                break
        if not placed:
            raise NotOuterplanarError("cannot re-insert vertex on the outer cycle")

    # verify: a true Hamiltonian cycle over the real edges
    edge_set = {(min(u, w), max(u, w)) for u, w in edges}
    if len(cycle) != len(vs) or set(cycle) != set(vs):
        raise NotOuterplanarError("reconstructed order is not Hamiltonian")
    for i in range(len(cycle)):
        x, y = cycle[i], cycle[(i + 1) % len(cycle)]
        if (min(x, y), max(x, y)) not in edge_set:
            raise NotOuterplanarError("reconstructed cycle uses a non-edge")
    return _canonical_cycle(cycle)


def _canonical_cycle(cycle):
    """Rotate to the least vertex, orient toward its smaller neighbor."""
    k = cycle.index(min(cycle))
    cycle = cycle[k:] + cycle[:k]
    if cycle[1] > cycle[-1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return tuple(cycle)


def _chords_cross(cycle, chords):
    pos = {v: i for i, v in enumerate(cycle)}
    spans = []
    for u, w in chords:
        i, j = pos[u], pos[w]
        spans.append((min(i, j), max(i, j)))
    for a in range(len(spans)):
        i1, j1 = spans[a]
        for b in range(a + 1, len(spans)):
            i2, j2 = spans[b]
            if i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1:
                return True
    return False


def outer_embedding(g: Graph) -> OuterEmbedding:
    """Outer cycles and chords for every block; rejects non-outerplanar input."""
    bt = block_decomposition(g)
    cycles = []
    chords = []
    for i, b in enumerate(bt.blocks):
        if len(b) <= 2:
            cycles.append(None)
            chords.append(frozenset())
            continue
        cyc = _find_outer_cycle(b, bt.block_edges[i])
        cyc_edges = set()
        for j in range(len(cyc)):
            x, y = cyc[j], cyc[(j + 1) % len(cyc)]
            cyc_edges.add((min(x, y), max(x, y)))
        ch = frozenset(e for e in bt.block_edges[i] if e not in cyc_edges)
        if _chords_cross(cyc, ch):
            raise NotOuterplanarError(f"block {sorted(b)} has crossing chords")
        cycles.append(cyc)
        chords.append(ch)
    return OuterEmbedding(bt, tuple(cycles), tuple(chords))


def is_outerplanar(g: Graph) -> bool:
    try:
        outer_embedding(g)
        return True
    except NotOuterplanarError:
        return False


def bipartition(g: Graph):
    """The two color classes of a connected bipartite graph, else None."""
    side = [-1] * g.n
    side[0] = 0
    q = deque([0])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if side[w] < 0:
                side[w] = 1 - side[u]
                q.append(w)
            elif side[w] == side[u]:
                return None
    return (frozenset(v for v in range(g.n) if side[v] == 0),
            frozenset(v for v in range(g.n) if side[v] == 1))


def read_edge_list(text: str) -> Graph:
    """Parse the edge-list text format: first line "n m", then m lines "u v"."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header line: {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return from_edge_list(n, edges)


def write_edge_list(g: Graph) -> str:
    """Serialize to the edge-list text format."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"
