"""Graph families: hypercubes, path products, strong cycle powers, the
satellite/thread construction, random outerplanar graphs, and basics.

Every generator is a pure constructor; identical arguments (and seeds) give
identical graphs.  Vertex id schemes are fixed and documented so transcripts
stay reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, outer_embedding


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs at least one vertex")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


@dataclass(frozen=True)
class ProductLayout:
    """Coordinate labeling for product graphs.

    Vertex ids are lexicographic ranks of coordinate tuples with coordinate 0
    most significant; ``lengths[i]`` is the range of coordinate i.
    """

    lengths: tuple

    @property
    def k(self) -> int:
        return len(self.lengths)

    @property
    def n_vertices(self) -> int:
        p = 1
        for s in self.lengths:
            p *= s
        return p

    def id_of(self, coords) -> int:
        v = 0
        for c, s in zip(coords, self.lengths):
            if not (0 <= c < s):
                raise ValueError(f"coordinate {c} out of range [0, {s})")
            v = v * s + c
        return v

    def coords_of(self, v: int) -> tuple:
        out = []
        for s in reversed(self.lengths):
            v, c = divmod(v, s)
            out.append(c)
        return tuple(reversed(out))


def _coord_matrix(lengths) -> np.ndarray:
    """All coordinate tuples in lexicographic (id) order, one row per vertex."""
    n = 1
    for s in lengths:
        n *= s
    cols = []
    rep = n
    tile = 1
    for s in lengths:
        rep //= s
        cols.append(np.tile(np.repeat(np.arange(s), rep), tile))
        tile *= s
    return np.stack(cols, axis=1)


def path_product(lengths) -> tuple[Graph, ProductLayout]:
    """Cartesian product of paths; adjacency steps one coordinate by one."""
    lengths = tuple(int(s) for s in lengths)
    if not lengths or any(s < 2 for s in lengths):
        raise ValueError("every factor length must be at least 2")
    layout = ProductLayout(lengths)
    n = layout.n_vertices
    ids = np.arange(n)
    coords = _coord_matrix(lengths)
    weights = np.ones(len(lengths), dtype=np.int64)
    for i in range(len(lengths) - 2, -1, -1):
        weights[i] = weights[i + 1] * lengths[i + 1]
    us = []
    vs = []
    for i, s in enumerate(lengths):
        mask = coords[:, i] < s - 1
        us.append(ids[mask])
        vs.append(ids[mask] + weights[i])
    u = np.concatenate(us)
    v = np.concatenate(vs)
    return Graph(n, list(zip(u.tolist(), v.tolist()))), layout


def hypercube(n: int) -> tuple[Graph, ProductLayout]:
    """Binary n-cube: vertices are n-tuples over {0,1}, edges flip one bit."""
    if n < 1:
        raise ValueError("hypercube dimension must be at least 1")
    return path_product([2] * n)


def hamming_oracle(n: int):
    """Closed-form distance rule for hypercube(n) under its id scheme."""
    from .graph import DistanceOracle

    return DistanceOracle(n=1 << n, rule=lambda u, v: int(u ^ v).bit_count())


def strong_cycle_power(m: int, k: int) -> tuple[Graph, ProductLayout]:
    """k-fold strong product of m-cycles.

    Distinct vertices are adjacent iff every coordinate differs by at most 1
    modulo m; the graph is regular of degree 3**k - 1.  Needs m >= 5 so the
    +1/-1 neighborhoods stay distinct.
    """
    if m < 5:
        raise ValueError("cycle length must be at least 5")
    if k < 1:
        raise ValueError("dimension must be at least 1")
    layout = ProductLayout((m,) * k)
    n = m**k
    coords = _coord_matrix((m,) * k)
    weights = np.array([m ** (k - 1 - j) for j in range(k)], dtype=np.int64)
    # half of the nonzero {-1,0,1}^k offsets, to emit each edge once
    offsets = []
    for code in range(3**k):
        d = []
        x = code
        for _ in range(k):
            x, r = divmod(x, 3)
            d.append(r - 1)
        d = tuple(reversed(d))
        if any(d) and d > tuple(-x for x in d):
            offsets.append(d)
    edge_u = []
    edge_v = []
    ids = np.arange(n, dtype=np.int64)
    for d in offsets:
        nb = ((coords + np.array(d)) % m) @ weights
        edge_u.append(ids)
        edge_v.append(nb)
    u = np.concatenate(edge_u)
    v = np.concatenate(edge_v)
    return Graph(n, list(zip(u.tolist(), v.tolist()))), layout


@dataclass(frozen=True)
class GkLayout:
    """Id scheme for the satellite/thread construction over a strong cycle power.

    Core vertices come first (lexicographic coordinate order), then the 2k
    satellites (coordinate asc, offset asc), then thread internals ordered by
    (satellite id, core anchor id, position).  Thread position p in [1,
    thread_len-1] is the hop count from the satellite.
    """

    m: int
    k: int
    offsets: tuple
    thread_len: int
    core: ProductLayout = field(compare=False)

    @property
    def n_core(self) -> int:
        return self.m**self.k

    @property
    def n_satellites(self) -> int:
        return 2 * self.k

    @property
    def threads_per_satellite(self) -> int:
        return self.m ** (self.k - 1)

    @property
    def n_vertices(self) -> int:
        internals = self.thread_len - 1
        return self.n_core + self.n_satellites + self.n_satellites * self.threads_per_satellite * internals

    def satellite_id(self, coord: int, offset: int) -> int:
        if not (0 <= coord < self.k) or offset not in self.offsets:
            raise ValueError(f"no satellite for coordinate {coord}, offset {offset}")
        return self.n_core + 2 * coord + self.offsets.index(offset)

    def satellite_index(self, v: int):
        """(coordinate, offset) of a satellite id."""
        r = v - self.n_core
        if not (0 <= r < self.n_satellites):
            raise ValueError(f"{v} is not a satellite")
        return r // 2, self.offsets[r % 2]

    def anchors_of_satellite(self, coord: int, offset: int):
        """Core ids whose given coordinate equals the offset, ascending."""
        lengths = self.core.lengths
        others = [s for j, s in enumerate(lengths) if j != coord]
        out = []
        for rank in range(self.threads_per_satellite):
            rest = []
            r = rank
            for s in reversed(others):
                r, c = divmod(r, s)
                rest.append(c)
            rest = list(reversed(rest))
            coords = rest[:coord] + [offset] + rest[coord:]
            out.append(self.core.id_of(coords))
        return out

    def _anchor_rank(self, coord: int, anchor_id: int) -> int:
        coords = self.core.coords_of(anchor_id)
        others = [c for j, c in enumerate(coords) if j != coord]
        lengths = [s for j, s in enumerate(self.core.lengths) if j != coord]
        r = 0
        for c, s in zip(others, lengths):
            r = r * s + c
        return r

    def thread_id(self, coord: int, offset: int, anchor_id: int, p: int) -> int:
        """Internal vertex p hops from satellite (coord, offset) toward anchor_id."""
        if not (1 <= p <= self.thread_len - 1):
            raise ValueError(f"thread position {p} out of range")
        if self.core.coords_of(anchor_id)[coord] != offset:
            raise ValueError("anchor does not lie on the satellite's core slice")
        sat = self.satellite_id(coord, offset) - self.n_core
        internals = self.thread_len - 1
        base = self.n_core + self.n_satellites
        return base + (sat * self.threads_per_satellite + self._anchor_rank(coord, anchor_id)) * internals + (p - 1)

    def role_of(self, v: int):
        """("core", coords) | ("satellite", (coord, offset)) | ("thread", (coord, offset, anchor_id, p))."""
        if v < 0 or v >= self.n_vertices:
            raise ValueError(f"vertex {v} out of range")
        if v < self.n_core:
            return ("core", self.core.coords_of(v))
        if v < self.n_core + self.n_satellites:
            return ("satellite", self.satellite_index(v))
        r = v - self.n_core - self.n_satellites
        internals = self.thread_len - 1
        thread, p = divmod(r, internals)
        sat, rank = divmod(thread, self.threads_per_satellite)
        coord, offset = sat // 2, self.offsets[sat % 2]
        anchors = self.anchors_of_satellite(coord, offset)
        return ("thread", (coord, offset, anchors[rank], p + 1))


def gk(k: int) -> tuple[Graph, GkLayout]:
    """Strong power of C40 plus 2k satellites joined by threads of length 40.

    Satellite (i, t) connects to every core vertex whose coordinate i equals
    t, each connection subdivided into a 40-edge path.  The constants (m=40,
    offsets 0 and 10, thread length 40) are fixed; the accompanying cop
    strategy depends on them.
    """
    if k < 1:
        raise ValueError("dimension must be at least 1")
    m, offsets, thread_len = 40, (0, 10), 40
    core_graph, core_layout = strong_cycle_power(m, k)
    layout = GkLayout(m=m, k=k, offsets=offsets, thread_len=thread_len, core=core_layout)
    edges = list(core_graph.edges)
    for coord in range(k):
        for offset in offsets:
            s = layout.satellite_id(coord, offset)
            for anchor in layout.anchors_of_satellite(coord, offset):
                prev = s
                for p in range(1, thread_len):
                    t = layout.thread_id(coord, offset, anchor, p)
                    edges.append((prev, t))
                    prev = t
                edges.append((prev, anchor))
    return Graph(layout.n_vertices, edges), layout


def gk_satellite_distance(layout: GkLayout, coord: int, offset: int, core_id: int) -> int:
    """Closed-form satellite-to-core distance: thread length plus the cyclic
    gap between the core vertex's coordinate and the satellite's offset."""
    w = layout.core.coords_of(core_id)[coord]
    gap = abs(w - offset)
    return layout.thread_len + min(gap, layout.m - gap)


# random_outerplanar mixing constants: probability a new block is a pendant
# edge, the largest polygon block, and per-chord keep probability after
# triangulating.  They only need to exercise every strategy case.
PENDANT_PROB = 0.35
MAX_POLYGON = 8
CHORD_KEEP_PROB = 0.5


def random_outerplanar(n: int, seed: int) -> Graph:
    """Random connected outerplanar graph: polygon blocks with random
    surviving triangulation chords, glued at cut vertices, plus pendant edges.

    Deterministic for a given seed; every output passes outer_embedding.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    edges = []
    used = 1
    while used < n:
        glue = rng.randrange(used)
        remaining = n - used
        if remaining == 1 or rng.random() < PENDANT_PROB:
            edges.append((glue, used))
            used += 1
            continue
        s = rng.randint(3, min(MAX_POLYGON, remaining + 1))
        ring = [glue] + list(range(used, used + s - 1))
        used += s - 1
        for i in range(s):
            edges.append((ring[i], ring[(i + 1) % s]))
        for a, b in _random_triangulation(rng, s):
            if rng.random() < CHORD_KEEP_PROB:
                edges.append((ring[a], ring[b]))
    g = Graph(n, edges)
    outer_embedding(g)  # generator postcondition: must embed
    return g


def _random_triangulation(rng, s):
    """Chord index pairs of a random triangulation of an s-gon."""
    chords = []

    def split(i, j):
        # triangulate the sub-polygon spanned by cycle positions i..j
        if j - i < 2:
            return
        t = rng.randint(i + 1, j - 1)
        if t - i > 1:
            chords.append((i, t))
        if j - t > 1:
            chords.append((t, j))
        split(i, t)
        split(t, j)

    split(0, s - 1)
    return chords
