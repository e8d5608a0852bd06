"""Two-cop strategy for outerplanar graphs built on a growing cop territory.

The strategy keeps a territory (a provably robber-free vertex set) with two
designated endpoints in a common block, and probes so the territory only ever
grows.  Case analysis on the probe distances drives the probe schedule; all
territory growth goes through a certified absorber that checks each addition
against the exact candidate set (recomputed from the public transcript) and
a boundary discipline: no territory vertex other than the endpoints may have
neighbors outside.  Together with re-probing any endpoint the robber could
reach, this forces the invariant that the candidate set stays disjoint from
the territory after every probe.
"""

from __future__ import annotations

import copy

from .engine import POST_MOVE, CandidateSet, expand, full_candidates, refine
from .graph import Graph, distances, outer_embedding


class OuterplanarCops:
    """Two cops locating a robber on any connected outerplanar graph."""

    k = 2

    def __init__(self, g: Graph):
        self.g = g
        if not g.is_connected():
            raise ValueError("graph is disconnected")
        self.emb = outer_embedding(g)  # raises NotOuterplanarError otherwise
        self.bt = self.emb.blocks
        self.oracle = distances(g)
        self.edge_block = {}
        for bi, edges in enumerate(self.bt.block_edges):
            for e in edges:
                self.edge_block[e] = bi
        self.C = full_candidates(g)
        self.done = False
        self._pending = None
        self._overridden = False
        self.territory_log = []  # territory size after each round, for tests

        if g.n == 1:
            self.T = {0}
            self.vL = self.vR = 0
            self.cur_block = 0
            self.mode = ("main",)
            return
        bi = min(self.bt.blocks_at(0))
        blk = self.bt.blocks[bi]
        if len(blk) == 2:
            a, b = sorted(blk)
        else:
            cyc = self.emb.cycle_of(bi)
            best = None
            for i in range(len(cyc)):
                u, w = cyc[i], cyc[(i + 1) % len(cyc)]
                pair = (min(u, w), max(u, w))
                if best is None or pair < best:
                    best = pair
            a, b = best
        self.cur_block = bi
        self.vL, self.vR = a, b
        self.T = {a, b}
        self.mode = ("main",)

    # -- public step contract ----------------------------------------------

    def next_probe(self):
        if self._pending is None:
            self._pending = self._compute_next()
        return self._pending

    def observe(self, dvec):
        probe = self.next_probe()
        self._pending = None
        self._absorb(probe, tuple(dvec))

    def clone(self):
        return copy.deepcopy(self)

    # -- geometry helpers ----------------------------------------------------

    def _cycle(self, bi):
        return self.emb.cycle_of(bi)

    def _arc_outside(self, bi):
        """Outside part of the block's cycle as a path from vR's side to vL's.

        Returns (from_vR, from_vL): the outside cycle vertices ordered starting
        next to vR, and the same path reversed (starting next to vL).
        """
        cyc = self._cycle(bi)
        n = len(cyc)
        pos = {v: i for i, v in enumerate(cyc)}
        inside = [v for v in cyc if v in self.T]
        if len(inside) == n:
            return [], []
        # walk forward from vR; one of the two directions leaves the territory
        i = pos[self.vR]
        step = 1
        if cyc[(i + 1) % n] in self.T and cyc[(i - 1) % n] in self.T:
            return [], []  # no outside neighbors along the cycle at vR
        if cyc[(i + 1) % n] in self.T:
            step = -1
        out = []
        j = (i + step) % n
        while cyc[j] not in self.T:
            out.append(cyc[j])
            j = (j + step) % n
        return out, list(reversed(out))

    def _outside_component_of(self, v):
        """Connected component of v among vertices outside the territory."""
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in self.g.adj[u]:
                if w not in self.T and w not in comp:
                    comp.add(w)
                    stack.append(w)
        return comp

    def _outside_components(self, blocked=()):
        seen = set(blocked)
        comps = []
        for v in range(self.g.n):
            if v in self.T or v in seen:
                continue
            comp = {v}
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                for w in self.g.adj[u]:
                    if w not in self.T and w not in seen and w not in blocked:
                        comp.add(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def _exposed(self, t):
        return {v for v in t if any(w not in t for w in self.g.adj[v])}

    # -- certified absorber ---------------------------------------------------

    def _try_absorb(self, target, new_vl, new_vr, new_block=None):
        """Absorb `target` if no candidate sits in it and the boundary
        discipline survives with the proposed endpoints.  Extends the target
        with outside components that would otherwise expose interior vertices.
        """
        target = set(target) - self.T
        if not target:
            return False
        if target & self.C.vertices:
            return False
        t_new = self.T | target
        extra = set()
        for comp in self._outside_components(blocked=()):
            if comp & t_new:
                continue
            attach = {w for v in comp for w in self.g.adj[v] if w in t_new}
            if attach and not attach <= {new_vl, new_vr}:
                if comp & self.C.vertices:
                    return False
                extra |= comp
        t_new |= extra
        if (extra | target) & self.C.vertices:
            return False
        if not self._exposed(t_new) <= {new_vl, new_vr}:
            return False
        self.T = t_new
        self.vL, self.vR = new_vl, new_vr
        if new_block is not None:
            self.cur_block = new_block
        return True

    def _sweep(self):
        """Greedy certified absorption: hanging components at the endpoints,
        then the longest safe cycle-arc extension on either side."""
        progressed = False
        while True:
            step = False
            # components attached only at one endpoint
            for comp in self._outside_components():
                attach = {w for v in comp for w in self.g.adj[v] if w in self.T}
                if len(attach) == 1 and next(iter(attach)) in (self.vL, self.vR):
                    if not comp & self.C.vertices:
                        if self._try_absorb(comp, self.vL, self.vR):
                            step = True
                            break
            if step:
                progressed = True
                continue
            blk = self.bt.blocks[self.cur_block]
            if len(blk) > 2 and self.vL != self.vR:
                from_vR, from_vL = self._arc_outside(self.cur_block)
                for seq, fixed, side in ((from_vR, self.vL, "R"), (from_vL, self.vR, "L")):
                    if step:
                        break
                    for m in range(len(seq), 0, -1):
                        slice_ = seq[:m]
                        end = slice_[-1]
                        nl, nr = (fixed, end) if side == "R" else (end, fixed)
                        if self._try_absorb(slice_, nl, nr):
                            step = True
                            break
            if step:
                progressed = True
                continue
            return progressed

    # -- probe schedule -------------------------------------------------------

    def _compute_next(self):
        self._overridden = False
        if self.done or self.g.n == 1:
            return (self.vL, self.vR)
        mode = self.mode
        if mode[0] == "main":
            desired = (self.vL, self.vR)
        elif mode[0] == "advance":
            _, near, u = mode
            desired = (near, u)
        elif mode[0] == "case1":
            _, pivot, pending, bi, nj = mode
            nbrs = self._case1_neighbors(pivot, pending[bi])
            desired = (pivot, nbrs[min(nj, len(nbrs) - 1)])
        elif mode[0] == "entry":
            _, pivot, u, _ = mode
            desired = (pivot, u)
        elif mode[0] == "fence":
            _, near, anchors, idx = mode
            desired = (near, anchors[idx % len(anchors)])
        else:  # sector
            _, endp, a, wlist, j, phase = mode
            w = wlist[min(j, len(wlist) - 1)]
            desired = (a, w) if phase == "anchor" else (endp, w)
        dangerous = {e for e in (self.vL, self.vR) if self._near_candidates(e)}
        if not dangerous <= set(desired):
            self._overridden = True
            return (self.vL, self.vR)
        return desired

    def _near_candidates(self, v):
        if v in self.C.vertices:
            return True
        return any(w in self.C.vertices for w in self.g.adj[v])

    def _case1_neighbors(self, pivot, bi):
        blk = self.bt.blocks[bi]
        if len(blk) == 2:
            (other,) = [v for v in blk if v != pivot]
            return [other]
        cyc = self._cycle(bi)
        n = len(cyc)
        i = cyc.index(pivot)
        ordered = [cyc[(i + j) % n] for j in range(1, n)]
        return [v for v in ordered if v in self.g.adj[pivot]]

    # -- observation processing ------------------------------------------------

    def _absorb(self, probe, dvec):
        self.C = refine(self.C, probe, dvec, self.oracle)
        post = self.C
        if len(post) == 1:
            self.done = True
            self.territory_log.append(len(self.T))
            return
        progressed = self._sweep()
        if self._overridden:
            self.mode = ("main",)
            self._dispatch_main(probe, dvec, progressed)
        else:
            m = self.mode[0]
            if m == "main":
                self._dispatch_main(probe, dvec, progressed)
            elif m == "advance":
                self._after_advance(probe)
            elif m == "case1":
                self._after_case1(probe, dvec, progressed)
            elif m == "entry":
                self._after_entry(probe)
            elif m == "fence":
                self._after_fence(probe, dvec, progressed)
            else:
                self._after_sector(probe, dvec, progressed)
        self.C = expand(post, self.g)
        self.territory_log.append(len(self.T))

    # main-round dispatch: probe was (vL, vR)
    def _dispatch_main(self, probe, dvec, progressed):
        if probe != (self.vL, self.vR):
            return  # endpoints moved during the sweep; re-probe next round
        dl, dr = dvec
        blk = self.bt.blocks[self.cur_block]
        if len(blk) == 2:
            if dl == dr:
                raise AssertionError("equal distances across a bridge block")
            near = self.vL if dl < dr else self.vR
            self._setup_advance(near)
            return
        if all(v in self.T for v in blk):
            self._setup_case1(dl, dr)
            return
        if dl == 1 and dr == 1:
            return  # unique common outside neighbor; capture is imminent
        if dl == 1 or dr == 1:
            self._setup_fence(self.vL if dl == 1 else self.vR)
            return
        if not progressed:
            self._setup_sector(dl, dr)

    def _setup_advance(self, near):
        target = None
        for nb in sorted(self.g.adj[near]):
            if nb in self.T:
                continue
            bi = self.edge_block[(min(near, nb), max(near, nb))]
            if len(self.bt.blocks[bi]) == 2 or self._cycle_adjacent(bi, near, nb):
                target = nb
                break
        if target is None:
            self.mode = ("main",)
            return
        self.mode = ("advance", near, target)

    def _cycle_adjacent(self, bi, u, v):
        cyc = self._cycle(bi)
        n = len(cyc)
        i = cyc.index(u)
        return cyc[(i + 1) % n] == v or cyc[(i - 1) % n] == v

    def _after_advance(self, probe):
        near, u = probe
        bi = self.edge_block[(min(near, u), max(near, u))]
        if self._try_absorb({u}, near, u, new_block=bi):
            self.mode = ("main",)
        # else: keep probing (near, u); the candidate set shrinks over time

    def _setup_case1(self, dl, dr):
        if dl == dr:
            raise AssertionError("equal distances with an exhausted block")
        pivot = self.vL if dl < dr else self.vR
        pending = [bi for bi in self.bt.blocks_at(pivot)
                   if any(v not in self.T for v in self.bt.blocks[bi])]
        pending.sort(key=lambda bi: min(self.bt.blocks[bi]))
        if not pending:
            self.mode = ("main",)
            return
        self.mode = ("case1", pivot, tuple(pending), 0, 0)

    def _after_case1(self, probe, dvec, progressed):
        _, pivot, pending, bi_idx, nj = self.mode
        d_pivot, d_w = dvec
        bi = pending[bi_idx]
        blk = self.bt.blocks[bi]
        rep = next(v for v in blk if v != pivot)
        comp = self._component_beyond(pivot, rep)
        if not comp & self.C.vertices:
            # this side is clear; the sweep has or will absorb it
            self._case1_advance_block(pivot, pending, bi_idx)
            return
        if d_w <= d_pivot:
            # the robber is on this side: enter the block
            nbrs = self._case1_neighbors(pivot, bi)
            w1 = nbrs[0]
            if self._try_absorb({w1}, pivot, w1, new_block=bi):
                self.mode = ("main",)
            else:
                self.mode = ("entry", pivot, w1, bi)
            return
        njn = nj + 1
        nbrs = self._case1_neighbors(pivot, bi)
        if njn >= len(nbrs):
            njn = 0  # re-scan; candidates shrink between passes
        self.mode = ("case1", pivot, pending, bi_idx, njn)

    def _case1_advance_block(self, pivot, pending, bi_idx):
        nxt = bi_idx + 1
        while nxt < len(pending):
            blk = self.bt.blocks[pending[nxt]]
            if any(v not in self.T for v in blk):
                self.mode = ("case1", pivot, pending, nxt, 0)
                return
            nxt += 1
        self.mode = ("main",)

    def _component_beyond(self, pivot, rep):
        comp = {rep}
        stack = [rep]
        while stack:
            u = stack.pop()
            for w in self.g.adj[u]:
                if w != pivot and w not in comp and w not in self.T:
                    comp.add(w)
                    stack.append(w)
        return comp

    def _after_entry(self, probe):
        _, pivot, u, bi = self.mode
        if self._try_absorb({u}, pivot, u, new_block=bi):
            self.mode = ("main",)

    def _setup_fence(self, near):
        anchors = self._fence_anchors(near)
        if not anchors:
            self.mode = ("main",)
            return
        self.mode = ("fence", near, tuple(anchors), 0)

    def _fence_anchors(self, near):
        """Outside-cycle neighbors of an endpoint, farthest along the outside
        arc first (the far chord target of the paper's case analysis)."""
        from_vR, from_vL = self._arc_outside(self.cur_block)
        seq = from_vR if near == self.vL else from_vL
        # seq runs from the OTHER endpoint's side toward `near`
        return [v for v in seq if v in self.g.adj[near]]

    def _after_fence(self, probe, dvec, progressed):
        _, near, anchors, idx = self.mode
        d_near = dvec[0] if probe[0] == near else dvec[1]
        if d_near != 1 or progressed:
            self.mode = ("main",)
            return
        # robber may be hiding among components hanging off `near`
        comps_near = set()
        for w in self.g.adj[near]:
            if w not in self.T and w in self.C.vertices:
                break
        block_side = set(self.bt.blocks[self.cur_block]) - self.T
        if not any(v in self.C.vertices for v in block_side):
            self._setup_case1_at(near)
            return
        self.mode = ("fence", near, anchors, (idx + 1) % len(anchors))

    def _setup_case1_at(self, pivot):
        pending = [bi for bi in self.bt.blocks_at(pivot)
                   if any(v not in self.T for v in self.bt.blocks[bi])]
        pending.sort(key=lambda bi: min(self.bt.blocks[bi]))
        if pending:
            self.mode = ("case1", pivot, tuple(pending), 0, 0)
        else:
            self.mode = ("main",)

    def _setup_sector(self, dl, dr):
        endp = self.vL if dl <= dr else self.vR
        anchors = self._fence_anchors(endp)
        if not anchors:
            self.mode = ("main",)
            return
        a = anchors[0]
        # scan targets: neighbors of the anchor between it and the other
        # endpoint along the outside arc
        from_vR, from_vL = self._arc_outside(self.cur_block)
        seq = from_vR if endp == self.vL else from_vL
        upto = seq.index(a)
        wlist = [v for v in seq[:upto] if v in self.g.adj[a]]
        if not wlist:
            self.mode = ("fence", endp, tuple(anchors), 0)
            return
        self.mode = ("sector", endp, a, tuple(wlist), 0, "anchor")

    def _after_sector(self, probe, dvec, progressed):
        _, endp, a, wlist, j, phase = self.mode
        if progressed:
            self.mode = ("main",)
            return
        if phase == "anchor":
            self.mode = ("sector", endp, a, wlist, j, "left")
        else:
            jn = j + 1
            if jn >= len(wlist):
                self.mode = ("main",)
            else:
                self.mode = ("sector", endp, a, wlist, jn, "anchor")
