"""Executable cop strategies with a deterministic step contract.

Every strategy exposes ``k``, ``next_probe()`` (idempotent until the matching
``observe()``), ``observe(dvec)``, and ``clone()`` for the peek contract.
Capture is always declared by the referee; strategies only schedule probes.
"""

from __future__ import annotations

import copy
import math
import random

from .engine import expand, full_candidates, refine
from .graph import Graph, NotOuterplanarError, distances, outer_embedding
from .generators import GkLayout, ProductLayout


class CopStrategy:
    """Base: caches the upcoming probe so peeks and replays are consistent."""

    k = 1

    def __init__(self):
        self._pending = None

    def next_probe(self):
        if self._pending is None:
            self._pending = tuple(self._compute_next())
        return self._pending

    def observe(self, dvec):
        probe = self.next_probe()
        self._pending = None
        self._absorb(probe, tuple(dvec))

    def clone(self):
        return copy.deepcopy(self)

    def _compute_next(self):
        raise NotImplementedError

    def _absorb(self, probe, dvec):
        pass


class StationaryCops(CopStrategy):
    """Probes the same vertex tuple every round."""

    def __init__(self, probe):
        super().__init__()
        self.probe = tuple(probe)
        self.k = len(self.probe)

    def _compute_next(self):
        return self.probe


class RandomCops(CopStrategy):
    """Seeded uniform probes; deterministic under replay and peeking."""

    def __init__(self, k: int, n: int, seed: int):
        super().__init__()
        if k > n:
            raise ValueError("more cops than vertices")
        self.k = k
        self.n = n
        self.rng = random.Random(seed)

    def _compute_next(self):
        return tuple(self.rng.randrange(self.n) for _ in range(self.k))


class SolverCops(CopStrategy):
    """Optimal probes extracted from an exact solver table (tiny graphs)."""

    def __init__(self, g: Graph, table):
        super().__init__()
        self.g = g
        self.k = table.k
        self.table = table
        self.oracle = distances(g)
        self.s = full_candidates(g)

    def _compute_next(self):
        key = frozenset(self.s.vertices)
        probe = self.table.witness.get(key)
        if probe is None:
            # robber-winning state: probe the least vertices as a fallback
            probe = tuple(sorted(self.s.vertices))[: self.k]
            probe = probe + (probe[-1],) * (self.k - len(probe))
        return probe

    def _absorb(self, probe, dvec):
        self.s = expand(refine(self.s, probe, dvec, self.oracle), self.g)


def solver_cops(g: Graph, k: int) -> SolverCops:
    from .solver import cops_win

    _, table = cops_win(g, k)
    return SolverCops(g, table)


class ProductCops(CopStrategy):
    """Locates a robber on a Cartesian product of paths in one round per factor.

    One cop sits on the all-zeros vertex and reads the direction of every
    move; a second sweeps the factors one round at a time; the remaining
    ceil(log2 n) maintenance cops probe binary-indicator vertices so the
    changed factor's index can be read off their distance deltas.
    """

    def __init__(self, lengths):
        super().__init__()
        self.layout = ProductLayout(tuple(int(s) for s in lengths))
        if any(s < 2 for s in self.layout.lengths):
            raise ValueError("factor lengths must be at least 2")
        self.nfac = self.layout.k
        self.maint = math.ceil(math.log2(self.nfac)) if self.nfac > 1 else 0
        self.k = self.maint + 2
        self.round = 0
        self.last = None  # previous full distance vector
        self.known: dict = {}  # coordinate -> value at the last probe
        # fixed probes
        zeros = [0] * self.nfac
        self.origin = self.layout.id_of(zeros)
        self.maint_probes = []
        for i in range(self.maint):
            coords = [self.layout.lengths[j] - 1 if (j >> i) & 1 else 0 for j in range(self.nfac)]
            self.maint_probes.append(self.layout.id_of(coords))

    def _sweep_probe(self, rnd):
        j = (rnd - 1) % self.nfac
        coords = [0] * self.nfac
        coords[j] = self.layout.lengths[j] - 1
        return self.layout.id_of(coords), j

    def _compute_next(self):
        sweep, _ = self._sweep_probe(self.round + 1)
        return (self.origin, sweep, *self.maint_probes)

    def _absorb(self, probe, dvec):
        self.round += 1
        _, j_swept = self._sweep_probe(self.round)
        d0 = dvec[0]
        if self.last is not None:
            delta0 = d0 - self.last[0]
            if delta0 not in (-1, 0, 1):
                raise AssertionError("distance to the origin moved by more than one")
            if delta0 != 0:
                bits = 0
                for i in range(self.maint):
                    dm = dvec[2 + i] - self.last[2 + i]
                    if dm not in (-1, 1):
                        raise AssertionError("maintenance delta must be +-1 when the robber moves")
                    # moving up (delta0=+1) pulls the robber toward probes with
                    # the top value in the changed factor, i.e. their delta is -1
                    if dm == -delta0:
                        bits |= 1 << i
                j = bits
                if j >= self.nfac:
                    raise AssertionError("decoded factor index out of range")
                if j in self.known:
                    self.known[j] += delta0
        # factor swept this round: distance identity pins its value
        lj = self.layout.lengths[j_swept]
        num = d0 + (lj - 1) - dvec[1]
        if num % 2 or not (0 <= num // 2 < lj):
            raise AssertionError("sweep decode failed; graph lacks the product labeling")
        self.known[j_swept] = num // 2
        self.last = dvec

    def tracked(self) -> dict:
        """Coordinates of the robber's position (at the last probe) that the
        internal bookkeeping has pinned down.  Exposed for invariant tests."""
        return dict(self.known)


class HypercubeCops(ProductCops):
    """Product strategy specialized to the binary n-cube."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        super().__init__([2] * n)


def hypercube_cops(n: int) -> HypercubeCops:
    return HypercubeCops(n)


def product_cops(lengths) -> ProductCops:
    return ProductCops(lengths)


class GkCops(CopStrategy):
    """Cop strategy for the satellite/thread construction: one cop per
    coordinate.

    Three stages: a main stage reads each coordinate off two satellite
    offsets in three rounds; a resolution stage disambiguates coordinates
    whose readings are consistent with a fresh thread entry; thread chases
    take over whenever a reading below 40 (own thread) or above 60 (unknown
    thread) appears.  During a near chase the trigger cop seals the satellite
    while the others probe core vertices chosen to split the set of possible
    thread anchors (plain satellite probes carry no anchor information when
    the robber hugs the satellite, because the inter-satellite shortcut
    dominates the anchor path).
    """

    def __init__(self, g: Graph, layout: GkLayout):
        super().__init__()
        self.g = g
        self.layout = layout
        self.k = layout.k
        if g.n != layout.n_vertices:
            raise ValueError("graph does not match the satellite/thread layout")
        self.oracle = distances(g)
        self.C = full_candidates(g)
        self.stage = "main"
        self.main_round = 1
        self.last_sat = [None] * self.k  # (coord, offset) each cop probed last
        self.d1 = [None] * self.k
        self.case = [None] * self.k
        self.d2 = [None] * self.k
        self.y = [None] * self.k
        self.critical = [False] * self.k
        self.chase_cop = None
        self.chase_sat = None  # (coord, offset) of the sealed satellite

    def __deepcopy__(self, memo):
        new = object.__new__(GkCops)
        for key, val in self.__dict__.items():
            if key in ("g", "layout", "oracle"):
                setattr(new, key, val)  # immutable / idempotent caches
            else:
                setattr(new, key, copy.deepcopy(val, memo))
        return new

    # -- probe construction -------------------------------------------------

    def _sat(self, i, offset):
        return self.layout.satellite_id(i, offset)

    def _opposite(self, i):
        coord, offset = self.last_sat[i]
        return (coord, 10 if offset == 0 else 0)

    def _compute_next(self):
        if self.stage == "near":
            return self._near_probe()
        targets = []
        if self.stage == "main":
            for i in range(self.k):
                if self.main_round == 1:
                    targets.append((i, 0))
                elif self.main_round == 2:
                    targets.append((i, 0) if self.case[i] == "d" else (i, 10))
                else:
                    targets.append((i, 0) if self.case[i] == "e" else (i, 10))
        elif self.stage == "resolve":
            for i in range(self.k):
                y = self.y[i]
                if y == 39 or 1 <= y <= 9 or 30 <= y <= 38 or y == 10:
                    targets.append((i, 0))
                else:  # y == 11, 12 <= y <= 29, y == 0
                    targets.append((i, 10))
        else:  # far: everyone swaps
            for i in range(self.k):
                targets.append(self._opposite(i))
        self._targets = targets
        return tuple(self._sat(c, o) for c, o in targets)

    def _near_probe(self):
        """Seal the triggering satellite; split the surviving thread anchors.

        Every other cop probes a core vertex (slice offset a, search center u)
        whose distance readings partition the anchor coordinates into balls
        of radius a around u; (u, a) is chosen to split the candidates'
        anchor values as evenly as possible.
        """
        self._targets = None
        lay = self.layout
        c, t = self.chase_sat
        probe = [None] * self.k
        probe[self.chase_cop] = self._sat(c, t)
        # current thread position: all candidates share it (sealed satellite)
        anchors_by_coord, p = self._thread_candidates()
        base = None
        for i in range(self.k):
            if i == self.chase_cop:
                continue
            vals = sorted(anchors_by_coord.get(i, ()))
            if not vals or len(vals) == 1:
                probe[i] = self._sat(i, 0)
                continue
            u, a = self._balanced_ball(vals, p)
            coords = list(base if base is not None else self._any_anchor_coords())
            coords[c] = (t + a) % lay.m
            coords[i] = u
            probe[i] = lay.core.id_of(coords)
        return tuple(probe)

    def _any_anchor_coords(self):
        lay = self.layout
        for v in sorted(self.C.vertices):
            role = lay.role_of(v)
            if role[0] == "thread":
                return list(lay.core.coords_of(role[1][2]))
            if role[0] == "core":
                return list(role[1])
        return [0] * self.k

    def _thread_candidates(self):
        """Anchor-coordinate values present among thread candidates, plus the
        common distance from the sealed satellite (None if not uniform)."""
        lay = self.layout
        anchors: dict = {}
        p = None
        for v in self.C.vertices:
            role = lay.role_of(v)
            if role[0] != "thread":
                continue
            _, _, anchor, pos = role[1]
            coords = lay.core.coords_of(anchor)
            for i, z in enumerate(coords):
                anchors.setdefault(i, set()).add(z)
            p = pos if p is None or pos == p else p
        return anchors, (p if p is not None else 1)

    def _balanced_ball(self, vals, p):
        """Center and radius whose reading-classes split `vals` most evenly."""
        m = self.layout.m
        thread_len = self.layout.thread_len
        best = None
        best_key = None
        for u in range(m):
            for a in range(0, m // 2 + 1):
                counts: dict = {}
                for z in vals:
                    gap = abs(u - z)
                    g = min(gap, m - gap)
                    pred = min(p + thread_len + a, thread_len - p + max(a, g))
                    counts[pred] = counts.get(pred, 0) + 1
                key = (max(counts.values()), u, a)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (u, a)
        return best

    # -- observation handling -----------------------------------------------

    def _absorb(self, probe, dvec):
        targets = self._targets
        self.last_sat = list(targets)
        if self.stage == "near":
            # one chase round pins the thread and the anchor; if the game is
            # still running the referee found more than one candidate, so
            # start over
            self._restart()
            return
        if self.stage == "far":
            subs = [i for i, d in enumerate(dvec) if d < 40]
            if subs:
                self._enter_near(subs[0])
            else:
                self._restart()
            return
        # main / resolve: global thread triggers first
        subs = [i for i, d in enumerate(dvec) if d < 40]
        if subs:
            self._enter_near(subs[0])
            return
        if any(d > 60 for d in dvec):
            self.stage = "far"
            return
        if self.stage == "main":
            self._absorb_main(dvec)
        else:
            self._absorb_resolve(dvec)

    def _restart(self):
        self.stage = "main"
        self.main_round = 1
        self.chase_cop = None
        self.d1 = [None] * self.k
        self.case = [None] * self.k
        self.d2 = [None] * self.k
        self.branch = [None] * self.k
        self.y = [None] * self.k
        self.critical = [False] * self.k

    def _enter_near(self, cop):
        self.stage = "near"
        self.chase_cop = cop

    def _absorb_main(self, dvec):
        if self.main_round == 1:
            for i, r in enumerate(dvec):
                d = r - 40
                self.d1[i] = d
                if 2 <= d <= 8:
                    self.case[i] = "a"
                elif 12 <= d <= 20:
                    self.case[i] = "b"
                elif d == 1:
                    self.case[i] = "c"
                elif d == 0:
                    self.case[i] = "d"
                elif 9 <= d <= 11:
                    self.case[i] = "e"
                else:
                    raise AssertionError(f"core reading 40+{d} outside every case")
            self.main_round = 2
        elif self.main_round == 2:
            for i, r in enumerate(dvec):
                self.d2[i] = r - 40
            self.main_round = 3
        else:
            any_critical = False
            for i, r in enumerate(dvec):
                d3 = r - 40
                y, crit = self._decode_third(i, d3)
                self.y[i] = y
                self.critical[i] = crit
                any_critical = any_critical or crit
            if any_critical:
                self.stage = "resolve"
            else:
                # position determined; referee captures on this probe
                self._restart()

    def _decode_third(self, i, d3):
        case = self.case[i]
        d2 = self.d2[i]
        if case == "a":
            if not 0 <= d3 <= 20:
                raise AssertionError("case a reading out of range")
            return (10 - d3, False) if d3 <= 10 else (50 - d3, False)
        if case == "b":
            if not 0 <= d3 <= 20:
                raise AssertionError("case b reading out of range")
            return 10 + d3, False
        if case == "c":
            if d2 == 10:
                if d3 == 9:
                    return 1, False
                if d3 == 10:
                    return 0, False
                if d3 == 11:
                    return 39, True
                raise AssertionError("case c ambiguous-branch reading out of range")
            xprime = {9: 1, 8: 2, 12: 38, 11: 39}.get(d2)
            if xprime is None:
                raise AssertionError("case c second reading out of range")
            for xpp in ((xprime - 1) % 40, xprime, (xprime + 1) % 40):
                gap = abs(xpp - 10)
                if min(gap, 40 - gap) == d3:
                    return xpp, False
            raise AssertionError("case c third reading matches no neighbor value")
        if case == "d":
            mapping = {8: 2, 9: 1, 10: 0, 12: 38}
            if d3 in mapping:
                return mapping[d3], False
            if d3 == 11:
                # x'' = 39, or a fresh thread entry if the robber sat at 0
                return 39, d2 == 0
            raise AssertionError("case d third reading out of range")
        # case e: second probe hit offset 10, third hits offset 0
        if d2 <= 2:  # robber near 10
            for xpp in range(7, 14):
                gap = min(xpp, 40 - xpp)
                if gap == d3 and abs(xpp - 10) <= d2 + 1:
                    if xpp == 11 and d2 == 0 and d3 == 11:
                        return 11, True  # thread from the offset-10 satellite possible
                    return xpp, False
            if d3 == 11 and d2 == 0:
                return 11, True
            raise AssertionError("case e (near-10) third reading out of range")
        if 18 <= d2 <= 20:  # robber near 30
            xpp = 40 - d3
            if not 27 <= xpp <= 33:
                raise AssertionError("case e (near-30) third reading out of range")
            return xpp, False
        raise AssertionError("case e second reading out of range")

    def _absorb_resolve(self, dvec):
        any_critical = False
        for i, r in enumerate(dvec):
            d4 = r - 40
            y = self.y[i]
            if y == 39:
                table = {0: (0, False), 1: (39, False), 2: (38, True)}
                if d4 not in table:
                    raise AssertionError("resolve y=39 reading out of range")
                z, crit = table[d4]
            elif y == 11:
                table = {0: (10, False), 1: (11, False), 2: (12, True)}
                if d4 not in table:
                    raise AssertionError("resolve y=11 reading out of range")
                z, crit = table[d4]
            elif 1 <= y <= 9:
                if not 0 <= d4 <= 11:
                    raise AssertionError("resolve low-range reading out of range")
                z, crit = d4, False
            elif 12 <= y <= 29:
                if not 0 <= d4 <= 21:
                    raise AssertionError("resolve mid-range reading out of range")
                z, crit = 10 + d4, False
            elif 30 <= y <= 38:
                if not 0 <= d4 <= 12:
                    raise AssertionError("resolve high-range reading out of range")
                z, crit = (40 - d4) % 40, False
            elif y == 0:
                table = {9: (1, False), 10: (0, False), 11: (39, True)}
                if d4 not in table:
                    raise AssertionError("resolve y=0 reading out of range")
                z, crit = table[d4]
            else:  # y == 10
                table = {9: (9, False), 10: (10, False), 11: (11, True)}
                if d4 not in table:
                    raise AssertionError("resolve y=10 reading out of range")
                z, crit = table[d4]
            self.y[i] = z
            self.critical[i] = crit
            any_critical = any_critical or crit
        if not any_critical:
            self._restart()
        # else: repeat the resolution round with the updated predictions


def gk_cops(layout: GkLayout) -> GkCops:
    return GkCops(layout)


def outerplanar_cops(g: Graph):
    from .outerplanar import OuterplanarCops

    return OuterplanarCops(g)


def _make_hypercube(g, layout, params):
    n = params.get("n")
    if n is None:
        if not isinstance(layout, ProductLayout) or set(layout.lengths) != {2}:
            raise ValueError("hypercube strategy needs the hypercube labeling")
        n = layout.k
    return HypercubeCops(n)


def _make_product(g, layout, params):
    lengths = params.get("lengths")
    if lengths is None:
        if not isinstance(layout, ProductLayout):
            raise ValueError("product strategy needs the product labeling")
        lengths = layout.lengths
    return ProductCops(lengths)


def _make_gk(g, layout, params):
    if not isinstance(layout, GkLayout):
        raise ValueError("gk strategy needs the satellite/thread layout")
    return GkCops(layout)


# Registry: name -> factory(graph, layout_or_None, params_dict)
REGISTRY = {
    "hypercube": _make_hypercube,
    "product": _make_product,
    "outerplanar": lambda g, layout, params: outerplanar_cops(g),
    "gk": _make_gk,
    "random": lambda g, layout, params: RandomCops(params["k"], g.n, params["seed"]),
    "stationary": lambda g, layout, params: StationaryCops(params["probe"]),
    "solver": lambda g, layout, params: solver_cops(g, params["k"]),
}


def make_cops(name: str, g: Graph, layout=None, params: dict | None = None):
    if name not in REGISTRY:
        raise ValueError(f"unknown cop strategy {name!r}")
    return REGISTRY[name](g, layout, params or {})
