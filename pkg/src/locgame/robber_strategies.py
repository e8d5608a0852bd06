"""Robber strategies: the degeneracy and bipartite evaders, phantom adversary
policies, and a solver-backed robber for tiny graphs.

The evaders exploit the peek contract: against a deterministic cop strategy
they look up the next probe, then move so that at least two vertices of the
dense core share the coming distance vector.
"""

from __future__ import annotations

import copy
import math
import random

from .engine import expand, full_candidates, partition, refine
from .graph import Graph, bipartition, degeneracy, distances


class _PairEvader:
    """Shared machinery: play inside the k-core, always keeping a twin.

    Each turn the robber peeks the next probe and finds the lexicographically
    least pair (w, x) in the allowed neighborhood of his pretend position
    whose distance vectors agree, then moves to w.  The pigeonhole argument
    guarantees such a pair exists whenever the cop count is below the
    logarithmic threshold.
    """

    closed = True  # include the current vertex in the candidate neighborhood

    def __init__(self, g: Graph, cop_count: int):
        self.g = g
        self.m = cop_count
        res = degeneracy(g)
        self.core = res.core
        self.k = res.k
        self._check_threshold()
        self.oracle = distances(g)
        self._core_adj = {v: tuple(sorted(w for w in g.adj[v] if w in self.core))
                         for v in sorted(self.core)}

    def _check_threshold(self):
        raise NotImplementedError

    def _neighborhood(self, v):
        nbrs = self._core_adj[v]
        return tuple(sorted((v,) + nbrs)) if self.closed else nbrs

    def _twin_pair(self, v, probe):
        rows = [self.oracle.row(u) for u in probe]
        seen = {}
        for w in self._neighborhood(v):
            key = tuple(int(r[w]) for r in rows)
            if key in seen:
                return seen[key], w
            seen[key] = w
        raise AssertionError(
            "no equal-vector pair in the core neighborhood; pigeonhole guarantee violated")

    def choose_start(self, peek):
        v = min(self.core)  # pretend position; the proof allows any core vertex
        w, _ = self._twin_pair(v, peek())
        return w

    def move(self, current, rounds, peek):
        w, _ = self._twin_pair(current, peek())
        return w

    def clone(self):
        return copy.deepcopy(self)


class DegeneracyEvader(_PairEvader):
    """Perpetual evasion inside the k-core when cop count < log3(k + 1)."""

    closed = True

    def _check_threshold(self):
        if self.m >= math.log(self.k + 1, 3):
            raise ValueError(
                f"{self.m} cops reach the log3 threshold for degeneracy {self.k}; "
                "the evasion guarantee needs m < log3(k+1)")


class BipartiteEvader(_PairEvader):
    """Bipartite variant: open neighborhoods only (the robber always steps,
    preserving parity), valid when cop count < log2(k)."""

    closed = False

    def __init__(self, g: Graph, cop_count: int):
        if bipartition(g) is None:
            raise ValueError("graph is not bipartite")
        super().__init__(g, cop_count)

    def _check_threshold(self):
        if self.k < 1 or self.m >= math.log2(self.k):
            raise ValueError(
                f"{self.m} cops reach the log2 threshold for degeneracy {self.k}; "
                "the evasion guarantee needs m < log2(k)")


def degeneracy_evader(g: Graph, cop_count: int) -> DegeneracyEvader:
    return DegeneracyEvader(g, cop_count)


def bipartite_evader(g: Graph, cop_count: int) -> BipartiteEvader:
    return BipartiteEvader(g, cop_count)


class LargestClassAdversary:
    """Phantom policy: keep the largest refine class, ties to the
    lexicographically least vertex set."""

    def choose(self, classes):
        best = None
        best_key = None
        for i, (_, cls) in enumerate(classes):
            key = (-len(cls), sorted(cls.vertices))
            if best_key is None or key < best_key:
                best_key = key
                best = i
        return best

    def clone(self):
        return LargestClassAdversary()


class RandomAdversary:
    """Phantom policy: seeded uniform choice among nonempty classes."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def choose(self, classes):
        return self.rng.randrange(len(classes))

    def clone(self):
        return copy.deepcopy(self)


def largest_class_adversary() -> LargestClassAdversary:
    return LargestClassAdversary()


def random_adversary(seed: int) -> RandomAdversary:
    return RandomAdversary(seed)


class OptimalAdversary:
    """Phantom policy backed by a solver table: stay in robber-winning states
    forever when possible, otherwise maximize the remaining capture depth."""

    def __init__(self, g: Graph, table):
        self.g = g
        self.table = table

    def choose(self, classes):
        best = None
        best_key = None
        for i, (_, cls) in enumerate(classes):
            if len(cls) == 1:
                key = (2, 0, sorted(cls.vertices))
            else:
                nxt = frozenset(expand(cls, self.g).vertices)
                d = self.table.depth.get(nxt)
                if d is None:
                    key = (0, 0, sorted(cls.vertices))  # robber-winning region
                else:
                    key = (1, -d, sorted(cls.vertices))
            if best_key is None or key < best_key:
                best_key = key
                best = i
        return best

    def clone(self):
        return copy.deepcopy(self)


class OptimalRobber:
    """Concrete robber walking a solver table greedily.

    Moves to a neighbor whose coming refine class expands into a robber-
    winning state when one is reachable, else maximizes solver depth.  The
    phantom OptimalAdversary is the exact worst case; this concrete token is
    additionally constrained to legal walks.
    """

    def __init__(self, g: Graph, table):
        self.g = g
        self.table = table
        self.oracle = distances(g)
        self.s = full_candidates(g)

    def choose_start(self, peek):
        probe = peek()
        classes = partition(self.s, probe, self.oracle)
        best = None
        best_key = None
        for dvec, cls in classes:
            if len(cls) == 1:
                key = (2, 0, min(cls.vertices))
            else:
                nxt = frozenset(expand(cls, self.g).vertices)
                d = self.table.depth.get(nxt)
                key = (0, 0, min(cls.vertices)) if d is None else (1, -d, min(cls.vertices))
            if best_key is None or key < best_key:
                best_key = key
                best = cls
        return min(best.vertices)

    def move(self, current, rounds, peek):
        last = rounds[-1]
        self.s = refine(self.s, last.probe, last.dist, self.oracle)
        self.s = expand(self.s, self.g)
        probe = peek()
        classes = partition(self.s, probe, self.oracle)
        options = [current] + [w for w in self.g.adj[current]]
        best = None
        best_key = None
        for u in options:
            for dvec, cls in classes:
                if u in cls:
                    if len(cls) == 1:
                        key = (2, 0, u)
                    else:
                        nxt = frozenset(expand(cls, self.g).vertices)
                        d = self.table.depth.get(nxt)
                        key = (0, 0, u) if d is None else (1, -d, u)
                    if best_key is None or key < best_key:
                        best_key = key
                        best = u
                    break
        return best if best is not None else current

    def clone(self):
        return copy.deepcopy(self)


def optimal_robber(g: Graph, k: int):
    """Solver-backed robber for (g, k); also usable as a phantom policy via
    ``optimal_adversary``.  Needs the exact solver to handle the instance."""
    from .solver import cops_win

    _, table = cops_win(g, k)
    return OptimalRobber(g, table)


def optimal_adversary(g: Graph, k: int) -> OptimalAdversary:
    from .solver import cops_win

    _, table = cops_win(g, k)
    return OptimalAdversary(g, table)


ADVERSARIES = {
    "largest-class": lambda g, params: largest_class_adversary(),
    "random": lambda g, params: random_adversary(params["seed"]),
    "optimal": lambda g, params: optimal_adversary(g, params["k"]),
}

ROBBERS = {
    "degeneracy-evader": lambda g, params: degeneracy_evader(g, params["cops"]),
    "bipartite-evader": lambda g, params: bipartite_evader(g, params["cops"]),
    "optimal": lambda g, params: optimal_robber(g, params["k"]),
}
