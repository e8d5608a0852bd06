"""Exact game solving on small graphs: localization numbers, metric
dimension, and the degeneracy/chromatic bound calculators.

The solver works on the candidate-set abstraction: a state is the set of
vertices consistent with play so far (post-move).  Cops win from S iff some
probe shatters every refine class to singletons or sends every surviving
class, expanded, into an already-winning state.  The candidate set is a
sufficient statistic because probes and observations are public.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, bipartition, degeneracy, distances, greedy_color

# Probe-state budget: C(n, k) * 2^n must stay under this for cops_win.
STATE_BUDGET = 3_000_000


class SolverLimitError(ValueError):
    """Instance exceeds the exact solver's size budget."""


@dataclass
class GameStateTable:
    """Status of every reachable post-move candidate set for (graph, k).

    ``status[S]`` is a rounds-to-capture depth for cop-win states (with a
    witness probe) or None for robber-win states; S is a frozenset.
    """

    k: int
    depth: dict
    witness: dict

    def cops_win_from(self, s: frozenset) -> bool:
        return self.depth.get(s) is not None


def _check_budget(g: Graph, k: int):
    states = math.comb(g.n, min(k, g.n)) * (1 << g.n)
    if g.n > 16 or states > STATE_BUDGET:
        raise SolverLimitError(f"instance too large: n={g.n}, k={k} (~{states} probe-states)")


def cops_win(g: Graph, k: int):
    """Whether k cops capture on g, with the full game-state table.

    Least fixpoint by iterative deepening on capture depth over the states
    reachable from the all-vertices set.  Probes range over k-subsets:
    duplicate cops add no information, so tuples are never needed.
    """
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    if k < 1:
        raise ValueError("need at least one cop")
    _check_budget(g, k)
    if k >= g.n:
        full = frozenset(range(g.n))
        return True, GameStateTable(k, {full: 1}, {full: tuple(range(g.n))})
    oracle = distances(g)
    rows = [oracle.row(u) for u in range(g.n)]
    probes = list(combinations(range(g.n), k))

    # discover reachable states and their transitions once; intern the
    # frozensets so equal states share one object
    full = frozenset(range(g.n))
    interned: dict = {full: full}
    transitions: dict = {}
    stack = [full]
    while stack:
        s = stack.pop()
        if s in transitions:
            continue
        entry = []
        sv = sorted(s)
        for p in probes:
            groups: dict = {}
            for v in sv:
                key = tuple(int(rows[u][v]) for u in p)
                groups.setdefault(key, []).append(v)
            succs = []
            for vs in groups.values():
                if len(vs) > 1:
                    nxt = set(vs)
                    for v in vs:
                        nxt.update(g.adj[v])
                    fs = frozenset(nxt)
                    succs.append(interned.setdefault(fs, fs))
            entry.append((p, succs))
            for nxt in succs:
                if nxt not in transitions:
                    stack.append(nxt)
        transitions[s] = entry

    depth = {s: None for s in transitions}
    witness = {}
    changed = True
    d = 0
    while changed:
        changed = False
        d += 1
        newly = []
        for s, entry in transitions.items():
            if depth[s] is not None:
                continue
            for p, succs in entry:
                if all(depth[nxt] is not None and depth[nxt] < d for nxt in succs):
                    newly.append((s, p))
                    break
        for s, p in newly:
            depth[s] = d
            witness[s] = p
            changed = True
    table = GameStateTable(k, depth, witness)
    return depth[full] is not None, table


def localization_number(g: Graph, kmax: int):
    """Least k <= kmax with cops_win true, else the string "exceeds kmax"."""
    for k in range(1, kmax + 1):
        won, _ = cops_win(g, k)
        if won:
            return k
    return "exceeds kmax"


def metric_dimension(g: Graph) -> int:
    """Minimum size of a vertex set whose distance vectors separate all vertices."""
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    if g.n > 16:
        raise SolverLimitError(f"metric dimension enumeration capped at n=16, got {g.n}")
    if g.n == 1:
        return 0
    oracle = distances(g)
    rows = [tuple(int(x) for x in oracle.row(u)) for u in range(g.n)]
    for size in range(1, g.n):
        for w in combinations(range(g.n), size):
            seen = set()
            ok = True
            for v in range(g.n):
                key = tuple(rows[u][v] for u in w)
                if key in seen:
                    ok = False
                    break
                seen.add(key)
            if ok:
                return size
    return g.n


@dataclass
class BoundsReport:
    """Degeneracy-driven bounds bracketing the localization number."""

    degeneracy: int
    lower_deg: int | None
    lower_bip: int | None
    greedy_chromatic: int
    dim: int | None = None
    zeta: int | str | None = None

    def to_json(self):
        return {
            "degeneracy": self.degeneracy,
            "lower_deg": self.lower_deg,
            "lower_bip": self.lower_bip,
            "greedy_chromatic": self.greedy_chromatic,
            "dim": self.dim,
            "zeta": self.zeta,
        }


def lower_bounds(g: Graph, with_dim: bool = False, with_zeta_kmax: int | None = None) -> BoundsReport:
    """Degeneracy lower bounds, greedy chromatic number, and optional exact values.

    A single vertex has degeneracy 0 and the logarithmic bounds are skipped.
    """
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    res = degeneracy(g)
    k = res.k
    if k == 0:
        lo_deg = None
        lo_bip = None
    else:
        lo_deg = math.ceil(math.log(k + 1, 3) - 1e-12)
        lo_bip = None
        if bipartition(g) is not None:
            lo_bip = max(0, math.ceil(math.log2(k) - 1e-12))
    coloring = greedy_color(g, list(reversed(res.elimination_order)))
    chi = max(coloring.values()) + 1
    report = BoundsReport(degeneracy=k, lower_deg=lo_deg, lower_bip=lo_bip, greedy_chromatic=chi)
    if with_dim:
        report.dim = metric_dimension(g)
    if with_zeta_kmax is not None:
        report.zeta = localization_number(g, with_zeta_kmax)
    return report


def verify_chromatic_bound(g: Graph, k_verified: int) -> bool:
    """Check greedy chromatic number <= 3**k_verified for a cop count that
    has been verified to capture on g.  A failure signals a bug."""
    res = degeneracy(g)
    coloring = greedy_color(g, list(reversed(res.elimination_order)))
    chi = max(coloring.values()) + 1
    return chi <= 3**k_verified
