"""Referee for the localization game: candidate-set maintenance, the round
loop for concrete and phantom play, transcripts, and the peek contract.

A round is: cops probe, the referee reports hop distances, the candidate set
is refined (capture iff it becomes a singleton), then the robber moves and
the candidate set is expanded by closed neighborhoods.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

from .graph import DistanceOracle, Graph, distances


class EngineError(RuntimeError):
    """Internal referee inconsistency (e.g. an observation no vertex satisfies)."""


POST_PROBE = "post-probe"
POST_MOVE = "post-move"


@dataclass(frozen=True)
class CandidateSet:
    """Vertices consistent with the probe history, tagged by round phase."""

    vertices: frozenset
    phase: str

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    def __iter__(self):
        return iter(self.vertices)


def full_candidates(g: Graph) -> CandidateSet:
    return CandidateSet(frozenset(range(g.n)), POST_MOVE)


def refine(s: CandidateSet, probe, dvec, oracle: DistanceOracle) -> CandidateSet:
    """Keep the candidates whose distances to the probe match the observation."""
    if s.phase != POST_MOVE:
        raise EngineError("refine expects a post-move candidate set")
    rows = [oracle.row(u) for u in probe]
    kept = frozenset(v for v in s.vertices if all(int(r[v]) == d for r, d in zip(rows, dvec)))
    if not kept:
        raise EngineError(f"observation {tuple(dvec)} at probe {tuple(probe)} matches no candidate")
    return CandidateSet(kept, POST_PROBE)


def expand(s: CandidateSet, g: Graph) -> CandidateSet:
    """Closed neighborhood of the candidate set (the robber may stay or step)."""
    if s.phase != POST_PROBE:
        raise EngineError("expand expects a post-probe candidate set")
    out = set(s.vertices)
    for v in s.vertices:
        out.update(g.adj[v])
    return CandidateSet(frozenset(out), POST_MOVE)


def partition(s: CandidateSet, probe, oracle: DistanceOracle):
    """Refine classes of a post-move candidate set, keyed by distance vector.

    Returned in canonical order: sorted by distance vector.  Every class is a
    post-probe CandidateSet.
    """
    if s.phase != POST_MOVE:
        raise EngineError("partition expects a post-move candidate set")
    rows = [oracle.row(u) for u in probe]
    groups: dict = {}
    for v in s.vertices:
        key = tuple(int(r[v]) for r in rows)
        groups.setdefault(key, []).append(v)
    return [(k, CandidateSet(frozenset(vs), POST_PROBE)) for k, vs in sorted(groups.items())]


@dataclass(frozen=True)
class Captured:
    round: int
    vertex: int

    def to_json(self):
        return {"type": "captured", "round": self.round, "vertex": self.vertex}


@dataclass(frozen=True)
class Evaded:
    rounds_played: int

    def to_json(self):
        return {"type": "evaded", "rounds_played": self.rounds_played}


@dataclass(frozen=True)
class StrategyFault:
    round: int
    description: str

    def to_json(self):
        return {"type": "fault", "round": self.round, "description": self.description}


@dataclass(frozen=True)
class Round:
    r: int
    probe: tuple
    dist: tuple
    candidates: int
    robber: int | None = None

    def to_json(self):
        d = {"r": self.r, "probe": list(self.probe), "dist": list(self.dist), "candidates": self.candidates}
        if self.robber is not None:
            d["robber"] = self.robber
        return d


@dataclass
class Transcript:
    graph_ref: str
    k: int
    mode: str
    rounds: list = field(default_factory=list)
    outcome: object = None
    seed: int | None = None

    def to_json(self):
        return {
            "graph_ref": self.graph_ref,
            "k": self.k,
            "mode": self.mode,
            "rounds": [r.to_json() for r in self.rounds],
            "outcome": self.outcome.to_json() if self.outcome is not None else None,
            "seed": self.seed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class _Fault(Exception):
    def __init__(self, description):
        self.description = description


def peek_next_probe(cops):
    """The probe the cop strategy will emit next, computed on a forked copy.

    Sound because every strategy's next probe depends only on observations
    already fixed before the robber moves; the live state is untouched.
    """
    return cops.clone().next_probe()


def default_cap(g: Graph) -> int:
    return 50 * g.n


def _checked_probe(cops, g, r):
    probe = tuple(cops.next_probe())
    if len(probe) != cops.k:
        raise _Fault(f"probe arity {len(probe)} != k={cops.k}")
    for u in probe:
        if not (0 <= u < g.n):
            raise _Fault(f"probe vertex {u} out of range")
    return probe


def play_concrete(g: Graph, cops, robber, cap: int | None = None, graph_ref: str | None = None,
                  seed: int | None = None):
    """Run a full game against a concrete robber token.

    The referee, not the cop strategy, declares capture: the game ends when
    the post-probe candidate set is a singleton.  Returns (Outcome, Transcript).
    """
    if cap is None:
        cap = default_cap(g)
    if cap < 1:
        raise ValueError("round cap must be at least 1")
    oracle = distances(g)
    t = Transcript(graph_ref or f"graph(n={g.n},m={g.m})", cops.k, "concrete", seed=seed)
    s = full_candidates(g)
    try:
        pos = robber.choose_start(lambda: peek_next_probe(cops))
        if not (0 <= pos < g.n):
            raise _Fault(f"robber start {pos} out of range")
        for r in range(1, cap + 1):
            probe = _checked_probe(cops, g, r)
            dvec = tuple(int(oracle.row(u)[pos]) for u in probe)
            cops.observe(dvec)
            s = refine(s, probe, dvec, oracle)
            if pos not in s:
                raise EngineError("soundness violation: true robber vertex left the candidate set")
            t.rounds.append(Round(r, probe, dvec, len(s), robber=pos))
            if len(s) == 1:
                t.outcome = Captured(r, next(iter(s.vertices)))
                return t.outcome, t
            new_pos = robber.move(pos, t.rounds, lambda: peek_next_probe(cops))
            if new_pos != pos and new_pos not in g.adj[pos]:
                raise _Fault(f"robber move {pos} -> {new_pos} is not stay-or-step")
            pos = new_pos
            s = expand(s, g)
        t.outcome = Evaded(cap)
    except _Fault as f:
        t.outcome = StrategyFault(len(t.rounds) + 1, f.description)
    return t.outcome, t


def play_phantom(g: Graph, cops, adversary, cap: int | None = None, graph_ref: str | None = None,
                 seed: int | None = None):
    """Run a game against a phantom adversary that picks refine classes.

    After each probe the adversary selects one nonempty class of the refine
    partition; that class becomes the candidate set.  Beating every phantom
    line within R rounds beats every concrete robber within R rounds.
    """
    if cap is None:
        cap = default_cap(g)
    if cap < 1:
        raise ValueError("round cap must be at least 1")
    oracle = distances(g)
    t = Transcript(graph_ref or f"graph(n={g.n},m={g.m})", cops.k, "phantom", seed=seed)
    s = full_candidates(g)
    try:
        for r in range(1, cap + 1):
            probe = _checked_probe(cops, g, r)
            classes = partition(s, probe, oracle)
            choice = adversary.choose(classes)
            if not (0 <= choice < len(classes)):
                raise _Fault(f"adversary chose class index {choice} of {len(classes)}")
            dvec, cls = classes[choice]
            cops.observe(dvec)
            t.rounds.append(Round(r, probe, dvec, len(cls)))
            if len(cls) == 1:
                t.outcome = Captured(r, next(iter(cls.vertices)))
                return t.outcome, t
            s = expand(cls, g)
        t.outcome = Evaded(cap)
    except _Fault as f:
        t.outcome = StrategyFault(len(t.rounds) + 1, f.description)
    return t.outcome, t


def replay_candidates(g: Graph, transcript: Transcript):
    """Post-probe candidate sets of a finished game, recomputed from the
    public transcript.  Used by invariant checks and tests."""
    oracle = distances(g)
    s = full_candidates(g)
    out = []
    for rnd in transcript.rounds:
        s = refine(s, rnd.probe, rnd.dist, oracle)
        out.append(s)
        s = expand(s, g)
    return out


def exhaustive_phantom(g: Graph, make_cops, cap: int, oracle: DistanceOracle | None = None):
    """Walk every phantom branch against a cop strategy factory.

    Returns (all_captured, worst_rounds, branches): whether every adversary
    choice sequence ends in capture within the cap, the deepest capture
    round, and the number of leaves explored.
    """
    if oracle is None:
        oracle = distances(g)
    worst = 0
    branches = 0
    all_captured = True

    stack = [(make_cops(), full_candidates(g), 1)]
    while stack:
        cops, s, r = stack.pop()
        if r > cap:
            all_captured = False
            branches += 1
            continue
        probe = tuple(cops.next_probe())
        classes = partition(s, probe, oracle)
        for dvec, cls in classes:
            branch_cops = cops.clone()
            branch_cops.observe(dvec)
            if len(cls) == 1:
                worst = max(worst, r)
                branches += 1
            else:
                stack.append((branch_cops, expand(cls, g), r + 1))
    return all_captured, worst, branches
