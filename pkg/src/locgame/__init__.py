"""Localization game on graphs: generators, referee engine, cop and robber
strategies, and an exact solver for small instances."""

from .graph import (
    BlockTree,
    DegeneracyResult,
    DistanceOracle,
    Graph,
    NotOuterplanarError,
    OuterEmbedding,
    bipartition,
    block_decomposition,
    degeneracy,
    distances,
    from_edge_list,
    greedy_color,
    is_outerplanar,
    outer_embedding,
    read_edge_list,
    write_edge_list,
)
from .generators import (
    GkLayout,
    ProductLayout,
    clique,
    cycle,
    gk,
    gk_satellite_distance,
    hamming_oracle,
    hypercube,
    path,
    path_product,
    random_outerplanar,
    strong_cycle_power,
)
from .engine import (
    CandidateSet,
    Captured,
    EngineError,
    Evaded,
    StrategyFault,
    Transcript,
    exhaustive_phantom,
    expand,
    full_candidates,
    partition,
    peek_next_probe,
    play_concrete,
    play_phantom,
    refine,
    replay_candidates,
)
from .cop_strategies import (
    GkCops,
    HypercubeCops,
    ProductCops,
    RandomCops,
    SolverCops,
    StationaryCops,
    gk_cops,
    hypercube_cops,
    make_cops,
    outerplanar_cops,
    product_cops,
    solver_cops,
)
from .outerplanar import OuterplanarCops
from .robber_strategies import (
    BipartiteEvader,
    DegeneracyEvader,
    LargestClassAdversary,
    RandomAdversary,
    bipartite_evader,
    degeneracy_evader,
    largest_class_adversary,
    optimal_adversary,
    optimal_robber,
    random_adversary,
)
from .solver import (
    BoundsReport,
    GameStateTable,
    SolverLimitError,
    cops_win,
    localization_number,
    lower_bounds,
    metric_dimension,
    verify_chromatic_bound,
)

__version__ = "0.1.0"
