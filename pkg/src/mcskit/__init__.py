"""Maximum common subgraph toolkit: association-graph reduction to maximum
clique, solved with replicator dynamics, annealed imitation heuristics and
independent-set kernelization, plus exact oracles and a benchmark harness.
"""

from .annealing import (
    AnnealingSchedule,
    build_schedule,
    clique_upper_bound,
    compute_gamma,
    density,
    gamma_hat,
    run_aih,
    shifted_payoff,
)
from .dynamics import (
    PayoffMatrix,
    RDOutcome,
    barycenter,
    characteristic_vector,
    extract_clique,
    inject_noise,
    objective,
    payoff_bomze,
    payoff_plain,
    rd_step,
    run_rd,
    support,
    two_phase_rd,
)
from .exact import (
    OracleBudget,
    is_clique,
    largest_eigenvalue,
    max_clique_exact,
    mcs_brute_force,
    mis_exact,
    verify_common_subgraph,
)
from .graphs import (
    AssociationGraph,
    Graph,
    association_graph,
    complement,
    erdos_renyi,
    new_graph,
    parse_dimacs,
    permuted_copy,
    write_dimacs,
)
from .kernelization import (
    KernelResult,
    ReductionState,
    linear_time,
    reconstruct_mis,
    reduce_full,
)
from .pipeline import (
    MCSResult,
    SolveConfig,
    kernelize_for_clique,
    lift_clique,
    solve_mcs,
)

__version__ = "0.1.0"
