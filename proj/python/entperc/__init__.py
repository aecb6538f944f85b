from ._core import (
    __version__,
    branching_survival,
    concurrence,
    continuity_bound,
    entropy_of_entanglement,
    eof_minimize,
    eof_two_qubit,
    estimate_pc,
    evolve_ghz,
    evolve_random,
    fit_exponential_decay,
    graph_counts,
    interaction_schedule,
    measure_xi,
    reduced_density_matrix,
    tau_estimate,
    entanglement_decay_bound,
    verify_correspondence,
)

__all__ = [
    "__version__",
    "branching_survival",
    "concurrence",
    "continuity_bound",
    "entropy_of_entanglement",
    "eof_minimize",
    "eof_two_qubit",
    "estimate_pc",
    "evolve_ghz",
    "evolve_random",
    "fit_exponential_decay",
    "graph_counts",
    "interaction_schedule",
    "measure_xi",
    "reduced_density_matrix",
    "tau_estimate",
    "entanglement_decay_bound",
    "verify_correspondence",
]
