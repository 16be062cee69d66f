"""Orbital Markov chains: symmetry detection, lifted samplers and exact analysis."""

from ._core import (
    ClauseSet,
    Graph,
    GuardExceeded,
    Infeasible,
    InvalidInput,
    OrbitalError,
    automorphisms,
    complete,
    configuration_orbits,
    connected_cliques,
    coupling_drift,
    exact_pi_clauses,
    exact_pi_lambda,
    exact_rho,
    friends_smokers,
    gibbs_sample,
    grid,
    group_order,
    mixing_time,
    model_symmetry,
    run_command,
    sample,
    transition_matrix,
    tv_curve,
)

__all__ = [
    "ClauseSet",
    "Graph",
    "GuardExceeded",
    "Infeasible",
    "InvalidInput",
    "OrbitalError",
    "automorphisms",
    "complete",
    "configuration_orbits",
    "connected_cliques",
    "coupling_drift",
    "exact_pi_clauses",
    "exact_pi_lambda",
    "exact_rho",
    "friends_smokers",
    "gibbs_sample",
    "grid",
    "group_order",
    "mixing_time",
    "model_symmetry",
    "run_command",
    "sample",
    "transition_matrix",
    "tv_curve",
]
