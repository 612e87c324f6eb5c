"""Approximate monotone local search for monotone subset minimization.

Given a monotone set system (closed under supersets, containing the full
universe) and a parameterized alpha-approximate extension oracle running in
O*(c^k), this package provides:

  * bounds          the running-time exponent bases (the implicit
                    divergence-equation base plus three benchmarks)
  * combinatorics   exact hypergeometric tails, iteration costs, and the
                    optimal sample-size selection
  * engine          the randomized sample-and-extend search, its
                    family-driven deterministic variant, and a covering
                    brute force
  * families        greedy set-intersection families and coverings
  * problems        vertex cover and 3-hitting set front ends
  * cli             the ``amls`` command
"""

from .bounds import (
    BoundQuery,
    BoundReport,
    amls_bound,
    bound_report,
    bound_table,
    brute_bound,
    emls_bound,
    entropy,
    kl_divergence,
    naive_bound,
)
from .combinatorics import (
    IterationCost,
    binomial,
    continuous_t,
    empirical_brute_exponent,
    exact_ratio,
    hyper_symmetry_check,
    hyper_tail,
    iteration_cost,
    kappa,
    relaxed_log_cost,
    select_t,
)
from .engine import (
    ExtensionOracle,
    MonotoneInstance,
    RunConfig,
    RunReport,
    brute_force_search,
    exhaustive_minimum,
    run_deterministic,
    run_randomized,
    sample_once,
    solve,
    success_rate,
)
from .families import (
    LimitExceededError,
    SetFamily,
    build_covering,
    build_intersection_family,
    family_from_text,
    family_size_bound,
    family_to_text,
    verify_family,
)
from .problems import (
    Graph,
    Hypergraph3,
    ParseError,
    gen_gnp,
    gen_planted_vc,
    hs3_exact_oracle,
    hs3_extend_exact,
    hs3_system,
    parse_graph,
    parse_hypergraph,
    vc_exact_oracle,
    vc_extend_exact,
    vc_extend_matching,
    vc_matching_oracle,
    vc_system,
)

__version__ = "0.1.0"
