"""Hidden Matching games: simulation, exact evaluation, and diagnostics.

A library for the one-way-communication Hidden Matching game and its
nonlocal variants: entangled-state strategies that win with certainty,
explicit classical protocols with quantifiable advantage, strategy
transforms between the two settings, exact and Monte Carlo evaluation,
classical-value optimization, and the Fourier-analytic inequality chain
behind the classical upper bound.
"""

from .bits import bits_to_int, dot_mod2, edge_parity, int_to_bits, xor_index
from .classical import (CommProtocol, DeterministicStrategyPair,
                        FunctionCommProtocol, FunctionNonlocalStrategy,
                        GrothendieckVectors, HyperplaneRoundingStrategy,
                        MajorityBlockProtocol, NonlocalStrategy,
                        RandomOutputStrategy, SimulatedCommStrategy,
                        TableCommProtocol, comm_from_nonlocal,
                        constant_message_protocol,
                        cross_block_event_probability, grothendieck_vectors,
                        hyperplane_rounding_strategy, nonlocal_from_comm,
                        pair_parity_protocol, random_comm_protocol,
                        random_deterministic_pair, rounding_identity_check,
                        rounding_identity_pairs, solve_b_for_parity)
from .distributions import FiniteDistribution
from .errors import CapExceededError
from .evaluation import (EvaluationReport, exact_win_probability,
                         mc_win_probability, round_win_probability,
                         wilson_interval)
from .fourier import (FourierReport, MessageRecord, dyadic_entropy_within,
                      entropy, fourier_report)
from .games import (CommOutcome, ExplicitTable, GameInstance, GameVariant,
                    NonlocalOutcome, SmallOutputOutcome, UniformInputs,
                    advantage_from_probability, win_predicate)
from .matchings import (FamilyKind, Matching, MatchingFamily,
                        enumerate_bijective_xor_matchings, enumerate_matchings,
                        sample_matching, sample_matchings_array)
from .optimize import (ClassicalValueResult, brute_force_classical_value,
                       local_search_classical_value)
from .quantum import (OutcomeDistribution, QuantumStrategy,
                      hm_quantum_distribution, hmnl_distribution_by_amplitudes,
                      hmnl_quantum_distribution, hmnl_small_output_distribution,
                      sample_outcome)
from .ratio import RatioReport, ratio_report

__version__ = "0.1.0"
