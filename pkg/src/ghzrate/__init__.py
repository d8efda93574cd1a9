"""Three-qubit GHZ-form entanglement dynamics under gamma_x XXX + gamma_y YYY."""
from .state import (Flip, GHZState, HamiltonianParams, PhaseShift, SigmaZ, apply_local_op,
                    b_parameter, make_state, to_amplitudes)
from .evolution import evolve, evolve_block, relative_phase, sample_trajectory
from .tangle import extrema, rate, rate_initial, tangle_closed_form, tangle_general
from .optimizer import flip_decision, optimal_phase, optimization_paths, optimize, rotate_to_optimal
from .protocols import (run_sigma_z_protocol, run_stationary_protocol, stationary_state,
                        threshold_times, verify_timeline)

__all__ = [
    "Flip", "GHZState", "HamiltonianParams", "PhaseShift", "SigmaZ", "apply_local_op",
    "b_parameter", "make_state", "to_amplitudes", "evolve", "evolve_block", "relative_phase",
    "sample_trajectory", "extrema", "rate", "rate_initial", "tangle_closed_form",
    "tangle_general", "flip_decision", "optimal_phase", "optimization_paths", "optimize",
    "rotate_to_optimal", "run_sigma_z_protocol", "run_stationary_protocol", "stationary_state",
    "threshold_times", "verify_timeline",
]
