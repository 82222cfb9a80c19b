// Closed-loop process tomography: prepare a planned input set, push it
// through a hidden channel, and reconstruct the channel by linear inversion.
#pragma once

#include <optional>
#include <vector>

#include "capt/channel.hpp"
#include "capt/state.hpp"

namespace capt {

enum class Scheme { spt, aapt, capt };

// SPT plans carry probe states; AAPT/CAPT plans carry a bipartite state, and
// CAPT additionally the local settings applied before the unknown channel.
// An empty settings list means the single identity setting (plain AAPT).
struct ExperimentPlan {
  Scheme scheme = Scheme::capt;
  std::optional<BipartiteState> state;
  std::vector<QuantumChannel> local_ops;
  std::vector<ComplexMatrix> probes;  // SPT only, density matrices
  std::uint64_t seed = 0;
  double tolerance = kRelRankTol;
};

void validate_plan(const ExperimentPlan& plan);

// The input states actually sent through the unknown channel. SPT probes are
// wrapped as bipartite states with a trivial one-dimensional ancilla so that
// every scheme flows through the same reconstruction path.
std::vector<BipartiteState> prepared_inputs(const ExperimentPlan& plan);

// Exact outputs (Lambda ⊗ id)[input] per setting.
std::vector<BipartiteState> simulate_outputs(const ExperimentPlan& plan,
                                             const QuantumChannel& truth);

// Empirical estimates from multinomial sampling of a fixed informationally
// complete product measurement; converges to the exact outputs as the shot
// count grows. Outputs are Hermitian with unit trace but need not be PSD.
std::vector<BipartiteState> add_shot_noise(
    const std::vector<BipartiteState>& outputs, long shots,
    std::uint64_t seed);

struct ReconstructionResult {
  LinearMap estimated;   // CP/TP not imposed unless projection was requested
  double residual = 0.0; // least-squares residual, Frobenius
  std::optional<double> choi_error;  // distance to the true Choi when known
  Index determined_dim = 0;          // dimension of the learnable input subspace
  bool exact_recovery = false;       // residual below tol and full determined_dim
};

struct ReconstructionOptions {
  double tol = kRelRankTol;
  bool project_cptp = false;
};

// Least-squares inversion of the linear system tying the channel action on
// the spanned input-operator subspace to the observed outputs. With a
// faithful plan and exact data the recovery is exact; otherwise the estimate
// is the minimum-norm solution supported on the determined subspace.
ReconstructionResult reconstruct(const ExperimentPlan& plan,
                                 const std::vector<BipartiteState>& outputs,
                                 const ComplexMatrix* truth_choi = nullptr,
                                 const ReconstructionOptions& options = {});

// simulate_outputs + optional shot noise + reconstruct (shots = 0 is exact).
ReconstructionResult run_experiment(const ExperimentPlan& plan,
                                    const QuantumChannel& truth,
                                    long shots = 0,
                                    const ReconstructionOptions& options = {});

// d^2 linearly independent probe states for a standard-tomography plan.
std::vector<ComplexMatrix> spt_probe_states(Index d);

}  // namespace capt
