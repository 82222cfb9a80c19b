// CP/TP maps in the Choi representation, channel factories, and the
// trace-preserving basis-shift maps used to grow faithful input sets.
#pragma once

#include <optional>
#include <vector>

#include "capt/rng.hpp"
#include "capt/state.hpp"

namespace capt {

// Linear map L(C^dim_in) -> L(C^dim_out) stored as the unnormalized Choi
// matrix J = sum_{uv} L[|u><v|] ⊗ |u><v|, output as the slow factor:
// J[(a,u),(b,v)] = L[|u><v|](a,b). Complete positivity is not required.
struct LinearMap {
  Index dim_in = 0;
  Index dim_out = 0;
  ComplexMatrix choi;

  ComplexMatrix apply(const ComplexMatrix& x) const;
  // Tr_out(choi) as a dim_in square matrix.
  ComplexMatrix trace_of_outputs() const;
  bool is_trace_preserving(double tol = kValidationTol) const;
};

// Lift validated when require_tp is set.
LinearMap make_linear_map(Index dim_in, Index dim_out, ComplexMatrix choi,
                          bool require_tp = false);

class QuantumChannel {
 public:
  // Validates CP (Choi PSD within tol) and TP (Tr_out choi = 1).
  static QuantumChannel from_choi(Index dim_in, Index dim_out,
                                  ComplexMatrix choi,
                                  double tol = kValidationTol);
  static QuantumChannel identity(Index d);

  Index dim_in() const { return map_.dim_in; }
  Index dim_out() const { return map_.dim_out; }
  const ComplexMatrix& choi() const { return map_.choi; }
  const LinearMap& map() const { return map_; }

  ComplexMatrix apply(const ComplexMatrix& x) const { return map_.apply(x); }

 private:
  explicit QuantumChannel(LinearMap m) : map_(std::move(m)) {}
  LinearMap map_;
};

// (Lambda ⊗ id) acting on the probe side of a bipartite state.
BipartiteState apply_local_a(const QuantumChannel& channel,
                             const BipartiteState& rho);
// Same action on a raw matrix, for maps that need not be CP.
ComplexMatrix apply_local_a(const LinearMap& map, const ComplexMatrix& joint,
                            Index dim_a, Index dim_b);

// X -> Tr(X) 1/d.
QuantumChannel depolarizing(Index d);
// X -> U X U†.
QuantumChannel unitary_channel(const ComplexMatrix& u);
// X -> Tr(X) rho0.
QuantumChannel constant_output_channel(const ComplexMatrix& rho0);
// Stinespring dilation with a Haar-random isometry of the given Kraus rank.
QuantumChannel random_channel(Index d, std::uint64_t seed, Index kraus_rank);
QuantumChannel random_channel(Index d, Rng& rng, Index kraus_rank);

// Trace-preserving map X -> sum_j Tr(A_j X) A_{s(j)} + [Tr X - sum_j
// Tr(A_j X) Tr(A_{s(j)})] 1/d, where s shifts basis indices cyclically by
// shift_index * block_size modulo d^2. Not completely positive in general.
struct BasisShiftMap {
  LinearMap map;
  Index shift_index = 0;
  Index block_size = 0;
  bool identity_permutation = false;  // shift is a multiple of d^2
};

BasisShiftMap make_basis_shift_map(const std::vector<ComplexMatrix>& basis,
                                   Index shift_index, Index block_size);

// Largest epsilon in (0, 1] for which mix_to_channel stays completely
// positive. Closed form for the maximally mixed fixed output, bisection to
// 1e-12 otherwise. Strictly positive for every trace-preserving input.
double max_cp_epsilon(const LinearMap& tp_map,
                      const std::optional<ComplexMatrix>& fixed_output = {});

// (1-eps) Tr(X) tau + eps map[X]; tau defaults to the maximally mixed state.
// Throws when the requested epsilon breaks complete positivity, naming the
// offending Choi eigenvalue.
QuantumChannel mix_to_channel(const LinearMap& tp_map, double epsilon,
                              const std::optional<ComplexMatrix>& fixed_output = {});

inline QuantumChannel mix_to_channel(const BasisShiftMap& shift_map, double epsilon,
                                     const std::optional<ComplexMatrix>& fixed_output = {}) {
  return mix_to_channel(shift_map.map, epsilon, fixed_output);
}

// Clip the Choi to PSD and restore trace preservation; optional post-step for
// reconstructions from noisy data.
QuantumChannel project_to_cptp(const LinearMap& map);

}  // namespace capt
