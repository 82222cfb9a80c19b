// Generators of faithful input sets from a fixed probe-ancilla state:
// ceil(d^2/OSR) local channels, d^2 unitary frames, block unitaries for pure
// inputs, and the two-unitary construction for discordant qubit probes.
#pragma once

#include <stdexcept>
#include <vector>

#include "capt/channel.hpp"
#include "capt/schmidt.hpp"

namespace capt {

// Input shapes a construction provably cannot handle (for example a
// maximally mixed probe in a product state, which no local unitary moves).
class ExcludedStateError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when the two-unitary qubit construction is asked for a state whose
// probe-side operators all commute.
class ZeroDiscordError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ceil(d^2 / OSR) channels, the first being the identity, such that the
// locally processed copies of rho form a faithful set. Built from
// basis-shift maps over a Hermitian basis whose leading block holds the OSD
// operators of rho; on rank degeneracy the mixing output is perturbed toward
// a random full-rank state (seeded) and the construction retried.
std::vector<QuantumChannel> faithful_channel_set(const BipartiteState& rho,
                                                 double tol = kRelRankTol,
                                                 std::uint64_t seed = 0);

struct UnitaryFrameSet {
  std::vector<ComplexMatrix> unitaries;  // d^2 of them, first is the identity
  ComplexMatrix probe_op;                // operator A whose orbit was grown
  double alpha = 0.0;                    // twirl coefficients of A ⊗ A†
  double beta = 0.0;
};

// d^2 local unitaries whose conjugates of rho form a faithful set. Rejects
// exactly the excluded shape: maximally mixed probe marginal in a product
// state. The probe operator is rho_A when it is not maximally mixed, else a
// frame-viable mixture of 1/d with a non-central OSD operator; candidate
// unitaries are Haar-sampled from the seed and kept greedily while they grow
// the span of {U A U†}.
UnitaryFrameSet faithful_unitary_set(const BipartiteState& rho,
                                     std::uint64_t seed,
                                     double tol = kRelRankTol);

// ceil(d/k)^2 unitaries making a Schmidt-rank-k pure input (Schmidt basis =
// first k computational vectors on the probe) a faithful set: block shifts
// |n> -> |n + p k> plus, per block pair, the two Hadamard-type recombination
// unitaries. When k does not divide d the construction is built at
// d' = ceil(d/k) k and compressed back to d by a polar correction of the
// truncated blocks; faithfulness is re-verified at dimension d.
std::vector<ComplexMatrix> block_unitary_set(Index d, Index k);

// True iff the state of a qubit probe is discordant on that side: OSR >= 2
// and not all nonzero-coefficient OSD operators commute pairwise.
bool qubit_discord_test(const BipartiteState& rho, double tol = kRelRankTol);

// Single qubit unitary U such that {rho, (U ⊗ 1) rho (U ⊗ 1)†} is faithful.
// Primary candidate is the pi/2 rotation about the cross product of the two
// noncommuting Bloch vectors; every candidate is verified and deterministic
// fallback rotations are tried when verification fails.
ComplexMatrix qubit_discord_unitary(const BipartiteState& rho,
                                    double tol = kRelRankTol);

}  // namespace capt
