// Seeded randomness: Haar unitaries, random density matrices and pure states.
// All sampling is reproducible for a fixed seed.
#pragma once

#include <cstdint>
#include <random>

#include "capt/matrix.hpp"

namespace capt {

// Deterministic stream splitting for independent substreams of one seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_raw() { return engine_(); }

  // Uniform double in [0, 1).
  double uniform();

  // Standard normal via Box-Muller (platform-independent given the engine).
  double normal();

  // Standard complex normal, E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Exact Haar sampling: QR of a complex Gaussian matrix with the phases of
// diag(R) folded back into Q.
ComplexMatrix random_haar_unitary(Index d, Rng& rng);
ComplexMatrix random_haar_unitary(Index d, std::uint64_t seed);

// Hilbert-Schmidt random density matrix G G† / Tr(G G†).
ComplexMatrix random_density_matrix(Index d, Rng& rng);

ComplexVector random_pure_state(Index d, Rng& rng);

}  // namespace capt
