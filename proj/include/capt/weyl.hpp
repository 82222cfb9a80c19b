// Weyl (generalized Pauli) operators, their Fourier conjugation orbits, and
// the orbit-representative sets behind the two-setting state family.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "capt/state.hpp"

namespace capt {

// X^k Z^l with X the cyclic shift, Z the clock and omega = exp(2 pi i / d).
struct WeylOperator {
  Index k = 0;
  Index l = 0;
  ComplexMatrix matrix;
};

ComplexMatrix shift_matrix(Index d);  // X
ComplexMatrix clock_matrix(Index d);  // Z
ComplexMatrix fourier_matrix(Index d);

WeylOperator weyl_operator(Index d, Index k, Index l);

// Orbit of (k,l) under the index action (k,l) -> (-l,k) of F . F†.
struct WeylOrbit {
  std::vector<std::pair<Index, Index>> members;  // one, two or four pairs
};

// Partition of all d^2 index pairs into Fourier orbits. Verifies at matrix
// level that F X^k Z^l F† = omega^{-kl} X^{-l} Z^k on every member.
std::vector<WeylOrbit> weyl_orbits(Index d);

struct RepresentativeSets {
  std::vector<WeylOperator> p1;  // one representative per orbit
  std::vector<WeylOperator> p2;  // p1 together with its Fourier image
};

// Explicit representative choices: for odd d = 2m+1, P1 = {X^k Z^l : k<=m,
// 1<=l<=m} plus 1; for even d = 2m, P1 = {X^k Z^l : k<m, 1<=l<=m} plus
// {1, X^m Z^m}. P2 = P1 together with F P1 F†, phase-duplicates equated.
// Both spanning guarantees (four Fourier powers of P1, two of P2) are
// checked at construction.
RepresentativeSets representative_sets(Index d);

// Qudit-qudit state 1/d ⊗ 1/d + eps * sum (H_kl ⊗ H_kl + J_kl ⊗ J_kl) over
// the non-identity representatives, with H/J the Hermitian and anti-Hermitian
// parts of X^k Z^l rescaled by sqrt(2). When eps is not given it defaults to
// half the largest value keeping the state PSD. The pair {sigma, (F ⊗ 1)
// sigma (F ⊗ 1)†} is faithful while OSR(sigma) stays near d^2 / 2.
BipartiteState fourier_pair_state(Index d,
                                  std::optional<double> epsilon = std::nullopt);

}  // namespace capt
