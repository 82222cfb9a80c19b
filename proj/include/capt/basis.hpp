// Hermitian operator bases: normalized identity plus generalized Gell-Mann
// matrices, and orthonormal completion of a given Hermitian prefix.
#pragma once

#include <vector>

#include "capt/matrix.hpp"

namespace capt {

struct HermitianBasis {
  Index dim = 0;
  std::vector<ComplexMatrix> elements;  // d*d elements, HS-orthonormal
};

// Orthonormal Hermitian basis of L(C^d): element 0 is 1/sqrt(d), followed by
// the symmetric/antisymmetric off-diagonal pairs and the diagonal elements.
// For d=2 the order is {1, sigma_x, sigma_y, sigma_z} / sqrt(2).
HermitianBasis hermitian_basis(Index d);

// Same, but degenerates gracefully to {[1]} for the trivial ancilla d = 1.
HermitianBasis hermitian_basis_or_trivial(Index d);

// Extends an orthonormal family of Hermitian operators on C^d to a full
// orthonormal Hermitian basis of d*d elements; the prefix is kept verbatim.
std::vector<ComplexMatrix> complete_hermitian_basis(
    const std::vector<ComplexMatrix>& prefix, Index d);

}  // namespace capt
