// Bipartite density matrices with dimension metadata.
#pragma once

#include "capt/matrix.hpp"

namespace capt {

enum class StateValidation {
  strict,          // Hermitian, PSD, unit trace
  hermitian_only,  // Hermitian, unit trace (empirical estimates may dip below PSD)
};

class BipartiteState {
 public:
  BipartiteState(Index dim_a, Index dim_b, ComplexMatrix matrix,
                 StateValidation level = StateValidation::strict,
                 double tol = kValidationTol);

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexMatrix reduced_a() const;
  ComplexMatrix reduced_b() const;

 private:
  Index dim_a_;
  Index dim_b_;
  ComplexMatrix matrix_;
};

// d_A x d_B product state rho_a ⊗ rho_b.
BipartiteState product_state(const ComplexMatrix& rho_a,
                             const ComplexMatrix& rho_b);

// Density matrix of a pure bipartite vector.
BipartiteState pure_state(const ComplexVector& psi, Index dim_a, Index dim_b);

}  // namespace capt
