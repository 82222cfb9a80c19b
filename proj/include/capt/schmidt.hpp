// Operator Schmidt decomposition of bipartite states, the correlation matrix,
// and the Schmidt decomposition of pure state vectors.
#pragma once

#include <vector>

#include "capt/basis.hpp"
#include "capt/state.hpp"

namespace capt {

struct OperatorSchmidtDecomposition {
  std::vector<double> coefficients;   // descending, all above the rank cutoff
  std::vector<ComplexMatrix> ops_a;   // HS-orthonormal, Hermitian for Hermitian input
  std::vector<ComplexMatrix> ops_b;
  Index osr = 0;
  // Set when some singular value sits within a factor 100 of the rank cutoff,
  // i.e. when the rank decision is fragile at the requested tolerance.
  bool near_threshold = false;

  ComplexMatrix reconstruct() const;  // sum_i r_i A_i ⊗ B_i
};

struct PureSchmidt {
  std::vector<double> coefficients;  // sqrt(p_i), descending
  std::vector<ComplexVector> vectors_a;
  std::vector<ComplexVector> vectors_b;
  Index rank = 0;
};

// Entry (i,j) = Tr(F_i† ⊗ G_j† rho); real-valued for Hermitian bases and
// Hermitian rho.
ComplexMatrix correlation_matrix(const BipartiteState& rho,
                                 const HermitianBasis& basis_a,
                                 const HermitianBasis& basis_b);

// SVD of the correlation matrix in the Gell-Mann bases. Coefficients are the
// operator Schmidt coefficients; local operators are rebuilt from the singular
// vectors and kept Hermitian. The sign of each pair is fixed by making the
// largest-magnitude real entry of ops_a[i] positive.
OperatorSchmidtDecomposition operator_schmidt_decompose(
    const BipartiteState& rho, double tol = kRelRankTol);

// Number of operator Schmidt coefficients above tol * max coefficient.
Index osr(const BipartiteState& rho, double tol = kRelRankTol);

// Schmidt decomposition of a normalized state vector on C^{d_a} ⊗ C^{d_b}.
PureSchmidt schmidt_decompose_pure(const ComplexVector& psi, Index dim_a,
                                   Index dim_b, double tol = kRelRankTol);

}  // namespace capt
