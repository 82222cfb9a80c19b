#include "capt/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace capt {

BipartiteState::BipartiteState(Index dim_a, Index dim_b, ComplexMatrix matrix,
                               StateValidation level, double tol)
    : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
  const Index n = dim_a * dim_b;
  if (dim_a < 1 || dim_b < 1 || matrix_.rows() != n || matrix_.cols() != n)
    throw std::invalid_argument("BipartiteState: matrix is not dim_a*dim_b square");
  if (!is_finite(matrix_))
    throw std::invalid_argument("BipartiteState: non-finite entries");
  if (!is_hermitian(matrix_, tol))
    throw std::invalid_argument("BipartiteState: matrix not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 100 * tol)
    throw std::invalid_argument("BipartiteState: trace is " +
                                std::to_string(tr.real()) + ", expected 1");
  if (level == StateValidation::strict) {
    const double lambda_min = min_eigenvalue(matrix_);
    if (lambda_min < -tol)
      throw std::invalid_argument("BipartiteState: not PSD, min eigenvalue " +
                                  std::to_string(lambda_min));
  }
}

ComplexMatrix BipartiteState::reduced_a() const {
  return partial_trace(matrix_, dim_a_, dim_b_, Subsystem::B);
}

ComplexMatrix BipartiteState::reduced_b() const {
  return partial_trace(matrix_, dim_a_, dim_b_, Subsystem::A);
}

BipartiteState product_state(const ComplexMatrix& rho_a,
                             const ComplexMatrix& rho_b) {
  return BipartiteState(rho_a.rows(), rho_b.rows(), tensor_product(rho_a, rho_b));
}

BipartiteState pure_state(const ComplexVector& psi, Index dim_a, Index dim_b) {
  if (psi.size() != dim_a * dim_b)
    throw std::invalid_argument("pure_state: vector length mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("pure_state: vector not normalized");
  return BipartiteState(dim_a, dim_b, psi * psi.adjoint());
}

}  // namespace capt
