// Dense complex-matrix primitives: tensor products, partial traces,
// Hilbert-Schmidt inner products and Schatten norms.
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace capt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative singular-value cutoff for every rank decision in the toolkit.
inline constexpr double kRelRankTol = 1e-9;
// Slack for hermiticity / trace / positivity validation of constructed objects.
inline constexpr double kValidationTol = 1e-10;

enum class Subsystem { A, B };
enum class SchattenNorm { one, two, inf };

// Kronecker product; subsystem A is always the slow (left) factor,
// composite row index = i_A * rows(B) + i_B.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out one subsystem of a (dim_a*dim_b)-square matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b,
                            Subsystem traced);

// Tr_B((1 ⊗ g†) m) for m on A⊗B.
ComplexMatrix trace_out_b_with(const ComplexMatrix& m, Index dim_a, Index dim_b,
                               const ComplexMatrix& g);

// Tr(a† b); throws on shape mismatch.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Schatten p-norm from singular values, p in {1, 2, inf}.
double p_norm(const ComplexMatrix& m, SchattenNorm p);

RealVector singular_values(const ComplexMatrix& m);

// Number of singular values above rel_tol * max(sv).
Index rank_from_singular_values(const RealVector& sv, double rel_tol);

// Row-major flattening, entry (i,j) at position i*cols + j.
ComplexVector vec_row_major(const ComplexMatrix& m);
ComplexMatrix unvec_row_major(const ComplexVector& v, Index rows, Index cols);

bool is_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kValidationTol);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& hermitian);

}  // namespace capt
