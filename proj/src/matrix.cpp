#include "capt/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace capt {

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b,
                            Subsystem traced) {
  const Index n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("partial_trace: matrix is not dim_a*dim_b square");
  if (traced == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Index u = 0; u < dim_a; ++u)
      for (Index v = 0; v < dim_a; ++v)
        for (Index c = 0; c < dim_b; ++c)
          out(u, v) += m(u * dim_b + c, v * dim_b + c);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index c = 0; c < dim_b; ++c)
    for (Index e = 0; e < dim_b; ++e)
      for (Index u = 0; u < dim_a; ++u)
        out(c, e) += m(u * dim_b + c, u * dim_b + e);
  return out;
}

ComplexMatrix trace_out_b_with(const ComplexMatrix& m, Index dim_a, Index dim_b,
                               const ComplexMatrix& g) {
  const Index n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("trace_out_b_with: matrix is not dim_a*dim_b square");
  if (g.rows() != dim_b || g.cols() != dim_b)
    throw std::invalid_argument("trace_out_b_with: operator does not act on B");
  // Tr_B((1 ⊗ g†) m)(u,v) = sum_{c,c'} conj(g(c',c)) m[(u c'),(v c)]
  ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
  for (Index u = 0; u < dim_a; ++u)
    for (Index v = 0; v < dim_a; ++v) {
      Complex acc = 0.0;
      for (Index c = 0; c < dim_b; ++c)
        for (Index cp = 0; cp < dim_b; ++cp)
          acc += std::conj(g(cp, c)) * m(u * dim_b + cp, v * dim_b + c);
      out(u, v) = acc;
    }
  return out;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return (a.adjoint() * b).trace();
}

RealVector singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double p_norm(const ComplexMatrix& m, SchattenNorm p) {
  const RealVector sv = singular_values(m);
  switch (p) {
    case SchattenNorm::one:
      return sv.sum();
    case SchattenNorm::two:
      return std::sqrt(sv.squaredNorm());
    case SchattenNorm::inf:
      return sv.size() > 0 ? sv(0) : 0.0;
  }
  return 0.0;
}

Index rank_from_singular_values(const RealVector& sv, double rel_tol) {
  if (sv.size() == 0) return 0;
  const double cutoff = rel_tol * sv(0);
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

ComplexVector vec_row_major(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

ComplexMatrix unvec_row_major(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("unvec_row_major: size mismatch");
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

bool is_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian,
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace capt
