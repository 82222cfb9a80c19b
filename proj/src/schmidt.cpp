#include "capt/schmidt.hpp"

#include <cmath>
#include <stdexcept>

namespace capt {

ComplexMatrix OperatorSchmidtDecomposition::reconstruct() const {
  if (coefficients.empty()) throw std::runtime_error("empty decomposition");
  const Index da = ops_a.front().rows();
  const Index db = ops_b.front().rows();
  ComplexMatrix out = ComplexMatrix::Zero(da * db, da * db);
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    out += coefficients[i] * tensor_product(ops_a[i], ops_b[i]);
  return out;
}

ComplexMatrix correlation_matrix(const BipartiteState& rho,
                                 const HermitianBasis& basis_a,
                                 const HermitianBasis& basis_b) {
  const Index da = rho.dim_a();
  const Index db = rho.dim_b();
  if (basis_a.dim != da || basis_b.dim != db)
    throw std::invalid_argument("correlation_matrix: basis dimensions mismatch");

  // Realignment R[(jA,iA),(jB,iB)] = rho[(jA jB),(iA iB)] turns the entrywise
  // traces into two matrix products.
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix realigned(da * da, db * db);
  for (Index ja = 0; ja < da; ++ja)
    for (Index ia = 0; ia < da; ++ia)
      for (Index jb = 0; jb < db; ++jb)
        for (Index ib = 0; ib < db; ++ib)
          realigned(ja * da + ia, jb * db + ib) =
              m(ja * db + jb, ia * db + ib);

  ComplexMatrix fstack(da * da, da * da);
  for (Index i = 0; i < da * da; ++i)
    fstack.row(i) = vec_row_major(basis_a.elements[i]).transpose();
  ComplexMatrix gstack(db * db, db * db);
  for (Index j = 0; j < db * db; ++j)
    gstack.row(j) = vec_row_major(basis_b.elements[j]).transpose();

  return fstack.conjugate() * realigned * gstack.adjoint();
}

OperatorSchmidtDecomposition operator_schmidt_decompose(const BipartiteState& rho,
                                                        double tol) {
  const Index da = rho.dim_a();
  const Index db = rho.dim_b();
  const HermitianBasis fa = hermitian_basis(da);
  const HermitianBasis gb = hermitian_basis(db);
  const ComplexMatrix c = correlation_matrix(rho, fa, gb);

  // Hermitian bases and a Hermitian state give a real correlation matrix;
  // a real SVD keeps the rebuilt local operators Hermitian.
  if (c.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("operator_schmidt_decompose: correlation matrix not real");
  const RealMatrix cr = c.real();

  Eigen::JacobiSVD<RealMatrix> svd(cr, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = tol * sigma_max;

  OperatorSchmidtDecomposition osd;
  osd.osr = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++osd.osr;
    const double rel = sigma_max > 0 ? sv(i) / sigma_max : 0.0;
    if (rel > tol / 100.0 && rel < tol * 100.0) osd.near_threshold = true;
  }

  for (Index i = 0; i < osd.osr; ++i) {
    ComplexMatrix a = ComplexMatrix::Zero(da, da);
    for (Index n = 0; n < da * da; ++n) a += svd.matrixU()(n, i) * fa.elements[n];
    ComplexMatrix b = ComplexMatrix::Zero(db, db);
    for (Index n = 0; n < db * db; ++n) b += svd.matrixV()(n, i) * gb.elements[n];

    // Fix the sign pair so output is reproducible across platforms.
    double best = 0.0;
    for (Index r = 0; r < da; ++r)
      for (Index s = 0; s < da; ++s)
        if (std::abs(a(r, s).real()) > std::abs(best)) best = a(r, s).real();
    if (best < 0) {
      a = -a;
      b = -b;
    }
    osd.coefficients.push_back(sv(i));
    osd.ops_a.push_back(std::move(a));
    osd.ops_b.push_back(std::move(b));
  }
  return osd;
}

Index osr(const BipartiteState& rho, double tol) {
  return operator_schmidt_decompose(rho, tol).osr;
}

PureSchmidt schmidt_decompose_pure(const ComplexVector& psi, Index dim_a,
                                   Index dim_b, double tol) {
  if (psi.size() != dim_a * dim_b)
    throw std::invalid_argument("schmidt_decompose_pure: vector length mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("schmidt_decompose_pure: vector not normalized");

  ComplexMatrix coeff(dim_a, dim_b);
  for (Index i = 0; i < dim_a; ++i)
    for (Index j = 0; j < dim_b; ++j) coeff(i, j) = psi(i * dim_b + j);

  Eigen::JacobiSVD<ComplexMatrix> svd(coeff,
                                      Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv(0) : 0.0) * tol;

  PureSchmidt out;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cutoff) break;
    out.coefficients.push_back(sv(i));
    out.vectors_a.push_back(svd.matrixU().col(i));
    out.vectors_b.push_back(svd.matrixV().col(i).conjugate());
    ++out.rank;
  }
  return out;
}

}  // namespace capt
