#include "capt/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace capt {

HermitianBasis hermitian_basis(Index d) {
  if (d < 2) throw std::invalid_argument("hermitian_basis: need d >= 2");
  HermitianBasis basis;
  basis.dim = d;
  basis.elements.reserve(d * d);

  basis.elements.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(double(d)));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  for (Index j = 0; j < d; ++j)
    for (Index k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.elements.push_back(sym);
      ComplexMatrix asym = ComplexMatrix::Zero(d, d);
      asym(j, k) = -i_unit * inv_sqrt2;
      asym(k, j) = i_unit * inv_sqrt2;
      basis.elements.push_back(asym);
    }

  for (Index l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    const double f = 1.0 / std::sqrt(double(l) * double(l + 1));
    for (Index j = 0; j < l; ++j) diag(j, j) = f;
    diag(l, l) = -double(l) * f;
    basis.elements.push_back(diag);
  }

  // Construction is orthonormal by design; guard against regressions.
  for (std::size_t i = 0; i < basis.elements.size(); ++i)
    for (std::size_t j = i; j < basis.elements.size(); ++j) {
      const Complex g = hs_inner(basis.elements[i], basis.elements[j]);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > 1e-12)
        throw std::runtime_error("hermitian_basis: orthonormality check failed");
    }
  return basis;
}

HermitianBasis hermitian_basis_or_trivial(Index d) {
  if (d == 1) {
    HermitianBasis basis;
    basis.dim = 1;
    basis.elements.push_back(ComplexMatrix::Identity(1, 1));
    return basis;
  }
  return hermitian_basis(d);
}

std::vector<ComplexMatrix> complete_hermitian_basis(
    const std::vector<ComplexMatrix>& prefix, Index d) {
  const Index n = d * d;
  const Index k = static_cast<Index>(prefix.size());
  if (k > n) throw std::invalid_argument("complete_hermitian_basis: prefix too large");
  const HermitianBasis gm = hermitian_basis(d);

  for (const auto& p : prefix) {
    if (p.rows() != d || p.cols() != d)
      throw std::invalid_argument("complete_hermitian_basis: prefix dimension mismatch");
    if (!is_hermitian(p, 1e-9))
      throw std::invalid_argument("complete_hermitian_basis: prefix element not Hermitian");
  }

  // Hermitian operators are real vectors in the Gell-Mann coordinate system;
  // complete the prefix there with a Householder QR.
  RealMatrix coords(n, k);
  for (Index l = 0; l < k; ++l)
    for (Index m = 0; m < n; ++m)
      coords(m, l) = hs_inner(gm.elements[m], prefix[l]).real();

  std::vector<ComplexMatrix> out = prefix;
  if (k < n) {
    RealMatrix q;
    if (k == 0) {
      q = RealMatrix::Identity(n, n);
    } else {
      Eigen::HouseholderQR<RealMatrix> qr(coords);
      q = qr.householderQ();
    }
    for (Index m = k; m < n; ++m) {
      ComplexMatrix h = ComplexMatrix::Zero(d, d);
      for (Index a = 0; a < n; ++a) h += q(a, m) * gm.elements[a];
      out.push_back(h);
    }
  }

  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i; j < out.size(); ++j) {
      const Complex g = hs_inner(out[i], out[j]);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > 1e-8)
        throw std::runtime_error("complete_hermitian_basis: completion not orthonormal");
    }
  return out;
}

}  // namespace capt
