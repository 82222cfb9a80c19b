// Shared fixtures and independent oracles for the test suites.
#pragma once

#include <cmath>
#include <vector>

#include "capt/basis.hpp"
#include "capt/faithfulness.hpp"
#include "capt/rng.hpp"
#include "capt/schmidt.hpp"
#include "capt/state.hpp"

namespace capt::testing {

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// |Phi+> = (|00> + |11>)/sqrt(2) as a two-qubit density matrix.
inline BipartiteState bell_state() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return pure_state(psi, 2, 2);
}

inline BipartiteState random_bipartite_state(Index da, Index db, Rng& rng) {
  return BipartiteState(da, db, random_density_matrix(da * db, rng));
}

inline ComplexMatrix random_matrix(Index rows, Index cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(Index d, Rng& rng) {
  const ComplexMatrix g = random_matrix(d, d, rng);
  return ((g + g.adjoint()) / 2.0).eval();
}

// State with operator Schmidt rank exactly k: maximally mixed plus k-1
// distinct couplings along traceless basis directions, scaled to stay PSD.
inline BipartiteState state_with_osr(Index da, Index db, Index k) {
  const HermitianBasis fa = hermitian_basis(da);
  const HermitianBasis gb = hermitian_basis(db);
  ComplexMatrix m = ComplexMatrix::Identity(da * db, da * db) /
                    double(da * db);
  const double base = 1.0 / (2.0 * double(da * db) * double(k + 1));
  for (Index i = 1; i < k; ++i) {
    const double eps = base * (1.0 + double(k - i) / double(k));
    m += eps * tensor_product(fa.elements[i], gb.elements[i]);
  }
  return BipartiteState(da, db, std::move(m));
}

// Classical-on-A two-qubit state p |a1><a1| ⊗ rho1 + (1-p) |a2><a2| ⊗ rho2.
inline BipartiteState zero_discord_state(Index db, Rng& rng) {
  const ComplexMatrix u = random_haar_unitary(2, rng);
  const ComplexVector a1 = u.col(0);
  const ComplexVector a2 = u.col(1);
  const double p = 0.2 + 0.6 * rng.uniform();
  const ComplexMatrix m =
      p * tensor_product((a1 * a1.adjoint()).eval(), random_density_matrix(db, rng)) +
      (1.0 - p) *
          tensor_product((a2 * a2.adjoint()).eval(), random_density_matrix(db, rng));
  return BipartiteState(2, db, m);
}

// Haar-random Schmidt-rank-k pure state whose probe Schmidt basis is the
// first k computational vectors (the basis the block construction assumes).
inline BipartiteState canonical_rank_k_pure(Index d, Index k, Rng& rng) {
  RealVector p(k);
  double total = 0.0;
  for (Index i = 0; i < k; ++i) {
    p(i) = 0.1 + rng.uniform();
    total += p(i);
  }
  const ComplexMatrix ub = random_haar_unitary(d, rng);
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Index i = 0; i < k; ++i) {
    const double amp = std::sqrt(p(i) / total);
    for (Index j = 0; j < d; ++j) psi(i * d + j) += amp * ub(j, i);
  }
  return pure_state(psi, d, d);
}

// Entrywise oracle for the correlation matrix, independent of the
// realignment shortcut used by the library.
inline ComplexMatrix naive_correlation_matrix(const BipartiteState& rho,
                                              const HermitianBasis& fa,
                                              const HermitianBasis& gb) {
  const Index na = fa.dim * fa.dim;
  const Index nb = gb.dim * gb.dim;
  ComplexMatrix c(na, nb);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j)
      c(i, j) = hs_inner(tensor_product(fa.elements[i], gb.elements[j]),
                         rho.matrix());
  return c;
}

// Monte-Carlo oracle for the twirl: average of (U ⊗ U) Y (U ⊗ U)† over
// Haar samples, summed in a fixed order.
inline ComplexMatrix monte_carlo_twirl(const ComplexMatrix& y, Index d,
                                       int samples, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix acc = ComplexMatrix::Zero(y.rows(), y.cols());
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix u = random_haar_unitary(d, rng);
    const ComplexMatrix uu = tensor_product(u, u);
    acc += uu * y * uu.adjoint();
  }
  return acc / double(samples);
}

}  // namespace capt::testing
