#include "capt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(~stream));
}

double Rng::uniform() {
  return double(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return Complex(normal() * inv_sqrt2, normal() * inv_sqrt2);
}

ComplexMatrix random_haar_unitary(Index d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("random_haar_unitary: d >= 1 required");
  ComplexMatrix g(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ComplexMatrix random_haar_unitary(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_haar_unitary(d, rng);
}

ComplexMatrix random_density_matrix(Index d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

ComplexVector random_pure_state(Index d, Rng& rng) {
  ComplexVector psi(d);
  for (Index i = 0; i < d; ++i) psi(i) = rng.complex_normal();
  psi /= psi.norm();
  return psi;
}

}  // namespace capt
