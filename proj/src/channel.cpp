#include "capt/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace capt {

ComplexMatrix LinearMap::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_in || x.cols() != dim_in)
    throw std::invalid_argument("LinearMap::apply: input dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_out, dim_out);
  for (Index a = 0; a < dim_out; ++a)
    for (Index b = 0; b < dim_out; ++b) {
      Complex acc = 0.0;
      for (Index u = 0; u < dim_in; ++u)
        for (Index v = 0; v < dim_in; ++v)
          acc += x(u, v) * choi(a * dim_in + u, b * dim_in + v);
      out(a, b) = acc;
    }
  return out;
}

ComplexMatrix LinearMap::trace_of_outputs() const {
  return partial_trace(choi, dim_out, dim_in, Subsystem::A);
}

bool LinearMap::is_trace_preserving(double tol) const {
  const ComplexMatrix t = trace_of_outputs();
  return (t - ComplexMatrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff() <= tol;
}

LinearMap make_linear_map(Index dim_in, Index dim_out, ComplexMatrix choi,
                          bool require_tp) {
  LinearMap m{dim_in, dim_out, std::move(choi)};
  const Index n = dim_in * dim_out;
  if (dim_in < 1 || dim_out < 1 || m.choi.rows() != n || m.choi.cols() != n)
    throw std::invalid_argument("make_linear_map: Choi size mismatch");
  if (!is_finite(m.choi))
    throw std::invalid_argument("make_linear_map: non-finite Choi entries");
  if (require_tp && !m.is_trace_preserving())
    throw std::invalid_argument("make_linear_map: map is not trace preserving");
  return m;
}

QuantumChannel QuantumChannel::from_choi(Index dim_in, Index dim_out,
                                         ComplexMatrix choi, double tol) {
  LinearMap m = make_linear_map(dim_in, dim_out, std::move(choi));
  if (!is_hermitian(m.choi, 100 * tol))
    throw std::invalid_argument("QuantumChannel: Choi matrix not Hermitian");
  const double lambda_min = min_eigenvalue(m.choi);
  if (lambda_min < -tol)
    throw std::invalid_argument("QuantumChannel: not CP, Choi eigenvalue " +
                                std::to_string(lambda_min));
  const ComplexMatrix t = m.trace_of_outputs();
  const double tp_err =
      (t - ComplexMatrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
  if (tp_err > 100 * tol)
    throw std::invalid_argument("QuantumChannel: not TP, deviation " +
                                std::to_string(tp_err));
  return QuantumChannel(std::move(m));
}

QuantumChannel QuantumChannel::identity(Index d) {
  return unitary_channel(ComplexMatrix::Identity(d, d));
}

BipartiteState apply_local_a(const QuantumChannel& channel,
                             const BipartiteState& rho) {
  if (channel.dim_in() != rho.dim_a())
    throw std::invalid_argument("apply_local_a: probe dimension mismatch");
  ComplexMatrix out = apply_local_a(channel.map(), rho.matrix(), rho.dim_a(),
                                    rho.dim_b());
  return BipartiteState(channel.dim_out(), rho.dim_b(), std::move(out),
                        StateValidation::strict, 1e-9);
}

ComplexMatrix apply_local_a(const LinearMap& map, const ComplexMatrix& joint,
                            Index dim_a, Index dim_b) {
  if (map.dim_in != dim_a)
    throw std::invalid_argument("apply_local_a: probe dimension mismatch");
  if (joint.rows() != dim_a * dim_b || joint.cols() != dim_a * dim_b)
    throw std::invalid_argument("apply_local_a: joint matrix size mismatch");
  const Index dout = map.dim_out;
  ComplexMatrix out = ComplexMatrix::Zero(dout * dim_b, dout * dim_b);
  for (Index a = 0; a < dout; ++a)
    for (Index b = 0; b < dout; ++b)
      for (Index u = 0; u < dim_a; ++u)
        for (Index v = 0; v < dim_a; ++v) {
          const Complex j = map.choi(a * dim_a + u, b * dim_a + v);
          if (j == Complex(0.0, 0.0)) continue;
          for (Index c = 0; c < dim_b; ++c)
            for (Index e = 0; e < dim_b; ++e)
              out(a * dim_b + c, b * dim_b + e) +=
                  j * joint(u * dim_b + c, v * dim_b + e);
        }
  return out;
}

QuantumChannel depolarizing(Index d) {
  if (d < 2) throw std::invalid_argument("depolarizing: d >= 2 required");
  ComplexMatrix choi = ComplexMatrix::Identity(d * d, d * d) / double(d);
  return QuantumChannel::from_choi(d, d, std::move(choi));
}

QuantumChannel unitary_channel(const ComplexMatrix& u) {
  const Index d = u.rows();
  if (u.cols() != d) throw std::invalid_argument("unitary_channel: not square");
  const double err =
      (u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > 1e-9)
    throw std::invalid_argument("unitary_channel: matrix not unitary, deviation " +
                                std::to_string(err));
  // J = (U ⊗ 1)|Omega><Omega|(U ⊗ 1)† with |Omega> = sum_i |ii>.
  ComplexVector omega = ComplexVector::Zero(d * d);
  for (Index a = 0; a < d; ++a)
    for (Index i = 0; i < d; ++i) omega(a * d + i) += u(a, i);
  // omega[(a,u)] = U(a,u) is exactly vec_row_major(U)
  ComplexMatrix choi = omega * omega.adjoint();
  return QuantumChannel::from_choi(d, d, std::move(choi));
}

QuantumChannel constant_output_channel(const ComplexMatrix& rho0) {
  const Index d = rho0.rows();
  if (rho0.cols() != d)
    throw std::invalid_argument("constant_output_channel: not square");
  if (!is_hermitian(rho0, 1e-9) || std::abs(rho0.trace() - Complex(1.0)) > 1e-9 ||
      min_eigenvalue(rho0) < -1e-9)
    throw std::invalid_argument("constant_output_channel: rho0 is not a state");
  ComplexMatrix choi = tensor_product(rho0, ComplexMatrix::Identity(d, d));
  return QuantumChannel::from_choi(d, d, std::move(choi));
}

QuantumChannel random_channel(Index d, Rng& rng, Index kraus_rank) {
  if (d < 2 || kraus_rank < 1)
    throw std::invalid_argument("random_channel: need d >= 2 and kraus_rank >= 1");
  // First d columns of a Haar unitary on C^{d * rank} form the isometry;
  // row index (a, m) = a * rank + m with m the environment label.
  const ComplexMatrix big = random_haar_unitary(d * kraus_rank, rng);
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (Index m = 0; m < kraus_rank; ++m) {
    ComplexMatrix k(d, d);
    for (Index a = 0; a < d; ++a)
      for (Index u = 0; u < d; ++u) k(a, u) = big(a * kraus_rank + m, u);
    const ComplexVector kv = vec_row_major(k);
    choi += kv * kv.adjoint();
  }
  return QuantumChannel::from_choi(d, d, std::move(choi));
}

QuantumChannel random_channel(Index d, std::uint64_t seed, Index kraus_rank) {
  Rng rng(seed);
  return random_channel(d, rng, kraus_rank);
}

BasisShiftMap make_basis_shift_map(const std::vector<ComplexMatrix>& basis,
                                   Index shift_index, Index block_size) {
  if (basis.empty()) throw std::invalid_argument("make_basis_shift_map: empty basis");
  const Index d = basis.front().rows();
  const Index n = d * d;
  if (static_cast<Index>(basis.size()) != n)
    throw std::invalid_argument("make_basis_shift_map: basis must have d^2 elements");
  if (shift_index < 1 || block_size < 1)
    throw std::invalid_argument("make_basis_shift_map: shift_index and block_size >= 1");

  const Index step = (shift_index * block_size) % n;
  std::vector<double> traces(n);
  for (Index j = 0; j < n; ++j) traces[j] = basis[j].trace().real();

  const ComplexMatrix eye_over_d = ComplexMatrix::Identity(d, d) / double(d);
  ComplexMatrix choi(n, n);
  for (Index u = 0; u < d; ++u)
    for (Index v = 0; v < d; ++v) {
      // image of E_uv: sum_j A_j(v,u) A_{s(j)} + (delta_uv - sum_j A_j(v,u)
      // Tr A_{s(j)}) 1/d
      ComplexMatrix img = ComplexMatrix::Zero(d, d);
      Complex comp = (u == v) ? Complex(1.0) : Complex(0.0);
      for (Index j = 0; j < n; ++j) {
        const Complex w = basis[j](v, u);
        const Index s = (j + step) % n;
        img += w * basis[s];
        comp -= w * traces[s];
      }
      img += comp * eye_over_d;
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) choi(a * d + u, b * d + v) = img(a, b);
    }

  BasisShiftMap out;
  out.map = make_linear_map(d, d, std::move(choi), /*require_tp=*/true);
  out.shift_index = shift_index;
  out.block_size = block_size;
  out.identity_permutation = (step == 0);
  return out;
}

double max_cp_epsilon(const LinearMap& tp_map,
                      const std::optional<ComplexMatrix>& fixed_output) {
  if (!tp_map.is_trace_preserving(1e-8))
    throw std::invalid_argument("max_cp_epsilon: map is not trace preserving");
  const Index d = tp_map.dim_in;
  if (tp_map.dim_out != d)
    throw std::invalid_argument("max_cp_epsilon: map must preserve the dimension");

  if (!fixed_output) {
    // Eigenvalues of (1-eps)/d 1 + eps J are (1-eps)/d + eps mu_i.
    const double mu_min = min_eigenvalue(tp_map.choi);
    if (mu_min >= 0) return 1.0;
    return 1.0 / (1.0 - double(d) * mu_min);
  }

  const ComplexMatrix base =
      tensor_product(*fixed_output, ComplexMatrix::Identity(d, d));
  auto lambda_min = [&](double eps) {
    return min_eigenvalue(((1.0 - eps) * base + eps * tp_map.choi).eval());
  };
  if (lambda_min(1.0) >= 0) return 1.0;
  double lo = 0.0, hi = 1.0;  // lambda_min is concave in eps and positive at 0
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_min(mid) >= 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

QuantumChannel mix_to_channel(const LinearMap& tp_map, double epsilon,
                              const std::optional<ComplexMatrix>& fixed_output) {
  const Index d = tp_map.dim_in;
  if (tp_map.dim_out != d)
    throw std::invalid_argument("mix_to_channel: map must preserve the dimension");
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("mix_to_channel: epsilon must be in (0, 1]");
  ComplexMatrix tau = fixed_output
                          ? *fixed_output
                          : ComplexMatrix::Identity(d, d) / double(d);
  ComplexMatrix choi = (1.0 - epsilon) *
                           tensor_product(tau, ComplexMatrix::Identity(d, d)) +
                       epsilon * tp_map.choi;
  const double lambda_min = min_eigenvalue(choi);
  if (lambda_min < -kValidationTol)
    throw std::invalid_argument(
        "mix_to_channel: epsilon " + std::to_string(epsilon) +
        " breaks complete positivity, Choi eigenvalue " +
        std::to_string(lambda_min));
  return QuantumChannel::from_choi(d, d, std::move(choi));
}

QuantumChannel project_to_cptp(const LinearMap& map) {
  const Index din = map.dim_in;
  const Index dout = map.dim_out;
  ComplexMatrix h = 0.5 * (map.choi + map.choi.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  ComplexMatrix clipped =
      es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  // Restore TP by conjugating with Tr_out(J)^{-1/2} on the input slot.
  ComplexMatrix r = partial_trace(clipped, dout, din, Subsystem::A);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(r);
  RealVector rv = rs.eigenvalues();
  for (Index i = 0; i < rv.size(); ++i)
    rv(i) = rv(i) > 1e-14 ? 1.0 / std::sqrt(rv(i)) : 0.0;
  ComplexMatrix rinv_sqrt =
      rs.eigenvectors() * rv.asDiagonal() * rs.eigenvectors().adjoint();
  ComplexMatrix fix = tensor_product(ComplexMatrix::Identity(dout, dout), rinv_sqrt);
  ComplexMatrix choi = fix * clipped * fix.adjoint();
  return QuantumChannel::from_choi(din, dout, std::move(choi), 1e-7);
}

}  // namespace capt
