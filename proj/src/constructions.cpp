#include "capt/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "capt/basis.hpp"
#include "capt/faithfulness.hpp"
#include "capt/weyl.hpp"

namespace capt {

namespace {

std::vector<BipartiteState> processed_copies(
    const std::vector<QuantumChannel>& channels, const BipartiteState& rho) {
  std::vector<BipartiteState> out;
  out.reserve(channels.size());
  for (const auto& c : channels) out.push_back(apply_local_a(c, rho));
  return out;
}

std::vector<BipartiteState> rotated_copies(
    const std::vector<ComplexMatrix>& unitaries, const BipartiteState& rho) {
  std::vector<BipartiteState> out;
  out.reserve(unitaries.size());
  for (const auto& u : unitaries)
    out.push_back(apply_local_a(unitary_channel(u), rho));
  return out;
}

}  // namespace

std::vector<QuantumChannel> faithful_channel_set(const BipartiteState& rho,
                                                 double tol,
                                                 std::uint64_t seed) {
  const Index d = rho.dim_a();
  const Index n = d * d;
  const OperatorSchmidtDecomposition osd = operator_schmidt_decompose(rho, tol);
  const Index k = osd.osr;
  const Index count = (n + k - 1) / k;  // ceil(d^2 / k)

  const std::vector<ComplexMatrix> basis = complete_hermitian_basis(osd.ops_a, d);

  std::vector<BasisShiftMap> shift_maps;
  for (Index i = 1; i < count; ++i)
    shift_maps.push_back(make_basis_shift_map(basis, i, k));

  constexpr int kMaxRetries = 8;
  Rng rng(derive_seed(seed, 0x616d6d61));
  std::string last_diagnostics;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::optional<ComplexMatrix> tau;  // maximally mixed on first attempt
    if (attempt > 0) {
      const double delta = 0.25;
      ComplexMatrix mix = (1.0 - delta) * ComplexMatrix::Identity(d, d) / double(d) +
                          delta * random_density_matrix(d, rng);
      tau = std::move(mix);
    }
    std::vector<QuantumChannel> channels;
    channels.push_back(QuantumChannel::identity(d));
    for (const auto& sm : shift_maps) {
      const double eps_max = max_cp_epsilon(sm.map, tau);
      channels.push_back(mix_to_channel(sm, 0.9 * eps_max, tau));
    }
    const FaithfulnessReport report =
        local_span_dim(processed_copies(channels, rho), tol);
    if (report.faithful) return channels;
    last_diagnostics = "span_dim " + std::to_string(report.span_dim) + " of " +
                       std::to_string(n) + " on attempt " +
                       std::to_string(attempt);
  }
  throw std::runtime_error(
      "faithful_channel_set: retry budget exhausted (" + last_diagnostics + ")");
}

UnitaryFrameSet faithful_unitary_set(const BipartiteState& rho,
                                     std::uint64_t seed, double tol) {
  const Index d = rho.dim_a();
  const Index n = d * d;
  const ComplexMatrix rho_a = rho.reduced_a();
  const ComplexMatrix maximally_mixed = ComplexMatrix::Identity(d, d) / double(d);
  const bool mixed_marginal =
      (rho_a - maximally_mixed).norm() <= 1e-9;

  const OperatorSchmidtDecomposition osd = operator_schmidt_decompose(rho, tol);
  if (mixed_marginal && osd.osr == 1)
    throw ExcludedStateError(
        "faithful_unitary_set: maximally mixed probe in a product state is "
        "invariant under local unitaries");

  ComplexMatrix probe;
  if (!mixed_marginal) {
    probe = rho_a;
  } else {
    // Probe marginal is 1/d but correlations exist: mix in the OSD operator
    // with the largest traceless part until the frame conditions hold.
    Index best = -1;
    double best_norm = -1.0;
    for (Index l = 0; l < osd.osr; ++l) {
      const ComplexMatrix& a = osd.ops_a[l];
      const double traceless =
          (a - a.trace() / double(d) * ComplexMatrix::Identity(d, d)).norm();
      if (traceless > best_norm) {
        best_norm = traceless;
        best = l;
      }
    }
    bool found = false;
    for (double t : {0.5, 0.25, 0.75, 0.1, 1.0, 0.05}) {
      ComplexMatrix cand = maximally_mixed + t * osd.ops_a[best];
      if (frame_viable(cand)) {
        probe = std::move(cand);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error(
          "faithful_unitary_set: no frame-viable probe combination found");
  }
  const TwirlCoefficients coeffs = alpha_beta(probe);
  if (!(coeffs.alpha > 0.0 && coeffs.beta > 0.0))
    throw std::runtime_error("faithful_unitary_set: probe operator is not frame viable");

  // Greedy growth of span{U A U†}; every kept unitary adds one dimension.
  Rng rng(derive_seed(seed, 0x756e6931));
  std::vector<ComplexMatrix> unitaries{ComplexMatrix::Identity(d, d)};
  ComplexMatrix stack(n, n);
  stack.row(0) = vec_row_major(probe).transpose();
  Index rank = 1;
  const Index max_draws = 200 * n;
  for (Index draw = 0; rank < n && draw < max_draws; ++draw) {
    const ComplexMatrix u = random_haar_unitary(d, rng);
    stack.row(rank) = vec_row_major((u * probe * u.adjoint()).eval()).transpose();
    const Index new_rank = rank_from_singular_values(
        singular_values(stack.topRows(rank + 1)), tol);
    if (new_rank > rank) {
      rank = new_rank;
      unitaries.push_back(u);
    }
  }
  if (rank < n)
    throw std::runtime_error("faithful_unitary_set: span growth stalled at " +
                             std::to_string(rank));

  if (!is_faithful_set(rotated_copies(unitaries, rho), tol))
    throw std::runtime_error("faithful_unitary_set: verification failed");

  return {std::move(unitaries), std::move(probe), coeffs.alpha, coeffs.beta};
}

namespace {

// Recombination unitary for block pair (p, q): the block-0 sources map into
// the pair, |n> -> (|n+pk> + w |n+qk>)/sqrt(2) with w = 1 or i, so that
// conjugating any |i><j| with i, j < k produces every cross term between the
// two blocks. Completed by |n+pk> -> (|n+pk> - w |n+qk>)/sqrt(2) and, when
// p > 0, |n+qk> -> |n>; identity on untouched indices.
ComplexMatrix pair_unitary(Index dim, Index k, Index p, Index q, bool imaginary) {
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  const double c = 1.0 / std::sqrt(2.0);
  const Complex w = imaginary ? Complex(0.0, c) : Complex(c, 0.0);
  for (Index n = 0; n < k; ++n) {
    const Index a = p * k + n;
    const Index b = q * k + n;
    if (p == 0) {
      u(n, n) = c;
      u(b, n) = w;
      u(n, b) = c;
      u(b, b) = -w;
    } else {
      u(n, n) = 0.0;
      u(a, n) = c;
      u(b, n) = w;
      u(a, a) = c;
      u(b, a) = -w;
      u(b, b) = 0.0;
      u(n, b) = 1.0;
    }
  }
  return u;
}

ComplexMatrix closest_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

std::vector<ComplexMatrix> block_unitary_set(Index d, Index k) {
  if (k < 1 || k > d)
    throw std::invalid_argument("block_unitary_set: need 1 <= k <= d");
  const Index blocks = (d + k - 1) / k;
  const Index dim = blocks * k;

  std::vector<ComplexMatrix> unitaries;
  const ComplexMatrix x = shift_matrix(dim);
  ComplexMatrix shift = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix step = ComplexMatrix::Identity(dim, dim);
  for (Index s = 0; s < k; ++s) step = (x * step).eval();  // |n> -> |n+k>
  for (Index p = 0; p < blocks; ++p) {
    unitaries.push_back(shift);
    shift = (step * shift).eval();
  }
  for (Index p = 0; p < blocks; ++p)
    for (Index q = p + 1; q < blocks; ++q) {
      unitaries.push_back(pair_unitary(dim, k, p, q, false));
      unitaries.push_back(pair_unitary(dim, k, p, q, true));
    }

  if (dim != d) {
    for (auto& u : unitaries)
      u = closest_unitary(u.topLeftCorner(d, d).eval());
  }

  // Post-condition: faithful on any rank-k pure input whose probe Schmidt
  // basis is the first k computational vectors.
  {
    ComplexVector psi = ComplexVector::Zero(d * d);
    for (Index i = 0; i < k; ++i) psi(i * d + i) = 1.0 / std::sqrt(double(k));
    const BipartiteState canonical = pure_state(psi, d, d);
    std::vector<BipartiteState> set;
    for (const auto& u : unitaries)
      set.push_back(apply_local_a(unitary_channel(u), canonical));
    if (!is_faithful_set(set))
      throw std::runtime_error("block_unitary_set: faithfulness check failed");
  }
  return unitaries;
}

namespace {

Eigen::Vector3d bloch_vector(const ComplexMatrix& a) {
  const Complex i_unit(0.0, 1.0);
  Eigen::Vector3d v;
  v(0) = (a(0, 1) + a(1, 0)).real();                // Tr(sigma_x A)
  v(1) = (i_unit * (a(0, 1) - a(1, 0))).real();     // Tr(sigma_y A)
  v(2) = (a(0, 0) - a(1, 1)).real();                // Tr(sigma_z A)
  return v;
}

ComplexMatrix rotation_unitary(const Eigen::Vector3d& axis, double angle) {
  const Eigen::Vector3d n = axis.normalized();
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex i_unit(0.0, 1.0);
  ComplexMatrix u(2, 2);
  u(0, 0) = c - i_unit * s * n(2);
  u(0, 1) = -i_unit * s * n(0) - s * n(1);
  u(1, 0) = -i_unit * s * n(0) + s * n(1);
  u(1, 1) = c + i_unit * s * n(2);
  return u;
}

}  // namespace

bool qubit_discord_test(const BipartiteState& rho, double tol) {
  if (rho.dim_a() != 2)
    throw std::invalid_argument("qubit_discord_test: probe must be a qubit");
  const OperatorSchmidtDecomposition osd = operator_schmidt_decompose(rho, tol);
  if (osd.osr < 2) return false;
  for (Index i = 0; i < osd.osr; ++i)
    for (Index j = i + 1; j < osd.osr; ++j) {
      const ComplexMatrix comm =
          osd.ops_a[i] * osd.ops_a[j] - osd.ops_a[j] * osd.ops_a[i];
      if (comm.norm() > std::max(tol, 1e-9)) return true;
    }
  return false;
}

ComplexMatrix qubit_discord_unitary(const BipartiteState& rho, double tol) {
  if (rho.dim_a() != 2)
    throw std::invalid_argument("qubit_discord_unitary: probe must be a qubit");
  if (!qubit_discord_test(rho, tol))
    throw ZeroDiscordError(
        "qubit_discord_unitary: probe-side operators all commute, two "
        "settings cannot reach the full operator space");

  const OperatorSchmidtDecomposition osd = operator_schmidt_decompose(rho, tol);
  Index bi = 0, bj = 1;
  double best = -1.0;
  for (Index i = 0; i < osd.osr; ++i)
    for (Index j = i + 1; j < osd.osr; ++j) {
      const double norm =
          (osd.ops_a[i] * osd.ops_a[j] - osd.ops_a[j] * osd.ops_a[i]).norm();
      if (norm > best) {
        best = norm;
        bi = i;
        bj = j;
      }
    }
  const Eigen::Vector3d a1 = bloch_vector(osd.ops_a[bi]);
  const Eigen::Vector3d a2 = bloch_vector(osd.ops_a[bj]);

  auto pair_is_faithful = [&](const ComplexMatrix& u) {
    std::vector<BipartiteState> set{rho,
                                    apply_local_a(unitary_channel(u), rho)};
    return is_faithful_set(set, tol);
  };

  const double quarter_turn = std::numbers::pi / 2.0;
  std::vector<Eigen::Vector3d> axes{a1.cross(a2), a1, a2, a1 + a2};
  for (const auto& axis : axes) {
    if (axis.norm() < 1e-12) continue;
    const ComplexMatrix u = rotation_unitary(axis, quarter_turn);
    if (pair_is_faithful(u)) return u;
  }

  Rng rng(derive_seed(0x64697363, 0));
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
    if (axis.norm() < 1e-9) continue;
    const double angle = (0.2 + 0.6 * rng.uniform()) * std::numbers::pi;
    const ComplexMatrix u = rotation_unitary(axis, angle);
    if (pair_is_faithful(u)) return u;
  }
  throw std::runtime_error("qubit_discord_unitary: no verifying rotation found");
}

}  // namespace capt
