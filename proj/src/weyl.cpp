#include "capt/weyl.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace capt {

namespace {

Complex root_of_unity(Index d, Index power) {
  const double angle = 2.0 * std::numbers::pi * double(power) / double(d);
  return Complex(std::cos(angle), std::sin(angle));
}

std::pair<Index, Index> fourier_index_action(Index d, Index k, Index l) {
  return {(d - l) % d, k};
}

}  // namespace

ComplexMatrix shift_matrix(Index d) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (Index p = 0; p < d; ++p) x((p + 1) % d, p) = 1.0;
  return x;
}

ComplexMatrix clock_matrix(Index d) {
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (Index q = 0; q < d; ++q) z(q, q) = root_of_unity(d, q);
  return z;
}

ComplexMatrix fourier_matrix(Index d) {
  ComplexMatrix f(d, d);
  const double norm = 1.0 / std::sqrt(double(d));
  for (Index k = 0; k < d; ++k)
    for (Index l = 0; l < d; ++l) f(k, l) = norm * root_of_unity(d, (k * l) % d);
  return f;
}

WeylOperator weyl_operator(Index d, Index k, Index l) {
  if (d < 2) throw std::invalid_argument("weyl_operator: d >= 2 required");
  k = ((k % d) + d) % d;
  l = ((l % d) + d) % d;
  // (X^k Z^l)(p, q) = [p == q + k mod d] omega^{l q}
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (Index q = 0; q < d; ++q) w((q + k) % d, q) = root_of_unity(d, (l * q) % d);
  return {k, l, std::move(w)};
}

std::vector<WeylOrbit> weyl_orbits(Index d) {
  if (d < 2) throw std::invalid_argument("weyl_orbits: d >= 2 required");

  // Braiding sanity: Z X = omega X Z.
  {
    const ComplexMatrix x = shift_matrix(d);
    const ComplexMatrix z = clock_matrix(d);
    if ((z * x - root_of_unity(d, 1) * x * z).cwiseAbs().maxCoeff() > 1e-12)
      throw std::runtime_error("weyl_orbits: braiding relation violated");
  }

  const ComplexMatrix f = fourier_matrix(d);
  std::vector<WeylOrbit> orbits;
  std::set<std::pair<Index, Index>> seen;
  for (Index k = 0; k < d; ++k)
    for (Index l = 0; l < d; ++l) {
      if (seen.count({k, l})) continue;
      WeylOrbit orbit;
      std::pair<Index, Index> cur{k, l};
      for (int step = 0; step < 4; ++step) {
        if (seen.insert(cur).second) orbit.members.push_back(cur);
        // Matrix-level check: F W F† matches the mapped index up to the
        // phase omega^{-kl}.
        const WeylOperator w = weyl_operator(d, cur.first, cur.second);
        const auto nxt = fourier_index_action(d, cur.first, cur.second);
        const WeylOperator wn = weyl_operator(d, nxt.first, nxt.second);
        const Complex phase =
            root_of_unity(d, (d * d - cur.first * cur.second % d) % d);
        if ((f * w.matrix * f.adjoint() - phase * wn.matrix)
                .cwiseAbs()
                .maxCoeff() > 1e-10)
          throw std::runtime_error("weyl_orbits: Fourier conjugation mismatch");
        cur = nxt;
        if (cur == std::make_pair(k, l)) break;
      }
      const std::size_t n = orbit.members.size();
      if (n != 1 && n != 2 && n != 4)
        throw std::runtime_error("weyl_orbits: unexpected orbit size");
      orbits.push_back(std::move(orbit));
    }
  return orbits;
}

namespace {

Index span_of_weyl_indices(Index d,
                           const std::set<std::pair<Index, Index>>& idx) {
  ComplexMatrix stack(static_cast<Index>(idx.size()), d * d);
  Index row = 0;
  for (const auto& [k, l] : idx)
    stack.row(row++) = vec_row_major(weyl_operator(d, k, l).matrix).transpose();
  return rank_from_singular_values(singular_values(stack), kRelRankTol);
}

}  // namespace

RepresentativeSets representative_sets(Index d) {
  if (d < 2) throw std::invalid_argument("representative_sets: d >= 2 required");
  RepresentativeSets out;
  std::set<std::pair<Index, Index>> p1_idx;
  if (d % 2 == 1) {
    const Index m = (d - 1) / 2;
    p1_idx.insert({0, 0});
    for (Index k = 0; k <= m; ++k)
      for (Index l = 1; l <= m; ++l) p1_idx.insert({k, l});
  } else {
    const Index m = d / 2;
    p1_idx.insert({0, 0});
    p1_idx.insert({m, m});
    for (Index k = 0; k < m; ++k)
      for (Index l = 1; l <= m; ++l) p1_idx.insert({k, l});
  }

  // Pair each representative with its F^2 conjugate (-k, -l): one Fourier
  // rotation of those pairs reaches every orbit member, which a single
  // F-conjugate of P1 cannot do on the four-element orbits.
  std::set<std::pair<Index, Index>> p2_idx = p1_idx;
  for (const auto& [k, l] : p1_idx) p2_idx.insert({(d - k) % d, (d - l) % d});

  for (const auto& [k, l] : p1_idx) out.p1.push_back(weyl_operator(d, k, l));
  for (const auto& [k, l] : p2_idx) out.p2.push_back(weyl_operator(d, k, l));

  // Four Fourier rotations of P1 (two of P2) must reach the whole space.
  std::set<std::pair<Index, Index>> four = p1_idx;
  for (int step = 0; step < 3; ++step) {
    std::set<std::pair<Index, Index>> next;
    for (const auto& [k, l] : four) {
      next.insert({k, l});
      next.insert(fourier_index_action(d, k, l));
    }
    four = std::move(next);
  }
  std::set<std::pair<Index, Index>> two = p2_idx;
  for (const auto& [k, l] : p2_idx) two.insert(fourier_index_action(d, k, l));
  if (span_of_weyl_indices(d, four) != d * d ||
      span_of_weyl_indices(d, two) != d * d)
    throw std::runtime_error("representative_sets: span check failed");
  return out;
}

BipartiteState fourier_pair_state(Index d, std::optional<double> epsilon) {
  if (d < 2) throw std::invalid_argument("fourier_pair_state: d >= 2 required");
  const RepresentativeSets reps = representative_sets(d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);

  ComplexMatrix perturbation = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& w : reps.p1) {
    if (w.k == 0 && w.l == 0) continue;
    const ComplexMatrix h = inv_sqrt2 * (w.matrix + w.matrix.adjoint());
    const ComplexMatrix j = inv_sqrt2 / i_unit * (w.matrix - w.matrix.adjoint());
    perturbation += tensor_product(h, h) + tensor_product(j, j);
  }

  double eps;
  if (epsilon) {
    eps = *epsilon;
    if (eps < 0) throw std::invalid_argument("fourier_pair_state: epsilon < 0");
  } else {
    const double lambda_min = min_eigenvalue(perturbation);
    if (lambda_min >= 0)
      throw std::runtime_error("fourier_pair_state: perturbation unexpectedly PSD");
    // Half of the PSD-critical value for 1/d^2 + eps * perturbation.
    eps = 0.5 / (double(d * d) * std::abs(lambda_min));
  }

  ComplexMatrix sigma =
      ComplexMatrix::Identity(d * d, d * d) / double(d * d) + eps * perturbation;
  sigma /= sigma.trace();  // Tr(perturbation) = 0, this guards roundoff only
  return BipartiteState(d, d, std::move(sigma));
}

}  // namespace capt
