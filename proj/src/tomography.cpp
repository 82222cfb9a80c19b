#include "capt/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "capt/basis.hpp"
#include "capt/rng.hpp"
#include "capt/weyl.hpp"

namespace capt {

void validate_plan(const ExperimentPlan& plan) {
  if (plan.scheme == Scheme::spt) {
    if (plan.probes.empty())
      throw std::invalid_argument("plan: SPT requires probe states");
    const Index d = plan.probes.front().rows();
    for (const auto& p : plan.probes)
      if (p.rows() != d || p.cols() != d)
        throw std::invalid_argument("plan: probe dimensions differ");
  } else {
    if (!plan.state)
      throw std::invalid_argument("plan: AAPT/CAPT requires a bipartite state");
    for (const auto& op : plan.local_ops)
      if (op.dim_in() != plan.state->dim_a())
        throw std::invalid_argument("plan: local setting dimension mismatch");
    if (plan.scheme == Scheme::aapt && !plan.local_ops.empty())
      throw std::invalid_argument("plan: AAPT carries no local settings");
  }
  if (plan.tolerance <= 0)
    throw std::invalid_argument("plan: tolerance must be positive");
}

std::vector<BipartiteState> prepared_inputs(const ExperimentPlan& plan) {
  validate_plan(plan);
  std::vector<BipartiteState> inputs;
  if (plan.scheme == Scheme::spt) {
    for (const auto& p : plan.probes)
      inputs.emplace_back(p.rows(), 1, p, StateValidation::strict, 1e-9);
    return inputs;
  }
  if (plan.local_ops.empty()) {
    inputs.push_back(*plan.state);
    return inputs;
  }
  for (const auto& op : plan.local_ops)
    inputs.push_back(apply_local_a(op, *plan.state));
  return inputs;
}

std::vector<BipartiteState> simulate_outputs(const ExperimentPlan& plan,
                                             const QuantumChannel& truth) {
  std::vector<BipartiteState> outputs;
  for (const auto& input : prepared_inputs(plan)) {
    if (truth.dim_in() != input.dim_a())
      throw std::invalid_argument("simulate_outputs: channel dimension mismatch");
    outputs.push_back(apply_local_a(truth, input));
  }
  return outputs;
}

namespace {

// Weyl-covariant rank-one POVM from a fixed fiducial vector: d^2 outcomes
// (1/d) W |phi><phi| W†. Informationally complete for a generic fiducial;
// the fiducial seed is a fixed constant so the measurement is part of the
// file format rather than of the experiment seed.
struct MeasurementFrame {
  std::vector<ComplexMatrix> effects;
  std::vector<ComplexMatrix> duals;  // canonical dual frame, for estimation
};

MeasurementFrame build_frame(Index d) {
  if (d == 1) {
    MeasurementFrame f;
    f.effects.push_back(ComplexMatrix::Identity(1, 1));
    f.duals.push_back(ComplexMatrix::Identity(1, 1));
    return f;
  }
  // The frame eigenvalues are |<phi| X^k Z^l |phi>|^2 / d per Weyl direction,
  // so the best-conditioned frame comes from the fiducial whose smallest
  // Weyl overlap is largest (a symmetric-IC fiducial would make them equal).
  std::vector<ComplexMatrix> weyl;
  for (Index k = 0; k < d; ++k)
    for (Index l = 0; l < d; ++l) weyl.push_back(weyl_operator(d, k, l).matrix);

  Rng rng(derive_seed(0x706f766d, static_cast<std::uint64_t>(d)));
  ComplexVector best_phi;
  double best_min = -1.0;
  for (int attempt = 0; attempt < 128; ++attempt) {
    const ComplexVector phi = random_pure_state(d, rng);
    double min_overlap = 1.0;
    for (const auto& w : weyl) {
      const double overlap = std::abs((phi.adjoint() * w * phi).value());
      min_overlap = std::min(min_overlap, overlap);
    }
    if (min_overlap > best_min) {
      best_min = min_overlap;
      best_phi = phi;
    }
  }
  if (best_min <= 1e-3)
    throw std::runtime_error("build_frame: no informationally complete fiducial");

  MeasurementFrame f;
  ComplexMatrix frame_op = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& w : weyl) {
    const ComplexVector v = w * best_phi;
    f.effects.push_back((v * v.adjoint()) / double(d));
    const ComplexVector ve = vec_row_major(f.effects.back());
    frame_op += ve * ve.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(frame_op);
  const RealVector inv = es.eigenvalues().cwiseInverse();
  const ComplexMatrix s_inv =
      es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  for (const auto& e : f.effects)
    f.duals.push_back(unvec_row_major(s_inv * vec_row_major(e), d, d));
  return f;
}

const MeasurementFrame& cached_frame(Index d) {
  static std::map<Index, MeasurementFrame> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, build_frame(d)).first;
  return it->second;
}

}  // namespace

std::vector<BipartiteState> add_shot_noise(
    const std::vector<BipartiteState>& outputs, long shots,
    std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("add_shot_noise: shots >= 1");
  std::vector<BipartiteState> noisy;
  noisy.reserve(outputs.size());
  for (std::size_t idx = 0; idx < outputs.size(); ++idx) {
    const BipartiteState& out = outputs[idx];
    const Index da = out.dim_a();
    const Index db = out.dim_b();
    const MeasurementFrame& fa = cached_frame(da);
    const MeasurementFrame& fb = cached_frame(db);
    const std::size_t na = fa.effects.size();
    const std::size_t nb = fb.effects.size();

    std::vector<double> cdf(na * nb);
    double acc = 0.0;
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        const ComplexMatrix effect = tensor_product(fa.effects[i], fb.effects[j]);
        const double p = std::max(0.0, hs_inner(effect, out.matrix()).real());
        acc += p;
        cdf[i * nb + j] = acc;
      }
    for (auto& c : cdf) c /= acc;

    std::vector<long> counts(na * nb, 0);
    Rng rng(derive_seed(seed, idx));
    for (long s = 0; s < shots; ++s) {
      const double u = rng.uniform();
      const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      counts[std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1)]++;
    }

    ComplexMatrix estimate = ComplexMatrix::Zero(da * db, da * db);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        const long c = counts[i * nb + j];
        if (c == 0) continue;
        estimate += (double(c) / double(shots)) *
                    tensor_product(fa.duals[i], fb.duals[j]);
      }
    estimate = 0.5 * (estimate + estimate.adjoint()).eval();
    estimate /= estimate.trace().real();
    noisy.emplace_back(da, db, std::move(estimate),
                       StateValidation::hermitian_only, 1e-6);
  }
  return noisy;
}

ReconstructionResult reconstruct(const ExperimentPlan& plan,
                                 const std::vector<BipartiteState>& outputs,
                                 const ComplexMatrix* truth_choi,
                                 const ReconstructionOptions& options) {
  const std::vector<BipartiteState> inputs = prepared_inputs(plan);
  if (outputs.size() != inputs.size())
    throw std::invalid_argument("reconstruct: outputs do not align with the plan");
  const Index din = inputs.front().dim_a();
  const Index dout = outputs.front().dim_a();
  Index total_rows = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (outputs[i].dim_b() != inputs[i].dim_b())
      throw std::invalid_argument("reconstruct: ancilla dimension mismatch");
    if (outputs[i].dim_a() != dout)
      throw std::invalid_argument("reconstruct: output dimensions differ");
    total_rows += inputs[i].dim_b() * inputs[i].dim_b();
  }

  // One slice pair per input and ancilla-basis element: the channel must map
  // S = Tr_B((1 ⊗ G†) input) to T = Tr_B((1 ⊗ G†) output).
  ComplexMatrix s_stack(total_rows, din * din);
  ComplexMatrix t_stack(total_rows, dout * dout);
  Index row = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Index db = inputs[i].dim_b();
    const HermitianBasis gb = hermitian_basis_or_trivial(db);
    for (const auto& g : gb.elements) {
      s_stack.row(row) =
          vec_row_major(trace_out_b_with(inputs[i].matrix(), din, db, g))
              .transpose();
      t_stack.row(row) =
          vec_row_major(trace_out_b_with(outputs[i].matrix(), dout, db, g))
              .transpose();
      ++row;
    }
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(
      s_stack, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector sv = svd.singularValues();
  const Index rank = rank_from_singular_values(sv, options.tol);

  // Minimum-norm least squares restricted to the determined subspace.
  ComplexMatrix uh_t = svd.matrixU().adjoint() * t_stack;
  ComplexMatrix x = ComplexMatrix::Zero(din * din, dout * dout);
  for (Index r = 0; r < rank; ++r)
    x += svd.matrixV().col(r) * (uh_t.row(r) / sv(r));

  const double residual = (s_stack * x - t_stack).norm();

  ComplexMatrix choi(din * dout, din * dout);
  for (Index a = 0; a < dout; ++a)
    for (Index b = 0; b < dout; ++b)
      for (Index u = 0; u < din; ++u)
        for (Index v = 0; v < din; ++v)
          choi(a * din + u, b * din + v) = x(u * din + v, a * dout + b);

  ReconstructionResult result;
  result.estimated = make_linear_map(din, dout, std::move(choi));
  if (options.project_cptp)
    result.estimated = project_to_cptp(result.estimated).map();
  result.residual = residual;
  result.determined_dim = rank;
  if (truth_choi)
    result.choi_error = (result.estimated.choi - *truth_choi).norm();
  const double scale = std::max(1.0, t_stack.norm());
  result.exact_recovery =
      (residual < options.tol * scale) && (rank == din * din);
  return result;
}

ReconstructionResult run_experiment(const ExperimentPlan& plan,
                                    const QuantumChannel& truth, long shots,
                                    const ReconstructionOptions& options) {
  std::vector<BipartiteState> outputs = simulate_outputs(plan, truth);
  if (shots > 0) outputs = add_shot_noise(outputs, shots, plan.seed);
  return reconstruct(plan, outputs, &truth.choi(), options);
}

std::vector<ComplexMatrix> spt_probe_states(Index d) {
  if (d < 2) throw std::invalid_argument("spt_probe_states: d >= 2 required");
  const HermitianBasis basis = hermitian_basis(d);
  std::vector<ComplexMatrix> probes;
  const double c = 1.0 / (2.0 * double(d));  // keeps every probe PSD
  for (const auto& g : basis.elements) {
    ComplexMatrix p = ComplexMatrix::Identity(d, d) / double(d) + c * g;
    p /= p.trace();
    probes.push_back(std::move(p));
  }
  return probes;
}

}  // namespace capt
