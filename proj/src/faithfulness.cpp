#include "capt/faithfulness.hpp"

#include <cmath>
#include <stdexcept>

#include "capt/basis.hpp"

namespace capt {

FaithfulnessReport local_span_dim(const std::vector<BipartiteState>& states,
                                  double tol, bool with_frame) {
  if (states.empty())
    throw std::invalid_argument("local_span_dim: empty state set");
  const Index da = states.front().dim_a();
  for (const auto& s : states)
    if (s.dim_a() != da)
      throw std::invalid_argument("local_span_dim: probe dimensions differ");

  Index total_rows = 0;
  for (const auto& s : states) total_rows += s.dim_b() * s.dim_b();

  ComplexMatrix stack(total_rows, da * da);
  std::vector<ComplexMatrix> slices;
  slices.reserve(total_rows);
  Index row = 0;
  for (const auto& s : states) {
    const HermitianBasis gb = hermitian_basis_or_trivial(s.dim_b());
    for (const auto& g : gb.elements) {
      ComplexMatrix slice = trace_out_b_with(s.matrix(), da, s.dim_b(), g);
      stack.row(row++) = vec_row_major(slice).transpose();
      if (with_frame) slices.push_back(std::move(slice));
    }
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(stack);
  const RealVector sv = svd.singularValues();

  FaithfulnessReport report;
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  report.span_dim = rank_from_singular_values(sv, tol);
  report.faithful = (report.span_dim == da * da);
  if (with_frame) report.frame = frame_bounds(slices);
  return report;
}

bool is_faithful_set(const std::vector<BipartiteState>& states, double tol) {
  return local_span_dim(states, tol).faithful;
}

std::pair<double, double> frame_bounds(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw std::invalid_argument("frame_bounds: empty operator set");
  const Index d = ops.front().rows();
  for (const auto& p : ops)
    if (p.rows() != d || p.cols() != d)
      throw std::invalid_argument("frame_bounds: mixed dimensions");
  ComplexMatrix frame_op = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& p : ops) {
    const ComplexVector v = vec_row_major(p);
    frame_op += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(frame_op, Eigen::EigenvaluesOnly);
  double a = es.eigenvalues()(0);
  double b = es.eigenvalues()(d * d - 1);
  if (a < 0 && a > -1e-12) a = 0.0;
  return {a, b};
}

ComplexMatrix flip_operator(Index d) {
  ComplexMatrix v = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

ComplexMatrix twirl(const ComplexMatrix& y) {
  const Index n = y.rows();
  if (y.cols() != n) throw std::invalid_argument("twirl: matrix not square");
  const Index d = static_cast<Index>(std::llround(std::sqrt(double(n))));
  if (d * d != n)
    throw std::invalid_argument("twirl: size is not a perfect square");
  if (d < 2) throw std::invalid_argument("twirl: d = 1 is degenerate");
  const ComplexMatrix v = flip_operator(d);
  const double denom = double(d) * double(d) * double(d) - double(d);
  const Complex tr_y = y.trace();
  const Complex tr_yv = (y * v).trace();
  const Complex alpha = (double(d) * tr_y - tr_yv) / denom;
  const Complex beta = (double(d) * tr_yv - tr_y) / denom;
  return alpha * ComplexMatrix::Identity(n, n) + beta * v;
}

TwirlCoefficients alpha_beta(const ComplexMatrix& a) {
  const Index d = a.rows();
  if (a.cols() != d) throw std::invalid_argument("alpha_beta: matrix not square");
  if (d < 2) throw std::invalid_argument("alpha_beta: d = 1 is degenerate");
  const double denom = double(d) * double(d) * double(d) - double(d);
  const double tr2 = std::norm(a.trace());
  const double hs2 = a.squaredNorm();
  return {(double(d) * tr2 - hs2) / denom, (double(d) * hs2 - tr2) / denom};
}

bool frame_viable(const ComplexMatrix& a) {
  const TwirlCoefficients c = alpha_beta(a);
  return c.alpha > 0.0 && c.beta > 0.0;
}

}  // namespace capt
