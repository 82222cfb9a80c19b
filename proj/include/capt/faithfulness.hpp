// Faithfulness verdicts for sets of bipartite inputs: spanned operator
// dimension, frame bounds, and the Haar twirl projection.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "capt/state.hpp"

namespace capt {

struct FaithfulnessReport {
  Index span_dim = 0;
  std::vector<double> singular_values;  // of the stacked local-operator matrix
  bool faithful = false;                // span_dim == d_A^2
  std::optional<std::pair<double, double>> frame;  // (a, b) when requested
};

// Dimension of the probe-side operator space spanned by the local Schmidt
// operators of the given states. Computed by stacking the vectorized slices
// Tr_B((1 ⊗ G_j†) rho_i) over a full operator basis of the ancilla; those
// slices exhaust exactly the span of the nonzero-coefficient OSD operators.
FaithfulnessReport local_span_dim(const std::vector<BipartiteState>& states,
                                  double tol = kRelRankTol,
                                  bool with_frame = false);

bool is_faithful_set(const std::vector<BipartiteState>& states,
                     double tol = kRelRankTol);

// Extremal eigenvalues (a, b) of the frame operator S = sum_k vec(P_k)
// vec(P_k)†; for any X, a ||X||_2^2 <= sum_k |Tr(P_k† X)|^2 <= b ||X||_2^2.
std::pair<double, double> frame_bounds(const std::vector<ComplexMatrix>& ops);

// Swap operator V |i>|j> = |j>|i> on C^d ⊗ C^d.
ComplexMatrix flip_operator(Index d);

// Haar average of (U ⊗ U) Y (U ⊗ U)†: alpha(Y) 1 + beta(Y) V with
// alpha = (d Tr Y - Tr(Y V)) / (d^3 - d), beta = (d Tr(Y V) - Tr Y) / (d^3 - d).
ComplexMatrix twirl(const ComplexMatrix& y);

// Twirl coefficients for Y = A ⊗ A†:
//   alpha = (d |Tr A|^2 - ||A||_2^2) / (d^3 - d)
//   beta  = (d ||A||_2^2 - |Tr A|^2) / (d^3 - d)
struct TwirlCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
};
TwirlCoefficients alpha_beta(const ComplexMatrix& a);

// A single-operator orbit {U A U†} forms a frame iff alpha > 0 and beta > 0.
bool frame_viable(const ComplexMatrix& a);

}  // namespace capt
