#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capt/basis.hpp"
#include "capt/channel.hpp"
#include "capt/schmidt.hpp"
#include "support.hpp"

using namespace capt;
using namespace capt::testing;

namespace {

// Choi reassembled from the action on all matrix units; oracle for apply().
ComplexMatrix choi_from_action(const LinearMap& map) {
  const Index din = map.dim_in;
  const Index dout = map.dim_out;
  ComplexMatrix choi(din * dout, din * dout);
  for (Index u = 0; u < din; ++u)
    for (Index v = 0; v < din; ++v) {
      ComplexMatrix e = ComplexMatrix::Zero(din, din);
      e(u, v) = 1.0;
      const ComplexMatrix img = map.apply(e);
      for (Index a = 0; a < dout; ++a)
        for (Index b = 0; b < dout; ++b)
          choi(a * din + u, b * din + v) = img(a, b);
    }
  return choi;
}

}  // namespace

TEST_CASE("identity channel acts trivially") {
  Rng rng(101);
  const QuantumChannel id = QuantumChannel::identity(3);
  const ComplexMatrix x = random_matrix(3, 3, rng);
  CHECK((id.apply(x) - x).norm() < 1e-12);
}

TEST_CASE("depolarizing channel maps everything to the maximally mixed state") {
  Rng rng(103);
  const QuantumChannel dep = depolarizing(3);
  const ComplexMatrix rho = random_density_matrix(3, rng);
  CHECK((dep.apply(rho) - ComplexMatrix::Identity(3, 3) / 3.0).norm() < 1e-12);
  // traceless input goes to zero
  const QuantumChannel dep2 = depolarizing(2);
  CHECK(dep2.apply(pauli_x()).norm() < 1e-13);
  // Choi is 1/d
  CHECK((dep.choi() - ComplexMatrix::Identity(9, 9) / 3.0).norm() < 1e-13);
  // composing with any channel yields depolarizing again
  const QuantumChannel other = random_channel(3, 5, 3);
  const ComplexMatrix via = dep.apply(other.apply(rho));
  CHECK((via - ComplexMatrix::Identity(3, 3) / 3.0).norm() < 1e-12);
}

TEST_CASE("unitary channel conjugates") {
  Rng rng(107);
  const ComplexMatrix u = random_haar_unitary(3, rng);
  const QuantumChannel uc = unitary_channel(u);
  const ComplexMatrix x = random_matrix(3, 3, rng);
  CHECK((uc.apply(x) - u * x * u.adjoint()).norm() < 1e-12);
  CHECK((QuantumChannel::identity(3).choi() -
         unitary_channel(ComplexMatrix::Identity(3, 3)).choi())
            .norm() < 1e-14);
  CHECK_THROWS_AS(unitary_channel(2.0 * u), std::invalid_argument);
}

TEST_CASE("constant output channel") {
  Rng rng(109);
  const ComplexMatrix rho0 = random_density_matrix(2, rng);
  const QuantumChannel c = constant_output_channel(rho0);
  const ComplexMatrix rho = random_density_matrix(2, rng);
  CHECK((c.apply(rho) - rho0).norm() < 1e-12);
  CHECK_THROWS_AS(constant_output_channel(pauli_x().eval()),
                  std::invalid_argument);
}

TEST_CASE("random channels are CPTP across seeds and dimensions") {
  for (Index d : {2, 3, 4})
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const QuantumChannel c = random_channel(d, seed, d);
      CHECK(min_eigenvalue(c.choi()) > -1e-10);
      CHECK(c.map().is_trace_preserving(1e-10));
    }
}

TEST_CASE("Choi round trip through apply") {
  Rng rng(113);
  for (Index d : {2, 3}) {
    const QuantumChannel c = random_channel(d, rng.next_raw(), d);
    CHECK((choi_from_action(c.map()) - c.choi()).norm() < 1e-10);
  }
}

TEST_CASE("apply preserves the trace of TP maps") {
  Rng rng(127);
  const QuantumChannel c = random_channel(3, 17, 2);
  const ComplexMatrix x = random_matrix(3, 3, rng);
  CHECK(std::abs(c.apply(x).trace() - x.trace()) < 1e-12);
}

TEST_CASE("local application on the probe side") {
  Rng rng(131);
  const BipartiteState rho = random_bipartite_state(2, 3, rng);

  SUBCASE("identity leaves the state unchanged") {
    const BipartiteState out = apply_local_a(QuantumChannel::identity(2), rho);
    CHECK((out.matrix() - rho.matrix()).norm() < 1e-12);
  }
  SUBCASE("product states factor through") {
    const ComplexMatrix rho_a = random_density_matrix(2, rng);
    const ComplexMatrix rho_b = random_density_matrix(3, rng);
    const QuantumChannel c = random_channel(2, 3, 2);
    const BipartiteState out = apply_local_a(c, product_state(rho_a, rho_b));
    CHECK((out.matrix() - tensor_product(c.apply(rho_a), rho_b)).norm() < 1e-12);
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(apply_local_a(QuantumChannel::identity(3), rho),
                    std::invalid_argument);
  }
}

TEST_CASE("extraction identity: Tr_B((1 ⊗ B_l†) rho_out) = r_l Lambda[A_l]") {
  Rng rng(137);
  for (int trial = 0; trial < 5; ++trial) {
    const BipartiteState rho = random_bipartite_state(3, 3, rng);
    const QuantumChannel lambda = random_channel(3, rng.next_raw(), 3);
    const BipartiteState out = apply_local_a(lambda, rho);
    const auto osd = operator_schmidt_decompose(rho);
    for (Index l = 0; l < osd.osr; ++l) {
      const ComplexMatrix extracted =
          trace_out_b_with(out.matrix(), 3, 3, osd.ops_b[l]) /
          osd.coefficients[l];
      CHECK((extracted - lambda.apply(osd.ops_a[l])).norm() < 1e-9);
    }
  }
}

TEST_CASE("Eq-style OSD expansion of local channel action") {
  Rng rng(139);
  const BipartiteState rho = random_bipartite_state(2, 2, rng);
  const QuantumChannel lambda = random_channel(2, 23, 2);
  const auto osd = operator_schmidt_decompose(rho);
  ComplexMatrix expansion = ComplexMatrix::Zero(4, 4);
  for (Index l = 0; l < osd.osr; ++l)
    expansion += osd.coefficients[l] *
                 tensor_product(lambda.apply(osd.ops_a[l]), osd.ops_b[l]);
  const BipartiteState out = apply_local_a(lambda, rho);
  CHECK((expansion - out.matrix()).norm() < 1e-9);
}

TEST_CASE("basis shift map is trace preserving and shifts as announced") {
  const HermitianBasis gm = hermitian_basis(2);
  const std::vector<ComplexMatrix> basis = gm.elements;

  SUBCASE("trace preservation on random inputs") {
    Rng rng(149);
    const BasisShiftMap shift = make_basis_shift_map(basis, 1, 3);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix x = random_matrix(2, 2, rng);
      CHECK(std::abs(shift.map.apply(x).trace() - x.trace()) < 1e-11);
    }
  }
  SUBCASE("d=2, k=1, i=1: first element maps to the second plus compensation") {
    const BasisShiftMap shift = make_basis_shift_map(basis, 1, 1);
    const ComplexMatrix img = shift.map.apply(basis[0]);
    const ComplexMatrix expected =
        basis[1] + (basis[0].trace() - basis[1].trace()) / 2.0 *
                       ComplexMatrix::Identity(2, 2);
    CHECK((img - expected).norm() < 1e-12);
  }
  SUBCASE("shifted coefficient is one after removing the identity part") {
    Rng rng(151);
    const BasisShiftMap shift = make_basis_shift_map(basis, 2, 1);
    for (Index n = 0; n < 4; ++n) {
      const Index target = (n + 2) % 4;
      const ComplexMatrix img = shift.map.apply(basis[n]);
      const ComplexMatrix identity_part =
          (basis[n].trace() - basis[target].trace()) / 2.0 *
          ComplexMatrix::Identity(2, 2);
      CHECK((img - identity_part - basis[target]).norm() < 1e-12);
    }
  }
  SUBCASE("identity permutation is flagged and acts as the identity") {
    const BasisShiftMap shift = make_basis_shift_map(basis, 1, 4);
    CHECK(shift.identity_permutation);
    Rng rng(157);
    const ComplexMatrix x = random_matrix(2, 2, rng);
    CHECK((shift.map.apply(x) - x).norm() < 1e-11);
  }
}

namespace {

// Transpose map as a Choi matrix: J = swap operator; classic non-CP example.
LinearMap transpose_map(Index d) {
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (Index u = 0; u < d; ++u)
    for (Index v = 0; v < d; ++v)
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
          if (a == v && b == u) choi(a * d + u, b * d + v) = 1.0;
  return make_linear_map(d, d, std::move(choi), /*require_tp=*/true);
}

}  // namespace

TEST_CASE("max CP epsilon") {
  SUBCASE("a CP map allows epsilon = 1") {
    const QuantumChannel c = random_channel(2, 3, 2);
    CHECK(max_cp_epsilon(c.map()) == doctest::Approx(1.0));
  }
  SUBCASE("the qubit transpose caps at 1/3") {
    const LinearMap t = transpose_map(2);
    // oracle: (1-eps)/4 - eps/2 >= 0 on the Choi spectrum gives eps <= 1/3
    CHECK(max_cp_epsilon(t) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }
  SUBCASE("boundary bracketing") {
    const LinearMap t = transpose_map(3);
    const double eps = max_cp_epsilon(t);
    CHECK_NOTHROW(mix_to_channel(t, eps));
    CHECK_THROWS_AS(mix_to_channel(t, std::min(1.0, eps * 1.01)),
                    std::invalid_argument);
  }
  SUBCASE("general fixed output via bisection") {
    Rng rng(163);
    const LinearMap t = transpose_map(2);
    ComplexMatrix tau = 0.7 * ComplexMatrix::Identity(2, 2) / 2.0 +
                        0.3 * random_density_matrix(2, rng);
    const double eps = max_cp_epsilon(t, tau);
    CHECK(eps > 0.0);
    CHECK_NOTHROW(mix_to_channel(t, eps, tau));
    CHECK_THROWS_AS(mix_to_channel(t, std::min(1.0, eps + 1e-6), tau),
                    std::invalid_argument);
  }
}

TEST_CASE("mixing toward the depolarizing point") {
  const HermitianBasis gm = hermitian_basis(2);
  SUBCASE("epsilon -> 0 limit approaches the depolarizing Choi") {
    const BasisShiftMap shift = make_basis_shift_map(gm.elements, 1, 1);
    const QuantumChannel c = mix_to_channel(shift, 1e-9);
    CHECK((c.choi() - ComplexMatrix::Identity(4, 4) / 2.0).norm() < 1e-8);
  }
  SUBCASE("identity map admits any epsilon up to one") {
    const QuantumChannel id = QuantumChannel::identity(2);
    CHECK_NOTHROW(mix_to_channel(id.map(), 1.0));
    CHECK_NOTHROW(mix_to_channel(id.map(), 0.5));
  }
  SUBCASE("every mixed channel is TP") {
    const BasisShiftMap shift = make_basis_shift_map(gm.elements, 1, 2);
    const double eps = max_cp_epsilon(shift.map);
    const QuantumChannel c = mix_to_channel(shift, 0.9 * eps);
    CHECK(c.map().is_trace_preserving(1e-10));
    CHECK(min_eigenvalue(c.choi()) > -1e-10);
  }
}

TEST_CASE("channel validation rejects non-CP and non-TP Choi matrices") {
  // the transpose Choi (swap operator) is TP but not CP
  CHECK_THROWS_AS(QuantumChannel::from_choi(2, 2, transpose_map(2).choi),
                  std::invalid_argument);
  // a CP Choi with the wrong normalization is not TP
  CHECK_THROWS_AS(QuantumChannel::from_choi(2, 2, ComplexMatrix::Identity(4, 4)),
                  std::invalid_argument);
}
