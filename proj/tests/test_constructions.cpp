#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capt/constructions.hpp"
#include "capt/faithfulness.hpp"
#include "capt/weyl.hpp"
#include "support.hpp"

using namespace capt;
using namespace capt::testing;

namespace {

std::vector<BipartiteState> apply_channels(const std::vector<QuantumChannel>& cs,
                                           const BipartiteState& rho) {
  std::vector<BipartiteState> out;
  for (const auto& c : cs) out.push_back(apply_local_a(c, rho));
  return out;
}

std::vector<BipartiteState> apply_unitaries(const std::vector<ComplexMatrix>& us,
                                            const BipartiteState& rho) {
  std::vector<BipartiteState> out;
  for (const auto& u : us) out.push_back(apply_local_a(unitary_channel(u), rho));
  return out;
}

}  // namespace

TEST_CASE("channel set on a maximally entangled input is the identity alone") {
  const auto channels = faithful_channel_set(bell_state());
  CHECK(channels.size() == 1);
  CHECK((channels[0].choi() - QuantumChannel::identity(2).choi()).norm() < 1e-12);
}

TEST_CASE("channel set on a qubit product state has four members") {
  Rng rng(301);
  const BipartiteState rho =
      product_state(random_density_matrix(2, rng), random_density_matrix(2, rng));
  const auto channels = faithful_channel_set(rho);
  REQUIRE(channels.size() == 4);
  CHECK(is_faithful_set(apply_channels(channels, rho)));
}

TEST_CASE("channel set on an OSR-3 two-qutrit state has three members") {
  const BipartiteState rho = state_with_osr(3, 3, 3);
  const auto channels = faithful_channel_set(rho);
  REQUIRE(channels.size() == 3);
  CHECK(is_faithful_set(apply_channels(channels, rho)));
}

TEST_CASE("channel set counting law and CPTP validity") {
  for (Index d : {2, 3})
    for (Index k = 1; k <= d * d; ++k) {
      const BipartiteState rho = state_with_osr(d, d, k);
      const auto channels = faithful_channel_set(rho);
      CHECK(static_cast<Index>(channels.size()) == (d * d + k - 1) / k);
      for (const auto& c : channels) {
        CHECK(min_eigenvalue(c.choi()) > -1e-10);
        CHECK(c.map().is_trace_preserving(1e-10));
      }
      CHECK(is_faithful_set(apply_channels(channels, rho)));
    }
}

TEST_CASE("removing a channel breaks faithfulness when the count is tight") {
  for (auto [d, k] : {std::pair<Index, Index>{2, 2}, {2, 1}, {3, 3}}) {
    const BipartiteState rho = state_with_osr(d, d, k);
    const auto channels = faithful_channel_set(rho);
    REQUIRE(static_cast<Index>(channels.size()) * k == d * d);  // tight case
    for (std::size_t skip = 0; skip < channels.size(); ++skip) {
      std::vector<QuantumChannel> reduced;
      for (std::size_t i = 0; i < channels.size(); ++i)
        if (i != skip) reduced.push_back(channels[i]);
      CHECK_FALSE(is_faithful_set(apply_channels(reduced, rho)));
    }
  }
}

TEST_CASE("unitary frame set rejects the excluded product form") {
  Rng rng(303);
  const BipartiteState excluded = product_state(
      ComplexMatrix::Identity(2, 2) / 2.0, random_density_matrix(3, rng));
  CHECK_THROWS_AS(faithful_unitary_set(excluded, 0), ExcludedStateError);
}

TEST_CASE("unitary frame set on a pure product qubit state") {
  Rng rng(307);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const BipartiteState rho = product_state(p0, random_density_matrix(2, rng));
  const auto frame = faithful_unitary_set(rho, 42);
  REQUIRE(frame.unitaries.size() == 4);
  CHECK((frame.unitaries[0] - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK(frame.alpha > 0.0);
  CHECK(frame.beta > 0.0);
  CHECK(is_faithful_set(apply_unitaries(frame.unitaries, rho)));
}

TEST_CASE("unitary frame set on random states") {
  Rng rng(311);
  for (Index d : {2, 3})
    for (int trial = 0; trial < 5; ++trial) {
      const BipartiteState rho = random_bipartite_state(d, d, rng);
      const auto frame = faithful_unitary_set(rho, derive_seed(13, trial));
      CHECK(static_cast<Index>(frame.unitaries.size()) == d * d);
      CHECK(frame.alpha > 0.0);
      CHECK(frame.beta > 0.0);
      for (const auto& u : frame.unitaries)
        CHECK((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm() < 1e-10);
      CHECK(is_faithful_set(apply_unitaries(frame.unitaries, rho)));
    }
}

TEST_CASE("unitary frame set handles a maximally mixed probe with correlations") {
  // correlated state with rho_A = 1/2: the probe operator must be mixed in
  const BipartiteState rho = state_with_osr(2, 2, 2);
  CHECK((rho.reduced_a() - ComplexMatrix::Identity(2, 2) / 2.0).norm() < 1e-12);
  const auto frame = faithful_unitary_set(rho, 7);
  CHECK(frame.unitaries.size() == 4);
  CHECK(is_faithful_set(apply_unitaries(frame.unitaries, rho)));
}

TEST_CASE("block unitaries: k = d collapses to the identity") {
  const auto unitaries = block_unitary_set(3, 3);
  REQUIRE(unitaries.size() == 1);
  CHECK((unitaries[0] - ComplexMatrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("block unitaries: counting law over d in {2,3,4,6}, every k") {
  // the construction verifies faithfulness internally, so a clean return
  // plus the count is the whole claim; includes the truncated k ∤ d cases
  for (Index d : {2, 3, 4, 6})
    for (Index k = 1; k <= d; ++k) {
      const auto unitaries = block_unitary_set(d, k);
      const Index blocks = (d + k - 1) / k;
      CHECK(static_cast<Index>(unitaries.size()) == blocks * blocks);
      for (const auto& u : unitaries) {
        CHECK(u.rows() == d);
        CHECK((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm() < 1e-10);
      }
    }
  // three-block truncations, the hardest compression cases
  CHECK(block_unitary_set(5, 2).size() == 9);
  CHECK(block_unitary_set(7, 3).size() == 9);
  CHECK_THROWS_AS(block_unitary_set(3, 4), std::invalid_argument);
}

TEST_CASE("block unitaries give faithful sets on random rank-k pure inputs") {
  Rng rng(313);
  for (auto [d, k] : {std::pair<Index, Index>{2, 1}, {3, 2}, {4, 2}, {6, 3}}) {
    const auto unitaries = block_unitary_set(d, k);
    const BipartiteState psi = canonical_rank_k_pure(d, k, rng);
    CHECK(is_faithful_set(apply_unitaries(unitaries, psi)));
  }
}

TEST_CASE("discord test on classical and quantum correlated states") {
  Rng rng(317);
  SUBCASE("classical-on-A states are not discordant") {
    for (int trial = 0; trial < 10; ++trial)
      CHECK_FALSE(qubit_discord_test(zero_discord_state(2, rng)));
  }
  SUBCASE("the Bell state is discordant") {
    CHECK(qubit_discord_test(bell_state()));
  }
  SUBCASE("the Werner state at p = 0.5 is discordant") {
    const ComplexMatrix werner =
        0.5 * ComplexMatrix::Identity(4, 4) / 4.0 + 0.5 * bell_state().matrix();
    CHECK(qubit_discord_test(BipartiteState(2, 2, werner)));
  }
  SUBCASE("product states are not discordant") {
    const BipartiteState rho = product_state(random_density_matrix(2, rng),
                                             random_density_matrix(2, rng));
    CHECK_FALSE(qubit_discord_test(rho));
  }
  SUBCASE("wrong probe dimension throws") {
    CHECK_THROWS_AS(qubit_discord_test(random_bipartite_state(3, 2, rng)),
                    std::invalid_argument);
  }
}

TEST_CASE("two-unitary construction for discordant states") {
  SUBCASE("Bell input") {
    const ComplexMatrix u = qubit_discord_unitary(bell_state());
    std::vector<BipartiteState> pair{
        bell_state(), apply_local_a(unitary_channel(u), bell_state())};
    CHECK(is_faithful_set(pair));
  }
  SUBCASE("Werner input") {
    const ComplexMatrix werner =
        0.5 * ComplexMatrix::Identity(4, 4) / 4.0 + 0.5 * bell_state().matrix();
    const BipartiteState rho(2, 2, werner);
    const ComplexMatrix u = qubit_discord_unitary(rho);
    CHECK(is_faithful_set({rho, apply_local_a(unitary_channel(u), rho)}));
  }
  SUBCASE("low-rank discordant states need the rotation to do real work") {
    // span{|0><0|, |+><+|} on the probe: OSR 2, noncommuting projectors
    Rng rng(331);
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    ComplexMatrix pplus(2, 2);
    pplus << 0.5, 0.5, 0.5, 0.5;
    const ComplexMatrix m =
        0.5 * tensor_product(p0, random_density_matrix(2, rng)) +
        0.5 * tensor_product(pplus, random_density_matrix(2, rng));
    const BipartiteState rho(2, 2, m);
    REQUIRE(qubit_discord_test(rho));
    CHECK(osr(rho) <= 3);
    const ComplexMatrix u = qubit_discord_unitary(rho);
    CHECK(is_faithful_set({rho, apply_local_a(unitary_channel(u), rho)}));
  }
  SUBCASE("zero-discord input is refused") {
    Rng rng(337);
    CHECK_THROWS_AS(qubit_discord_unitary(zero_discord_state(2, rng)),
                    ZeroDiscordError);
  }
}

TEST_CASE("every construction returns unitaries that are actually unitary") {
  Rng rng(341);
  const auto frame = faithful_unitary_set(random_bipartite_state(2, 2, rng), 5);
  for (const auto& u : frame.unitaries)
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
  for (const auto& u : block_unitary_set(4, 2))
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm() < 1e-10);
  const ComplexMatrix du = qubit_discord_unitary(bell_state());
  CHECK((du.adjoint() * du - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
  CHECK(std::abs(du.determinant() - Complex(1.0)) < 1e-10);
}
