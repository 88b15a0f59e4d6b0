#include "qot/rot.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qot/stats.hpp"

namespace {

using namespace qot::rot;
using qot::Execution;
using qot::RngStream;

TEST(RotConfig, Validation) {
  EXPECT_THROW((RotConfig{0, 0.5}).validate(), std::domain_error);
  EXPECT_THROW((RotConfig{4, 0.0}).validate(), std::domain_error);
  EXPECT_THROW((RotConfig{4, 2.0}).validate(), std::domain_error);
  EXPECT_NO_THROW((RotConfig{4, std::numbers::pi / 2}).validate());
  const RotConfig c{8, std::numbers::pi / 4};
  EXPECT_NEAR(c.honest_rate(), 0.25, 1e-15);
  EXPECT_NEAR(c.usd_rate(), 1.0 - std::numbers::sqrt2 / 2, 1e-15);
}

TEST(Names, RoundTrip) {
  for (auto s : {ReceiverStrategy::honest, ReceiverStrategy::usd}) EXPECT_EQ(parse_strategy(to_string(s)), s);
  for (auto b : {BasisChoice::b0, BasisChoice::b1, BasisChoice::usd}) EXPECT_EQ(parse_basis(to_string(b)), b);
  EXPECT_THROW(parse_strategy("greedy"), std::invalid_argument);
}

TEST(Encode, BitSelectsState) {
  const SenderRecord rec{{0, 1, 1, 0}};
  const auto states = encode(rec, std::numbers::pi / 4);
  const auto pair = qot::qsim::make_nonorthogonal_pair(std::numbers::pi / 4);
  ASSERT_EQ(states.size(), 4U);
  EXPECT_TRUE(qot::qsim::equal_up_to_phase(states[0], pair.psi0));
  EXPECT_TRUE(qot::qsim::equal_up_to_phase(states[1], pair.psi1));
}

TEST(HonestQubit, ConclusiveValuesAreAlwaysCorrect) {
  const double theta = 0.9;
  const auto pair = qot::qsim::make_nonorthogonal_pair(theta);
  const auto bases = receiver_bases(theta);
  RngStream rng(3, 0);
  std::uint64_t conclusive[2][2] = {};
  for (Bit bit : {Bit{0}, Bit{1}}) {
    const auto& state = bit ? pair.psi1 : pair.psi0;
    for (auto basis : {BasisChoice::b0, BasisChoice::b1}) {
      for (int t = 0; t < 4000; ++t) {
        const auto v = measure_honest_qubit(state, basis, bases, rng);
        if (v) {
          ASSERT_EQ(*v, bit);
          conclusive[bit][basis == BasisChoice::b1] += 1;
        }
      }
    }
  }
  // Measuring in the sender's own basis never concludes.
  EXPECT_EQ(conclusive[0][0], 0U);
  EXPECT_EQ(conclusive[1][1], 0U);
  // Otherwise the perp outcome has probability sin^2 theta.
  const double expected = std::sin(theta) * std::sin(theta);
  EXPECT_LT(std::abs(qot::stats::binomial_z(conclusive[0][1], 4000, expected)), 5.0);
  EXPECT_LT(std::abs(qot::stats::binomial_z(conclusive[1][0], 4000, expected)), 5.0);
  EXPECT_THROW(measure_honest_qubit(pair.psi0, BasisChoice::usd, bases, rng), std::domain_error);
}

TEST(RotRun, TranscriptShape) {
  RngStream rng(4, 0);
  const RotConfig config{200, std::numbers::pi / 4};
  for (auto s : {ReceiverStrategy::honest, ReceiverStrategy::usd}) {
    const RotRun run = run_rot(config, s, rng);
    ASSERT_EQ(run.sender.bits.size(), 200U);
    ASSERT_EQ(run.receiver.basis_choices.size(), 200U);
    EXPECT_EQ(run.receiver.strategy, s);
    for (std::size_t i = 0; i < run.receiver.conclusive.size(); ++i) {
      const auto& c = run.receiver.conclusive[i];
      EXPECT_LT(c.position, 200U);
      if (i > 0) EXPECT_GT(c.position, run.receiver.conclusive[i - 1].position);
      EXPECT_EQ(c.value, run.sender.bits[c.position]);
    }
    for (auto b : run.receiver.basis_choices) {
      EXPECT_EQ(b == BasisChoice::usd, s == ReceiverStrategy::usd);
    }
  }
}

TEST(RotRun, ExplicitPipelineMatchesChannel) {
  // alice_send + bob_measure_* draw in the same order as RotChannel::run.
  const RotConfig config{50, 0.6};
  for (auto s : {ReceiverStrategy::honest, ReceiverStrategy::usd}) {
    RngStream a(9, 1), b(9, 1);
    const AliceOutput alice = alice_send(config, a);
    const ReceiverRecord rec = s == ReceiverStrategy::honest ? bob_measure_honest(alice.states, config, a)
                                                             : bob_measure_usd(alice.states, config, a);
    const RotRun run = RotChannel(config).run(s, b);
    EXPECT_EQ(alice.record.bits, run.sender.bits);
    EXPECT_EQ(rec.conclusive, run.receiver.conclusive);
  }
}

TEST(RateCampaign, HonestRateAtMillionQubits) {
  const RotConfig config{1000, std::numbers::pi / 4};
  const RateTally t = rate_campaign(config, ReceiverStrategy::honest, 1000, 17);
  ASSERT_EQ(t.qubits, 1000000U);
  const double rate = static_cast<double>(t.conclusive) / static_cast<double>(t.qubits);
  EXPECT_NEAR(rate, 0.25, 0.005);
  const auto ci = qot::stats::wilson_interval(t.conclusive, t.qubits);
  EXPECT_LE(ci.low, 0.25);
  EXPECT_GE(ci.high, 0.25);
  EXPECT_EQ(t.errors, 0U);
}

TEST(RateCampaign, UsdRateAtMillionQubits) {
  const RotConfig config{1000, std::numbers::pi / 4};
  const RateTally t = rate_campaign(config, ReceiverStrategy::usd, 1000, 18);
  const double rate = static_cast<double>(t.conclusive) / static_cast<double>(t.qubits);
  EXPECT_NEAR(rate, 1.0 - std::numbers::sqrt2 / 2, 0.005);
  EXPECT_LT(std::abs(qot::stats::binomial_z(t.conclusive, t.qubits, config.usd_rate())), 3.0);
  EXPECT_EQ(t.errors, 0U);
}

TEST(RateCampaign, RatesFollowAngle) {
  for (double theta : {0.3, 0.8, 1.2, std::numbers::pi / 2}) {
    const RotConfig config{500, theta};
    const RateTally h = rate_campaign(config, ReceiverStrategy::honest, 200, 19);
    const RateTally u = rate_campaign(config, ReceiverStrategy::usd, 200, 20);
    EXPECT_LT(std::abs(qot::stats::binomial_z(h.conclusive, h.qubits, config.honest_rate())), 5.0) << theta;
    EXPECT_LT(std::abs(qot::stats::binomial_z(u.conclusive, u.qubits, config.usd_rate())), 5.0) << theta;
    EXPECT_EQ(h.errors + u.errors, 0U);
  }
}

TEST(RateCampaign, Deterministic) {
  const RotConfig config{64, std::numbers::pi / 4};
  const auto a = rate_campaign(config, ReceiverStrategy::honest, 100, 21, Execution::serial);
  const auto b = rate_campaign(config, ReceiverStrategy::honest, 100, 21, Execution::serial);
  const auto c = rate_campaign(config, ReceiverStrategy::honest, 100, 22, Execution::serial);
  EXPECT_EQ(a.conclusive, b.conclusive);
  EXPECT_NE(a.conclusive, c.conclusive);
}

}  // namespace
