#include "qot/ot12.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qot/stats.hpp"

namespace {

using namespace qot::ot12;
using qot::RngStream;
using qot::rot::ConclusiveBit;

// Pascal-rule binomial tail in long double, independent of the library's
// log-space summation.
long double tail_oracle(unsigned n, unsigned k, long double p) {
  std::vector<long double> pmf(n + 1, 0.0L);
  pmf[0] = 1.0L;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j > 0; --j) pmf[j] = pmf[j] * (1 - p) + pmf[j - 1] * p;
    pmf[0] *= (1 - p);
  }
  long double s = 0;
  for (unsigned i = k; i <= n; ++i) s += pmf[i];
  return s;
}

TEST(KOf, ThreeSixteenthsOfN) {
  EXPECT_EQ(k_of(256), 48U);
  for (std::size_t n = 1; n <= 4096; ++n) ASSERT_EQ(k_of(n), 3 * n / 16) << n;
  EXPECT_THROW(k_of(64, 0.3), std::domain_error);
  EXPECT_THROW(k_of(64, 0.0), std::domain_error);
}

TEST(KOf, TwoKBound) {
  for (std::size_t n = 16; n <= 4096; ++n) {
    const std::size_t two_k = 2 * k_of(n), bound = 3 * n / 8;
    ASSERT_TRUE(two_k == bound || two_k + 1 == bound) << n;
  }
}

ReceiverRecord record_with(std::vector<std::size_t> positions, const std::vector<Bit>& r) {
  ReceiverRecord rec;
  for (auto p : positions) rec.conclusive.push_back({p, r[p]});
  return rec;
}

TEST(IndexSets, AbortBelowK) {
  RngStream rng(1, 0);
  const std::vector<Bit> r(16, 0);
  EXPECT_FALSE(choose_index_sets(record_with({1, 2}, r), 16, 3, rng).has_value());
  EXPECT_TRUE(choose_index_sets(record_with({1, 2, 5}, r), 16, 3, rng).has_value());
}

TEST(IndexSets, HonestStructure) {
  RngStream rng(2, 0);
  const std::vector<Bit> r(40, 1);
  const std::vector<std::size_t> conclusive{0, 3, 4, 9, 12, 20, 33};
  for (int t = 0; t < 200; ++t) {
    const auto sets = choose_index_sets(record_with(conclusive, r), 40, 5, rng);
    ASSERT_TRUE(sets);
    ASSERT_EQ(sets->I.size(), 5U);
    ASSERT_EQ(sets->J.size(), 5U);
    EXPECT_TRUE(std::is_sorted(sets->I.begin(), sets->I.end()));
    EXPECT_TRUE(std::is_sorted(sets->J.begin(), sets->J.end()));
    for (auto i : sets->I) EXPECT_TRUE(std::find(conclusive.begin(), conclusive.end(), i) != conclusive.end());
    for (auto j : sets->J) {
      EXPECT_LT(j, 40U);
      EXPECT_TRUE(std::find(sets->I.begin(), sets->I.end(), j) == sets->I.end());
    }
    const auto& X = sets->X();
    const auto& Y = sets->Y();
    EXPECT_EQ(sets->m == 0 ? X : Y, sets->I);
    EXPECT_EQ(sets->m == 0 ? Y : X, sets->J);
  }
  EXPECT_THROW(choose_index_sets(record_with({0, 1, 2}, r), 4, 3, rng), std::domain_error);
}

TEST(IndexSets, UsdFillsJFromConclusive) {
  RngStream rng(3, 0);
  const std::vector<Bit> r(30, 0);
  const std::vector<std::size_t> conclusive{1, 2, 5, 7, 11, 13, 17, 19};
  const auto sets = choose_index_sets(record_with(conclusive, r), 30, 4, rng, ReceiverStrategy::usd);
  ASSERT_TRUE(sets);
  for (auto j : sets->J) EXPECT_TRUE(std::find(conclusive.begin(), conclusive.end(), j) != conclusive.end());
}

TEST(Masking, HandExample) {
  const std::vector<Bit> r{1, 0, 1, 1, 0, 1};
  const std::vector<std::size_t> X{0, 2}, Y{3, 5};
  const Ciphertexts c = sender_encrypt(r, X, Y, 1, 0);
  EXPECT_EQ(c.c0, 1);  // 1 ^ (1 ^ 1)
  EXPECT_EQ(c.c1, 0);  // 0 ^ (1 ^ 1)
  const std::vector<std::size_t> overlap{2, 3};
  EXPECT_THROW(sender_encrypt(r, X, overlap, 0, 0), std::domain_error);

  std::vector<std::optional<Bit>> known(6);
  known[0] = 1;
  known[2] = 1;
  EXPECT_EQ(receiver_decrypt(c.c0, X, known), 1);
  EXPECT_THROW(receiver_decrypt(c.c1, Y, known), std::domain_error);
}

TEST(Ot12, HonestCorrectnessAllRuns) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RngStream rng(seed, 0);
    const Bit b0 = rng.bit(), b1 = rng.bit();
    const Ot12Session s = run_ot12(128, b0, b1, ReceiverStrategy::honest, rng);
    if (s.transcript.aborted) {
      EXPECT_FALSE(s.transcript.b_received);
      continue;
    }
    ASSERT_TRUE(s.transcript.b_received);
    EXPECT_EQ(*s.transcript.b_received, s.transcript.m == 0 ? b0 : b1);
    EXPECT_EQ(s.transcript.k, 24U);
  }
}

TEST(Ot12, MFlipSwapsAnnouncedSets) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto run_with = [&](Bit m, Bit b0, Bit b1) {
      RngStream rng(seed, 3);
      const qot::rot::RotChannel channel({96, std::numbers::pi / 4});
      auto run = channel.run(ReceiverStrategy::honest, rng);
      return run_ot12_over(std::move(run.sender), std::move(run.receiver), k_of(96), b0, b1,
                           ReceiverStrategy::honest, rng, m);
    };
    const auto a = run_with(0, 1, 0);
    const auto b = run_with(1, 0, 1);
    if (a.transcript.aborted) {
      EXPECT_TRUE(b.transcript.aborted);
      continue;
    }
    EXPECT_EQ(a.sets->X(), b.sets->Y());
    EXPECT_EQ(a.sets->Y(), b.sets->X());
    // With the messages swapped as well, the ciphertexts swap.
    EXPECT_EQ(a.transcript.c0, b.transcript.c1);
    EXPECT_EQ(a.transcript.c1, b.transcript.c0);
    const std::set<std::vector<std::size_t>> sa{a.sets->X(), a.sets->Y()}, sb{b.sets->X(), b.sets->Y()};
    EXPECT_EQ(sa, sb);
  }
}

TEST(Ot12, UsdReceiverLearnsBothWhenFilled) {
  std::uint64_t both = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngStream rng(seed, 5);
    const Ot12Session s = run_ot12(32, 1, 0, ReceiverStrategy::usd, rng);
    if (s.transcript.b_other) {
      both += 1;
      EXPECT_EQ(*s.transcript.b_other, s.transcript.m == 0 ? 0 : 1);
      EXPECT_EQ(*s.transcript.b_received, s.transcript.m == 0 ? 1 : 0);
    }
  }
  EXPECT_GT(both, 0U);
}

TEST(SecurityExact, MatchesOracle) {
  for (std::size_t n : {64U, 128U, 256U}) {
    const double p1 = static_cast<double>(tail_oracle(n, 3 * n / 16, 0.25L));
    const long double usd = 1.0L - std::sqrt(2.0L) / 2;
    const double p2 = static_cast<double>(tail_oracle(n, 2 * (3 * n / 16), usd));
    EXPECT_NEAR(p1_exact(n).value, p1, 1e-12);
    EXPECT_NEAR(p2_exact(n).value, p2, 1e-12 * p2 + 1e-300);
  }
  // Abort probability used by the OT acceptance row.
  EXPECT_NEAR(p1_exact(256).complement, static_cast<double>(1.0L - tail_oracle(256, 48, 0.25L)), 1e-12);
}

TEST(SecurityExact, MonotoneAndComplementary) {
  const std::vector<std::size_t> ns{64, 128, 256, 512, 1024};
  const auto rows = security_curve(ns);
  ASSERT_EQ(rows.size(), 5U);
  std::vector<double> x, logp2;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, ns[i]);
    EXPECT_EQ(rows[i].k, 3 * ns[i] / 16);
    const auto e = p1_exact(ns[i]);
    EXPECT_NEAR(e.value + e.complement, 1.0, 1e-14);
    if (i > 0) {
      EXPECT_GT(rows[i].p1, rows[i - 1].p1);
      EXPECT_LT(rows[i].p2, rows[i - 1].p2);
    }
    x.push_back(static_cast<double>(ns[i]));
    logp2.push_back(std::log(rows[i].p2));
  }
  const auto fit = qot::stats::linear_fit(x, logp2);
  EXPECT_LT(fit.slope, 0.0);
  EXPECT_GT(fit.r_squared, 0.99);
}

TEST(SecurityMonteCarlo, AgreesWithExactAtN64) {
  const std::uint64_t trials = 100000;
  const OtTally honest = ot_campaign(64, ReceiverStrategy::honest, trials, 31);
  const OtTally usd = ot_campaign(64, ReceiverStrategy::usd, trials, 32);
  const auto p1 = monte_carlo_estimate(honest.runs - honest.aborted, honest.runs);
  const auto p2 = monte_carlo_estimate(usd.learned_both, usd.runs);
  EXPECT_EQ(p1.method, EstimateMethod::monte_carlo);
  EXPECT_LE(p1.ci_low, p1_exact(64).value);
  EXPECT_GE(p1.ci_high, p1_exact(64).value);
  EXPECT_LE(p2.ci_low, p2_exact(64).value);
  EXPECT_GE(p2.ci_high, p2_exact(64).value);
  EXPECT_EQ(honest.correct, honest.runs - honest.aborted);
  EXPECT_EQ(honest.learned_both, 0U);
}

TEST(OtCampaign, MaskBalance) {
  const OtTally t = ot_campaign(128, ReceiverStrategy::honest, 20000, 33);
  const std::uint64_t completed = t.runs - t.aborted;
  EXPECT_LT(std::abs(qot::stats::binomial_z(t.other_mask_ones, completed, 0.5)), 5.0);
}

TEST(OtCampaign, AbortRateAtN256) {
  const OtTally t = ot_campaign(256, ReceiverStrategy::honest, 1000, 34);
  EXPECT_EQ(t.correct, t.runs - t.aborted);
  const auto ci = qot::stats::wilson_interval(t.aborted, t.runs);
  const double expected = p1_exact(256).complement;
  EXPECT_LE(ci.low, expected);
  EXPECT_GE(ci.high, expected);
}

}  // namespace
