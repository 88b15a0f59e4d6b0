#include "qot/ot12.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qot/stats.hpp"

namespace qot::ot12 {

std::size_t k_of(std::size_t n, double alpha, double base_rate) {
  if (!(alpha > 0.0 && alpha < base_rate)) throw std::domain_error("k_of: need 0 < alpha < base_rate");
  // Guard against (base - alpha) * n landing a hair below an integer.
  const double raw = (base_rate - alpha) * static_cast<double>(n);
  return static_cast<std::size_t>(std::floor(raw + 1e-9 * std::max(1.0, raw)));
}

std::vector<std::optional<Bit>> conclusive_lookup(const ReceiverRecord& rec, std::size_t n) {
  std::vector<std::optional<Bit>> known(n);
  for (const auto& c : rec.conclusive) {
    if (c.position >= n) throw std::domain_error("conclusive position out of range");
    known[c.position] = c.value;
  }
  return known;
}

namespace {

// Partial Fisher-Yates: k distinct uniformly chosen elements of pool.
std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool, std::size_t k, RngStream& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

std::optional<IndexSets> choose_index_sets(const ReceiverRecord& rec, std::size_t n, std::size_t k, RngStream& rng,
                                           ReceiverStrategy strategy, std::optional<Bit> forced_m) {
  std::vector<std::size_t> conclusive;
  conclusive.reserve(rec.conclusive.size());
  for (const auto& c : rec.conclusive) conclusive.push_back(c.position);
  if (conclusive.size() < k) return std::nullopt;
  if (2 * k > n) throw std::domain_error("choose_index_sets: 2k exceeds n");

  IndexSets sets;
  const bool fill_from_conclusive = strategy == ReceiverStrategy::usd && conclusive.size() >= 2 * k;
  if (fill_from_conclusive) {
    auto both = sample_without_replacement(conclusive, 2 * k, rng);
    // Split the 2k draws at random into I and J.
    for (std::size_t i = both.size(); i > 1; --i) std::swap(both[i - 1], both[rng.below(i)]);
    sets.I.assign(both.begin(), both.begin() + static_cast<std::ptrdiff_t>(k));
    sets.J.assign(both.begin() + static_cast<std::ptrdiff_t>(k), both.end());
    std::sort(sets.I.begin(), sets.I.end());
    std::sort(sets.J.begin(), sets.J.end());
  } else {
    sets.I = sample_without_replacement(conclusive, k, rng);
    std::vector<std::size_t> rest;
    rest.reserve(n - k);
    std::size_t cursor = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (cursor < sets.I.size() && sets.I[cursor] == p) {
        ++cursor;
        continue;
      }
      rest.push_back(p);
    }
    sets.J = sample_without_replacement(std::move(rest), k, rng);
  }
  sets.m = forced_m ? *forced_m : rng.bit();
  return sets;
}

Bit parity_over(std::span<const Bit> r, std::span<const std::size_t> positions) {
  Bit s = 0;
  for (std::size_t p : positions) {
    if (p >= r.size()) throw std::domain_error("parity_over: position out of range");
    s ^= r[p];
  }
  return s;
}

Ciphertexts sender_encrypt(std::span<const Bit> r, std::span<const std::size_t> X, std::span<const std::size_t> Y,
                           Bit b0, Bit b1) {
  for (std::size_t x : X) {
    if (std::find(Y.begin(), Y.end(), x) != Y.end()) throw std::domain_error("sender_encrypt: X and Y overlap");
  }
  return {static_cast<Bit>(b0 ^ parity_over(r, X)), static_cast<Bit>(b1 ^ parity_over(r, Y))};
}

Bit receiver_decrypt(Bit c_m, std::span<const std::size_t> I, std::span<const std::optional<Bit>> known) {
  Bit s = 0;
  for (std::size_t p : I) {
    if (p >= known.size() || !known[p]) throw std::domain_error("receiver_decrypt: no conclusive value at position");
    s ^= *known[p];
  }
  return c_m ^ s;
}

Ot12Session run_ot12_over(SenderRecord sender, ReceiverRecord receiver, std::size_t k, Bit b0, Bit b1,
                          ReceiverStrategy strategy, RngStream& rng, std::optional<Bit> forced_m) {
  Ot12Session session{std::move(sender), std::move(receiver), std::nullopt, {}};
  const std::size_t n = session.sender.bits.size();
  session.transcript.n = n;
  session.transcript.k = k;
  session.sets = choose_index_sets(session.receiver, n, k, rng, strategy, forced_m);
  if (!session.sets) {
    session.transcript.aborted = true;
    return session;
  }
  const IndexSets& sets = *session.sets;
  const Ciphertexts c = sender_encrypt(session.sender.bits, sets.X(), sets.Y(), b0, b1);
  session.transcript.c0 = c.c0;
  session.transcript.c1 = c.c1;
  session.transcript.m = sets.m;

  const auto known = conclusive_lookup(session.receiver, n);
  const Bit c_m = sets.m == 0 ? c.c0 : c.c1;
  session.transcript.b_received = receiver_decrypt(c_m, sets.I, known);

  const bool j_known = std::all_of(sets.J.begin(), sets.J.end(), [&](std::size_t p) { return known[p].has_value(); });
  if (j_known) {
    const Bit c_other = sets.m == 0 ? c.c1 : c.c0;
    session.transcript.b_other = receiver_decrypt(c_other, sets.J, known);
  }
  return session;
}

Ot12Session run_ot12(std::size_t n, Bit b0, Bit b1, ReceiverStrategy strategy, RngStream& rng, double theta,
                     double alpha) {
  const rot::RotChannel channel({n, theta});
  rot::RotRun run = channel.run(strategy, rng);
  return run_ot12_over(std::move(run.sender), std::move(run.receiver), k_of(n, alpha), b0, b1, strategy, rng);
}

std::string_view to_string(EstimateMethod m) {
  return m == EstimateMethod::monte_carlo ? "monte-carlo" : "exact-binomial";
}

SecurityEstimate p1_exact(std::size_t n, double alpha) {
  if (n < 1) throw std::domain_error("p1_exact: n must be positive");
  const std::size_t k = k_of(n, alpha);
  SecurityEstimate e;
  e.value = stats::binomial_tail_ge(n, k, kHonestRate);
  e.complement = stats::binomial_cdf_lt(n, k, kHonestRate);
  e.ci_low = e.ci_high = e.value;
  return e;
}

SecurityEstimate p2_exact(std::size_t n, double alpha) {
  if (n < 1) throw std::domain_error("p2_exact: n must be positive");
  const std::size_t k = k_of(n, alpha);
  const double usd = 1.0 - std::numbers::sqrt2 / 2;
  SecurityEstimate e;
  e.value = stats::binomial_tail_ge(n, 2 * k, usd);
  e.complement = stats::binomial_cdf_lt(n, 2 * k, usd);
  e.ci_low = e.ci_high = e.value;
  return e;
}

std::vector<CurveRow> security_curve(std::span<const std::size_t> ns, double alpha) {
  std::vector<CurveRow> rows;
  rows.reserve(ns.size());
  for (std::size_t n : ns) rows.push_back({n, k_of(n, alpha), p1_exact(n, alpha).value, p2_exact(n, alpha).value});
  return rows;
}

OtTally ot_campaign(std::size_t n, ReceiverStrategy strategy, std::uint64_t trials, std::uint64_t seed, Execution exec,
                    double alpha) {
  const rot::RotChannel channel({n, std::numbers::pi / 4});
  const std::size_t k = k_of(n, alpha);
  return run_trials<OtTally>(
      seed, trials,
      [&](std::uint64_t, RngStream& rng, OtTally& acc) {
        const Bit b0 = rng.bit();
        const Bit b1 = rng.bit();
        rot::RotRun run = channel.run(strategy, rng);
        const Ot12Session s = run_ot12_over(std::move(run.sender), std::move(run.receiver), k, b0, b1, strategy, rng);
        acc.runs += 1;
        if (s.transcript.aborted) {
          acc.aborted += 1;
          return;
        }
        const Bit expected = s.transcript.m == 0 ? b0 : b1;
        if (s.transcript.b_received == expected) acc.correct += 1;
        if (s.transcript.b_other) acc.learned_both += 1;
        acc.other_mask_ones += parity_over(s.sender.bits, s.sets->J);
      },
      exec);
}

SecurityEstimate monte_carlo_estimate(std::uint64_t successes, std::uint64_t trials, double z) {
  SecurityEstimate e;
  e.method = EstimateMethod::monte_carlo;
  e.trials = trials;
  e.value = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  e.complement = 1.0 - e.value;
  const auto ci = stats::wilson_interval(successes, trials, z);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  return e;
}

}  // namespace qot::ot12
