#pragma once

// One-out-of-two oblivious transfer built from an R-OT run: the receiver
// announces two index sets, the sender masks each message bit with the
// parity of her random bits over one set.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qot/campaign.hpp"
#include "qot/rng.hpp"
#include "qot/rot.hpp"

namespace qot::ot12 {

using rot::Bit;
using rot::ReceiverRecord;
using rot::ReceiverStrategy;
using rot::SenderRecord;

inline constexpr double kDefaultAlpha = 1.0 / 16;
inline constexpr double kHonestRate = 0.25;

// floor((base_rate - alpha) * n); requires 0 < alpha < base_rate.
std::size_t k_of(std::size_t n, double alpha = kDefaultAlpha, double base_rate = kHonestRate);

struct IndexSets {
  std::vector<std::size_t> I;  // sorted, conclusive positions
  std::vector<std::size_t> J;  // sorted, disjoint from I
  Bit m = 0;
  // Announced pair: (X, Y) = (I, J) when m = 0, (J, I) when m = 1.
  const std::vector<std::size_t>& X() const { return m == 0 ? I : J; }
  const std::vector<std::size_t>& Y() const { return m == 0 ? J : I; }
};

// Per-position conclusive value lookup of length n.
std::vector<std::optional<Bit>> conclusive_lookup(const ReceiverRecord& rec, std::size_t n);

// Returns nullopt (abort) when fewer than k conclusive bits are available.
// The honest receiver draws J uniformly from {0..n-1} \ I. A cheating
// receiver fills J with further conclusive positions whenever it holds at
// least 2k of them.
std::optional<IndexSets> choose_index_sets(const ReceiverRecord& rec, std::size_t n, std::size_t k, RngStream& rng,
                                           ReceiverStrategy strategy = ReceiverStrategy::honest,
                                           std::optional<Bit> forced_m = std::nullopt);

struct Ciphertexts {
  Bit c0;
  Bit c1;
};

Bit parity_over(std::span<const Bit> r, std::span<const std::size_t> positions);

// c0 = b0 ^ parity(r over X), c1 = b1 ^ parity(r over Y). Overlapping X, Y is a domain error.
Ciphertexts sender_encrypt(std::span<const Bit> r, std::span<const std::size_t> X, std::span<const std::size_t> Y,
                           Bit b0, Bit b1);

// c_m ^ parity of the receiver's conclusive values over I. Throws
// std::domain_error when some position of I has no conclusive value.
Bit receiver_decrypt(Bit c_m, std::span<const std::size_t> I, std::span<const std::optional<Bit>> known);

struct Ot12Transcript {
  std::size_t n = 0;
  std::size_t k = 0;
  Bit c0 = 0;
  Bit c1 = 0;
  Bit m = 0;
  std::optional<Bit> b_received;  // absent when aborted
  bool aborted = false;
  // Set when a cheating receiver also recovered the other message.
  std::optional<Bit> b_other;
};

struct Ot12Session {
  SenderRecord sender;
  ReceiverRecord receiver;
  std::optional<IndexSets> sets;
  Ot12Transcript transcript;
};

// Steps after the quantum channel: index-set choice, masking and decryption.
Ot12Session run_ot12_over(SenderRecord sender, ReceiverRecord receiver, std::size_t k, Bit b0, Bit b1,
                          ReceiverStrategy strategy, RngStream& rng, std::optional<Bit> forced_m = std::nullopt);

Ot12Session run_ot12(std::size_t n, Bit b0, Bit b1, ReceiverStrategy strategy, RngStream& rng,
                     double theta = std::numbers::pi / 4, double alpha = kDefaultAlpha);

enum class EstimateMethod { exact_binomial, monte_carlo };
std::string_view to_string(EstimateMethod m);

struct SecurityEstimate {
  double value = 0;
  EstimateMethod method = EstimateMethod::exact_binomial;
  double ci_low = 0;
  double ci_high = 0;
  // 1 - value, evaluated on the opposite tail rather than by subtraction.
  double complement = 1;
  std::uint64_t trials = 0;
};

// P[Bin(n, 1/4) >= k_of(n)]: honest receiver has enough conclusive bits.
SecurityEstimate p1_exact(std::size_t n, double alpha = kDefaultAlpha);
// P[Bin(n, 1 - sqrt(2)/2) >= 2 k_of(n)]: USD receiver can fill both sets.
SecurityEstimate p2_exact(std::size_t n, double alpha = kDefaultAlpha);

struct CurveRow {
  std::size_t n;
  std::size_t k;
  double p1;
  double p2;
};

std::vector<CurveRow> security_curve(std::span<const std::size_t> ns, double alpha = kDefaultAlpha);

struct OtTally {
  std::uint64_t runs = 0;
  std::uint64_t aborted = 0;
  std::uint64_t correct = 0;      // b_received == b_m
  std::uint64_t learned_both = 0;
  std::uint64_t other_mask_ones = 0;  // parity of r over J equal to 1 (non-aborted runs)

  OtTally& operator+=(const OtTally& o) {
    runs += o.runs;
    aborted += o.aborted;
    correct += o.correct;
    learned_both += o.learned_both;
    other_mask_ones += o.other_mask_ones;
    return *this;
  }
};

// Each trial draws random b0, b1 and runs the full protocol.
OtTally ot_campaign(std::size_t n, ReceiverStrategy strategy, std::uint64_t trials, std::uint64_t seed,
                    Execution exec = Execution::parallel, double alpha = kDefaultAlpha);

SecurityEstimate monte_carlo_estimate(std::uint64_t successes, std::uint64_t trials, double z = 3.0);

}  // namespace qot::ot12
