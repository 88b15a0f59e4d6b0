#pragma once

// Random oblivious transfer over two non-orthogonal single-qubit states.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qot/campaign.hpp"
#include "qot/qsim.hpp"
#include "qot/rng.hpp"

namespace qot::rot {

using Bit = std::uint8_t;

enum class ReceiverStrategy { honest, usd };
enum class BasisChoice : std::uint8_t { b0, b1, usd };

std::string_view to_string(ReceiverStrategy s);
std::string_view to_string(BasisChoice b);
ReceiverStrategy parse_strategy(std::string_view text);
BasisChoice parse_basis(std::string_view text);

struct RotConfig {
  std::size_t n = 1;
  double theta = std::numbers::pi / 4;

  // Throws std::domain_error unless n >= 1 and 0 < theta <= pi/2.
  void validate() const;
  // Expected conclusive fraction for the honest two-basis receiver: sin^2(theta)/2.
  double honest_rate() const;
  // Optimal unambiguous discrimination rate: 1 - cos(theta).
  double usd_rate() const;
};

struct SenderRecord {
  std::vector<Bit> bits;
};

struct ConclusiveBit {
  std::size_t position;  // 0-based qubit index
  Bit value;
  friend bool operator==(const ConclusiveBit&, const ConclusiveBit&) = default;
};

struct ReceiverRecord {
  ReceiverStrategy strategy = ReceiverStrategy::honest;
  std::vector<BasisChoice> basis_choices;
  std::vector<ConclusiveBit> conclusive;  // strictly increasing positions
};

struct AliceOutput {
  SenderRecord record;
  std::vector<qsim::StateVector> states;
};

SenderRecord draw_sender_bits(std::size_t n, RngStream& rng);
std::vector<qsim::StateVector> encode(const SenderRecord& record, double theta);
AliceOutput alice_send(const RotConfig& config, RngStream& rng);

// B_x = {|Psi_x>, |Psi_x>^perp}; labels "psi" and "perp".
struct ReceiverBases {
  qsim::ProjectiveBasis b0;
  qsim::ProjectiveBasis b1;

  const qsim::ProjectiveBasis& operator[](BasisChoice c) const { return c == BasisChoice::b1 ? b1 : b0; }
};

ReceiverBases receiver_bases(double theta);

// Honest single-qubit rule: measuring B_x and landing on the perp element
// yields the conclusive value x xor 1.
std::optional<Bit> measure_honest_qubit(const qsim::StateVector& state, BasisChoice basis, const ReceiverBases& bases,
                                        RngStream& rng);
std::optional<Bit> measure_usd_qubit(const qsim::StateVector& state, const qsim::Povm& povm, RngStream& rng);

ReceiverRecord bob_measure_honest(std::span<const qsim::StateVector> states, const RotConfig& config, RngStream& rng);
ReceiverRecord bob_measure_usd(std::span<const qsim::StateVector> states, const RotConfig& config, RngStream& rng);

struct RotRun {
  SenderRecord sender;
  ReceiverRecord receiver;
};

// Precomputed states, bases and POVM for repeated runs at one angle.
class RotChannel {
 public:
  explicit RotChannel(const RotConfig& config);

  const RotConfig& config() const { return config_; }
  const qsim::NonorthogonalPair& pair() const { return pair_; }
  const ReceiverBases& bases() const { return bases_; }

  // The sender record is drawn in full before any receiver action.
  RotRun run(ReceiverStrategy strategy, RngStream& rng) const;
  ReceiverRecord receive(const SenderRecord& sender, ReceiverStrategy strategy, RngStream& rng) const;

 private:
  RotConfig config_;
  qsim::NonorthogonalPair pair_;
  ReceiverBases bases_;
  std::optional<qsim::Povm> usd_;
};

RotRun run_rot(const RotConfig& config, ReceiverStrategy strategy, RngStream& rng);

struct RateTally {
  std::uint64_t runs = 0;
  std::uint64_t qubits = 0;
  std::uint64_t conclusive = 0;
  std::uint64_t errors = 0;  // conclusive values differing from the sender bit

  RateTally& operator+=(const RateTally& o) {
    runs += o.runs;
    qubits += o.qubits;
    conclusive += o.conclusive;
    errors += o.errors;
    return *this;
  }
};

RateTally rate_campaign(const RotConfig& config, ReceiverStrategy strategy, std::uint64_t trials, std::uint64_t seed,
                        Execution exec = Execution::parallel);

}  // namespace qot::rot
