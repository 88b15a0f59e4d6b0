#pragma once

// Bit commitment constructions.
//
//  p2bc  shares of b sent through l OT runs over the single-qubit R-OT channel
//  p3    the same share construction over Bell pairs whose first qubit the
//        committer rotates
//  p4    the same over receiver-blinded single qubits
//  p5    direct commitment: blinded qubits encode strings r with F(r) = b

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qot/boolean_function.hpp"
#include "qot/ot12.hpp"
#include "qot/qsim.hpp"
#include "qot/rng.hpp"
#include "qot/rot.hpp"

namespace qot::bc {

using rot::BasisChoice;
using rot::ConclusiveBit;
using qsim::StateVector;

enum class ProtocolId { p2bc, p3, p4, p5 };

std::string_view to_string(ProtocolId p);
ProtocolId parse_protocol(std::string_view text);

struct ChannelRun {
  rot::SenderRecord sender;
  rot::ReceiverRecord receiver;
};

// ---- Entangled channel ------------------------------------------------

// Bell basis {Phi-, Phi+, Psi-, Psi+} and its rotated partner
// {(Phi- + Psi+), (Phi- - Psi+), (Phi+ + Psi-), (Phi+ - Psi-)} / sqrt 2.
struct PairBases {
  qsim::ProjectiveBasis b0;
  qsim::ProjectiveBasis b1;
  const qsim::ProjectiveBasis& operator[](BasisChoice c) const { return c == BasisChoice::b1 ? b1 : b0; }
};

const PairBases& p3_bases();

// Bob's |Phi-> pairs after the committer rotates qubit 0 by pi/4 wherever
// r_i = 1. With blind set, Bob also rotates qubit 0 by a secret angle before
// sending and by its negative after receiving it back.
std::vector<StateVector> p3_prepare_and_encode(std::span<const Bit> r, RngStream& rng, bool blind = false);

// Conclusive outcomes: Psi+ under B0 (value 1), (Phi- - Psi+)/sqrt 2 under B1 (value 0).
std::optional<Bit> p3_measure_pair(const StateVector& joint, BasisChoice basis, RngStream& rng);
rot::ReceiverRecord p3_measure(std::span<const StateVector> joint, RngStream& rng);

// ---- Blinded single-qubit channel -----------------------------------

struct BlindedQubitRecord {
  std::vector<double> alphas;  // receiver-secret, uniform on [0, 2 pi)
};

struct BlindedQubits {
  BlindedQubitRecord record;
  std::vector<StateVector> states;  // rotation_plane(alpha_i)|0>
};

BlindedQubits p4_prepare_blinded(std::size_t n, RngStream& rng);
// The committer's rotation by pi/4 wherever r_i = 1.
StateVector p4_encode_qubit(const StateVector& incoming, Bit r);
std::vector<StateVector> p4_encode(std::span<const StateVector> incoming, std::span<const Bit> r);

// B0 = {|0>, |1>}, B1 = {|+>, |->}.
struct QubitBases {
  qsim::ProjectiveBasis b0;
  qsim::ProjectiveBasis b1;
  const qsim::ProjectiveBasis& operator[](BasisChoice c) const { return c == BasisChoice::b1 ? b1 : b0; }
};

const QubitBases& p4_bases();

struct QubitMeasurement {
  BasisChoice basis;
  std::size_t outcome;  // index into p4_bases()[basis]
};

// |1> under B0 reads 1, |-> under B1 reads 0; everything else is inconclusive.
std::optional<Bit> p4_conclusive_value(const QubitMeasurement& m);
QubitMeasurement p4_measure_unblinded(const StateVector& returned, double alpha, BasisChoice basis, RngStream& rng);
rot::ReceiverRecord p4_unblind_and_measure(std::span<const StateVector> returned, const BlindedQubitRecord& blinding,
                                           RngStream& rng);

// One honest run of the variant's quantum channel; p5 is not an OT channel.
ChannelRun run_channel(ProtocolId variant, std::size_t n, RngStream& rng, bool blind_p3 = false);

// ---- Commitment over OT ------------------------------------------------

struct RoundSecret {
  Bit b0 = 0;
  Bit b1 = 0;
  std::vector<Bit> r;
  std::vector<std::size_t> X;
  std::vector<std::size_t> Y;
  Bit c0 = 0;
  Bit c1 = 0;
  std::uint32_t attempts = 1;
};

struct SenderState {
  ProtocolId protocol = ProtocolId::p2bc;
  Bit bit = 0;
  std::size_t n = 0;
  std::vector<RoundSecret> rounds;
};

struct RoundView {
  std::vector<ConclusiveBit> conclusive;
  std::vector<std::size_t> I;
  std::vector<std::size_t> J;
  Bit m = 0;
  std::vector<std::size_t> X;
  std::vector<std::size_t> Y;
  Bit c0 = 0;
  Bit c1 = 0;
  Bit share = 0;  // b_m recovered through the OT
};

struct ReceiverState {
  ProtocolId protocol = ProtocolId::p2bc;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<RoundView> rounds;
};

struct Commitment {
  SenderState sender;
  ReceiverState receiver;
};

struct CommitOptions {
  std::vector<Bit> forced_m;  // per-round receiver choice bits; empty draws them
  bool blind_p3 = false;
  std::uint32_t max_attempts = 1000;
};

// Aborted OT rounds are rerun with fresh randomness up to max_attempts.
Commitment bc_commit_over_ot(Bit b, std::size_t l, std::size_t n, ProtocolId variant, RngStream& rng,
                             const CommitOptions& options = {});

struct OpenedRound {
  Bit b0 = 0;
  Bit b1 = 0;
  std::vector<ConclusiveBit> revealed;  // sender bits over X then Y
};

struct OpenMessage {
  ProtocolId protocol = ProtocolId::p2bc;
  std::vector<OpenedRound> rounds;
};

OpenMessage bc_open(const SenderState& sender);

struct Inconsistency {
  std::size_t round = 0;
  std::string field;
  std::optional<std::size_t> position;
  std::string detail;

  std::string describe() const;
};

struct VerifyResult {
  bool accepted = false;
  std::optional<Bit> recovered_bit;
  std::optional<Inconsistency> first_inconsistency;

  static VerifyResult accept(Bit b) { return {true, b, std::nullopt}; }
  static VerifyResult reject(Inconsistency why) { return {false, std::nullopt, std::move(why)}; }
};

VerifyResult bc_verify(const ReceiverState& receiver, const OpenMessage& open);

// ---- Direct commitment -------------------------------------------------

struct P5Options {
  bool measure_at_commit = false;
  bool perfect_detectors = true;
};

struct P5SenderState {
  Bit bit = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<Bit>> strings;
};

struct P5ReceiverState {
  std::size_t n = 0;
  std::size_t m = 0;
  std::string function_name = "parity";
  BlindedQubitRecord blinding;
  // Returned qubits; empty where nothing arrived.
  std::vector<std::optional<StateVector>> qubits;
  // Filled instead of qubits when measuring at commit time.
  std::vector<std::optional<QubitMeasurement>> measurements;
  bool measure_at_commit = false;
  bool perfect_detectors = true;
};

struct P5Commitment {
  P5SenderState sender;
  P5ReceiverState receiver;
  std::optional<Inconsistency> commit_rejection;
};

// String i, bit j occupies qubit i * n + j.
inline std::size_t p5_position(std::size_t n, std::size_t string_index, std::size_t bit_index) {
  return string_index * n + bit_index;
}

// Uniform element of F^{-1}(b) by rejection sampling.
std::vector<Bit> sample_preimage(const BooleanFunctionSpec& f, Bit b, RngStream& rng);

struct P5Prepared {
  P5ReceiverState receiver;
  std::vector<StateVector> outgoing;
};

P5Prepared p5_receiver_prepare(std::size_t m, std::size_t n, const BooleanFunctionSpec& f, RngStream& rng,
                               const P5Options& options = {});
std::vector<std::optional<StateVector>> p5_sender_encode(std::span<const StateVector> incoming,
                                                         const std::vector<std::vector<Bit>>& strings);
// Stores (or measures) what came back and checks every qubit arrived when the
// detectors can tell.
std::optional<Inconsistency> p5_receiver_accept(P5ReceiverState& receiver,
                                                std::vector<std::optional<StateVector>> returned, RngStream& rng);

P5Commitment p5_commit(Bit b, std::size_t m, std::size_t n, const BooleanFunctionSpec& f, RngStream& rng,
                       const P5Options& options = {});

struct P5OpenMessage {
  Bit bit = 0;
  std::vector<std::vector<Bit>> strings;
};

P5OpenMessage p5_open(const P5SenderState& sender);

// A qubit mismatches when its measurement gives a conclusive value that
// differs from the declared bit. Accepts iff nothing mismatches and
// F(r_i) = b for every declared string.
VerifyResult p5_open_verify(const P5ReceiverState& receiver, const P5OpenMessage& open, const BooleanFunctionSpec& f,
                            RngStream& rng);

}  // namespace qot::bc
