#include "qot/bitcommit.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qot::bc {

using qsim::BellKind;
using qsim::ProjectiveBasis;
using qsim::Vector;

std::string_view to_string(ProtocolId p) {
  switch (p) {
    case ProtocolId::p2bc: return "p2bc";
    case ProtocolId::p3: return "p3";
    case ProtocolId::p4: return "p4";
    case ProtocolId::p5: return "p5";
  }
  return "?";
}

ProtocolId parse_protocol(std::string_view text) {
  if (text == "p2bc" || text == "P2-BC") return ProtocolId::p2bc;
  if (text == "p3" || text == "P3") return ProtocolId::p3;
  if (text == "p4" || text == "P4") return ProtocolId::p4;
  if (text == "p5" || text == "P5") return ProtocolId::p5;
  throw std::invalid_argument("unknown commitment protocol: " + std::string(text));
}

namespace {

StateVector superpose(const StateVector& a, const StateVector& b, double sign) {
  return StateVector::normalized(Vector(a.amps() + sign * b.amps()));
}

PairBases build_pair_bases() {
  const auto phi_m = qsim::bell_state(BellKind::phi_minus);
  const auto phi_p = qsim::bell_state(BellKind::phi_plus);
  const auto psi_m = qsim::bell_state(BellKind::psi_minus);
  const auto psi_p = qsim::bell_state(BellKind::psi_plus);
  ProjectiveBasis b0({phi_m, phi_p, psi_m, psi_p}, {"Phi-", "Phi+", "Psi-", "Psi+"});
  ProjectiveBasis b1({superpose(phi_m, psi_p, 1), superpose(phi_m, psi_p, -1), superpose(phi_p, psi_m, 1),
                      superpose(phi_p, psi_m, -1)},
                     {"Phi-+Psi+", "Phi--Psi+", "Phi++Psi-", "Phi+-Psi-"});
  return {std::move(b0), std::move(b1)};
}

QubitBases build_qubit_bases() {
  const auto zero = StateVector::basis(1, 0);
  const auto one = StateVector::basis(1, 1);
  return {ProjectiveBasis({zero, one}, {"0", "1"}),
          ProjectiveBasis({superpose(zero, one, 1), superpose(zero, one, -1)}, {"+", "-"})};
}

constexpr std::size_t kPsiPlus = 3;
constexpr std::size_t kPhiMinusMinusPsiPlus = 1;

BasisChoice random_basis(RngStream& rng) { return rng.bit() ? BasisChoice::b1 : BasisChoice::b0; }

}  // namespace

const PairBases& p3_bases() {
  static const PairBases bases = build_pair_bases();
  return bases;
}

const QubitBases& p4_bases() {
  static const QubitBases bases = build_qubit_bases();
  return bases;
}

std::vector<StateVector> p3_prepare_and_encode(std::span<const Bit> r, RngStream& rng, bool blind) {
  const auto encode = qsim::rotation_plane(std::numbers::pi / 4);
  const auto phi_m = qsim::bell_state(BellKind::phi_minus);
  std::vector<StateVector> joint;
  joint.reserve(r.size());
  for (Bit bit : r) {
    StateVector s = phi_m;
    double alpha = 0.0;
    if (blind) {
      alpha = rng.angle();
      s = qsim::apply_on_qubit(s, 0, qsim::rotation_plane(alpha));
    }
    if (bit) s = qsim::apply_on_qubit(s, 0, encode);
    if (blind) s = qsim::apply_on_qubit(s, 0, qsim::rotation_plane(-alpha));
    joint.push_back(std::move(s));
  }
  return joint;
}

std::optional<Bit> p3_measure_pair(const StateVector& joint, BasisChoice basis, RngStream& rng) {
  const std::size_t outcome = qsim::measure_projective_index(joint, p3_bases()[basis], rng);
  if (basis == BasisChoice::b0 && outcome == kPsiPlus) return Bit{1};
  if (basis == BasisChoice::b1 && outcome == kPhiMinusMinusPsiPlus) return Bit{0};
  return std::nullopt;
}

rot::ReceiverRecord p3_measure(std::span<const StateVector> joint, RngStream& rng) {
  rot::ReceiverRecord rec;
  rec.basis_choices.reserve(joint.size());
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const BasisChoice basis = random_basis(rng);
    rec.basis_choices.push_back(basis);
    if (auto v = p3_measure_pair(joint[i], basis, rng)) rec.conclusive.push_back({i, *v});
  }
  return rec;
}

BlindedQubits p4_prepare_blinded(std::size_t n, RngStream& rng) {
  if (n < 1) throw std::domain_error("p4_prepare_blinded: n must be positive");
  BlindedQubits out;
  out.record.alphas.reserve(n);
  out.states.reserve(n);
  const auto zero = StateVector::basis(1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double alpha = rng.angle();
    out.record.alphas.push_back(alpha);
    out.states.push_back(qsim::apply_on_qubit(zero, 0, qsim::rotation_plane(alpha)));
  }
  return out;
}

StateVector p4_encode_qubit(const StateVector& incoming, Bit r) {
  if (!r) return incoming;
  return qsim::apply_on_qubit(incoming, 0, qsim::rotation_plane(std::numbers::pi / 4));
}

std::vector<StateVector> p4_encode(std::span<const StateVector> incoming, std::span<const Bit> r) {
  if (incoming.size() != r.size()) throw std::domain_error("p4_encode: one bit per qubit required");
  std::vector<StateVector> out;
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.push_back(p4_encode_qubit(incoming[i], r[i]));
  return out;
}

std::optional<Bit> p4_conclusive_value(const QubitMeasurement& m) {
  if (m.outcome != 1) return std::nullopt;
  return static_cast<Bit>(m.basis == BasisChoice::b0 ? 1 : 0);
}

QubitMeasurement p4_measure_unblinded(const StateVector& returned, double alpha, BasisChoice basis, RngStream& rng) {
  const StateVector unblinded = qsim::apply_on_qubit(returned, 0, qsim::rotation_plane(-alpha));
  return {basis, qsim::measure_projective_index(unblinded, p4_bases()[basis], rng)};
}

rot::ReceiverRecord p4_unblind_and_measure(std::span<const StateVector> returned, const BlindedQubitRecord& blinding,
                                           RngStream& rng) {
  if (returned.size() != blinding.alphas.size()) throw std::domain_error("p4_unblind_and_measure: record mismatch");
  rot::ReceiverRecord rec;
  rec.basis_choices.reserve(returned.size());
  for (std::size_t i = 0; i < returned.size(); ++i) {
    const BasisChoice basis = random_basis(rng);
    rec.basis_choices.push_back(basis);
    if (auto v = p4_conclusive_value(p4_measure_unblinded(returned[i], blinding.alphas[i], basis, rng))) {
      rec.conclusive.push_back({i, *v});
    }
  }
  return rec;
}

ChannelRun run_channel(ProtocolId variant, std::size_t n, RngStream& rng, bool blind_p3) {
  switch (variant) {
    case ProtocolId::p2bc: {
      rot::RotRun run = rot::run_rot({n, std::numbers::pi / 4}, rot::ReceiverStrategy::honest, rng);
      return {std::move(run.sender), std::move(run.receiver)};
    }
    case ProtocolId::p3: {
      rot::SenderRecord sender = rot::draw_sender_bits(n, rng);
      const auto joint = p3_prepare_and_encode(sender.bits, rng, blind_p3);
      return {std::move(sender), p3_measure(joint, rng)};
    }
    case ProtocolId::p4: {
      BlindedQubits blinded = p4_prepare_blinded(n, rng);
      rot::SenderRecord sender = rot::draw_sender_bits(n, rng);
      const auto returned = p4_encode(blinded.states, sender.bits);
      return {std::move(sender), p4_unblind_and_measure(returned, blinded.record, rng)};
    }
    case ProtocolId::p5: break;
  }
  throw std::domain_error("run_channel: p5 has no OT channel");
}

Commitment bc_commit_over_ot(Bit b, std::size_t l, std::size_t n, ProtocolId variant, RngStream& rng,
                             const CommitOptions& options) {
  if (l < 1) throw std::domain_error("bc_commit_over_ot: need at least one round");
  if (variant == ProtocolId::p5) throw std::domain_error("bc_commit_over_ot: p5 is a direct commitment");
  if (!options.forced_m.empty() && options.forced_m.size() != l) {
    throw std::domain_error("bc_commit_over_ot: forced_m needs one bit per round");
  }
  const std::size_t k = ot12::k_of(n);
  if (k < 1) throw std::domain_error("bc_commit_over_ot: n too small for a non-empty index set");

  Commitment c;
  c.sender = {variant, static_cast<Bit>(b & 1U), n, {}};
  c.receiver = {variant, n, k, {}};
  for (std::size_t i = 0; i < l; ++i) {
    RoundSecret secret;
    secret.b0 = rng.bit();
    secret.b1 = static_cast<Bit>(c.sender.bit ^ secret.b0);
    const std::optional<Bit> forced = options.forced_m.empty() ? std::nullopt : std::optional<Bit>(options.forced_m[i]);
    for (std::uint32_t attempt = 1;; ++attempt) {
      if (attempt > options.max_attempts) throw std::runtime_error("bc_commit_over_ot: OT kept aborting");
      ChannelRun channel = run_channel(variant, n, rng, options.blind_p3);
      ot12::Ot12Session s = ot12::run_ot12_over(std::move(channel.sender), std::move(channel.receiver), k, secret.b0,
                                                secret.b1, rot::ReceiverStrategy::honest, rng, forced);
      if (s.transcript.aborted) continue;
      secret.attempts = attempt;
      secret.r = std::move(s.sender.bits);
      secret.X = s.sets->X();
      secret.Y = s.sets->Y();
      secret.c0 = s.transcript.c0;
      secret.c1 = s.transcript.c1;
      RoundView view;
      view.conclusive = std::move(s.receiver.conclusive);
      view.I = s.sets->I;
      view.J = s.sets->J;
      view.m = s.sets->m;
      view.X = secret.X;
      view.Y = secret.Y;
      view.c0 = secret.c0;
      view.c1 = secret.c1;
      view.share = *s.transcript.b_received;
      c.sender.rounds.push_back(std::move(secret));
      c.receiver.rounds.push_back(std::move(view));
      break;
    }
  }
  return c;
}

OpenMessage bc_open(const SenderState& sender) {
  OpenMessage open;
  open.protocol = sender.protocol;
  for (const auto& round : sender.rounds) {
    OpenedRound o{round.b0, round.b1, {}};
    o.revealed.reserve(round.X.size() + round.Y.size());
    for (std::size_t p : round.X) o.revealed.push_back({p, round.r[p]});
    for (std::size_t p : round.Y) o.revealed.push_back({p, round.r[p]});
    open.rounds.push_back(std::move(o));
  }
  return open;
}

std::string Inconsistency::describe() const {
  std::ostringstream out;
  out << "round " << round << ": " << field;
  if (position) out << " at position " << *position;
  if (!detail.empty()) out << " (" << detail << ")";
  return out.str();
}

namespace {

Inconsistency mismatch(std::size_t round, std::string field, std::optional<std::size_t> position, std::string detail) {
  return {round, std::move(field), position, std::move(detail)};
}

}  // namespace

VerifyResult bc_verify(const ReceiverState& receiver, const OpenMessage& open) {
  if (open.protocol != receiver.protocol) {
    return VerifyResult::reject(mismatch(0, "protocol", std::nullopt, "open message is for another protocol"));
  }
  if (open.rounds.size() != receiver.rounds.size()) {
    return VerifyResult::reject(
        mismatch(std::min(open.rounds.size(), receiver.rounds.size()), "rounds", std::nullopt, "round count differs"));
  }
  std::optional<Bit> committed;
  for (std::size_t i = 0; i < receiver.rounds.size(); ++i) {
    const RoundView& view = receiver.rounds[i];
    const OpenedRound& o = open.rounds[i];
    if (o.b0 > 1 || o.b1 > 1) return VerifyResult::reject(mismatch(i, "shares", std::nullopt, "share is not a bit"));

    // The revealed positions must be exactly X followed by Y.
    if (o.revealed.size() != view.X.size() + view.Y.size()) {
      return VerifyResult::reject(mismatch(i, "revealed", std::nullopt, "wrong number of revealed bits"));
    }
    std::vector<std::optional<Bit>> declared(receiver.n);
    for (std::size_t j = 0; j < o.revealed.size(); ++j) {
      const std::size_t expected = j < view.X.size() ? view.X[j] : view.Y[j - view.X.size()];
      const auto& rb = o.revealed[j];
      if (rb.position != expected) {
        return VerifyResult::reject(mismatch(i, "revealed", rb.position, "position outside the announced sets"));
      }
      if (rb.value > 1) return VerifyResult::reject(mismatch(i, "revealed", rb.position, "value is not a bit"));
      declared[rb.position] = rb.value;
    }

    for (const auto& c : view.conclusive) {
      if (c.position < declared.size() && declared[c.position] && *declared[c.position] != c.value) {
        return VerifyResult::reject(mismatch(i, "r", c.position, "contradicts a conclusive measurement"));
      }
    }

    Bit sx = 0, sy = 0;
    for (std::size_t p : view.X) sx ^= *declared[p];
    for (std::size_t p : view.Y) sy ^= *declared[p];
    if ((o.b0 ^ sx) != view.c0) return VerifyResult::reject(mismatch(i, "c0", std::nullopt, "b0 does not reproduce c0"));
    if ((o.b1 ^ sy) != view.c1) return VerifyResult::reject(mismatch(i, "c1", std::nullopt, "b1 does not reproduce c1"));

    const Bit declared_share = view.m == 0 ? o.b0 : o.b1;
    if (declared_share != view.share) {
      return VerifyResult::reject(mismatch(i, "share", std::nullopt, "differs from the share received by OT"));
    }
    const Bit b = o.b0 ^ o.b1;
    if (committed && *committed != b) {
      return VerifyResult::reject(mismatch(i, "b", std::nullopt, "rounds open to different bits"));
    }
    committed = b;
  }
  return VerifyResult::accept(*committed);
}

std::vector<Bit> sample_preimage(const BooleanFunctionSpec& f, Bit b, RngStream& rng) {
  constexpr int kMaxDraws = 1 << 16;
  std::vector<Bit> r(f.arity);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    for (auto& x : r) x = rng.bit();
    if ((f.evaluate(r) & 1U) == b) return r;
  }
  throw std::domain_error("sample_preimage: no preimage found for " + f.name);
}

P5Prepared p5_receiver_prepare(std::size_t m, std::size_t n, const BooleanFunctionSpec& f, RngStream& rng,
                               const P5Options& options) {
  if (m < 1 || n < 2) throw std::domain_error("p5: need m >= 1 strings of n >= 2 bits");
  if (f.arity != n) throw std::domain_error("p5: function arity must equal n");
  BlindedQubits blinded = p4_prepare_blinded(m * n, rng);
  P5Prepared prepared;
  prepared.receiver.n = n;
  prepared.receiver.m = m;
  prepared.receiver.function_name = f.name;
  prepared.receiver.blinding = std::move(blinded.record);
  prepared.receiver.measure_at_commit = options.measure_at_commit;
  prepared.receiver.perfect_detectors = options.perfect_detectors;
  prepared.outgoing = std::move(blinded.states);
  return prepared;
}

std::vector<std::optional<StateVector>> p5_sender_encode(std::span<const StateVector> incoming,
                                                         const std::vector<std::vector<Bit>>& strings) {
  std::vector<std::optional<StateVector>> out;
  out.reserve(incoming.size());
  const std::size_t n = strings.empty() ? 0 : strings.front().size();
  if (strings.size() * n != incoming.size()) throw std::domain_error("p5_sender_encode: layout mismatch");
  for (std::size_t i = 0; i < strings.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.emplace_back(p4_encode_qubit(incoming[p5_position(n, i, j)], strings[i][j]));
    }
  }
  return out;
}

std::optional<Inconsistency> p5_receiver_accept(P5ReceiverState& receiver,
                                                std::vector<std::optional<StateVector>> returned, RngStream& rng) {
  const std::size_t total = receiver.m * receiver.n;
  if (returned.size() != total) throw std::domain_error("p5_receiver_accept: wrong qubit count");
  std::optional<Inconsistency> missing;
  for (std::size_t pos = 0; pos < total; ++pos) {
    if (!returned[pos] && receiver.perfect_detectors && !missing) {
      missing = mismatch(pos / receiver.n, "qubit", pos, "no detection event for a returned qubit");
    }
  }
  receiver.measurements.assign(total, std::nullopt);
  if (receiver.measure_at_commit) {
    for (std::size_t pos = 0; pos < total; ++pos) {
      if (returned[pos]) {
        receiver.measurements[pos] =
            p4_measure_unblinded(*returned[pos], receiver.blinding.alphas[pos], random_basis(rng), rng);
      }
    }
    receiver.qubits.assign(total, std::nullopt);
  } else {
    receiver.qubits = std::move(returned);
  }
  return missing;
}

P5Commitment p5_commit(Bit b, std::size_t m, std::size_t n, const BooleanFunctionSpec& f, RngStream& rng,
                       const P5Options& options) {
  if (f.arity <= kMaxTruthTableArity && !is_surjective(f)) {
    throw std::domain_error("p5_commit: F must take both values");
  }
  P5Prepared prepared = p5_receiver_prepare(m, n, f, rng, options);
  P5Commitment c;
  c.sender.bit = static_cast<Bit>(b & 1U);
  c.sender.n = n;
  c.sender.m = m;
  for (std::size_t i = 0; i < m; ++i) c.sender.strings.push_back(sample_preimage(f, c.sender.bit, rng));
  auto returned = p5_sender_encode(prepared.outgoing, c.sender.strings);
  c.receiver = std::move(prepared.receiver);
  c.commit_rejection = p5_receiver_accept(c.receiver, std::move(returned), rng);
  return c;
}

P5OpenMessage p5_open(const P5SenderState& sender) { return {sender.bit, sender.strings}; }

VerifyResult p5_open_verify(const P5ReceiverState& receiver, const P5OpenMessage& open, const BooleanFunctionSpec& f,
                            RngStream& rng) {
  if (open.bit > 1) return VerifyResult::reject(mismatch(0, "b", std::nullopt, "committed value is not a bit"));
  if (open.strings.size() != receiver.m) {
    return VerifyResult::reject(mismatch(0, "strings", std::nullopt, "string count differs"));
  }
  for (std::size_t i = 0; i < receiver.m; ++i) {
    const auto& r = open.strings[i];
    if (r.size() != receiver.n) return VerifyResult::reject(mismatch(i, "strings", std::nullopt, "wrong length"));
    for (std::size_t j = 0; j < receiver.n; ++j) {
      const std::size_t pos = p5_position(receiver.n, i, j);
      if (r[j] > 1) return VerifyResult::reject(mismatch(i, "r", pos, "value is not a bit"));
      std::optional<QubitMeasurement> outcome = receiver.measurements.empty() ? std::nullopt : receiver.measurements[pos];
      if (!outcome && pos < receiver.qubits.size() && receiver.qubits[pos]) {
        outcome = p4_measure_unblinded(*receiver.qubits[pos], receiver.blinding.alphas[pos], random_basis(rng), rng);
      }
      if (!outcome) {
        if (receiver.perfect_detectors) {
          return VerifyResult::reject(mismatch(i, "qubit", pos, "qubit never arrived"));
        }
        continue;  // no click: nothing to compare
      }
      const auto value = p4_conclusive_value(*outcome);
      if (value && *value != r[j]) {
        return VerifyResult::reject(mismatch(i, "r", pos, "contradicts the measured qubit"));
      }
    }
  }
  for (std::size_t i = 0; i < receiver.m; ++i) {
    if ((f.evaluate(open.strings[i]) & 1U) != open.bit) {
      return VerifyResult::reject(mismatch(i, "F", std::nullopt, "F(r) differs from the declared bit"));
    }
  }
  return VerifyResult::accept(open.bit);
}

}  // namespace qot::bc
