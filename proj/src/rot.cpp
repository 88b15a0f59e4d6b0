#include "qot/rot.hpp"

#include <cmath>
#include <stdexcept>

namespace qot::rot {

using qsim::StateVector;

std::string_view to_string(ReceiverStrategy s) { return s == ReceiverStrategy::usd ? "usd" : "honest"; }

std::string_view to_string(BasisChoice b) {
  switch (b) {
    case BasisChoice::b0: return "B0";
    case BasisChoice::b1: return "B1";
    case BasisChoice::usd: return "USD";
  }
  return "?";
}

ReceiverStrategy parse_strategy(std::string_view text) {
  if (text == "honest") return ReceiverStrategy::honest;
  if (text == "usd") return ReceiverStrategy::usd;
  throw std::invalid_argument("unknown receiver strategy: " + std::string(text));
}

BasisChoice parse_basis(std::string_view text) {
  if (text == "B0") return BasisChoice::b0;
  if (text == "B1") return BasisChoice::b1;
  if (text == "USD") return BasisChoice::usd;
  throw std::invalid_argument("unknown basis tag: " + std::string(text));
}

void RotConfig::validate() const {
  if (n < 1) throw std::domain_error("RotConfig: n must be at least 1");
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2 + qsim::kConstructionTol)) {
    throw std::domain_error("RotConfig: theta must lie in (0, pi/2]");
  }
}

double RotConfig::honest_rate() const { return 0.5 * std::pow(std::sin(theta), 2); }

double RotConfig::usd_rate() const { return 1.0 - std::cos(theta); }

SenderRecord draw_sender_bits(std::size_t n, RngStream& rng) {
  SenderRecord r;
  r.bits.resize(n);
  for (auto& b : r.bits) b = rng.bit();
  return r;
}

std::vector<StateVector> encode(const SenderRecord& record, double theta) {
  const auto pair = qsim::make_nonorthogonal_pair(theta);
  std::vector<StateVector> states;
  states.reserve(record.bits.size());
  for (Bit b : record.bits) states.push_back(b ? pair.psi1 : pair.psi0);
  return states;
}

AliceOutput alice_send(const RotConfig& config, RngStream& rng) {
  config.validate();
  SenderRecord record = draw_sender_bits(config.n, rng);
  auto states = encode(record, config.theta);
  return {std::move(record), std::move(states)};
}

ReceiverBases receiver_bases(double theta) {
  const StateVector one = StateVector::basis(1, 1);
  const auto pair = qsim::make_nonorthogonal_pair(theta);
  const auto perp1 = qsim::apply_on_qubit(one, 0, qsim::rotation_plane(theta));
  return {qsim::ProjectiveBasis({pair.psi0, one}, {"psi", "perp"}),
          qsim::ProjectiveBasis({pair.psi1, perp1}, {"psi", "perp"})};
}

std::optional<Bit> measure_honest_qubit(const StateVector& state, BasisChoice basis, const ReceiverBases& bases,
                                        RngStream& rng) {
  if (basis == BasisChoice::usd) throw std::domain_error("measure_honest_qubit: USD is not an honest basis");
  const std::size_t outcome = qsim::measure_projective_index(state, bases[basis], rng);
  if (outcome != 1) return std::nullopt;
  return static_cast<Bit>(basis == BasisChoice::b0 ? 1 : 0);
}

std::optional<Bit> measure_usd_qubit(const StateVector& state, const qsim::Povm& povm, RngStream& rng) {
  switch (qsim::measure_povm_index(state, povm, rng)) {
    case 0: return Bit{0};
    case 1: return Bit{1};
    default: return std::nullopt;
  }
}

ReceiverRecord bob_measure_honest(std::span<const StateVector> states, const RotConfig& config, RngStream& rng) {
  config.validate();
  const ReceiverBases bases = receiver_bases(config.theta);
  ReceiverRecord rec;
  rec.strategy = ReceiverStrategy::honest;
  rec.basis_choices.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const BasisChoice basis = rng.bit() ? BasisChoice::b1 : BasisChoice::b0;
    rec.basis_choices.push_back(basis);
    if (auto v = measure_honest_qubit(states[i], basis, bases, rng)) rec.conclusive.push_back({i, *v});
  }
  return rec;
}

ReceiverRecord bob_measure_usd(std::span<const StateVector> states, const RotConfig& config, RngStream& rng) {
  config.validate();
  const qsim::Povm povm = qsim::usd_povm(config.theta);
  ReceiverRecord rec;
  rec.strategy = ReceiverStrategy::usd;
  rec.basis_choices.assign(states.size(), BasisChoice::usd);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (auto v = measure_usd_qubit(states[i], povm, rng)) rec.conclusive.push_back({i, *v});
  }
  return rec;
}

RotChannel::RotChannel(const RotConfig& config)
    : config_((config.validate(), config)),
      pair_(qsim::make_nonorthogonal_pair(config.theta)),
      bases_(receiver_bases(config.theta)),
      usd_(qsim::usd_povm(config.theta)) {}

ReceiverRecord RotChannel::receive(const SenderRecord& sender, ReceiverStrategy strategy, RngStream& rng) const {
  ReceiverRecord rec;
  rec.strategy = strategy;
  const std::size_t n = sender.bits.size();
  rec.basis_choices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const StateVector& state = sender.bits[i] ? pair_.psi1 : pair_.psi0;
    std::optional<Bit> value;
    if (strategy == ReceiverStrategy::honest) {
      const BasisChoice basis = rng.bit() ? BasisChoice::b1 : BasisChoice::b0;
      rec.basis_choices.push_back(basis);
      value = measure_honest_qubit(state, basis, bases_, rng);
    } else {
      rec.basis_choices.push_back(BasisChoice::usd);
      value = measure_usd_qubit(state, *usd_, rng);
    }
    if (value) rec.conclusive.push_back({i, *value});
  }
  return rec;
}

RotRun RotChannel::run(ReceiverStrategy strategy, RngStream& rng) const {
  SenderRecord sender = draw_sender_bits(config_.n, rng);
  ReceiverRecord receiver = receive(sender, strategy, rng);
  return {std::move(sender), std::move(receiver)};
}

RotRun run_rot(const RotConfig& config, ReceiverStrategy strategy, RngStream& rng) {
  return RotChannel(config).run(strategy, rng);
}

RateTally rate_campaign(const RotConfig& config, ReceiverStrategy strategy, std::uint64_t trials, std::uint64_t seed,
                        Execution exec) {
  const RotChannel channel(config);
  return run_trials<RateTally>(
      seed, trials,
      [&](std::uint64_t, RngStream& rng, RateTally& acc) {
        const RotRun run = channel.run(strategy, rng);
        acc.runs += 1;
        acc.qubits += run.sender.bits.size();
        acc.conclusive += run.receiver.conclusive.size();
        for (const auto& c : run.receiver.conclusive) {
          if (c.value != run.sender.bits[c.position]) acc.errors += 1;
        }
      },
      exec);
}

}  // namespace qot::rot
