#include "qot/attacks.hpp"

#include <cmath>
#include <stdexcept>

#include "qot/stats.hpp"

namespace qot::attacks {

using rot::BasisChoice;

void NoGoInstance::validate() const {
  if (two_k < 2 || two_k % 2 != 0 || two_k > kMaxNoGoQubits) {
    throw std::domain_error("NoGoInstance: two_k must be even, at least 2 and at most 10");
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + qsim::kConstructionTol)) {
    throw std::domain_error("NoGoInstance: theta must lie in [0, pi/2]");
  }
  if (parity0 > 1 || parity1 > 1) throw std::domain_error("NoGoInstance: parities must be bits");
}

namespace {

DensityMatrix parity_mixture(std::size_t qubits, Bit parity, const qsim::NonorthogonalPair& pair) {
  const std::size_t strings = std::size_t{1} << qubits;
  const double weight = 1.0 / static_cast<double>(strings / 2);
  std::vector<qsim::EnsembleMember> members;
  members.reserve(strings / 2);
  for (std::size_t x = 0; x < strings; ++x) {
    if ((std::popcount(x) & 1) != parity) continue;
    StateVector product = ((x >> (qubits - 1)) & 1U) ? pair.psi1 : pair.psi0;
    for (std::size_t j = 1; j < qubits; ++j) {
      product = qsim::tensor(product, ((x >> (qubits - 1 - j)) & 1U) ? pair.psi1 : pair.psi0);
    }
    members.push_back({weight, std::move(product)});
  }
  return qsim::density_from_ensemble(members);
}

// Purification amplitudes as a (system x ancilla) matrix.
Matrix as_matrix(const StateVector& purified, std::size_t system_dim) {
  const auto d = static_cast<Eigen::Index>(system_dim);
  using RowMajor = Eigen::Matrix<qsim::Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(purified.amps().data(), d, d);
}

}  // namespace

std::pair<DensityMatrix, DensityMatrix> nogo_reduced_states(const NoGoInstance& inst) {
  inst.validate();
  const auto pair = qsim::make_nonorthogonal_pair(inst.theta);
  return {parity_mixture(inst.two_k, inst.parity0, pair), parity_mixture(inst.two_k, inst.parity1, pair)};
}

double nogo_fidelity(const NoGoInstance& inst) {
  const auto [rho0, rho1] = nogo_reduced_states(inst);
  return qsim::fidelity(rho0, rho1);
}

CheatingUnitary nogo_cheating_unitary(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) throw std::domain_error("nogo_cheating_unitary: dimension mismatch");
  CheatingUnitary cheat{qsim::purify(rho0), qsim::purify(rho1), {}};
  const Matrix x0 = as_matrix(cheat.phi0, rho0.dim());
  const Matrix x1 = as_matrix(cheat.phi1, rho1.dim());
  const Matrix cross = x0.adjoint() * x1;
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw std::runtime_error("nogo_cheating_unitary: SVD failed");
  cheat.unitary = (svd.matrixV() * svd.matrixU().adjoint()).conjugate();
  const auto d = cheat.unitary.rows();
  if ((cheat.unitary.adjoint() * cheat.unitary - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::runtime_error("nogo_cheating_unitary: constructed operator is not unitary");
  }
  return cheat;
}

double achieved_overlap(const CheatingUnitary& cheat) {
  const StateVector moved = qsim::apply_on_trailing(cheat.phi0, cheat.unitary);
  return std::min(1.0, std::abs(moved.inner(cheat.phi1)));
}

CheatReport nogo_cheat_report(const NoGoInstance& inst) {
  const auto [rho0, rho1] = nogo_reduced_states(inst);
  CheatReport report;
  report.fidelity = qsim::fidelity(rho0, rho1);
  report.achieved_overlap = achieved_overlap(nogo_cheating_unitary(rho0, rho1));
  report.detection_probability = std::clamp(1.0 - report.achieved_overlap * report.achieved_overlap, 0.0, 1.0);
  return report;
}

bc::OpenMessage forge_share_flip_open(const bc::SenderState& sender, bool compensate, std::span<const Bit> guesses) {
  if (!guesses.empty() && guesses.size() != sender.rounds.size()) {
    throw std::domain_error("forge_share_flip_open: one guess per round required");
  }
  bc::OpenMessage open = bc::bc_open(sender);
  for (std::size_t i = 0; i < open.rounds.size(); ++i) {
    auto& round = open.rounds[i];
    const bool target_y = !guesses.empty() && guesses[i] == 1;
    if (target_y) {
      round.b1 ^= 1U;
    } else {
      round.b0 ^= 1U;
    }
    if (compensate) {
      // Revealed bits list X first, then Y.
      const std::size_t index = target_y ? sender.rounds[i].X.size() : 0;
      round.revealed[index].value ^= 1U;
    }
  }
  return open;
}

StateVector probe_entangled_state(Bit r) {
  StateVector s = qsim::tensor(StateVector::basis(1, 0), qsim::bell_state(qsim::BellKind::phi_minus));
  s = qsim::apply_controlled_x(s, 1, 0);
  if (r) s = qsim::apply_on_qubit(s, 1, qsim::rotation_plane(std::numbers::pi / 4));
  return s;
}

std::vector<double> p3_probe_distribution(Bit r, BasisChoice basis) {
  const int keep[] = {1, 2};
  const DensityMatrix pair = qsim::partial_trace(probe_entangled_state(r), keep);
  return qsim::born_probabilities(pair, bc::p3_bases()[basis]);
}

std::vector<double> p3_honest_distribution(Bit r, BasisChoice basis) {
  RngStream unused(0, 0);
  const Bit bits[] = {r};
  const auto joint = bc::p3_prepare_and_encode(bits, unused);
  return qsim::born_probabilities(joint.front(), bc::p3_bases()[basis]);
}

namespace {

constexpr double kImpossible = 1e-12;

struct ProbeTally {
  std::uint64_t trials = 0;
  std::uint64_t qubits = 0;
  std::uint64_t detections = 0;
  std::uint64_t successful_runs = 0;

  ProbeTally& operator+=(const ProbeTally& o) {
    trials += o.trials;
    qubits += o.qubits;
    detections += o.detections;
    successful_runs += o.successful_runs;
    return *this;
  }
};

ProbeAttackReport summarize(std::size_t n, const ProbeTally& t) {
  ProbeAttackReport rep;
  rep.n = n;
  rep.trials = t.trials;
  rep.qubits = t.qubits;
  rep.detections = t.detections;
  rep.successful_runs = t.successful_runs;
  rep.per_qubit_detection = t.qubits ? static_cast<double>(t.detections) / static_cast<double>(t.qubits) : 0.0;
  rep.run_success = t.trials ? static_cast<double>(t.successful_runs) / static_cast<double>(t.trials) : 0.0;
  const auto d = stats::wilson_interval(t.detections, t.qubits);
  const auto s = stats::wilson_interval(t.successful_runs, t.trials);
  rep.detection_ci_low = d.low;
  rep.detection_ci_high = d.high;
  rep.success_ci_low = s.low;
  rep.success_ci_high = s.high;
  return rep;
}

}  // namespace

ProbeAttackReport probe_attack_p3(std::size_t n, std::uint64_t trials, std::uint64_t seed, Execution exec) {
  if (n < 1) throw std::domain_error("probe_attack_p3: n must be positive");
  struct Table {
    std::vector<double> attacked;
    std::vector<bool> detects;
  };
  // table[r][basis]
  std::vector<std::vector<Table>> table(2);
  for (Bit r : {Bit{0}, Bit{1}}) {
    for (BasisChoice b : {BasisChoice::b0, BasisChoice::b1}) {
      Table t{p3_probe_distribution(r, b), {}};
      for (double p : p3_honest_distribution(r, b)) t.detects.push_back(p < kImpossible);
      table[r].push_back(std::move(t));
    }
  }
  const ProbeTally total = run_trials<ProbeTally>(
      seed, trials,
      [&](std::uint64_t, RngStream& rng, ProbeTally& acc) {
        bool detected = false;
        for (std::size_t q = 0; q < n; ++q) {
          const Bit r = rng.bit();
          const std::size_t b = rng.bit();
          const Table& t = table[r][b];
          const std::size_t outcome = qsim::sample_index(t.attacked, rng);
          if (t.detects[outcome]) {
            acc.detections += 1;
            detected = true;
          }
        }
        acc.trials += 1;
        acc.qubits += n;
        if (!detected) acc.successful_runs += 1;
      },
      exec);
  return summarize(n, total);
}

ProbeAttackReport probe_attack_p4(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                  const ProbeP4Options& options, Execution exec) {
  if (n < 1) throw std::domain_error("probe_attack_p4: n must be positive");
  const auto& bases = bc::p4_bases();
  const StateVector probe0 = StateVector::basis(1, 0);
  const int signal[] = {0};
  const ProbeTally total = run_trials<ProbeTally>(
      seed, trials,
      [&](std::uint64_t, RngStream& rng, ProbeTally& acc) {
        bool detected = false;
        for (std::size_t q = 0; q < n; ++q) {
          const double alpha = options.forced_alpha ? *options.forced_alpha : rng.angle();
          const Bit r = rng.bit();
          const BasisChoice basis = rng.bit() ? BasisChoice::b1 : BasisChoice::b0;
          const StateVector blinded = qsim::apply_on_qubit(probe0, 0, qsim::rotation_plane(alpha));
          // (signal, probe)
          StateVector joint = qsim::tensor(blinded, probe0);
          if (options.with_probe) joint = qsim::apply_controlled_x(joint, 0, 1);
          if (r) joint = qsim::apply_on_qubit(joint, 0, qsim::rotation_plane(std::numbers::pi / 4));
          joint = qsim::apply_on_qubit(joint, 0, qsim::rotation_plane(-alpha));
          const DensityMatrix received = qsim::partial_trace(joint, signal);
          const std::vector<double> p = qsim::born_probabilities(received, bases[basis]);
          const StateVector honest = bc::p4_encode_qubit(probe0, r);
          const std::vector<double> honest_p = qsim::born_probabilities(honest, bases[basis]);
          const std::size_t outcome = qsim::sample_index(p, rng);
          if (honest_p[outcome] < kImpossible) {
            acc.detections += 1;
            detected = true;
          }
        }
        acc.trials += 1;
        acc.qubits += n;
        if (!detected) acc.successful_runs += 1;
      },
      exec);
  return summarize(n, total);
}

OmissionOutcome omission_attack_p5(std::size_t n, std::size_t m, bool perfect_detectors, RngStream& rng) {
  if (n < 2 || m < 1) throw std::domain_error("omission_attack_p5: need n >= 2 and m >= 1");
  const bc::BooleanFunctionSpec f = bc::parity_function(n);
  bc::P5Options options;
  options.perfect_detectors = perfect_detectors;
  bc::P5Prepared prepared = bc::p5_receiver_prepare(m, n, f, rng, options);

  OmissionOutcome outcome;
  std::vector<std::vector<Bit>> strings(m, std::vector<Bit>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (auto& b : strings[i]) b = rng.bit();
    outcome.withheld.push_back(rng.below(n));
  }
  auto returned = bc::p5_sender_encode(prepared.outgoing, strings);
  for (std::size_t i = 0; i < m; ++i) returned[bc::p5_position(n, i, outcome.withheld[i])].reset();

  bc::P5ReceiverState receiver = std::move(prepared.receiver);
  outcome.detected_at_commit = bc::p5_receiver_accept(receiver, std::move(returned), rng).has_value();
  if (outcome.detected_at_commit) return outcome;

  for (Bit target : {Bit{0}, Bit{1}}) {
    bc::P5OpenMessage open{target, strings};
    bool feasible = true;
    for (std::size_t i = 0; i < m; ++i) {
      auto& r = open.strings[i];
      bool found = false;
      for (Bit v : {Bit{0}, Bit{1}}) {
        r[outcome.withheld[i]] = v;
        if ((f.evaluate(r) & 1U) == target) {
          found = true;
          break;
        }
      }
      feasible = feasible && found;
    }
    if (!feasible) continue;
    const bool accepted = bc::p5_open_verify(receiver, open, f, rng).accepted;
    (target == 0 ? outcome.open_zero_accepted : outcome.open_one_accepted) = accepted;
  }
  return outcome;
}

}  // namespace qot::attacks
