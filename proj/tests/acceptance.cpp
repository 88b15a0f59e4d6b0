// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "qot/attacks.hpp"
#include "qot/bitcommit.hpp"
#include "qot/ot12.hpp"
#include "qot/qsim.hpp"
#include "qot/rot.hpp"
#include "qot/stats.hpp"
#include "test_support.hpp"

namespace {

using namespace qot;
using bc::ProtocolId;
using rot::Bit;

const double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double z_of(std::uint64_t s, std::uint64_t n, double p) { return stats::binomial_z(s, n, p); }

Outcome honest_rate() {
  const rot::RotConfig config{1000, kPi / 4};
  const auto t = rot::rate_campaign(config, rot::ReceiverStrategy::honest, 1000, 101);
  const double rate = static_cast<double>(t.conclusive) / static_cast<double>(t.qubits);
  return {t.qubits >= 1000000 && std::abs(rate - 0.25) <= 0.005 && t.errors == 0,
          fmt("rate=%.6f qubits=%llu errors=%llu", rate, (unsigned long long)t.qubits, (unsigned long long)t.errors)};
}

Outcome usd_rate() {
  const rot::RotConfig config{1000, kPi / 4};
  const auto t = rot::rate_campaign(config, rot::ReceiverStrategy::usd, 1000, 102);
  const double rate = static_cast<double>(t.conclusive) / static_cast<double>(t.qubits);
  return {std::abs(rate - (1 - std::numbers::sqrt2 / 2)) <= 0.005 && t.errors == 0,
          fmt("rate=%.6f errors=%llu", rate, (unsigned long long)t.errors)};
}

Outcome encoding_identity() {
  RngStream rng(103, 0);
  const Bit one[] = {1};
  const auto encoded = bc::p3_prepare_and_encode(one, rng).front();
  const qsim::Vector expected = (qsim::bell_state(qsim::BellKind::phi_minus).amps() +
                                 qsim::bell_state(qsim::BellKind::psi_plus).amps()) /
                                std::numbers::sqrt2;
  const double err = (encoded.amps() - expected).cwiseAbs().maxCoeff();
  return {err <= 1e-12, fmt("max_err=%.3g", err)};
}

Outcome probe_expansion() {
  const auto dist = attacks::p3_probe_distribution(1, rot::BasisChoice::b0);
  double err = 0;
  for (double p : dist) err = std::max(err, std::abs(p - 0.25));
  const auto per_qubit = attacks::probe_attack_p3(1000, 1000, 104);
  const auto runs = attacks::probe_attack_p3(8, 100000, 105);
  const double z = z_of(runs.successful_runs, runs.trials, 1.0 / 256);
  return {err <= 1e-12 && per_qubit.qubits >= 1000000 && std::abs(per_qubit.per_qubit_detection - 0.5) <= 0.01 &&
              std::abs(z) <= 3,
          fmt("born_err=%.3g detection=%.5f run_success=%.6f z=%.2f", err, per_qubit.per_qubit_detection,
              runs.run_success, z)};
}

Outcome ot_correctness() {
  const auto t = ot12::ot_campaign(256, rot::ReceiverStrategy::honest, 1000, 106);
  const double expected = ot12::p1_exact(256).complement;
  const double z = z_of(t.aborted, t.runs, expected);
  return {ot12::k_of(256) == 48 && t.correct == t.runs - t.aborted && std::abs(z) <= 3,
          fmt("aborts=%llu expected_rate=%.5f z=%.2f", (unsigned long long)t.aborted, expected, z)};
}

Outcome security_conditions() {
  const std::vector<std::size_t> ns{64, 128, 256, 512, 1024};
  const auto rows = ot12::security_curve(ns);
  bool monotone = true;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) monotone = monotone && rows[i].p1 > rows[i - 1].p1 && rows[i].p2 < rows[i - 1].p2;
    x.push_back(static_cast<double>(rows[i].n));
    y.push_back(std::log(rows[i].p2));
  }
  const auto fit = stats::linear_fit(x, y);
  const std::uint64_t trials = 100000;
  const auto honest = ot12::ot_campaign(64, rot::ReceiverStrategy::honest, trials, 107);
  const auto usd = ot12::ot_campaign(64, rot::ReceiverStrategy::usd, trials, 108);
  const double z1 = z_of(honest.runs - honest.aborted, trials, ot12::p1_exact(64).value);
  const double z2 = z_of(usd.learned_both, trials, ot12::p2_exact(64).value);
  return {monotone && fit.r_squared > 0.99 && std::abs(z1) <= 3 && std::abs(z2) <= 3,
          fmt("monotone=%d r2=%.5f z_p1=%.2f z_p2=%.2f", monotone, fit.r_squared, z1, z2)};
}

// Every single checkable field change of an honest opening must be rejected.
bool tampering_rejected(const bc::Commitment& c) {
  const bc::OpenMessage honest = bc::bc_open(c.sender);
  std::vector<bc::OpenMessage> variants;
  for (std::size_t i = 0; i < honest.rounds.size(); ++i) {
    auto o = honest;
    o.rounds[i].b0 ^= 1U;
    variants.push_back(o);
    o = honest;
    o.rounds[i].b1 ^= 1U;
    variants.push_back(o);
    for (std::size_t j = 0; j < honest.rounds[i].revealed.size(); ++j) {
      o = honest;
      o.rounds[i].revealed[j].value ^= 1U;
      variants.push_back(o);
      o = honest;
      o.rounds[i].revealed[j].position = (o.rounds[i].revealed[j].position + 1) % c.receiver.n;
      variants.push_back(o);
    }
  }
  for (const auto& o : variants) {
    if (bc::bc_verify(c.receiver, o).accepted) return false;
  }
  return true;
}

Outcome commitment_round_trips() {
  int accepted = 0, tamper_ok = 0, cases = 0;
  for (auto p : {ProtocolId::p2bc, ProtocolId::p3, ProtocolId::p4}) {
    for (std::uint64_t t = 0; t < 100; ++t) {
      RngStream rng(109, t);
      const Bit b = t & 1U;
      const auto c = bc::bc_commit_over_ot(b, 4, 64, p, rng);
      const auto v = bc::bc_verify(c.receiver, bc::bc_open(c.sender));
      accepted += v.accepted && v.recovered_bit == b;
      tamper_ok += tampering_rejected(c);
      cases += 1;
    }
  }
  const auto f = bc::parity_function(4);
  for (std::uint64_t t = 0; t < 100; ++t) {
    RngStream rng(110, t);
    const Bit b = t & 1U;
    const auto c = bc::p5_commit(b, 8, 4, f, rng);
    const auto honest = bc::p5_open(c.sender);
    const auto v = bc::p5_open_verify(c.receiver, honest, f, rng);
    accepted += !c.commit_rejection && v.accepted && v.recovered_bit == b;
    bool rejected = true;
    auto o = honest;
    o.bit ^= 1U;
    rejected = rejected && !bc::p5_open_verify(c.receiver, o, f, rng).accepted;
    for (std::size_t i = 0; i < honest.strings.size(); ++i) {
      for (std::size_t j = 0; j < honest.strings[i].size(); ++j) {
        o = honest;
        o.strings[i][j] ^= 1U;
        rejected = rejected && !bc::p5_open_verify(c.receiver, o, f, rng).accepted;
      }
    }
    tamper_ok += rejected;
    cases += 1;
  }
  return {accepted == cases && tamper_ok == cases, fmt("accepted=%d/%d tamper_rejected=%d/%d", accepted, cases,
                                                       tamper_ok, cases)};
}

Outcome nogo() {
  bool agree = true, decreasing = true;
  double previous = 2, worst = 0;
  std::string detail;
  for (std::size_t two_k : {2U, 4U, 6U}) {
    const auto r = attacks::nogo_cheat_report({two_k, kPi / 4});
    worst = std::max(worst, std::abs(r.fidelity - r.achieved_overlap));
    agree = agree && std::abs(r.fidelity - r.achieved_overlap) <= 1e-8;
    decreasing = decreasing && r.detection_probability < previous;
    previous = r.detection_probability;
    detail += fmt("d%zu=%.6f ", two_k, r.detection_probability);
  }
  return {agree && decreasing, detail + fmt("max_gap=%.3g", worst)};
}

Outcome linear_algebra() {
  std::mt19937_64 gen(111);
  std::uniform_real_distribution<double> angle(1e-3, kPi / 2);
  double min_eig = 1, completeness = 0;
  for (int t = 0; t < 20; ++t) {
    const auto povm = qsim::usd_povm(angle(gen));
    qsim::Matrix sum = qsim::Matrix::Zero(2, 2);
    for (std::size_t i = 0; i < povm.size(); ++i) {
      min_eig = std::min(min_eig, qsim::min_eigenvalue(povm.effect(i)));
      sum += povm.effect(i);
    }
    completeness = std::max(completeness, testing::max_abs(sum - qsim::Matrix::Identity(2, 2)));
  }
  bool fidelity_ok = true;
  double roundtrip = 0;
  for (int t = 0; t < 50; ++t) {
    const auto a = testing::random_density(2, 1 + t % 4, gen);
    const auto b = testing::random_density(2, 1 + (t / 4) % 4, gen);
    const double fab = qsim::fidelity(a, b), fba = qsim::fidelity(b, a);
    fidelity_ok = fidelity_ok && fab >= -1e-12 && fab <= 1 + 1e-12 && std::abs(fab - fba) <= 1e-10 &&
                  std::abs(qsim::fidelity(a, a) - 1) <= 1e-10;
    const int keep[] = {0, 1};
    const auto back = qsim::partial_trace(qsim::purify(a), keep);
    roundtrip = std::max(roundtrip, testing::max_abs(back.entries() - a.entries()));
  }
  return {min_eig >= -1e-12 && completeness <= 1e-12 && fidelity_ok && roundtrip <= 1e-10,
          fmt("min_eig=%.3g completeness=%.3g fidelity_ok=%d purify_err=%.3g", min_eig, completeness, fidelity_ok,
              roundtrip)};
}

Outcome blinding_equivalence() {
  constexpr std::size_t kQubits = 100000;
  RngStream rng(112, 0);
  const auto blinded = bc::p4_prepare_blinded(kQubits, rng);
  const auto zero = qsim::StateVector::basis(1, 0);
  std::vector<std::uint64_t> with(8), without(8);
  for (std::size_t i = 0; i < kQubits; ++i) {
    const Bit r = rng.bit();
    const auto basis = rng.bit() ? rot::BasisChoice::b1 : rot::BasisChoice::b0;
    const auto a = bc::p4_measure_unblinded(bc::p4_encode_qubit(blinded.states[i], r), blinded.record.alphas[i], basis, rng);
    const auto b = bc::p4_measure_unblinded(bc::p4_encode_qubit(zero, r), 0.0, basis, rng);
    const std::size_t cell = r * 4U + (basis == rot::BasisChoice::b1) * 2U;
    with[cell + a.outcome] += 1;
    without[cell + b.outcome] += 1;
  }
  const auto chi = stats::chi_square_homogeneity(with, without);
  return {chi.p_value > 0.01, fmt("chi2=%.3f df=%.0f p=%.4f", chi.statistic, chi.degrees_of_freedom, chi.p_value)};
}

Outcome omission() {
  int broken = 0, detected = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    RngStream a(113, t), b(114, t);
    broken += attacks::omission_attack_p5(4, 8, false, a).binding_broken();
    const auto o = attacks::omission_attack_p5(4, 8, true, b);
    detected += o.detected_at_commit && !o.binding_broken();
  }
  return {broken == 100 && detected == 100, fmt("broken_imperfect=%d/100 rejected_perfect=%d/100", broken, detected)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qot_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string(QOT_CLI_PATH) + " ot12 --n 128 --trials 2000 --seed 115 --out ";
  const fs::path a = dir / "a.csv", b = dir / "b.csv";
  const int ra = std::system((cmd + a.string() + " > /dev/null").c_str());
  const int rb = std::system((cmd + b.string() + " > /dev/null").c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string sa = slurp(a), sb = slurp(b);
  fs::remove_all(dir);
  return {ra == 0 && rb == 0 && !sa.empty() && sa == sb, fmt("bytes=%zu identical=%d", sa.size(), sa == sb)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"honest conclusive rate", honest_rate},
      {"usd conclusive rate", usd_rate},
      {"bell-pair encoding identity", encoding_identity},
      {"probe attack expansion", probe_expansion},
      {"ot correctness and abort rate", ot_correctness},
      {"security conditions", security_conditions},
      {"commitment round trips", commitment_round_trips},
      {"no-go attack", nogo},
      {"povm and linear algebra", linear_algebra},
      {"blinding equivalence", blinding_equivalence},
      {"omission attack", omission},
      {"cli determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
