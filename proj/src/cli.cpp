#include "qot/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qot/attacks.hpp"
#include "qot/bitcommit.hpp"
#include "qot/boolean_function.hpp"
#include "qot/ot12.hpp"
#include "qot/report.hpp"
#include "qot/rot.hpp"
#include "qot/serialize.hpp"

#ifdef QOT_HAVE_OPENMP
#include <omp.h>
#endif

namespace qot::cli {

namespace {

namespace fs = std::filesystem;
using report::ResultRow;
using rot::Bit;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::size_t n = 0;
  std::size_t l = 4;
  std::size_t m = 8;
  std::uint64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  double theta = std::numbers::pi / 4;
  double alpha = ot12::kDefaultAlpha;
  std::string protocol = "p2bc";
  std::string attack;
  std::string strategy;
  std::string out;
  std::string format = "csv";
  std::string transcript;
  unsigned bit = 0;
  double blind_angle = 0;
  bool perfect_detectors = false;
  bool measure_at_commit = false;
  bool check = false;
  bool serial = false;
  int threads = 0;

  // Set when the flag was given explicitly.
  bool has_n = false;
  bool has_trials = false;
  bool has_blind_angle = false;

  Execution exec() const { return serial ? Execution::serial : Execution::parallel; }
  std::size_t n_or(std::size_t fallback) const { return has_n ? n : fallback; }
  std::uint64_t trials_or(std::uint64_t fallback) const { return has_trials ? trials : fallback; }
};

class Params {
 public:
  template <class T>
  Params& add(const char* key, const T& value) {
    if (!text_.empty()) text_ += ';';
    std::ostringstream s;
    if constexpr (std::is_floating_point_v<T>) {
      s << report::format_number(value);
    } else {
      s << value;
    }
    text_ += std::string(key) + '=' + s.str();
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

struct Outcome {
  std::vector<ResultRow> rows;
  bool check_passed = true;
};

bool covers(const ResultRow& r, double expected) { return r.ci_low <= expected && expected <= r.ci_high; }

void require_positive(std::uint64_t v, const char* name) {
  if (v == 0) throw UsageError(std::string(name) + " must be positive");
}

void emit(const Config& c, const std::vector<ResultRow>& rows, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw std::runtime_error("cannot write " + c.out);
    sink = &file;
  }
  if (c.format == "json") {
    report::write_json(*sink, rows);
  } else {
    report::write_csv(*sink, rows);
  }
}

std::vector<rot::ReceiverStrategy> strategies(const Config& c) {
  if (c.strategy.empty()) return {rot::ReceiverStrategy::honest, rot::ReceiverStrategy::usd};
  return {rot::parse_strategy(c.strategy)};
}

Outcome cmd_rot(const Config& c) {
  const std::size_t n = c.n_or(1000);
  const std::uint64_t trials = c.trials_or(1000);
  require_positive(n, "--n");
  require_positive(trials, "--trials");
  const rot::RotConfig config{n, c.theta};
  config.validate();

  if (!c.transcript.empty()) {
    RngStream rng(c.seed, 0);
    const rot::RotRun run = rot::run_rot(config, strategies(c).front(), rng);
    io::write_json_file(c.transcript, io::to_json(config, run));
  }

  Outcome o;
  for (auto s : strategies(c)) {
    const rot::RateTally t = rot::rate_campaign(config, s, trials, c.seed, c.exec());
    const std::string params =
        Params().add("n", n).add("trials", trials).add("theta", c.theta).add("strategy", rot::to_string(s)).add("seed", c.seed).str();
    auto rate = report::proportion_row("rot", params, "conclusive_rate", t.conclusive, t.qubits);
    auto errors = report::proportion_row("rot", params, "conclusive_error_rate", t.errors, t.conclusive);
    const double expected = s == rot::ReceiverStrategy::honest ? config.honest_rate() : config.usd_rate();
    o.check_passed = o.check_passed && covers(rate, expected) && t.errors == 0;
    o.rows.push_back(rate);
    o.rows.push_back(errors);
    o.rows.push_back(report::exact_row("rot", params, "analytic_rate", expected));
  }
  return o;
}

Outcome cmd_ot12(const Config& c) {
  const std::size_t n = c.n_or(256);
  const std::uint64_t trials = c.trials_or(1000);
  require_positive(n, "--n");
  require_positive(trials, "--trials");
  const std::size_t k = ot12::k_of(n, c.alpha);
  if (k < 1 || 2 * k > n) throw UsageError("--n too small for the chosen --alpha");

  Outcome o;
  const auto p1 = ot12::p1_exact(n, c.alpha);
  const auto p2 = ot12::p2_exact(n, c.alpha);
  for (auto s : strategies(c)) {
    const ot12::OtTally t = ot12::ot_campaign(n, s, trials, c.seed, c.exec(), c.alpha);
    const std::string params = Params()
                                   .add("n", n)
                                   .add("k", k)
                                   .add("alpha", c.alpha)
                                   .add("trials", trials)
                                   .add("strategy", rot::to_string(s))
                                   .add("seed", c.seed)
                                   .str();
    const std::uint64_t completed = t.runs - t.aborted;
    auto abort = report::proportion_row("ot12", params, "abort_rate", t.aborted, t.runs);
    auto correct = report::proportion_row("ot12", params, "correct_fraction", t.correct, completed);
    auto both = report::proportion_row("ot12", params, "learned_both_rate", t.learned_both, t.runs);
    o.rows.push_back(abort);
    o.rows.push_back(correct);
    o.rows.push_back(both);
    o.rows.push_back(report::proportion_row("ot12", params, "other_mask_ones", t.other_mask_ones, completed));
    if (s == rot::ReceiverStrategy::honest) {
      o.check_passed = o.check_passed && covers(abort, p1.complement) && t.correct == completed && t.learned_both == 0;
    } else {
      o.check_passed = o.check_passed && covers(both, p2.value);
    }
  }
  const std::string params = Params().add("n", n).add("k", k).add("alpha", c.alpha).str();
  o.rows.push_back(report::exact_row("ot12", params, "p1_exact", p1.value));
  o.rows.push_back(report::exact_row("ot12", params, "p1_complement_exact", p1.complement));
  o.rows.push_back(report::exact_row("ot12", params, "p2_exact", p2.value));
  return o;
}

int cmd_curve(const Config& c, std::ostream& out) {
  const std::vector<std::size_t> ns = c.has_n ? std::vector<std::size_t>{c.n}
                                              : std::vector<std::size_t>{64, 128, 256, 512, 1024};
  for (std::size_t n : ns) {
    const std::size_t k = ot12::k_of(n, c.alpha);
    if (k < 1 || 2 * k > n) throw UsageError("--n too small for the chosen --alpha");
  }
  const auto rows = ot12::security_curve(ns, c.alpha);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw std::runtime_error("cannot write " + c.out);
    sink = &file;
  }
  if (c.format == "json") {
    io::Json a = io::Json::array();
    for (const auto& r : rows) a.push_back({{"n", r.n}, {"k", r.k}, {"p1", r.p1}, {"p2", r.p2}});
    *sink << a.dump(2) << '\n';
  } else {
    report::write_curve_csv(*sink, rows);
  }
  bool ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i) ok = ok && rows[i].p1 > rows[i - 1].p1 && rows[i].p2 < rows[i - 1].p2;
  return c.check && !ok ? kExitCheckFailed : kExitOk;
}

fs::path require_dir(const Config& c) {
  if (c.out.empty()) throw UsageError("--out DIR is required");
  return fs::path(c.out);
}

bool is_p5_document(const io::Json& j) { return j.is_object() && j.value("protocol", "") == "p5"; }

Outcome cmd_commit(const Config& c) {
  const fs::path dir = require_dir(c);
  if (c.bit > 1) throw UsageError("--bit must be 0 or 1");
  const bc::ProtocolId protocol = bc::parse_protocol(c.protocol);
  fs::create_directories(dir);
  RngStream rng(c.seed, 0);
  Outcome o;
  Params params;
  params.add("protocol", c.protocol).add("seed", c.seed);
  if (protocol == bc::ProtocolId::p5) {
    const std::size_t n = c.n_or(4);
    require_positive(c.m, "--m");
    if (n < 2) throw UsageError("--n must be at least 2 for p5");
    const auto f = bc::function_by_name("parity", n);
    bc::P5Options options;
    options.perfect_detectors = c.perfect_detectors;
    options.measure_at_commit = c.measure_at_commit;
    const bc::P5Commitment commitment = bc::p5_commit(static_cast<Bit>(c.bit), c.m, n, f, rng, options);
    io::write_json_file(dir / "sender.json", io::to_json(commitment.sender));
    io::write_json_file(dir / "receiver.json", io::to_json(commitment.receiver));
    params.add("n", n).add("m", c.m);
    o.rows.push_back(report::exact_row("commit", params.str(), "accepted_at_commit", commitment.commit_rejection ? 0 : 1));
    o.check_passed = !commitment.commit_rejection;
  } else {
    const std::size_t n = c.n_or(64);
    require_positive(c.l, "--l");
    const bc::Commitment commitment = bc::bc_commit_over_ot(static_cast<Bit>(c.bit), c.l, n, protocol, rng);
    io::write_json_file(dir / "sender.json", io::to_json(commitment.sender));
    io::write_json_file(dir / "receiver.json", io::to_json(commitment.receiver));
    std::uint64_t attempts = 0;
    for (const auto& r : commitment.sender.rounds) attempts += r.attempts;
    params.add("n", n).add("l", c.l);
    o.rows.push_back(report::exact_row("commit", params.str(), "ot_attempts", static_cast<double>(attempts)));
  }
  return o;
}

Outcome cmd_open(const Config& c) {
  const fs::path dir = require_dir(c);
  const io::Json sender = io::read_json_file(dir / "sender.json");
  if (is_p5_document(sender)) {
    io::write_json_file(dir / "open.json", io::to_json(bc::p5_open(io::p5_sender_from_json(sender))));
  } else {
    io::write_json_file(dir / "open.json", io::to_json(bc::bc_open(io::sender_state_from_json(sender))));
  }
  Outcome o;
  o.rows.push_back(report::exact_row("open", Params().add("dir", dir.filename().string()).str(), "written", 1));
  return o;
}

Outcome cmd_verify(const Config& c, std::ostream& err) {
  const fs::path dir = require_dir(c);
  const io::Json receiver = io::read_json_file(dir / "receiver.json");
  const io::Json open = io::read_json_file(dir / "open.json");
  bc::VerifyResult result;
  std::string protocol;
  if (is_p5_document(receiver)) {
    protocol = "p5";
    if (!is_p5_document(open)) {
      result = bc::VerifyResult::reject({0, "protocol", std::nullopt, "open message is for another protocol"});
    } else {
      const bc::P5ReceiverState state = io::p5_receiver_from_json(receiver);
      const auto f = bc::function_by_name(state.function_name, state.n);
      RngStream rng(c.seed, 1);
      result = bc::p5_open_verify(state, io::p5_open_from_json(open), f, rng);
    }
  } else {
    const bc::ReceiverState state = io::receiver_state_from_json(receiver);
    protocol = std::string(bc::to_string(state.protocol));
    if (is_p5_document(open)) {
      result = bc::VerifyResult::reject({0, "protocol", std::nullopt, "open message is for another protocol"});
    } else {
      result = bc::bc_verify(state, io::open_message_from_json(open));
    }
  }
  if (!result.accepted) err << "rejected: " << result.first_inconsistency->describe() << '\n';
  Outcome o;
  const std::string params = Params().add("protocol", protocol).str();
  o.rows.push_back(report::exact_row("verify", params, "accepted", result.accepted ? 1 : 0));
  if (result.recovered_bit) o.rows.push_back(report::exact_row("verify", params, "bit", *result.recovered_bit));
  o.check_passed = result.accepted;
  return o;
}

Outcome attack_usd(const Config& c) {
  Config usd = c;
  usd.strategy = "usd";
  Outcome o = cmd_rot(usd);
  for (auto& r : o.rows) r.experiment = "attack-usd";
  Outcome ot = cmd_ot12(usd);
  for (auto& r : ot.rows) r.experiment = "attack-usd";
  o.rows.insert(o.rows.end(), ot.rows.begin(), ot.rows.end());
  o.check_passed = o.check_passed && ot.check_passed;
  return o;
}

Outcome attack_nogo(const Config& c) {
  attacks::NoGoInstance inst;
  inst.two_k = c.n_or(4);
  inst.theta = c.theta;
  try {
    inst.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const attacks::CheatReport rep = attacks::nogo_cheat_report(inst);
  const std::string params = Params().add("two_k", inst.two_k).add("theta", inst.theta).str();
  Outcome o;
  o.rows.push_back(report::exact_row("attack-nogo", params, "fidelity", rep.fidelity));
  o.rows.push_back(report::exact_row("attack-nogo", params, "achieved_overlap", rep.achieved_overlap));
  o.rows.push_back(report::exact_row("attack-nogo", params, "detection_probability", rep.detection_probability));
  o.check_passed = std::abs(rep.fidelity - rep.achieved_overlap) <= 1e-8;
  return o;
}

void probe_rows(const std::string& experiment, const std::string& params, const attacks::ProbeAttackReport& r,
                Outcome& o) {
  o.rows.push_back({experiment, params, "per_qubit_detection", r.per_qubit_detection, r.detection_ci_low,
                    r.detection_ci_high, r.qubits});
  o.rows.push_back({experiment, params, "run_success", r.run_success, r.success_ci_low, r.success_ci_high, r.trials});
}

Outcome attack_probe_p3(const Config& c) {
  const std::size_t n = c.n_or(8);
  const std::uint64_t trials = c.trials_or(100000);
  require_positive(n, "--n");
  require_positive(trials, "--trials");
  const auto rep = attacks::probe_attack_p3(n, trials, c.seed, c.exec());
  Outcome o;
  probe_rows("attack-probe-p3", Params().add("n", n).add("trials", trials).add("seed", c.seed).str(), rep, o);
  const double success = std::pow(0.5, static_cast<double>(n));
  o.check_passed = covers(o.rows[0], 0.5) && covers(o.rows[1], success);
  return o;
}

Outcome attack_probe_p4(const Config& c) {
  const std::size_t n = c.n_or(8);
  const std::uint64_t trials = c.trials_or(20000);
  require_positive(n, "--n");
  require_positive(trials, "--trials");
  attacks::ProbeP4Options options;
  if (c.has_blind_angle) options.forced_alpha = c.blind_angle;
  const auto rep = attacks::probe_attack_p4(n, trials, c.seed, options, c.exec());
  Params params;
  params.add("n", n).add("trials", trials).add("seed", c.seed);
  if (c.has_blind_angle) params.add("blind_angle", c.blind_angle);
  Outcome o;
  probe_rows("attack-probe-p4", params.str(), rep, o);
  const double s = c.has_blind_angle ? std::sin(2 * c.blind_angle) : 0.0;
  const double expected = c.has_blind_angle ? s * s / 4 : 0.125;
  o.rows.push_back(report::exact_row("attack-probe-p4", params.str(), "analytic_detection", expected));
  o.check_passed = covers(o.rows[0], expected);
  return o;
}

Outcome attack_omission(const Config& c) {
  const std::size_t n = c.n_or(4);
  const std::uint64_t trials = c.trials_or(100);
  require_positive(trials, "--trials");
  require_positive(c.m, "--m");
  if (n < 2) throw UsageError("--n must be at least 2");
  struct Tally {
    std::uint64_t detected = 0;
    std::uint64_t broken = 0;
    Tally& operator+=(const Tally& o) {
      detected += o.detected;
      broken += o.broken;
      return *this;
    }
  };
  const Tally t = run_trials<Tally>(
      c.seed, trials,
      [&](std::uint64_t, RngStream& rng, Tally& acc) {
        const auto out = attacks::omission_attack_p5(n, c.m, c.perfect_detectors, rng);
        acc.detected += out.detected_at_commit ? 1 : 0;
        acc.broken += out.binding_broken() ? 1 : 0;
      },
      c.exec());
  const std::string params = Params()
                                 .add("n", n)
                                 .add("m", c.m)
                                 .add("perfect_detectors", c.perfect_detectors ? 1 : 0)
                                 .add("trials", trials)
                                 .add("seed", c.seed)
                                 .str();
  Outcome o;
  o.rows.push_back(report::proportion_row("attack-omission", params, "detected_at_commit", t.detected, trials));
  o.rows.push_back(report::proportion_row("attack-omission", params, "binding_broken", t.broken, trials));
  o.check_passed = c.perfect_detectors ? t.detected == trials : t.broken == trials;
  return o;
}

Outcome cmd_attack(const Config& c) {
  if (c.attack == "usd") return attack_usd(c);
  if (c.attack == "nogo") return attack_nogo(c);
  if (c.attack == "probe-p3") return attack_probe_p3(c);
  if (c.attack == "probe-p4") return attack_probe_p4(c);
  if (c.attack == "omission") return attack_omission(c);
  throw UsageError("unknown --attack " + c.attack);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QOT_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("QOT_SEED must be an unsigned integer");
  }
  return kDefaultSeed;
}

void add_run_flags(CLI::App* sub, Config& c) {
  sub->add_option("--trials", c.trials, "Number of Monte-Carlo trials");
  sub->add_option("--seed", c.seed, "Master seed (default: QOT_SEED or a fixed constant)");
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--check", c.check, "Exit with status 3 unless results match analytic values");
  sub->add_flag("--serial", c.serial, "Run trials on the serial reference path");
  sub->add_option("--threads", c.threads, "OpenMP worker count")->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  try {
    c.seed = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Quantum oblivious transfer and bit commitment experiments", "qot"};
  app.require_subcommand(1);
  const auto strategy_check = CLI::IsMember({"honest", "usd"});
  const auto protocol_check = CLI::IsMember({"rot", "ot12", "p2bc", "p3", "p4", "p5"});

  auto* rot_cmd = app.add_subcommand("rot", "R-OT channel conclusive-rate campaign");
  add_run_flags(rot_cmd, c);
  rot_cmd->add_option("--n", c.n, "Qubits per run");
  rot_cmd->add_option("--theta", c.theta, "Angle between the two states");
  rot_cmd->add_option("--strategy", c.strategy, "Receiver strategy (default both)")->check(strategy_check);
  rot_cmd->add_option("--transcript", c.transcript, "Write one run's transcript as JSON");
  rot_cmd->add_option("--protocol", c.protocol, "Ignored; accepted for symmetry")->check(protocol_check);

  auto* ot_cmd = app.add_subcommand("ot12", "End-to-end 1-out-of-2 OT campaign");
  add_run_flags(ot_cmd, c);
  ot_cmd->add_option("--n", c.n, "Qubits per OT run");
  ot_cmd->add_option("--alpha", c.alpha, "Safety margin: k = floor((1/4 - alpha) n)");
  ot_cmd->add_option("--strategy", c.strategy, "Receiver strategy (default both)")->check(strategy_check);

  auto* curve_cmd = app.add_subcommand("curve", "Exact p1/p2 security curve");
  curve_cmd->add_option("--n", c.n, "Single n instead of the default list");
  curve_cmd->add_option("--alpha", c.alpha, "Safety margin");
  curve_cmd->add_option("--out", c.out, "Output file (default stdout)");
  curve_cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  curve_cmd->add_flag("--check", c.check, "Exit with status 3 unless p1 rises and p2 falls");

  auto* commit_cmd = app.add_subcommand("commit", "Commit phase: writes sender.json and receiver.json to --out DIR");
  commit_cmd->add_option("--protocol", c.protocol, "Commitment construction")
      ->check(CLI::IsMember({"p2bc", "p3", "p4", "p5"}));
  commit_cmd->add_option("--bit", c.bit, "Committed bit");
  commit_cmd->add_option("--n", c.n, "Qubits per OT round (p5: string length)");
  commit_cmd->add_option("--l", c.l, "OT rounds");
  commit_cmd->add_option("--m", c.m, "Strings (p5)");
  commit_cmd->add_option("--seed", c.seed, "Master seed");
  commit_cmd->add_option("--out", c.out, "Transcript directory")->required();
  commit_cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  commit_cmd->add_flag("--perfect-detectors", c.perfect_detectors, "Receiver registers every missing qubit (p5)");
  commit_cmd->add_flag("--measure-at-commit", c.measure_at_commit, "Receiver measures during commit (p5)");
  commit_cmd->add_flag("--check", c.check, "Exit with status 3 if the commitment is rejected");

  auto* open_cmd = app.add_subcommand("open", "Open phase: reads sender.json, writes open.json");
  open_cmd->add_option("--out", c.out, "Transcript directory")->required();
  open_cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* verify_cmd = app.add_subcommand("verify", "Verify open.json against receiver.json");
  verify_cmd->add_option("--out", c.out, "Transcript directory")->required();
  verify_cmd->add_option("--seed", c.seed, "Seed for open-time measurements (p5)");
  verify_cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  verify_cmd->add_flag("--check", c.check, "Exit with status 3 if the opening is rejected");

  auto* attack_cmd = app.add_subcommand("attack", "Attack campaigns");
  add_run_flags(attack_cmd, c);
  attack_cmd->add_option("--attack", c.attack, "Attack")
      ->required()
      ->check(CLI::IsMember({"usd", "nogo", "probe-p3", "probe-p4", "omission"}));
  attack_cmd->add_option("--n", c.n, "Qubits per run (nogo: two_k; omission: string length)");
  attack_cmd->add_option("--m", c.m, "Strings (omission)");
  attack_cmd->add_option("--theta", c.theta, "State angle (usd, nogo)");
  attack_cmd->add_option("--alpha", c.alpha, "OT safety margin (usd)");
  attack_cmd->add_option("--blind-angle", c.blind_angle, "Force the blinding angle (probe-p4)");
  attack_cmd->add_flag("--perfect-detectors", c.perfect_detectors, "Receiver registers every missing qubit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  auto given = [&](const char* name) {
    try {
      return chosen->get_option(name)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  c.has_n = given("--n");
  c.has_trials = given("--trials");
  c.has_blind_angle = given("--blind-angle");

#ifdef QOT_HAVE_OPENMP
  if (c.threads > 0) omp_set_num_threads(c.threads);
#endif

  try {
    if (!(c.theta > 0.0 && c.theta <= std::numbers::pi / 2)) throw UsageError("--theta must lie in (0, pi/2]");
    if (!(c.alpha > 0.0 && c.alpha < ot12::kHonestRate)) throw UsageError("--alpha must lie in (0, 1/4)");
    if (c.command == "curve") return cmd_curve(c, out);

    Outcome o;
    if (c.command == "rot") {
      o = cmd_rot(c);
    } else if (c.command == "ot12") {
      o = cmd_ot12(c);
    } else if (c.command == "commit") {
      o = cmd_commit(c);
    } else if (c.command == "open") {
      o = cmd_open(c);
    } else if (c.command == "verify") {
      o = cmd_verify(c, err);
    } else {
      o = cmd_attack(c);
    }
    Config sink = c;
    if (c.command == "commit" || c.command == "open" || c.command == "verify") sink.out.clear();
    emit(sink, o.rows, out);
    return c.check && !o.check_passed ? kExitCheckFailed : kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qot::cli
