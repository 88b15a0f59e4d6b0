#include "qot/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace qot::io {

namespace {

using rot::Bit;

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw std::runtime_error(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <class T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad field '") + name + "': " + e.what());
  }
}

Bit as_bit(const Json& x, const char* name) {
  if (!x.is_number_unsigned() || x.get<unsigned>() > 1) throw std::runtime_error(std::string("bad field '") + name + "': expected 0 or 1");
  return static_cast<Bit>(x.get<unsigned>());
}

Bit get_bit(const Json& j, const char* name) { return as_bit(field(j, name), name); }

// Library and range errors from a document become runtime_error.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  } catch (const std::logic_error& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  }
}

Json bits(const std::vector<Bit>& v) {
  Json a = Json::array();
  for (Bit b : v) a.push_back(static_cast<int>(b));
  return a;
}

std::vector<Bit> bits_from(const Json& j, const char* name) {
  std::vector<Bit> out;
  const Json& a = field(j, name);
  if (!a.is_array()) throw std::runtime_error(std::string("bad field '") + name + "': expected an array");
  for (const auto& x : a) out.push_back(as_bit(x, name));
  return out;
}

std::vector<std::vector<Bit>> strings_from(const Json& j) {
  std::vector<std::vector<Bit>> out;
  for (const auto& r : field(j, "strings")) {
    out.emplace_back();
    if (!r.is_array()) throw std::runtime_error("bad field 'strings': expected arrays");
    for (const auto& x : r) out.back().push_back(as_bit(x, "strings"));
  }
  return out;
}

Json conclusive_json(const std::vector<rot::ConclusiveBit>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(Json{{"pos", c.position}, {"val", static_cast<int>(c.value)}});
  return a;
}

std::vector<rot::ConclusiveBit> conclusive_from(const Json& j, const char* name) {
  std::vector<rot::ConclusiveBit> out;
  for (const auto& c : field(j, name)) out.push_back({get<std::size_t>(c, "pos"), get_bit(c, "val")});
  return out;
}

Json state_json(const qsim::StateVector& s) {
  Json a = Json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) a.push_back(Json::array({s[i].real(), s[i].imag()}));
  return a;
}

qsim::StateVector state_from(const Json& j) {
  qsim::Vector amps(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    amps(static_cast<Eigen::Index>(i)) = {j[i].at(0).get<double>(), j[i].at(1).get<double>()};
  }
  int q = 0;
  while ((std::size_t{1} << q) < j.size()) ++q;
  if (j.empty() || (std::size_t{1} << q) != j.size()) throw std::runtime_error("bad field 'qubits': length is not a power of two");
  return qsim::StateVector(q, amps);
}

Json inconsistency_json(const bc::Inconsistency& x) {
  Json j{{"round", x.round}, {"field", x.field}};
  j["position"] = x.position ? Json(*x.position) : Json(nullptr);
  j["detail"] = x.detail;
  return j;
}

}  // namespace

Json to_json(const rot::RotConfig& config, const rot::RotRun& run) {
  Json j;
  j["n"] = config.n;
  j["theta"] = config.theta;
  j["r"] = bits(run.sender.bits);
  j["strategy"] = std::string(rot::to_string(run.receiver.strategy));
  Json choices = Json::array();
  for (auto b : run.receiver.basis_choices) choices.push_back(std::string(rot::to_string(b)));
  j["basis_choices"] = std::move(choices);
  j["conclusive"] = conclusive_json(run.receiver.conclusive);
  return j;
}

rot::RotRun rot_run_from_json(const Json& j) {
  return guarded("transcript", [&] {
    rot::RotRun run;
    run.sender.bits = bits_from(j, "r");
    run.receiver.strategy = rot::parse_strategy(get<std::string>(j, "strategy"));
    for (const auto& b : field(j, "basis_choices")) run.receiver.basis_choices.push_back(rot::parse_basis(b.get<std::string>()));
    run.receiver.conclusive = conclusive_from(j, "conclusive");
    return run;
  });
}

Json to_json(const bc::SenderState& s) {
  Json j;
  j["protocol"] = std::string(bc::to_string(s.protocol));
  j["bit"] = static_cast<int>(s.bit);
  j["n"] = s.n;
  Json rounds = Json::array();
  for (const auto& r : s.rounds) {
    rounds.push_back(Json{{"b0", static_cast<int>(r.b0)},
                          {"b1", static_cast<int>(r.b1)},
                          {"r", bits(r.r)},
                          {"X", r.X},
                          {"Y", r.Y},
                          {"c0", static_cast<int>(r.c0)},
                          {"c1", static_cast<int>(r.c1)},
                          {"attempts", r.attempts}});
  }
  j["rounds"] = std::move(rounds);
  return j;
}

bc::SenderState sender_state_from_json(const Json& j) {
  return guarded("sender state", [&] {
    bc::SenderState s;
    s.protocol = bc::parse_protocol(get<std::string>(j, "protocol"));
    s.bit = get_bit(j, "bit");
    s.n = get<std::size_t>(j, "n");
    for (const auto& r : field(j, "rounds")) {
      bc::RoundSecret x;
      x.b0 = get_bit(r, "b0");
      x.b1 = get_bit(r, "b1");
      x.r = bits_from(r, "r");
      x.X = get<std::vector<std::size_t>>(r, "X");
      x.Y = get<std::vector<std::size_t>>(r, "Y");
      x.c0 = get_bit(r, "c0");
      x.c1 = get_bit(r, "c1");
      x.attempts = get<std::uint32_t>(r, "attempts");
      s.rounds.push_back(std::move(x));
    }
    return s;
  });
}

Json to_json(const bc::ReceiverState& s) {
  Json j;
  j["protocol"] = std::string(bc::to_string(s.protocol));
  j["n"] = s.n;
  j["k"] = s.k;
  Json rounds = Json::array();
  for (const auto& r : s.rounds) {
    rounds.push_back(Json{{"conclusive", conclusive_json(r.conclusive)},
                          {"I", r.I},
                          {"J", r.J},
                          {"m", static_cast<int>(r.m)},
                          {"X", r.X},
                          {"Y", r.Y},
                          {"c0", static_cast<int>(r.c0)},
                          {"c1", static_cast<int>(r.c1)},
                          {"share", static_cast<int>(r.share)}});
  }
  j["rounds"] = std::move(rounds);
  return j;
}

bc::ReceiverState receiver_state_from_json(const Json& j) {
  return guarded("receiver state", [&] {
    bc::ReceiverState s;
    s.protocol = bc::parse_protocol(get<std::string>(j, "protocol"));
    s.n = get<std::size_t>(j, "n");
    s.k = get<std::size_t>(j, "k");
    for (const auto& r : field(j, "rounds")) {
      bc::RoundView v;
      v.conclusive = conclusive_from(r, "conclusive");
      v.I = get<std::vector<std::size_t>>(r, "I");
      v.J = get<std::vector<std::size_t>>(r, "J");
      v.m = get_bit(r, "m");
      v.X = get<std::vector<std::size_t>>(r, "X");
      v.Y = get<std::vector<std::size_t>>(r, "Y");
      v.c0 = get_bit(r, "c0");
      v.c1 = get_bit(r, "c1");
      v.share = get_bit(r, "share");
      for (std::size_t p : v.X) {
        if (p >= s.n) throw std::runtime_error("receiver state: position out of range");
      }
      for (std::size_t p : v.Y) {
        if (p >= s.n) throw std::runtime_error("receiver state: position out of range");
      }
      s.rounds.push_back(std::move(v));
    }
    return s;
  });
}

Json to_json(const bc::OpenMessage& s) {
  Json j;
  j["protocol"] = std::string(bc::to_string(s.protocol));
  Json rounds = Json::array();
  for (const auto& r : s.rounds) {
    rounds.push_back(
        Json{{"b0", static_cast<int>(r.b0)}, {"b1", static_cast<int>(r.b1)}, {"revealed", conclusive_json(r.revealed)}});
  }
  j["rounds"] = std::move(rounds);
  return j;
}

bc::OpenMessage open_message_from_json(const Json& j) {
  return guarded("open message", [&] {
    bc::OpenMessage s;
    s.protocol = bc::parse_protocol(get<std::string>(j, "protocol"));
    for (const auto& r : field(j, "rounds")) {
      s.rounds.push_back({get_bit(r, "b0"), get_bit(r, "b1"), conclusive_from(r, "revealed")});
    }
    return s;
  });
}

Json to_json(const bc::P5SenderState& s) {
  Json strings = Json::array();
  for (const auto& r : s.strings) strings.push_back(bits(r));
  return Json{{"protocol", "p5"}, {"bit", static_cast<int>(s.bit)}, {"n", s.n}, {"m", s.m}, {"strings", strings}};
}

bc::P5SenderState p5_sender_from_json(const Json& j) {
  return guarded("p5 sender state", [&] {
    bc::P5SenderState s;
    s.bit = get_bit(j, "bit");
    s.n = get<std::size_t>(j, "n");
    s.m = get<std::size_t>(j, "m");
    s.strings = strings_from(j);
    return s;
  });
}

Json to_json(const bc::P5ReceiverState& s) {
  Json j;
  j["protocol"] = "p5";
  j["n"] = s.n;
  j["m"] = s.m;
  j["function"] = s.function_name;
  j["alphas"] = s.blinding.alphas;
  j["measure_at_commit"] = s.measure_at_commit;
  j["perfect_detectors"] = s.perfect_detectors;
  Json qubits = Json::array();
  for (const auto& q : s.qubits) qubits.push_back(q ? state_json(*q) : Json(nullptr));
  j["qubits"] = std::move(qubits);
  Json meas = Json::array();
  for (const auto& m : s.measurements) {
    meas.push_back(m ? Json{{"basis", std::string(rot::to_string(m->basis))}, {"outcome", m->outcome}} : Json(nullptr));
  }
  j["measurements"] = std::move(meas);
  return j;
}

bc::P5ReceiverState p5_receiver_from_json(const Json& j) {
  return guarded("p5 receiver state", [&] {
    bc::P5ReceiverState s;
    s.n = get<std::size_t>(j, "n");
    s.m = get<std::size_t>(j, "m");
    s.function_name = get<std::string>(j, "function");
    s.blinding.alphas = get<std::vector<double>>(j, "alphas");
    s.measure_at_commit = get<bool>(j, "measure_at_commit");
    s.perfect_detectors = get<bool>(j, "perfect_detectors");
    for (const auto& q : field(j, "qubits")) {
      s.qubits.push_back(q.is_null() ? std::nullopt : std::optional<qsim::StateVector>(state_from(q)));
    }
    for (const auto& m : field(j, "measurements")) {
      if (m.is_null()) {
        s.measurements.emplace_back();
      } else {
        s.measurements.push_back(bc::QubitMeasurement{rot::parse_basis(get<std::string>(m, "basis")),
                                                      get<std::size_t>(m, "outcome")});
      }
    }
    if (s.blinding.alphas.size() != s.n * s.m) throw std::runtime_error("p5 receiver: alphas length mismatch");
    return s;
  });
}

Json to_json(const bc::P5OpenMessage& s) {
  Json strings = Json::array();
  for (const auto& r : s.strings) strings.push_back(bits(r));
  return Json{{"protocol", "p5"}, {"bit", static_cast<int>(s.bit)}, {"strings", strings}};
}

bc::P5OpenMessage p5_open_from_json(const Json& j) {
  return guarded("p5 open message", [&] {
    bc::P5OpenMessage s;
    s.bit = get_bit(j, "bit");
    s.strings = strings_from(j);
    return s;
  });
}

Json to_json(const bc::VerifyResult& r) {
  Json j{{"accepted", r.accepted}};
  j["bit"] = r.recovered_bit ? Json(static_cast<int>(*r.recovered_bit)) : Json(nullptr);
  j["inconsistency"] = r.first_inconsistency ? inconsistency_json(*r.first_inconsistency) : Json(nullptr);
  return j;
}

Json to_json(const attacks::CheatReport& r) {
  return Json{{"fidelity", r.fidelity},
              {"achieved_overlap", r.achieved_overlap},
              {"detection_probability", r.detection_probability}};
}

Json to_json(const attacks::ProbeAttackReport& r) {
  return Json{{"n", r.n},
              {"trials", r.trials},
              {"qubits", r.qubits},
              {"detections", r.detections},
              {"successful_runs", r.successful_runs},
              {"per_qubit_detection", r.per_qubit_detection},
              {"detection_ci", Json::array({r.detection_ci_low, r.detection_ci_high})},
              {"run_success", r.run_success},
              {"success_ci", Json::array({r.success_ci_low, r.success_ci_high})}};
}

Json to_json(const attacks::OmissionOutcome& r) {
  return Json{{"detected_at_commit", r.detected_at_commit},
              {"open_zero_accepted", r.open_zero_accepted},
              {"open_one_accepted", r.open_one_accepted},
              {"binding_broken", r.binding_broken()},
              {"withheld", r.withheld}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace qot::io
