#include "qot/report.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include <json.hpp>

#include "qot/stats.hpp"

namespace qot::report {

ResultRow proportion_row(std::string experiment, std::string params, std::string metric, std::uint64_t successes,
                         std::uint64_t trials, double z) {
  const auto ci = stats::wilson_interval(successes, trials, z);
  const double value = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  return {std::move(experiment), std::move(params), std::move(metric), value, ci.low, ci.high, trials};
}

ResultRow exact_row(std::string experiment, std::string params, std::string metric, double value,
                    std::uint64_t trials) {
  return {std::move(experiment), std::move(params), std::move(metric), value, value, value, trials};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.experiment, a.params, a.metric) < std::tie(b.experiment, b.params, b.metric);
  });
}

// params holds ';' separators only, but quote defensively.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void write_csv(std::ostream& out, std::vector<ResultRow> rows) {
  sort_rows(rows);
  out << "experiment,params,metric,value,ci_low,ci_high,trials\n";
  for (const auto& r : rows) {
    out << csv_field(r.experiment) << ',' << csv_field(r.params) << ',' << csv_field(r.metric) << ','
        << format_number(r.value) << ',' << format_number(r.ci_low) << ',' << format_number(r.ci_high) << ','
        << r.trials << '\n';
  }
}

void write_json(std::ostream& out, std::vector<ResultRow> rows) {
  sort_rows(rows);
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    a.push_back({{"experiment", r.experiment},
                 {"params", r.params},
                 {"metric", r.metric},
                 {"value", r.value},
                 {"ci_low", r.ci_low},
                 {"ci_high", r.ci_high},
                 {"trials", r.trials}});
  }
  out << a.dump(2) << '\n';
}

void write_curve_csv(std::ostream& out, std::span<const ot12::CurveRow> rows) {
  out << "n,k,p1,p2\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << format_number(r.p1) << ',' << format_number(r.p2) << '\n';
  }
}

}  // namespace qot::report
