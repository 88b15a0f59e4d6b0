#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qot/ot12.hpp"

namespace qot::report {

struct ResultRow {
  std::string experiment;
  std::string params;  // "key=value;key=value"
  std::string metric;
  double value = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t trials = 0;
};

// Row whose interval is the Wilson score interval of successes / trials.
ResultRow proportion_row(std::string experiment, std::string params, std::string metric, std::uint64_t successes,
                         std::uint64_t trials, double z = 3.0);
// Exact quantity: degenerate interval.
ResultRow exact_row(std::string experiment, std::string params, std::string metric, double value,
                    std::uint64_t trials = 0);

std::string format_number(double v);  // 12 significant digits

// Rows are sorted by (experiment, params, metric) before writing.
void write_csv(std::ostream& out, std::vector<ResultRow> rows);
void write_json(std::ostream& out, std::vector<ResultRow> rows);
void write_curve_csv(std::ostream& out, std::span<const ot12::CurveRow> rows);

}  // namespace qot::report
