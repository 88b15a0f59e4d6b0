#include "qot/boolean_function.hpp"

#include <bit>
#include <stdexcept>

namespace qot::bc {

BooleanFunctionSpec parity_function(std::size_t n) {
  if (n < 2) throw std::domain_error("parity_function: arity must be at least 2");
  BooleanFunctionSpec f;
  f.name = "parity";
  f.arity = n;
  f.declared_order = n - 1;
  f.evaluate = [](std::span<const Bit> r) {
    Bit acc = 0;
    for (Bit b : r) acc ^= b;
    return acc;
  };
  return f;
}

BooleanFunctionSpec function_by_name(const std::string& name, std::size_t n) {
  if (name == "parity") return parity_function(n);
  throw std::invalid_argument("unknown Boolean function: " + name);
}

std::vector<Bit> truth_table(const BooleanFunctionSpec& f) {
  if (f.arity == 0 || f.arity > kMaxTruthTableArity) throw std::domain_error("truth_table: arity out of range");
  const std::size_t size = std::size_t{1} << f.arity;
  std::vector<Bit> table(size);
  std::vector<Bit> input(f.arity);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t j = 0; j < f.arity; ++j) input[j] = static_cast<Bit>((x >> (f.arity - 1 - j)) & 1U);
    table[x] = f.evaluate(input) & 1U;
  }
  return table;
}

std::vector<std::int64_t> walsh_spectrum(const BooleanFunctionSpec& f) {
  const std::vector<Bit> table = truth_table(f);
  std::vector<std::int64_t> w(table.size());
  for (std::size_t x = 0; x < table.size(); ++x) w[x] = table[x] ? -1 : 1;
  for (std::size_t half = 1; half < w.size(); half <<= 1) {
    for (std::size_t base = 0; base < w.size(); base += 2 * half) {
      for (std::size_t i = base; i < base + half; ++i) {
        const std::int64_t a = w[i];
        const std::int64_t b = w[i + half];
        w[i] = a + b;
        w[i + half] = a - b;
      }
    }
  }
  return w;
}

std::size_t correlation_immunity_order(const BooleanFunctionSpec& f) {
  const auto w = walsh_spectrum(f);
  std::size_t order = f.arity;
  for (std::size_t mask = 1; mask < w.size(); ++mask) {
    if (w[mask] != 0) {
      const auto weight = static_cast<std::size_t>(std::popcount(mask));
      if (weight - 1 < order) order = weight - 1;
    }
  }
  return order;
}

bool is_surjective(const BooleanFunctionSpec& f) {
  const auto table = truth_table(f);
  bool zero = false, one = false;
  for (Bit b : table) (b ? one : zero) = true;
  return zero && one;
}

}  // namespace qot::bc
