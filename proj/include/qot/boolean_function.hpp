#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qot::bc {

using Bit = std::uint8_t;

struct BooleanFunctionSpec {
  std::string name;
  std::size_t arity = 0;
  std::function<Bit(std::span<const Bit>)> evaluate;
  std::size_t declared_order = 0;  // claimed correlation-immunity order
};

// F(r) = r_1 xor ... xor r_n, correlation immune of order n - 1.
BooleanFunctionSpec parity_function(std::size_t n);

// Looks a function up by name ("parity").
BooleanFunctionSpec function_by_name(const std::string& name, std::size_t n);

inline constexpr std::size_t kMaxTruthTableArity = 20;

// Input x maps to bits (x >> (n-1-j)) & 1 for j = 0..n-1.
std::vector<Bit> truth_table(const BooleanFunctionSpec& f);

// W(w) = sum_x (-1)^(f(x) xor w.x), by the in-place fast transform.
std::vector<std::int64_t> walsh_spectrum(const BooleanFunctionSpec& f);

// Largest t such that W(w) = 0 for every w of weight 1..t.
std::size_t correlation_immunity_order(const BooleanFunctionSpec& f);

bool is_surjective(const BooleanFunctionSpec& f);

}  // namespace qot::bc
