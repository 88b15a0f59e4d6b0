#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace qot {

// Deterministic random stream addressed by (master seed, stream index).
// Every Monte-Carlo trial owns one stream, so results do not depend on
// how trials are scheduled across threads.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  // Uniform on [0, 1).
  double uniform();
  // Uniform on [0, 2*pi).
  double angle();
  std::uint8_t bit();
  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::size_t below(std::size_t bound);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

// Seed mixing used to derive per-stream engine seeds.
std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t stream_index);

inline constexpr std::uint64_t kDefaultSeed = 20130417ULL;

}  // namespace qot
