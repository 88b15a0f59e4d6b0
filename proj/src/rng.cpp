#include "qot/rng.hpp"

#include <numbers>
#include <stdexcept>

namespace qot {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  return splitmix64(splitmix64(master_seed) ^ (stream_index * 0xd1b54a32d192ed03ULL + 1));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(mix_seed(master_seed, stream_index)) {}

double RngStream::uniform() {
  // 53 random mantissa bits.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::angle() { return 2.0 * std::numbers::pi * uniform(); }

std::uint8_t RngStream::bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

std::size_t RngStream::below(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("RngStream::below: bound must be positive");
  std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(engine_);
}

}  // namespace qot
