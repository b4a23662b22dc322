#include "mediamod/rng.hpp"

namespace mediamod {
namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose) {
  auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffu); };
  auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(index), hi(index), static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose)
    : engine_(seeded_engine(seed, index, purpose)) {}

}  // namespace mediamod
