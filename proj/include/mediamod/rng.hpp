#pragma once

#include <cstdint>
#include <random>

namespace mediamod {

/// Independent sub-streams carved out of one master seed. Each simulation
/// unit (one PBS realization, one chunk of BER trials) owns a stream per
/// purpose, so results depend only on (seed, index, purpose) and never on the
/// number of worker threads or their scheduling.
enum class StreamPurpose : std::uint32_t {
  Placement = 1,     // initial positions and switching decisions
  PropagationA = 2,  // Brownian increments of state-A molecules
  PropagationB = 3,  // Brownian increments of state-B molecules
  Detection = 4,     // bits and received counts in BER trials
  Sampling = 5,      // ad-hoc sampling of reception counts
};

/// Mersenne Twister (64-bit) seeded through std::seed_seq from the words
/// {seed_lo, seed_hi, index_lo, index_hi, purpose}.
class RandomStream {
public:
  using Engine = std::mt19937_64;

  RandomStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose);

  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  bool bernoulli(double p) { return uniform() < p; }

  Engine& engine() { return engine_; }

private:
  Engine engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mediamod
