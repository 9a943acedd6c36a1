#pragma once

#include <array>
#include <cstdint>

namespace holo {

/// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3", SC'11). Chosen because it is stateless per
/// block, splittable, and produces the same 32-bit stream on every platform.
struct Philox4x32 {
  std::array<std::uint32_t, 4> counter{0, 0, 0, 0};
  std::array<std::uint32_t, 2> key{0, 0};

  /// One 10-round block for the given counter/key (does not advance state).
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                            const std::array<std::uint32_t, 2>& key);

  std::array<std::uint32_t, 4> next_block(); // runs block(), then increments counter
};

/// SplitMix64 mix step; used for seeding and substream derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic seeded RNG for dataset generation. Identical seeds produce
/// identical sequences everywhere; substreams for distinct sample indices are
/// statistically independent.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Independent generator for (base seed, index); derivation is a fixed
  /// splitmix64 hash so substreams can be recreated without the parent.
  SeededRng substream(std::uint64_t index) const;
  static std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  double uniform();                         // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);     // [lo, hi)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi); // inclusive, unbiased
  double normal();                          // standard normal (Box-Muller)
  double normal(double mean, double stddev);
  std::int64_t poisson(double lambda);

 private:
  std::uint64_t seed_ = 0;
  Philox4x32 engine_;
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4; // empty
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;

  std::int64_t poisson_small(double lambda); // Knuth product method
  std::int64_t poisson_ptrd(double lambda);  // Hormann's transformed rejection
};

} // namespace holo
