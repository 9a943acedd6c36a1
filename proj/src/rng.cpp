#include "holo/rng.hpp"

#include <cmath>
#include <numbers>

namespace holo {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(const std::array<std::uint32_t, 4>& counter,
                                               const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

std::array<std::uint32_t, 4> Philox4x32::next_block() {
  auto out = block(counter, key);
  // 128-bit counter increment
  if (++counter[0] == 0)
    if (++counter[1] == 0)
      if (++counter[2] == 0) ++counter[3];
  return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t s = seed;
  const std::uint64_t k = splitmix64(s);
  engine_.key = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  engine_.counter = {0, 0, 0, 0};
}

std::uint64_t SeededRng::substream_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t s = base_seed;
  std::uint64_t mixed = splitmix64(s) ^ (index * 0xD1B54A32D192ED03ull + 0x8BB84B93962EACC9ull);
  return splitmix64(mixed);
}

SeededRng SeededRng::substream(std::uint64_t index) const {
  return SeededRng(substream_seed(seed_, index));
}

std::uint32_t SeededRng::next_u32() {
  if (buffer_pos_ >= 4) {
    buffer_ = engine_.next_block();
    buffer_pos_ = 0;
  }
  return buffer_[buffer_pos_++];
}

std::uint64_t SeededRng::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double SeededRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t SeededRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64()); // full 64-bit span
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % range);
}

double SeededRng::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform(); // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(t);
  has_spare_normal_ = true;
  return r * std::cos(t);
}

double SeededRng::normal(double mean, double stddev) { return mean + stddev * normal(); }

std::int64_t SeededRng::poisson(double lambda) {
  if (lambda <= 0.0) return 0;
  return lambda < 10.0 ? poisson_small(lambda) : poisson_ptrd(lambda);
}

std::int64_t SeededRng::poisson_small(double lambda) {
  const double limit = std::exp(-lambda);
  std::int64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform();
  } while (p > limit);
  return k - 1;
}

// PTRD: W. Hormann, "The transformed rejection method for generating Poisson
// random variables" (1993). Valid for lambda >= 10.
std::int64_t SeededRng::poisson_ptrd(double lambda) {
  const double smu = std::sqrt(lambda);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double log_sqrt_2pi = 0.9189385332046727;

  for (;;) {
    double u;
    double v = uniform();
    if (v <= 0.86 * vr) {
      u = v / vr - 0.43;
      return static_cast<std::int64_t>(
          std::floor((2.0 * a / (0.5 - std::abs(u)) + b) * u + lambda + 0.445));
    }
    if (v >= vr) {
      u = uniform() - 0.5;
    } else {
      u = v / vr - 0.93;
      u = (u < 0 ? -0.5 : 0.5) - u;
      v = uniform() * vr;
    }
    const double us = 0.5 - std::abs(u);
    if (us < 0.013 && v > us) continue;
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.445);
    v = v * inv_alpha / (a / (us * us) + b);
    if (kf >= 10.0) {
      const double log_accept = (kf + 0.5) * std::log(lambda / kf) - lambda - log_sqrt_2pi + kf -
                                (1.0 / 12.0 - 1.0 / (360.0 * kf * kf)) / kf;
      if (std::log(v * smu) <= log_accept) return static_cast<std::int64_t>(kf);
    } else if (kf >= 0.0) {
      if (std::log(v) <= kf * std::log(lambda) - lambda - std::lgamma(kf + 1.0))
        return static_cast<std::int64_t>(kf);
    }
  }
}

} // namespace holo
