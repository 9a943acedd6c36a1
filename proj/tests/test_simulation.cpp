#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holo/propagation.hpp"
#include "holo/simulation.hpp"

using namespace holo;

TEST_CASE("a centered circle renders as the distance formula predicts") {
  ObjectSpec spec;
  spec.height = 64;
  spec.width = 64;
  EllipseSpec e;
  e.center_x = 32.0;
  e.center_y = 32.0;
  e.semi_major = 10.0;
  e.semi_minor = 10.0;
  e.rotation = 0.0;
  e.phase = 0.3;
  e.amplitude = 0.95;
  spec.ellipses.push_back(e);

  const ComplexField field = render_object(spec);
  const Complex inside = 0.95 * Complex{std::cos(0.3), std::sin(0.3)};
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      const double dist2 = (c - 32.0) * (c - 32.0) + (r - 32.0) * (r - 32.0);
      if (dist2 <= 100.0) {
        CHECK(field.at(r, c) == inside);
      } else {
        CHECK(field.at(r, c) == Complex{1.0, 0.0});
      }
    }
  }
}

TEST_CASE("sampled ellipse parameters stay in the specified ranges") {
  SeededRng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto [spec, field] = sample_object(rng, ObjectParams{1, 8}, 64, 64);
    CHECK(spec.ellipses.size() >= 1);
    CHECK(spec.ellipses.size() <= 8);
    for (const EllipseSpec& e : spec.ellipses) {
      CHECK(e.phase >= 0.1);
      CHECK(e.phase <= 0.5);
      CHECK(e.amplitude >= 0.90);
      CHECK(e.amplitude <= 1.0);
      CHECK(e.semi_major >= 5.0);
      CHECK(e.semi_major <= 15.0);
      CHECK(e.semi_minor >= 5.0);
      CHECK(e.semi_minor <= 15.0);
      CHECK(e.center_x >= 0.0);
      CHECK(e.center_x < 64.0);
      CHECK(e.center_y >= 0.0);
      CHECK(e.center_y < 64.0);
    }
    // background pixels are exactly 1+0j
    const BinaryMask mask = object_support_mask(spec);
    for (std::size_t i = 0; i < field.data.size(); ++i)
      if (!mask.data[i]) CHECK(field.data[i] == Complex{1.0, 0.0});
  }
  CHECK_THROWS_AS(sample_object(rng, ObjectParams{0, 3}, 64, 64), ValidationError);
  CHECK_THROWS_AS(sample_object(rng, ObjectParams{5, 3}, 64, 64), ValidationError);
}

TEST_CASE("overlapping ellipses compose multiplicatively") {
  ObjectSpec spec;
  spec.height = 64;
  spec.width = 64;
  EllipseSpec a;
  a.center_x = 30.0;
  a.center_y = 32.0;
  a.semi_major = a.semi_minor = 8.0;
  a.phase = 0.2;
  a.amplitude = 0.95;
  EllipseSpec b = a;
  b.center_x = 36.0;
  b.phase = 0.4;
  b.amplitude = 0.92;
  spec.ellipses = {a, b};

  const ComplexField field = render_object(spec);
  const Complex ta = 0.95 * Complex{std::cos(0.2), std::sin(0.2)};
  const Complex tb = 0.92 * Complex{std::cos(0.4), std::sin(0.4)};
  // (33, 32) lies inside both
  CHECK(std::abs(field.at(32, 33) - ta * tb) < 1e-15);
  // (23, 32) only in the first
  CHECK(std::abs(field.at(32, 23) - ta) < 1e-15);
}

TEST_CASE("support mask area matches the analytic ellipse area") {
  ObjectSpec spec;
  spec.height = 64;
  spec.width = 64;
  EllipseSpec e;
  e.center_x = 32.0;
  e.center_y = 32.0;
  e.semi_major = e.semi_minor = 10.0;
  spec.ellipses = {e};
  const double area = static_cast<double>(object_support_mask(spec).count_set());
  CHECK(std::abs(area - 100.0 * std::numbers::pi) <= 0.02 * 100.0 * std::numbers::pi);

  // empty region
  ObjectSpec empty;
  empty.height = 16;
  empty.width = 16;
  CHECK(object_support_mask(empty).count_set() == 0);

  // disjoint ellipses: areas add
  EllipseSpec f = e;
  f.center_x = 10.0;
  f.center_y = 10.0;
  f.semi_major = f.semi_minor = 6.0;
  ObjectSpec both;
  both.height = 64;
  both.width = 64;
  both.ellipses = {e, f};
  ObjectSpec only_f = both;
  only_f.ellipses = {f};
  CHECK(object_support_mask(both).count_set() ==
        object_support_mask(spec).count_set() + object_support_mask(only_f).count_set());
}

TEST_CASE("speckle: sigma 0 is the identity and the modulus never changes") {
  SeededRng rng(3);
  auto [spec, field] = sample_object(rng, ObjectParams{1, 3}, 32, 32);
  SeededRng noise_rng(4);
  const ComplexField same = apply_speckle(field, noise_rng, 0.0, 1.0);
  for (std::size_t i = 0; i < field.data.size(); ++i) CHECK(same.data[i] == field.data[i]);

  const ComplexField out = apply_speckle(field, noise_rng, 0.15, 1.0);
  for (std::size_t i = 0; i < field.data.size(); ++i)
    CHECK(std::abs(std::abs(out.data[i]) - std::abs(field.data[i])) < 1e-12);
}

TEST_CASE("speckle phase statistics: exact std and spatial correlation") {
  ComplexField ones(224, 224);
  std::fill(ones.data.begin(), ones.data.end(), Complex{1.0, 0.0});
  SeededRng rng(5);
  const ComplexField out = apply_speckle(ones, rng, 0.15, 1.0);

  std::vector<double> theta(out.data.size());
  for (std::size_t i = 0; i < out.data.size(); ++i) theta[i] = std::arg(out.data[i]);
  double mean = 0.0;
  for (double t : theta) mean += t;
  mean /= static_cast<double>(theta.size());
  double var = 0.0;
  for (double t : theta) var += (t - mean) * (t - mean);
  var /= static_cast<double>(theta.size());
  CHECK(std::abs(std::sqrt(var) - 0.15) < 1e-6);

  auto autocorr = [&](int lag) {
    double acc = 0.0;
    std::size_t count = 0;
    for (int r = 0; r < 224; ++r)
      for (int c = 0; c + lag < 224; ++c, ++count)
        acc += (theta[r * 224 + c] - mean) * (theta[r * 224 + c + lag] - mean);
    return acc / (static_cast<double>(count) * var);
  };
  CHECK(autocorr(1) > autocorr(10));
}

TEST_CASE("shot noise: zeros stay zero, Poisson moments at the baseline") {
  SeededRng rng(6);
  Hologram zeros(32, 32);
  const Hologram still_zero = apply_shot(zeros, rng, 1000.0);
  for (double v : still_zero.data) CHECK(v == 0.0);

  Hologram ones(128, 128);
  std::fill(ones.data.begin(), ones.data.end(), 1.0);
  const Hologram shot = apply_shot(ones, rng, 1000.0);
  double mean = 0.0;
  for (double v : shot.data) mean += v;
  mean /= static_cast<double>(shot.data.size());
  double var = 0.0;
  for (double v : shot.data) var += (v - mean) * (v - mean);
  var /= static_cast<double>(shot.data.size());
  CHECK(std::abs(mean - 1000.0) < 10.0);       // 1%
  CHECK(std::abs(var / mean - 1.0) < 0.05);    // Poisson var/mean
}

TEST_CASE("read noise: identity at sigma 0, clamped at zero, correct std") {
  SeededRng rng(7);
  Hologram low(32, 32);
  std::fill(low.data.begin(), low.data.end(), 5.0);
  const Hologram same = apply_read(low, rng, 0.0);
  for (std::size_t i = 0; i < low.data.size(); ++i) CHECK(same.data[i] == low.data[i]);

  const Hologram clamped = apply_read(low, rng, 10.0);
  for (double v : clamped.data) CHECK(v >= 0.0);

  Hologram flat(128, 128);
  std::fill(flat.data.begin(), flat.data.end(), 1000.0);
  const Hologram noisy = apply_read(flat, rng, 10.0);
  double mean = 0.0;
  for (double v : noisy.data) mean += v;
  mean /= static_cast<double>(noisy.data.size());
  double var = 0.0;
  for (double v : noisy.data) var += (v - mean) * (v - mean);
  var /= static_cast<double>(noisy.data.size());
  CHECK(std::abs(std::sqrt(var) - 10.0) < 0.2); // 2%
}

TEST_CASE("dark current: identity at lambda 0, additive, correct moments") {
  SeededRng rng(8);
  Hologram base(128, 128);
  std::fill(base.data.begin(), base.data.end(), 3.0);
  const Hologram same = apply_dark(base, rng, 0.0);
  for (std::size_t i = 0; i < base.data.size(); ++i) CHECK(same.data[i] == base.data[i]);

  const Hologram dark = apply_dark(base, rng, 20.0);
  double mean = 0.0;
  for (std::size_t i = 0; i < dark.data.size(); ++i) {
    CHECK(dark.data[i] >= base.data[i]);
    mean += dark.data[i] - base.data[i];
  }
  mean /= static_cast<double>(dark.data.size());
  double var = 0.0;
  for (std::size_t i = 0; i < dark.data.size(); ++i) {
    const double d = dark.data[i] - base.data[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(dark.data.size());
  CHECK(std::abs(mean - 20.0) < 0.4); // 2%
  CHECK(std::abs(var - 20.0) < 1.0);  // 5%
}

TEST_CASE("noise tags toggle the right stages") {
  CHECK_FALSE(NoiseConfig::from_tag(NoiseTag::kClean).applies_speckle());
  CHECK_FALSE(NoiseConfig::from_tag(NoiseTag::kClean).applies_shot());
  CHECK(NoiseConfig::from_tag(NoiseTag::kSpeckleShotRead).applies_speckle());
  CHECK(NoiseConfig::from_tag(NoiseTag::kSpeckleShotRead).applies_shot());
  CHECK(NoiseConfig::from_tag(NoiseTag::kSpeckleShotRead).applies_read());
  CHECK_FALSE(NoiseConfig::from_tag(NoiseTag::kSpeckleShotRead).applies_dark());
  CHECK(NoiseConfig::from_tag(NoiseTag::kDark).applies_dark());
  CHECK(all_noise_tags().size() == kNoiseTagCount);
  for (NoiseTag tag : all_noise_tags()) CHECK(noise_tag_from_name(noise_tag_name(tag)) == tag);
  CHECK_THROWS_AS(noise_tag_from_name("sparkle"), ValidationError);
}

TEST_CASE("simulate_sample: clean pipeline invariants") {
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 64, 64);
  SeededRng rng = SeededRng(1234).substream(0);
  const SampleRecord record =
      simulate_sample(rng, config, NoiseConfig::from_tag(NoiseTag::kClean), ObjectParams{1, 4});

  // normalization divisor is exactly 1000.0
  for (std::size_t i = 0; i < record.hologram_raw.data.size(); ++i)
    CHECK(record.hologram_norm.data[i] == record.hologram_raw.data[i] / 1000.0);

  // clean tag: raw = |P_z O|^2 * baseline, exactly the deterministic pipeline
  const Hologram expected = forward_intensity(record.object_gt, config);
  for (std::size_t i = 0; i < expected.data.size(); ++i)
    CHECK(record.hologram_raw.data[i] == doctest::Approx(1000.0 * expected.data[i]).epsilon(1e-12));

  // weak absorbers keep the mean normalized hologram near 1
  double mean = 0.0;
  for (double v : record.hologram_norm.data) mean += v;
  mean /= static_cast<double>(record.hologram_norm.data.size());
  CHECK(mean >= 0.9);
  CHECK(mean <= 1.1);
}

TEST_CASE("simulate_sample is deterministic per substream seed") {
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 32, 32);
  const NoiseConfig noise = NoiseConfig::from_tag(NoiseTag::kSpeckleShotRead);
  SeededRng a = SeededRng(77).substream(5);
  SeededRng b = SeededRng(77).substream(5);
  const SampleRecord ra = simulate_sample(a, config, noise, ObjectParams{1, 8});
  const SampleRecord rb = simulate_sample(b, config, noise, ObjectParams{1, 8});
  CHECK(ra.hologram_raw.data == rb.hologram_raw.data);
  CHECK(ra.object_gt.data == rb.object_gt.data);
  CHECK(ra.object_spec.ellipses.size() == rb.object_spec.ellipses.size());

  SeededRng c = SeededRng(77).substream(6);
  const SampleRecord rc = simulate_sample(c, config, noise, ObjectParams{1, 8});
  CHECK(ra.hologram_raw.data != rc.hologram_raw.data);
}

TEST_CASE("plane-wave object gives a unit normalized hologram under the clean tag") {
  // O = 1: |P_z O|^2 = 1, scaled to 1000 counts, normalized back to 1.0
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 32, 32);
  ComplexField ones(32, 32);
  std::fill(ones.data.begin(), ones.data.end(), Complex{1.0, 0.0});
  const Hologram intensity = forward_intensity(ones, config);
  for (double v : intensity.data)
    CHECK(v * 1000.0 / kCountNormalization == doctest::Approx(1.0).epsilon(1e-12));
}
