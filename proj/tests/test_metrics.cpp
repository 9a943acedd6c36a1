#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holo/benchmark.hpp"
#include "holo/metrics.hpp"
#include "holo/propagation.hpp"
#include "holo/reconstruction.hpp"
#include "holo/rng.hpp"
#include "holo/simulation.hpp"

using namespace holo;

namespace {

ComplexField random_field(SeededRng& rng, int h, int w) {
  ComplexField f(h, w);
  for (Complex& v : f.data) v = Complex{rng.normal(), rng.normal()};
  return f;
}

ComplexField circular_shift(const ComplexField& f, int dr, int dc) {
  ComplexField out(f.height, f.width);
  for (int r = 0; r < f.height; ++r)
    for (int c = 0; c < f.width; ++c)
      out.at((r + dr) % f.height, (c + dc) % f.width) = f.at(r, c);
  return out;
}

} // namespace

TEST_CASE("supervised_loss vanishes on identical fields") {
  SeededRng rng(1);
  const ComplexField f = random_field(rng, 16, 16);
  const SupervisedLoss loss = supervised_loss(f, f);
  CHECK(loss.amp == 0.0);
  CHECK(loss.phase == 0.0);
  CHECK(loss.complex == 0.0);
  CHECK(loss.freq == 0.0);
  CHECK(loss.total == 0.0);
}

TEST_CASE("unit components with default weights combine to 1.0") {
  CHECK(weighted_total(LossWeights{}, 1.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(weighted_total(LossWeights{}, 2.0, 0.0, 0.0, 0.0) == doctest::Approx(0.8));
}

TEST_CASE("a pure pi phase offset shows up only in the phase component") {
  ComplexField gt(16, 16);
  std::fill(gt.data.begin(), gt.data.end(), Complex{0.8, 0.0});
  ComplexField pred = gt;
  for (Complex& v : pred.data) v *= Complex{std::cos(std::numbers::pi), std::sin(std::numbers::pi)};
  const SupervisedLoss loss = supervised_loss(pred, gt);
  CHECK(loss.amp == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(loss.phase == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("supervised_loss is invariant under a simultaneous circular shift") {
  SeededRng rng(2);
  const ComplexField gt = random_field(rng, 16, 16);
  const ComplexField pred = random_field(rng, 16, 16);
  const SupervisedLoss a = supervised_loss(pred, gt);
  const SupervisedLoss b = supervised_loss(circular_shift(pred, 3, 7), circular_shift(gt, 3, 7));
  CHECK(a.amp == doctest::Approx(b.amp).epsilon(1e-10));
  CHECK(a.phase == doctest::Approx(b.phase).epsilon(1e-10));
  CHECK(a.complex == doctest::Approx(b.complex).epsilon(1e-10));
  CHECK(a.freq == doctest::Approx(b.freq).epsilon(1e-10));
}

TEST_CASE("total_loss honors lambda_phy and vanishes at the exact solution") {
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 16, 16);
  SeededRng rng(3);
  const ComplexField gt = random_field(rng, 16, 16);
  const Hologram measured = forward_intensity(gt, config);
  CHECK(total_loss(gt, gt, measured, config) == 0.0);

  const ComplexField pred = random_field(rng, 16, 16);
  LossWeights no_phy;
  no_phy.lambda_phy = 0.0;
  CHECK(total_loss(pred, gt, measured, config, no_phy) ==
        doctest::Approx(supervised_loss(pred, gt).total).epsilon(1e-14));

  const double with_phy = total_loss(pred, gt, measured, config);
  const double expected =
      supervised_loss(pred, gt).total + 0.1 * physics_loss(pred, measured, config);
  CHECK(with_phy == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("psnr closed forms") {
  RealImage a{8, 8, std::vector<double>(64, 0.25)};
  RealImage b = a;
  CHECK(psnr(a, b, 1.0) == kPsnrCap);

  // mse = data_range^2 -> 0 dB
  RealImage c{8, 8, std::vector<double>(64, 0.0)};
  RealImage d{8, 8, std::vector<double>(64, 1.0)};
  CHECK(psnr(c, d, 1.0) == doctest::Approx(0.0).epsilon(1e-12));

  // uniform error of 0.01 on range 1 -> 40 dB (10*log10(1/1e-4))
  RealImage e{8, 8, std::vector<double>(64, 0.50)};
  RealImage f{8, 8, std::vector<double>(64, 0.51)};
  CHECK(psnr(e, f, 1.0) == doctest::Approx(40.0).epsilon(1e-9));

  CHECK_THROWS_AS(psnr(a, RealImage{4, 4, std::vector<double>(16, 0.0)}, 1.0), ValidationError);
  CHECK_THROWS_AS(psnr(a, b, 0.0), ValidationError);
}

TEST_CASE("ssim identity, symmetry and degenerate cases") {
  SeededRng rng(4);
  RealImage a{16, 16, {}};
  a.data.resize(256);
  for (double& v : a.data) v = rng.uniform();
  CHECK(ssim(a, a, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  RealImage b{16, 16, {}};
  b.data.resize(256);
  for (double& v : b.data) v = rng.uniform();
  CHECK(ssim(a, b, 1.0) == doctest::Approx(ssim(b, a, 1.0)).epsilon(1e-12));

  // constant vs high-variance noise: near zero
  RealImage flat{16, 16, std::vector<double>(256, 0.5)};
  CHECK(ssim(a, flat, 1.0) < 0.1);

  CHECK_THROWS_AS(ssim(RealImage{8, 8, std::vector<double>(64, 0.0)},
                       RealImage{8, 8, std::vector<double>(64, 0.0)}, 1.0),
                  ValidationError);
}

TEST_CASE("bs_ratio identities and noisy-versus-clean ordering") {
  // flat unit background with an arbitrary mask -> numerator 0 -> ratio 0
  ComplexField flat(32, 32);
  std::fill(flat.data.begin(), flat.data.end(), Complex{1.0, 0.0});
  BinaryMask mask;
  mask.height = 32;
  mask.width = 32;
  mask.data.assign(32 * 32, 0);
  for (int i = 0; i < 50; ++i) mask.data[i] = 1;
  CHECK(bs_ratio(flat, mask) == 0.0);

  // ground truth against its own mask: background deviation is exactly 0
  SeededRng rng(5);
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 64, 64);
  SeededRng sub = SeededRng(500).substream(1);
  const SampleRecord clean =
      simulate_sample(sub, config, NoiseConfig::from_tag(NoiseTag::kClean), ObjectParams{1, 3});
  const BinaryMask support = object_support_mask(clean.object_spec);
  CHECK(bs_ratio(clean.object_gt, support) == 0.0);

  // dirty reconstruction of a shot-noisy sample is strictly worse than GT
  SeededRng sub2 = SeededRng(500).substream(2);
  const SampleRecord noisy =
      simulate_sample(sub2, config, NoiseConfig::from_tag(NoiseTag::kShot), ObjectParams{1, 3});
  const BinaryMask support2 = object_support_mask(noisy.object_spec);
  const ComplexField rec = dirty_reconstruct(noisy.hologram_norm, config);
  CHECK(bs_ratio(rec, support2) > bs_ratio(noisy.object_gt, support2));

  BinaryMask degenerate;
  degenerate.height = 32;
  degenerate.width = 32;
  degenerate.data.assign(32 * 32, 1);
  CHECK_THROWS_AS(bs_ratio(flat, degenerate), ValidationError);
}

TEST_CASE("background_signal_ratio is ~1 for the ground truth field") {
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 64, 64);
  SeededRng sub = SeededRng(501).substream(0);
  const SampleRecord clean =
      simulate_sample(sub, config, NoiseConfig::from_tag(NoiseTag::kClean), ObjectParams{1, 3});
  const BinaryMask support = object_support_mask(clean.object_spec);
  const double r = background_signal_ratio(clean.object_gt, support);
  CHECK(r > 0.9);
  CHECK(r < 1.2);
}

TEST_CASE("freq_ssim: identity, shift invariance and low-pass ordering") {
  SeededRng rng(6);
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 64, 64);
  SeededRng sub = SeededRng(502).substream(0);
  auto [spec, gt] = sample_object(sub, ObjectParams{2, 4}, 64, 64);

  CHECK(freq_ssim(gt, gt) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(freq_ssim(circular_shift(gt, 13, 7), gt) == doctest::Approx(1.0).epsilon(1e-10));

  // low-pass the prediction: spectrum degrades, freq_ssim drops
  ComplexField spectrum = fft2_copy_helper: ; // placeholder
  (void)0;
}

TEST_CASE("compute_metrics on identical fields and aggregation") {
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 64, 64);
  SeededRng sub = SeededRng(503).substream(0);
  const SampleRecord sample =
      simulate_sample(sub, config, NoiseConfig::from_tag(NoiseTag::kClean), ObjectParams{1, 3});
  const BinaryMask support = object_support_mask(sample.object_spec);

  const Metrics self = compute_metrics(sample.object_gt, sample.object_gt, support);
  CHECK(self.mse_amp == 0.0);
  CHECK(self.mse_phase == 0.0);
  CHECK(self.psnr_amp == kPsnrCap);
  CHECK(self.psnr_phase == kPsnrCap);
  CHECK(self.ssim_amp == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(self.freq_ssim == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(self.bs_ratio == 0.0);

  // single-sample aggregate: mean equals the sample, std is 0
  const MetricsAggregate agg = aggregate_metrics({self});
  CHECK(agg.mean.ssim_amp == doctest::Approx(self.ssim_amp));
  CHECK(agg.stddev.ssim_amp == 0.0);
  CHECK(agg.stddev.mse_amp == 0.0);

  // two-sample aggregate mean is the arithmetic mean
  Metrics other = self;
  other.ssim_amp = 0.5;
  const MetricsAggregate agg2 = aggregate_metrics({self, other});
  CHECK(agg2.mean.ssim_amp == doctest::Approx(0.5 * (self.ssim_amp + 0.5)).epsilon(1e-12));

  CHECK_THROWS_AS(aggregate_metrics({}), ValidationError);
}

TEST_CASE("evaluate_method runs deterministically and orders samples by index") {
  const OpticalConfig config = make_config(532e-9, 4.65e-6, 20e-3, 64, 64);
  std::vector<SampleRecord> dataset;
  for (int i = 0; i < 4; ++i) {
    SeededRng sub = SeededRng(700).substream(static_cast<std::uint64_t>(i));
    SampleRecord r =
        simulate_sample(sub, config, NoiseConfig::from_tag(NoiseTag::kClean), ObjectParams{1, 3});
    r.index = i;
    dataset.push_back(std::move(r));
  }
  const EvaluationResult a = evaluate_method(parse_method("dirty"), dataset, 2);
  const EvaluationResult b = evaluate_method(parse_method("dirty"), dataset, 1);
  REQUIRE(a.per_sample.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.sample_indices[i] == static_cast<std::int64_t>(i));
    CHECK(a.per_sample[i].psnr_phase == doctest::Approx(b.per_sample[i].psnr_phase).epsilon(1e-12));
  }
  CHECK_THROWS_AS(evaluate_method(parse_method("dirty"), {}, 1), ValidationError);
}
