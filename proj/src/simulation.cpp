#include "holo/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holo/fft.hpp"
#include "holo/propagation.hpp"

namespace holo {

bool EllipseSpec::contains(double x, double y) const {
  const double dx = x - center_x;
  const double dy = y - center_y;
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  const double u = (dx * c + dy * s) / semi_major;
  const double v = (-dx * s + dy * c) / semi_minor;
  return u * u + v * v <= 1.0;
}

bool NoiseConfig::applies_speckle() const {
  return tag == NoiseTag::kSpeckle || tag == NoiseTag::kSpeckleShot ||
         tag == NoiseTag::kSpeckleShotRead;
}

bool NoiseConfig::applies_shot() const {
  return tag == NoiseTag::kShot || tag == NoiseTag::kSpeckleShot || tag == NoiseTag::kShotRead ||
         tag == NoiseTag::kSpeckleShotRead;
}

bool NoiseConfig::applies_read() const {
  return tag == NoiseTag::kRead || tag == NoiseTag::kShotRead ||
         tag == NoiseTag::kSpeckleShotRead;
}

bool NoiseConfig::applies_dark() const { return tag == NoiseTag::kDark; }

NoiseConfig NoiseConfig::from_tag(NoiseTag tag) {
  NoiseConfig c;
  c.tag = tag;
  return c;
}

NoiseConfig NoiseConfig::from_tag_name(const std::string& name) {
  return from_tag(noise_tag_from_name(name));
}

std::string noise_tag_name(NoiseTag tag) {
  switch (tag) {
    case NoiseTag::kClean: return "clean";
    case NoiseTag::kSpeckle: return "speckle";
    case NoiseTag::kShot: return "shot";
    case NoiseTag::kRead: return "read";
    case NoiseTag::kDark: return "dark";
    case NoiseTag::kSpeckleShot: return "speckle+shot";
    case NoiseTag::kShotRead: return "shot+read";
    case NoiseTag::kSpeckleShotRead: return "speckle+shot+read";
  }
  throw ValidationError("unknown noise tag");
}

const std::vector<NoiseTag>& all_noise_tags() {
  static const std::vector<NoiseTag> tags = {
      NoiseTag::kClean,       NoiseTag::kSpeckle,  NoiseTag::kShot,
      NoiseTag::kRead,        NoiseTag::kDark,     NoiseTag::kSpeckleShot,
      NoiseTag::kShotRead,    NoiseTag::kSpeckleShotRead,
  };
  return tags;
}

NoiseTag noise_tag_from_name(const std::string& name) {
  for (NoiseTag tag : all_noise_tags())
    if (noise_tag_name(tag) == name) return tag;
  throw ValidationError("unknown noise tag: " + name);
}

std::pair<ObjectSpec, ComplexField> sample_object(SeededRng& rng, const ObjectParams& params,
                                                  int height, int width) {
  if (height < 8 || width < 8) throw ValidationError("object field dimensions must be >= 8");
  if (params.min_objects < 1 || params.min_objects > params.max_objects)
    throw ValidationError("object count range must satisfy 1 <= min <= max");

  ObjectSpec spec;
  spec.height = height;
  spec.width = width;
  const int count =
      static_cast<int>(rng.uniform_int(params.min_objects, params.max_objects));
  spec.ellipses.reserve(count);
  for (int i = 0; i < count; ++i) {
    EllipseSpec e;
    e.center_x = rng.uniform(0.0, static_cast<double>(width));
    e.center_y = rng.uniform(0.0, static_cast<double>(height));
    e.semi_major = rng.uniform(5.0, 15.0);
    e.semi_minor = rng.uniform(5.0, 15.0);
    e.rotation = rng.uniform(0.0, std::numbers::pi);
    e.phase = rng.uniform(0.1, 0.5);
    e.amplitude = rng.uniform(0.90, 1.0);
    spec.ellipses.push_back(e);
  }
  return {spec, render_object(spec)};
}

ComplexField render_object(const ObjectSpec& spec) {
  ComplexField field(spec.height, spec.width);
  std::fill(field.data.begin(), field.data.end(), Complex{1.0, 0.0});
  for (const EllipseSpec& e : spec.ellipses) {
    const Complex t = e.amplitude * Complex{std::cos(e.phase), std::sin(e.phase)};
    // bounding box keeps the scan cheap for small ellipses
    const double r = std::max(e.semi_major, e.semi_minor);
    const int r0 = std::max(0, static_cast<int>(std::floor(e.center_y - r)));
    const int r1 = std::min(spec.height - 1, static_cast<int>(std::ceil(e.center_y + r)));
    const int c0 = std::max(0, static_cast<int>(std::floor(e.center_x - r)));
    const int c1 = std::min(spec.width - 1, static_cast<int>(std::ceil(e.center_x + r)));
    for (int row = r0; row <= r1; ++row)
      for (int col = c0; col <= c1; ++col)
        if (e.contains(col, row)) field.at(row, col) *= t;
  }
  return field;
}

BinaryMask object_support_mask(const ObjectSpec& spec) {
  BinaryMask mask;
  mask.height = spec.height;
  mask.width = spec.width;
  mask.data.assign(static_cast<std::size_t>(spec.height) * spec.width, 0);
  for (const EllipseSpec& e : spec.ellipses) {
    const double r = std::max(e.semi_major, e.semi_minor);
    const int r0 = std::max(0, static_cast<int>(std::floor(e.center_y - r)));
    const int r1 = std::min(spec.height - 1, static_cast<int>(std::ceil(e.center_y + r)));
    const int c0 = std::max(0, static_cast<int>(std::floor(e.center_x - r)));
    const int c1 = std::min(spec.width - 1, static_cast<int>(std::ceil(e.center_x + r)));
    for (int row = r0; row <= r1; ++row)
      for (int col = c0; col <= c1; ++col)
        if (e.contains(col, row))
          mask.data[static_cast<std::size_t>(row) * spec.width + col] = 1;
  }
  return mask;
}

ComplexField apply_speckle(const ComplexField& field, SeededRng& rng, double sigma,
                           double roughness) {
  if (sigma < 0.0) throw ValidationError("speckle sigma must be >= 0");
  if (roughness <= 0.0) throw ValidationError("speckle roughness must be > 0");
  if (sigma == 0.0) return field;

  const int h = field.height;
  const int w = field.width;
  ComplexField theta(h, w);
  for (Complex& v : theta.data) v = Complex{rng.normal(), 0.0};

  // Low-pass via the Gaussian frequency response exp(-2 pi^2 r^2 nu^2),
  // nu in cycles/pixel (circular convolution).
  fft_detail::transform(theta.data.data(), h, w, false);
  const double coeff = -2.0 * std::numbers::pi * std::numbers::pi * roughness * roughness;
  std::size_t idx = 0;
  for (int r = 0; r < h; ++r) {
    const double ny = static_cast<double>(r < (h + 1) / 2 ? r : r - h) / h;
    for (int c = 0; c < w; ++c, ++idx) {
      const double nx = static_cast<double>(c < (w + 1) / 2 ? c : c - w) / w;
      theta.data[idx] *= std::exp(coeff * (nx * nx + ny * ny));
    }
  }
  fft_detail::transform(theta.data.data(), h, w, true);

  const std::size_t n = theta.data.size();
  double mean = 0.0;
  for (const Complex& v : theta.data) mean += v.real();
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const Complex& v : theta.data) {
    const double d = v.real() - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);
  const double scale = var > 0.0 ? sigma / std::sqrt(var) : 0.0;

  ComplexField out = field;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = theta.data[i].real() * scale;
    out.data[i] *= Complex{std::cos(t), std::sin(t)};
  }
  return out;
}

Hologram apply_shot(const Hologram& hologram, SeededRng& rng, double baseline) {
  if (baseline <= 0.0) throw ValidationError("shot baseline must be > 0");
  Hologram out(hologram.height, hologram.width);
  for (std::size_t i = 0; i < hologram.data.size(); ++i)
    out.data[i] = static_cast<double>(rng.poisson(hologram.data[i] * baseline));
  return out;
}

Hologram apply_read(const Hologram& hologram, SeededRng& rng, double sigma) {
  if (sigma < 0.0) throw ValidationError("read sigma must be >= 0");
  if (sigma == 0.0) return hologram;
  Hologram out(hologram.height, hologram.width);
  for (std::size_t i = 0; i < hologram.data.size(); ++i)
    out.data[i] = std::max(0.0, hologram.data[i] + sigma * rng.normal());
  return out;
}

Hologram apply_dark(const Hologram& hologram, SeededRng& rng, double lambda) {
  if (lambda < 0.0) throw ValidationError("dark lambda must be >= 0");
  if (lambda == 0.0) return hologram;
  Hologram out(hologram.height, hologram.width);
  for (std::size_t i = 0; i < hologram.data.size(); ++i)
    out.data[i] = hologram.data[i] + static_cast<double>(rng.poisson(lambda));
  return out;
}

SampleRecord simulate_sample(SeededRng& rng, const OpticalConfig& config,
                             const NoiseConfig& noise, const ObjectParams& params) {
  SampleRecord record;
  record.seed = rng.seed();
  record.noise = noise;
  record.config = config;

  auto [spec, object] = sample_object(rng, params, config.height, config.width);
  record.object_spec = std::move(spec);
  record.object_gt = object;

  ComplexField illuminated = std::move(object);
  if (noise.applies_speckle())
    illuminated = apply_speckle(illuminated, rng, noise.speckle_sigma, noise.speckle_roughness);

  const Hologram intensity = forward_intensity(illuminated, config);

  Hologram counts(intensity.height, intensity.width);
  if (noise.applies_shot()) {
    counts = apply_shot(intensity, rng, noise.shot_baseline);
  } else {
    for (std::size_t i = 0; i < intensity.data.size(); ++i)
      counts.data[i] = intensity.data[i] * noise.shot_baseline;
  }
  if (noise.applies_read()) counts = apply_read(counts, rng, noise.read_sigma);
  if (noise.applies_dark()) counts = apply_dark(counts, rng, noise.dark_lambda);

  record.hologram_raw = counts;
  record.hologram_norm = Hologram(counts.height, counts.width);
  for (std::size_t i = 0; i < counts.data.size(); ++i)
    record.hologram_norm.data[i] = counts.data[i] / kCountNormalization;
  return record;
}

} // namespace holo
