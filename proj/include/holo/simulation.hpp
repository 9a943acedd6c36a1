#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "holo/rng.hpp"
#include "holo/types.hpp"

namespace holo {

/// Rotated ellipse with complex transmittance amplitude*exp(j*phase) inside.
struct EllipseSpec {
  double center_x = 0.0;   // pixels, in [0, width)
  double center_y = 0.0;   // pixels, in [0, height)
  double semi_major = 5.0; // pixels, in [5, 15]
  double semi_minor = 5.0; // pixels, in [5, 15]
  double rotation = 0.0;   // radians
  double phase = 0.1;      // radians, in [0.1, 0.5]
  double amplitude = 1.0;  // transmission, in [0.90, 1.0]

  bool contains(double x, double y) const;
};

struct ObjectSpec {
  int height = 0;
  int width = 0;
  std::vector<EllipseSpec> ellipses;
};

/// The eight dataset noise configurations. Tags toggle stages; the stage
/// order is fixed (speckle before propagation, then shot -> read -> dark on
/// the intensity).
enum class NoiseTag {
  kClean,
  kSpeckle,
  kShot,
  kRead,
  kDark,
  kSpeckleShot,
  kShotRead,
  kSpeckleShotRead,
};

inline constexpr int kNoiseTagCount = 8;

struct NoiseConfig {
  NoiseTag tag = NoiseTag::kClean;
  double speckle_sigma = 0.15;    // radians
  double speckle_roughness = 1.0; // pixels (Gaussian filter stddev)
  double shot_baseline = 1000.0;  // counts at unit reference intensity
  double read_sigma = 10.0;       // counts
  double dark_lambda = 20.0;      // electrons/pixel

  bool applies_speckle() const;
  bool applies_shot() const;
  bool applies_read() const;
  bool applies_dark() const;

  static NoiseConfig from_tag(NoiseTag tag);
  static NoiseConfig from_tag_name(const std::string& name); // e.g. "speckle+shot"
};

std::string noise_tag_name(NoiseTag tag);
NoiseTag noise_tag_from_name(const std::string& name);
const std::vector<NoiseTag>& all_noise_tags();

struct ObjectParams {
  int min_objects = 1;
  int max_objects = 8;
};

/// Draws ellipse parameters and renders the object transmittance: background
/// exactly 1+0j; overlapping ellipses multiply.
std::pair<ObjectSpec, ComplexField> sample_object(SeededRng& rng, const ObjectParams& params,
                                                  int height, int width);

/// Deterministic render of an ObjectSpec (same composition rule as
/// sample_object).
ComplexField render_object(const ObjectSpec& spec);

/// True exactly where some ellipse covers the pixel center.
BinaryMask object_support_mask(const ObjectSpec& spec);

/// Multiplies the field by exp(j*theta) where theta is white Gaussian noise
/// low-passed by a Gaussian of stddev `roughness` pixels, then rescaled so
/// std(theta) == sigma exactly. sigma == 0 returns the input unchanged.
ComplexField apply_speckle(const ComplexField& field, SeededRng& rng, double sigma,
                           double roughness);

/// Scales unit reference intensity to `baseline` counts and draws each pixel
/// from Poisson with that mean. Output stays in counts.
Hologram apply_shot(const Hologram& hologram, SeededRng& rng, double baseline);

/// Adds zero-mean Gaussian read noise (stddev in counts), clamped at 0.
Hologram apply_read(const Hologram& hologram, SeededRng& rng, double sigma);

/// Adds an independent Poisson(lambda) draw per pixel.
Hologram apply_dark(const Hologram& hologram, SeededRng& rng, double lambda);

/// Divisor taking raw counts to the ~1.0 nominal range.
inline constexpr double kCountNormalization = 1000.0;

/// One generated dataset unit: clean ground truth plus the noisy hologram in
/// raw counts and normalized (counts / 1000.0) form.
struct SampleRecord {
  std::int64_t index = 0;
  std::uint64_t seed = 0; // substream seed this record was drawn from
  NoiseConfig noise;
  OpticalConfig config;
  ObjectSpec object_spec;
  ComplexField object_gt;
  Hologram hologram_raw;
  Hologram hologram_norm;
};

/// Full pipeline: object -> (speckle) -> propagate -> intensity -> counts ->
/// (shot) -> (read) -> (dark). Deterministic given the rng state.
SampleRecord simulate_sample(SeededRng& rng, const OpticalConfig& config,
                             const NoiseConfig& noise, const ObjectParams& params);

} // namespace holo
