#include "holo/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace holo {

double OpticalConfig::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

} // namespace

OpticalConfig make_config(double wavelength, double pixel_pitch, double distance_z,
                          int height, int width) {
  require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be positive");
  require(std::isfinite(pixel_pitch) && pixel_pitch > 0.0, "pixel_pitch must be positive");
  require(std::isfinite(distance_z), "distance_z must be finite");
  require(height >= 8, "height must be >= 8");
  require(width >= 8, "width must be >= 8");
  OpticalConfig c;
  c.wavelength = wavelength;
  c.pixel_pitch = pixel_pitch;
  c.distance_z = distance_z;
  c.height = height;
  c.width = width;
  require(std::isfinite(c.wavenumber()) && c.wavenumber() > 0.0,
          "wavelength yields non-finite wavenumber");
  return c;
}

SpectralGrid make_spectral_grid(const OpticalConfig& config) {
  SpectralGrid g;
  auto fill = [&](std::vector<double>& f, int n) {
    f.resize(n);
    const double d = 1.0 / (static_cast<double>(n) * config.pixel_pitch);
    for (int i = 0; i < n; ++i) {
      f[i] = (i < (n + 1) / 2 ? i : i - n) * d;
    }
  };
  fill(g.fy, config.height);
  fill(g.fx, config.width);
  return g;
}

ComplexField::ComplexField(int h, int w) : height(h), width(w) {
  if (h <= 0 || w <= 0) throw ValidationError("field dimensions must be positive");
  data.assign(static_cast<std::size_t>(h) * w, Complex{0.0, 0.0});
}

ComplexField::ComplexField(int h, int w, std::vector<Complex> values)
    : height(h), width(w), data(std::move(values)) {
  if (h <= 0 || w <= 0) throw ValidationError("field dimensions must be positive");
  if (data.size() != static_cast<std::size_t>(h) * w)
    throw ValidationError("field data length does not match height*width");
}

Hologram::Hologram(int h, int w) : height(h), width(w) {
  if (h <= 0 || w <= 0) throw ValidationError("hologram dimensions must be positive");
  data.assign(static_cast<std::size_t>(h) * w, 0.0);
}

Hologram::Hologram(int h, int w, std::vector<double> values)
    : height(h), width(w), data(std::move(values)) {
  if (h <= 0 || w <= 0) throw ValidationError("hologram dimensions must be positive");
  if (data.size() != static_cast<std::size_t>(h) * w)
    throw ValidationError("hologram data length does not match height*width");
}

std::size_t BinaryMask::count_set() const {
  std::size_t n = 0;
  for (auto v : data) n += (v != 0);
  return n;
}

FieldStats field_stats(const ComplexField& field) {
  FieldStats s;
  if (field.data.empty()) return s;
  s.min_abs = std::abs(field.data[0]);
  s.max_abs = s.min_abs;
  for (const Complex& v : field.data) {
    const double a = std::abs(v);
    s.min_abs = std::min(s.min_abs, a);
    s.max_abs = std::max(s.max_abs, a);
    s.energy += std::norm(v);
  }
  return s;
}

RealImage amplitude_image(const ComplexField& field) {
  RealImage img{field.height, field.width, {}};
  img.data.reserve(field.size());
  for (const Complex& v : field.data) img.data.push_back(std::abs(v));
  return img;
}

RealImage phase_image(const ComplexField& field) {
  RealImage img{field.height, field.width, {}};
  img.data.reserve(field.size());
  for (const Complex& v : field.data) img.data.push_back(std::arg(v));
  return img;
}

RealImage hologram_image(const Hologram& h) { return RealImage{h.height, h.width, h.data}; }

double wrap_phase(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(x, two_pi); // in [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

void ensure_same_shape(int ha, int wa, int hb, int wb, const char* what) {
  if (ha != hb || wa != wb) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(ha) +
                          "x" + std::to_string(wa) + " vs " + std::to_string(hb) + "x" +
                          std::to_string(wb) + ")");
  }
}

} // namespace holo
