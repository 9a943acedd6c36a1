#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

/// Thrown when an input violates an operation's preconditions. The message
/// names the offending field or argument.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown on file-format or filesystem problems in the dataset layer.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Complex = std::complex<double>;

/// Optical setup: illumination, sensor geometry and propagation distance.
/// Defaults are the standard benchtop configuration used throughout
/// (532 nm green laser, 4.65 um pitch, z = 20 mm, 224x224 sensor).
struct OpticalConfig {
  double wavelength = 532e-9;   // meters
  double pixel_pitch = 4.65e-6; // meters
  double distance_z = 20e-3;    // meters, signed; negative back-propagates
  int height = 224;
  int width = 224;

  double wavenumber() const; // k = 2*pi / wavelength

  OpticalConfig with_distance(double z) const {
    OpticalConfig c = *this;
    c.distance_z = z;
    return c;
  }
};

/// Validates and returns a config. Throws ValidationError naming the bad field.
OpticalConfig make_config(double wavelength, double pixel_pitch, double distance_z,
                          int height, int width);

/// Spatial frequencies in cycles/meter following the DFT convention:
/// index n -> n/(N*pitch) for n < N/2, (n-N)/(N*pitch) otherwise.
struct SpectralGrid {
  std::vector<double> fx; // length = width, per column
  std::vector<double> fy; // length = height, per row
};

SpectralGrid make_spectral_grid(const OpticalConfig& config);

/// H x W complex amplitudes, row-major, (row = y, col = x).
struct ComplexField {
  int height = 0;
  int width = 0;
  std::vector<Complex> data;

  ComplexField() = default;
  ComplexField(int height, int width);
  ComplexField(int height, int width, std::vector<Complex> values);

  std::size_t size() const { return data.size(); }
  Complex& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
  const Complex& at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
};

/// H x W nonnegative real intensities in sensor counts.
struct Hologram {
  int height = 0;
  int width = 0;
  std::vector<double> data;

  Hologram() = default;
  Hologram(int height, int width);
  Hologram(int height, int width, std::vector<double> values);

  std::size_t size() const { return data.size(); }
  double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
  const double& at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
};

/// Plain real image (amplitude, phase, log-spectrum, ...). Unlike Hologram it
/// carries no nonnegativity contract.
struct RealImage {
  int height = 0;
  int width = 0;
  std::vector<double> data;
};

/// Pixel mask; nonzero marks a covered pixel.
struct BinaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;

  std::size_t count_set() const;
};

struct FieldStats {
  double min_abs = 0.0;
  double max_abs = 0.0;
  double energy = 0.0; // sum |v|^2
};

FieldStats field_stats(const ComplexField& field);

RealImage amplitude_image(const ComplexField& field);
RealImage phase_image(const ComplexField& field); // arg(v) in (-pi, pi]
RealImage hologram_image(const Hologram& h);

/// Wraps an angle difference into (-pi, pi].
double wrap_phase(double x);

void ensure_same_shape(int ha, int wa, int hb, int wb, const char* what);

} // namespace holo
