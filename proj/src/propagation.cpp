#include "holo/propagation.hpp"

#include <cmath>

#include "holo/fft.hpp"

namespace holo {

TransferFunction transfer_function(const OpticalConfig& config, double z) {
  if (!std::isfinite(z)) throw ValidationError("z must be finite");
  TransferFunction tf;
  tf.config = config;
  tf.z = z;
  tf.values.resize(static_cast<std::size_t>(config.height) * config.width);

  const SpectralGrid grid = make_spectral_grid(config);
  const double k = config.wavenumber();
  const double lambda = config.wavelength;
  std::size_t idx = 0;
  for (int r = 0; r < config.height; ++r) {
    const double ly = lambda * grid.fy[r];
    const double ly2 = ly * ly;
    for (int c = 0; c < config.width; ++c, ++idx) {
      const double lx = lambda * grid.fx[c];
      const double radicand = 1.0 - lx * lx - ly2;
      if (radicand >= 0.0) {
        const double phase = k * z * std::sqrt(radicand);
        tf.values[idx] = Complex{std::cos(phase), std::sin(phase)};
      } else {
        tf.values[idx] = Complex{0.0, 0.0}; // evanescent: band-limited to zero
      }
    }
  }
  return tf;
}

ComplexField TransferFunction::apply(const ComplexField& field) const {
  ensure_same_shape(field.height, field.width, config.height, config.width, "propagate");
  ComplexField out = field;
  fft_detail::transform(out.data.data(), out.height, out.width, false);
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= values[i];
  fft_detail::transform(out.data.data(), out.height, out.width, true);
  return out;
}

ComplexField propagate(const ComplexField& field, const OpticalConfig& config, double z) {
  return transfer_function(config, z).apply(field);
}

ComplexField propagate(const ComplexField& field, const OpticalConfig& config) {
  return propagate(field, config, config.distance_z);
}

ComplexField back_propagate(const ComplexField& field, const OpticalConfig& config, double z) {
  return propagate(field, config, -z);
}

ComplexField back_propagate(const ComplexField& field, const OpticalConfig& config) {
  return back_propagate(field, config, config.distance_z);
}

Hologram forward_intensity(const ComplexField& object, const OpticalConfig& config) {
  ensure_same_shape(object.height, object.width, config.height, config.width,
                    "forward_intensity");
  const ComplexField sensor = propagate(object, config, config.distance_z);
  Hologram h(object.height, object.width);
  for (std::size_t i = 0; i < sensor.data.size(); ++i) h.data[i] = std::norm(sensor.data[i]);
  return h;
}

PhysicsGradient physics_loss_gradient(const ComplexField& object, const Hologram& measured,
                                      const OpticalConfig& config) {
  ensure_same_shape(object.height, object.width, measured.height, measured.width,
                    "physics_loss_gradient");
  ensure_same_shape(object.height, object.width, config.height, config.width,
                    "physics_loss_gradient");

  const ComplexField sensor = propagate(object, config, config.distance_z);
  const std::size_t n = sensor.data.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  double loss = 0.0;
  ComplexField weighted(object.height, object.width);
  for (std::size_t i = 0; i < n; ++i) {
    const double residual = std::norm(sensor.data[i]) - measured.data[i];
    loss += std::abs(residual);
    const double sign = residual > 0.0 ? 1.0 : (residual < 0.0 ? -1.0 : 0.0);
    weighted.data[i] = sign * sensor.data[i];
  }
  loss *= inv_n;

  PhysicsGradient out;
  out.loss = loss;
  out.gradient = back_propagate(weighted, config, config.distance_z);
  const double scale = 2.0 * inv_n;
  for (Complex& g : out.gradient.data) g *= scale;
  return out;
}

double physics_loss(const ComplexField& object, const Hologram& measured,
                    const OpticalConfig& config) {
  ensure_same_shape(object.height, object.width, measured.height, measured.width,
                    "physics_loss");
  const Hologram predicted = forward_intensity(object, config);
  double loss = 0.0;
  for (std::size_t i = 0; i < predicted.data.size(); ++i)
    loss += std::abs(predicted.data[i] - measured.data[i]);
  return loss / static_cast<double>(predicted.data.size());
}

} // namespace holo
