#pragma once

#include "holo/types.hpp"

namespace holo {

/// Free-space angular-spectrum transfer function sampled on the config's
/// spectral grid: exp(j k z sqrt(1 - (lambda fx)^2 - (lambda fy)^2)) where the
/// radicand is nonnegative, 0 elsewhere (hard band limit, so the conjugated
/// function is exactly the inverse on the propagating band).
struct TransferFunction {
  OpticalConfig config;
  double z = 0.0;
  std::vector<Complex> values; // height x width, row-major

  /// F^{-1}{ F{field} . values }
  ComplexField apply(const ComplexField& field) const;
};

TransferFunction transfer_function(const OpticalConfig& config, double z);

/// Angular Spectrum propagation over signed distance z.
ComplexField propagate(const ComplexField& field, const OpticalConfig& config, double z);
/// Convenience: uses config.distance_z.
ComplexField propagate(const ComplexField& field, const OpticalConfig& config);

/// Back-propagation: identical to propagate(field, config, -z).
ComplexField back_propagate(const ComplexField& field, const OpticalConfig& config, double z);
ComplexField back_propagate(const ComplexField& field, const OpticalConfig& config);

/// Sensor-plane intensity |P_z{object}|^2 at unit reference scale.
Hologram forward_intensity(const ComplexField& object, const OpticalConfig& config);

/// Gradient of the physics-consistency loss with respect to the object field;
/// one complex value per pixel packs (d/d Re, d/d Im).
using IntensityGradient = ComplexField;

struct PhysicsGradient {
  double loss = 0.0; // mean | |P_z{object}|^2 - measured |
  IntensityGradient gradient;
};

/// L1 intensity-mismatch loss and its Wirtinger-style gradient, computed via
/// the adjoint chain: sign(residual) -> multiply by the sensor field ->
/// back-propagate -> scale by 2/N. A small step object - eta*gradient
/// decreases the loss to first order. The L1 subgradient at zero residual
/// is taken as 0.
PhysicsGradient physics_loss_gradient(const ComplexField& object, const Hologram& measured,
                                      const OpticalConfig& config);

/// Loss value only (same reduction as physics_loss_gradient).
double physics_loss(const ComplexField& object, const Hologram& measured,
                    const OpticalConfig& config);

} // namespace holo
