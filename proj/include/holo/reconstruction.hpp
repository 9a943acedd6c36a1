#pragma once

#include <string>
#include <string_view>

#include "holo/propagation.hpp"
#include "holo/types.hpp"

namespace holo {

/// "Dirty" reconstruction: back-propagates sqrt(H) taken as a real field with
/// flat phase. The result superimposes the focused object, its defocused twin
/// and the background, and carries the raw carrier phase exp(-j k z).
ComplexField dirty_reconstruct(const Hologram& hologram_normalized, const OpticalConfig& config);

/// First-order decomposition of the dirty reconstruction of a weak object
/// O = 1 + o. The reconstruction is phase-referenced to the plane-wave
/// carrier (multiplied by exp(+j k z)) so that the background term is exactly
/// 1; in that convention
///   U_rec ~= 1 + o/2 + twin,   twin = exp(2jkz) P_{-2z}{conj(o)} / 2,
/// and the residual is second order in o.
struct TwinDecomposition {
  Complex dc{1.0, 0.0};       // analytic background term
  ComplexField true_term;     // o / 2, exactly (O - 1)/2
  ComplexField twin_term;     // defocused conjugate, carrier-referenced
  ComplexField reconstruction; // carrier-referenced U_rec from the full pipeline
  ComplexField residual;      // reconstruction - dc - true_term - twin_term
  double residual_norm = 0.0; // l2 norm of residual
};

/// Requires the weak-object regime max|O - 1| < 0.5.
TwinDecomposition twin_decompose(const ComplexField& object, const OpticalConfig& config);

/// Projection onto the weak-absorber object constraint: amplitudes above 1
/// are scaled back to 1, phase kept.
ComplexField clamp_object_amplitude(const ComplexField& field);

struct SolverReport {
  int iterations = 0;
  std::vector<double> objective_trace; // length iterations + 1 (includes initial value)
  ComplexField final_field;
  double wall_time_seconds = 0.0;
};

/// Gerchberg-Saxton alternating projections. Sensor plane: replace magnitude
/// with sqrt(H), keep phase. Object plane: clamp amplitude to [0, 1], keep
/// phase. Starts from the object-plane projection of the dirty
/// reconstruction, so every iterate (including iteration 0) satisfies the
/// object constraint. The trace records mean| |P_z{x}| - sqrt(H) |.
SolverReport gerchberg_saxton(const Hologram& hologram_normalized, const OpticalConfig& config,
                              int iterations);

/// Plain gradient descent on the physics loss with a halving line search:
/// each step backtracks from the current step size until the loss decreases,
/// growing the step on success. Returns the best-seen field. Throws
/// ValidationError naming the step if the loss turns non-finite.
SolverReport gradient_refine(const Hologram& hologram_normalized, const OpticalConfig& config,
                             const ComplexField& init, int steps, double step_size);

/// Picks a usable initial step size for gradient_refine from the loss and
/// gradient at `init` (Cauchy-like scaling; the line search adapts from there).
double suggest_step_size(const Hologram& hologram_normalized, const OpticalConfig& config,
                         const ComplexField& init);

/// Benchmark method selector: "dirty", "gs:ITERS" or "grad:STEPS".
struct MethodSpec {
  enum class Kind { kDirty, kGerchbergSaxton, kGradientRefine };
  Kind kind = Kind::kDirty;
  int iterations = 0;

  std::string name() const;
};

MethodSpec parse_method(std::string_view text); // throws ValidationError on unknown method

/// Runs the selected method. "grad" initializes from the amplitude-clamped
/// dirty field with an auto-selected step size.
ComplexField reconstruct(const MethodSpec& method, const Hologram& hologram_normalized,
                         const OpticalConfig& config);

} // namespace holo
