#include "holo/reconstruction.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

namespace holo {

namespace {

ComplexField sqrt_amplitude_field(const Hologram& hologram) {
  ComplexField amp(hologram.height, hologram.width);
  for (std::size_t i = 0; i < hologram.data.size(); ++i)
    amp.data[i] = Complex{std::sqrt(std::max(0.0, hologram.data[i])), 0.0};
  return amp;
}

} // namespace

ComplexField dirty_reconstruct(const Hologram& hologram_normalized,
                               const OpticalConfig& config) {
  ensure_same_shape(hologram_normalized.height, hologram_normalized.width, config.height,
                    config.width, "dirty_reconstruct");
  return back_propagate(sqrt_amplitude_field(hologram_normalized), config, config.distance_z);
}

ComplexField clamp_object_amplitude(const ComplexField& field) {
  ComplexField out = field;
  for (Complex& v : out.data) {
    const double a = std::abs(v);
    if (a > 1.0) v /= a;
  }
  return out;
}

TwinDecomposition twin_decompose(const ComplexField& object, const OpticalConfig& config) {
  ensure_same_shape(object.height, object.width, config.height, config.width, "twin_decompose");

  ComplexField perturbation(object.height, object.width);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < object.data.size(); ++i) {
    perturbation.data[i] = object.data[i] - 1.0;
    max_abs = std::max(max_abs, std::abs(perturbation.data[i]));
  }
  if (max_abs >= 0.5)
    throw ValidationError("twin_decompose requires the weak-object regime max|O-1| < 0.5, got " +
                          std::to_string(max_abs));

  const double z = config.distance_z;
  const double kz = config.wavenumber() * z;
  const Complex carrier{std::cos(kz), std::sin(kz)}; // exp(+j k z)

  // Full nonlinear pipeline: propagate -> intensity -> sqrt -> back-propagate,
  // then reference to the carrier so the background term is exactly 1.
  const Hologram intensity = forward_intensity(object, config);
  ComplexField recon = back_propagate(sqrt_amplitude_field(intensity), config, z);
  for (Complex& v : recon.data) v *= carrier;

  TwinDecomposition out;
  out.dc = Complex{1.0, 0.0};
  out.reconstruction = recon;

  out.true_term = perturbation;
  for (Complex& v : out.true_term.data) v *= 0.5;

  ComplexField conj_perturbation(object.height, object.width);
  for (std::size_t i = 0; i < perturbation.data.size(); ++i)
    conj_perturbation.data[i] = std::conj(perturbation.data[i]);
  out.twin_term = propagate(conj_perturbation, config, -2.0 * z);
  const Complex twin_carrier = carrier * carrier; // exp(+2 j k z)
  for (Complex& v : out.twin_term.data) v *= 0.5 * twin_carrier;

  out.residual = ComplexField(object.height, object.width);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < recon.data.size(); ++i) {
    const Complex r =
        recon.data[i] - out.dc - out.true_term.data[i] - out.twin_term.data[i];
    out.residual.data[i] = r;
    norm_sq += std::norm(r);
  }
  out.residual_norm = std::sqrt(norm_sq);
  return out;
}

SolverReport gerchberg_saxton(const Hologram& hologram_normalized, const OpticalConfig& config,
                              int iterations) {
  if (iterations < 1) throw ValidationError("gerchberg_saxton requires iterations >= 1");
  ensure_same_shape(hologram_normalized.height, hologram_normalized.width, config.height,
                    config.width, "gerchberg_saxton");
  const auto start = std::chrono::steady_clock::now();

  const double z = config.distance_z;
  const ComplexField target = sqrt_amplitude_field(hologram_normalized);
  const std::size_t n = target.data.size();

  ComplexField x = clamp_object_amplitude(dirty_reconstruct(hologram_normalized, config));

  SolverReport report;
  report.iterations = iterations;
  report.objective_trace.reserve(iterations + 1);

  ComplexField sensor = propagate(x, config, z);
  auto objective = [&](const ComplexField& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += std::abs(std::abs(s.data[i]) - target.data[i].real());
    return acc / static_cast<double>(n);
  };
  report.objective_trace.push_back(objective(sensor));

  for (int it = 0; it < iterations; ++it) {
    // sensor-plane projection: keep phase, impose measured magnitude
    ComplexField projected(sensor.height, sensor.width);
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(sensor.data[i]);
      projected.data[i] =
          mag > 0.0 ? sensor.data[i] * (target.data[i].real() / mag) : target.data[i];
    }
    x = clamp_object_amplitude(back_propagate(projected, config, z));
    sensor = propagate(x, config, z);
    report.objective_trace.push_back(objective(sensor));
  }

  report.final_field = std::move(x);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolverReport gradient_refine(const Hologram& hologram_normalized, const OpticalConfig& config,
                             const ComplexField& init, int steps, double step_size) {
  if (steps < 1) throw ValidationError("gradient_refine requires steps >= 1");
  if (!(step_size > 0.0)) throw ValidationError("gradient_refine requires step_size > 0");
  ensure_same_shape(init.height, init.width, config.height, config.width, "gradient_refine");
  const auto start = std::chrono::steady_clock::now();

  ComplexField x = init;
  PhysicsGradient state = physics_loss_gradient(x, hologram_normalized, config);
  if (!std::isfinite(state.loss))
    throw ValidationError("gradient_refine diverged: non-finite loss at step 0");

  SolverReport report;
  report.iterations = steps;
  report.objective_trace.reserve(steps + 1);
  report.objective_trace.push_back(state.loss);

  ComplexField best = x;
  double best_loss = state.loss;
  double eta = step_size;
  constexpr int kMaxHalvings = 30;

  for (int step = 1; step <= steps; ++step) {
    bool moved = false;
    for (int attempt = 0; attempt < kMaxHalvings; ++attempt) {
      ComplexField candidate = x;
      for (std::size_t i = 0; i < candidate.data.size(); ++i)
        candidate.data[i] -= eta * state.gradient.data[i];
      PhysicsGradient next = physics_loss_gradient(candidate, hologram_normalized, config);
      if (!std::isfinite(next.loss))
        throw ValidationError("gradient_refine diverged: non-finite loss at step " +
                              std::to_string(step));
      if (next.loss < state.loss) {
        x = std::move(candidate);
        state = std::move(next);
        eta *= 1.5;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    report.objective_trace.push_back(state.loss);
    if (moved && state.loss < best_loss) {
      best = x;
      best_loss = state.loss;
    }
  }

  report.final_field = std::move(best);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double suggest_step_size(const Hologram& hologram_normalized, const OpticalConfig& config,
                         const ComplexField& init) {
  const PhysicsGradient g = physics_loss_gradient(init, hologram_normalized, config);
  double grad_ms = 0.0;
  for (const Complex& v : g.gradient.data) grad_ms += std::norm(v);
  grad_ms /= static_cast<double>(g.gradient.data.size());
  if (!(grad_ms > 0.0) || !(g.loss > 0.0))
    return 1.0; // already at a stationary point; any step works
  return 0.5 * g.loss / grad_ms;
}

std::string MethodSpec::name() const {
  switch (kind) {
    case Kind::kDirty: return "dirty";
    case Kind::kGerchbergSaxton: return "gs:" + std::to_string(iterations);
    case Kind::kGradientRefine: return "grad:" + std::to_string(iterations);
  }
  return "unknown";
}

MethodSpec parse_method(std::string_view text) {
  MethodSpec m;
  if (text == "dirty") {
    m.kind = MethodSpec::Kind::kDirty;
    return m;
  }
  auto parse_count = [&](std::string_view suffix, int min_value) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), value);
    if (ec != std::errc{} || ptr != suffix.data() + suffix.size() || value < min_value)
      throw ValidationError("invalid method iteration count: " + std::string(text));
    return value;
  };
  if (text.rfind("gs:", 0) == 0) {
    m.kind = MethodSpec::Kind::kGerchbergSaxton;
    m.iterations = parse_count(text.substr(3), 1);
    return m;
  }
  if (text.rfind("grad:", 0) == 0) {
    m.kind = MethodSpec::Kind::kGradientRefine;
    m.iterations = parse_count(text.substr(5), 1);
    return m;
  }
  throw ValidationError("unknown method: " + std::string(text) +
                        " (expected dirty, gs:ITERS or grad:STEPS)");
}

ComplexField reconstruct(const MethodSpec& method, const Hologram& hologram_normalized,
                         const OpticalConfig& config) {
  switch (method.kind) {
    case MethodSpec::Kind::kDirty:
      return dirty_reconstruct(hologram_normalized, config);
    case MethodSpec::Kind::kGerchbergSaxton:
      return gerchberg_saxton(hologram_normalized, config, method.iterations).final_field;
    case MethodSpec::Kind::kGradientRefine: {
      const ComplexField init =
          clamp_object_amplitude(dirty_reconstruct(hologram_normalized, config));
      const double step = suggest_step_size(hologram_normalized, config, init);
      return gradient_refine(hologram_normalized, config, init, method.iterations, step)
          .final_field;
    }
  }
  throw ValidationError("unknown method kind");
}

} // namespace holo
