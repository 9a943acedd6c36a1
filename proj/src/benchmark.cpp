#include "holo/benchmark.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace holo {

int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HOLO_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for_index(std::int64_t count, int workers,
                        const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  const int n_threads = std::min<std::int64_t>(resolve_worker_count(workers), count);
  if (n_threads <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

MetricsAggregate aggregate_metrics(const std::vector<Metrics>& per_sample) {
  if (per_sample.empty()) throw ValidationError("aggregate_metrics requires a nonempty dataset");
  auto fields = [](Metrics& m) {
    return std::array<double*, 9>{&m.mse_amp,  &m.mse_phase,  &m.mse_complex,
                                  &m.psnr_amp, &m.psnr_phase, &m.ssim_amp,
                                  &m.ssim_phase, &m.freq_ssim, &m.bs_ratio};
  };
  MetricsAggregate agg;
  auto mean_fields = fields(agg.mean);
  auto std_fields = fields(agg.stddev);

  const double inv_n = 1.0 / static_cast<double>(per_sample.size());
  for (const Metrics& m : per_sample) {
    Metrics copy = m;
    auto values = fields(copy);
    for (std::size_t k = 0; k < values.size(); ++k) *mean_fields[k] += *values[k] * inv_n;
  }
  for (const Metrics& m : per_sample) {
    Metrics copy = m;
    auto values = fields(copy);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double d = *values[k] - *mean_fields[k];
      *std_fields[k] += d * d * inv_n;
    }
  }
  for (std::size_t k = 0; k < std_fields.size(); ++k) *std_fields[k] = std::sqrt(*std_fields[k]);
  return agg;
}

EvaluationResult evaluate_method(const MethodSpec& method,
                                 const std::vector<SampleRecord>& dataset, int workers) {
  if (dataset.empty()) throw ValidationError("evaluate_method requires a nonempty dataset");

  EvaluationResult result;
  result.method = method;
  result.sample_indices.resize(dataset.size());
  result.per_sample.resize(dataset.size());

  const auto start = std::chrono::steady_clock::now();
  parallel_for_index(static_cast<std::int64_t>(dataset.size()), workers, [&](std::int64_t i) {
    const SampleRecord& sample = dataset[static_cast<std::size_t>(i)];
    const ComplexField pred = reconstruct(method, sample.hologram_norm, sample.config);
    const BinaryMask support = object_support_mask(sample.object_spec);
    result.sample_indices[static_cast<std::size_t>(i)] = sample.index;
    result.per_sample[static_cast<std::size_t>(i)] =
        compute_metrics(pred, sample.object_gt, support);
  });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  result.aggregate = aggregate_metrics(result.per_sample);
  result.seconds_per_sample = elapsed / static_cast<double>(dataset.size());
  return result;
}

std::vector<std::pair<double, Metrics>> z_sweep(const MethodSpec& method,
                                                const SampleRecord& sample,
                                                const std::vector<double>& offsets) {
  for (double off : offsets)
    if (!std::isfinite(off)) throw ValidationError("z_sweep offsets must be finite");

  const BinaryMask support = object_support_mask(sample.object_spec);
  std::vector<std::pair<double, Metrics>> out;
  out.reserve(offsets.size());
  for (double off : offsets) {
    const OpticalConfig shifted = sample.config.with_distance(sample.config.distance_z + off);
    const ComplexField pred = reconstruct(method, sample.hologram_norm, shifted);
    out.emplace_back(off, compute_metrics(pred, sample.object_gt, support));
  }
  return out;
}

} // namespace holo
