#pragma once

#include <functional>
#include <utility>

#include "holo/metrics.hpp"
#include "holo/reconstruction.hpp"
#include "holo/simulation.hpp"

namespace holo {

/// Worker count: explicit value if > 0, else the HOLO_WORKERS environment
/// variable, else the number of logical cores.
int resolve_worker_count(int requested = 0);

/// Runs fn(i) for i in [0, count) across workers; exceptions propagate.
/// Results are deterministic regardless of scheduling (fn writes by index).
void parallel_for_index(std::int64_t count, int workers,
                        const std::function<void(std::int64_t)>& fn);

struct MetricsAggregate {
  Metrics mean;
  Metrics stddev; // population standard deviation over samples
};

struct EvaluationResult {
  MethodSpec method;
  std::vector<std::int64_t> sample_indices;
  std::vector<Metrics> per_sample; // ordered by sample index
  MetricsAggregate aggregate;
  double seconds_per_sample = 0.0;
};

MetricsAggregate aggregate_metrics(const std::vector<Metrics>& per_sample);

/// Reconstructs every sample with the method and scores it against the clean
/// ground truth. Samples are processed in parallel and merged by index.
EvaluationResult evaluate_method(const MethodSpec& method,
                                 const std::vector<SampleRecord>& dataset, int workers = 0);

/// Re-runs the method with distance z + offset for each offset and evaluates
/// against ground truth. Output order matches the offsets list.
std::vector<std::pair<double, Metrics>> z_sweep(const MethodSpec& method,
                                                const SampleRecord& sample,
                                                const std::vector<double>& offsets);

} // namespace holo
