#pragma once

#include <filesystem>
#include <utility>

#include "holo/benchmark.hpp"
#include "holo/simulation.hpp"

namespace holo {

/// Dataset directory layout:
///   manifest.json
///   samples/NNNNNN.f32   raw little-endian float32 arrays, row-major;
///                        complex fields as interleaved (real, imag) pairs
///   samples/NNNNNN.json  scalar metadata and array shapes/offsets
///   test/                optional external test set (independent dataset)
struct SplitIndices {
  std::vector<std::int64_t> train;
  std::vector<std::int64_t> val;
  std::vector<std::int64_t> test;
};

struct DatasetManifest {
  int version = 1;
  std::int64_t sample_count = 0;
  std::uint64_t base_seed = 0;
  std::uint64_t index_offset = 0; // substream index offset (test sets use 2^32)
  OpticalConfig config;
  ObjectParams object_params;
  std::vector<std::pair<std::string, double>> noise_distribution; // tag -> weight
  SplitIndices split;
};

void write_manifest(const std::filesystem::path& dir, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::filesystem::path& dir);

void write_sample(const std::filesystem::path& dir, const SampleRecord& record);
SampleRecord read_sample(const std::filesystem::path& dir, std::int64_t index);
std::vector<SampleRecord> load_samples(const std::filesystem::path& dir);

/// Uniform weights over all 8 noise tags.
std::vector<std::pair<std::string, double>> uniform_noise_distribution();

struct GenerateOptions {
  std::int64_t count = 200;
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
  std::int64_t test_count = 32; // external test directory; 0 disables
  OpticalConfig config;
  ObjectParams object_params;
  std::vector<std::pair<std::string, double>> noise_distribution; // empty = uniform
  int workers = 0;
};

/// Generates count samples (per-index RNG substreams, so regeneration is
/// byte-identical and independent of worker count), writes them plus the
/// manifest (last, as the commit point), and an external test set under
/// test/ drawn from a disjoint substream index range.
DatasetManifest generate_dataset(const std::filesystem::path& out_dir,
                                 const GenerateOptions& options);

/// Regenerates the record for one manifest index in memory (no files).
SampleRecord generate_record(const DatasetManifest& manifest, std::int64_t index);

enum class ExportChannel { kAmplitude, kPhase, kHologram };

ExportChannel parse_channel(const std::string& name);

/// 16-bit grayscale PNG, min-max scaled over the 1st-99th percentile window
/// (phase images additionally clipped to (-pi, pi]). Constant images map to
/// mid-gray.
void export_png(const RealImage& image, const std::filesystem::path& out_path,
                bool is_phase = false);
void export_png(const ComplexField& field, const std::filesystem::path& out_path,
                ExportChannel channel);
void export_png(const SampleRecord& record, const std::filesystem::path& out_path,
                ExportChannel channel);

// CSV outputs; column order is fixed and documented in the README.
void write_aggregate_csv(const std::filesystem::path& path,
                         const std::vector<EvaluationResult>& results);
void write_per_sample_csv(const std::filesystem::path& path,
                          const std::vector<EvaluationResult>& results);
/// One row per offset: metric means over the swept samples.
void write_sweep_csv(const std::filesystem::path& path, const std::string& method_name,
                     const std::vector<double>& offsets,
                     const std::vector<Metrics>& mean_metrics_per_offset);

} // namespace holo
