// holo: dataset generation, reconstruction and benchmarking for inline
// digital holography.
//
// Exit codes: 0 success, 1 verification/internal failure, 2 bad arguments or
// unknown method, 3 missing or unreadable dataset, 4 config file parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "holo/benchmark.hpp"
#include "holo/dataset.hpp"
#include "holo/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;

struct ConfigFile {
  json values = json::object();

  static ConfigFile load(const std::string& path) {
    ConfigFile cf;
    if (path.empty()) return cf;
    std::ifstream stream(path);
    if (!stream) throw holo::IoError("cannot open config file " + path);
    try {
      stream >> cf.values;
    } catch (const json::exception& e) {
      throw std::domain_error("config parse failure in " + path + ": " + e.what());
    }
    return cf;
  }

  // flags win over config-file values, which win over defaults
  template <typename T>
  void apply(const CLI::Option* opt, const char* key, T& value) const {
    if (opt->count() > 0) return;
    if (auto it = values.find(key); it != values.end()) value = it->get<T>();
  }
};

std::vector<std::pair<std::string, double>> parse_noise_dist(const std::string& text) {
  if (text.empty() || text == "uniform") return holo::uniform_noise_distribution();
  std::vector<std::pair<std::string, double>> dist;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto colon = item.find(':');
    const std::string tag = colon == std::string::npos ? item : item.substr(0, colon);
    const double weight = colon == std::string::npos ? 1.0 : std::stod(item.substr(colon + 1));
    holo::noise_tag_from_name(tag); // validates
    dist.emplace_back(tag, weight);
  }
  if (dist.empty()) throw holo::ValidationError("empty --noise-dist");
  return dist;
}

std::vector<double> parse_offsets(const std::string& text) {
  std::vector<double> offsets;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) offsets.push_back(std::stod(item));
  if (offsets.empty()) throw holo::ValidationError("empty --offsets");
  return offsets;
}

std::vector<holo::SampleRecord> load_dataset_or_die(const std::string& dir) {
  if (!fs::exists(fs::path(dir) / "manifest.json"))
    throw holo::IoError("missing dataset: no manifest.json under " + dir);
  return holo::load_samples(dir);
}

void write_field_f32(const fs::path& path, const holo::ComplexField& field) {
  std::vector<float> interleaved;
  interleaved.reserve(field.data.size() * 2);
  for (const holo::Complex& v : field.data) {
    interleaved.push_back(static_cast<float>(v.real()));
    interleaved.push_back(static_cast<float>(v.imag()));
  }
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw holo::IoError("cannot open " + path.string() + " for writing");
  stream.write(reinterpret_cast<const char*>(interleaved.data()),
               static_cast<std::streamsize>(interleaved.size() * sizeof(float)));

  json meta{{"dtype", "c64_interleaved_f32"},
            {"shape", {field.height, field.width}},
            {"layout", "row_major"}};
  std::ofstream meta_stream(path.string() + ".json");
  meta_stream << meta.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inline digital holography toolkit"};
  app.require_subcommand(1);

  // ---- generate
  auto* generate = app.add_subcommand("generate", "Generate a synthetic hologram dataset");
  std::int64_t g_count = 200;
  std::uint64_t g_seed = 0;
  std::string g_out = "dataset";
  std::string g_noise_dist;
  std::int64_t g_test_count = 32;
  std::string g_config_path;
  int g_workers = 0;
  double g_wavelength = 532e-9, g_pitch = 4.65e-6, g_z = 20e-3;
  int g_height = 224, g_width = 224, g_min_objects = 1, g_max_objects = 8;
  double g_train_fraction = 0.8;
  auto* o_count = generate->add_option("--count", g_count, "Sample count");
  auto* o_seed = generate->add_option("--seed", g_seed, "Base seed");
  generate->add_option("--out", g_out, "Output directory")->required();
  auto* o_noise = generate->add_option("--noise-dist", g_noise_dist,
                                       "uniform or tag:weight list, e.g. clean:1,shot:3");
  auto* o_test = generate->add_option("--test-count", g_test_count,
                                      "External test set size (0 disables)");
  generate->add_option("--config", g_config_path, "JSON config file (flags win)");
  auto* o_workers = generate->add_option("--workers", g_workers, "Worker threads (0 = auto)");
  auto* o_wl = generate->add_option("--wavelength", g_wavelength, "Wavelength in meters");
  auto* o_pp = generate->add_option("--pixel-pitch", g_pitch, "Pixel pitch in meters");
  auto* o_z = generate->add_option("--distance-z", g_z, "Propagation distance in meters");
  auto* o_h = generate->add_option("--height", g_height, "Grid height in pixels");
  auto* o_w = generate->add_option("--width", g_width, "Grid width in pixels");
  auto* o_minob = generate->add_option("--min-objects", g_min_objects, "Min ellipses per sample");
  auto* o_maxob = generate->add_option("--max-objects", g_max_objects, "Max ellipses per sample");
  auto* o_tf = generate->add_option("--train-fraction", g_train_fraction, "Train split fraction");

  // ---- reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct every dataset sample");
  std::string r_dataset, r_out, r_method = "dirty";
  int r_workers = 0;
  reconstruct->add_option("--dataset", r_dataset, "Dataset directory")->required();
  reconstruct->add_option("--out", r_out, "Output directory")->required();
  reconstruct->add_option("--method", r_method, "dirty | gs:ITERS | grad:STEPS");
  reconstruct->add_option("--workers", r_workers, "Worker threads (0 = auto)");

  // ---- evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score methods against ground truth");
  std::string e_dataset, e_out = ".", e_methods = "dirty,gs:50,gs:100";
  int e_workers = 0;
  evaluate->add_option("--dataset", e_dataset, "Dataset directory")->required();
  evaluate->add_option("--out", e_out, "Output directory for CSVs");
  evaluate->add_option("--methods", e_methods, "Comma-separated method list");
  evaluate->add_option("--workers", e_workers, "Worker threads (0 = auto)");

  // ---- sweep-z
  auto* sweep = app.add_subcommand("sweep-z", "Evaluate under propagation-distance mismatch");
  std::string s_dataset, s_out = ".", s_method = "dirty";
  std::string s_offsets = "-1e-3,-5e-4,0,5e-4,1e-3";
  sweep->add_option("--dataset", s_dataset, "Dataset directory")->required();
  sweep->add_option("--out", s_out, "Output directory for sweep_z.csv");
  sweep->add_option("--method", s_method, "dirty | gs:ITERS | grad:STEPS");
  sweep->add_option("--offsets", s_offsets, "Comma-separated offsets in meters");

  // ---- verify
  auto* verify = app.add_subcommand("verify", "Run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      const ConfigFile cf = ConfigFile::load(g_config_path);
      cf.apply(o_count, "count", g_count);
      cf.apply(o_seed, "seed", g_seed);
      cf.apply(o_noise, "noise_dist", g_noise_dist);
      cf.apply(o_test, "test_count", g_test_count);
      cf.apply(o_workers, "workers", g_workers);
      cf.apply(o_wl, "wavelength", g_wavelength);
      cf.apply(o_pp, "pixel_pitch", g_pitch);
      cf.apply(o_z, "distance_z", g_z);
      cf.apply(o_h, "height", g_height);
      cf.apply(o_w, "width", g_width);
      cf.apply(o_minob, "min_objects", g_min_objects);
      cf.apply(o_maxob, "max_objects", g_max_objects);
      cf.apply(o_tf, "train_fraction", g_train_fraction);

      holo::GenerateOptions options;
      options.count = g_count;
      options.seed = g_seed;
      options.train_fraction = g_train_fraction;
      options.test_count = g_test_count;
      options.config = holo::make_config(g_wavelength, g_pitch, g_z, g_height, g_width);
      options.object_params = {g_min_objects, g_max_objects};
      options.noise_distribution = parse_noise_dist(g_noise_dist);
      options.workers = g_workers;
      holo::generate_dataset(g_out, options);
      std::printf("wrote %lld samples to %s", static_cast<long long>(g_count), g_out.c_str());
      if (g_test_count > 0)
        std::printf(" (+ %lld test samples)", static_cast<long long>(g_test_count));
      std::printf("\n");
      return kExitOk;
    }

    if (reconstruct->parsed()) {
      const holo::MethodSpec method = holo::parse_method(r_method);
      const auto samples = load_dataset_or_die(r_dataset);
      fs::create_directories(r_out);
      holo::parallel_for_index(static_cast<std::int64_t>(samples.size()), r_workers,
                               [&](std::int64_t i) {
        const holo::SampleRecord& sample = samples[static_cast<std::size_t>(i)];
        const holo::ComplexField field =
            holo::reconstruct(method, sample.hologram_norm, sample.config);
        char stem[32];
        std::snprintf(stem, sizeof(stem), "%06lld", static_cast<long long>(sample.index));
        write_field_f32(fs::path(r_out) / (std::string(stem) + "_field.f32"), field);
        holo::export_png(field, fs::path(r_out) / (std::string(stem) + "_amplitude.png"),
                         holo::ExportChannel::kAmplitude);
        holo::export_png(field, fs::path(r_out) / (std::string(stem) + "_phase.png"),
                         holo::ExportChannel::kPhase);
      });
      std::printf("reconstructed %zu samples with %s into %s\n", samples.size(),
                  method.name().c_str(), r_out.c_str());
      return kExitOk;
    }

    if (evaluate->parsed()) {
      const auto samples = load_dataset_or_die(e_dataset);
      std::vector<holo::EvaluationResult> results;
      std::istringstream stream(e_methods);
      std::string item;
      while (std::getline(stream, item, ',')) {
        const holo::MethodSpec method = holo::parse_method(item);
        results.push_back(holo::evaluate_method(method, samples, e_workers));
        const holo::Metrics& m = results.back().aggregate.mean;
        std::printf("%-10s psnr_phase=%6.2f ssim_amp=%.4f bs_ratio=%.4f (%.1f ms/sample)\n",
                    method.name().c_str(), m.psnr_phase, m.ssim_amp, m.bs_ratio,
                    1e3 * results.back().seconds_per_sample);
      }
      fs::create_directories(e_out);
      holo::write_aggregate_csv(fs::path(e_out) / "metrics_aggregate.csv", results);
      holo::write_per_sample_csv(fs::path(e_out) / "metrics_per_sample.csv", results);
      return kExitOk;
    }

    if (sweep->parsed()) {
      const holo::MethodSpec method = holo::parse_method(s_method);
      const auto offsets = parse_offsets(s_offsets);
      const auto samples = load_dataset_or_die(s_dataset);

      std::vector<holo::Metrics> means(offsets.size());
      std::vector<std::vector<holo::Metrics>> per_offset(offsets.size());
      for (const holo::SampleRecord& sample : samples) {
        const auto swept = holo::z_sweep(method, sample, offsets);
        for (std::size_t k = 0; k < swept.size(); ++k)
          per_offset[k].push_back(swept[k].second);
      }
      for (std::size_t k = 0; k < offsets.size(); ++k)
        means[k] = holo::aggregate_metrics(per_offset[k]).mean;

      fs::create_directories(s_out);
      holo::write_sweep_csv(fs::path(s_out) / "sweep_z.csv", method.name(), offsets, means);
      for (std::size_t k = 0; k < offsets.size(); ++k)
        std::printf("offset %+9.2e m: psnr_phase=%6.2f dB\n", offsets[k], means[k].psnr_phase);
      return kExitOk;
    }

    if (verify->parsed()) {
      const auto results = holo::run_verification();
      bool ok = true;
      for (const holo::CheckResult& r : results) {
        std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        ok = ok && r.passed;
      }
      std::printf("%s\n", ok ? "verification passed" : "verification FAILED");
      return ok ? kExitOk : kExitFailure;
    }
  } catch (const std::domain_error& e) { // config parse failure
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const holo::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const holo::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
