#include "holo/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "holo/png_io.hpp"

static_assert(std::endian::native == std::endian::little,
              "dataset files are little-endian; big-endian hosts are unsupported");

namespace holo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string sample_stem(std::int64_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06lld", static_cast<long long>(index));
  return buf;
}

fs::path bin_path(const fs::path& dir, std::int64_t index) {
  return dir / "samples" / (sample_stem(index) + ".f32");
}

fs::path meta_path(const fs::path& dir, std::int64_t index) {
  return dir / "samples" / (sample_stem(index) + ".json");
}

void append_f32(std::vector<std::uint8_t>& out, const std::vector<double>& values) {
  const std::size_t start = out.size();
  out.resize(start + values.size() * 4);
  std::uint8_t* dst = out.data() + start;
  for (double v : values) {
    const float f = static_cast<float>(v);
    std::memcpy(dst, &f, 4);
    dst += 4;
  }
}

void append_c64(std::vector<std::uint8_t>& out, const std::vector<Complex>& values) {
  const std::size_t start = out.size();
  out.resize(start + values.size() * 8);
  std::uint8_t* dst = out.data() + start;
  for (const Complex& v : values) {
    const float re = static_cast<float>(v.real());
    const float im = static_cast<float>(v.imag());
    std::memcpy(dst, &re, 4);
    std::memcpy(dst + 4, &im, 4);
    dst += 8;
  }
}

json config_to_json(const OpticalConfig& c) {
  return json{{"wavelength", c.wavelength},
              {"pixel_pitch", c.pixel_pitch},
              {"distance_z", c.distance_z},
              {"height", c.height},
              {"width", c.width}};
}

OpticalConfig config_from_json(const json& j) {
  return make_config(j.at("wavelength").get<double>(), j.at("pixel_pitch").get<double>(),
                     j.at("distance_z").get<double>(), j.at("height").get<int>(),
                     j.at("width").get<int>());
}

json noise_to_json(const NoiseConfig& n) {
  return json{{"tag", noise_tag_name(n.tag)},
              {"speckle_sigma", n.speckle_sigma},
              {"speckle_roughness", n.speckle_roughness},
              {"shot_baseline", n.shot_baseline},
              {"read_sigma", n.read_sigma},
              {"dark_lambda", n.dark_lambda}};
}

NoiseConfig noise_from_json(const json& j) {
  NoiseConfig n = NoiseConfig::from_tag_name(j.at("tag").get<std::string>());
  n.speckle_sigma = j.at("speckle_sigma").get<double>();
  n.speckle_roughness = j.at("speckle_roughness").get<double>();
  n.shot_baseline = j.at("shot_baseline").get<double>();
  n.read_sigma = j.at("read_sigma").get<double>();
  n.dark_lambda = j.at("dark_lambda").get<double>();
  return n;
}

json object_spec_to_json(const ObjectSpec& spec) {
  json ellipses = json::array();
  for (const EllipseSpec& e : spec.ellipses) {
    ellipses.push_back(json{{"center_x", e.center_x},
                            {"center_y", e.center_y},
                            {"semi_major", e.semi_major},
                            {"semi_minor", e.semi_minor},
                            {"rotation", e.rotation},
                            {"phase", e.phase},
                            {"amplitude", e.amplitude}});
  }
  return json{{"height", spec.height}, {"width", spec.width}, {"ellipses", std::move(ellipses)}};
}

ObjectSpec object_spec_from_json(const json& j) {
  ObjectSpec spec;
  spec.height = j.at("height").get<int>();
  spec.width = j.at("width").get<int>();
  for (const json& je : j.at("ellipses")) {
    EllipseSpec e;
    e.center_x = je.at("center_x").get<double>();
    e.center_y = je.at("center_y").get<double>();
    e.semi_major = je.at("semi_major").get<double>();
    e.semi_minor = je.at("semi_minor").get<double>();
    e.rotation = je.at("rotation").get<double>();
    e.phase = je.at("phase").get<double>();
    e.amplitude = je.at("amplitude").get<double>();
    spec.ellipses.push_back(e);
  }
  return spec;
}

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream stream(path, std::ios::binary | std::ios::ate);
  if (!stream) throw IoError("cannot open " + path.string());
  const std::streamsize size = stream.tellg();
  stream.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  stream.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!stream) throw IoError("failed reading " + path.string());
  return bytes;
}

void write_file_bytes(const fs::path& path, const void* data, std::size_t size) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw IoError("cannot open " + path.string() + " for writing");
  stream.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!stream) throw IoError("write failed for " + path.string());
}

void write_text_file(const fs::path& path, const std::string& text) {
  write_file_bytes(path, text.data(), text.size());
}

json load_json(const fs::path& path) {
  std::ifstream stream(path);
  if (!stream) throw IoError("cannot open " + path.string());
  json j;
  try {
    stream >> j;
  } catch (const json::exception& e) {
    throw IoError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

std::vector<double> read_f32_array(const std::vector<std::uint8_t>& bytes, std::size_t offset,
                                   std::size_t count, const std::string& name) {
  if (offset + count * 4 > bytes.size())
    throw IoError("array '" + name + "' exceeds payload size");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    float f;
    std::memcpy(&f, bytes.data() + offset + i * 4, 4);
    out[i] = static_cast<double>(f);
  }
  return out;
}

} // namespace

std::vector<std::pair<std::string, double>> uniform_noise_distribution() {
  std::vector<std::pair<std::string, double>> dist;
  for (NoiseTag tag : all_noise_tags())
    dist.emplace_back(noise_tag_name(tag), 1.0 / kNoiseTagCount);
  return dist;
}

void write_sample(const fs::path& dir, const SampleRecord& record) {
  fs::create_directories(dir / "samples");

  const int h = record.config.height;
  const int w = record.config.width;
  const std::size_t n = static_cast<std::size_t>(h) * w;

  std::vector<std::uint8_t> payload;
  payload.reserve(n * 16);
  const std::size_t off_raw = 0;
  append_f32(payload, record.hologram_raw.data);
  const std::size_t off_norm = payload.size();
  append_f32(payload, record.hologram_norm.data);
  const std::size_t off_gt = payload.size();
  append_c64(payload, record.object_gt.data);

  json meta;
  meta["version"] = 1;
  meta["index"] = record.index;
  meta["seed"] = std::to_string(record.seed);
  meta["noise"] = noise_to_json(record.noise);
  meta["config"] = config_to_json(record.config);
  meta["object_spec"] = object_spec_to_json(record.object_spec);
  meta["arrays"] = json::array({
      json{{"name", "hologram_raw"}, {"dtype", "f32"}, {"shape", {h, w}}, {"offset_bytes", off_raw}},
      json{{"name", "hologram_norm"}, {"dtype", "f32"}, {"shape", {h, w}}, {"offset_bytes", off_norm}},
      json{{"name", "object_gt"},
           {"dtype", "c64_interleaved_f32"},
           {"shape", {h, w}},
           {"offset_bytes", off_gt}},
  });

  write_file_bytes(bin_path(dir, record.index), payload.data(), payload.size());
  write_text_file(meta_path(dir, record.index), meta.dump(2) + "\n");
}

SampleRecord read_sample(const fs::path& dir, std::int64_t index) {
  const json meta = load_json(meta_path(dir, index));
  if (meta.at("version").get<int>() != 1)
    throw IoError("unsupported sample version in " + meta_path(dir, index).string());

  SampleRecord record;
  record.index = meta.at("index").get<std::int64_t>();
  record.seed = std::stoull(meta.at("seed").get<std::string>());
  record.noise = noise_from_json(meta.at("noise"));
  record.config = config_from_json(meta.at("config"));
  record.object_spec = object_spec_from_json(meta.at("object_spec"));

  const int h = record.config.height;
  const int w = record.config.width;
  const std::size_t n = static_cast<std::size_t>(h) * w;
  const std::vector<std::uint8_t> payload = read_file_bytes(bin_path(dir, index));

  bool have_raw = false, have_norm = false, have_gt = false;
  for (const json& ja : meta.at("arrays")) {
    const std::string name = ja.at("name").get<std::string>();
    const auto shape = ja.at("shape").get<std::vector<int>>();
    if (shape.size() != 2 || shape[0] != h || shape[1] != w)
      throw IoError("array '" + name + "' shape does not match config dimensions");
    const std::size_t offset = ja.at("offset_bytes").get<std::size_t>();
    const std::string dtype = ja.at("dtype").get<std::string>();
    if (name == "hologram_raw" || name == "hologram_norm") {
      if (dtype != "f32") throw IoError("array '" + name + "' has unexpected dtype " + dtype);
      Hologram holo(h, w, read_f32_array(payload, offset, n, name));
      (name == "hologram_raw" ? record.hologram_raw : record.hologram_norm) = std::move(holo);
      (name == "hologram_raw" ? have_raw : have_norm) = true;
    } else if (name == "object_gt") {
      if (dtype != "c64_interleaved_f32")
        throw IoError("array 'object_gt' has unexpected dtype " + dtype);
      const std::vector<double> interleaved = read_f32_array(payload, offset, 2 * n, name);
      std::vector<Complex> values(n);
      for (std::size_t i = 0; i < n; ++i)
        values[i] = Complex{interleaved[2 * i], interleaved[2 * i + 1]};
      record.object_gt = ComplexField(h, w, std::move(values));
      have_gt = true;
    } else {
      throw IoError("unknown array '" + name + "' in sample metadata");
    }
  }
  if (!have_raw || !have_norm || !have_gt)
    throw IoError("sample " + sample_stem(index) + " is missing a required array");
  return record;
}

void write_manifest(const fs::path& dir, const DatasetManifest& manifest) {
  json dist = json::object();
  for (const auto& [tag, weight] : manifest.noise_distribution) dist[tag] = weight;
  json j;
  j["version"] = manifest.version;
  j["sample_count"] = manifest.sample_count;
  j["base_seed"] = std::to_string(manifest.base_seed);
  j["index_offset"] = std::to_string(manifest.index_offset);
  j["config"] = config_to_json(manifest.config);
  j["object_params"] = json{{"min_objects", manifest.object_params.min_objects},
                            {"max_objects", manifest.object_params.max_objects}};
  j["noise_distribution"] = std::move(dist);
  j["split"] = json{{"train", manifest.split.train},
                    {"val", manifest.split.val},
                    {"test", manifest.split.test}};
  write_text_file(dir / "manifest.json", j.dump(2) + "\n");
}

DatasetManifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / "manifest.json";
  if (!fs::exists(path)) throw IoError("no manifest.json in " + dir.string());
  const json j = load_json(path);
  DatasetManifest m;
  m.version = j.at("version").get<int>();
  if (m.version != 1) throw IoError("unsupported manifest version in " + path.string());
  m.sample_count = j.at("sample_count").get<std::int64_t>();
  m.base_seed = std::stoull(j.at("base_seed").get<std::string>());
  m.index_offset = std::stoull(j.at("index_offset").get<std::string>());
  m.config = config_from_json(j.at("config"));
  m.object_params.min_objects = j.at("object_params").at("min_objects").get<int>();
  m.object_params.max_objects = j.at("object_params").at("max_objects").get<int>();
  for (const auto& [tag, weight] : j.at("noise_distribution").items())
    m.noise_distribution.emplace_back(tag, weight.get<double>());
  std::sort(m.noise_distribution.begin(), m.noise_distribution.end());
  m.split.train = j.at("split").at("train").get<std::vector<std::int64_t>>();
  m.split.val = j.at("split").at("val").get<std::vector<std::int64_t>>();
  m.split.test = j.at("split").at("test").get<std::vector<std::int64_t>>();
  return m;
}

std::vector<SampleRecord> load_samples(const fs::path& dir) {
  const DatasetManifest manifest = read_manifest(dir);
  std::vector<SampleRecord> samples;
  samples.reserve(static_cast<std::size_t>(manifest.sample_count));
  for (std::int64_t i = 0; i < manifest.sample_count; ++i)
    samples.push_back(read_sample(dir, i));
  return samples;
}

SampleRecord generate_record(const DatasetManifest& manifest, std::int64_t index) {
  if (index < 0 || index >= manifest.sample_count)
    throw ValidationError("sample index out of range");
  SeededRng rng =
      SeededRng(manifest.base_seed).substream(manifest.index_offset + static_cast<std::uint64_t>(index));

  // first draw selects the noise tag from the manifest distribution
  double total = 0.0;
  for (const auto& [tag, weight] : manifest.noise_distribution) {
    if (weight < 0.0) throw ValidationError("noise distribution weight must be >= 0");
    total += weight;
  }
  if (total <= 0.0) throw ValidationError("noise distribution weights sum to zero");
  const double draw = rng.uniform() * total;
  double cumulative = 0.0;
  std::string chosen = manifest.noise_distribution.back().first;
  for (const auto& [tag, weight] : manifest.noise_distribution) {
    cumulative += weight;
    if (draw < cumulative) {
      chosen = tag;
      break;
    }
  }

  SampleRecord record = simulate_sample(rng, manifest.config, NoiseConfig::from_tag_name(chosen),
                                        manifest.object_params);
  record.index = index;
  return record;
}

DatasetManifest generate_dataset(const fs::path& out_dir, const GenerateOptions& options) {
  if (options.count <= 0) throw ValidationError("empty dataset: count must be > 0");
  if (options.train_fraction < 0.0 || options.train_fraction > 1.0)
    throw ValidationError("train_fraction must be in [0, 1]");

  DatasetManifest manifest;
  manifest.sample_count = options.count;
  manifest.base_seed = options.seed;
  manifest.index_offset = 0;
  manifest.config = options.config;
  manifest.object_params = options.object_params;
  manifest.noise_distribution =
      options.noise_distribution.empty() ? uniform_noise_distribution()
                                         : options.noise_distribution;
  std::sort(manifest.noise_distribution.begin(), manifest.noise_distribution.end());

  const auto train_count =
      static_cast<std::int64_t>(std::llround(options.train_fraction * options.count));
  for (std::int64_t i = 0; i < options.count; ++i)
    (i < train_count ? manifest.split.train : manifest.split.val).push_back(i);

  fs::create_directories(out_dir / "samples");
  parallel_for_index(options.count, options.workers, [&](std::int64_t i) {
    write_sample(out_dir, generate_record(manifest, i));
  });
  write_manifest(out_dir, manifest); // manifest last: commit point

  if (options.test_count > 0) {
    DatasetManifest test_manifest = manifest;
    test_manifest.sample_count = options.test_count;
    test_manifest.index_offset = std::uint64_t{1} << 32; // disjoint seed space
    test_manifest.split = {};
    for (std::int64_t i = 0; i < options.test_count; ++i) test_manifest.split.test.push_back(i);

    const fs::path test_dir = out_dir / "test";
    fs::create_directories(test_dir / "samples");
    parallel_for_index(options.test_count, options.workers, [&](std::int64_t i) {
      write_sample(test_dir, generate_record(test_manifest, i));
    });
    write_manifest(test_dir, test_manifest);
  }
  return manifest;
}

ExportChannel parse_channel(const std::string& name) {
  if (name == "amplitude") return ExportChannel::kAmplitude;
  if (name == "phase") return ExportChannel::kPhase;
  if (name == "hologram") return ExportChannel::kHologram;
  throw ValidationError("unknown channel: " + name + " (expected amplitude, phase or hologram)");
}

namespace {

double percentile(std::vector<double> sorted, double q) {
  // linear interpolation between closest ranks; `sorted` must be sorted
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

void export_png(const RealImage& image, const fs::path& out_path, bool is_phase) {
  std::vector<double> sorted = image.data;
  std::sort(sorted.begin(), sorted.end());
  double lo = percentile(sorted, 0.01);
  double hi = percentile(sorted, 0.99);
  if (is_phase) {
    lo = std::max(lo, -std::numbers::pi);
    hi = std::min(hi, std::numbers::pi);
  }

  std::vector<std::uint16_t> pixels(image.data.size());
  if (!(hi > lo)) {
    std::fill(pixels.begin(), pixels.end(), static_cast<std::uint16_t>(32768));
  } else {
    const double scale = 65535.0 / (hi - lo);
    for (std::size_t i = 0; i < image.data.size(); ++i) {
      const double v = std::clamp((image.data[i] - lo) * scale, 0.0, 65535.0);
      pixels[i] = static_cast<std::uint16_t>(std::lround(v));
    }
  }
  write_png_gray16(out_path, image.width, image.height, pixels);
}

void export_png(const ComplexField& field, const fs::path& out_path, ExportChannel channel) {
  switch (channel) {
    case ExportChannel::kAmplitude:
      export_png(amplitude_image(field), out_path, false);
      return;
    case ExportChannel::kPhase:
      export_png(phase_image(field), out_path, true);
      return;
    case ExportChannel::kHologram:
      throw ValidationError("hologram channel requires a SampleRecord");
  }
}

void export_png(const SampleRecord& record, const fs::path& out_path, ExportChannel channel) {
  switch (channel) {
    case ExportChannel::kAmplitude:
      export_png(amplitude_image(record.object_gt), out_path, false);
      return;
    case ExportChannel::kPhase:
      export_png(phase_image(record.object_gt), out_path, true);
      return;
    case ExportChannel::kHologram:
      export_png(hologram_image(record.hologram_norm), out_path, false);
      return;
  }
}

namespace {

constexpr const char* kMetricColumns =
    "mse_amp,mse_phase,mse_complex,psnr_amp,psnr_phase,ssim_amp,ssim_phase,freq_ssim,bs_ratio";

void append_metrics(std::ostringstream& out, const Metrics& m) {
  const double values[] = {m.mse_amp,  m.mse_phase,  m.mse_complex,
                           m.psnr_amp, m.psnr_phase, m.ssim_amp,
                           m.ssim_phase, m.freq_ssim, m.bs_ratio};
  char buf[32];
  for (double v : values) {
    std::snprintf(buf, sizeof(buf), ",%.9g", v);
    out << buf;
  }
}

} // namespace

void write_aggregate_csv(const fs::path& path, const std::vector<EvaluationResult>& results) {
  std::ostringstream out;
  out << "method," << kMetricColumns << ",";
  {
    // *_std columns mirror the mean columns
    std::string std_cols = kMetricColumns;
    std::string with_suffix;
    std::istringstream split(std_cols);
    std::string col;
    bool first = true;
    while (std::getline(split, col, ',')) {
      if (!first) with_suffix += ',';
      with_suffix += col + "_std";
      first = false;
    }
    out << with_suffix;
  }
  out << ",seconds_per_sample\n";
  for (const EvaluationResult& r : results) {
    out << r.method.name();
    append_metrics(out, r.aggregate.mean);
    append_metrics(out, r.aggregate.stddev);
    char buf[32];
    std::snprintf(buf, sizeof(buf), ",%.9g", r.seconds_per_sample);
    out << buf << "\n";
  }
  write_text_file(path, out.str());
}

void write_per_sample_csv(const fs::path& path, const std::vector<EvaluationResult>& results) {
  std::ostringstream out;
  out << "method,sample_index," << kMetricColumns << "\n";
  for (const EvaluationResult& r : results) {
    for (std::size_t i = 0; i < r.per_sample.size(); ++i) {
      out << r.method.name() << "," << r.sample_indices[i];
      append_metrics(out, r.per_sample[i]);
      out << "\n";
    }
  }
  write_text_file(path, out.str());
}

void write_sweep_csv(const fs::path& path, const std::string& method_name,
                     const std::vector<double>& offsets,
                     const std::vector<Metrics>& mean_metrics_per_offset) {
  if (offsets.size() != mean_metrics_per_offset.size())
    throw ValidationError("sweep csv: offsets and metrics size mismatch");
  std::ostringstream out;
  out << "method,offset_m," << kMetricColumns << "\n";
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", offsets[i]);
    out << method_name << "," << buf;
    append_metrics(out, mean_metrics_per_offset[i]);
    out << "\n";
  }
  write_text_file(path, out.str());
}

} // namespace holo
