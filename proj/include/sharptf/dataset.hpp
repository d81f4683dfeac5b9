#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sharptf/methods.hpp"
#include "sharptf/signal.hpp"

namespace sharptf {

/// splitmix64 finalizer over the seed and an FNV-1a hash of the label.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

/// Parameter ranges for randomly drawn specs. All IF laws stay inside
/// [f_min, f_max] so every drawn spec is alias-free.
struct PopulationConfig {
  Index length = kDefaultLength;
  int max_components = kMaxComponents;
  double f_min = 0.03;
  double f_max = 0.47;
  double level_min = 0.5;
  double level_max = 1.0;
  double fm_deviation_min = 0.02;
  double fm_deviation_max = 0.05;
  double fm_cycles_min = 0.5;  // modulation periods across the whole signal
  double fm_cycles_max = 2.0;
};

/// Deterministic: spec i depends only on (seed, i). Component count is
/// uniform on [1, max_components] and kinds are uniform over the four families.
std::vector<SignalSpec> sample_specs(std::uint64_t seed, std::size_t count,
                                     const PopulationConfig& population = {});

struct JitterConfig {
  double time_shift = 0.1;    // envelope shift, fraction of N (+/-)
  double freq_offset = 0.05;  // cycles/sample (+/-)
  double rate_change = 0.1;   // relative chirp-rate change (+/-)
  double amplitude_min = 0.8;
  double amplitude_max = 1.25;
  double clamp_min = 0.01;  // IF range used when an offset leaves [0, 0.5)
  double clamp_max = 0.49;

  static JitterConfig none() { return {0.0, 0.0, 0.0, 1.0, 1.0, 0.01, 0.49}; }
};

/// Perturbed copy of a valid spec; the component count never changes.
/// Returns nullopt when clamping cannot make the result alias-free, in which
/// case the caller should draw another seed.
std::optional<SignalSpec> jitter(const SignalSpec& spec, std::uint64_t seed,
                                 const JitterConfig& config = {});

struct ManifestItem {
  std::string id;
  std::string split;  // "train" or "test"
  SignalSpec spec;
  std::string input;   // paths relative to the dataset root
  std::string target;
  std::string pair;
  std::vector<std::string> augmentation;
};

struct DatasetManifest {
  int schema_version = 1;
  std::uint64_t seed = 0;
  std::size_t train = 0;
  std::size_t test = 0;
  Index image_time = 0;
  Index image_freq = 0;
  std::string normalization;
  nlohmann::json tf_config;
  std::vector<std::string> extra_methods;
  bool raw_test = false;
  std::vector<ManifestItem> items;
};

nlohmann::json to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const nlohmann::json& j);
DatasetManifest read_manifest(const std::filesystem::path& path);

struct DatasetOptions {
  std::uint64_t seed = 42;
  std::size_t train = 1320;
  std::size_t test = 120;
  std::filesystem::path out_dir;
  TfConfig tf;
  PopulationConfig population;
  JitterConfig jitter;
  std::size_t augment_factor = 11;  // each base train spec plus 10 jittered copies
  std::vector<Method> extra_methods;  // also rendered for test items
  bool raw_test = false;  // also write .tfr matrices next to test targets and extra methods
  std::size_t threads = 1;
};

/// Writes <out>/{train,test}/{input,target}/<id>.png,
/// <out>/pairs/{train,test}/<id>.png (input left, target right),
/// <out>/test/<method>/<id>.png for each extra method (plus .tfr twins of
/// those and of the test targets when raw_test is set), and
/// <out>/manifest.json. Output bytes depend only on the options.
DatasetManifest build_dataset(const DatasetOptions& options);

}  // namespace sharptf
