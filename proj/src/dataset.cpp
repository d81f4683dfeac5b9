#include "sharptf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "sharptf/ideal.hpp"
#include "sharptf/image.hpp"
#include "sharptf/io.hpp"
#include "sharptf/parallel.hpp"

namespace sharptf {

using nlohmann::json;

namespace {

// mt19937_64 output is fixed by the standard; the mappings to doubles and
// integers below are ours, so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComponentSpec sample_component(Rng& rng, const PopulationConfig& pop) {
  const double n = static_cast<double>(pop.length);
  ComponentSpec c;
  c.kind = static_cast<ComponentKind>(rng.integer(0, 3));
  const double level = rng.uniform(pop.level_min, pop.level_max);

  if (c.kind == ComponentKind::GaussianAtom) {
    c.envelope = GaussianEnvelope{rng.uniform(0.2 * n, 0.8 * n), rng.uniform(n / 16.0, n / 6.0), level};
  } else if (rng.uniform() < 0.5) {
    c.envelope = RectangularEnvelope{0, pop.length, level};
  } else {
    const auto start = rng.integer(0, pop.length / 3);
    const auto end = rng.integer(2 * pop.length / 3, pop.length);
    c.envelope = RectangularEnvelope{start, end, level};
  }

  switch (c.kind) {
    case ComponentKind::Tone:
    case ComponentKind::GaussianAtom:
      c.phase = ConstantFrequency{rng.uniform(pop.f_min, pop.f_max)};
      break;
    case ComponentKind::LinearChirp: {
      const double a = rng.uniform(pop.f_min, pop.f_max);
      const double b = rng.uniform(pop.f_min, pop.f_max);
      c.phase = LinearSweep{a, b};
      break;
    }
    case ComponentKind::SinusoidalFm: {
      const double dev = rng.uniform(pop.fm_deviation_min, pop.fm_deviation_max);
      const double center = rng.uniform(pop.f_min + dev, pop.f_max - dev);
      const double cycles = rng.uniform(pop.fm_cycles_min, pop.fm_cycles_max);
      c.phase = SinusoidalModulation{center, dev, cycles / n};
      break;
    }
  }
  return c;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void offset_frequency(PhaseLaw& phase, double offset) {
  std::visit(overloaded{[&](ConstantFrequency& p) { p.f0 += offset; },
                        [&](LinearSweep& p) {
                          p.f_start += offset;
                          p.f_end += offset;
                        },
                        [&](SinusoidalModulation& p) { p.f_center += offset; }},
             phase);
}

bool clamp_frequency(PhaseLaw& phase, double lo, double hi) {
  return std::visit(overloaded{[&](ConstantFrequency& p) {
                                 p.f0 = std::clamp(p.f0, lo, hi);
                                 return true;
                               },
                               [&](LinearSweep& p) {
                                 p.f_start = std::clamp(p.f_start, lo, hi);
                                 p.f_end = std::clamp(p.f_end, lo, hi);
                                 return true;
                               },
                               [&](SinusoidalModulation& p) {
                                 if (2.0 * p.deviation > hi - lo) return false;
                                 p.f_center = std::clamp(p.f_center, lo + p.deviation, hi - p.deviation);
                                 return true;
                               }},
                    phase);
}

bool is_valid(const ComponentSpec& c, Index length) {
  try {
    validate(c, length);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

std::string item_id(const char* split, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%05zu", split, index);
  return buf;
}

json tf_config_json(const TfConfig& tf, Index length) {
  const auto g = tf.g(length);
  const auto h = tf.h(length);
  return json{{"bins", tf.bins},
              {"time_window", {{"shape", std::string(to_string(g.shape))}, {"length", g.length}}},
              {"lag_window", {{"shape", std::string(to_string(h.shape))}, {"length", h.length}}},
              {"reassignment_threshold", tf.reassignment_threshold},
              {"binary_ideal", tf.binary_ideal},
              {"input_method", "spwvd"}};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return mix(mix(seed) ^ h);
}

std::vector<SignalSpec> sample_specs(std::uint64_t seed, std::size_t count,
                                     const PopulationConfig& population) {
  if (population.max_components < 1 || population.max_components > kMaxComponents) {
    throw ConfigError("max_components must lie in [1, " + std::to_string(kMaxComponents) + "]");
  }
  std::vector<SignalSpec> specs;
  specs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SignalSpec spec;
    spec.length = population.length;
    spec.seed = derive_seed(seed, "spec-" + std::to_string(i));
    Rng rng(spec.seed);
    const auto components = rng.integer(1, population.max_components);
    for (std::int64_t k = 0; k < components; ++k) {
      spec.components.push_back(sample_component(rng, population));
    }
    validate(spec);
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::optional<SignalSpec> jitter(const SignalSpec& spec, std::uint64_t seed,
                                 const JitterConfig& config) {
  validate(spec);
  Rng rng(seed);
  SignalSpec out = spec;
  const double n = static_cast<double>(spec.length);
  for (auto& c : out.components) {
    const double shift = std::round(rng.uniform(-config.time_shift, config.time_shift) * n);
    const double offset = rng.uniform(-config.freq_offset, config.freq_offset);
    const double rate = 1.0 + rng.uniform(-config.rate_change, config.rate_change);
    const double gain = rng.uniform(config.amplitude_min, config.amplitude_max);

    if (shift != 0.0) {
      std::visit(overloaded{[&](RectangularEnvelope& e) {
                              e.start += static_cast<std::int64_t>(shift);
                              e.end += static_cast<std::int64_t>(shift);
                            },
                            [&](GaussianEnvelope& e) { e.center += shift; }},
                 c.envelope);
    }
    if (offset != 0.0) offset_frequency(c.phase, offset);
    if (auto* sweep = std::get_if<LinearSweep>(&c.phase); sweep != nullptr && rate != 1.0) {
      const double mid = 0.5 * (sweep->f_start + sweep->f_end);
      const double half = 0.5 * (sweep->f_end - sweep->f_start) * rate;
      sweep->f_start = mid - half;
      sweep->f_end = mid + half;
    }
    if (gain != 1.0) {
      std::visit([&](auto& e) { e.level *= gain; }, c.envelope);
    }

    if (!is_valid(c, spec.length)) {
      if (!clamp_frequency(c.phase, config.clamp_min, config.clamp_max)) return std::nullopt;
      if (!is_valid(c, spec.length)) return std::nullopt;
    }
  }
  return out;
}

json to_json(const DatasetManifest& m) {
  json items = json::array();
  for (const auto& item : m.items) {
    items.push_back({{"id", item.id},
                     {"split", item.split},
                     {"spec", to_json(item.spec)},
                     {"input", item.input},
                     {"target", item.target},
                     {"pair", item.pair},
                     {"augmentation", item.augmentation}});
  }
  return json{{"schema_version", m.schema_version},
              {"seed", m.seed},
              {"splits", {{"train", m.train}, {"test", m.test}}},
              {"image_size", {{"time", m.image_time}, {"freq", m.image_freq}}},
              {"normalization", m.normalization},
              {"tf_config", m.tf_config},
              {"extra_methods", m.extra_methods},
              {"raw_test", m.raw_test},
              {"items", items}};
}

DatasetManifest manifest_from_json(const json& j) {
  DatasetManifest m;
  try {
    m.schema_version = j.at("schema_version").get<int>();
    if (m.schema_version != 1) {
      throw ValidationError("unsupported manifest schema_version " +
                            std::to_string(m.schema_version));
    }
    m.seed = j.at("seed").get<std::uint64_t>();
    m.train = j.at("splits").at("train").get<std::size_t>();
    m.test = j.at("splits").at("test").get<std::size_t>();
    m.image_time = j.at("image_size").at("time").get<Index>();
    m.image_freq = j.at("image_size").at("freq").get<Index>();
    m.normalization = j.at("normalization").get<std::string>();
    m.tf_config = j.at("tf_config");
    m.extra_methods = j.value("extra_methods", std::vector<std::string>{});
    m.raw_test = j.value("raw_test", false);
    for (const auto& it : j.at("items")) {
      ManifestItem item;
      item.id = it.at("id").get<std::string>();
      item.split = it.at("split").get<std::string>();
      item.spec = spec_from_json(it.at("spec"));
      item.input = it.at("input").get<std::string>();
      item.target = it.at("target").get<std::string>();
      item.pair = it.at("pair").get<std::string>();
      item.augmentation = it.at("augmentation").get<std::vector<std::string>>();
      m.items.push_back(std::move(item));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("malformed manifest " + path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

DatasetManifest build_dataset(const DatasetOptions& options) {
  namespace fs = std::filesystem;
  if (options.augment_factor < 1) throw ConfigError("augment_factor must be >= 1");
  const Index length = options.population.length;

  DatasetManifest manifest;
  manifest.seed = options.seed;
  manifest.train = options.train;
  manifest.test = options.test;
  manifest.image_time = length;
  manifest.image_freq = options.tf.bins;
  manifest.normalization = kNormalizationRule;
  manifest.tf_config = tf_config_json(options.tf, length);
  for (auto m : options.extra_methods) manifest.extra_methods.emplace_back(to_string(m));
  manifest.raw_test = options.raw_test;

  // Train: base specs, each followed by jittered copies until the count is met.
  const std::size_t base_count =
      (options.train + options.augment_factor - 1) / options.augment_factor;
  const auto bases = sample_specs(derive_seed(options.seed, "train-base"), base_count,
                                  options.population);
  for (std::size_t i = 0; i < options.train; ++i) {
    ManifestItem item;
    item.id = item_id("train", i);
    item.split = "train";
    const auto& base = bases[i / options.augment_factor];
    if (i % options.augment_factor == 0) {
      item.spec = base;
      item.augmentation = {"base"};
    } else {
      std::optional<SignalSpec> jittered;
      for (int attempt = 0; attempt < 100 && !jittered; ++attempt) {
        jittered = jitter(base, derive_seed(options.seed, item.id + "#" + std::to_string(attempt)),
                          options.jitter);
      }
      if (!jittered) throw ValidationError(item.id + ": could not draw an alias-free jitter");
      item.spec = std::move(*jittered);
      item.augmentation = {"time-shift", "freq-offset", "chirp-rate", "amplitude"};
    }
    manifest.items.push_back(std::move(item));
  }

  const auto tests = sample_specs(derive_seed(options.seed, "test"), options.test,
                                  options.population);
  for (std::size_t i = 0; i < options.test; ++i) {
    ManifestItem item;
    item.id = item_id("test", i);
    item.split = "test";
    item.spec = tests[i];
    item.augmentation = {"base"};
    manifest.items.push_back(std::move(item));
  }

  std::set<std::string> train_specs;
  for (const auto& item : manifest.items) {
    if (item.split == "train") train_specs.insert(canonical_string(item.spec));
  }
  for (const auto& item : manifest.items) {
    if (item.split == "test" && train_specs.contains(canonical_string(item.spec))) {
      throw ValidationError(item.id + ": spec also present in the train split");
    }
  }

  const fs::path root = options.out_dir;
  for (const char* split : {"train", "test"}) {
    fs::create_directories(root / split / "input");
    fs::create_directories(root / split / "target");
    fs::create_directories(root / "pairs" / split);
  }
  for (const auto& m : manifest.extra_methods) fs::create_directories(root / "test" / m);

  for (auto& item : manifest.items) {
    item.input = item.split + "/input/" + item.id + ".png";
    item.target = item.split + "/target/" + item.id + ".png";
    item.pair = "pairs/" + item.split + "/" + item.id + ".png";
  }

  parallel_for(
      manifest.items.size(),
      [&](std::size_t i) {
        const auto& item = manifest.items[i];
        try {
          const Signal x = synthesize(item.spec);
          const GrayImage input =
              normalize_to_image(compute_tfr(Method::Spwvd, x, &item.spec, options.tf));
          const Tfr ideal = compute_tfr(Method::Ideal, x, &item.spec, options.tf);
          const GrayImage target = normalize_to_image(ideal);
          write_png(root / item.input, input);
          write_png(root / item.target, target);
          write_png(root / item.pair, side_by_side(input, target));
          if (item.split != "test") return;
          const bool raw = options.raw_test;
          if (raw) write_tfr(root / "test/target" / (item.id + ".tfr"), ideal, "ideal");
          for (auto method : options.extra_methods) {
            const std::string name(to_string(method));
            const Tfr values = compute_tfr(method, x, &item.spec, options.tf);
            write_png(root / "test" / name / (item.id + ".png"), normalize_to_image(values));
            if (raw) write_tfr(root / "test" / name / (item.id + ".tfr"), values, name);
          }
        } catch (const std::exception& e) {
          throw ValidationError(item.id + ": " + e.what());
        }
      },
      options.threads);

  std::ofstream out(root / "manifest.json");
  if (!out) throw IoError("cannot write " + (root / "manifest.json").string());
  out << to_json(manifest).dump(2) << '\n';
  return manifest;
}

}  // namespace sharptf
