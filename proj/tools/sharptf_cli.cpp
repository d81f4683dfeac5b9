// sharptf: synthesis, transforms, dataset build and evaluation from the shell.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sharptf/dataset.hpp"
#include "sharptf/image.hpp"
#include "sharptf/io.hpp"
#include "sharptf/methods.hpp"
#include "sharptf/metrics.hpp"
#include "sharptf/parallel.hpp"

namespace fs = std::filesystem;
using namespace sharptf;

namespace {

struct WindowFlags {
  std::string g_shape;
  std::string h_shape;
  Index g_len = 0;
  Index h_len = 0;
  Index bins = kDefaultBins;
  double threshold = 1e-6;
  bool binary_ideal = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--F", bins, "frequency bins")->capture_default_str();
    cmd->add_option("--g-shape", g_shape, "time window shape: hamming, gaussian, rectangular");
    cmd->add_option("--g-len", g_len, "time window length (odd)");
    cmd->add_option("--h-shape", h_shape, "lag window shape: hamming, gaussian, rectangular");
    cmd->add_option("--h-len", h_len, "lag window length (odd)");
    cmd->add_option("--threshold", threshold, "reassignment energy threshold")->capture_default_str();
    cmd->add_flag("--binary-ideal", binary_ideal, "render ideal trajectories with unit weight");
  }

  static std::optional<WindowSpec> resolve(const std::string& shape, Index len, WindowSpec fallback) {
    if (shape.empty() && len == 0) return std::nullopt;
    if (!shape.empty()) fallback.shape = parse_window_shape(shape);
    if (len != 0) fallback.length = len;
    return fallback;
  }

  TfConfig config(Index length) const {
    TfConfig tf;
    tf.bins = bins;
    tf.time_window = resolve(g_shape, g_len, default_time_window(length));
    tf.lag_window = resolve(h_shape, h_len, default_lag_window(length));
    tf.reassignment_threshold = threshold;
    tf.binary_ideal = binary_ideal;
    if (tf.time_window) validate(*tf.time_window, length);
    if (tf.lag_window) validate(*tf.lag_window, length);
    return tf;
  }
};

void require_file(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw IoError("no such file: " + p.string());
}

void require_parent(const fs::path& p) {
  const fs::path parent = p.parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw IoError("output directory does not exist: " + parent.string());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// id -> path for every file with the extension in a directory
std::map<std::string, fs::path> list_ids(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::map<std::string, fs::path> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == "." + ext) {
      ids[entry.path().stem().string()] = entry.path();
    }
  }
  return ids;
}

Tfr load_matrix(const fs::path& p) {
  if (p.extension() == ".tfr") return read_tfr(p).values;
  return image_to_tfr(read_png(p));
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << text;
  if (!out) throw IoError("write failed: " + p.string());
}

int run_synth(const std::string& spec_path, const std::string& out_path) {
  require_file(spec_path);
  require_parent(out_path);
  write_signal_csv(out_path, synthesize(read_spec(spec_path)));
  return 0;
}

struct TfrArgs {
  std::string signal, spec, wav, out, png, method;
  Index offset = 0;
  Index len = kDefaultLength;
  bool analytic = false;
  WindowFlags win;
};

int run_tfr(const TfrArgs& a) {
  const Method method = parse_method(a.method);
  const int inputs = !a.signal.empty() + !a.spec.empty() + !a.wav.empty();
  if (inputs != 1) throw ConfigError("give exactly one of --signal, --spec, --wav");
  if (a.out.empty() && a.png.empty()) throw ConfigError("give --out and/or --png");
  if (!a.out.empty()) require_parent(a.out);
  if (!a.png.empty()) require_parent(a.png);

  std::optional<SignalSpec> spec;
  Signal x;
  if (!a.spec.empty()) {
    require_file(a.spec);
    spec = read_spec(a.spec);
    x = synthesize(*spec);
  } else if (!a.signal.empty()) {
    require_file(a.signal);
    x = read_signal_csv(a.signal);
  } else {
    require_file(a.wav);
    x = load_wav_segment(a.wav, a.offset, a.len);
  }
  if (a.analytic || !a.wav.empty()) x = analytic_signal(x);

  const Tfr values = compute_tfr(method, x, spec ? &*spec : nullptr, a.win.config(x.size()));
  if (!a.out.empty()) write_tfr(a.out, values, to_string(method));
  if (!a.png.empty()) write_png(a.png, normalize_to_image(values));
  return 0;
}

struct DatasetArgs {
  std::uint64_t seed = 42;
  std::size_t train = 1320;
  std::size_t test = 120;
  Index length = kDefaultLength;
  std::string out, methods;
  bool raw = false;
  WindowFlags win;
};

int run_dataset(const DatasetArgs& a) {
  DatasetOptions opt;
  opt.seed = a.seed;
  opt.train = a.train;
  opt.test = a.test;
  opt.out_dir = a.out;
  opt.population.length = a.length;
  opt.tf = a.win.config(a.length);
  for (const auto& m : split_list(a.methods)) opt.extra_methods.push_back(parse_method(m));
  opt.raw_test = a.raw;
  opt.threads = default_thread_count();
  fs::create_directories(opt.out_dir);
  const auto manifest = build_dataset(opt);
  std::printf("wrote %zu items to %s\n", manifest.items.size(), a.out.c_str());
  return 0;
}

struct EvalArgs {
  std::vector<std::string> preds;
  std::string ideal, out, table, ext = "png";
};

int run_eval(const EvalArgs& a) {
  if (a.ext != "png" && a.ext != "tfr") throw ConfigError("--ext must be png or tfr");
  require_parent(a.out);
  if (!a.table.empty()) require_parent(a.table);

  const auto ideal_files = list_ids(a.ideal, a.ext);
  if (ideal_files.empty()) throw IoError("no ." + a.ext + " files in " + a.ideal);

  struct Source {
    std::string name;
    std::map<std::string, fs::path> files;
  };
  std::vector<Source> sources;
  std::vector<std::string> problems;
  for (const auto& p : a.preds) {
    const auto eq = p.find('=');
    Source s;
    fs::path dir = eq == std::string::npos ? fs::path(p) : fs::path(p.substr(eq + 1));
    s.name = eq == std::string::npos ? dir.lexically_normal().filename().string() : p.substr(0, eq);
    if (s.name.empty()) s.name = dir.lexically_normal().parent_path().filename().string();
    s.files = list_ids(dir, a.ext);
    std::vector<std::string> missing;
    for (const auto& [id, path] : ideal_files) {
      if (!s.files.contains(id)) missing.push_back(id);
    }
    if (!missing.empty()) {
      problems.push_back(s.name + ": missing predictions for ids: " + join(missing));
    }
    sources.push_back(std::move(s));
  }
  if (!problems.empty()) {
    for (const auto& msg : problems) std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 1;
  }

  std::vector<std::pair<std::string, fs::path>> ideal_list(ideal_files.begin(), ideal_files.end());
  std::vector<Tfr> ideal_values(ideal_list.size());
  const std::size_t threads = default_thread_count();
  parallel_for(ideal_list.size(), [&](std::size_t i) { ideal_values[i] = load_matrix(ideal_list[i].second); },
               threads);
  std::map<std::string, Tfr> ideals;
  for (std::size_t i = 0; i < ideal_list.size(); ++i) {
    ideals.emplace(ideal_list[i].first, std::move(ideal_values[i]));
  }

  std::vector<Prediction> preds;
  for (const auto& s : sources) {
    for (const auto& [id, path] : s.files) preds.push_back({id, s.name, Tfr()});
  }
  std::vector<fs::path> paths;
  for (const auto& s : sources) {
    for (const auto& [id, path] : s.files) paths.push_back(path);
  }
  parallel_for(preds.size(), [&](std::size_t i) { preds[i].values = load_matrix(paths[i]); }, threads);

  const MetricsReport report = build_report(preds, ideals, threads);
  write_text(a.out, to_csv(report));
  if (!a.table.empty()) write_text(a.table, to_table(report));
  for (const auto& avg : report.averages) {
    std::printf("%s %-12s pc %.4f  l1 %.1f  renyi3 %.4f\n", avg.signal.c_str(), avg.method.c_str(),
                avg.pc, avg.l1, avg.renyi3);
  }
  return 0;
}

int run_heatmap(const std::string& in, const std::string& png) {
  require_file(in);
  require_parent(png);
  write_png(png, normalize_to_image(read_tfr(in).values));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sharptf: time-frequency distributions, reassignment and evaluation"};
  app.require_subcommand(1);

  std::string synth_spec, synth_out;
  auto* synth = app.add_subcommand("synth", "synthesize a signal spec to CSV");
  synth->add_option("--spec", synth_spec, "signal spec JSON")->required();
  synth->add_option("--out", synth_out, "output CSV")->required();

  TfrArgs tfr_args;
  auto* tfr = app.add_subcommand("tfr", "compute one TF distribution");
  tfr->add_option("--signal", tfr_args.signal, "signal CSV (index,re,im)");
  tfr->add_option("--spec", tfr_args.spec, "signal spec JSON");
  tfr->add_option("--wav", tfr_args.wav, "mono 16-bit PCM WAV");
  tfr->add_option("--offset", tfr_args.offset, "WAV segment start sample")->capture_default_str();
  tfr->add_option("--len", tfr_args.len, "WAV segment length")->capture_default_str();
  tfr->add_option("--method", tfr_args.method, "wvd, spectrogram, spwvd, rspwvd or ideal")->required();
  tfr->add_option("--out", tfr_args.out, "output .tfr matrix");
  tfr->add_option("--png", tfr_args.png, "output PNG heatmap");
  tfr->add_flag("--analytic", tfr_args.analytic, "take the analytic signal of the input first");
  tfr_args.win.attach(tfr);

  DatasetArgs ds_args;
  auto* dataset = app.add_subcommand("dataset", "build the paired image dataset");
  dataset->add_option("--seed", ds_args.seed, "master seed")->capture_default_str();
  dataset->add_option("--train", ds_args.train, "training pairs")->capture_default_str();
  dataset->add_option("--test", ds_args.test, "test pairs")->capture_default_str();
  dataset->add_option("--len", ds_args.length, "signal length")->capture_default_str();
  dataset->add_option("--out", ds_args.out, "output directory")->required();
  dataset->add_option("--methods", ds_args.methods, "extra test methods, e.g. wvd,spwvd,rspwvd");
  dataset->add_flag("--raw", ds_args.raw, "also write .tfr matrices for test targets and methods");
  ds_args.win.attach(dataset);

  EvalArgs ev_args;
  auto* eval = app.add_subcommand("eval", "score predictions against ideal TF images");
  eval->add_option("--pred", ev_args.preds, "prediction dir, optionally name=dir (repeatable)")
      ->required();
  eval->add_option("--ideal", ev_args.ideal, "ideal dir")->required();
  eval->add_option("--out", ev_args.out, "output CSV")->required();
  eval->add_option("--table", ev_args.table, "also write the aligned text table");
  eval->add_option("--ext", ev_args.ext, "file type to read: png or tfr")->capture_default_str();

  std::string hm_in, hm_png;
  auto* heatmap = app.add_subcommand("heatmap", "export a .tfr matrix as a PNG heatmap");
  heatmap->add_option("--in", hm_in, "input .tfr")->required();
  heatmap->add_option("--png", hm_png, "output PNG")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) return run_synth(synth_spec, synth_out);
    if (*tfr) return run_tfr(tfr_args);
    if (*dataset) return run_dataset(ds_args);
    if (*eval) return run_eval(ev_args);
    if (*heatmap) return run_heatmap(hm_in, hm_png);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
