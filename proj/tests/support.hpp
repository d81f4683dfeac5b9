#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sharptf/signal.hpp"

namespace sharptf::testing {

inline ComponentSpec tone(double f0, Index start, Index end, double level = 1.0) {
  return {ComponentKind::Tone, RectangularEnvelope{start, end, level}, ConstantFrequency{f0}};
}

inline ComponentSpec chirp(double f_start, double f_end, Index start, Index end,
                           double level = 1.0) {
  return {ComponentKind::LinearChirp, RectangularEnvelope{start, end, level},
          LinearSweep{f_start, f_end}};
}

inline ComponentSpec fm(double f_center, double deviation, double rate, Index start, Index end) {
  return {ComponentKind::SinusoidalFm, RectangularEnvelope{start, end, 1.0},
          SinusoidalModulation{f_center, deviation, rate}};
}

inline ComponentSpec atom(double f0, double center, double width, double level = 1.0) {
  return {ComponentKind::GaussianAtom, GaussianEnvelope{center, width, level},
          ConstantFrequency{f0}};
}

inline SignalSpec spec_of(Index length, std::initializer_list<ComponentSpec> parts) {
  return {length, 0, std::vector<ComponentSpec>(parts)};
}

// complex white noise, unit variance per part
inline Signal random_signal(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Signal x(n);
  for (Index i = 0; i < n; ++i) x(i) = {d(rng), d(rng)};
  return x;
}

inline Eigen::VectorXd random_real(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Eigen::VectorXd x(n);
  for (Index i = 0; i < n; ++i) x(i) = d(rng);
  return x;
}

// fresh empty directory under the system temp dir
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sharptf_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// RIFF/WAVE bytes packed by hand, little-endian
inline std::vector<unsigned char> wav_bytes(const std::vector<std::int16_t>& samples,
                                            std::uint16_t format = 1, std::uint16_t channels = 1,
                                            std::uint16_t bits = 16) {
  std::vector<unsigned char> b;
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
  };
  auto u16 = [&](std::uint16_t v) {
    b.push_back(static_cast<unsigned char>(v));
    b.push_back(static_cast<unsigned char>(v >> 8));
  };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  const auto data_size = static_cast<std::uint32_t>(samples.size() * 2);
  tag("RIFF");
  u32(36 + 8 + data_size);  // includes a LIST chunk below
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(format);
  u16(channels);
  u32(8000);
  u32(8000 * channels * bits / 8);
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(bits);
  tag("LIST");  // a chunk readers must skip
  u32(0);
  tag("data");
  u32(data_size);
  for (auto s : samples) u16(static_cast<std::uint16_t>(s));
  return b;
}

inline void write_bytes(const std::filesystem::path& p, const std::vector<unsigned char>& b) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

// decaying downward chirp clicks, like an echolocation train
inline std::vector<std::int16_t> click_train(std::size_t count, std::size_t period) {
  std::vector<std::int16_t> out(count, 0);
  for (std::size_t start = period / 4; start + 64 < count; start += period) {
    double phase = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
      const double f = 0.4 - 0.25 * double(i) / 64.0;
      phase += 2.0 * 3.141592653589793 * f;
      const double env = std::exp(-double(i) / 12.0);
      out[start + i] = static_cast<std::int16_t>(std::lround(20000.0 * env * std::cos(phase)));
    }
  }
  return out;
}

}  // namespace sharptf::testing
