#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "sharptf/io.hpp"

namespace sharptf {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

struct WavData {
  std::vector<unsigned char> bytes;
  std::size_t data_offset = 0;
  std::size_t sample_count = 0;
};

WavData open_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file " + path.string());
  WavData wav;
  wav.bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  const auto& b = wav.bytes;
  const std::string name = path.string();
  if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0 ||
      std::memcmp(b.data() + 8, "WAVE", 4) != 0) {
    throw IoError(name + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const unsigned char* chunk = b.data() + pos;
    const std::size_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > b.size() && std::memcmp(chunk, "data", 4) != 0) {
      throw IoError(name + ": truncated chunk");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw IoError(name + ": fmt chunk too short");
      const auto format = read_u16(b.data() + body);
      const auto channels = read_u16(b.data() + body + 2);
      const auto bits = read_u16(b.data() + body + 14);
      if (format != 1) {
        throw IoError(name + ": unsupported WAV format code " + std::to_string(format) +
                      " (only PCM = 1)");
      }
      if (channels != 1) {
        throw IoError(name + ": " + std::to_string(channels) + " channels, only mono supported");
      }
      if (bits != 16) {
        throw IoError(name + ": " + std::to_string(bits) + "-bit samples, only 16-bit supported");
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw IoError(name + ": data chunk before fmt chunk");
      const std::size_t available = std::min(size, b.size() - body);
      wav.data_offset = body;
      wav.sample_count = available / 2;
      return wav;
    }
    pos = body + size + (size % 2);
  }
  throw IoError(name + ": no data chunk");
}

}  // namespace

std::string signal_to_csv(const Signal& x) {
  std::string out = "index,re,im\n";
  char line[96];
  for (Index n = 0; n < x.size(); ++n) {
    std::snprintf(line, sizeof line, "%ld,%.17g,%.17g\n", static_cast<long>(n), x(n).real(),
                  x(n).imag());
    out += line;
  }
  return out;
}

void write_signal_csv(const std::filesystem::path& path, const Signal& x) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write signal file " + path.string());
  out << signal_to_csv(x);
  if (!out) throw IoError("failed writing " + path.string());
}

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open signal file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,re,im", 0) != 0) {
    throw IoError(path.string() + ": expected header 'index,re,im'");
  }
  std::vector<std::complex<double>> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    long index = 0;
    double re = 0.0;
    double im = 0.0;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf", &index, &re, &im) != 3 ||
        index != static_cast<long>(samples.size())) {
      throw IoError(path.string() + ": malformed row at line " + std::to_string(line_no));
    }
    samples.emplace_back(re, im);
  }
  Signal x(static_cast<Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) x(static_cast<Index>(i)) = samples[i];
  validate_signal(x);
  return x;
}

Index wav_sample_count(const std::filesystem::path& path) {
  return static_cast<Index>(open_wav(path).sample_count);
}

Signal load_wav_segment(const std::filesystem::path& path, Index offset, Index length) {
  const WavData wav = open_wav(path);
  if (offset < 0 || length < 1 ||
      static_cast<std::size_t>(offset + length) > wav.sample_count) {
    throw IoError(path.string() + ": segment [" + std::to_string(offset) + ", " +
                  std::to_string(offset + length) + ") outside the file's " +
                  std::to_string(wav.sample_count) + " samples");
  }
  Signal x(length);
  for (Index i = 0; i < length; ++i) {
    const unsigned char* p = wav.bytes.data() + wav.data_offset + 2 * static_cast<std::size_t>(offset + i);
    const auto raw = static_cast<std::int16_t>(read_u16(p));
    x(i) = {static_cast<double>(raw) / 32768.0, 0.0};
  }
  return x;
}

}  // namespace sharptf
